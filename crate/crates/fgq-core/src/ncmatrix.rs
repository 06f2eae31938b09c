//! Matrices over a (possibly noncommutative) quantum torus, the elementary
//! shearing/edge/U-turn matrices, the classical left/right/edge monodromy
//! matrices, and the quantum left/right matrices obtained by entrywise Weyl
//! ordering of the commutative triple product.

use crate::qtorus::{QuantumTorus, Rat, TorusElement};
use crate::quiver::{FgQuiverSpec, Side, ThetaVertex};
use num::BigInt;
use std::sync::Arc;

/// Dense matrix of torus elements sharing one presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct NcMatrix {
    pub torus: Arc<QuantumTorus>,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<TorusElement>,
}

impl NcMatrix {
    pub fn zero(t: &Arc<QuantumTorus>, rows: usize, cols: usize) -> Self {
        NcMatrix {
            torus: t.clone(),
            rows,
            cols,
            entries: vec![TorusElement::zero(t); rows * cols],
        }
    }

    pub fn identity(t: &Arc<QuantumTorus>, size: usize) -> Self {
        let mut m = Self::zero(t, size, size);
        for i in 0..size {
            m.set(i, i, TorusElement::one(t));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &TorusElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TorusElement) {
        assert!(*v.torus == *self.torus, "entry belongs to a different torus");
        self.entries[i * self.cols + j] = v;
    }

    /// Order-preserving row-by-column product: (MN)_{ij} = Σ_k M_{ik}·N_{kj}.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        assert!(*self.torus == *other.torus, "matrices over different tori");
        let mut out = Self::zero(&self.torus, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = TorusElement::zero(&self.torus);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Map every entry.
    pub fn map_entries<F: Fn(&TorusElement) -> TorusElement>(
        &self,
        t: &Arc<QuantumTorus>,
        f: F,
    ) -> Self {
        let mut out = Self::zero(t, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, f(self.get(i, j)));
            }
        }
        out
    }

    /// Entrywise q = ω = 1 specialization.
    pub fn specialize_commutative(&self) -> Self {
        let shadow = self.torus.commutative_shadow();
        self.map_entries(&shadow, |e| e.specialize_commutative())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// LaTeX rendering (entries as sums of coefficient-monomial products).
    pub fn to_latex(&self) -> String {
        let mut s = String::from("\\begin{pmatrix}\n");
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| entry_latex(self.get(i, j))).collect();
            s.push_str(&row.join(" & "));
            if i + 1 < self.rows {
                s.push_str(" \\\\");
            }
            s.push('\n');
        }
        s.push_str("\\end{pmatrix}");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_json()).collect())
            .collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }
}

fn entry_latex(e: &TorusElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let n = e.torus.n;
    let mut parts = Vec::new();
    for (m, c) in e.terms() {
        let mut s = String::new();
        let coeff = format!("{}", c);
        if coeff != "1" {
            s.push_str(&format!("({})", coeff));
        }
        for (i, &p) in m.iter().enumerate() {
            if p == 0 {
                continue;
            }
            let name = &e.torus.names[i];
            if p == n {
                s.push_str(&format!("{name} "));
            } else {
                s.push_str(&format!("{name}^{{{p}/{n}}} "));
            }
        }
        if s.is_empty() {
            s = "1".into();
        }
        parts.push(format!("[{}]", s.trim_end()));
    }
    parts.join(" + ")
}

fn frac_pow(x: &TorusElement, num: i64, den: i64) -> TorusElement {
    if num == 0 {
        return TorusElement::one(&x.torus);
    }
    x.pow_monomial(num, den).expect("shear arguments are fractional-power-closed monomials")
}

/// k-th left-shearing matrix S^left_k(x) =
/// x^{−(k−1)/n}·(diag(x,…,x,1,…,1) + E_{k,k+1}) with x appearing k−1 times.
/// For k = 1 the variable is ignored. With `normalized = false` the
/// determinant normalizer x^{−(k−1)/n} is omitted (a deliberately broken
/// variant used as a negative control).
pub fn shear_left(
    t: &Arc<QuantumTorus>,
    k: usize,
    x: Option<&TorusElement>,
    normalized: bool,
) -> NcMatrix {
    let n = t.n as usize;
    assert!((1..n).contains(&k), "shear index out of range");
    let mut m = NcMatrix::zero(t, n, n);
    let norm = if normalized { -((k as i64) - 1) } else { 0 };
    let xval = if k == 1 { None } else { Some(x.expect("shear_left needs x for k >= 2")) };
    for i in 0..n {
        let e = match xval {
            Some(x) => {
                let full = if i < k - 1 { t.n } else { 0 };
                frac_pow(x, full + norm, t.n)
            }
            None => TorusElement::one(t),
        };
        m.set(i, i, e);
    }
    let off = match xval {
        Some(x) => frac_pow(x, norm, t.n),
        None => TorusElement::one(t),
    };
    m.set(k - 1, k, off);
    m
}

/// k-th right-shearing matrix S^right_k(x) =
/// x^{+(k−1)/n}·(diag(1,…,1,x^{−1},…,x^{−1}) + E_{n−k+1,n−k}) with x^{−1}
/// appearing k−1 times. For k = 1 the variable is ignored.
pub fn shear_right(
    t: &Arc<QuantumTorus>,
    k: usize,
    x: Option<&TorusElement>,
    normalized: bool,
) -> NcMatrix {
    let n = t.n as usize;
    assert!((1..n).contains(&k), "shear index out of range");
    let mut m = NcMatrix::zero(t, n, n);
    let norm = if normalized { (k as i64) - 1 } else { 0 };
    let xval = if k == 1 { None } else { Some(x.expect("shear_right needs x for k >= 2")) };
    for i in 0..n {
        let e = match xval {
            Some(x) => {
                let full = if i >= n - k + 1 { -t.n } else { 0 };
                frac_pow(x, full + norm, t.n)
            }
            None => TorusElement::one(t),
        };
        m.set(i, i, e);
    }
    let off = match xval {
        Some(x) => frac_pow(x, norm, t.n),
        None => TorusElement::one(t),
    };
    m.set(n - k, n - k - 1, off);
    m
}

/// j-th edge-shearing matrix S^edge_j(z) = z^{−j/n}·diag(z,…,z,1,…,1) with z
/// appearing j times.
pub fn shear_edge(t: &Arc<QuantumTorus>, j: usize, z: &TorusElement, normalized: bool) -> NcMatrix {
    let n = t.n as usize;
    assert!((1..n).contains(&j), "edge shear index out of range");
    let mut m = NcMatrix::zero(t, n, n);
    let norm = if normalized { -(j as i64) } else { 0 };
    for i in 0..n {
        let full = if i < j { t.n } else { 0 };
        m.set(i, i, frac_pow(z, full + norm, t.n));
    }
    m
}

/// Clockwise U-turn matrix: antidiagonal with U_{i,n+1−i} = (−1)^{n−i}
/// (so +1 at the bottom-left, (−1)^{n−1} at the top-right); determinant 1.
pub fn uturn(t: &Arc<QuantumTorus>) -> NcMatrix {
    let n = t.n as usize;
    let mut m = NcMatrix::zero(t, n, n);
    for i in 1..=n {
        let sign = if (t.n - i as i64) % 2 == 0 { 1 } else { -1 };
        m.set(
            i - 1,
            n - i,
            TorusElement::rational(t, Rat::from_integer(BigInt::from(sign))),
        );
    }
    m
}

/// Classical left matrix over the commutative layer:
/// M^left = ∐_{k=n−1}^{1} ( S^left_1 ∏_{ℓ=2}^{k} S^left_ℓ(X_{(ℓ−1)(n−k)(k−ℓ+1)}) ),
/// with ∐ descending and ∏ ascending.
pub fn m_left<F>(t: &Arc<QuantumTorus>, assign: F, normalized: bool) -> NcMatrix
where
    F: Fn(ThetaVertex) -> TorusElement,
{
    let n = t.n as usize;
    let mut acc = NcMatrix::identity(t, n);
    for k in (1..n).rev() {
        acc = acc.matmul(&shear_left(t, 1, None, normalized));
        for l in 2..=k {
            let v = ThetaVertex::new(l as i64 - 1, t.n - k as i64, k as i64 - l as i64 + 1);
            acc = acc.matmul(&shear_left(t, l, Some(&assign(v)), normalized));
        }
    }
    acc
}

/// Classical right matrix:
/// M^right = ∐_{k=n−1}^{1} ( S^right_1 ∏_{ℓ=2}^{k} S^right_ℓ(X_{(k−ℓ+1)(n−k)(ℓ−1)}) ).
pub fn m_right<F>(t: &Arc<QuantumTorus>, assign: F, normalized: bool) -> NcMatrix
where
    F: Fn(ThetaVertex) -> TorusElement,
{
    let n = t.n as usize;
    let mut acc = NcMatrix::identity(t, n);
    for k in (1..n).rev() {
        acc = acc.matmul(&shear_right(t, 1, None, normalized));
        for l in 2..=k {
            let v = ThetaVertex::new(k as i64 - l as i64 + 1, t.n - k as i64, l as i64 - 1);
            acc = acc.matmul(&shear_right(t, l, Some(&assign(v)), normalized));
        }
    }
    acc
}

/// Classical edge matrix M^edge = ∏_{ℓ=1}^{n−1} S^edge_ℓ(Z_ℓ); `zs[ℓ−1]` is
/// the variable of the ℓ-th factor.
pub fn m_edge(t: &Arc<QuantumTorus>, zs: &[TorusElement], normalized: bool) -> NcMatrix {
    let n = t.n as usize;
    assert_eq!(zs.len(), n - 1, "m_edge needs n-1 variables");
    let mut acc = NcMatrix::identity(t, n);
    for l in 1..n {
        acc = acc.matmul(&shear_edge(t, l, &zs[l - 1], normalized));
    }
    acc
}

/// The commutative triple product underlying the quantum left (or right)
/// matrix: M^edge(Z)·M^left(X)·M^edge(Z′) over the commutative shadow of
/// T_n^ω (right: M^edge(Z)·M^right(X)·M^edge(Z″)).
pub fn classical_triple(spec: &FgQuiverSpec, side: Side, normalized: bool) -> NcMatrix {
    let shadow = spec.torus().expect("valid spec").commutative_shadow();
    let gen = |name: &str| {
        TorusElement::generator(&shadow, spec.index_of_name(name).expect("known generator"))
    };
    let zs: Vec<TorusElement> = (1..spec.n).map(|j| gen(&format!("Z{j}"))).collect();
    let inner_assign = |v: ThetaVertex| {
        let idx = spec.index_of_vertex(&v).expect("interior vertex present");
        TorusElement::generator(&shadow, idx)
    };
    let (inner, zs2) = match side {
        Side::Left => {
            let zps: Vec<TorusElement> =
                (1..spec.n).map(|j| gen(&format!("Z'{j}"))).collect();
            (m_left(&shadow, inner_assign, normalized), zps)
        }
        Side::Right => {
            let zpps: Vec<TorusElement> =
                (1..spec.n).map(|j| gen(&format!("Z''{j}"))).collect();
            (m_right(&shadow, inner_assign, normalized), zpps)
        }
    };
    m_edge(&shadow, &zs, normalized)
        .matmul(&inner)
        .matmul(&m_edge(&shadow, &zs2, normalized))
}

/// Quantum left matrix L^ω: entrywise Weyl ordering of the commutative triple
/// product, in T_n^ω.
pub fn quantum_left(spec: &FgQuiverSpec) -> NcMatrix {
    quantum_side(spec, Side::Left, true)
}

/// Quantum right matrix R^ω.
pub fn quantum_right(spec: &FgQuiverSpec) -> NcMatrix {
    quantum_side(spec, Side::Right, true)
}

/// Quantum matrix of either side; `normalized = false` strips the determinant
/// normalizers from every shear factor (negative control: the result is not
/// a quantum matrix).
pub fn quantum_side(spec: &FgQuiverSpec, side: Side, normalized: bool) -> NcMatrix {
    let t = spec.torus().expect("valid spec");
    let classical = classical_triple(spec, side, normalized);
    classical.map_entries(&t, |e| TorusElement::weyl_from_commutative(&t, e))
}

/// Check that every entry of `m` uses only the given generator subset.
pub fn uses_only_generators(m: &NcMatrix, allowed: &[usize]) -> bool {
    let total = m.torus.num_gens();
    let allowed_mask: Vec<bool> = {
        let mut v = vec![false; total];
        for &i in allowed {
            v[i] = true;
        }
        v
    };
    for i in 0..m.rows {
        for j in 0..m.cols {
            for (exps, _) in m.get(i, j).terms() {
                for (g, &e) in exps.iter().enumerate() {
                    if e != 0 && !allowed_mask[g] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Re-express a matrix whose entries only involve the generator subset `gens`
/// as a matrix over the sub-presentation `sub` (same order as `gens`).
pub fn restrict_to_subtorus(m: &NcMatrix, sub: &Arc<QuantumTorus>, gens: &[usize]) -> NcMatrix {
    assert_eq!(sub.num_gens(), gens.len());
    let mut out = NcMatrix::zero(sub, m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let mut acc = TorusElement::zero(sub);
            for (exps, c) in m.get(i, j).terms() {
                let sub_exps: Vec<i64> = gens.iter().map(|&g| exps[g]).collect();
                // All exponents outside `gens` must vanish.
                for (g, &e) in exps.iter().enumerate() {
                    if e != 0 {
                        assert!(gens.contains(&g), "entry uses generator outside the subalgebra");
                    }
                }
                acc = acc.add(&TorusElement::monomial(sub, sub_exps, c.clone()).unwrap());
            }
            out.set(i, j, acc);
        }
    }
    out
}
