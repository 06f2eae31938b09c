//! Complete flags over the exact rationals: duality, genericity predicates
//! (generic pairs and the maximum span property), the triangle and edge
//! invariants of flag tuples, and transport of a generic pair to the standard
//! pair. This is the classical oracle layer.

use crate::linalg::{column_space_intersection, QMat};
use crate::qtorus::Rat;
use num::{BigInt, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A complete flag in Q^n: an invertible basis matrix whose first a columns
/// span E^{(a)}.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag {
    pub basis: QMat,
}

impl Flag {
    pub fn new(basis: QMat) -> Option<Self> {
        if basis.rows != basis.cols || basis.det().is_zero() {
            return None;
        }
        Some(Flag { basis })
    }

    pub fn n(&self) -> usize {
        self.basis.rows
    }

    /// The subspace E^{(a)} as an n×a matrix of spanning columns.
    pub fn subspace(&self, a: usize) -> QMat {
        self.basis.first_cols(a)
    }

    /// Standard ascending flag (identity basis).
    pub fn standard_ascending(n: usize) -> Self {
        Flag { basis: QMat::identity(n) }
    }

    /// Standard descending flag (reversed identity basis).
    pub fn standard_descending(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, n - 1 - i)] = Rat::one();
        }
        Flag { basis: m }
    }

    /// Dual flag in V*: (E^⊥)^{(a)} = (E^{(n−a)})^⊥. With B = basis⁻¹, the
    /// rows u_1..u_n of B are the dual basis; the dual flag's a-th basis
    /// covector is u_{n−a+1}, i.e. the rows of B in reverse order.
    pub fn dual_flag(&self) -> Flag {
        let n = self.n();
        let inv = self.basis.inverse().expect("flag basis invertible");
        let mut m = QMat::zero(n, n);
        for j in 0..n {
            // column j of the dual basis = row n−1−j of the inverse.
            for i in 0..n {
                m[(i, j)] = inv[(n - 1 - j, i)].clone();
            }
        }
        Flag { basis: m }
    }

    /// Act by an invertible matrix: (φ·E)^{(a)} = φ(E^{(a)}).
    pub fn apply(&self, phi: &QMat) -> Flag {
        Flag { basis: phi.matmul(&self.basis) }
    }

    /// Equality of flags as subspace chains (not of basis matrices).
    pub fn same_flag(&self, other: &Flag) -> bool {
        if self.n() != other.n() {
            return false;
        }
        for a in 1..self.n() {
            let u = self.subspace(a);
            let w = other.subspace(a);
            if u.span_sum_dim(&w) != a {
                return false;
            }
        }
        true
    }
}

/// Genericity of a pair of flags; all four equivalent formulations.
pub fn is_generic_pair(e: &Flag, g: &Flag) -> bool {
    let n = e.n();
    assert_eq!(n, g.n());
    let mut f1a = true;
    let mut f1b = true;
    let mut f2a = true;
    let mut f2b = true;
    for a in 0..=n {
        for c in 0..=n {
            let ea = e.subspace(a);
            let gc = g.subspace(c);
            let sum_dim = ea.span_sum_dim(&gc);
            let int_dim = a + c - sum_dim;
            if a + c == n && sum_dim != n {
                f1a = false;
            }
            if sum_dim != (a + c).min(n) {
                f1b = false;
            }
            if a + c == n && int_dim != 0 {
                f2a = false;
            }
            if int_dim != (a + c).saturating_sub(n) {
                f2b = false;
            }
        }
    }
    // The formulations are equivalent; the debug assertion pins this.
    debug_assert!(f1a == f1b && f1b == f2a && f2a == f2b);
    f1a && f1b && f2a && f2b
}

/// Maximum span property for a flag triple.
pub fn is_max_span_triple(e: &Flag, f: &Flag, g: &Flag) -> bool {
    let n = e.n();
    for a in 0..=n {
        for b in 0..=(n - a) {
            for c in 0..=n {
                let dim = e.subspace(a).hcat(&f.subspace(b)).hcat(&g.subspace(c)).rank();
                if dim != (a + b + c).min(n) {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximum span property for a flag quadruple.
pub fn is_max_span_quad(e: &Flag, f: &Flag, g: &Flag, h: &Flag) -> bool {
    let n = e.n();
    for a in 0..=n {
        for b in 0..=(n - a) {
            for c in 0..=(n - a - b) {
                for d in 0..=n {
                    let dim = e
                        .subspace(a)
                        .hcat(&f.subspace(b))
                        .hcat(&g.subspace(c))
                        .hcat(&h.subspace(d))
                        .rank();
                    if dim != (a + b + c + d).min(n) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Wedge e^{(a)} ∧ f^{(b)} ∧ g^{(c)} with a+b+c = n, evaluated as the
/// determinant of the matrix stacking the first a columns of E, b of F, c of
/// G (the canonical generator choice).
pub fn wedge3(e: &Flag, a: usize, f: &Flag, b: usize, g: &Flag, c: usize) -> Rat {
    let n = e.n();
    assert_eq!(a + b + c, n, "wedge grade must be n");
    e.subspace(a).hcat(&f.subspace(b)).hcat(&g.subspace(c)).det()
}

/// Triangle invariant τ_abc(E,F,G): the six-wedge ratio attached to an
/// interior vertex (a,b,c) of Θ_n.
pub fn triangle_invariant(e: &Flag, f: &Flag, g: &Flag, a: usize, b: usize, c: usize) -> Rat {
    let n = e.n();
    assert_eq!(a + b + c, n);
    assert!(a > 0 && b > 0 && c > 0, "triangle invariant needs an interior vertex");
    let num1 = wedge3(e, a - 1, f, b + 1, g, c);
    let den1 = wedge3(e, a + 1, f, b - 1, g, c);
    let num2 = wedge3(e, a, f, b - 1, g, c + 1);
    let den2 = wedge3(e, a, f, b + 1, g, c - 1);
    let num3 = wedge3(e, a + 1, f, b, g, c - 1);
    let den3 = wedge3(e, a - 1, f, b, g, c + 1);
    assert!(
        !den1.is_zero() && !den2.is_zero() && !den3.is_zero(),
        "genericity failure: zero wedge in triangle invariant"
    );
    (num1 / den1) * (num2 / den2) * (num3 / den3)
}

/// Edge invariant ε_j(E,G,F,F′): signed four-wedge ratio across the common
/// edge of two adjacent triangles.
pub fn edge_invariant(e: &Flag, g: &Flag, f: &Flag, fp: &Flag, j: usize) -> Rat {
    let n = e.n();
    assert!((1..n).contains(&j));
    let num1 = wedge3(e, j, g, n - j - 1, f, 1);
    let den1 = wedge3(e, j, g, n - j - 1, fp, 1);
    let num2 = wedge3(e, j - 1, g, n - j, fp, 1);
    let den2 = wedge3(e, j - 1, g, n - j, f, 1);
    assert!(
        !den1.is_zero() && !den2.is_zero(),
        "genericity failure: zero wedge in edge invariant"
    );
    -(num1 / den1) * (num2 / den2)
}

/// For a generic pair, the lines L_a = E^{(a)} ∩ G^{(n−a+1)} and the
/// transport φ carrying (E,G) to the standard ascending/descending pair
/// (φ sends a chosen basis vector of L_a to the a-th standard basis vector).
pub fn pgl_transport_pair(e: &Flag, g: &Flag) -> QMat {
    let n = e.n();
    let mut cols = Vec::with_capacity(n);
    for a in 1..=n {
        let basis = column_space_intersection(&e.subspace(a), &g.subspace(n - a + 1));
        assert_eq!(basis.len(), 1, "genericity failure: L_{a} is not a line");
        cols.push(basis[0].clone());
    }
    let w = QMat::from_cols(cols);
    w.inverse().expect("line decomposition is a basis")
}

/// Seeded random flag with integer entries in [−9, 9]; rejects singular
/// matrices.
pub fn random_flag(rng: &mut ChaCha8Rng, n: usize) -> Flag {
    loop {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Rat::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
            }
        }
        if let Some(f) = Flag::new(m) {
            return f;
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random maximum-span flag triple (rejection sampling).
pub fn random_max_span_triple(seed: u64, n: usize) -> (Flag, Flag, Flag) {
    let mut rng = seeded_rng(seed);
    loop {
        let e = random_flag(&mut rng, n);
        let f = random_flag(&mut rng, n);
        let g = random_flag(&mut rng, n);
        if is_max_span_triple(&e, &f, &g) {
            return (e, f, g);
        }
    }
}

/// Random maximum-span flag quadruple (E,F,G,F′).
pub fn random_max_span_quad(seed: u64, n: usize) -> (Flag, Flag, Flag, Flag) {
    let mut rng = seeded_rng(seed);
    loop {
        let e = random_flag(&mut rng, n);
        let f = random_flag(&mut rng, n);
        let g = random_flag(&mut rng, n);
        let fp = random_flag(&mut rng, n);
        if is_max_span_quad(&e, &f, &g, &fp) {
            return (e, f, g, fp);
        }
    }
}
