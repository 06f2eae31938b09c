//! Membership tests for the quantum matrix algebra M_n^q and the quantum
//! special linear group SL_n^q, and the quantum determinant.
//!
//! A square matrix M over a quantum torus T is a T-point of M_n^q when every
//! 2×2 submatrix (rows i < j, columns k < m) satisfies the quantum-matrix
//! relations
//!
//! ```text
//!   ba = q ab,  dc = q cd,  ca = q ac,  db = q bd,
//!   bc = cb,    da − ad = (q − q⁻¹) bc
//! ```
//!
//! for (a,b,c,d) = (M_ik, M_im, M_jk, M_jm); it is an SL_n^q point when in
//! addition Det^q(M) = 1.

use crate::ncmatrix::NcMatrix;
use crate::qtorus::{HLaurent, TorusElement};
use itertools::Itertools;
use std::fmt;

/// One failed relation, with the exact residual (lhs − rhs).
#[derive(Clone, Debug)]
pub struct RelationFailure {
    pub relation: String,
    pub rows: (usize, usize),
    pub cols: (usize, usize),
    pub residual: TorusElement,
}

/// Outcome of a relation check; `passed` iff `failures` is empty.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.failures.extend(other.failures);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "failures": self
                .failures
                .iter()
                .map(|f| serde_json::json!({
                    "relation": f.relation,
                    "rows": [f.rows.0, f.rows.1],
                    "cols": [f.cols.0, f.cols.1],
                    "residual": f.residual.to_json(),
                }))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "all relations hold")
        } else {
            writeln!(f, "{} relation failure(s):", self.failures.len())?;
            for fail in &self.failures {
                writeln!(
                    f,
                    "  {} at rows {:?} cols {:?}: residual {}",
                    fail.relation, fail.rows, fail.cols, fail.residual
                )?;
            }
            Ok(())
        }
    }
}

/// Check the six 2×2 quantum-matrix relations on (a,b,c,d).
pub fn check_m2q(
    a: &TorusElement,
    b: &TorusElement,
    c: &TorusElement,
    d: &TorusElement,
) -> RelationReport {
    let t = &a.torus;
    let n = t.n;
    let q = HLaurent::q_pow(1, n);
    let qinv = HLaurent::q_pow(-1, n);
    let q_minus_qinv = q.sub(&qinv);
    let mut failures = Vec::new();
    let mut check = |name: &str, residual: TorusElement| {
        if !residual.is_zero() {
            failures.push(RelationFailure {
                relation: name.to_string(),
                rows: (0, 1),
                cols: (0, 1),
                residual,
            });
        }
    };
    check("ba=qab", &b.mul(a) - &a.mul(b).scale(&q));
    check("dc=qcd", &d.mul(c) - &c.mul(d).scale(&q));
    check("ca=qac", &c.mul(a) - &a.mul(c).scale(&q));
    check("db=qbd", &d.mul(b) - &b.mul(d).scale(&q));
    check("bc=cb", &b.mul(c) - &c.mul(b));
    check(
        "da-ad=(q-q^{-1})bc",
        &(&d.mul(a) - &a.mul(d)) - &b.mul(c).scale(&q_minus_qinv),
    );
    RelationReport { failures }
}

/// Check that every 2×2 submatrix of M is a point of M_2^q.
pub fn check_mnq(m: &NcMatrix) -> RelationReport {
    assert_eq!(m.rows, m.cols, "check_mnq requires a square matrix");
    let size = m.rows;
    let mut report = RelationReport::default();
    for i in 0..size {
        for j in (i + 1)..size {
            for k in 0..size {
                for l in (k + 1)..size {
                    let sub = check_m2q(m.get(i, k), m.get(i, l), m.get(j, k), m.get(j, l));
                    for mut f in sub.failures {
                        f.rows = (i, j);
                        f.cols = (k, l);
                        report.failures.push(f);
                    }
                }
            }
        }
    }
    report
}

/// Quantum determinant: Σ_{σ∈S_n} (−q)^{ℓ(σ)} M_{1σ(1)} M_{2σ(2)} ⋯ M_{nσ(n)}
/// with factors in ascending row order, ℓ = inversion count. For triangular
/// M_n^q points this is the ordered diagonal product.
pub fn quantum_determinant(m: &NcMatrix) -> TorusElement {
    assert_eq!(m.rows, m.cols, "quantum determinant requires a square matrix");
    let size = m.rows;
    let t = &m.torus;
    let n = t.n;
    let mut det = TorusElement::zero(t);
    for perm in (0..size).permutations(size) {
        if perm.iter().enumerate().any(|(i, &j)| m.get(i, j).is_zero()) {
            continue;
        }
        let mut inv = 0i64;
        for i in 0..size {
            for j in (i + 1)..size {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        let mut prod = TorusElement::one(t);
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(m.get(i, j));
        }
        // (−q)^ℓ = (−1)^ℓ h^{2n²ℓ}.
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        let coeff = HLaurent::integer(sign).mul(&HLaurent::q_pow(inv, n));
        det = det.add(&prod.scale(&coeff));
    }
    det
}

/// SL_n^q membership: M_n^q relations plus Det^q(M) = 1.
pub fn check_slnq(m: &NcMatrix) -> RelationReport {
    let mut report = check_mnq(m);
    let det = quantum_determinant(m);
    let residual = &det - &TorusElement::one(&m.torus);
    if !residual.is_zero() {
        report.failures.push(RelationFailure {
            relation: "Det^q=1".to_string(),
            rows: (0, 0),
            cols: (0, 0),
            residual,
        });
    }
    report
}
