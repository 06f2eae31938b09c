//! The snake-move factorization at n = 2..4 on both sides, the two parts of
//! the Weyl-ordering product lemma (with a negative control), and the
//! negative control showing the determinant normalizers are essential.

use fgq_core::ncmatrix::{quantum_side, shear_edge, shear_left, shear_right, NcMatrix};
use fgq_core::qtorus::{make_torus, tensor, TorusElement};
use fgq_core::quantum::{build_system, verify_factorization};
use fgq_core::quiver::{fg_poisson, Side};
use fgq_core::slnq::check_mnq;

#[test]
fn factorization_verifies_n4_both_sides() {
    for side in [Side::Left, Side::Right] {
        let sys = build_system(4, side).unwrap();
        let report = verify_factorization(&sys);
        assert!(report.passed(), "n = 4, side {side:?}:\n{report}");
    }
}

/// Product of entrywise-Weyl-ordered matrices over distinct tensor factors
/// equals the Weyl ordering of the commutative product.
#[test]
fn weyl_ordering_commutes_with_products_over_distinct_factors() {
    for n in 2i64..=4 {
        for side in [Side::Left, Side::Right] {
            let sys = build_system(n, side).unwrap();
            // Commutative side: same factors, everything specialized.
            let shadows: Vec<_> =
                sys.tensor.factors.iter().map(|t| t.commutative_shadow()).collect();
            let shadow_tensor = tensor(&shadows).unwrap();
            let nn = n as usize;
            let mut commutative = NcMatrix::identity(&shadow_tensor.torus, nn);
            let mut quantum = NcMatrix::identity(&sys.tensor.torus, nn);
            for (i, mv) in sys.plan.iter().enumerate() {
                let m_q = &sys.type_matrices[mv.matrix_index - 1];
                let m_c = m_q.specialize_commutative();
                commutative = commutative
                    .matmul(&m_c.map_entries(&shadow_tensor.torus, |e| shadow_tensor.inject(i, e)));
                quantum = quantum
                    .matmul(&m_q.map_entries(&sys.tensor.torus, |e| sys.tensor.inject(i, e)));
            }
            let lifted = commutative.map_entries(&sys.tensor.torus, |e| {
                TorusElement::weyl_from_commutative(&sys.tensor.torus, e)
            });
            for i in 0..nn {
                for j in 0..nn {
                    assert_eq!(
                        lifted.get(i, j),
                        quantum.get(i, j),
                        "n={n} side={side:?} entry ({i},{j})"
                    );
                }
            }
        }
    }
}

/// Negative control: the same statement fails when the factors share
/// noncommuting generators instead of sitting in distinct tensor factors.
#[test]
fn weyl_ordering_does_not_commute_with_products_over_shared_generators() {
    let t = make_torus(2, vec!["u".into(), "v".into()], vec![vec![0, 2], vec![-2, 0]]).unwrap();
    let u = TorusElement::generator(&t, 0);
    let v = TorusElement::generator(&t, 1);
    let product = u.mul(&v);
    let shadow = t.commutative_shadow();
    let commutative =
        TorusElement::generator(&shadow, 0).mul(&TorusElement::generator(&shadow, 1));
    let lifted = TorusElement::weyl_from_commutative(&t, &commutative);
    assert_ne!(product, lifted, "[u][v] must differ from [uv] when u, v do not commute");
}

/// An edge shearing matrix commutes with a left shearing matrix iff their
/// indices differ, and with a right shearing matrix iff k ≠ n − j (over a
/// commutative two-generator coefficient ring).
#[test]
fn shear_commutation_pattern() {
    for n in 2i64..=6 {
        let t = make_torus(n, vec!["z".into(), "x".into()], vec![vec![0, 0], vec![0, 0]])
            .unwrap();
        let z = TorusElement::generator(&t, 0);
        let x = TorusElement::generator(&t, 1);
        for k in 1..n as usize {
            let edge = shear_edge(&t, k, &z, true);
            for j in 1..n as usize {
                let xo = if j >= 2 { Some(&x) } else { None };
                let left = shear_left(&t, j, xo, true);
                let commute = edge.matmul(&left) == left.matmul(&edge);
                assert_eq!(commute, k != j, "edge {k} vs left {j}, n={n}");
                let right = shear_right(&t, j, xo, true);
                let commute = edge.matmul(&right) == right.matmul(&edge);
                assert_eq!(commute, k != n as usize - j, "edge {k} vs right {j}, n={n}");
            }
        }
    }
}

/// Negative control: stripping the determinant normalizers from the shear
/// factors breaks the quantum-matrix relations.
#[test]
fn unnormalized_matrices_fail_quantum_relations() {
    let spec = fg_poisson(4);
    for side in [Side::Left, Side::Right] {
        let broken = quantum_side(&spec, side, false);
        let report = check_mnq(&broken);
        assert!(
            !report.failures.is_empty(),
            "unnormalized {side:?} matrix unexpectedly satisfies the relations"
        );
        let good = quantum_side(&spec, side, true);
        assert!(check_mnq(&good).passed());
    }
}
