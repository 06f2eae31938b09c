//! Shared checks used by both the focused integration tests and the
//! acceptance suite. Every function panics with a descriptive message on
//! failure and returns normally on success.

#![allow(dead_code)]

use std::sync::Arc;

use fgq_core::flags::{
    edge_invariant, random_max_span_quad, random_max_span_triple, triangle_invariant, Flag,
};
use fgq_core::linalg::QMat;
use fgq_core::ncmatrix::{classical_triple, quantum_left, quantum_right, NcMatrix};
use fgq_core::qtorus::{tensor, HLaurent, QuantumTorus, Rat, TorusElement};
use fgq_core::quantum::{build_system, SnakeMoveSystem};
use fgq_core::quiver::{fg_poisson, FgQuiverSpec, Side, ThetaVertex};
use fgq_core::snakes::{
    all_sequences, change_of_basis, classify_adjacent, edge_move_matrices, edge_shear_cycle,
    left_basis, left_bottom, left_top, line_covector, move_core_matrix, preferred_sequence,
    right_basis, right_bottom, right_top, triangle_shear_cycle, uturn_matrices, Adjacency,
    Chirality, Snake, SnakeMove, SnakeSequence,
};
use num::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Frozen quantum-matrix entries.
// ---------------------------------------------------------------------------

/// Build Σ of Weyl monomials from (generator name, exponent numerator) lists.
fn weyl_sum(spec: &FgQuiverSpec, terms: &[&[(&str, i64)]]) -> TorusElement {
    let t = spec.torus().unwrap();
    let mut acc = TorusElement::zero(&t);
    for term in terms {
        let mut exps = vec![0i64; spec.num_gens()];
        for (name, numer) in *term {
            exps[spec.index_of_name(name).unwrap()] = *numer;
        }
        acc = acc.add(&TorusElement::weyl_of_exps(&t, &exps, &HLaurent::one()));
    }
    acc
}

pub fn check_frozen_left_n2() {
    let spec = fg_poisson(2);
    let l = quantum_left(&spec);
    assert_eq!(*l.get(0, 0), weyl_sum(&spec, &[&[("Z1", 1), ("Z'1", 1)]]));
    assert_eq!(*l.get(0, 1), weyl_sum(&spec, &[&[("Z1", 1), ("Z'1", -1)]]));
    assert!(l.get(1, 0).is_zero());
    assert_eq!(*l.get(1, 1), weyl_sum(&spec, &[&[("Z1", -1), ("Z'1", -1)]]));
}

fn three(
    prefix: [&'static str; 3],
    vals: [i64; 3],
) -> impl Iterator<Item = (&'static str, i64)> {
    prefix.into_iter().zip(vals)
}

pub fn check_frozen_left_entries_n4() {
    let spec = fg_poisson(4);
    let l = quantum_left(&spec);
    let term = |zs: [i64; 3], zps: [i64; 3], xs: [i64; 3]| -> Vec<(&str, i64)> {
        three(["Z1", "Z2", "Z3"], zs)
            .chain(three(["Z'1", "Z'2", "Z'3"], zps))
            .chain(three(["X1", "X2", "X3"], xs))
            .collect()
    };
    let cases: [(usize, usize, Vec<Vec<(&str, i64)>>); 4] = [
        (
            0,
            2,
            vec![
                term([3, 2, 1], [-1, -2, 1], [-1, -2, -1]),
                term([3, 2, 1], [-1, -2, 1], [-1, 2, -1]),
                term([3, 2, 1], [-1, -2, 1], [3, 2, -1]),
            ],
        ),
        (0, 3, vec![term([3, 2, 1], [-1, -2, -3], [-1, -2, -1])]),
        (
            1,
            2,
            vec![
                term([-1, 2, 1], [-1, -2, 1], [-1, -2, -1]),
                term([-1, 2, 1], [-1, -2, 1], [-1, 2, -1]),
            ],
        ),
        (1, 3, vec![term([-1, 2, 1], [-1, -2, -3], [-1, -2, -1])]),
    ];
    for (i, j, terms) in &cases {
        let refs: Vec<&[(&str, i64)]> = terms.iter().map(Vec::as_slice).collect();
        assert_eq!(*l.get(*i, *j), weyl_sum(&spec, &refs), "left entry ({i},{j})");
    }
}

pub fn check_frozen_right_entries_n4() {
    let spec = fg_poisson(4);
    let r = quantum_right(&spec);
    let term = |zs: [i64; 3], xs: [i64; 3], zpps: [i64; 3]| -> Vec<(&str, i64)> {
        three(["Z1", "Z2", "Z3"], zs)
            .chain(three(["X1", "X2", "X3"], xs))
            .chain(three(["Z''1", "Z''2", "Z''3"], zpps))
            .collect()
    };
    let cases: [(usize, usize, Vec<Vec<(&str, i64)>>); 4] = [
        (2, 0, vec![term([-1, -2, 1], [2, 1, 1], [3, 2, 1])]),
        (
            2,
            1,
            vec![
                term([-1, -2, 1], [-2, 1, 1], [-1, 2, 1]),
                term([-1, -2, 1], [2, 1, 1], [-1, 2, 1]),
            ],
        ),
        (3, 0, vec![term([-1, -2, -3], [2, 1, 1], [3, 2, 1])]),
        (
            3,
            1,
            vec![
                term([-1, -2, -3], [-2, -3, 1], [-1, 2, 1]),
                term([-1, -2, -3], [-2, 1, 1], [-1, 2, 1]),
                term([-1, -2, -3], [2, 1, 1], [-1, 2, 1]),
            ],
        ),
    ];
    for (i, j, terms) in &cases {
        let refs: Vec<&[(&str, i64)]> = terms.iter().map(Vec::as_slice).collect();
        assert_eq!(*r.get(*i, *j), weyl_sum(&spec, &refs), "right entry ({i},{j})");
    }
}

// ---------------------------------------------------------------------------
// Classical oracle.
// ---------------------------------------------------------------------------

fn check_moves(e: &Flag, f: &Flag, g: &Flag, chirality: Chirality) {
    let n = e.n() as i64;
    let head = ThetaVertex::new(n - 1, 0, 0);
    let u_fixed = line_covector(e, f, g, head);
    let snakes = Snake::enumerate(n, chirality);
    let mut moves_seen = 0;
    for s in &snakes {
        for s2 in &snakes {
            let mv = match classify_adjacent(s, s2) {
                Adjacency::NotAdjacent => continue,
                Adjacency::Tail => SnakeMove::Tail {
                    position: if chirality == Chirality::Left { 1 } else { n as usize },
                },
                Adjacency::Diamond { position, vertex } => SnakeMove::Diamond { position, vertex },
            };
            moves_seen += 1;
            let (u, u2) = match chirality {
                Chirality::Left => {
                    (left_basis(e, f, g, s, &u_fixed), left_basis(e, f, g, s2, &u_fixed))
                }
                Chirality::Right => {
                    (right_basis(e, f, g, s, &u_fixed), right_basis(e, f, g, s2, &u_fixed))
                }
            };
            let b = change_of_basis(&u, &u2);
            let expected = move_core_matrix(e, f, g, chirality, &mv);
            assert_eq!(b, expected, "{chirality:?} move {mv:?} from {:?}", s.vertices);
        }
    }
    assert!(moves_seen > 0);
}

/// Run the full classical oracle for one random configuration: triple-ratio
/// symmetries, diamond and tail moves on both sides, the edge transition,
/// the U-turn, and both shear-cycle families.
pub fn classical_oracle_seed(n: usize, seed: u64) {
    let (e, f, g, fp) = random_max_span_quad(seed, n);
    let ni = n as i64;

    // Triple-ratio symmetries: cyclic invariance and reversal-inversion.
    for a in 1..(ni - 1) {
        for b in 1..(ni - a) {
            let c = ni - a - b;
            if c < 1 {
                continue;
            }
            let (a, b, c) = (a as usize, b as usize, c as usize);
            let tau = triangle_invariant(&e, &f, &g, a, b, c);
            assert_eq!(tau, triangle_invariant(&g, &e, &f, c, a, b), "cyclic symmetry");
            assert_eq!(
                tau * triangle_invariant(&f, &e, &g, b, a, c),
                Rat::one(),
                "reversal inverts"
            );
        }
    }
    for j in 1..n {
        let eps = edge_invariant(&e, &g, &f, &fp, j);
        assert_eq!(eps * edge_invariant(&e, &g, &fp, &f, j), Rat::one(), "edge swap inverts");
    }

    // Diamond and tail moves.
    check_moves(&e, &f, &g, Chirality::Left);
    check_moves(&g, &e, &f, Chirality::Right);

    // Edge transition.
    let u_1 = line_covector(&g, &f, &e, ThetaVertex::new(ni - 1, 0, 0));
    let (b, expected) = edge_move_matrices(&e, &f, &g, &fp, &u_1);
    assert_eq!(b, expected, "edge transition n={n} seed={seed}");

    // U-turn.
    let u_1 = line_covector(&e, &f, &g, ThetaVertex::new(ni - 1, 0, 0));
    let (b, expected) = uturn_matrices(&e, &f, &g, &u_1);
    assert_eq!(b, expected, "u-turn n={n} seed={seed}");

    // Triangle shear cycles at every interior vertex, both orientations.
    for a in 1..(ni - 1) {
        for b in 1..(ni - a) {
            let c = ni - a - b;
            if c < 1 {
                continue;
            }
            let v = ThetaVertex::new(a, b, c);
            let p0 = line_covector(&e, &f, &g, ThetaVertex::new(a - 1, b, c));
            let tau = triangle_invariant(&e, &f, &g, a as usize, b as usize, c as usize);
            assert_eq!(triangle_shear_cycle(&e, &f, &g, v, true, &p0), tau);
            assert_eq!(triangle_shear_cycle(&e, &f, &g, v, false, &p0) * tau, Rat::one());
        }
    }

    // Edge shear cycles across the shared edge, both orientations.
    for j in 1..n {
        let p0 = line_covector(&e, &fp, &g, ThetaVertex::new(j as i64, 0, ni - 1 - j as i64));
        let eps = edge_invariant(&e, &g, &f, &fp, j);
        assert_eq!(edge_shear_cycle(&e, &f, &g, &fp, j, true, &p0), -eps.clone());
        assert_eq!(edge_shear_cycle(&e, &f, &g, &fp, j, false, &p0) * (-eps), Rat::one());
    }
}

// ---------------------------------------------------------------------------
// Quantum ↔ classical bridge.
// ---------------------------------------------------------------------------

pub fn check_specialization(n: i64) {
    let spec = fg_poisson(n);
    for side in [Side::Left, Side::Right] {
        let q = fgq_core::ncmatrix::quantum_side(&spec, side, true);
        let c = classical_triple(&spec, side, true);
        assert_eq!(q.specialize_commutative(), c, "n={n} side={side:?}");
    }
}

fn sequence_product(e: &Flag, f: &Flag, g: &Flag, seq: &SnakeSequence) -> QMat {
    let n = e.n();
    let mut acc = QMat::identity(n);
    for mv in &seq.moves {
        acc = acc.matmul(&move_core_matrix(e, f, g, seq.chirality, mv));
    }
    acc
}

pub fn check_path_independence(n: i64, seed: u64) {
    let (e, f, g) = random_max_span_triple(seed, n as usize);
    let seqs = all_sequences(n, Chirality::Left);
    assert!(seqs.len() > 1 || n <= 3, "expected branching sweeps for n >= 4");
    let reference = sequence_product(&e, &f, &g, &preferred_sequence(n, Chirality::Left));
    for seq in &seqs {
        assert_eq!(sequence_product(&e, &f, &g, seq), reference, "left n={n}");
    }
    let u_n = line_covector(&e, &f, &g, ThetaVertex::new(n - 1, 0, 0));
    let u_bot = left_basis(&e, &f, &g, &left_bottom(n), &u_n);
    let u_top = left_basis(&e, &f, &g, &left_top(n), &u_n);
    assert_eq!(reference, change_of_basis(&u_bot, &u_top), "left telescoping n={n}");

    let seqs = all_sequences(n, Chirality::Right);
    let reference = sequence_product(&g, &e, &f, &preferred_sequence(n, Chirality::Right));
    for seq in &seqs {
        assert_eq!(sequence_product(&g, &e, &f, seq), reference, "right n={n}");
    }
    let u_1 = line_covector(&g, &e, &f, ThetaVertex::new(n - 1, 0, 0));
    let u_bot = right_basis(&g, &e, &f, &right_bottom(n), &u_1);
    let u_top = right_basis(&g, &e, &f, &right_top(n), &u_1);
    assert_eq!(reference, change_of_basis(&u_bot, &u_top), "right telescoping n={n}");
}

// ---------------------------------------------------------------------------
// Weyl product and shear commutation lemmas.
// ---------------------------------------------------------------------------

pub fn check_weyl_product_lemma(sys: &SnakeMoveSystem) {
    let shadows: Vec<_> = sys.tensor.factors.iter().map(|t| t.commutative_shadow()).collect();
    let shadow_tensor = tensor(&shadows).unwrap();
    let nn = sys.n as usize;
    let mut commutative = NcMatrix::identity(&shadow_tensor.torus, nn);
    let mut quantum = NcMatrix::identity(&sys.tensor.torus, nn);
    for (i, mv) in sys.plan.iter().enumerate() {
        let m_q = &sys.type_matrices[mv.matrix_index - 1];
        let m_c = m_q.specialize_commutative();
        commutative = commutative
            .matmul(&m_c.map_entries(&shadow_tensor.torus, |e| shadow_tensor.inject(i, e)));
        quantum = quantum.matmul(&m_q.map_entries(&sys.tensor.torus, |e| sys.tensor.inject(i, e)));
    }
    let lifted = commutative.map_entries(&sys.tensor.torus, |e| {
        TorusElement::weyl_from_commutative(&sys.tensor.torus, e)
    });
    assert_eq!(lifted, quantum, "n={} side={:?}", sys.n, sys.side);
}

pub fn check_weyl_negative_control() {
    let t = fgq_core::qtorus::make_torus(
        2,
        vec!["u".into(), "v".into()],
        vec![vec![0, 2], vec![-2, 0]],
    )
    .unwrap();
    let u = TorusElement::generator(&t, 0);
    let v = TorusElement::generator(&t, 1);
    let shadow = t.commutative_shadow();
    let commutative = TorusElement::generator(&shadow, 0).mul(&TorusElement::generator(&shadow, 1));
    assert_ne!(
        u.mul(&v),
        TorusElement::weyl_from_commutative(&t, &commutative),
        "[u][v] must differ from [uv] when u, v do not commute"
    );
}

pub fn check_shear_commutation(n: i64) {
    use fgq_core::ncmatrix::{shear_edge, shear_left, shear_right};
    let t = fgq_core::qtorus::make_torus(
        n,
        vec!["z".into(), "x".into()],
        vec![vec![0, 0], vec![0, 0]],
    )
    .unwrap();
    let z = TorusElement::generator(&t, 0);
    let x = TorusElement::generator(&t, 1);
    for k in 1..n as usize {
        let edge = shear_edge(&t, k, &z, true);
        for j in 1..n as usize {
            let xo = if j >= 2 { Some(&x) } else { None };
            let left = shear_left(&t, j, xo, true);
            assert_eq!(edge.matmul(&left) == left.matmul(&edge), k != j, "edge {k} vs left {j}");
            let right = shear_right(&t, j, xo, true);
            assert_eq!(
                edge.matmul(&right) == right.matmul(&edge),
                k != n as usize - j,
                "edge {k} vs right {j}"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Randomized algebraic properties (seeded, for the acceptance run).
// ---------------------------------------------------------------------------

fn random_word(rng: &mut ChaCha8Rng, num_gens: usize, max_len: usize) -> Vec<(usize, i64)> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| (rng.gen_range(0..num_gens), rng.gen_range(-3..=3))).collect()
}

pub fn check_weyl_word_invariance(t: &Arc<QuantumTorus>, trials: usize, seed: u64) {
    let mut rng = fgq_core::flags::seeded_rng(seed);
    let k = t.num_gens();
    for _ in 0..trials {
        let word = random_word(&mut rng, k, 6);
        let reference = TorusElement::weyl_word(t, &word);
        let mut shuffled = word.clone();
        for _ in 0..8 {
            let a = rng.gen_range(0..shuffled.len());
            let b = rng.gen_range(0..shuffled.len());
            shuffled.swap(a, b);
        }
        assert_eq!(TorusElement::weyl_word(t, &shuffled), reference, "word {word:?}");
    }
}

pub fn check_confluence(t: &Arc<QuantumTorus>, trials: usize, seed: u64) {
    let mut rng = fgq_core::flags::seeded_rng(seed);
    let k = t.num_gens();
    for _ in 0..trials {
        let word = random_word(&mut rng, k, 5);
        let factors: Vec<TorusElement> = word
            .iter()
            .map(|&(i, e)| TorusElement::generator(t, i).pow_monomial(e, 1).unwrap())
            .collect();
        let left_fold = factors.iter().fold(TorusElement::one(t), |acc, f| acc.mul(f));
        let right_fold = factors.iter().rev().fold(TorusElement::one(t), |acc, f| f.mul(&acc));
        assert_eq!(left_fold, right_fold, "fold direction, word {word:?}");
        if factors.len() >= 2 {
            let s = rng.gen_range(1..factors.len());
            let head = factors[..s].iter().fold(TorusElement::one(t), |a, f| a.mul(f));
            let tail = factors[s..].iter().fold(TorusElement::one(t), |a, f| a.mul(f));
            assert_eq!(head.mul(&tail), left_fold, "split at {s}, word {word:?}");
        }
    }
}

pub fn check_embedding_multiplicative(sys: &SnakeMoveSystem, pairs: usize, seed: u64) {
    let mut rng = fgq_core::flags::seeded_rng(seed);
    let k = sys.sub_torus.num_gens();
    for _ in 0..pairs {
        let u = TorusElement::weyl_word(&sys.sub_torus, &random_word(&mut rng, k, 3))
            .scale(&HLaurent::h_pow(rng.gen_range(-2..=2)));
        let v = TorusElement::weyl_word(&sys.sub_torus, &random_word(&mut rng, k, 3));
        assert_eq!(
            sys.embedding.apply(&u.mul(&v)).unwrap(),
            sys.embedding.apply(&u).unwrap().mul(&sys.embedding.apply(&v).unwrap()),
            "embedding multiplicativity"
        );
    }
}

pub fn build_system_checked(n: i64, side: Side) -> SnakeMoveSystem {
    build_system(n, side).unwrap_or_else(|e| panic!("building n={n} {side:?} system: {e}"))
}
