//! Classical oracle: exact rational verification that the closed-form
//! change-of-basis matrices of the elementary snake moves, edge transitions,
//! U-turns and coplanarity shear cycles agree with the matrices computed
//! directly from projective bases of random generic flags.

use fgq_core::flags::{
    edge_invariant, random_max_span_quad, random_max_span_triple, triangle_invariant, Flag,
};
use fgq_core::qtorus::Rat;
use fgq_core::quiver::ThetaVertex;
use fgq_core::snakes::{
    change_of_basis, classify_adjacent, edge_move_matrices, edge_shear_cycle, left_basis,
    line_covector, move_core_matrix, right_basis, triangle_shear_cycle, uturn_matrices, Adjacency,
    Chirality, Snake, SnakeMove,
};
use num::One;

fn check_moves_left(e: &Flag, f: &Flag, g: &Flag) {
    let n = e.n() as i64;
    let head = ThetaVertex::new(n - 1, 0, 0);
    let u_n = line_covector(e, f, g, head);
    let snakes = Snake::enumerate(n, Chirality::Left);
    let mut moves_seen = 0;
    for s in &snakes {
        for s2 in &snakes {
            let mv = match classify_adjacent(s, s2) {
                Adjacency::NotAdjacent => continue,
                Adjacency::Tail => SnakeMove::Tail { position: 1 },
                Adjacency::Diamond { position, vertex } => SnakeMove::Diamond { position, vertex },
            };
            moves_seen += 1;
            let u = left_basis(e, f, g, s, &u_n);
            let u2 = left_basis(e, f, g, s2, &u_n);
            let b = change_of_basis(&u, &u2);
            let expected = move_core_matrix(e, f, g, Chirality::Left, &mv);
            assert_eq!(b, expected, "left move {mv:?} from {:?}", s.vertices);
        }
    }
    assert!(moves_seen > 0);
}

fn check_moves_right(e: &Flag, f: &Flag, g: &Flag) {
    let n = e.n() as i64;
    let head = ThetaVertex::new(n - 1, 0, 0);
    let u_1 = line_covector(e, f, g, head);
    let snakes = Snake::enumerate(n, Chirality::Right);
    for s in &snakes {
        for s2 in &snakes {
            let mv = match classify_adjacent(s, s2) {
                Adjacency::NotAdjacent => continue,
                Adjacency::Tail => SnakeMove::Tail { position: n as usize },
                Adjacency::Diamond { position, vertex } => SnakeMove::Diamond { position, vertex },
            };
            let u = right_basis(e, f, g, s, &u_1);
            let u2 = right_basis(e, f, g, s2, &u_1);
            let b = change_of_basis(&u, &u2);
            let expected = move_core_matrix(e, f, g, Chirality::Right, &mv);
            assert_eq!(b, expected, "right move {mv:?} from {:?}", s.vertices);
        }
    }
}

#[test]
fn diamond_and_tail_moves_match_cores() {
    for n in [3usize, 4] {
        for seed in 0..3u64 {
            let (e, f, g) = random_max_span_triple(seed, n);
            check_moves_left(&e, &f, &g);
            check_moves_right(&e, &f, &g);
        }
    }
}

#[test]
fn edge_transition_is_diagonal_in_edge_invariants() {
    for n in [2usize, 3, 4] {
        for seed in 0..3u64 {
            let (e, f, g, fp) = random_max_span_quad(seed, n);
            let u_1 = line_covector(&g, &f, &e, ThetaVertex::new(n as i64 - 1, 0, 0));
            let (b, expected) = edge_move_matrices(&e, &f, &g, &fp, &u_1);
            assert_eq!(b, expected, "edge transition n={n} seed={seed}");
        }
    }
}

#[test]
fn uturn_transition_is_alternating_antidiagonal() {
    for n in [2usize, 3, 4] {
        for seed in 0..3u64 {
            let (e, f, g) = random_max_span_triple(seed, n);
            let u_1 = line_covector(&e, &f, &g, ThetaVertex::new(n as i64 - 1, 0, 0));
            let (b, expected) = uturn_matrices(&e, &f, &g, &u_1);
            assert_eq!(b, expected, "u-turn n={n} seed={seed}");
        }
    }
}

#[test]
fn triangle_shear_cycle_gives_triangle_invariant() {
    for n in [3usize, 4] {
        for seed in 0..3u64 {
            let (e, f, g) = random_max_span_triple(seed, n);
            for a in 1..(n as i64 - 1) {
                for b in 1..(n as i64 - a) {
                    let c = n as i64 - a - b;
                    if c < 1 {
                        continue;
                    }
                    let v = ThetaVertex::new(a, b, c);
                    let p0 = line_covector(&e, &f, &g, ThetaVertex::new(a - 1, b, c));
                    let tau =
                        triangle_invariant(&e, &f, &g, a as usize, b as usize, c as usize);
                    let ccw = triangle_shear_cycle(&e, &f, &g, v, true, &p0);
                    let cw = triangle_shear_cycle(&e, &f, &g, v, false, &p0);
                    assert_eq!(ccw, tau, "ccw triangle cycle at {v:?}");
                    assert_eq!(cw * tau, Rat::one(), "cw triangle cycle at {v:?}");
                }
            }
        }
    }
}

#[test]
fn edge_shear_cycle_gives_minus_edge_invariant() {
    for n in [2usize, 3, 4] {
        for seed in 0..3u64 {
            let (e, f, g, fp) = random_max_span_quad(seed, n);
            for j in 1..n {
                let p0 = line_covector(
                    &e,
                    &fp,
                    &g,
                    ThetaVertex::new(j as i64, 0, n as i64 - 1 - j as i64),
                );
                let eps = edge_invariant(&e, &g, &f, &fp, j);
                let ccw = edge_shear_cycle(&e, &f, &g, &fp, j, true, &p0);
                let cw = edge_shear_cycle(&e, &f, &g, &fp, j, false, &p0);
                assert_eq!(ccw, -eps.clone(), "ccw edge cycle at j={j}");
                assert_eq!(cw * (-eps), Rat::one(), "cw edge cycle at j={j}");
            }
        }
    }
}
