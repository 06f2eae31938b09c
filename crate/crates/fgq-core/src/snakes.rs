//! Snakes in the discrete triangle Θ_{n−1}, projective bases of the dual
//! space built from snakes, the elementary snake moves (diamond and tail)
//! with their exact change-of-basis matrices, edge and U-turn transitions
//! between triangles, and the coplanarity shear cycles.
//!
//! Conventions:
//! * A **left snake** has σ_k = (k−1, β_k, γ_k) with β, γ non-increasing in
//!   k; every left snake ends at the head (n−1, 0, 0). Its projective basis
//!   is built descending from a normalization covector u_n.
//! * A **right snake** (standard head) has σ_k = (n−k, β_k, γ_k) with β, γ
//!   non-decreasing in k; it starts at the head (n−1, 0, 0) at position 1 and
//!   its basis is built ascending from u_1.
//! * A move flips one snake position; for left snakes the flipped vertex goes
//!   from the right child (γ-step) to the left child (β-step) of its
//!   successor, and for right snakes from the left child (β-step) to the
//!   right child (γ-step) of its predecessor.
//! * The change-of-basis matrix of a move at position r equals, exactly, the
//!   unnormalized core of an elementary shearing matrix: S^left_r for left
//!   snakes, and S^right_{n−r+1} for right snakes (the basis recursion for
//!   right snakes ascends, which reflects the shear index).

use crate::flags::{edge_invariant, triangle_invariant, Flag};
use crate::linalg::QMat;
use crate::qtorus::Rat;
use crate::quiver::ThetaVertex;
use num::{One, Zero};

/// Snake chirality.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Chirality {
    Left,
    Right,
}

/// A snake: n vertices of Θ_{n−1}.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Snake {
    pub n: i64,
    pub chirality: Chirality,
    pub vertices: Vec<ThetaVertex>,
}

impl Snake {
    pub fn new(n: i64, chirality: Chirality, vertices: Vec<ThetaVertex>) -> Option<Self> {
        let s = Snake { n, chirality, vertices };
        if s.is_valid() {
            Some(s)
        } else {
            None
        }
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n;
        if self.vertices.len() != n as usize {
            return false;
        }
        if self.vertices.iter().any(|v| v.level() != n - 1 || v.a < 0 || v.b < 0 || v.c < 0) {
            return false;
        }
        match self.chirality {
            Chirality::Left => (0..n as usize).all(|i| self.vertices[i].a == i as i64) && {
                (0..n as usize - 1).all(|i| {
                    self.vertices[i].b >= self.vertices[i + 1].b
                        && self.vertices[i].c >= self.vertices[i + 1].c
                })
            },
            Chirality::Right => {
                (0..n as usize).all(|i| self.vertices[i].a == n - 1 - i as i64) && {
                    (0..n as usize - 1).all(|i| {
                        self.vertices[i].b <= self.vertices[i + 1].b
                            && self.vertices[i].c <= self.vertices[i + 1].c
                    })
                }
            }
        }
    }

    /// Vertex at 1-based position k.
    pub fn at(&self, k: usize) -> ThetaVertex {
        self.vertices[k - 1]
    }

    /// All snakes of the given chirality (2^{n−1} of them).
    pub fn enumerate(n: i64, chirality: Chirality) -> Vec<Snake> {
        let mut out = Vec::new();
        // Each step chooses a β-increment or γ-increment.
        for mask in 0..(1u64 << (n - 1)) {
            let mut vertices = Vec::with_capacity(n as usize);
            match chirality {
                Chirality::Left => {
                    // Build from the head downward, then reverse.
                    let mut b = 0i64;
                    let mut c = 0i64;
                    let mut rev = vec![ThetaVertex::new(n - 1, 0, 0)];
                    for step in 0..(n - 1) {
                        if mask >> step & 1 == 1 {
                            b += 1;
                        } else {
                            c += 1;
                        }
                        rev.push(ThetaVertex::new(n - 2 - step, b, c));
                    }
                    rev.reverse();
                    vertices = rev;
                }
                Chirality::Right => {
                    let mut b = 0i64;
                    let mut c = 0i64;
                    vertices.push(ThetaVertex::new(n - 1, 0, 0));
                    for step in 0..(n - 1) {
                        if mask >> step & 1 == 1 {
                            b += 1;
                        } else {
                            c += 1;
                        }
                        vertices.push(ThetaVertex::new(n - 2 - step, b, c));
                    }
                }
            }
            out.push(Snake { n, chirality, vertices });
        }
        debug_assert!(out.iter().all(Snake::is_valid));
        out
    }

    /// Apply the elementary move at 1-based position r, if valid: returns the
    /// flipped snake.
    pub fn apply_move(&self, r: usize) -> Option<Snake> {
        let n = self.n as usize;
        let mut vs = self.vertices.clone();
        match self.chirality {
            Chirality::Left => {
                if r >= n {
                    return None;
                }
                let parent = self.at(r + 1);
                let right_child = ThetaVertex::new(parent.a - 1, parent.b, parent.c + 1);
                let left_child = ThetaVertex::new(parent.a - 1, parent.b + 1, parent.c);
                if self.at(r) != right_child {
                    return None;
                }
                vs[r - 1] = left_child;
            }
            Chirality::Right => {
                if r < 2 || r > n {
                    return None;
                }
                let parent = self.at(r - 1);
                let left_child = ThetaVertex::new(parent.a - 1, parent.b + 1, parent.c);
                let right_child = ThetaVertex::new(parent.a - 1, parent.b, parent.c + 1);
                if self.at(r) != left_child {
                    return None;
                }
                vs[r - 1] = right_child;
            }
        }
        Snake::new(self.n, self.chirality, vs)
    }

    /// Valid move positions from this snake.
    pub fn valid_moves(&self) -> Vec<usize> {
        (1..=self.n as usize).filter(|&r| self.apply_move(r).is_some()).collect()
    }
}

/// Classification of an ordered snake pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Adjacency {
    /// Diamond move at the given position, with the internal Θ_n vertex.
    Diamond { position: usize, vertex: ThetaVertex },
    /// Tail move (position 1 for left snakes, n for right snakes).
    Tail,
    NotAdjacent,
}

/// Classify the ordered pair (σ, σ′): is σ′ the result of an elementary move
/// on σ?
pub fn classify_adjacent(s: &Snake, s2: &Snake) -> Adjacency {
    if s.n != s2.n || s.chirality != s2.chirality || s == s2 {
        return Adjacency::NotAdjacent;
    }
    let n = s.n as usize;
    let diffs: Vec<usize> =
        (1..=n).filter(|&k| s.at(k) != s2.at(k)).collect();
    if diffs.len() != 1 {
        return Adjacency::NotAdjacent;
    }
    let r = diffs[0];
    match s.apply_move(r) {
        Some(moved) if moved == *s2 => match s.chirality {
            Chirality::Left => {
                if r == 1 {
                    Adjacency::Tail
                } else {
                    let succ = s.at(r + 1);
                    Adjacency::Diamond {
                        position: r,
                        vertex: ThetaVertex::new(r as i64 - 1, succ.b + 1, succ.c + 1),
                    }
                }
            }
            Chirality::Right => {
                if r == n {
                    Adjacency::Tail
                } else {
                    let pred = s.at(r - 1);
                    Adjacency::Diamond {
                        position: r,
                        vertex: ThetaVertex::new(s.n - r as i64, pred.b + 1, pred.c + 1),
                    }
                }
            }
        },
        _ => Adjacency::NotAdjacent,
    }
}

/// One move of a snake sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SnakeMove {
    Tail {
        /// Changed snake position (1 for left, n for right snakes).
        position: usize,
    },
    Diamond {
        position: usize,
        /// Internal Θ_n vertex in the coordinates of the snake's own frame.
        vertex: ThetaVertex,
    },
}

impl SnakeMove {
    pub fn position(&self) -> usize {
        match self {
            SnakeMove::Tail { position } => *position,
            SnakeMove::Diamond { position, .. } => *position,
        }
    }

    /// Index of the elementary shearing matrix realizing this move.
    pub fn matrix_index(&self, n: usize, chirality: Chirality) -> usize {
        match chirality {
            Chirality::Left => match self {
                SnakeMove::Tail { .. } => 1,
                SnakeMove::Diamond { position, .. } => *position,
            },
            Chirality::Right => match self {
                SnakeMove::Tail { .. } => 1,
                SnakeMove::Diamond { position, .. } => n - position + 1,
            },
        }
    }
}

/// An adjacent sequence of snakes with its move labels.
#[derive(Clone, Debug)]
pub struct SnakeSequence {
    pub n: i64,
    pub chirality: Chirality,
    pub snakes: Vec<Snake>,
    pub moves: Vec<SnakeMove>,
}

impl SnakeSequence {
    pub fn from_snakes(snakes: Vec<Snake>) -> Option<Self> {
        let first = snakes.first()?;
        let n = first.n;
        let chirality = first.chirality;
        let mut moves = Vec::new();
        for w in snakes.windows(2) {
            match classify_adjacent(&w[0], &w[1]) {
                Adjacency::Tail => moves.push(SnakeMove::Tail {
                    position: if chirality == Chirality::Left { 1 } else { n as usize },
                }),
                Adjacency::Diamond { position, vertex } => {
                    moves.push(SnakeMove::Diamond { position, vertex })
                }
                Adjacency::NotAdjacent => return None,
            }
        }
        Some(SnakeSequence { n, chirality, snakes, moves })
    }
}

/// Bottom snake of the left setting: σ_k = (k−1, 0, n−k).
pub fn left_bottom(n: i64) -> Snake {
    Snake::new(
        n,
        Chirality::Left,
        (1..=n).map(|k| ThetaVertex::new(k - 1, 0, n - k)).collect(),
    )
    .unwrap()
}

/// Top snake of the left setting: σ_k = (k−1, n−k, 0).
pub fn left_top(n: i64) -> Snake {
    Snake::new(
        n,
        Chirality::Left,
        (1..=n).map(|k| ThetaVertex::new(k - 1, n - k, 0)).collect(),
    )
    .unwrap()
}

/// Bottom snake of the right setting in its rotated frame (see
/// `rotate_to_right_frame`): all β-steps.
pub fn right_bottom(n: i64) -> Snake {
    Snake::new(
        n,
        Chirality::Right,
        (1..=n).map(|k| ThetaVertex::new(n - k, k - 1, 0)).collect(),
    )
    .unwrap()
}

/// Top snake of the right setting in the rotated frame: all γ-steps.
pub fn right_top(n: i64) -> Snake {
    Snake::new(
        n,
        Chirality::Right,
        (1..=n).map(|k| ThetaVertex::new(n - k, 0, k - 1)).collect(),
    )
    .unwrap()
}

/// The right setting works with snakes headed at the corner (0,0,n−1) of the
/// triangle Θ(E,F,G); these are standard right snakes in the rotated frame
/// Θ(G,E,F) with coordinates (α̃,β̃,γ̃) = (γ,α,β). This converts a rotated
/// Θ_n vertex back to (E,F,G) coordinates.
pub fn rotated_vertex_to_efg(v: ThetaVertex) -> ThetaVertex {
    ThetaVertex::new(v.b, v.c, v.a)
}

/// The preferred monotone sweep from the bottom to the top snake.
///
/// Left: for k = n−1 down to 1, a tail move followed by diamond moves at
/// positions 2..k. Right (rotated frame): for each group, a tail move
/// followed by diamond moves at positions n−1 down through the group.
pub fn preferred_sequence(n: i64, chirality: Chirality) -> SnakeSequence {
    let mut snakes = vec![match chirality {
        Chirality::Left => left_bottom(n),
        Chirality::Right => right_bottom(n),
    }];
    let push = |snakes: &mut Vec<Snake>, r: usize| {
        let next = snakes.last().unwrap().apply_move(r).expect("preferred move is valid");
        snakes.push(next);
    };
    match chirality {
        Chirality::Left => {
            for k in (1..n as usize).rev() {
                push(&mut snakes, 1);
                for l in 2..=k {
                    push(&mut snakes, l);
                }
            }
        }
        Chirality::Right => {
            for g in (1..n as usize).rev() {
                push(&mut snakes, n as usize);
                for r in ((n as usize - g + 1)..n as usize).rev() {
                    push(&mut snakes, r);
                }
            }
        }
    }
    let seq = SnakeSequence::from_snakes(snakes).expect("preferred sweep is adjacent");
    debug_assert_eq!(seq.moves.len(), (n * (n - 1) / 2) as usize);
    debug_assert_eq!(
        *seq.snakes.last().unwrap(),
        match chirality {
            Chirality::Left => left_top(n),
            Chirality::Right => right_top(n),
        }
    );
    seq
}

/// All monotone snake sequences from the bottom to the top snake (used for
/// the exhaustive path-independence check at small n).
pub fn all_sequences(n: i64, chirality: Chirality) -> Vec<SnakeSequence> {
    let start = match chirality {
        Chirality::Left => left_bottom(n),
        Chirality::Right => right_bottom(n),
    };
    let goal = match chirality {
        Chirality::Left => left_top(n),
        Chirality::Right => right_top(n),
    };
    let mut out = Vec::new();
    let mut stack = vec![vec![start]];
    while let Some(path) = stack.pop() {
        let last = path.last().unwrap();
        if *last == goal {
            out.push(SnakeSequence::from_snakes(path).unwrap());
            continue;
        }
        for r in last.valid_moves() {
            let next = last.apply_move(r).unwrap();
            let mut p = path.clone();
            p.push(next);
            stack.push(p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Projective bases from flags
// ---------------------------------------------------------------------------

/// The line L_{(α,β,γ)} = (E^{(α)} ⊕ F^{(β)} ⊕ G^{(γ)})^⊥ as a single
/// spanning covector (row vector), for α+β+γ = n−1.
pub fn line_covector(e: &Flag, f: &Flag, g: &Flag, v: ThetaVertex) -> Vec<Rat> {
    let span = e
        .subspace(v.a as usize)
        .hcat(&f.subspace(v.b as usize))
        .hcat(&g.subspace(v.c as usize));
    let kernel = span.transpose().kernel();
    assert_eq!(kernel.len(), 1, "genericity failure: L_{{{v:?}}} is not a line");
    kernel.into_iter().next().unwrap()
}

fn solve_coplanar(u: &[Rat], wl: &[Rat], wr: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    // Solve a·wl + b·wr = −u; return (a·wl, b·wr).
    let m = QMat::from_cols(vec![wl.to_vec(), wr.to_vec()]);
    let rhs: Vec<Rat> = u.iter().map(|x| -x.clone()).collect();
    let sol = m.solve(&rhs).expect("coplanarity system is solvable for generic flags");
    let ul: Vec<Rat> = wl.iter().map(|x| x * &sol[0]).collect();
    let ur: Vec<Rat> = wr.iter().map(|x| x * &sol[1]).collect();
    (ul, ur)
}

/// Projective basis of a left snake, built descending from the normalization
/// covector `u_n` ∈ L_{σ_n}: at each step the three coplanar covectors
/// satisfy u_{k+1} + u^left + u^right = 0 and u_k = +u^left (β-step) or
/// u_k = −u^right (γ-step). Returns rows u_1..u_n.
pub fn left_basis(e: &Flag, f: &Flag, g: &Flag, s: &Snake, u_n: &[Rat]) -> Vec<Vec<Rat>> {
    assert_eq!(s.chirality, Chirality::Left);
    let n = s.n as usize;
    let mut rows = vec![Vec::new(); n];
    rows[n - 1] = u_n.to_vec();
    for k in (1..n).rev() {
        let parent = s.at(k + 1);
        let vl = ThetaVertex::new(parent.a - 1, parent.b + 1, parent.c);
        let vr = ThetaVertex::new(parent.a - 1, parent.b, parent.c + 1);
        let wl = line_covector(e, f, g, vl);
        let wr = line_covector(e, f, g, vr);
        let (ul, ur) = solve_coplanar(&rows[k], &wl, &wr);
        rows[k - 1] = if s.at(k) == vl {
            ul
        } else {
            assert_eq!(s.at(k), vr, "snake vertex is not a child of its successor");
            ur.iter().map(|x| -x.clone()).collect()
        };
    }
    rows
}

/// Projective basis of a (standard-head) right snake, built ascending from
/// `u_1` ∈ L_{σ_1}; the signs are swapped relative to the left recursion:
/// u_k = −u^left (β-step) or u_k = +u^right (γ-step).
pub fn right_basis(e: &Flag, f: &Flag, g: &Flag, s: &Snake, u_1: &[Rat]) -> Vec<Vec<Rat>> {
    assert_eq!(s.chirality, Chirality::Right);
    let n = s.n as usize;
    let mut rows = vec![Vec::new(); n];
    rows[0] = u_1.to_vec();
    for k in 2..=n {
        let parent = s.at(k - 1);
        let vl = ThetaVertex::new(parent.a - 1, parent.b + 1, parent.c);
        let vr = ThetaVertex::new(parent.a - 1, parent.b, parent.c + 1);
        let wl = line_covector(e, f, g, vl);
        let wr = line_covector(e, f, g, vr);
        let (ul, ur) = solve_coplanar(&rows[k - 2], &wl, &wr);
        rows[k - 1] = if s.at(k) == vl {
            ul.iter().map(|x| -x.clone()).collect()
        } else {
            assert_eq!(s.at(k), vr, "snake vertex is not a child of its predecessor");
            ur
        };
    }
    rows
}

/// Change of basis B with U = B·U′ (rows are basis covectors), i.e.
/// [[u]]_U · B = [[u]]_{U′}.
pub fn change_of_basis(u: &[Vec<Rat>], u2: &[Vec<Rat>]) -> QMat {
    let um = QMat::from_rows(u.to_vec());
    let um2 = QMat::from_rows(u2.to_vec());
    um.matmul(&um2.inverse().expect("projective basis is a basis"))
}

// ---------------------------------------------------------------------------
// Closed-form move matrices (unnormalized cores; exact rational)
// ---------------------------------------------------------------------------

/// Core of x^{+(r−1)/n}·S^left_r(x): diagonal (x,…,x,1,…,1) with x in the
/// first r−1 slots, plus a 1 at (r, r+1). The tail move (r = 1) is the
/// unipotent S^left_1.
pub fn core_left(n: usize, r: usize, x: &Rat) -> QMat {
    let mut m = QMat::identity(n);
    for i in 0..(r - 1) {
        m[(i, i)] = x.clone();
    }
    m[(r - 1, r)] = Rat::one();
    m
}

/// Core of x^{−(k−1)/n}·S^right_k(x) for k = n−r+1, written in terms of the
/// changed snake position r: diagonal 1 in the first r slots and x^{−1}
/// below, plus a 1 at (r, r−1). The tail move (r = n) is S^right_1.
pub fn core_right(n: usize, r: usize, x: &Rat) -> QMat {
    let mut m = QMat::identity(n);
    for i in r..n {
        m[(i, i)] = Rat::one() / x.clone();
    }
    if r >= 2 {
        m[(r - 1, r - 2)] = Rat::one();
    } else {
        unreachable!("right moves change positions 2..=n");
    }
    m
}

/// Closed-form change-of-basis matrix of a move, with the triangle invariant
/// evaluated on the given flags (which must be the flags of the snake's own
/// frame).
pub fn move_core_matrix(
    e: &Flag,
    f: &Flag,
    g: &Flag,
    chirality: Chirality,
    mv: &SnakeMove,
) -> QMat {
    let n = e.n();
    match (chirality, mv) {
        (Chirality::Left, SnakeMove::Tail { .. }) => core_left(n, 1, &Rat::one()),
        (Chirality::Left, SnakeMove::Diamond { position, vertex }) => {
            let tau = triangle_invariant(
                e,
                f,
                g,
                vertex.a as usize,
                vertex.b as usize,
                vertex.c as usize,
            );
            core_left(n, *position, &tau)
        }
        (Chirality::Right, SnakeMove::Tail { .. }) => {
            let mut m = QMat::identity(n);
            m[(n - 1, n - 2)] = Rat::one();
            m
        }
        (Chirality::Right, SnakeMove::Diamond { position, vertex }) => {
            let tau = triangle_invariant(
                e,
                f,
                g,
                vertex.a as usize,
                vertex.b as usize,
                vertex.c as usize,
            );
            core_right(n, *position, &tau)
        }
    }
}

// ---------------------------------------------------------------------------
// Edge and U-turn transitions
// ---------------------------------------------------------------------------

/// Exact change of basis of the edge transition between the bottom triangle
/// (G,F,E) and the top triangle (E,F′,G): with the right basis built on
/// (G,F,E) from u_1 and the left basis on (E,F′,G) normalized by u′_n = u_n,
/// B is diagonal with entries ∏_{j=i}^{n−1} ε_j(E,G,F,F′).
pub fn edge_move_matrices(
    e: &Flag,
    f: &Flag,
    g: &Flag,
    fp: &Flag,
    u_1: &[Rat],
) -> (QMat, QMat) {
    let n = e.n() as i64;
    let sigma = Snake::new(
        n,
        Chirality::Right,
        (1..=n).map(|k| ThetaVertex::new(n - k, 0, k - 1)).collect(),
    )
    .unwrap();
    let sigma_p = Snake::new(
        n,
        Chirality::Left,
        (1..=n).map(|k| ThetaVertex::new(k - 1, 0, n - k)).collect(),
    )
    .unwrap();
    let u = right_basis(g, f, e, &sigma, u_1);
    let u_p = left_basis(e, fp, g, &sigma_p, u.last().unwrap());
    let b = change_of_basis(&u, &u_p);
    // Expected closed form.
    let mut expected = QMat::identity(n as usize);
    let eps: Vec<Rat> = (1..n as usize).map(|j| edge_invariant(e, g, f, fp, j)).collect();
    for i in 0..n as usize {
        let mut d = Rat::one();
        for j in i..(n as usize - 1) {
            d *= eps[j].clone();
        }
        expected[(i, i)] = d;
    }
    (b, expected)
}

/// Exact change of basis of the U-turn within one triangle (E,F,G): the
/// right snake basis from u_1 against the left snake basis normalized by
/// u′_1 = u_n. Returns (B, the alternating-sign antidiagonal U).
pub fn uturn_matrices(e: &Flag, f: &Flag, g: &Flag, u_1: &[Rat]) -> (QMat, QMat) {
    let n = e.n() as i64;
    let sigma = Snake::new(
        n,
        Chirality::Right,
        (1..=n).map(|k| ThetaVertex::new(n - k, 0, k - 1)).collect(),
    )
    .unwrap();
    let sigma_p = Snake::new(
        n,
        Chirality::Left,
        (1..=n).map(|k| ThetaVertex::new(k - 1, 0, n - k)).collect(),
    )
    .unwrap();
    let u = right_basis(e, f, g, &sigma, u_1);
    // Trial left basis from an arbitrary head covector, then rescale so that
    // u′_1 equals u_n.
    let head = line_covector(e, f, g, sigma_p.at(n as usize));
    let trial = left_basis(e, f, g, &sigma_p, &head);
    let u_n = u.last().unwrap();
    let t1 = &trial[0];
    let idx = t1.iter().position(|x| !x.is_zero()).expect("nonzero covector");
    let lambda = &u_n[idx] / &t1[idx];
    // Consistency: u′_1 and u_n must be proportional (same line).
    for i in 0..t1.len() {
        assert_eq!(u_n[i].clone(), &t1[i] * &lambda, "u'_1 is not proportional to u_n");
    }
    let u_p: Vec<Vec<Rat>> =
        trial.iter().map(|row| row.iter().map(|x| x * &lambda).collect()).collect();
    let b = change_of_basis(&u, &u_p);
    let mut expected = QMat::zero(n as usize, n as usize);
    for i in 1..=n as usize {
        let sign = if (n - i as i64) % 2 == 0 { Rat::one() } else { -Rat::one() };
        expected[(i - 1, n as usize - i)] = sign;
    }
    (b, expected)
}

// ---------------------------------------------------------------------------
// Coplanarity shear cycles
// ---------------------------------------------------------------------------

/// The shear within a triangle of lines: given p ∈ L1, the unique p′ ∈ L2
/// with p + p′ + p″ = 0 for some p″ ∈ L3.
pub fn shear_step(p: &[Rat], l2: &[Rat], l3: &[Rat]) -> Vec<Rat> {
    let (p2, _) = solve_coplanar(p, l2, l3);
    p2
}

/// Shear cycle around the downward triangle at the interior vertex (a,b,c)
/// of Θ_n: composes the three coplanarity shears through the surrounding
/// upward triangles and returns the scalar ratio p_final / p_0. The
/// counterclockwise direction yields +τ_abc and the clockwise direction
/// +τ_abc^{−1}.
pub fn triangle_shear_cycle(
    e: &Flag,
    f: &Flag,
    g: &Flag,
    v: ThetaVertex,
    ccw: bool,
    p0: &[Rat],
) -> Rat {
    let (a, b, c) = (v.a, v.b, v.c);
    // Downward-triangle vertices (the lines of the cycle).
    let d1 = ThetaVertex::new(a - 1, b, c);
    let d2 = ThetaVertex::new(a, b - 1, c);
    let d3 = ThetaVertex::new(a, b, c - 1);
    // Surrounding upward-triangle apexes (the third lines).
    let a1 = ThetaVertex::new(a + 1, b - 1, c - 1);
    let a2 = ThetaVertex::new(a - 1, b + 1, c - 1);
    let a3 = ThetaVertex::new(a - 1, b - 1, c + 1);
    let line = |w: ThetaVertex| line_covector(e, f, g, w);
    // Upward triangle Δ_1 = {a1, d3, d2}, Δ_2 = {a2, d1, d3}, Δ_3 = {a3, d2, d1}.
    // ccw path: L_{d1} → (Δ_2) → L_{d3} → (Δ_1) → L_{d2} → (Δ_3) → L_{d1}.
    let steps: Vec<(ThetaVertex, ThetaVertex)> = if ccw {
        vec![(d3, a2), (d2, a1), (d1, a3)]
    } else {
        vec![(d2, a3), (d3, a1), (d1, a2)]
    };
    let mut p = p0.to_vec();
    for (target, third) in steps {
        p = shear_step(&p, &line(target), &line(third));
    }
    scalar_ratio(&p, p0)
}

/// Shear cycle across the common edge of the bottom triangle (G,F,E) and the
/// top triangle (E,F′,G), at edge index j: two shears through the flanking
/// triangles. Counterclockwise yields −ε_j, clockwise −ε_j^{−1}.
pub fn edge_shear_cycle(
    e: &Flag,
    f: &Flag,
    g: &Flag,
    fp: &Flag,
    j: usize,
    ccw: bool,
    p0: &[Rat],
) -> Rat {
    let n = e.n() as i64;
    let j = j as i64;
    // The two edge lines.
    let la = line_covector(e, fp, g, ThetaVertex::new(j, 0, n - 1 - j));
    let lb = line_covector(e, fp, g, ThetaVertex::new(j - 1, 0, n - j));
    // Third lines: apex in the top triangle (E,F′,G) and in the bottom (G,F,E).
    let top_third = line_covector(e, fp, g, ThetaVertex::new(j - 1, 1, n - 1 - j));
    let bottom_third = line_covector(g, f, e, ThetaVertex::new(n - j - 1, 1, j - 1));
    let mut p = p0.to_vec();
    if ccw {
        p = shear_step(&p, &lb, &bottom_third);
        p = shear_step(&p, &la, &top_third);
    } else {
        p = shear_step(&p, &lb, &top_third);
        p = shear_step(&p, &la, &bottom_third);
    }
    scalar_ratio(&p, p0)
}

fn scalar_ratio(p: &[Rat], p0: &[Rat]) -> Rat {
    let idx = p0.iter().position(|x| !x.is_zero()).expect("nonzero covector");
    let r = &p[idx] / &p0[idx];
    for i in 0..p0.len() {
        assert_eq!(p[i].clone(), &p0[i] * &r, "cycle did not return to the starting line");
    }
    r
}
