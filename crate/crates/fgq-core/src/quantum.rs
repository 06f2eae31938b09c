//! Factorization of the quantum triangle matrices into elementary snake-move
//! matrices.
//!
//! Each elementary move contributes a factor
//!
//! ```text
//!   M_j = Weyl[ (∏_k S^edge_k(z_k)) · S_j(x) · (∏_k S^edge_k(z'_k)) ]
//! ```
//!
//! over its own small quantum torus with generators z_1..z_{n−1}, x (diamond
//! moves only) and z'_1..z'_{n−1}; S_j is the j-th left or right shearing
//! matrix and the tail move (j = 1) has no x. The Poisson matrices of these
//! factor tori are not free: they are pinned by
//!
//! * (structure) each M_j must be an SL_n^q point: its diagonal entries
//!   commute pairwise and the off-diagonal entry q-commutes with the two
//!   diagonal entries sharing its row and column;
//! * (gluing) the generators of consecutive factors are identified along the
//!   snakes: the glued products must reproduce the Poisson structure of the
//!   triangle torus, so that the gluing is a quantum-torus embedding;
//! * (locality) only nearest-neighbour generator pairs may have nonzero
//!   Poisson pairing.
//!
//! These conditions form one joint linear system per (n, side), solved
//! exactly over the rationals; remaining degrees of freedom are set to zero.
//! The resulting gluing map sends the full triangle matrix, restricted to
//! its side subalgebra, to the ordered product of the factors inside the
//! tensor product of the factor tori — an identity verified entry by entry
//! by `verify_factorization`.

use crate::linalg::QMat;
use crate::ncmatrix::{
    m_edge, quantum_side, restrict_to_subtorus, shear_left, shear_right, NcMatrix,
};
use crate::qtorus::{
    make_torus, tensor, GeneratorMap, QuantumTorus, Rat, TensorTorus, TorusElement, TorusError,
};
use crate::quiver::{fg_poisson, FgQuiverSpec, Side, ThetaVertex};
use crate::slnq::{check_slnq, RelationReport};
use crate::snakes::{preferred_sequence, rotated_vertex_to_efg, Chirality, SnakeMove};
use num::{BigInt, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Arc;

/// One move of the factorization plan: the index of the elementary shearing
/// matrix and, for diamond moves, the interior triangle vertex whose
/// generator the move consumes (in the coordinates of the triangle itself).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanMove {
    pub matrix_index: usize,
    pub vertex: Option<ThetaVertex>,
}

fn chirality_of(side: Side) -> Chirality {
    match side {
        Side::Left => Chirality::Left,
        Side::Right => Chirality::Right,
    }
}

/// The move plan of the preferred snake sweep, with diamond vertices
/// converted to triangle coordinates.
pub fn move_plan(n: i64, side: Side) -> Vec<PlanMove> {
    let chir = chirality_of(side);
    let seq = preferred_sequence(n, chir);
    seq.moves
        .iter()
        .map(|m| match m {
            SnakeMove::Tail { .. } => PlanMove { matrix_index: 1, vertex: None },
            SnakeMove::Diamond { vertex, .. } => PlanMove {
                matrix_index: m.matrix_index(n as usize, chir),
                vertex: Some(match side {
                    Side::Left => *vertex,
                    Side::Right => rotated_vertex_to_efg(*vertex),
                }),
            },
        })
        .collect()
}

fn factor_gen_names(n: i64, j: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..n).map(|k| format!("z{k}")).collect();
    if j >= 2 {
        names.push("x".into());
    }
    names.extend((1..n).map(|k| format!("z'{k}")));
    names
}

fn z_index(k: usize) -> usize {
    k - 1
}

fn x_index(n: usize) -> usize {
    n - 1
}

fn zp_index(n: usize, j: usize, k: usize) -> usize {
    n - 1 + usize::from(j >= 2) + k - 1
}

/// Generator pairs allowed a nonzero Poisson pairing in the factor torus of
/// a type-j move (the locality constraint): consecutive z's, consecutive
/// z''s, z against z' at distance at most one, and x against anything.
fn allowed_pairs(n: i64, j: usize) -> Vec<(usize, usize)> {
    let nn = n as usize;
    let mut out = Vec::new();
    for k in 1..(nn - 1) {
        out.push((z_index(k), z_index(k + 1)));
        out.push((zp_index(nn, j, k), zp_index(nn, j, k + 1)));
    }
    for k in 1..nn {
        for l in 1..nn {
            if (k as i64 - l as i64).abs() <= 1 {
                out.push((z_index(k), zp_index(nn, j, l)));
            }
        }
    }
    if j >= 2 {
        let x = x_index(nn);
        let total = 2 * (nn - 1) + 1;
        for g in 0..total {
            if g != x {
                out.push((g.min(x), g.max(x)));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The commutative layer of one factor matrix, over any torus presented with
/// the generator layout of `factor_gen_names`.
fn structural_product(t: &Arc<QuantumTorus>, side: Side, j: usize) -> NcMatrix {
    let n = t.n as usize;
    let has_x = j >= 2;
    let zs: Vec<TorusElement> = (0..n - 1).map(|k| TorusElement::generator(t, k)).collect();
    let x = if has_x { Some(TorusElement::generator(t, x_index(n))) } else { None };
    let off = n - 1 + usize::from(has_x);
    let zps: Vec<TorusElement> =
        (0..n - 1).map(|k| TorusElement::generator(t, off + k)).collect();
    let inner = match side {
        Side::Left => shear_left(t, j, x.as_ref(), true),
        Side::Right => shear_right(t, j, x.as_ref(), true),
    };
    m_edge(t, &zs, true).matmul(&inner).matmul(&m_edge(t, &zps, true))
}

/// The gluing of factor generators into classes, one class per generator of
/// the side subalgebra of the triangle torus.
///
/// For each edge coordinate k, the moves that change it cut the factor
/// sequence into runs; within a run the k-th edge coordinate is untouched,
/// so all its skins (z_k entering, z'_k leaving each factor) are identified.
/// A left factor of matrix index j changes edge coordinate j (its
/// off-diagonal entry differs from the neighbouring diagonal in the z'_j
/// exponent); a right factor of matrix index j changes edge coordinate n−j.
/// The run before the first cut is the incoming edge generator Z_k, the run
/// after the last cut is the outgoing one (Z'_k on the left side, Z''_k on
/// the right), and each middle run carries exactly one move of matrix index
/// cut+1 whose x belongs to the interior generator of that move's triangle
/// vertex.
///
/// Returns, for each full-torus generator index of the subalgebra, the class
/// members as (factor index, generator index within that factor).
pub fn embedding_classes(
    n: i64,
    side: Side,
    plan: &[PlanMove],
    spec: &FgQuiverSpec,
) -> HashMap<usize, Vec<(usize, usize)>> {
    let nn = n as usize;
    let mut classes: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for k in 1..nn {
        // Matrix index of the moves that change edge coordinate k.
        let cut = match side {
            Side::Left => k,
            Side::Right => nn - k,
        };
        let total_cuts = plan.iter().filter(|m| m.matrix_index == cut).count();
        let mut seen_cuts = 0usize;
        let mut label: Option<usize> =
            Some(spec.index_of_name(&format!("Z{k}")).expect("edge generator"));
        let mut members: Vec<(usize, usize)> = Vec::new();
        for (i, mv) in plan.iter().enumerate() {
            let j = mv.matrix_index;
            members.push((i, z_index(k)));
            if j == cut {
                seen_cuts += 1;
                let l = label.take().expect("interior class closed without an x move");
                assert!(
                    classes.insert(l, std::mem::take(&mut members)).is_none(),
                    "duplicate gluing class"
                );
                label = if seen_cuts == total_cuts {
                    let name = match side {
                        Side::Left => format!("Z'{k}"),
                        Side::Right => format!("Z''{k}"),
                    };
                    Some(spec.index_of_name(&name).expect("edge generator"))
                } else {
                    None
                };
                members.push((i, zp_index(nn, j, k)));
            } else {
                if j == cut + 1 {
                    let v = mv.vertex.expect("diamond move carries a vertex");
                    let xi = spec.index_of_vertex(&v).expect("interior vertex generator");
                    assert!(label.is_none(), "x move landed outside a middle run");
                    label = Some(xi);
                    members.push((i, x_index(nn)));
                }
                members.push((i, zp_index(nn, j, k)));
            }
        }
        let l = label.expect("final class closed without an x move");
        assert!(classes.insert(l, members).is_none(), "duplicate gluing class");
    }
    // The classes must partition all factor generators and must cover the
    // side subalgebra exactly.
    let covered: usize = classes.values().map(Vec::len).sum();
    let total: usize = plan
        .iter()
        .map(|m| 2 * (nn - 1) + usize::from(m.matrix_index >= 2))
        .sum();
    assert_eq!(covered, total, "gluing classes do not partition the factor generators");
    let mut sub = spec.subalgebra_generators(side);
    let mut keys: Vec<usize> = classes.keys().copied().collect();
    sub.sort_unstable();
    keys.sort_unstable();
    assert_eq!(keys, sub, "gluing classes do not match the side subalgebra");
    classes
}

struct VarRegistry {
    index: HashMap<(usize, usize, usize), usize>,
    count: usize,
}

impl VarRegistry {
    fn new(n: i64) -> Self {
        let mut index = HashMap::new();
        let mut count = 0usize;
        for j in 1..n as usize {
            for (a, b) in allowed_pairs(n, j) {
                index.insert((j, a, b), count);
                count += 1;
            }
        }
        VarRegistry { index, count }
    }

    /// Accumulate the pairing Σ P_ab (m_a m'_b − m_b m'_a) of type-j vectors
    /// into a coefficient row (pairs outside the locality support are zero).
    fn add_pairing(&self, row: &mut [Rat], j: usize, m: &[i64], m2: &[i64]) {
        for ((tj, a, b), &var) in &self.index {
            if *tj != j {
                continue;
            }
            let c = m[*a] * m2[*b] - m[*b] * m2[*a];
            if c != 0 {
                row[var] += Rat::from_integer(BigInt::from(c));
            }
        }
    }
}

/// Solve the joint linear system for the factor-torus Poisson matrices.
/// Returns one Poisson matrix per move type j = 1..n−1.
pub fn solve_snake_move_poisson(n: i64, side: Side) -> Result<Vec<Vec<Vec<i64>>>, TorusError> {
    let spec = fg_poisson(n);
    let plan = move_plan(n, side);
    let reg = VarRegistry::new(n);
    let nn = n as usize;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let nsq = Rat::from_integer(BigInt::from(n * n));

    // Structure constraints, per move type.
    for j in 1..nn {
        let zero_p = vec![vec![0i64; factor_gen_names(n, j).len()]; factor_gen_names(n, j).len()];
        let zt = make_torus(n, factor_gen_names(n, j), zero_p)?;
        let m = structural_product(&zt, side, j);
        let diag: Vec<Vec<i64>> = (0..nn)
            .map(|i| m.get(i, i).as_monomial().expect("diagonal entry is a monomial").0.clone())
            .collect();
        let mut off: Option<(usize, usize, Vec<i64>)> = None;
        for r in 0..nn {
            for c in 0..nn {
                if r != c && !m.get(r, c).is_zero() {
                    assert!(off.is_none(), "factor matrix has more than one off-diagonal entry");
                    off = Some((
                        r,
                        c,
                        m.get(r, c).as_monomial().expect("off-diagonal entry is a monomial").0.clone(),
                    ));
                }
            }
        }
        let (r, c, b) = off.expect("factor matrix has an off-diagonal entry");
        for i in 0..nn {
            for k in (i + 1)..nn {
                let mut row = vec![Rat::zero(); reg.count];
                reg.add_pairing(&mut row, j, &diag[i], &diag[k]);
                rows.push(row);
                rhs.push(Rat::zero());
            }
        }
        let min = r.min(c);
        for i in 0..nn {
            let mut row = vec![Rat::zero(); reg.count];
            let target = if i == min {
                reg.add_pairing(&mut row, j, &b, &diag[i]);
                nsq.clone()
            } else if i == min + 1 {
                reg.add_pairing(&mut row, j, &diag[i], &b);
                nsq.clone()
            } else {
                reg.add_pairing(&mut row, j, &diag[i], &b);
                Rat::zero()
            };
            rows.push(row);
            rhs.push(target);
        }
    }

    // Gluing constraints: the class products must reproduce the Poisson
    // structure of the side subalgebra.
    let classes = embedding_classes(n, side, &plan, &spec);
    let sub = spec.subalgebra_generators(side);
    let gens_per_factor: Vec<usize> =
        plan.iter().map(|m| factor_gen_names(n, m.matrix_index).len()).collect();
    let factor_vector = |full: usize| -> Vec<Vec<i64>> {
        let mut vecs: Vec<Vec<i64>> =
            gens_per_factor.iter().map(|&g| vec![0i64; g]).collect();
        for &(f, g) in &classes[&full] {
            vecs[f][g] = n;
        }
        vecs
    };
    for (p, &gp) in sub.iter().enumerate() {
        let vp = factor_vector(gp);
        for &gq in sub.iter().skip(p + 1) {
            let vq = factor_vector(gq);
            let mut row = vec![Rat::zero(); reg.count];
            for (i, mv) in plan.iter().enumerate() {
                if vp[i].iter().all(|&e| e == 0) || vq[i].iter().all(|&e| e == 0) {
                    continue;
                }
                reg.add_pairing(&mut row, mv.matrix_index, &vp[i], &vq[i]);
            }
            rows.push(row);
            rhs.push(&nsq * Rat::from_integer(BigInt::from(spec.poisson[gp][gq])));
        }
    }

    let a = QMat::from_rows(rows);
    let sol = a.solve(&rhs).ok_or_else(|| {
        TorusError::Presentation(format!(
            "no factor-torus Poisson structure exists for n = {n}, side {side:?}"
        ))
    })?;
    for v in &sol {
        if !v.is_integer() {
            return Err(TorusError::Presentation(format!(
                "factor-torus Poisson solution is not integral: {v}"
            )));
        }
    }

    let mut out = Vec::new();
    for j in 1..nn {
        let g = factor_gen_names(n, j).len();
        let mut p = vec![vec![0i64; g]; g];
        for ((tj, a, b), &var) in &reg.index {
            if *tj != j {
                continue;
            }
            let v = sol[var].to_integer().to_i64().expect("small Poisson entry");
            p[*a][*b] = v;
            p[*b][*a] = -v;
        }
        out.push(p);
    }
    Ok(out)
}

/// A fully assembled snake-move factorization: the solved factor tori, one
/// quantum matrix per move, their tensor product, and the gluing embedding
/// of the side subalgebra.
pub struct SnakeMoveSystem {
    pub n: i64,
    pub side: Side,
    pub spec: FgQuiverSpec,
    pub plan: Vec<PlanMove>,
    /// Factor torus of each move type j = 1..n−1 (index j−1).
    pub type_tori: Vec<Arc<QuantumTorus>>,
    /// Quantum matrix of each move type (index j−1).
    pub type_matrices: Vec<NcMatrix>,
    pub tensor: TensorTorus,
    pub sub_torus: Arc<QuantumTorus>,
    pub sub_gens: Vec<usize>,
    pub embedding: GeneratorMap,
}

pub fn build_system(n: i64, side: Side) -> Result<SnakeMoveSystem, TorusError> {
    let spec = fg_poisson(n);
    let plan = move_plan(n, side);
    let poisson = solve_snake_move_poisson(n, side)?;
    let nn = n as usize;
    let mut type_tori = Vec::new();
    let mut type_matrices = Vec::new();
    for j in 1..nn {
        let t = make_torus(n, factor_gen_names(n, j), poisson[j - 1].clone())?;
        let shadow = t.commutative_shadow();
        let classical = structural_product(&shadow, side, j);
        let quantum = classical.map_entries(&t, |e| TorusElement::weyl_from_commutative(&t, e));
        type_tori.push(t);
        type_matrices.push(quantum);
    }
    let factors: Vec<Arc<QuantumTorus>> =
        plan.iter().map(|m| type_tori[m.matrix_index - 1].clone()).collect();
    let tensor = tensor(&factors)?;
    let sub_gens = spec.subalgebra_generators(side);
    let sub_torus = spec.sub_torus(&sub_gens)?;
    let classes = embedding_classes(n, side, &plan, &spec);
    let total = tensor.torus.num_gens();
    let mut images = Vec::new();
    for &full in &sub_gens {
        let mut exps = vec![0i64; total];
        for &(f, g) in &classes[&full] {
            exps[tensor.offsets[f] + g] = n;
        }
        images.push(TorusElement::monomial(&tensor.torus, exps, crate::qtorus::HLaurent::one())?);
    }
    let embedding = GeneratorMap::new(sub_torus.clone(), tensor.torus.clone(), images)?;
    Ok(SnakeMoveSystem {
        n,
        side,
        spec,
        plan,
        type_tori,
        type_matrices,
        tensor,
        sub_torus,
        sub_gens,
        embedding,
    })
}

/// Outcome of the full factorization check.
pub struct FactorizationReport {
    /// SL_n^q membership of each move-type matrix (index j−1).
    pub factor_reports: Vec<RelationReport>,
    /// Error message if the gluing map fails the homomorphism condition.
    pub embedding_error: Option<String>,
    /// Whether the glued triangle matrix equals the ordered factor product.
    pub product_matches: bool,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.factor_reports.iter().all(RelationReport::passed)
            && self.embedding_error.is_none()
            && self.product_matches
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "factors": self.factor_reports.iter().map(RelationReport::to_json).collect::<Vec<_>>(),
            "embedding_error": self.embedding_error,
            "product_matches": self.product_matches,
        })
    }
}

impl std::fmt::Display for FactorizationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "factors SL_n^q: {}",
            if self.factor_reports.iter().all(RelationReport::passed) { "yes" } else { "NO" }
        )?;
        writeln!(
            f,
            "gluing is a homomorphism: {}",
            match &self.embedding_error {
                None => "yes".to_string(),
                Some(e) => format!("NO ({e})"),
            }
        )?;
        writeln!(
            f,
            "glued matrix equals factor product: {}",
            if self.product_matches { "yes" } else { "NO" }
        )
    }
}

/// Verify the factorization end to end: every factor matrix is an SL_n^q
/// point, the gluing is a quantum-torus homomorphism, and the image of the
/// (restricted) triangle matrix equals the ordered product of the injected
/// factor matrices inside the tensor torus.
pub fn verify_factorization(sys: &SnakeMoveSystem) -> FactorizationReport {
    let factor_reports: Vec<RelationReport> =
        sys.type_matrices.iter().map(check_slnq).collect();
    let embedding_error = sys.embedding.validate().err().map(|e| e.to_string());
    let product_matches = if embedding_error.is_none() {
        let full = quantum_side(&sys.spec, sys.side, true);
        let restricted = restrict_to_subtorus(&full, &sys.sub_torus, &sys.sub_gens);
        let mapped = restricted.map_entries(&sys.tensor.torus, |e| {
            sys.embedding.apply(e).expect("gluing applies to the triangle matrix")
        });
        let nn = sys.n as usize;
        let mut prod = NcMatrix::identity(&sys.tensor.torus, nn);
        for (i, mv) in sys.plan.iter().enumerate() {
            let injected = sys.type_matrices[mv.matrix_index - 1]
                .map_entries(&sys.tensor.torus, |e| sys.tensor.inject(i, e));
            prod = prod.matmul(&injected);
        }
        let mut ok = true;
        'outer: for i in 0..nn {
            for j in 0..nn {
                if mapped.get(i, j) != prod.get(i, j) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    } else {
        false
    };
    FactorizationReport { factor_reports, embedding_error, product_matches }
}
