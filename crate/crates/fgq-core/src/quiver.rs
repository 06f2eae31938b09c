//! The discrete triangle Θ_n and the Fock–Goncharov quiver.
//!
//! Vertices of the quiver are the non-corner points of Θ_n. The orientation
//! rule: for every (a,b,c) ≥ 0 with a+b+c = n−1 add the directed 3-cycle
//! (a+1,b,c) → (a,b,c+1) → (a,b+1,c) → (a+1,b,c); for every (a,b,c) ≥ 0 with
//! a+b+c = n−2 add the 3-cycle (a+1,b,c+1) → (a+1,b+1,c) → (a,b+1,c+1) →
//! (a+1,b,c+1). Arrows incident to corner vertices are deleted, and
//! P_{νμ} = #(ν→μ) − #(μ→ν).
//!
//! Coordinate aliases: Z_j = X_{j,0,n−j} (bottom edge), Z′_j = X_{j,n−j,0},
//! Z″_j = X_{0,j,n−j}; interior vertices are numbered X_1, X_2, … in the
//! order they appear in the classical left-matrix index formula.

use crate::qtorus::{make_torus, QuantumTorus, TorusError};
use std::collections::HashMap;
use std::sync::Arc;

/// A point of Θ_n (or Θ_{n−1} when used by the snake layer).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ThetaVertex {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ThetaVertex {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        ThetaVertex { a, b, c }
    }

    pub fn level(&self) -> i64 {
        self.a + self.b + self.c
    }

    pub fn is_corner(&self, level: i64) -> bool {
        self.level() == level
            && ((self.a == level) || (self.b == level) || (self.c == level))
    }

    pub fn is_interior(&self) -> bool {
        self.a > 0 && self.b > 0 && self.c > 0
    }
}

/// All points of Θ_level in lexicographic (a,b,c) order.
pub fn theta_vertices(level: i64) -> Vec<ThetaVertex> {
    let mut out = Vec::new();
    for a in 0..=level {
        for b in 0..=(level - a) {
            out.push(ThetaVertex::new(a, b, level - a - b));
        }
    }
    out
}

/// Interior points of Θ_level in lexicographic order.
pub fn theta_interior(level: i64) -> Vec<ThetaVertex> {
    theta_vertices(level).into_iter().filter(|v| v.is_interior()).collect()
}

/// Which edge/interior class a non-corner vertex of Θ_n belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexClass {
    /// Bottom edge: Z_j = X_{j,0,n−j}, 1 ≤ j ≤ n−1.
    ZEdge(i64),
    /// Left edge: Z′_j = X_{j,n−j,0}.
    ZPrimeEdge(i64),
    /// Right edge: Z″_j = X_{0,j,n−j}.
    ZDoublePrimeEdge(i64),
    /// Interior vertex X_i (1-based).
    Interior(i64),
}

/// The Fock–Goncharov quiver for one triangle: ordered non-corner vertices of
/// Θ_n, their display names, and the antisymmetric Poisson matrix.
#[derive(Clone, Debug)]
pub struct FgQuiverSpec {
    pub n: i64,
    /// Generator order: Z_1..Z_{n−1}, X_1..X_m, Z′_1..Z′_{n−1}, Z″_1..Z″_{n−1}.
    pub vertices: Vec<ThetaVertex>,
    pub names: Vec<String>,
    pub classes: Vec<VertexClass>,
    pub poisson: Vec<Vec<i64>>,
}

/// Interior vertices in the order used by the classical left matrix:
/// k = n−1 down to 1, ℓ = 2..k, vertex (ℓ−1, n−k, k−ℓ+1).
pub fn interior_in_left_order(n: i64) -> Vec<ThetaVertex> {
    let mut out = Vec::new();
    for k in (1..n).rev() {
        for l in 2..=k {
            out.push(ThetaVertex::new(l - 1, n - k, k - l + 1));
        }
    }
    out
}

/// Build the Fock–Goncharov quiver spec for the n-triangle.
pub fn fg_poisson(n: i64) -> FgQuiverSpec {
    assert!(n >= 2, "fg_poisson requires n >= 2");
    // Ordered generator list.
    let mut vertices = Vec::new();
    let mut names = Vec::new();
    let mut classes = Vec::new();
    for j in 1..n {
        vertices.push(ThetaVertex::new(j, 0, n - j));
        names.push(format!("Z{j}"));
        classes.push(VertexClass::ZEdge(j));
    }
    for (i, v) in interior_in_left_order(n).into_iter().enumerate() {
        vertices.push(v);
        names.push(format!("X{}", i + 1));
        classes.push(VertexClass::Interior(i as i64 + 1));
    }
    for j in 1..n {
        vertices.push(ThetaVertex::new(j, n - j, 0));
        names.push(format!("Z'{j}"));
        classes.push(VertexClass::ZPrimeEdge(j));
    }
    for j in 1..n {
        vertices.push(ThetaVertex::new(0, j, n - j));
        names.push(format!("Z''{j}"));
        classes.push(VertexClass::ZDoublePrimeEdge(j));
    }
    let index: HashMap<ThetaVertex, usize> =
        vertices.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();

    // Arrow multiset over all of Θ_n, corners included for now.
    let mut arrows: Vec<(ThetaVertex, ThetaVertex)> = Vec::new();
    let push_cycle = |vs: [ThetaVertex; 3], arrows: &mut Vec<(ThetaVertex, ThetaVertex)>| {
        arrows.push((vs[0], vs[1]));
        arrows.push((vs[1], vs[2]));
        arrows.push((vs[2], vs[0]));
    };
    for a in 0..=(n - 1) {
        for b in 0..=(n - 1 - a) {
            let c = n - 1 - a - b;
            push_cycle(
                [
                    ThetaVertex::new(a + 1, b, c),
                    ThetaVertex::new(a, b, c + 1),
                    ThetaVertex::new(a, b + 1, c),
                ],
                &mut arrows,
            );
        }
    }
    for a in 0..=(n - 2) {
        for b in 0..=(n - 2 - a) {
            let c = n - 2 - a - b;
            push_cycle(
                [
                    ThetaVertex::new(a + 1, b, c + 1),
                    ThetaVertex::new(a + 1, b + 1, c),
                    ThetaVertex::new(a, b + 1, c + 1),
                ],
                &mut arrows,
            );
        }
    }

    let k = vertices.len();
    let mut poisson = vec![vec![0i64; k]; k];
    for (src, dst) in arrows {
        // Deleting arrows incident to corners = skipping pairs not both
        // present in the non-corner index.
        if let (Some(&i), Some(&j)) = (index.get(&src), index.get(&dst)) {
            poisson[i][j] += 1;
            poisson[j][i] -= 1;
        }
    }
    FgQuiverSpec { n, vertices, names, classes, poisson }
}

impl FgQuiverSpec {
    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn index_of_vertex(&self, v: &ThetaVertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// The quantum torus T_n^ω with this Poisson matrix.
    pub fn torus(&self) -> Result<Arc<QuantumTorus>, TorusError> {
        make_torus(self.n, self.names.clone(), self.poisson.clone())
    }

    /// Generator names of the subalgebra T_L (drops Z″) or T_R (drops Z′).
    pub fn subalgebra_generators(&self, side: Side) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, cl)| match side {
                Side::Left => !matches!(cl, VertexClass::ZDoublePrimeEdge(_)),
                Side::Right => !matches!(cl, VertexClass::ZPrimeEdge(_)),
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Sub-presentation of the torus on a subset of generators.
    pub fn sub_torus(&self, gens: &[usize]) -> Result<Arc<QuantumTorus>, TorusError> {
        let names: Vec<String> = gens.iter().map(|&i| self.names[i].clone()).collect();
        let poisson: Vec<Vec<i64>> = gens
            .iter()
            .map(|&i| gens.iter().map(|&j| self.poisson[i][j]).collect())
            .collect();
        make_torus(self.n, names, poisson)
    }

    /// JSON description: vertices keyed "a,b,c", alias names, Poisson matrix.
    pub fn to_json(&self) -> serde_json::Value {
        let verts: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .zip(&self.names)
            .map(|(v, name)| {
                serde_json::json!({
                    "coords": format!("{},{},{}", v.a, v.b, v.c),
                    "alias": name,
                })
            })
            .collect();
        serde_json::json!({
            "schema": "fgq/1",
            "n": self.n,
            "vertices": verts,
            "poisson": self.poisson,
        })
    }
}

/// Which coordinate subalgebra / monodromy matrix side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}
