//! Exact computer algebra for quantum tori and Fock–Goncharov quantum
//! monodromy matrices.
//!
//! The crate provides:
//!
//! * [`qtorus`] — normal-ordered arithmetic in quantum tori with n-th roots of
//!   generators, Weyl (symmetric) quantum ordering, commutative
//!   specialization, tensor products, and monomial generator-map
//!   homomorphisms;
//! * [`quiver`] — the discrete triangle Θ_n and the Fock–Goncharov quiver with
//!   its antisymmetric Poisson matrix;
//! * [`ncmatrix`] — matrices over a (possibly noncommutative) quantum torus,
//!   the shearing/edge/U-turn elementary matrices, and the classical and
//!   quantum left/right/edge monodromy matrices;
//! * [`slnq`] — membership tests for the quantum matrix algebra M_n^q and the
//!   quantum special linear group SL_n^q, and the quantum determinant;
//! * [`linalg`] — dense exact-rational linear algebra (kernels, determinants,
//!   inverses) used by the classical layer;
//! * [`flags`] — complete flags over the rationals, genericity predicates, and
//!   the triangle/edge invariants of flag tuples;
//! * [`snakes`] — snake paths in the discrete triangle, projective bases, and
//!   exact verification of the elementary change-of-basis matrices;
//! * [`quantum`] — snake-move quantum tori, their SL_n^q matrices, the
//!   embedding of the left/right coordinate subalgebra into a tensor product
//!   of snake-move tori, and the factorization identity.
//!
//! All arithmetic is exact: coefficients are rational Laurent polynomials in a
//! formal half-power h of the quantum parameter ω (h² = ω, q = ω^{n²}), and
//! the classical layer works over arbitrary-precision rationals. Nothing is
//! ever floated.

pub mod flags;
pub mod linalg;
pub mod ncmatrix;
pub mod qtorus;
pub mod quantum;
pub mod quiver;
pub mod slnq;
pub mod snakes;

pub use flags::Flag;
pub use linalg::QMat;
pub use ncmatrix::NcMatrix;
pub use qtorus::{GeneratorMap, HLaurent, QuantumTorus, Rat, TorusElement};
pub use quiver::FgQuiverSpec;
pub use slnq::RelationReport;
pub use snakes::{Chirality, Snake, SnakeMove, SnakeSequence};
