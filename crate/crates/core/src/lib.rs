//! Exact-arithmetic reductions of Lie bialgebra structures on `g[u]` to
//! finite-dimensional Lagrangian subalgebra problems.
//!
//! Everything is computed over the rationals: Chevalley bases of the simple
//! Lie algebras, the quadratic doubles `g ⊕ g`, `g[ε]` and `L_α ⊕ g`, truncated
//! Laurent orders with their residue forms, the quotient maps between them,
//! and Belavin–Drinfeld type triples.

pub mod algebra;
pub mod doubles;
pub mod error;
pub mod grading;
pub mod laurent;
pub mod linalg;
pub mod quotient;
pub mod report;
pub mod root_system;
pub mod triples;

pub use algebra::{build_chevalley_algebra, BasisKind, ChevalleyAlgebra, GElem};
pub use doubles::{build_double, delta_alpha, delta_alpha_max, p_eps, DoubleElem, DoubleKind, QuadDouble};
pub use error::{LieError, Result};
pub use grading::{alpha_grading, AlphaGrading};
pub use laurent::{order_intersection, perp_in_order, LaurentElem, SeriesCase, SourceSpace, TruncatedOrder};
pub use linalg::{LinearMap, SparseVec, Subspace, Q};
pub use quotient::{build_phi, transfer_subalgebra, verify_phi, Direction, Flags, PrintedPerp, QuotientMap, TheoremId, VerificationReport};
pub use report::{run_verify, RootSelection, RunConfig, VerifyReport};
pub use root_system::{build_root_system, CartanLabel, Family, RootSystem, RootVec};
pub use triples::{
    abelian_part, build_candidate_w, classify_type, diagram_isometries, enumerate_triples, is_admissible, Candidate, Node, Orientation,
    Setting, TripleRep, TripleType,
};
