//! Exact fuzzy subspaces of finite-dimensional vector spaces over GF(p) and
//! the rationals.
//!
//! A fuzzy subspace with finite image is stored as a [`FuzzyFlag`]: strictly
//! decreasing membership levels paired with a strictly increasing chain of
//! subspaces ending at the whole space. On top of that the crate computes
//! fuzzy bases, the fuzzy dimension, Zadeh images under linear maps, and
//! decides isomorphism by comparing dimension profiles, producing an explicit
//! witness map when the answer is yes. The [`oracle`] module holds
//! brute-force versions of the same computations for cross-checking.

pub mod arith;
pub mod certify;
pub mod cli;
pub mod error;
pub mod fuzzy;
pub mod io;
pub mod linalg;
pub mod morphism;
pub mod oracle;
pub mod strategy;

pub use arith::{level_cmp, FieldScalar, FieldSpec, Rational};
pub use error::{Error, Result};
pub use fuzzy::{from_pointwise, validate_flag, FuzzyBasis, FuzzyFlag, PointwiseTable};
pub use linalg::{apply_to_subspace, extend_basis, rref, span, Matrix, Subspace, Vector};
pub use morphism::{
    are_isomorphic, dim_profile, transport_basis, verify_isomorphism, witness_isomorphism, zadeh_image,
    DimProfile, LinearMap, ProfileValue,
};
pub use oracle::{brute_force_iso, EnumerationBudget};
