//! Perfect complexes of free Z[G]-modules, metrics on their equivariant
//! determinants of cohomology, and their arithmetic classes.
//!
//! Isotypic pieces are handled in double precision: every term is expanded in
//! the basis `r(e_j)(1 (x) w_l)`, boundaries become complex matrices, and the
//! Knudsen-Mumford map is realised by orthonormal splittings. Ranks are
//! decided exactly over the cyclotomic field and only confirmed numerically.

mod class;
mod complex;
pub mod fixtures;
mod frame;
mod isotypic;
mod metric;
mod numeric;

pub use class::{
    arithmetic_class, class_support, finite_value_at, fixed_point_class, fixed_point_defect, log_arch_norm,
    nonunit_support,
    reduced_norm_product, BasisData,
};
pub use complex::{compose, CochainMap, PerfectComplex};
pub use frame::{FrameSet, IsotypicFrame};
pub use isotypic::{beta_gram, beta_matrix, isotypic_basis, IsotypicContext, KmSplitting};
pub use metric::{mu, nu, DetLineMetric, HermitianForm, MetrisedComplex};
pub use numeric::CMat;

use alloc::string::String;

use crate::classrep::ClassError;
use crate::groupchar::GroupError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("d o d != 0 starting in degree {0}")]
    NotAComplex(i64),
    #[error("map does not commute with the boundary in degree {0}")]
    NotAChainMap(i64),
    #[error("numerical rank of the boundary for character {character} in degree {degree} is undecidable")]
    RankDeficiency { character: usize, degree: i64 },
    #[error("not a quasi-isomorphism: {0}")]
    NotQuasiIso(String),
    #[error("global basis at position {0} is not a basis")]
    NotABasis(usize),
    #[error("local basis at {p} in degree {degree} is not a Z_p[G]-basis")]
    NotALocalBasis { p: u64, degree: i64 },
    #[error("form is not Hermitian")]
    NotHermitian,
    #[error("form is not G-invariant")]
    NotInvariant,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("insufficient precision: {0}")]
    PrecisionInsufficient(&'static str),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
