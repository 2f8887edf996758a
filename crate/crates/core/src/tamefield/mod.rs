//! Tamely ramified Galois number fields N/Q: resolvents, the Hecke form,
//! Pfaffians, conductors, tame Gauss sums, archimedean signs and the
//! representatives of the classes of O_N and O_N G.
//!
//! Fields are ingested as descriptors (embeddings of a normal basis and
//! ramification data); nothing here constructs number fields.

mod classes;
mod descriptor;
pub mod fields;
mod gauss;
mod hecke;
mod resolvent;

pub use classes::{
    artin_conductor_p, eps_infinity_tilde, pfaffian, pfaffian_magnitudes, group_ring_representative,
    theorem_5_9_representative, theorem_6_1_representative, BranchIntersectionData, BranchPoint,
    MagnitudeCheck,
};
pub use descriptor::{GaloisData, InertiaCharacter, RamRecord, RamSpec, TameFieldDescriptor, MIN_BITS};
pub use gauss::{tame_gauss_sum, GaussSumResult};
pub use hecke::{chi_ideal, chi_ring_of_integers, hecke_form, prop_5_7_check, IdealCheck};
pub use resolvent::{
    galois_action_check, interval_det, resolvent, resolvent_virtual, resolvent_signs, GaloisActionCheck,
    SignComparison,
};

use alloc::string::String;
use alloc::vec::Vec;

use crate::classrep::ClassError;
use crate::cycloarith::CycloError;
use crate::groupchar::GroupError;
use crate::metcomplex::MetError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FieldError {
    #[error("invalid field descriptor: {}", .0.join("; "))]
    InvalidDescriptor(Vec<String>),
    #[error("insufficient precision: {0}")]
    PrecisionInsufficient(String),
    #[error("value expected to be real is not: {0}")]
    NotReal(String),
    #[error("character is not symplectic")]
    NotSymplectic,
    #[error("sign exponent is not an even integer")]
    NonIntegralExponent,
    #[error("bad character order: {0}")]
    BadOrder(String),
    #[error("ring of integers is not known to be free on a normal basis")]
    NotFree,
    #[error("module is not cohomologically trivial: {0}")]
    NotCohomologicallyTrivial(String),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Met(#[from] MetError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}
