//! Finite groups, character tables (Dixon-Schneider), virtual characters,
//! explicit irreducible representations and the group ring Q[G].

mod dixon;
mod group;
mod group_ring;
mod rep;
mod table;

pub use dixon::dixon_prime;
pub use group::{ConjugacyClasses, FiniteGroup, MAX_ORDER};
pub use group_ring::{GroupRingElement, GroupRingMatrix};
pub use rep::{IrreducibleRep, IrrepSet};
pub use table::{CharacterTable, ClassFunction, SharedTable, Subgroup, VirtualCharacter};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group order {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("supplied character table is invalid: {0}")]
    SuppliedTableInvalid(String),
    #[error("character is not irreducible")]
    NotIrreducible,
    #[error("class function is not a virtual character")]
    NotACharacter,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("character table computation failed: {0}")]
    DixonFailure(String),
    #[error("objects belong to different groups")]
    GroupMismatch,
}
