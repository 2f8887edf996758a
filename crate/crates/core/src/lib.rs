//! Exact and certified computations for equivariant Euler characteristics of
//! tamely ramified Galois structures.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cycloarith;
pub mod groupchar;
pub mod classrep;
pub mod metcomplex;
pub mod tamefield;
