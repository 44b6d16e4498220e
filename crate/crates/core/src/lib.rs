//! Combinatorics of semi-infinite Lakshmibai-Seshadri paths for twisted affine
//! root systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`cartan`]: finite and affine root data, weights, real affine roots.
//! * [`weyl`]: the affine Weyl group `W ⋉ lattice`, semi-infinite length,
//!   Peterson coset representatives and J-adjusted translations.
//! * [`sibg`]: the semi-infinite Bruhat graph and a-chain search.
//! * [`paths`]: the level-zero weight poset, LS paths and semi-infinite LS
//!   paths with their root operators.
//! * [`qbg`]: parabolic quantum Bruhat graphs and quantum LS paths.
//! * [`morphisms`]: the two reduction maps between affine types.
//! * [`components`]: translation paths and connected components.
//! * [`verify`]: exhaustive verification suites shared by the tests and CLI.
//!
//! All arithmetic is exact. Vectors are stored in fixed-size arrays of length
//! [`cartan::MAX_RANK`], which bounds the supported rank.

pub mod cartan;
pub mod components;
mod error;
pub mod json;
pub mod morphisms;
pub mod paths;
pub mod qbg;
pub mod sibg;
pub mod verify;
pub mod weyl;

pub use error::Error;

/// Exact rational numbers.
pub type Q = num_rational::Rational64;

pub type Result<T> = std::result::Result<T, Error>;
