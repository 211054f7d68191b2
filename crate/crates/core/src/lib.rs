//! Exact-arithmetic toolkit for torus instability in geometric invariant theory.
//!
//! Everything here is computed over the rationals (or the integers, for lattice
//! invariants), so every semistability verdict is a sign decision with no
//! rounding. The crate is `no_std` with `alloc`; IO and formats live in the
//! `kempf` companion crate.
//!
//! Module map:
//!
//! - [`higgs`]: fiberwise Higgs structures (integrability, tensor, dual, sections).
//! - [`root_system`]: Cartan data for the simple types and their products.
//! - [`character`]: torus characters as weight multisets, heights, low height.
//! - [`instability`]: nearest points, optimal destabilizers, parabolics, Kirwan indices.
//! - [`separability`]: gcd-of-minors invariants and separability indices.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod character;
pub mod error;
pub mod higgs;
pub mod instability;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod root_system;
pub mod separability;

pub use error::{Error, Result};
pub use rational::Q;

/// Default cap on subset enumeration (Kirwan index sets, separability).
pub const DEFAULT_SUBSET_GUARD: u64 = 1 << 20;

/// Default cap on the size of an enumerated Weyl group orbit.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
