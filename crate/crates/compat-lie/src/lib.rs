//! Exact-arithmetic kernels for compatible Lie algebras.
//!
//! A compatible Lie algebra is a vector space carrying two Lie brackets whose
//! every linear combination is again a Lie bracket; equivalently the two
//! brackets satisfy the mixed Jacobi identity. This crate implements, over Q
//! and over prime fields F_p:
//!
//! - structure-constant algebras with verification, centres, central series,
//!   nilpotency, quotients, and switch copies ([`algebra`]);
//! - second cohomology with trivial coefficients ([`cohomology`]);
//! - central extensions by cocycles and their annihilators ([`extension`]);
//! - automorphism groups over F_p and their action on cohomology ([`aut`]);
//! - a ground-truth (skew-)isomorphism oracle ([`iso`]);
//! - the central-extension classification driver that regenerates the full
//!   table of nilpotent compatible Lie algebras up to dimension 4
//!   ([`classify`], [`table`]).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live in
//! the companion crate.

#![cfg_attr(not(test), no_std)]
// index-heavy exact linear algebra reads better with plain loops
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod algebra;
pub mod classify;
pub mod aut;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod field;
pub mod iso;
pub mod matrix;
pub mod random;
pub mod subspace;
pub mod table;

pub use algebra::{CompatibleLieAlgebra, VerificationReport};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use subspace::{QuotientCoords, Subspace};
