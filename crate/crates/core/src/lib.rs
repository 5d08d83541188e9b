//! Particle-type string solutions on AdS₃ × S³.
//!
//! The crate builds the closed-string solutions whose induced metric is
//! constant on both factors, checks them numerically, solves the algebraic
//! relations between the AdS and sphere invariants, computes the isometry
//! charges and realizes the particle and string symplectic structures.

pub mod algebra;
pub mod bridge;
pub mod charges;
pub mod diff;
pub mod error;
pub mod geometry;
pub mod io;
pub mod quadrature;
pub mod solution;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
