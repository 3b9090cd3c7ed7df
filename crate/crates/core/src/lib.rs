//! Numerical toolkit for α-harmonic functions on the unit disk.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod landau;
pub mod solution;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
