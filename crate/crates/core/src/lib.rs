//! Semi-invariants, reverse tableaux and the component census of the
//! nilfibre of a parabolic nilradical in type A.

pub mod census;
pub mod cli;
pub mod error;
pub mod invariant;
pub mod reverse;
pub mod shape;
pub mod symalg;

pub use error::{Error, Result};
