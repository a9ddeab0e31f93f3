//! Torsion pairs, s-torsion pairs and t-structures for type-A path algebras
//! and their bounded derived categories.

pub mod cli;
pub mod dercat;
pub mod error;
pub mod exactlin;
pub mod hrs;
pub mod literal;
pub mod quiver;
pub mod torspairs;

pub use error::{Error, Result};
