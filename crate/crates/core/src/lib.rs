//! Exact spectral tools for decorated paths.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod charpoly;
pub mod graph;
pub mod spectral;
pub mod cospectral;
pub mod folding;
pub mod gap;
pub mod exec;
pub mod pst;
pub mod locator;
pub mod integral;
pub mod enumerate;
pub mod sweep;
pub mod verify;
