#![allow(clippy::needless_range_loop)]

pub mod assembly;
pub mod cli;
pub mod duality;
pub mod error;
pub mod fan;
pub mod generators;
pub mod json;
pub mod lattice;
pub mod monoid;
pub mod polygon;
pub mod polytope;
pub mod poset;
pub mod report;

pub use error::{Error, Result};
