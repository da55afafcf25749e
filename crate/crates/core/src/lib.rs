//! Exact arithmetic on Mukai lattices of Picard-rank-one K3 surfaces and the
//! binary quadratic Diophantine problems that decide their walls.

pub mod arith;
pub mod cli;
pub mod diophantine;
pub mod cubic;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod entropy;
pub mod report;
pub mod scan;
pub mod walls;

pub use error::{Error, Result};
