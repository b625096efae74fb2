pub mod catalog;
pub mod cli;
pub mod dsu;
pub mod error;
pub mod goodness;
pub mod linalg;
pub mod measures;
pub mod model;
pub mod solver;
pub mod structure;

pub use error::{Error, Result};
