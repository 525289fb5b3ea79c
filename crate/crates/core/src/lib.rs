pub mod building;
pub mod cli;
pub mod error;
pub mod expansion;
pub mod ff;
pub mod ffpoly;
pub mod graph;
pub mod morgenstern;
pub mod projgroup;
pub mod spectral;

pub use error::{Error, Result};
