//! Exact Kazhdan-Lusztig polynomials of braid and cone-graph matroids.

pub mod combinat;
pub mod eqkl;
pub mod error;
pub mod fsmod;
pub mod graphmat;
pub mod klcore;
pub mod polyseries;
pub mod specseq;

pub use error::{Error, Result};
