//! Homotopy invariants of finite directed multigraphs.

pub mod dynamics;
pub mod error;
pub mod graph;
pub mod homotopy;
pub mod json;
pub mod matrix;
pub mod model;
pub mod named;
pub mod poly;
pub mod scalar;
pub mod search;
pub mod series;
pub mod spectral;
pub mod unionfind;
pub mod witt;

pub use error::{Error, Result};

pub type IntPolynomial = poly::Polynomial<num_bigint::BigInt>;
pub type AdjacencyMatrix = matrix::Matrix<num_bigint::BigInt>;
pub type RationalSeries = series::PowerSeries<num_rational::BigRational>;
