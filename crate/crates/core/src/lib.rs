//! Exact and certified tools for studying the sets of power sums
//! `sum a_k q^k` with small integer digits, for algebraic `q` in `(1, 2)`.

pub mod attractor;
pub mod counting;
pub mod criteria;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod heightsearch;
pub mod polyalg;
pub mod spectrum;

pub use error::{Error, Result};
pub use polyalg::{AlgebraicNumber, IntPolynomial, NumberClass, ResidueVector, RootBox};
