//! Integer polynomials, certified root isolation, residue arithmetic and
//! classification of algebraic integers.

pub mod algebraic;
pub mod classify;
pub mod interval;
pub mod modp;
pub mod poly;
pub mod residue;
pub mod roots;

pub use algebraic::AlgebraicNumber;
pub use classify::{classify, NumberClass};
pub use interval::{Disk, Interval};
pub use poly::IntPolynomial;
pub use residue::ResidueVector;
pub use roots::{isolate_roots, RootBox, RootSet, DEFAULT_BUDGET};

use crate::error::Result;

/// Default cap on the degree of pair-product polynomials.
pub const PAIR_PRODUCT_CAP: usize = 500;

/// Default cap on input degrees.
pub const INPUT_DEGREE_CAP: usize = 64;

pub fn squarefree_part(p: &IntPolynomial) -> IntPolynomial {
    p.squarefree_part()
}

pub fn reverse(p: &IntPolynomial) -> Result<IntPolynomial> {
    p.reverse()
}

pub fn graeffe(p: &IntPolynomial) -> IntPolynomial {
    p.graeffe()
}

/// Largest `m` with `p = g(x^m)`, and `g`.
pub fn detect_power_structure(p: &IntPolynomial) -> (usize, IntPolynomial) {
    p.power_structure()
}

/// True when some root `r` of `p` has `-r` as a root too, decided by
/// `deg gcd(p(x), p(-x)) >= 1`.
pub fn negation_conjugate_test(p: &IntPolynomial) -> bool {
    p.gcd(&p.neg_var()).degree() >= 1
}

/// Polynomial of degree `d(d-1)/2` whose roots are the pairwise products of
/// the roots of `p`.
pub fn pair_product_polynomial(p: &IntPolynomial) -> Result<IntPolynomial> {
    p.pair_product(PAIR_PRODUCT_CAP)
}
