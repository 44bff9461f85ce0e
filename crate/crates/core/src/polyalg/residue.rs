use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{CRational, Disk, Interval};
use super::poly::IntPolynomial;

/// An element of `Q[x]/(f)` in the power basis `1, x, ..., x^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueVector {
    modulus: IntPolynomial,
    coords: Vec<BigRational>,
}

impl ResidueVector {
    pub fn zero(modulus: &IntPolynomial) -> Self {
        assert!(modulus.degree() >= 1, "residue modulus must have degree >= 1");
        ResidueVector { modulus: modulus.clone(), coords: vec![BigRational::zero(); modulus.degree()] }
    }

    /// Reduction of an arbitrary polynomial modulo `modulus`.
    pub fn from_polynomial(modulus: &IntPolynomial, p: &IntPolynomial) -> Self {
        let mut r = Self::zero(modulus);
        let mut xk = Self::one(modulus);
        for c in p.coeffs() {
            if !c.is_zero() {
                r = r.add(&xk.scale(&BigRational::from_integer(c.clone())));
            }
            xk = xk.mul_x();
        }
        r
    }

    /// Residue of `sum a_k x^k`.
    pub fn from_digits(modulus: &IntPolynomial, digits: &[i64]) -> Self {
        Self::from_polynomial(modulus, &IntPolynomial::from_i64(digits))
    }

    pub fn one(modulus: &IntPolynomial) -> Self {
        let mut r = Self::zero(modulus);
        r.coords[0] = BigRational::one();
        r
    }

    /// `x^k mod f`.
    pub fn power(modulus: &IntPolynomial, k: usize) -> Self {
        let mut r = Self::one(modulus);
        for _ in 0..k {
            r = r.mul_x();
        }
        r
    }

    pub fn from_coords(modulus: &IntPolynomial, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), modulus.degree(), "coordinate count must equal the degree");
        ResidueVector { modulus: modulus.clone(), coords }
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        ResidueVector { modulus: self.modulus.clone(), coords }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        ResidueVector { modulus: self.modulus.clone(), coords }
    }

    pub fn neg(&self) -> Self {
        let coords = self.coords.iter().map(|a| -a).collect();
        ResidueVector { modulus: self.modulus.clone(), coords }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let coords = self.coords.iter().map(|a| a * k).collect();
        ResidueVector { modulus: self.modulus.clone(), coords }
    }

    /// Multiplication by `x`, reducing with `x^d = -(f_0 + ... + f_{d-1} x^{d-1}) / f_d`.
    pub fn mul_x(&self) -> Self {
        let d = self.coords.len();
        let f = self.modulus.coeffs();
        let top = self.coords[d - 1].clone();
        let mut coords = Vec::with_capacity(d);
        coords.push(BigRational::zero());
        coords.extend(self.coords[..d - 1].iter().cloned());
        if !top.is_zero() {
            let t = &top / BigRational::from_integer(f[d].clone());
            for (k, c) in coords.iter_mut().enumerate() {
                *c -= &t * BigRational::from_integer(f[k].clone());
            }
        }
        ResidueVector { modulus: self.modulus.clone(), coords }
    }

    /// Representative polynomial scaled to integer coefficients, and the
    /// positive scale factor: `self = poly / denom`.
    pub fn to_scaled_polynomial(&self) -> (IntPolynomial, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coords {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let coeffs = self.coords.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        (IntPolynomial::new(coeffs), den)
    }

    /// Enclosure of the value at a real point given by an interval.
    pub fn eval_real(&self, x: &Interval) -> Interval {
        let mut acc = Interval::point(BigRational::zero());
        for c in self.coords.iter().rev() {
            acc = acc.mul(x).add(&Interval::point(c.clone()));
        }
        acc
    }

    /// Enclosure of the value at a complex point given by a disk.
    pub fn eval(&self, z: &Disk, bits: u32) -> Disk {
        let mut acc = Disk::point(CRational::new(BigRational::zero(), BigRational::zero()));
        for c in self.coords.iter().rev() {
            acc = acc.mul(z, bits);
            acc.center.re += c;
        }
        acc
    }

    /// Sign of the leading nonzero coordinate; used only as a canonical
    /// tie-break, not as an order on values.
    pub fn canonical_sign(&self) -> i32 {
        match self.coords.iter().rev().find(|c| !c.is_zero()) {
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
            None => 0,
        }
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] mod ({})", parts.join(", "), self.modulus)
    }
}

/// Integer rows `c^E (x^k mod f)` for `k = 0..=n`, where `c` is the leading
/// coefficient of `f` and `E` clears every denominator up to degree `n`.
#[derive(Clone, Debug)]
pub struct PowerBasis {
    modulus: IntPolynomial,
    scale: BigInt,
    rows: Vec<Vec<BigInt>>,
}

impl PowerBasis {
    pub fn new(f: &IntPolynomial, n: usize) -> Self {
        let modulus = f.primitive();
        let d = modulus.degree();
        assert!(d >= 1, "power basis needs degree >= 1");
        let e = (n + 1).saturating_sub(d);
        let scale = num_traits::pow(modulus.leading(), e);
        let s = BigRational::from_integer(scale.clone());
        let mut rows = Vec::with_capacity(n + 1);
        let mut xk = ResidueVector::one(&modulus);
        for _ in 0..=n {
            rows.push(
                xk.coords
                    .iter()
                    .map(|c| {
                        let v = c * &s;
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect(),
            );
            xk = xk.mul_x();
        }
        PowerBasis { modulus, scale, rows }
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    /// Common scale `c^E` of every row.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Residue of an integer coordinate vector expressed in row units.
    pub fn residue(&self, coords: &[BigInt]) -> ResidueVector {
        let s = BigRational::from_integer(self.scale.clone());
        let c = coords.iter().map(|v| BigRational::from_integer(v.clone()) / &s).collect();
        ResidueVector::from_coords(&self.modulus, c)
    }

    /// Largest absolute row coordinate.
    pub fn max_abs(&self) -> BigInt {
        self.rows.iter().flatten().map(|c| c.abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::interval::rat;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn golden_relation_is_zero() {
        let f = p(&[-1, -1, 1]);
        let a = ResidueVector::from_digits(&f, &[1, 1]);
        let b = ResidueVector::from_digits(&f, &[0, 0, 1]);
        assert!(a.sub(&b).is_zero());
        assert!(ResidueVector::from_digits(&f, &[-1, -1, 1]).is_zero());
    }

    #[test]
    fn mul_x_matches_power() {
        let f = p(&[-1, -1, 0, 0, 1]);
        let r = ResidueVector::power(&f, 9);
        let direct = ResidueVector::from_polynomial(&f, &IntPolynomial::monomial(BigInt::one(), 9));
        assert_eq!(r, direct);
    }

    #[test]
    fn basis_rows_match_residues() {
        for f in [p(&[-1, -1, 0, 0, 1]), p(&[-3, 2]), p(&[1, -3, 0, 2]), p(&[-1, 2, 5, 3])] {
            let n = 9;
            let b = PowerBasis::new(&f, n);
            let fp = f.primitive();
            for k in 0..=n {
                assert_eq!(b.residue(&b.rows()[k]), ResidueVector::power(&fp, k), "{f} k={k}");
            }
        }
    }

    #[test]
    fn eval_agrees_with_value() {
        let f = p(&[-1, -1, 1]);
        let r = ResidueVector::from_digits(&f, &[1, 0, 1, 1]);
        // 1 + phi^2 + phi^3 = 1 + (phi+1) + (2phi+1) = 3 + 3 phi
        let phi = Interval::new(rat(1618033988, 1_000_000_000), rat(1618033989, 1_000_000_000));
        let v = r.eval_real(&phi);
        assert!(v.contains(&rat(78_541_019_662, 10_000_000_000)));
    }
}
