//! Level-wise enumeration of digit sums `sum a_k x^k mod f` with exact
//! deduplication on integer residue coordinates and optional fixed-point
//! value enclosures at a real root.

use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHasher};

use crate::error::{Error, Result};
use crate::polyalg::interval::{dyadic, Interval};
use crate::polyalg::residue::PowerBasis;
use crate::polyalg::{AlgebraicNumber, ResidueVector};

/// Default cap on the number of stored states of one enumeration.
pub const DEFAULT_STATE_CAP: usize = 1 << 24;

/// Default cap on stored coordinate words of one enumeration.
pub const DEFAULT_WORD_CAP: usize = 1 << 27;

trait Coord: Clone + Eq + Hash {
    fn from_big(v: &BigInt) -> Self;
    fn add_mul(&mut self, row: &Self, a: i64);
    fn origin() -> Self;
}

impl Coord for i128 {
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("coordinate bound checked")
    }
    fn add_mul(&mut self, row: &Self, a: i64) {
        *self += row * a as i128;
    }
    fn origin() -> Self {
        0
    }
}

impl Coord for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn add_mul(&mut self, row: &Self, a: i64) {
        match a {
            0 => {}
            1 => *self += row,
            -1 => *self -= row,
            _ => *self += row * a,
        }
    }
    fn origin() -> Self {
        BigInt::zero()
    }
}

/// Fixed-point values `floor(q^k 2^F)` of the rows with per-row error bounds
/// in units of `2^-F`.
#[derive(Clone, Debug)]
pub struct FixedRows {
    pub frac_bits: u32,
    pub values: Vec<i128>,
    pub errors: Vec<i128>,
}

impl FixedRows {
    /// Rows `q^k` for `k = 0..=n`, scaled so that every digit sum with
    /// digits bounded by `max_digit` fits comfortably in an `i128`.
    pub fn new(q: &AlgebraicNumber, n: usize, max_digit: i64) -> Result<FixedRows> {
        let mut q = q.clone();
        if !q.is_real() {
            return Err(Error::InvalidInput("fixed-point rows need a real root".into()));
        }
        let approx = q.approx().re.abs().max(1.0);
        let log_b = (max_digit.max(1) as f64).log2() + (n as f64 + 1.0) * approx.log2() + (n as f64 + 2.0).log2();
        let frac_bits = (118.0 - log_b.ceil()).clamp(0.0, 110.0) as u32;
        if log_b > 100.0 {
            return Err(Error::WorkCapExceeded("digit sums too large for fixed-point values".into()));
        }
        let work = frac_bits + 2 * (n as u32 + 1) + 32;
        q.refine_to_bits(work)?;
        let x = q.real_interval();
        let scale = BigRational::from_integer(BigInt::one() << frac_bits);
        let mut values = Vec::with_capacity(n + 1);
        let mut errors = Vec::with_capacity(n + 1);
        let mut pk = Interval::point(BigRational::one());
        for _ in 0..=n {
            let lo = (&pk.lo * &scale).floor().to_integer();
            let hi = (&pk.hi * &scale).ceil().to_integer();
            values.push(lo.to_i128().expect("bounded"));
            errors.push((hi - &lo).to_i128().expect("bounded") + 1);
            pk = pk.mul(&x).round_out(work);
        }
        Ok(FixedRows { frac_bits, values, errors })
    }

    pub fn slice(&self, from: usize) -> FixedRows {
        FixedRows {
            frac_bits: self.frac_bits,
            values: self.values[from..].to_vec(),
            errors: self.errors[from..].to_vec(),
        }
    }

    pub fn interval(&self, v: i128, err: i128) -> Interval {
        Interval::new(
            dyadic(BigInt::from(v - err), self.frac_bits),
            dyadic(BigInt::from(v + err), self.frac_bits),
        )
    }
}

enum Store {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

/// The distinct residues of `sum_k a_k row_k` over digit vectors, with parent
/// links recovering one digit vector per residue.
pub struct DigitSums {
    dim: usize,
    digits: Vec<i64>,
    store: Store,
    values: Vec<i128>,
    /// Total fixed-point error bound in units of `2^-F`.
    value_error: i128,
    frac_bits: u32,
    links: Vec<Vec<u64>>,
    scale: BigInt,
    modulus: crate::polyalg::IntPolynomial,
    level_sizes: Vec<usize>,
}

struct Table {
    heads: FxHashMap<u64, u32>,
    next: Vec<u32>,
}

const NIL: u32 = u32::MAX;

fn hash_slice<T: Hash>(s: &[T]) -> u64 {
    let mut h = FxHasher::default();
    s.hash(&mut h);
    h.finish()
}

struct Level<T> {
    coords: Vec<T>,
    values: Vec<i128>,
    links: Vec<u64>,
}

fn enumerate<T: Coord>(
    rows: &[Vec<BigInt>],
    fixed: Option<&FixedRows>,
    digits: &[i64],
    state_cap: usize,
    word_cap: usize,
    mut on_level: impl FnMut(usize, usize),
) -> Result<(Vec<T>, Vec<i128>, Vec<Vec<u64>>)> {
    let d = rows[0].len();
    let trows: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(T::from_big).collect()).collect();
    let mut cur = Level::<T> { coords: vec![T::origin(); d], values: vec![0], links: vec![0] };
    let mut all_links = Vec::with_capacity(rows.len());
    let nd = digits.len() as u64;
    for (k, row) in trows.iter().enumerate() {
        let rv = fixed.map(|f| f.values[k]).unwrap_or(0);
        let prev_len = cur.values.len();
        let mut next = Level::<T> {
            coords: Vec::with_capacity(prev_len * d * 2),
            values: Vec::with_capacity(prev_len * 2),
            links: Vec::with_capacity(prev_len * 2),
        };
        let mut table = Table { heads: FxHashMap::default(), next: Vec::new() };
        table.heads.reserve(prev_len * 2);
        let mut scratch: Vec<T> = vec![T::origin(); d];
        for i in 0..prev_len {
            let base = &cur.coords[i * d..(i + 1) * d];
            for (di, &a) in digits.iter().enumerate() {
                scratch.clone_from_slice(base);
                if a != 0 {
                    for (s, r) in scratch.iter_mut().zip(row.iter()) {
                        s.add_mul(r, a);
                    }
                }
                let h = hash_slice(&scratch);
                let mut j = table.heads.get(&h).copied().unwrap_or(NIL);
                let mut found = false;
                while j != NIL {
                    if next.coords[j as usize * d..(j as usize + 1) * d] == scratch[..] {
                        found = true;
                        break;
                    }
                    j = table.next[j as usize];
                }
                if found {
                    continue;
                }
                let idx = next.values.len() as u32;
                if idx as usize >= state_cap || (idx as usize + 1) * d > word_cap {
                    return Err(Error::WorkCapExceeded(format!(
                        "more than {state_cap} distinct digit sums at level {k}"
                    )));
                }
                let old = table.heads.insert(h, idx).unwrap_or(NIL);
                table.next.push(old);
                next.coords.extend(scratch.iter().cloned());
                next.values.push(cur.values[i] + rv * a as i128);
                next.links.push(i as u64 * nd + di as u64);
            }
        }
        on_level(k, next.values.len());
        all_links.push(std::mem::take(&mut next.links));
        cur = next;
    }
    Ok((cur.coords, cur.values, all_links))
}

/// Options for [`DigitSums::build`].
#[derive(Clone, Debug)]
pub struct SumOptions {
    pub state_cap: usize,
    pub word_cap: usize,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { state_cap: DEFAULT_STATE_CAP, word_cap: DEFAULT_WORD_CAP }
    }
}

impl DigitSums {
    /// Distinct residues of `sum_{k in rows} a_k x^k`, `a_k` in `digits`,
    /// where `rows` indexes into `basis`. With `fixed`, each residue also
    /// carries a fixed-point value at the root behind `fixed`.
    pub fn build(
        basis: &PowerBasis,
        rows: std::ops::Range<usize>,
        digits: &[i64],
        fixed: Option<&FixedRows>,
        opts: &SumOptions,
    ) -> Result<DigitSums> {
        let mut ds: Vec<i64> = digits.to_vec();
        ds.sort_unstable();
        ds.dedup();
        if ds.is_empty() {
            return Err(Error::InvalidInput("digit set must be nonempty".into()));
        }
        let sel: Vec<Vec<BigInt>> = basis.rows()[rows.clone()].to_vec();
        let fixed_sel = fixed.map(|f| f.slice(rows.start));
        let max_digit = ds.iter().map(|a| a.abs()).max().unwrap_or(0);
        let bound: BigInt = sel
            .iter()
            .map(|r| r.iter().map(|c| c.abs()).max().unwrap_or_default())
            .fold(BigInt::zero(), |acc, m| acc + m)
            * max_digit;
        let small = bound.bits() < 125;
        let mut level_sizes = Vec::new();
        let on_level = |_, n| level_sizes.push(n);
        let (store, values, links) = if sel.is_empty() {
            (Store::Small(vec![0; basis.degree()]), vec![0], Vec::new())
        } else if small {
            let (c, v, l) = enumerate::<i128>(&sel, fixed_sel.as_ref(), &ds, opts.state_cap, opts.word_cap, on_level)?;
            (Store::Small(c), v, l)
        } else {
            let (c, v, l) = enumerate::<BigInt>(&sel, fixed_sel.as_ref(), &ds, opts.state_cap, opts.word_cap, on_level)?;
            (Store::Big(c), v, l)
        };
        let value_error = fixed_sel
            .as_ref()
            .map(|f| f.errors.iter().map(|e| e * max_digit as i128).sum::<i128>() + 1)
            .unwrap_or(0);
        Ok(DigitSums {
            dim: basis.degree(),
            digits: ds,
            store,
            values,
            value_error,
            frac_bits: fixed.map(|f| f.frac_bits).unwrap_or(0),
            links,
            scale: basis.scale().clone(),
            modulus: basis.modulus().clone(),
            level_sizes,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of distinct residues after each row.
    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self, i: usize) -> Vec<BigInt> {
        let d = self.dim;
        match &self.store {
            Store::Small(v) => v[i * d..(i + 1) * d].iter().map(|&c| BigInt::from(c)).collect(),
            Store::Big(v) => v[i * d..(i + 1) * d].to_vec(),
        }
    }

    /// True when `self[i] + sign * other[j]` is the zero residue.
    pub fn sum_is_zero(&self, i: usize, other: &DigitSums, j: usize, sign: i64) -> bool {
        let d = self.dim;
        match (&self.store, &other.store) {
            (Store::Small(a), Store::Small(b)) => (0..d).all(|k| a[i * d + k] + sign as i128 * b[j * d + k] == 0),
            _ => {
                let a = self.coords(i);
                let b = other.coords(j);
                a.iter().zip(b.iter()).all(|(x, y)| (x + y * sign).is_zero())
            }
        }
    }

    pub fn residue(&self, i: usize) -> ResidueVector {
        let s = BigRational::from_integer(self.scale.clone());
        let c = self.coords(i).into_iter().map(|v| BigRational::from_integer(v) / &s).collect();
        ResidueVector::from_coords(&self.modulus, c)
    }

    /// Residue of `self[i] + sign * other[j]`.
    pub fn combined_residue(&self, i: usize, other: &DigitSums, j: usize, sign: i64) -> ResidueVector {
        let s = BigRational::from_integer(self.scale.clone());
        let c = self
            .coords(i)
            .into_iter()
            .zip(other.coords(j))
            .map(|(a, b)| BigRational::from_integer(a + b * sign) / &s)
            .collect();
        ResidueVector::from_coords(&self.modulus, c)
    }

    pub fn value(&self, i: usize) -> i128 {
        self.values[i]
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn value_error(&self) -> i128 {
        self.value_error
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn value_interval(&self, i: usize) -> Interval {
        Interval::new(
            dyadic(BigInt::from(self.values[i] - self.value_error), self.frac_bits),
            dyadic(BigInt::from(self.values[i] + self.value_error), self.frac_bits),
        )
    }

    /// One digit vector (ascending powers) producing residue `i`.
    pub fn digit_vector(&self, i: usize) -> Vec<i64> {
        let nd = self.digits.len() as u64;
        let mut out = vec![0; self.links.len()];
        let mut idx = i as u64;
        for k in (0..self.links.len()).rev() {
            let link = self.links[k][idx as usize];
            out[k] = self.digits[(link % nd) as usize];
            idx = link / nd;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{IntPolynomial, DEFAULT_BUDGET};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn count(f: &IntPolynomial, n: usize, digits: &[i64]) -> usize {
        let b = PowerBasis::new(f, n);
        DigitSums::build(&b, 0..n + 1, digits, None, &SumOptions::default()).unwrap().len()
    }

    #[test]
    fn golden_counts() {
        let f = p(&[-1, -1, 1]);
        let got: Vec<usize> = (0..8).map(|n| count(&f, n, &[0, 1])).collect();
        assert_eq!(got, vec![2, 4, 7, 12, 20, 33, 54, 88]);
    }

    #[test]
    fn binary_counts() {
        assert_eq!(count(&p(&[-2, 1]), 6, &[0, 1]), 128);
        assert_eq!(count(&p(&[-3, 1]), 4, &[-1, 0, 1]), 243);
    }

    #[test]
    fn digit_vectors_reproduce_residues() {
        let f = p(&[-1, -1, 0, 0, 1]);
        let n = 9;
        let b = PowerBasis::new(&f, n);
        let s = DigitSums::build(&b, 0..n + 1, &[-1, 0, 1], None, &SumOptions::default()).unwrap();
        for i in (0..s.len()).step_by(97) {
            let v = s.digit_vector(i);
            assert_eq!(ResidueVector::from_digits(&f, &v), s.residue(i));
        }
    }

    #[test]
    fn fixed_values_enclose() {
        let f = p(&[-1, -1, 1]);
        let q = AlgebraicNumber::real_roots(&f, DEFAULT_BUDGET).unwrap().pop().unwrap();
        let n = 12;
        let fr = FixedRows::new(&q, n, 1).unwrap();
        let b = PowerBasis::new(&f, n);
        let s = DigitSums::build(&b, 0..n + 1, &[0, 1], Some(&fr), &SumOptions::default()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for i in 0..s.len() {
            let v: f64 = s.digit_vector(i).iter().enumerate().map(|(k, &a)| a as f64 * phi.powi(k as i32)).sum();
            let iv = s.value_interval(i);
            assert!((iv.mid_f64() - v).abs() < 1e-9);
        }
    }

    #[test]
    fn big_coordinates_fallback() {
        let f = p(&[-7, 1, 0, 0, 0, 0, 0, 0, 1000]);
        let b = PowerBasis::new(&f, 14);
        let s = DigitSums::build(&b, 0..15, &[0, 1], None, &SumOptions::default()).unwrap();
        assert_eq!(s.len(), 1 << 15);
    }
}
