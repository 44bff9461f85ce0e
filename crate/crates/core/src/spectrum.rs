//! Sorted spectra `Y_n(q)` and `Lambda_n(q)` of digit sums at a real
//! algebraic `q`, gap statistics, and the smallest positive element of
//! `Lambda_n(q)` by meet-in-the-middle.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::enumeration::{DigitSums, FixedRows, SumOptions};
use crate::error::{Error, Result};
use crate::polyalg::algebraic::is_root_of;
use crate::polyalg::interval::{decimal, dyadic, Interval};
use crate::polyalg::residue::PowerBasis;
use crate::polyalg::{AlgebraicNumber, IntPolynomial, ResidueVector, RootBox};

/// Significant digits of decimal value output.
pub const DECIMAL_DIGITS: usize = 20;

/// A finite digit alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitSet {
    digits: Vec<i64>,
}

impl DigitSet {
    pub fn new(mut digits: Vec<i64>) -> Result<DigitSet> {
        digits.sort_unstable();
        digits.dedup();
        if digits.is_empty() {
            return Err(Error::InvalidInput("digit set must be nonempty".into()));
        }
        Ok(DigitSet { digits })
    }

    /// `{0, 1}`.
    pub fn binary() -> DigitSet {
        DigitSet { digits: vec![0, 1] }
    }

    /// `{-1, 0, 1}`.
    pub fn signed() -> DigitSet {
        DigitSet { digits: vec![-1, 0, 1] }
    }

    /// `{-1, 1}`.
    pub fn plus_minus() -> DigitSet {
        DigitSet { digits: vec![-1, 1] }
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn max_abs(&self) -> i64 {
        self.digits.iter().map(|d| d.abs()).max().unwrap_or(0)
    }

    pub fn min(&self) -> i64 {
        self.digits[0]
    }

    pub fn max(&self) -> i64 {
        *self.digits.last().expect("nonempty")
    }

    /// Smallest positive digit when the set is `{0, ...}` with all digits
    /// nonnegative; only then do spectra stabilise from below.
    pub fn finalizing_digit(&self) -> Option<i64> {
        if self.digits[0] != 0 {
            return None;
        }
        self.digits.get(1).copied()
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for DigitSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<DigitSet> {
        match s.trim() {
            "y" | "binary" => return Ok(DigitSet::binary()),
            "lambda" | "signed" => return Ok(DigitSet::signed()),
            "pm" | "plus-minus" => return Ok(DigitSet::plus_minus()),
            _ => {}
        }
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let digits = body
            .split(',')
            .map(|t| t.trim().replace('\u{2212}', "-").parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("digit set {s:?}: {e}")))?;
        DigitSet::new(digits)
    }
}

/// Exact sign decisions for residues evaluated at a real root `q`.
#[derive(Clone, Debug)]
pub struct ValueOracle {
    q: AlgebraicNumber,
}

impl ValueOracle {
    pub fn new(q: &AlgebraicNumber) -> ValueOracle {
        ValueOracle { q: q.clone() }
    }

    pub fn q(&self) -> &AlgebraicNumber {
        &self.q
    }

    /// Enclosure of `r(q)` from the current isolation of `q`.
    pub fn enclose(&self, r: &ResidueVector) -> Interval {
        let bits = self.q.prec() + 16;
        r.eval_real(&self.q.real_interval().round_out(bits)).round_out(bits + 8)
    }

    /// Enclosure of `r(q)` of width at most `2^-bits`.
    pub fn enclose_to(&mut self, r: &ResidueVector, bits: u32) -> Result<Interval> {
        let limit = dyadic(BigInt::one(), bits);
        loop {
            let iv = self.enclose(r);
            if iv.width() <= limit {
                return Ok(iv);
            }
            self.q.refine()?;
        }
    }

    /// Sign of `r(q)`; zero is decided exactly, also when the modulus of `r`
    /// is reducible and `q` is a root of only one factor.
    pub fn sign(&mut self, r: &ResidueVector) -> Result<Ordering> {
        if r.is_zero() {
            return Ok(Ordering::Equal);
        }
        let mut root_checked = false;
        loop {
            let iv = self.enclose(r);
            if iv.is_positive() {
                return Ok(Ordering::Greater);
            }
            if iv.is_negative() {
                return Ok(Ordering::Less);
            }
            if !root_checked {
                root_checked = true;
                let (p, _) = r.to_scaled_polynomial();
                if is_root_of(&self.q, &p)? {
                    return Ok(Ordering::Equal);
                }
            }
            self.q.refine()?;
        }
    }
}

/// One element of a spectrum.
#[derive(Clone, Debug)]
pub struct SpectrumValue {
    /// Residue coordinates in units of the report scale.
    pub coords: Vec<BigInt>,
    pub enclosure: Interval,
    /// A digit vector producing the value, ascending powers.
    pub digits: Vec<i64>,
}

/// Sorted distinct values of a digit-sum set at `q`.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub q: AlgebraicNumber,
    pub q_box: RootBox,
    pub n: usize,
    pub digitset: DigitSet,
    pub modulus: IntPolynomial,
    pub scale: BigInt,
    pub values: Vec<SpectrumValue>,
    pub gaps: Vec<Interval>,
    /// Values strictly below this bound are final for all larger `n`.
    pub finalized_upto: Option<BigRational>,
}

impl SpectrumReport {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn residue(&self, i: usize) -> ResidueVector {
        let s = BigRational::from_integer(self.scale.clone());
        let c = self.values[i].coords.iter().map(|v| BigRational::from_integer(v.clone()) / &s).collect();
        ResidueVector::from_coords(&self.modulus, c)
    }

    /// Residue of `values[i+1] - values[i]`.
    pub fn gap_residue(&self, i: usize) -> ResidueVector {
        self.residue(i + 1).sub(&self.residue(i))
    }

    /// Number of values strictly below the finalized bound.
    pub fn finalized_len(&self) -> usize {
        match &self.finalized_upto {
            Some(b) => self.values.iter().take_while(|v| &v.enclosure.hi < b).count(),
            None => 0,
        }
    }

    pub fn oracle(&self) -> ValueOracle {
        ValueOracle::new(&self.q)
    }

    /// CSV with columns `index,value_decimal,gap_to_next`.
    pub fn to_csv(&self) -> Result<String> {
        let mut oracle = self.oracle();
        let bits = 96;
        oracle.q.refine_to_bits(bits + 64)?;
        let mut out = String::from("index,value_decimal,gap_to_next\n");
        let mut rows: Vec<(String, Option<String>)> = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let v = oracle.enclose(&self.residue(i));
            let gap = if i + 1 < self.len() { Some(oracle.enclose(&self.gap_residue(i))) } else { None };
            rows.push((decimal(&v.mid(), DECIMAL_DIGITS), gap.map(|g| decimal(&g.mid(), DECIMAL_DIGITS))));
        }
        for (i, (v, g)) in rows.into_iter().enumerate() {
            out.push_str(&format!("{i},{v},{}\n", g.unwrap_or_default()));
        }
        Ok(out)
    }
}

fn check_root(f: &IntPolynomial, q: &AlgebraicNumber) -> Result<()> {
    if !q.is_real() {
        return Err(Error::InvalidInput("q must be a real root".into()));
    }
    if !is_root_of(q, f)? {
        return Err(Error::InvalidInput(format!("q is not a root of {f}")));
    }
    Ok(())
}

/// Sorts state indices by value at `q`, falling back to exact comparison
/// when fixed-point enclosures cannot separate two values.
fn sort_by_value(sums: &DigitSums, oracle: &mut ValueOracle, idx: &mut [usize]) -> Result<()> {
    let e2 = 2 * sums.value_error();
    let mut failure: Option<Error> = None;
    idx.sort_by(|&a, &b| {
        let (va, vb) = (sums.value(a), sums.value(b));
        if vb - va > e2 {
            return Ordering::Less;
        }
        if va - vb > e2 {
            return Ordering::Greater;
        }
        let d = sums.residue(a).sub(&sums.residue(b));
        match oracle.sign(&d) {
            Ok(Ordering::Equal) => a.cmp(&b),
            Ok(o) => o,
            Err(e) => {
                failure.get_or_insert(e);
                a.cmp(&b)
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Enumerates the distinct values `sum_{k<=n} a_k q^k`, `a_k` in `digits`,
/// in certified ascending order.
pub fn enumerate_spectrum(
    f: &IntPolynomial,
    q: &AlgebraicNumber,
    n: usize,
    digits: &DigitSet,
) -> Result<SpectrumReport> {
    enumerate_spectrum_with(f, q, n, digits, &SumOptions::default())
}

pub fn enumerate_spectrum_with(
    f: &IntPolynomial,
    q: &AlgebraicNumber,
    n: usize,
    digits: &DigitSet,
    opts: &SumOptions,
) -> Result<SpectrumReport> {
    check_root(f, q)?;
    let modulus = f.squarefree_part();
    let basis = PowerBasis::new(&modulus, n);
    let fixed = FixedRows::new(q, n, digits.max_abs())?;
    let sums = DigitSums::build(&basis, 0..n + 1, digits.digits(), Some(&fixed), opts)?;
    let mut oracle = ValueOracle::new(q);
    let mut idx: Vec<usize> = (0..sums.len()).collect();
    sort_by_value(&sums, &mut oracle, &mut idx)?;

    let e2 = 2 * sums.value_error();
    let mut kept: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in &idx {
        if let Some(&last) = kept.last() {
            if sums.value(i) - sums.value(last) <= e2 {
                let d = sums.residue(i).sub(&sums.residue(last));
                if oracle.sign(&d)? == Ordering::Equal {
                    continue;
                }
            }
        }
        kept.push(i);
    }

    let mut values: Vec<SpectrumValue> = kept
        .iter()
        .map(|&i| SpectrumValue { coords: sums.coords(i), enclosure: sums.value_interval(i), digits: sums.digit_vector(i) })
        .collect();
    // separate overlapping neighbours by exact re-evaluation
    for i in 0..values.len().saturating_sub(1) {
        let mut bits = sums.frac_bits() + 32;
        while values[i].enclosure.hi >= values[i + 1].enclosure.lo {
            let a = oracle.enclose_to(&sums.residue(kept[i]), bits)?;
            let b = oracle.enclose_to(&sums.residue(kept[i + 1]), bits)?;
            values[i].enclosure = a;
            values[i + 1].enclosure = b;
            bits += 32;
        }
    }
    let gaps = values
        .windows(2)
        .map(|w| w[1].enclosure.sub(&w[0].enclosure))
        .collect::<Vec<_>>();
    debug_assert!(gaps.iter().all(|g| g.is_positive()));
    let finalized_upto = match digits.finalizing_digit() {
        Some(dmin) => Some(finalized_bound(q, n)? * BigRational::from_integer(BigInt::from(dmin))),
        None => None,
    };
    Ok(SpectrumReport {
        q: q.clone(),
        q_box: q.root_box().clone(),
        n,
        digitset: digits.clone(),
        modulus: basis.modulus().clone(),
        scale: basis.scale().clone(),
        values,
        gaps,
        finalized_upto,
    })
}

/// A lower bound for `q^(n+1)`; every value of `Y_n(q)` below it is a value
/// of `Y_m(q)` below it for every `m > n` and conversely.
pub fn finalized_bound(q: &AlgebraicNumber, n: usize) -> Result<BigRational> {
    let mut q = q.clone();
    q.refine_to_bits(64 + 2 * n as u32)?;
    let iv = q.real_interval().pow(n as u32 + 1);
    Ok(iv.round_out(64 + 2 * n as u32).lo)
}

/// Statistics of consecutive gaps over the finalized prefix.
#[derive(Clone, Debug)]
pub struct GapStats {
    pub min_gap: Interval,
    pub min_gap_index: usize,
    pub tail_min_gap: Interval,
    pub tail_min_index: usize,
    pub max_gap_tail: Interval,
    pub max_gap_tail_index: usize,
    pub record_min_positions: Vec<usize>,
    /// Number of values the statistics range over.
    pub prefix_len: usize,
    /// First gap index of the tail window.
    pub tail_start: usize,
    /// False when the digit set gives no finalized prefix and the whole
    /// spectrum was used.
    pub prefix_finalized: bool,
}

impl GapStats {
    pub fn to_json(&self) -> Value {
        json!({
            "min_gap": decimal(&self.min_gap.mid(), DECIMAL_DIGITS),
            "min_gap_enclosure": [decimal(&self.min_gap.lo, DECIMAL_DIGITS), decimal(&self.min_gap.hi, DECIMAL_DIGITS)],
            "min_gap_index": self.min_gap_index,
            "tail_min_gap": decimal(&self.tail_min_gap.mid(), DECIMAL_DIGITS),
            "tail_min_index": self.tail_min_index,
            "max_gap_tail": decimal(&self.max_gap_tail.mid(), DECIMAL_DIGITS),
            "max_gap_tail_index": self.max_gap_tail_index,
            "record_min_positions": self.record_min_positions,
            "prefix_len": self.prefix_len,
            "tail_start": self.tail_start,
            "prefix_finalized": self.prefix_finalized,
            "note": "finite-n tail statistics; no limit is claimed",
        })
    }
}

/// Exact comparison of gaps `i` and `j` of a report.
fn cmp_gaps(r: &SpectrumReport, oracle: &mut ValueOracle, i: usize, j: usize) -> Result<Ordering> {
    if let Some(o) = r.gaps[i].cmp_certified(&r.gaps[j]) {
        return Ok(o);
    }
    oracle.sign(&r.gap_residue(i).sub(&r.gap_residue(j)))
}

fn extreme_gap(
    r: &SpectrumReport,
    oracle: &mut ValueOracle,
    range: std::ops::Range<usize>,
    want: Ordering,
) -> Result<usize> {
    let mut best = range.start;
    for i in range.start + 1..range.end {
        if cmp_gaps(r, oracle, i, best)? == want {
            best = i;
        }
    }
    Ok(best)
}

/// Index of the first smallest gap of the whole report, decided exactly.
pub fn min_gap(r: &SpectrumReport) -> Result<usize> {
    if r.gaps.is_empty() {
        return Err(Error::EmptyTail("spectrum has fewer than two values".into()));
    }
    let mut oracle = r.oracle();
    extreme_gap(r, &mut oracle, 0..r.gaps.len(), Ordering::Less)
}

/// Gap statistics over the finalized prefix, with the tail window covering
/// the last `tail_fraction` of its gaps.
pub fn gap_stats(r: &SpectrumReport, tail_fraction: &BigRational) -> Result<GapStats> {
    if !(tail_fraction.is_positive() && tail_fraction < &BigRational::one()) {
        return Err(Error::InvalidInput("tail fraction must lie in (0, 1)".into()));
    }
    let (prefix_len, prefix_finalized) = match r.finalized_upto {
        Some(_) => (r.finalized_len(), true),
        None => (r.len(), false),
    };
    if prefix_len < 2 {
        return Err(Error::EmptyTail(format!("finalized prefix has {prefix_len} values")));
    }
    let ngaps = prefix_len - 1;
    let tail_len = (BigRational::from_integer(BigInt::from(ngaps)) * tail_fraction).ceil().to_integer();
    let tail_len: usize = tail_len.try_into().unwrap_or(ngaps).clamp(1, ngaps);
    let tail_start = ngaps - tail_len;
    let mut oracle = r.oracle();
    let mut records = vec![0usize];
    let mut best = 0usize;
    for i in 1..ngaps {
        if cmp_gaps(r, &mut oracle, i, best)? == Ordering::Less {
            best = i;
            records.push(i);
        }
    }
    let tail_min = extreme_gap(r, &mut oracle, tail_start..ngaps, Ordering::Less)?;
    let tail_max = extreme_gap(r, &mut oracle, tail_start..ngaps, Ordering::Greater)?;
    Ok(GapStats {
        min_gap: r.gaps[best].clone(),
        min_gap_index: best,
        tail_min_gap: r.gaps[tail_min].clone(),
        tail_min_index: tail_min,
        max_gap_tail: r.gaps[tail_max].clone(),
        max_gap_tail_index: tail_max,
        record_min_positions: records,
        prefix_len,
        tail_start,
        prefix_finalized,
    })
}

/// Smallest positive element of `Lambda_n(q)`.
#[derive(Clone, Debug)]
pub struct LambdaMin {
    pub n: usize,
    pub value: Interval,
    pub residue: ResidueVector,
    /// Digits in `{-1, 0, 1}`, ascending powers.
    pub witness: Vec<i64>,
    /// Number of nonzero digit vectors, up to sign, that vanish at `q`
    /// among the distinct half-sums.
    pub relations_found: usize,
    /// Up to [`RELATION_EXAMPLES`] vanishing digit vectors with a positive
    /// leading digit.
    pub relations: Vec<Vec<i64>>,
    pub side_sizes: (usize, usize),
}

pub const RELATION_EXAMPLES: usize = 8;

/// Smallest positive `|sum_{k<=n} a_k q^k|`, `a_k` in `{-1, 0, 1}`, by
/// meet-in-the-middle over the split at `ceil(n/2)`. Exact zeros are
/// excluded and reported as relations.
pub fn smallest_positive_lambda(f: &IntPolynomial, q: &AlgebraicNumber, n: usize) -> Result<LambdaMin> {
    smallest_positive_lambda_with(f, q, n, &SumOptions::default())
}

pub fn smallest_positive_lambda_with(
    f: &IntPolynomial,
    q: &AlgebraicNumber,
    n: usize,
    opts: &SumOptions,
) -> Result<LambdaMin> {
    if n < 1 {
        return Err(Error::InvalidInput("smallest positive lambda needs n >= 1".into()));
    }
    check_root(f, q)?;
    let modulus = f.squarefree_part();
    let basis = PowerBasis::new(&modulus, n);
    let fixed = FixedRows::new(q, n, 1)?;
    let split = n.div_ceil(2).max(1);
    let digits = [-1, 0, 1];
    let low = DigitSums::build(&basis, 0..split, &digits, Some(&fixed), opts)?;
    let high = DigitSums::build(&basis, split..n + 1, &digits, Some(&fixed), opts)?;
    let mut oracle = ValueOracle::new(q);
    let mut order: Vec<usize> = (0..low.len()).collect();
    sort_by_value(&low, &mut oracle, &mut order)?;
    let sorted: Vec<i128> = order.iter().map(|&i| low.value(i)).collect();
    let e2 = 2 * (low.value_error() + high.value_error());

    let mut best: Option<(usize, usize, i128)> = None;
    let mut zero_pairs = 0usize;
    let mut relations = Vec::new();
    let zero_low = (0..low.len()).find(|&i| low.coords(i).iter().all(|c| c.is_zero()));
    for j in 0..high.len() {
        let vh = high.value(j);
        let start = sorted.partition_point(|&vl| vl + vh < -e2);
        let mut pos = start;
        while pos < sorted.len() {
            let i = order[pos];
            let s = sorted[pos] + vh;
            pos += 1;
            if s <= e2 {
                if low.sum_is_zero(i, &high, j, 1) {
                    if Some(i) != zero_low || !high.coords(j).iter().all(|c| c.is_zero()) {
                        zero_pairs += 1;
                        let mut w = low.digit_vector(i);
                        w.extend(high.digit_vector(j));
                        if w.iter().rev().find(|&&a| a != 0) == Some(&1) && relations.len() < RELATION_EXAMPLES {
                            relations.push(w);
                        }
                    }
                    continue;
                }
                match oracle.sign(&low.combined_residue(i, &high, j, 1))? {
                    Ordering::Greater => {}
                    _ => continue,
                }
            }
            let better = match best {
                None => true,
                Some((bi, bj, bv)) => {
                    if s < bv - 2 * e2 {
                        true
                    } else if s > bv + 2 * e2 {
                        false
                    } else {
                        let d = low.combined_residue(i, &high, j, 1).sub(&low.combined_residue(bi, &high, bj, 1));
                        oracle.sign(&d)? == Ordering::Less
                    }
                }
            };
            if better {
                best = Some((i, j, s));
            }
            if s > e2 {
                break;
            }
        }
    }
    let (bi, bj, _) = best.ok_or_else(|| Error::InvariantViolation("no positive element found".into()))?;
    let residue = low.combined_residue(bi, &high, bj, 1);
    let value = oracle.enclose_to(&residue, 80)?;
    let mut witness = low.digit_vector(bi);
    witness.extend(high.digit_vector(bj));
    Ok(LambdaMin {
        n,
        value,
        residue,
        witness,
        relations_found: zero_pairs / 2,
        relations,
        side_sizes: (low.len(), high.len()),
    })
}

/// Checks `min_gap <= (q^(n+1)/(q-1)) (d_max - d_min) / (count - 1)`.
pub fn pigeonhole_check(r: &SpectrumReport) -> Result<bool> {
    if r.len() < 2 {
        return Ok(true);
    }
    let i = min_gap(r)?;
    let mut oracle = r.oracle();
    let mut bits = 64u32;
    loop {
        let gap = oracle.enclose_to(&r.gap_residue(i), bits)?;
        let mut q = oracle.q().clone();
        q.refine_to_bits(bits + 2 * r.n as u32)?;
        let qi = q.real_interval();
        let qm1 = qi.sub(&Interval::point(BigRational::one()));
        let span = BigRational::from_integer(BigInt::from(r.digitset.max() - r.digitset.min()));
        let count = BigRational::from_integer(BigInt::from(r.len() - 1));
        let bound = qi
            .pow(r.n as u32 + 1)
            .mul(&qm1.recip().ok_or_else(|| Error::InvalidInput("q must differ from 1".into()))?)
            .scale(&(span / count));
        if gap.hi <= bound.lo {
            return Ok(true);
        }
        if gap.lo > bound.hi {
            return Err(Error::InvariantViolation("pigeonhole bound violated".into()));
        }
        bits += 64;
        if bits > q.refine_budget() {
            return Err(Error::PrecisionExhausted("pigeonhole comparison undecided".into()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::DEFAULT_BUDGET;

    fn root(c: &[i64]) -> (IntPolynomial, AlgebraicNumber) {
        let f = IntPolynomial::from_i64(c);
        let q = AlgebraicNumber::real_roots(&f, DEFAULT_BUDGET).unwrap().pop().unwrap();
        (f, q)
    }

    #[test]
    fn golden_n2() {
        let (f, q) = root(&[-1, -1, 1]);
        let r = enumerate_spectrum(&f, &q, 2, &DigitSet::binary()).unwrap();
        let v: Vec<f64> = r.values.iter().map(|v| v.enclosure.mid_f64()).collect();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let want = [0.0, 1.0, phi, phi * phi, 1.0 + phi * phi, phi + phi * phi, 1.0 + phi + phi * phi];
        assert_eq!(v.len(), 7);
        for (a, b) in v.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        let i = min_gap(&r).unwrap();
        assert!((r.gaps[i].mid_f64() - (phi - 1.0)).abs() < 1e-12);
        assert!(pigeonhole_check(&r).unwrap());
    }

    #[test]
    fn lambda_golden() {
        let (f, q) = root(&[-1, -1, 1]);
        let l = smallest_positive_lambda(&f, &q, 1).unwrap();
        assert!((l.value.mid_f64() - 0.6180339887).abs() < 1e-9);
        assert_eq!(l.witness, vec![-1, 1]);
        let l = smallest_positive_lambda(&f, &q, 2).unwrap();
        assert!((l.value.mid_f64() - 0.6180339887).abs() < 1e-9);
        assert!(l.relations_found >= 1);
        assert!(l.relations.contains(&vec![-1, -1, 1]));
    }

    #[test]
    fn digit_set_parsing() {
        assert_eq!("-1,0,1".parse::<DigitSet>().unwrap(), DigitSet::signed());
        assert_eq!("{0,1}".parse::<DigitSet>().unwrap(), DigitSet::binary());
        assert_eq!("pm".parse::<DigitSet>().unwrap(), DigitSet::plus_minus());
        assert!("".parse::<DigitSet>().is_err());
    }

    #[test]
    fn reducible_modulus_merges_equal_values() {
        // phi is a root of (x^2 - x - 1)(x - 3); residues mod the product
        // separate values that coincide at phi
        let f = &IntPolynomial::from_i64(&[-1, -1, 1]) * &IntPolynomial::from_i64(&[-3, 1]);
        let q = AlgebraicNumber::real_roots(&f, DEFAULT_BUDGET).unwrap()[1].clone();
        let r = enumerate_spectrum(&f, &q, 4, &DigitSet::binary()).unwrap();
        assert_eq!(r.len(), 20);
    }
}
