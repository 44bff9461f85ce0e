//! Cardinalities `z_n(beta) = #Y_n(beta)`: exact counts of residues modulo
//! the defining polynomial, tolerance-clustered numeric counts, and the
//! identities and growth diagnostics built on them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::enumeration::{DigitSums, SumOptions};
use crate::error::{Error, Result};
use crate::polyalg::interval::{decimal, Interval};
use crate::polyalg::residue::PowerBasis;
use crate::polyalg::{AlgebraicNumber, IntPolynomial, RootBox};

const BINARY: [i64; 2] = [0, 1];

fn check_squarefree(f: &IntPolynomial) -> Result<()> {
    if f.degree() < 1 {
        return Err(Error::InvalidInput("counting needs a polynomial of degree >= 1".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::InvalidInput(format!("{f} is not squarefree")));
    }
    Ok(())
}

/// `z_k` for `k = 0..=n`, exactly, as residue counts modulo `f`.
pub fn count_series(f: &IntPolynomial, n: usize, opts: &SumOptions) -> Result<Vec<u64>> {
    check_squarefree(f)?;
    let basis = PowerBasis::new(f, n);
    let sums = DigitSums::build(&basis, 0..n + 1, &BINARY, None, opts)?;
    Ok(sums.level_sizes().iter().map(|&s| s as u64).collect())
}

/// Number of distinct residues `sum_{k<=n} a_k x^k mod f`, `a_k` in `{0,1}`.
pub fn count_distinct(f: &IntPolynomial, n: usize) -> Result<u64> {
    count_distinct_with(f, n, &SumOptions::default())
}

pub fn count_distinct_with(f: &IntPolynomial, n: usize, opts: &SumOptions) -> Result<u64> {
    Ok(*count_series(f, n, opts)?.last().expect("n + 1 levels"))
}

/// Exact count at an algebraic `beta`, via its defining polynomial.
pub fn count_distinct_algebraic(beta: &AlgebraicNumber, n: usize) -> Result<u64> {
    count_distinct(beta.defining(), n)
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb) as usize] = ra.min(rb);
        true
    }
}

/// Number of clusters of the `2^(n+1)` sums `sum a_k beta^k`, where sums
/// closer than `tol/4` are merged and sums farther than `4 tol` are
/// distinct. Any pair in between is reported as a tolerance ambiguity.
pub fn count_distinct_numeric(beta: Complex64, n: usize, tol: f64) -> Result<u64> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if beta.norm() < 1e-300 {
        return Err(Error::InvalidInput("beta must be nonzero".into()));
    }
    if n >= 26 {
        return Err(Error::WorkCapExceeded(format!("2^{} numeric sums", n + 1)));
    }
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    let mut pk = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        let len = pts.len();
        for i in 0..len {
            let v = pts[i] + pk;
            pts.push(v);
        }
        pk *= beta;
    }
    let cell = 4.0 * tol;
    let key = |z: &Complex64| ((z.re / cell).floor() as i64, (z.im / cell).floor() as i64);
    let mut grid: FxHashMap<(i64, i64), Vec<u32>> = FxHashMap::default();
    for (i, z) in pts.iter().enumerate() {
        grid.entry(key(z)).or_default().push(i as u32);
    }
    let mut uf = UnionFind::new(pts.len());
    let mut clusters = pts.len() as u64;
    for (i, z) in pts.iter().enumerate() {
        let (cx, cy) = key(z);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = grid.get(&(cx + dx, cy + dy)) else { continue };
                for &j in bucket {
                    if j as usize <= i {
                        continue;
                    }
                    let d = (pts[j as usize] - z).norm();
                    if d < tol / 4.0 {
                        if uf.union(i as u32, j) {
                            clusters -= 1;
                        }
                    } else if d <= 4.0 * tol {
                        return Err(Error::ToleranceAmbiguity { distance: d, tol });
                    }
                }
            }
        }
    }
    Ok(clusters)
}

/// `count_distinct(f, n) == count_distinct(reverse(f), n)`.
pub fn verify_inversion(f: &IntPolynomial, n: usize) -> Result<bool> {
    let r = f.reverse()?;
    Ok(count_distinct(f, n)? == count_distinct(&r, n)?)
}

/// What a count series is about.
#[derive(Clone, Debug)]
pub enum BetaDesc {
    Algebraic { poly: IntPolynomial, root: RootBox },
    Numeric(Complex64),
}

/// Counts `z_n` for `n = 0..=N`, with `z_n / q^n` enclosures when a
/// reference `q` is supplied.
#[derive(Clone, Debug)]
pub struct CountSeries {
    pub beta_desc: BetaDesc,
    pub counts: Vec<u64>,
    pub ratios: Vec<Interval>,
    /// Heuristic evidence of `z_n / q^n` growing without bound: the minimum
    /// ratio over the last quarter of indices exceeds twice the maximum over
    /// the first quarter. Not a certificate.
    pub divergence: bool,
}

impl CountSeries {
    /// `1 <= z_n <= 2^(n+1)` and `z_n <= z_(n+1) <= 2 z_n`.
    pub fn check_invariants(&self) -> Result<()> {
        for (n, &z) in self.counts.iter().enumerate() {
            if z < 1 || (n < 63 && z > 1u64 << (n + 1)) {
                return Err(Error::InvariantViolation(format!("z_{n} = {z} out of range")));
            }
        }
        for w in self.counts.windows(2) {
            if w[1] < w[0] || w[1] > 2 * w[0] {
                return Err(Error::InvariantViolation("count growth out of range".into()));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,z_n,ratio_decimal\n");
        for (n, z) in self.counts.iter().enumerate() {
            let r = self.ratios.get(n).map(|r| decimal(&r.mid(), 20)).unwrap_or_default();
            out.push_str(&format!("{n},{z},{r}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .counts
            .iter()
            .enumerate()
            .map(|(n, z)| {
                json!({
                    "n": n,
                    "z_n": z,
                    "ratio_decimal": self.ratios.get(n).map(|r| decimal(&r.mid(), 20)),
                })
            })
            .collect();
        json!({
            "series": rows,
            "divergence": self.divergence,
            "divergence_note": "heuristic: finite-n evidence, not a proof of unbounded growth",
        })
    }
}

fn divergence(ratios: &[f64]) -> bool {
    let len = ratios.len();
    if len < 4 {
        return false;
    }
    let quarter = len / 4;
    let first = ratios[..quarter].iter().cloned().fold(f64::MIN, f64::max);
    let last = ratios[len - quarter..].iter().cloned().fold(f64::MAX, f64::min);
    last > 2.0 * first
}

/// Exact counts and ratios `z_n / q^n` for `n <= big_n`.
pub fn growth_ratio(f: &IntPolynomial, q: &AlgebraicNumber, big_n: usize) -> Result<CountSeries> {
    growth_ratio_with(f, q, big_n, &SumOptions::default())
}

pub fn growth_ratio_with(
    f: &IntPolynomial,
    q: &AlgebraicNumber,
    big_n: usize,
    opts: &SumOptions,
) -> Result<CountSeries> {
    if !q.is_real() {
        return Err(Error::InvalidInput("growth ratios need a real q".into()));
    }
    let counts = count_series(f, big_n, opts)?;
    let mut qq = q.clone();
    let bits = 64 + 2 * big_n as u32;
    qq.refine_to_bits(bits)?;
    let x = qq.real_interval();
    let mut pk = Interval::point(BigRational::one());
    let mut ratios = Vec::with_capacity(counts.len());
    for &z in &counts {
        let inv = pk.recip().ok_or_else(|| Error::InvalidInput("q must be nonzero".into()))?;
        ratios.push(inv.scale(&BigRational::from_integer(BigInt::from(z))).round_out(bits));
        pk = pk.mul(&x).round_out(bits);
    }
    let mids: Vec<f64> = ratios.iter().map(|r| r.mid_f64()).collect();
    let series = CountSeries {
        beta_desc: BetaDesc::Algebraic { poly: f.clone(), root: q.root_box().clone() },
        counts,
        divergence: divergence(&mids),
        ratios,
    };
    series.check_invariants()?;
    Ok(series)
}

/// Checks `z_{mk}(f) = z_k(g) z_{k-1}(g)^(m-1)` for `f(x) = g(x^m)`, `m >= 2`.
pub fn power_count_identity(f: &IntPolynomial, k: usize) -> Result<bool> {
    let (m, g) = f.power_structure();
    if m < 2 {
        return Err(Error::NoPowerStructure);
    }
    if k < 1 {
        return Err(Error::InvalidInput("power count identity needs k >= 1".into()));
    }
    let lhs = count_distinct(f, m * k)?;
    let zk = count_distinct(&g, k)?;
    let zk1 = count_distinct(&g, k - 1)?;
    let rhs = (zk as u128) * (zk1 as u128).pow(m as u32 - 1);
    Ok(lhs as u128 == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_distinct(&p(&[-2, 1]), 5).unwrap(), 64);
        assert_eq!(count_distinct(&p(&[-1, -1, 1]), 2).unwrap(), 7);
        assert_eq!(count_distinct(&p(&[-1, -1, 0, 0, 1]), 4).unwrap(), 28);
    }

    #[test]
    fn numeric_counts() {
        assert_eq!(count_distinct_numeric(Complex64::new(2.0, 0.0), 5, 1e-9).unwrap(), 64);
        assert_eq!(count_distinct_numeric(Complex64::new(0.5, 0.0), 6, 1e-12).unwrap(), 128);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_eq!(count_distinct_numeric(Complex64::new(phi, 0.0), 2, 1e-9).unwrap(), 7);
    }

    #[test]
    fn numeric_ambiguity_detected() {
        // sums 0 and 1e-9 * k are spaced at the tolerance
        let e = count_distinct_numeric(Complex64::new(1.0 + 1e-9, 0.0), 3, 1e-9);
        assert!(matches!(e, Err(Error::ToleranceAmbiguity { .. })));
    }

    #[test]
    fn power_identity_needs_structure() {
        assert_eq!(power_count_identity(&p(&[-1, -1, 0, 0, 1]), 2), Err(Error::NoPowerStructure));
        assert!(power_count_identity(&p(&[1, 0, 1, 0, 1]), 3).unwrap());
    }

    #[test]
    fn divergence_rule() {
        assert!(!divergence(&[2.0, 2.5, 3.0, 2.2, 2.9, 2.4, 2.0, 3.0]));
        assert!(divergence(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]));
    }
}
