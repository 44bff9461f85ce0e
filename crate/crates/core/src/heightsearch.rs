//! Height-one multiples: branch-and-bound over cofactors, the three-root
//! product filter, and an empirical sampler for the product bound.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyalg::interval::{decimal, rat, Interval};
use crate::polyalg::{IntPolynomial, RootSet, DEFAULT_BUDGET};

/// Search limits for `find_height_one_multiple`.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Bound on `|g_i|` for every cofactor coefficient.
    pub cofactor_cap: i64,
    pub node_budget: u64,
    /// Run the three-root filter first and stop with `Filtered` when it
    /// certifies impossibility.
    pub prefilter: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cofactor_cap: 64, node_budget: 100_000_000, prefilter: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeightOneStatus {
    Found,
    NoneUpTo(usize),
    Filtered,
}

/// Three root enclosures of a polynomial whose modulus product is
/// certified below `3 sqrt(3) / 16`.
#[derive(Clone, Debug)]
pub struct FilterCertificate {
    pub poly: IntPolynomial,
    pub roots: [Complex64; 3],
    /// Enclosure of `|z1 z2 z3|`.
    pub product: Interval,
    /// Enclosure of `|z1 z2 z3|^2`, compared exactly with `27/256`.
    pub product_sq: Interval,
}

impl FilterCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "poly": self.poly.to_string(),
            "roots": self.roots.iter().map(|z| json!({"re": z.re, "im": z.im})).collect::<Vec<_>>(),
            "product_lo": decimal(&self.product.lo, 12),
            "product_hi": decimal(&self.product.hi, 12),
            "bound": CLAIM_BOUND_F64,
            "bound_squared": "27/256",
        })
    }
}

#[derive(Clone, Debug)]
pub struct HeightOneResult {
    pub status: HeightOneStatus,
    pub witness: Option<IntPolynomial>,
    pub cofactor: Option<IntPolynomial>,
    pub filter_certificate: Option<FilterCertificate>,
    pub nodes: u64,
    pub cofactor_cap: i64,
    /// The search space was ruled out by exact arithmetic (unit leading or
    /// constant coefficient required), not by exhaustion.
    pub proven: bool,
}

impl HeightOneResult {
    pub fn to_json(&self) -> Value {
        let status = match &self.status {
            HeightOneStatus::Found => json!("Found"),
            HeightOneStatus::NoneUpTo(d) => json!({"NoneUpTo": d}),
            HeightOneStatus::Filtered => json!("Filtered"),
        };
        json!({
            "status": status,
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "cofactor": self.cofactor.as_ref().map(|g| g.to_string()),
            "filter_certificate": self.filter_certificate.as_ref().map(|c| c.to_json()),
            "nodes": self.nodes,
            "cofactor_cap": self.cofactor_cap,
            "proven": self.proven,
        })
    }
}

/// `3 sqrt(3) / 16`, the lower bound on `|z1 z2 z3|` for three distinct
/// roots of a height-one polynomial.
pub const CLAIM_BOUND_F64: f64 = 0.324_759_526_419_164_5;

fn claim_bound_sq() -> BigRational {
    rat(27, 256)
}

struct Search<'a> {
    f: &'a [i64],
    f0: i64,
    cap: i64,
    budget: u64,
    nodes: u64,
    g: Vec<i64>,
    best: Option<Vec<i64>>,
    max_len: usize,
}

impl Search<'_> {
    /// Coefficients of `f * g` above the prefix already constrained.
    fn completes(&self) -> bool {
        let k = self.g.len();
        let d = self.f.len() - 1;
        for j in k..k + d {
            let lo = j.saturating_sub(d);
            let s: i128 = (lo..k).map(|i| self.f[j - i] as i128 * self.g[i] as i128).sum();
            if !(-1..=1).contains(&s) {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::WorkCapExceeded(format!("height-one search exceeded {} nodes", self.budget)));
        }
        let k = self.g.len();
        if k > self.max_len {
            return Ok(());
        }
        if k > 0 && *self.g.last().unwrap() != 0 && self.completes() {
            self.best = Some(self.g.clone());
            self.max_len = k - 1;
            return Ok(());
        }
        if k >= self.max_len {
            return Ok(());
        }
        let d = self.f.len() - 1;
        let lo = k.saturating_sub(d);
        let s: i128 = (lo..k).map(|i| self.f[k - i] as i128 * self.g[i] as i128).sum();
        // g_0 = 1 canonically, so p_0 = f_0
        let f0 = self.f0 as i128;
        let choices: &[i128] = if k == 0 { &[f0] } else { &[-1, 0, 1] };
        for &p in choices {
            // f0 = +-1, so g_k = (p - s) / f0 exactly
            let gk = (p - s) * f0;
            if gk.abs() > self.cap as i128 {
                continue;
            }
            self.g.push(gk as i64);
            let r = self.dfs();
            self.g.pop();
            r?;
            if k >= self.max_len {
                break;
            }
        }
        Ok(())
    }
}

/// Searches for `p = f g` with all coefficients in `{-1, 0, 1}` and
/// `deg p <= dmax`, returning a witness of minimal degree.
pub fn find_height_one_multiple(f: &IntPolynomial, dmax: usize) -> Result<HeightOneResult> {
    find_height_one_multiple_with(f, dmax, &SearchOptions::default())
}

pub fn find_height_one_multiple_with(
    f: &IntPolynomial,
    dmax: usize,
    opts: &SearchOptions,
) -> Result<HeightOneResult> {
    if f.is_zero() {
        return Err(Error::InvalidInput("polynomial must be nonzero".into()));
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if dmax < f.degree() {
        return Err(Error::InvalidInput(format!("dmax {dmax} is below deg f = {}", f.degree())));
    }
    let f = f.primitive();
    let mut res = HeightOneResult {
        status: HeightOneStatus::NoneUpTo(dmax),
        witness: None,
        cofactor: None,
        filter_certificate: None,
        nodes: 0,
        cofactor_cap: opts.cofactor_cap,
        proven: false,
    };
    if f.degree() == 0 {
        // nonzero constant with content removed is +-1
        res.status = HeightOneStatus::Found;
        res.witness = Some(IntPolynomial::one());
        res.cofactor = Some(IntPolynomial::one());
        return Ok(res);
    }
    // p_0 = f_0 g_0 and p_top = lc(f) lc(g) must be units
    if !f.leading().abs().is_one() || !f.constant_term().abs().is_one() {
        res.proven = true;
        return Ok(res);
    }
    if opts.prefilter {
        if let Some(c) = filter_either(&f)? {
            res.status = HeightOneStatus::Filtered;
            res.filter_certificate = Some(c);
            res.proven = true;
            return Ok(res);
        }
    }
    let coeffs: Vec<i64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidInput("coefficients exceed 64 bits".into()))?;
    let mut s = Search {
        f0: coeffs[0],
        f: &coeffs,
        cap: opts.cofactor_cap,
        budget: opts.node_budget,
        nodes: 0,
        g: Vec::new(),
        best: None,
        max_len: dmax - f.degree() + 1,
    };
    s.dfs()?;
    res.nodes = s.nodes;
    match s.best {
        Some(g) => {
            let g = IntPolynomial::from_i64(&g);
            let p = &f * &g;
            if !p.is_height_one() || p.div_exact_int(&f).as_ref() != Some(&g) {
                return Err(Error::InvariantViolation("height-one witness failed verification".into()));
            }
            res.status = HeightOneStatus::Found;
            res.witness = Some(p);
            res.cofactor = Some(g);
        }
        None => res.filter_certificate = filter_either(&f)?,
    }
    Ok(res)
}

/// A filter certificate for `f` or for its reverse; either rules out
/// every height-one multiple.
fn filter_either(f: &IntPolynomial) -> Result<Option<FilterCertificate>> {
    if f.degree() < 3 {
        return Ok(None);
    }
    if let Some(c) = three_root_filter(f)? {
        return Ok(Some(c));
    }
    three_root_filter(&f.reverse()?)
}

/// Certified enclosures of `|z|^2` for the distinct nonzero roots of `f`,
/// with their centers.
fn nonzero_root_moduli(f: &IntPolynomial, bits: u32) -> Result<Option<(RootSet, Vec<Interval>)>> {
    let (_, g) = f.strip_x_power();
    if g.degree() < 1 {
        return Ok(None);
    }
    let set = RootSet::new(&g, DEFAULT_BUDGET)?;
    if set.len() < 3 {
        return Ok(None);
    }
    let m = (0..set.len()).map(|i| set.disk(i).modulus_sq(bits)).collect();
    Ok(Some((set, m)))
}

fn smallest_three(m: &[Interval], key: impl Fn(&Interval) -> BigRational) -> [usize; 3] {
    let mut idx: Vec<usize> = (0..m.len()).collect();
    idx.sort_by(|&a, &b| key(&m[a]).cmp(&key(&m[b])));
    [idx[0], idx[1], idx[2]]
}

fn triple_sq(m: &[Interval], t: [usize; 3]) -> Interval {
    m[t[0]].mul(&m[t[1]]).mul(&m[t[2]])
}

/// Looks for three distinct nonzero roots of `f` whose modulus product is
/// certified strictly below `3 sqrt(3) / 16`. Zero roots are excluded.
pub fn three_root_filter(f: &IntPolynomial) -> Result<Option<FilterCertificate>> {
    let Some((mut set, _)) = nonzero_root_moduli(f, 64)? else { return Ok(None) };
    let bound = claim_bound_sq();
    loop {
        let bits = set.prec() + 16;
        let m: Vec<Interval> = (0..set.len()).map(|i| set.disk(i).modulus_sq(bits)).collect();
        let best = smallest_three(&m, |iv| iv.mid());
        let sq = triple_sq(&m, best);
        if sq.hi < bound {
            let roots = best.map(|i| set.root(i).center_f64());
            let product = sq.sqrt(bits);
            return Ok(Some(FilterCertificate { poly: set.poly().clone(), roots, product, product_sq: sq }));
        }
        let floor = triple_sq(&m, smallest_three(&m, |iv| iv.lo.clone()));
        if floor.lo >= bound || set.prec() >= 512 {
            return Ok(None);
        }
        set.refine()?;
    }
}

/// Enclosure of the smallest `|z1 z2 z3|` over distinct nonzero roots, or
/// `None` with fewer than three.
pub fn min_triple_product(f: &IntPolynomial) -> Result<Option<Interval>> {
    let Some((set, m)) = nonzero_root_moduli(f, 96)? else { return Ok(None) };
    let lo = triple_sq(&m, smallest_three(&m, |iv| iv.lo.clone())).lo;
    let hi = triple_sq(&m, smallest_three(&m, |iv| iv.mid())).hi;
    let bits = set.prec() + 16;
    Ok(Some(Interval::new(lo, hi).sqrt(bits)))
}

#[derive(Clone, Debug)]
pub struct SamplerReport {
    /// Enclosure of the smallest observed triple product.
    pub minimum: Interval,
    pub witness: IntPolynomial,
    pub samples: usize,
    /// Draws with fewer than three distinct nonzero roots.
    pub skipped: usize,
}

impl SamplerReport {
    pub fn minimum_f64(&self) -> f64 {
        self.minimum.mid_f64()
    }

    /// The whole enclosure of the minimum lies at or above the bound.
    pub fn respects_bound(&self) -> bool {
        self.minimum.lo.clone() * &self.minimum.lo >= claim_bound_sq()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "minimum_lo": decimal(&self.minimum.lo, 12),
            "minimum_hi": decimal(&self.minimum.hi, 12),
            "witness": self.witness.to_string(),
            "samples": self.samples,
            "skipped": self.skipped,
            "bound": CLAIM_BOUND_F64,
            "respects_bound": self.respects_bound(),
        })
    }
}

fn fold_min(
    polys: impl Iterator<Item = IntPolynomial>,
) -> Result<Option<SamplerReport>> {
    let mut best: Option<SamplerReport> = None;
    let (mut samples, mut skipped) = (0, 0);
    for f in polys {
        samples += 1;
        match min_triple_product(&f)? {
            None => skipped += 1,
            Some(iv) => {
                let better = best.as_ref().is_none_or(|b| iv.mid().cmp(&b.minimum.mid()) == Ordering::Less);
                if better {
                    best = Some(SamplerReport { minimum: iv, witness: f, samples: 0, skipped: 0 });
                }
            }
        }
    }
    Ok(best.map(|b| SamplerReport { samples, skipped, ..b }))
}

fn random_height_one(rng: &mut ChaCha8Rng, degree_max: usize) -> IntPolynomial {
    let d = rng.gen_range(3..=degree_max);
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-1..=1)).collect();
    c.push(if rng.gen_bool(0.5) { 1 } else { -1 });
    IntPolynomial::from_i64(&c)
}

/// Minimum triple product over `samples` seeded random height-one
/// polynomials of degree `3..=degree_max`.
pub fn claim_sampler(degree_max: usize, samples: usize, seed: u64) -> Result<SamplerReport> {
    if samples < 1 || degree_max < 3 {
        return Err(Error::InvalidInput("sampler needs samples >= 1 and degree_max >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<IntPolynomial> = (0..samples).map(|_| random_height_one(&mut rng, degree_max)).collect();
    fold_min(polys.into_iter())?
        .ok_or_else(|| Error::EmptyTail("no sample had three distinct nonzero roots".into()))
}

/// Minimum triple product over every height-one polynomial of exact
/// degree `degree` (`3^degree * 2` coefficient patterns).
pub fn claim_exhaustive(degree: usize) -> Result<SamplerReport> {
    if !(3..=12).contains(&degree) {
        return Err(Error::InvalidInput("exhaustive sweep supports degree 3..=12".into()));
    }
    let total = 3usize.pow(degree as u32) * 2;
    let polys = (0..total).map(move |mut code| {
        let lead = if code % 2 == 0 { 1 } else { -1 };
        code /= 2;
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push((code % 3) as i64 - 1);
            code /= 3;
        }
        c.push(lead);
        IntPolynomial::from_i64(&c)
    });
    fold_min(polys)?.ok_or_else(|| Error::EmptyTail("no polynomial had three distinct nonzero roots".into()))
}
