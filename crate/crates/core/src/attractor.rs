//! The attractor `A = { sum a_k lambda^k : a_k in {0,1} }` for `|lambda| < 1`:
//! connectivity at finite depth, the interior criterion, counting lower
//! bounds and raster output.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::heightsearch::{find_height_one_multiple_with, HeightOneStatus, SearchOptions};
use crate::polyalg::algebraic::{compare_modulus_sq_rational, ModulusComparison};
use crate::polyalg::interval::{decimal, rat, to_f64, CRational, Disk, Interval};
use crate::polyalg::{AlgebraicNumber, IntPolynomial, DEFAULT_BUDGET};

pub const DEFAULT_CONNECTIVITY_DEPTH: usize = 40;
pub const DEFAULT_RASTER_DEPTH: usize = 22;

/// `lambda = re + i im` as an exact algebraic number.
pub fn lambda_from_rational(re: &BigRational, im: &BigRational) -> Result<AlgebraicNumber> {
    if im.is_zero() {
        return Ok(AlgebraicNumber::rational(re));
    }
    // (x - re)^2 + im^2, cleared of denominators
    let c = [re * re + im * im, -(re + re), BigRational::one()];
    let den = c.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let d = BigRational::from_integer(den);
    let coeffs = c.iter().map(|x| (x * &d).to_integer()).collect();
    let f = IntPolynomial::new(coeffs);
    for i in 0..2 {
        let a = AlgebraicNumber::root_of(&f, i, DEFAULT_BUDGET)?;
        if a.root_box().center.im.is_positive() == im.is_positive() {
            return Ok(a);
        }
    }
    Err(Error::InvariantViolation("quadratic root selection failed".into()))
}

/// Exact algebraic number equal to the binary value of `z`.
pub fn lambda_from_f64(z: Complex64) -> Result<AlgebraicNumber> {
    let conv = |x: f64| {
        BigRational::from_float(x).ok_or_else(|| Error::InvalidInput("lambda must be finite".into()))
    };
    lambda_from_rational(&conv(z.re)?, &conv(z.im)?)
}

fn modulus_vs(lambda: &AlgebraicNumber, r: &BigRational) -> Result<ModulusComparison> {
    let mut l = lambda.clone();
    compare_modulus_sq_rational(&mut l, r)
}

fn require_inside_unit_disc(lambda: &AlgebraicNumber) -> Result<()> {
    if modulus_vs(lambda, &BigRational::one())?.ordering != Ordering::Less {
        return Err(Error::InvalidInput("lambda must satisfy |lambda| < 1".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConnectWitness {
    /// Real `lambda` with `|lambda| >= 1/2`: the attractor is an interval.
    RealInterval,
    /// Polynomial with coefficients in `{-1,0,1}`, constant term 1,
    /// vanishing at `lambda`.
    Relation(IntPolynomial),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Connectivity {
    Connected { witness: ConnectWitness },
    /// `lambda A` and `lambda A + 1` are at distance at least `margin`.
    Disconnected { depth: usize, margin: f64 },
    Unknown { depth: usize, reason: String },
}

impl Connectivity {
    pub fn label(&self) -> &'static str {
        match self {
            Connectivity::Connected { .. } => "Connected",
            Connectivity::Disconnected { .. } => "Disconnected",
            Connectivity::Unknown { .. } => "Unknown",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Connectivity::Connected { witness: ConnectWitness::RealInterval } => {
                json!({"verdict": "Connected", "witness": "real lambda with |lambda| >= 1/2"})
            }
            Connectivity::Connected { witness: ConnectWitness::Relation(p) } => {
                json!({"verdict": "Connected", "witness": p.to_string()})
            }
            Connectivity::Disconnected { depth, margin } => {
                json!({"verdict": "Disconnected", "depth": depth, "margin": margin})
            }
            Connectivity::Unknown { depth, reason } => {
                json!({"verdict": "Unknown", "depth": depth, "reason": reason})
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConnectivityOptions {
    pub depth: usize,
    pub node_budget: u64,
    /// Largest witness degree tried by the height-one search.
    pub witness_dmax: usize,
    pub witness_node_budget: u64,
}

impl Default for ConnectivityOptions {
    fn default() -> Self {
        ConnectivityOptions {
            depth: DEFAULT_CONNECTIVITY_DEPTH,
            node_budget: 20_000_000,
            witness_dmax: 24,
            witness_node_budget: 5_000_000,
        }
    }
}

const EPS: f64 = f64::EPSILON;

/// Upper bound in `f64` for a nonnegative rational.
fn f64_up(x: &BigRational) -> f64 {
    to_f64(x) * (1.0 + 4.0 * EPS) + f64::MIN_POSITIVE
}

/// Sign-pattern search over `1 + sum_{k>=1} b_k lambda^k`, `b_k` in
/// `{-1,0,1}`, in floating point with an explicit rounding-error budget.
struct PruneSearch {
    powers: Vec<Complex64>,
    power_err: Vec<f64>,
    tail: Vec<f64>,
    nodes: u64,
    budget: u64,
    margin: f64,
    survivor: bool,
}

impl PruneSearch {
    fn visit(&mut self, k: usize, s: Complex64, err: f64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::WorkCapExceeded(format!("connectivity search exceeded {} nodes", self.budget)));
        }
        let lower = s.norm() * (1.0 - 4.0 * EPS) - err;
        if lower > self.tail[k] {
            self.margin = self.margin.min(lower - self.tail[k]);
            return Ok(());
        }
        if k + 1 == self.powers.len() {
            self.survivor = true;
            return Ok(());
        }
        for b in [-1.0, 0.0, 1.0] {
            let t = s + self.powers[k + 1] * b;
            let e = err + b.abs() * self.power_err[k + 1] + t.norm() * 2.0 * EPS;
            self.visit(k + 1, t, e)?;
            if self.survivor {
                break;
            }
        }
        Ok(())
    }
}

fn prune_search(lambda: &AlgebraicNumber, opts: &ConnectivityOptions) -> Result<Connectivity> {
    let depth = opts.depth;
    let mut l = lambda.clone();
    l.refine_to_bits(90)?;
    let bits = 120;
    let disk = l.disk();
    let mu_hi = f64_up(&disk.modulus(bits).hi);
    if mu_hi >= 1.0 {
        return Err(Error::PrecisionExhausted("|lambda| too close to 1".into()));
    }
    let mut powers = Vec::with_capacity(depth + 1);
    let mut power_err = Vec::with_capacity(depth + 1);
    let mut p = Disk::point(CRational::new(BigRational::one(), BigRational::zero()));
    for _ in 0..=depth {
        let c = p.center_f64();
        powers.push(c);
        power_err.push(f64_up(&p.radius) + c.norm() * 4.0 * EPS);
        p = p.mul(&disk, bits).round(bits);
    }
    let tail: Vec<f64> = (0..=depth)
        .map(|k| mu_hi.powi(k as i32 + 1) / (1.0 - mu_hi) * (1.0 + 1e-12))
        .collect();
    let mut s = PruneSearch {
        powers,
        power_err,
        tail,
        nodes: 0,
        budget: opts.node_budget,
        margin: f64::INFINITY,
        survivor: false,
    };
    match s.visit(0, Complex64::new(1.0, 0.0), 0.0) {
        Ok(()) => {}
        Err(Error::WorkCapExceeded(msg)) => return Ok(Connectivity::Unknown { depth, reason: msg }),
        Err(e) => return Err(e),
    }
    if s.survivor {
        Ok(Connectivity::Unknown { depth, reason: format!("a sign pattern survives to depth {depth}") })
    } else {
        Ok(Connectivity::Disconnected { depth, margin: s.margin })
    }
}

/// Height-one polynomial with constant term 1 vanishing at `lambda`.
fn relation_witness(lambda: &AlgebraicNumber, opts: &ConnectivityOptions) -> Result<Option<IntPolynomial>> {
    let f = lambda.defining();
    if f.constant_term().is_zero() {
        return Ok(None);
    }
    let sopts = SearchOptions { node_budget: opts.witness_node_budget, ..SearchOptions::default() };
    let dmax = opts.witness_dmax.max(f.degree());
    match find_height_one_multiple_with(f, dmax, &sopts) {
        Ok(r) if r.status == HeightOneStatus::Found => {
            let w = r.witness.expect("found witness");
            Ok(Some(if w.constant_term().is_negative() { -&w } else { w }))
        }
        Ok(_) | Err(Error::WorkCapExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Decides whether `lambda A` meets `lambda A + 1`.
pub fn connectivity(lambda: &AlgebraicNumber, depth: usize) -> Result<Connectivity> {
    connectivity_with(lambda, &ConnectivityOptions { depth, ..ConnectivityOptions::default() })
}

pub fn connectivity_with(lambda: &AlgebraicNumber, opts: &ConnectivityOptions) -> Result<Connectivity> {
    require_inside_unit_disc(lambda)?;
    if lambda.is_real() {
        let c = modulus_vs(lambda, &rat(1, 4))?;
        if c.ordering != Ordering::Less {
            return Ok(Connectivity::Connected { witness: ConnectWitness::RealInterval });
        }
        // gap (1 - 2|lambda|) / (1 - |lambda|), decreasing in |lambda|
        let h = c.alpha_sq.sqrt(96).hi;
        let one = BigRational::one();
        let gap = (&one - &h - &h) / (&one - &h);
        return Ok(Connectivity::Disconnected { depth: 0, margin: to_f64(&gap) * (1.0 - 4.0 * EPS) });
    }
    let pruned = prune_search(lambda, opts)?;
    if let Connectivity::Disconnected { .. } = pruned {
        return Ok(pruned);
    }
    if let Some(w) = relation_witness(lambda, opts)? {
        return Ok(Connectivity::Connected { witness: ConnectWitness::Relation(w) });
    }
    Ok(pruned)
}

/// Certified evaluation of `2^(-1/2) <= |lambda| < 1` and
/// `|Re lambda| <= |lambda|^2 - 1/2`.
#[derive(Clone, Debug)]
pub struct InteriorCertificate {
    pub holds: bool,
    pub re: Interval,
    pub modulus_sq: Interval,
    /// Enclosure of `|lambda|^2 - 1/2`.
    pub slack: Interval,
    /// Inequalities decided as exact equalities.
    pub exact_ties: Vec<&'static str>,
}

impl InteriorCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "abs_re": [decimal(&self.re.lo.abs().min(self.re.hi.abs()), 8), decimal(&self.re.lo.abs().max(self.re.hi.abs()), 8)],
            "modulus_sq_minus_half": [decimal(&self.slack.lo, 8), decimal(&self.slack.hi, 8)],
            "exact_ties": self.exact_ties,
        })
    }
}

/// The interior criterion with its enclosures. The condition on the real
/// part is decided as `|lambda -+ 1/2|^2 >= 3/4`, so boundary ties are
/// settled exactly.
pub fn interior_certificate(lambda: &AlgebraicNumber) -> Result<InteriorCertificate> {
    let mut ties = Vec::new();
    let mut ok = true;
    let lower = modulus_vs(lambda, &rat(1, 2))?;
    ok &= lower.ordering != Ordering::Less;
    if lower.exact_tie {
        ties.push("|lambda|^2 = 1/2");
    }
    ok &= modulus_vs(lambda, &BigRational::one())?.ordering == Ordering::Less;
    for (c, label) in [(rat(1, 2), "Re lambda = |lambda|^2 - 1/2"), (rat(-1, 2), "-Re lambda = |lambda|^2 - 1/2")] {
        let cmp = modulus_vs(&lambda.shift(&c), &rat(3, 4))?;
        ok &= cmp.ordering != Ordering::Less;
        if cmp.exact_tie {
            ties.push(label);
        }
    }
    let mut l = lambda.clone();
    l.refine_to_bits(64)?;
    let d = l.disk();
    let modulus_sq = d.modulus_sq(96);
    let slack = modulus_sq.sub(&Interval::point(rat(1, 2)));
    Ok(InteriorCertificate { holds: ok, re: d.re_interval(), modulus_sq, slack, exact_ties: ties })
}

pub fn interior_criterion(lambda: &AlgebraicNumber) -> Result<bool> {
    Ok(interior_certificate(lambda)?.holds)
}

/// Lower bound on `z_n(lambda)`, with the clause that produced it.
#[derive(Clone, Debug)]
pub struct CountLowerBound {
    /// 1 for `|lambda|^-(n+1)`, 2 for `|lambda|^-2(n+1)`.
    pub clause: u8,
    pub value: Interval,
}

impl CountLowerBound {
    /// `count >= bound`, certified against the upper end of the enclosure.
    pub fn certified_below(&self, count: u64) -> bool {
        BigRational::from_integer(BigInt::from(count)) >= self.value.hi
    }
}

/// The strongest applicable lower bound on `z_n(lambda)`.
pub fn zn_lower_bound(lambda: &AlgebraicNumber, n: usize) -> Result<CountLowerBound> {
    let mut l = lambda.clone();
    l.refine_to_bits(96)?;
    let bits = 128;
    let inv = l
        .disk()
        .modulus_sq(bits)
        .recip()
        .ok_or_else(|| Error::NotApplicable("lambda = 0".into()))?
        .round_out(bits);
    let e = n as u32 + 1;
    if interior_criterion(lambda)? {
        return Ok(CountLowerBound { clause: 2, value: inv.pow(e).round_out(bits) });
    }
    let above_half = modulus_vs(lambda, &rat(1, 4))?.ordering == Ordering::Greater;
    let below_one = modulus_vs(lambda, &BigRational::one())?.ordering == Ordering::Less;
    if above_half && below_one {
        return Ok(CountLowerBound { clause: 1, value: inv.sqrt(bits).pow(e).round_out(bits) });
    }
    Err(Error::NotApplicable("need 1/2 < |lambda| < 1 or the interior criterion".into()))
}

/// Everything known about one attractor.
#[derive(Clone, Debug)]
pub struct AttractorAnalysis {
    pub lambda: Complex64,
    pub re: Interval,
    pub im: Interval,
    pub connectivity: Connectivity,
    pub interior: InteriorCertificate,
    pub lower_bound_clause: Option<u8>,
}

impl AttractorAnalysis {
    pub fn to_json(&self) -> Value {
        json!({
            "lambda": {
                "re": [decimal(&self.re.lo, 20), decimal(&self.re.hi, 20)],
                "im": [decimal(&self.im.lo, 20), decimal(&self.im.hi, 20)],
            },
            "connectivity": self.connectivity.to_json(),
            "interior_flag": self.interior.holds,
            "interior": self.interior.to_json(),
            "zn_lower_bound_exponent": self.lower_bound_clause,
        })
    }
}

pub fn analyze(lambda: &AlgebraicNumber, opts: &ConnectivityOptions) -> Result<AttractorAnalysis> {
    let connectivity = connectivity_with(lambda, opts)?;
    let interior = interior_certificate(lambda)?;
    let lower_bound_clause = match zn_lower_bound(lambda, 0) {
        Ok(b) => Some(b.clause),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    let mut l = lambda.clone();
    l.refine_to_bits(64)?;
    let d = l.disk();
    Ok(AttractorAnalysis {
        lambda: l.approx(),
        re: d.re_interval(),
        im: d.im_interval(),
        connectivity,
        interior,
        lower_bound_clause,
    })
}

/// Digits of the rendered sums: `{0,1}` gives `A`, `{-1,1}` gives the
/// centred copy `A~` with `A = (A~ + 1/(1 - lambda)) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RasterDigits {
    Binary,
    Signed,
}

const RASTER_DEPTH_CAP: usize = 26;
const RASTER_PIXEL_CAP: usize = 8192;

fn check_raster_lambda(lambda: Complex64) -> Result<()> {
    if !(lambda.norm() < 1.0) {
        return Err(Error::InvalidInput("raster needs |lambda| < 1".into()));
    }
    Ok(())
}

/// The `2^(depth+1)` sums `sum_{k<=depth} a_k lambda^k`, in binary digit
/// order (bit `k` of the index selects the digit at position `k`).
pub fn point_cloud(lambda: Complex64, depth: usize, digits: RasterDigits) -> Result<Vec<Complex64>> {
    check_raster_lambda(lambda)?;
    if depth > RASTER_DEPTH_CAP {
        return Err(Error::WorkCapExceeded(format!("raster depth {depth} > {RASTER_DEPTH_CAP}")));
    }
    let (lo, hi) = match digits {
        RasterDigits::Binary => (0.0, 1.0),
        RasterDigits::Signed => (-1.0, 1.0),
    };
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    let mut pk = Complex64::new(1.0, 0.0);
    for _ in 0..=depth {
        let len = pts.len();
        pts.extend_from_within(..);
        for i in 0..len {
            pts[i] += pk * lo;
            pts[len + i] += pk * hi;
        }
        pk *= lambda;
    }
    Ok(pts)
}

/// An 8-bit grayscale image of a point cloud.
#[derive(Clone, Debug)]
pub struct Raster {
    pub size: usize,
    /// Frame centre and half-width in the complex plane.
    pub center: Complex64,
    pub half_width: f64,
    /// Row-major, row 0 at the top; 0 marks a sum, 255 is background.
    pub data: Vec<u8>,
}

impl Raster {
    pub fn marked(&self) -> usize {
        self.data.iter().filter(|&&v| v == 0).count()
    }

    /// Pixel holding `z`, if inside the frame.
    pub fn pixel_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let n = self.size as f64;
        let x = ((z.re - (self.center.re - self.half_width)) / (2.0 * self.half_width) * n).floor();
        let y = (((self.center.im + self.half_width) - z.im) / (2.0 * self.half_width) * n).floor();
        let clamp = |v: f64| if v == n { Some(self.size - 1) } else if (0.0..n).contains(&v) { Some(v as usize) } else { None };
        Some((clamp(x)?, clamp(y)?))
    }

    pub fn is_marked(&self, col: usize, row: usize) -> bool {
        self.data[row * self.size + col] == 0
    }

    /// Binary 8-bit grayscale image (P5).
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.size, self.size).into_bytes();
        out.extend_from_slice(&self.data);
        out
    }
}

/// Renders the sums of depth `depth` over a square frame of half-width
/// `1/(1-|lambda|)` centred on their bounding box.
pub fn rasterize(lambda: Complex64, depth: usize, pixels: usize, digits: RasterDigits) -> Result<Raster> {
    if pixels == 0 || pixels > RASTER_PIXEL_CAP {
        return Err(Error::WorkCapExceeded(format!("pixels must be in 1..={RASTER_PIXEL_CAP}")));
    }
    let pts = point_cloud(lambda, depth, digits)?;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in &pts {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let center = Complex64::new((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let half_width = 1.0 / (1.0 - lambda.norm());
    render(&pts, center, half_width, pixels)
}

/// Renders a point cloud over a given frame.
pub fn render(pts: &[Complex64], center: Complex64, half_width: f64, pixels: usize) -> Result<Raster> {
    let mut r = Raster { size: pixels, center, half_width, data: vec![255; pixels * pixels] };
    for z in pts {
        if let Some((c, row)) = r.pixel_of(*z) {
            r.data[row * pixels + c] = 0;
        }
    }
    Ok(r)
}

/// `T(z) = (z + 1/(1 - lambda)) / 2`, carrying `A~` onto `A`.
pub fn centred_to_binary(lambda: Complex64, z: Complex64) -> Complex64 {
    (z + (Complex64::new(1.0, 0.0) - lambda).inv()) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(n: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::rational(&rat(n, d))
    }

    #[test]
    fn real_fast_path() {
        match connectivity(&real(2, 5), 40).unwrap() {
            Connectivity::Disconnected { margin, .. } => assert!((margin - 1.0 / 3.0).abs() < 1e-12),
            c => panic!("{c:?}"),
        }
        assert_eq!(
            connectivity(&real(7, 10), 40).unwrap(),
            Connectivity::Connected { witness: ConnectWitness::RealInterval }
        );
        assert_eq!(
            connectivity(&real(-1, 2), 40).unwrap(),
            Connectivity::Connected { witness: ConnectWitness::RealInterval }
        );
    }

    #[test]
    fn outside_disc_rejected() {
        assert!(connectivity(&real(1, 1), 10).is_err());
    }

    #[test]
    fn small_complex_is_disconnected() {
        let l = lambda_from_rational(&rat(1, 5), &rat(1, 5)).unwrap();
        assert!(matches!(connectivity(&l, 20).unwrap(), Connectivity::Disconnected { .. }));
    }

    #[test]
    fn interior_examples() {
        assert!(!interior_criterion(&real(4, 5)).unwrap());
        let l = lambda_from_rational(&BigRational::zero(), &rat(4, 5)).unwrap();
        assert!(interior_criterion(&l).unwrap());
    }

    #[test]
    fn half_is_not_applicable() {
        assert!(matches!(zn_lower_bound(&real(1, 2), 3), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn signed_cloud_maps_to_binary() {
        let l = Complex64::new(0.3, 0.6);
        let a = point_cloud(l, 8, RasterDigits::Binary).unwrap();
        let b = point_cloud(l, 8, RasterDigits::Signed).unwrap();
        // the finite sums shift by the truncated geometric series
        let trunc = (Complex64::new(1.0, 0.0) - l.powu(9)) / (Complex64::new(1.0, 0.0) - l);
        for (x, y) in a.iter().zip(&b) {
            assert!((*x - (*y + trunc) / 2.0).norm() < 1e-12);
        }
    }
}
