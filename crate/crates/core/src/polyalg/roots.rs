use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::interval::{dyadic, CRational, Disk, Interval};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Default ceiling on working precision, in bits.
pub const DEFAULT_BUDGET: u32 = 4096;

const START_PREC: u32 = 64;
const RADIUS_GUARD: u32 = 8;

/// Closed disc holding `multiplicity` roots of its owning polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    pub center: CRational,
    pub radius: BigRational,
    pub multiplicity: usize,
    /// The enclosed root is certified real (the disc is centred on the
    /// real axis and holds a single distinct root).
    pub real: bool,
}

impl RootBox {
    pub fn disk(&self) -> Disk {
        Disk::new(self.center.clone(), self.radius.clone())
    }

    pub fn center_f64(&self) -> Complex64 {
        self.disk().center_f64()
    }

    pub fn re_interval(&self) -> Interval {
        Interval::around(&self.center.re, &self.radius)
    }

    pub fn im_interval(&self) -> Interval {
        Interval::around(&self.center.im, &self.radius)
    }

    pub fn modulus(&self, bits: u32) -> Interval {
        self.disk().modulus(bits)
    }

    pub fn intersects(&self, o: &RootBox) -> bool {
        self.disk().intersects(&o.disk())
    }

    fn cmp_center(&self, o: &RootBox) -> Ordering {
        self.center
            .re
            .cmp(&o.center.re)
            .then_with(|| self.center.im.cmp(&o.center.im))
    }
}

type G = (BigInt, BigInt);

fn gmul(a: &G, b: &G) -> G {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gsub(a: &G, b: &G) -> G {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn gnorm(a: &G) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

fn fx_mul(a: &G, b: &G, prec: u32) -> G {
    let (re, im) = gmul(a, b);
    (re >> prec as usize, im >> prec as usize)
}

fn fx_div(a: &G, b: &G, prec: u32) -> Option<G> {
    let den = gnorm(b);
    if den.is_zero() {
        return None;
    }
    let re = (&a.0 * &b.0 + &a.1 * &b.1) << prec as usize;
    let im = (&a.1 * &b.0 - &a.0 * &b.1) << prec as usize;
    Some((re / &den, im / &den))
}

fn fx_horner(coeffs: &[BigInt], z: &G, prec: u32) -> G {
    let mut acc: G = (BigInt::zero(), BigInt::zero());
    for c in coeffs.iter().rev() {
        acc = fx_mul(&acc, z, prec);
        acc.0 += c;
    }
    acc
}

/// Floating-point Aberth iteration used for starting values.
pub fn approximate_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let lc = p.leading().to_f64().unwrap_or(1.0);
    let a: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0) / lc)
        .collect();
    let mut bound: f64 = 0.0;
    for k in 0..n {
        if a[k] != 0.0 {
            bound = bound.max(a[k].abs().powf(1.0 / (n - k) as f64));
        }
    }
    let r0 = if bound.is_finite() && bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in a.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..800 {
        let mut moved = false;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 || d.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let den = Complex64::new(1.0, 0.0) - ratio * s;
            let w = if den.norm() > 0.0 { ratio / den } else { ratio };
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-15 * (1.0 + z[i].norm()) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// Certified isolation of the roots of a squarefree polynomial, refinable
/// in place. Root `i` keeps its identity across refinements.
#[derive(Clone, Debug)]
pub struct RootSet {
    poly: IntPolynomial,
    approx: Vec<G>,
    prec: u32,
    boxes: Vec<RootBox>,
    budget: u32,
}

impl RootSet {
    /// Isolates the roots of the squarefree part of `p`.
    pub fn new(p: &IntPolynomial, budget: u32) -> Result<RootSet> {
        if p.is_zero() || p.degree() == 0 {
            return Err(Error::InvalidInput("root isolation needs degree >= 1".into()));
        }
        let poly = p.squarefree_part();
        if poly.degree() == 1 {
            let prec = START_PREC.min(budget.max(1));
            let root = BigRational::new(-poly.coeff(0), poly.coeff(1));
            let boxes = vec![RootBox {
                center: Complex::new(root, BigRational::zero()),
                radius: dyadic(BigInt::one(), prec),
                multiplicity: 1,
                real: true,
            }];
            return Ok(RootSet { poly, approx: Vec::new(), prec, boxes, budget });
        }
        let start = approximate_roots(&poly);
        let prec = START_PREC.min(budget.max(16));
        let scale = 2f64.powi(prec as i32);
        let approx: Vec<G> = start
            .iter()
            .map(|z| (f64_to_big(z.re * scale), f64_to_big(z.im * scale)))
            .collect();
        let mut set = RootSet { poly, approx, prec, boxes: Vec::new(), budget };
        set.converge(200)?;
        let mut order: Vec<usize> = (0..set.boxes.len()).collect();
        order.sort_by(|&i, &j| set.boxes[i].cmp_center(&set.boxes[j]));
        set.boxes = order.iter().map(|&i| set.boxes[i].clone()).collect();
        set.approx = order.iter().map(|&i| set.approx[i].clone()).collect();
        Ok(set)
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn boxes(&self) -> &[RootBox] {
        &self.boxes
    }

    pub fn root(&self, i: usize) -> &RootBox {
        &self.boxes[i]
    }

    pub fn disk(&self, i: usize) -> Disk {
        self.boxes[i].disk()
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    pub fn set_budget(&mut self, budget: u32) {
        self.budget = budget;
    }

    pub fn max_radius(&self) -> BigRational {
        self.boxes
            .iter()
            .map(|b| b.radius.clone())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Indices of roots whose box is certified real.
    pub fn real_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.boxes[i].real).collect()
    }

    /// Index of the complex conjugate of root `i`.
    pub fn conjugate_index(&self, i: usize) -> usize {
        if self.boxes[i].real {
            return i;
        }
        let target = self.boxes[i].center.conj();
        (0..self.len())
            .find(|&j| j != i && self.boxes[j].center == target)
            .or_else(|| {
                let d = self.boxes[i].disk().conj();
                (0..self.len()).find(|&j| j != i && self.boxes[j].disk().intersects(&d))
            })
            .expect("conjugate root present")
    }

    fn exhausted(&self) -> Error {
        Error::PrecisionExhausted(format!(
            "root isolation of {} needs more than {} bits",
            self.poly, self.budget
        ))
    }

    fn converge(&mut self, first_iters: usize) -> Result<()> {
        let mut iters = first_iters;
        loop {
            aberth_fixed(&self.poly, &mut self.approx, self.prec, iters);
            if let Some(b) = certify(&self.poly, &self.approx, self.prec) {
                self.boxes = b;
                return Ok(());
            }
            self.bump_prec()?;
            iters = 40;
        }
    }

    fn bump_prec(&mut self) -> Result<()> {
        let next = self.prec * 2;
        if next > self.budget {
            return Err(self.exhausted());
        }
        let shift = (next - self.prec) as usize;
        for a in self.approx.iter_mut() {
            a.0 <<= shift;
            a.1 <<= shift;
        }
        self.prec = next;
        Ok(())
    }

    /// Doubles the working precision and re-certifies all boxes.
    pub fn refine(&mut self) -> Result<()> {
        if self.poly.degree() == 1 {
            let next = self.prec * 2;
            if next > self.budget {
                return Err(self.exhausted());
            }
            self.prec = next;
            self.boxes[0].radius = dyadic(BigInt::one(), next);
            return Ok(());
        }
        let old = self.boxes.clone();
        loop {
            self.bump_prec()?;
            self.converge(40)?;
            if let Some(perm) = match_boxes(&old, &self.boxes) {
                if perm.iter().enumerate().any(|(i, &p)| i != p) {
                    let mut nb = vec![None; perm.len()];
                    let mut na = vec![None; perm.len()];
                    for (i, &p) in perm.iter().enumerate() {
                        nb[p] = Some(self.boxes[i].clone());
                        na[p] = Some(self.approx[i].clone());
                    }
                    self.boxes = nb.into_iter().map(Option::unwrap).collect();
                    self.approx = na.into_iter().map(Option::unwrap).collect();
                }
                return Ok(());
            }
        }
    }

    /// Refines until every radius is at most `eps`.
    pub fn refine_until(&mut self, eps: &BigRational) -> Result<()> {
        while &self.max_radius() > eps {
            self.refine()?;
        }
        Ok(())
    }

    /// Refines until root `i` has radius at most `2^-bits`.
    pub fn refine_root_bits(&mut self, i: usize, bits: u32) -> Result<()> {
        let eps = dyadic(BigInt::one(), bits);
        while self.boxes[i].radius > eps {
            self.refine()?;
        }
        Ok(())
    }

    /// Isolation of `p(x + c)`, whose roots are these roots minus `c`.
    pub fn translated(&self, c: &BigRational) -> RootSet {
        let poly = self.poly.taylor_shift(c);
        let boxes = self
            .boxes
            .iter()
            .map(|b| RootBox {
                center: Complex::new(&b.center.re - c, b.center.im.clone()),
                radius: b.radius.clone(),
                multiplicity: b.multiplicity,
                real: b.real,
            })
            .collect();
        let shift = (c * BigRational::from_integer(BigInt::one() << self.prec as usize))
            .round()
            .to_integer();
        let approx = self.approx.iter().map(|a| (&a.0 - &shift, a.1.clone())).collect();
        RootSet { poly, approx, prec: self.prec, boxes, budget: self.budget }
    }

    /// Isolation of `p(-x)`.
    pub fn negated(&self) -> RootSet {
        let poly = self.poly.neg_var().primitive();
        let boxes = self
            .boxes
            .iter()
            .map(|b| RootBox {
                center: -b.center.clone(),
                radius: b.radius.clone(),
                multiplicity: b.multiplicity,
                real: b.real,
            })
            .collect();
        let approx = self.approx.iter().map(|a| (-&a.0, -&a.1)).collect();
        RootSet { poly, approx, prec: self.prec, boxes, budget: self.budget }
    }
}

/// For each new box, the unique old box it meets; `None` if ambiguous.
fn match_boxes(old: &[RootBox], new: &[RootBox]) -> Option<Vec<usize>> {
    let mut perm = Vec::with_capacity(new.len());
    let mut used = vec![false; old.len()];
    for nb in new {
        let hits: Vec<usize> = (0..old.len()).filter(|&j| old[j].intersects(nb)).collect();
        if hits.len() != 1 || used[hits[0]] {
            return None;
        }
        used[hits[0]] = true;
        perm.push(hits[0]);
    }
    Some(perm)
}

fn f64_to_big(x: f64) -> BigInt {
    if !x.is_finite() {
        return BigInt::zero();
    }
    BigInt::from_f64(x.round()).unwrap_or_else(BigInt::zero)
}


fn aberth_fixed(poly: &IntPolynomial, approx: &mut [G], prec: u32, max_iter: usize) {
    let n = approx.len();
    let coeffs: Vec<BigInt> = poly.coeffs().iter().map(|c| c << prec as usize).collect();
    let dcoeffs: Vec<BigInt> = poly
        .derivative()
        .coeffs()
        .iter()
        .map(|c| c << prec as usize)
        .collect();
    let one: G = (BigInt::one() << prec as usize, BigInt::zero());
    let tol = BigInt::one() << (prec / 4 + 2) as usize;
    for _ in 0..max_iter {
        let mut moved = false;
        for i in 0..n {
            let z = approx[i].clone();
            let pv = fx_horner(&coeffs, &z, prec);
            if pv.0.is_zero() && pv.1.is_zero() {
                continue;
            }
            let dv = fx_horner(&dcoeffs, &z, prec);
            let Some(ratio) = fx_div(&pv, &dv, prec) else { continue };
            let mut s: G = (BigInt::zero(), BigInt::zero());
            for (j, zj) in approx.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some(t) = fx_div(&one, &gsub(&z, zj), prec) {
                    s.0 += t.0;
                    s.1 += t.1;
                }
            }
            let den = gsub(&one, &fx_mul(&ratio, &s, prec));
            let w = fx_div(&ratio, &den, prec).unwrap_or(ratio);
            if w.0.abs() > tol || w.1.abs() > tol {
                moved = true;
            }
            approx[i] = gsub(&z, &w);
        }
        if !moved {
            break;
        }
    }
}

/// Makes the approximation set closed under conjugation: near-real points
/// are snapped to the axis and lower-half points are replaced by the
/// conjugates of their matched upper-half partners.
fn symmetrize(approx: &[G], prec: u32) -> Option<Vec<(G, bool)>> {
    let thresh = BigInt::one() << (prec / 2) as usize;
    let mut out: Vec<(G, bool)> = Vec::with_capacity(approx.len());
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (i, a) in approx.iter().enumerate() {
        if a.1.abs() < thresh {
            out.push(((a.0.clone(), BigInt::zero()), true));
        } else {
            out.push((a.clone(), false));
            if a.1.is_positive() {
                upper.push(i);
            } else {
                lower.push(i);
            }
        }
    }
    if upper.len() != lower.len() {
        return None;
    }
    let mut taken = vec![false; upper.len()];
    for &l in &lower {
        let target = (approx[l].0.clone(), -&approx[l].1);
        let mut best: Option<(usize, BigInt)> = None;
        for (k, &u) in upper.iter().enumerate() {
            if taken[k] {
                continue;
            }
            let d = gnorm(&gsub(&approx[u], &target));
            if best.as_ref().is_none_or(|(_, bd)| &d < bd) {
                best = Some((k, d));
            }
        }
        let (k, _) = best?;
        taken[k] = true;
        let u = upper[k];
        out[l].0 = (approx[u].0.clone(), -&approx[u].1);
    }
    Some(out)
}

/// Exact inclusion test. The roots are the eigenvalues of
/// `diag(z) - 1 w^T` with Weierstrass corrections `w`; column Gershgorin
/// discs lie inside `D(z_i, n |w_i|)`, and pairwise disjoint discs each
/// hold one root.
fn certify(poly: &IntPolynomial, approx: &[G], prec: u32) -> Option<Vec<RootBox>> {
    let n = approx.len();
    let sym = symmetrize(approx, prec)?;
    let pts: Vec<&G> = sym.iter().map(|(g, _)| g).collect();
    let s = prec + RADIUS_GUARD;
    let lc = poly.leading();
    let lc2 = &lc * &lc;
    let nn = BigInt::from((n * n) as u64);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let a = pts[i];
        let mut acc: G = (poly.leading(), BigInt::zero());
        for k in (0..n).rev() {
            acc = gmul(&acc, a);
            acc.0 += poly.coeff(k) << (prec as usize * (n - k));
        }
        let mut d: G = (BigInt::one(), BigInt::zero());
        for (j, b) in pts.iter().enumerate() {
            if j != i {
                d = gmul(&d, &gsub(a, b));
            }
        }
        let dn = gnorm(&d);
        if dn.is_zero() {
            return None;
        }
        let num = (&nn * gnorm(&acc)) << (2 * s as usize);
        let den = (&lc2 * dn) << (2 * prec as usize);
        let t = (&num + &den - BigInt::one()) / &den;
        let mut r = t.sqrt();
        if &r * &r < t {
            r += 1;
        }
        if r.is_zero() {
            r = BigInt::one();
        }
        radii.push(r);
    }
    let guard = RADIUS_GUARD as usize;
    for i in 0..n {
        if !sym[i].1 {
            let im = pts[i].1.abs() << guard;
            if im <= radii[i] {
                return None;
            }
        }
        for j in (i + 1)..n {
            let d = gsub(pts[i], pts[j]);
            let dist = gnorm(&d) << (2 * guard);
            let rr = &radii[i] + &radii[j];
            if dist <= &rr * &rr {
                return None;
            }
        }
    }
    Some(
        (0..n)
            .map(|i| RootBox {
                center: Complex::new(dyadic(pts[i].0.clone(), prec), dyadic(pts[i].1.clone(), prec)),
                radius: dyadic(radii[i].clone(), s),
                multiplicity: 1,
                real: sym[i].1,
            })
            .collect(),
    )
}

/// Isolating discs for all roots of `p`, each of radius at most `eps`,
/// with multiplicities, ordered by real part and then imaginary part.
pub fn isolate_roots(p: &IntPolynomial, eps: &BigRational) -> Result<Vec<RootBox>> {
    isolate_roots_with_budget(p, eps, DEFAULT_BUDGET)
}

pub fn isolate_roots_with_budget(
    p: &IntPolynomial,
    eps: &BigRational,
    budget: u32,
) -> Result<Vec<RootBox>> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::InvalidInput("root isolation needs degree >= 1".into()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let parts = p.squarefree_decomposition();
    let mut sets: Vec<(RootSet, usize)> = parts
        .iter()
        .map(|(f, m)| RootSet::new(f, budget).map(|s| (s, *m)))
        .collect::<Result<_>>()?;
    for (s, _) in sets.iter_mut() {
        s.refine_until(eps)?;
    }
    loop {
        let mut clash: Option<(usize, usize)> = None;
        'outer: for a in 0..sets.len() {
            for b in (a + 1)..sets.len() {
                for x in sets[a].0.boxes() {
                    for y in sets[b].0.boxes() {
                        if x.intersects(y) {
                            clash = Some((a, b));
                            break 'outer;
                        }
                    }
                }
            }
        }
        match clash {
            None => break,
            Some((a, b)) => {
                sets[a].0.refine()?;
                sets[b].0.refine()?;
            }
        }
    }
    let mut out: Vec<RootBox> = Vec::new();
    for (s, m) in &sets {
        for b in s.boxes() {
            let mut b = b.clone();
            b.multiplicity = *m;
            out.push(b);
        }
    }
    out.sort_by(|a, b| a.cmp_center(b));
    Ok(out)
}

/// Certified real roots of `p` in ascending order.
pub fn real_roots(set: &RootSet) -> Vec<usize> {
    let mut r = set.real_indices();
    r.sort_by(|&i, &j| set.root(i).center.re.cmp(&set.root(j).center.re));
    r
}
