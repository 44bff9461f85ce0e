use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::interval::{Disk, Interval};
use super::poly::IntPolynomial;
use super::roots::{RootBox, RootSet, DEFAULT_BUDGET};
use super::PAIR_PRODUCT_CAP;
use crate::error::{Error, Result};

/// A root of an integer polynomial, held as an index into a certified
/// isolation of the squarefree part of its defining polynomial.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    set: RootSet,
    index: usize,
}

impl AlgebraicNumber {
    pub fn from_set(set: RootSet, index: usize) -> Self {
        assert!(index < set.len(), "root index out of range");
        AlgebraicNumber { set, index }
    }

    /// The rational number `r`, as the root of `den*x - num`.
    pub fn rational(r: &BigRational) -> Self {
        let p = IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
        let set = RootSet::new(&p, DEFAULT_BUDGET).expect("linear polynomial");
        AlgebraicNumber { set, index: 0 }
    }

    /// All certified real roots of `p`, ascending.
    pub fn real_roots(p: &IntPolynomial, budget: u32) -> Result<Vec<AlgebraicNumber>> {
        let set = RootSet::new(p, budget)?;
        let idx = super::roots::real_roots(&set);
        Ok(idx
            .into_iter()
            .map(|i| AlgebraicNumber { set: set.clone(), index: i })
            .collect())
    }

    /// Root of `p` with index `i` in the canonical ordering.
    pub fn root_of(p: &IntPolynomial, i: usize, budget: u32) -> Result<AlgebraicNumber> {
        let set = RootSet::new(p, budget)?;
        if i >= set.len() {
            return Err(Error::InvalidInput(format!("root index {i} out of range")));
        }
        Ok(AlgebraicNumber { set, index: i })
    }

    pub fn defining(&self) -> &IntPolynomial {
        self.set.poly()
    }

    pub fn root_box(&self) -> &RootBox {
        self.set.root(self.index)
    }

    pub fn refine_budget(&self) -> u32 {
        self.set.budget()
    }

    pub fn set_budget(&mut self, budget: u32) {
        self.set.set_budget(budget);
    }

    pub fn root_set(&self) -> &RootSet {
        &self.set
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn disk(&self) -> Disk {
        self.set.disk(self.index)
    }

    pub fn is_real(&self) -> bool {
        self.root_box().real
    }

    pub fn approx(&self) -> Complex64 {
        self.root_box().center_f64()
    }

    pub fn prec(&self) -> u32 {
        self.set.prec()
    }

    /// Enclosure of a real root.
    pub fn real_interval(&self) -> Interval {
        debug_assert!(self.is_real());
        self.root_box().re_interval()
    }

    pub fn refine(&mut self) -> Result<()> {
        self.set.refine()
    }

    /// Refines until the box radius is at most `2^-bits`.
    pub fn refine_to_bits(&mut self, bits: u32) -> Result<()> {
        self.set.refine_root_bits(self.index, bits)
    }

    pub fn neg(&self) -> AlgebraicNumber {
        AlgebraicNumber { set: self.set.negated(), index: self.index }
    }

    pub fn conj(&self) -> AlgebraicNumber {
        AlgebraicNumber { set: self.set.clone(), index: self.set.conjugate_index(self.index) }
    }

    /// The number minus `c`.
    pub fn shift(&self, c: &BigRational) -> AlgebraicNumber {
        AlgebraicNumber { set: self.set.translated(c), index: self.index }
    }

    pub fn inverse(&self) -> Result<AlgebraicNumber> {
        let rev = self.defining().reverse()?;
        let mut target = RootSet::new(&rev, self.set.budget())?;
        let mut src = self.clone();
        let idx = identify(&mut target, &mut src, |d, _| d.inverse())?;
        Ok(AlgebraicNumber { set: target, index: idx })
    }

    pub fn square(&self) -> Result<AlgebraicNumber> {
        let g = self.defining().graeffe();
        let mut target = RootSet::new(&g, self.set.budget())?;
        let mut src = self.clone();
        let idx = identify(&mut target, &mut src, |d, bits| Some(d.square(bits)))?;
        Ok(AlgebraicNumber { set: target, index: idx })
    }

    /// Exact sign-aware comparison of a real algebraic number with a
    /// rational.
    pub fn cmp_rational(&mut self, r: &BigRational) -> Result<Ordering> {
        if !self.is_real() {
            return Err(Error::InvalidInput("comparison of a non-real number".into()));
        }
        let is_root = self.defining().eval_rational(r).is_zero();
        loop {
            let iv = self.real_interval();
            if &iv.hi < r {
                return Ok(Ordering::Less);
            }
            if &iv.lo > r {
                return Ok(Ordering::Greater);
            }
            if is_root {
                return Ok(Ordering::Equal);
            }
            self.refine()?;
        }
    }
}

/// Refines `src` and `target` until the image of `src` under `map` meets
/// exactly one box of `target`. The image must be a root of `target`.
fn identify<F>(target: &mut RootSet, src: &mut AlgebraicNumber, map: F) -> Result<usize>
where
    F: Fn(&Disk, u32) -> Option<Disk>,
{
    loop {
        let bits = src.prec().max(target.prec()) + 16;
        if let Some(img) = map(&src.disk(), bits) {
            let hits: Vec<usize> = (0..target.len())
                .filter(|&j| target.disk(j).intersects(&img))
                .collect();
            if hits.len() == 1 {
                return Ok(hits[0]);
            }
            if hits.is_empty() {
                return Err(Error::InvariantViolation(
                    "image of a root is not enclosed by the target isolation".into(),
                ));
            }
        }
        src.refine()?;
        if target.prec() <= src.prec() {
            target.refine()?;
        }
    }
}

/// Position of `x` among the roots of `h`, or `None` when `x` is not a root
/// of `h`. Both isolations are refined as needed.
pub fn locate(x: &mut AlgebraicNumber, h: &mut RootSet) -> Result<Option<usize>> {
    loop {
        let xd = x.disk();
        let hits: Vec<usize> = (0..h.len()).filter(|&j| h.disk(j).intersects(&xd)).collect();
        if hits.is_empty() {
            return Ok(None);
        }
        if hits.len() == 1 {
            let hd = h.disk(hits[0]);
            let clean = (0..x.set.len())
                .filter(|&k| k != x.index)
                .all(|k| !x.set.disk(k).intersects(&hd));
            if clean {
                return Ok(Some(hits[0]));
            }
        }
        x.refine()?;
        h.refine()?;
    }
}

/// Exact equality of two algebraic numbers.
pub fn algebraic_eq(a: &mut AlgebraicNumber, b: &mut AlgebraicNumber) -> Result<bool> {
    let g = a.defining().gcd(b.defining());
    if g.degree() == 0 {
        return Ok(false);
    }
    let mut h = RootSet::new(&g, a.refine_budget().max(b.refine_budget()))?;
    let la = locate(a, &mut h)?;
    if la.is_none() {
        return Ok(false);
    }
    let lb = locate(b, &mut h)?;
    Ok(la == lb)
}

/// True when `x` is a root of `p`.
pub fn is_root_of(x: &AlgebraicNumber, p: &IntPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if x.defining().degree() == 1 {
        let r = x.root_box().center.re.clone();
        return Ok(p.eval_rational(&r).is_zero());
    }
    let g = p.gcd(x.defining());
    if g.degree() == 0 {
        return Ok(false);
    }
    let mut h = RootSet::new(&g, x.refine_budget())?;
    let mut xx = x.clone();
    Ok(locate(&mut xx, &mut h)?.is_some())
}

/// Outcome of comparing `|alpha|^2` against a positive real target.
#[derive(Clone, Debug)]
pub struct ModulusComparison {
    pub ordering: Ordering,
    /// Equality was established by exact algebra.
    pub exact_tie: bool,
    pub alpha_sq: Interval,
    pub target: Interval,
}

impl ModulusComparison {
    /// Certified lower bound on `| |alpha|^2 - target |` (zero for ties).
    pub fn margin(&self) -> BigRational {
        match self.ordering {
            Ordering::Less => &self.target.lo - &self.alpha_sq.hi,
            Ordering::Greater => &self.alpha_sq.lo - &self.target.hi,
            Ordering::Equal => BigRational::zero(),
        }
    }
}

const TIE_CHECK_PREC: u32 = 128;

/// Compares `|alpha|^2` with a positive real algebraic `target`, deciding
/// exact ties by algebra rather than tolerance.
pub fn compare_modulus_sq(
    alpha: &mut AlgebraicNumber,
    target: &mut AlgebraicNumber,
) -> Result<ModulusComparison> {
    if !target.is_real() {
        return Err(Error::InvalidInput("modulus target must be real".into()));
    }
    let mut tie_checked = false;
    loop {
        let bits = alpha.prec().max(target.prec()) + 16;
        let a2 = alpha.disk().modulus_sq(bits);
        let t = target.real_interval();
        if a2.hi < t.lo {
            return Ok(ModulusComparison { ordering: Ordering::Less, exact_tie: false, alpha_sq: a2, target: t });
        }
        if a2.lo > t.hi {
            return Ok(ModulusComparison { ordering: Ordering::Greater, exact_tie: false, alpha_sq: a2, target: t });
        }
        if !tie_checked && alpha.prec() >= TIE_CHECK_PREC {
            tie_checked = true;
            let tie = if alpha.is_real() {
                let mut sq = alpha.square()?;
                algebraic_eq(&mut sq, target)?
            } else {
                pair_product_tie(alpha, target)?
            };
            if tie {
                return Ok(ModulusComparison { ordering: Ordering::Equal, exact_tie: true, alpha_sq: a2, target: t });
            }
        }
        alpha.refine()?;
        if target.prec() <= alpha.prec() {
            target.refine()?;
        }
    }
}

fn pair_product_cached(f: &IntPolynomial) -> Result<IntPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<IntPolynomial, IntPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(f) {
        return Ok(p.clone());
    }
    let p = f.pair_product(PAIR_PRODUCT_CAP)?;
    cache.lock().expect("cache lock").insert(f.clone(), p.clone());
    Ok(p)
}

/// Decides `alpha * conj(alpha) == target` for non-real `alpha`: the target
/// occurs with some multiplicity `m` among the pairwise products of the
/// conjugates, and once exactly `m` product enclosures meet the target the
/// equal pairs are identified.
fn pair_product_tie(alpha: &mut AlgebraicNumber, target: &mut AlgebraicNumber) -> Result<bool> {
    let f = alpha.defining().clone();
    let pp = pair_product_cached(&f)?;
    let mut m = 0usize;
    let mut d = pp;
    while d.degree() >= 1 && is_root_of(target, &d)? {
        m += 1;
        d = d.derivative();
    }
    if m == 0 {
        return Ok(false);
    }
    let i0 = alpha.index;
    let c0 = alpha.set.conjugate_index(i0);
    let want = (i0.min(c0), i0.max(c0));
    loop {
        let bits = alpha.prec().max(target.prec()) + 16;
        let t = target.disk();
        let n = alpha.set.len();
        let mut hits = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let prod = alpha.set.disk(i).mul(&alpha.set.disk(j), bits);
                if prod.intersects(&t) {
                    hits.push((i, j));
                }
            }
        }
        if hits.len() == m {
            return Ok(hits.contains(&want));
        }
        if hits.len() < m {
            return Err(Error::InvariantViolation("pair-product multiplicity mismatch".into()));
        }
        alpha.refine()?;
        if target.prec() <= alpha.prec() {
            target.refine()?;
        }
    }
}

/// Compares `|alpha|^2` with a rational.
pub fn compare_modulus_sq_rational(
    alpha: &mut AlgebraicNumber,
    r: &BigRational,
) -> Result<ModulusComparison> {
    let mut t = AlgebraicNumber::rational(r);
    compare_modulus_sq(alpha, &mut t)
}

/// `1/q^2` for a real algebraic `q`, as a root of the reversed Graeffe
/// transform.
pub fn inverse_square(q: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    q.square()?.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::interval::rat;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn largest_real(f: &IntPolynomial) -> AlgebraicNumber {
        AlgebraicNumber::real_roots(f, DEFAULT_BUDGET).unwrap().pop().unwrap()
    }

    #[test]
    fn inverse_and_square_are_identified() {
        let q = largest_real(&p(&[-1, -1, 1]));
        let inv = q.inverse().unwrap();
        assert!((inv.approx().re - 0.6180339887).abs() < 1e-9);
        let sq = q.square().unwrap();
        assert!((sq.approx().re - 2.6180339887).abs() < 1e-9);
    }

    #[test]
    fn equality_across_polynomials() {
        // sqrt2 as a root of x^2-2 and of (x^2-2)(x-3)
        let mut a = largest_real(&p(&[-2, 0, 1]));
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 1]);
        let roots = AlgebraicNumber::real_roots(&f, DEFAULT_BUDGET).unwrap();
        let mut b = roots[1].clone();
        let mut c = roots[2].clone();
        assert!(algebraic_eq(&mut a, &mut b).unwrap());
        assert!(!algebraic_eq(&mut a, &mut c).unwrap());
    }

    #[test]
    fn modulus_ties_are_exact() {
        // unit circle roots of x^4 - x^3 - x^2 - x + 1
        let f = p(&[1, -1, -1, -1, 1]);
        let set = RootSet::new(&f, DEFAULT_BUDGET).unwrap();
        let mut ties = 0;
        for i in 0..set.len() {
            let mut a = AlgebraicNumber::from_set(set.clone(), i);
            let c = compare_modulus_sq_rational(&mut a, &rat(1, 1)).unwrap();
            if c.ordering == Ordering::Equal {
                assert!(c.exact_tie && !a.is_real());
                ties += 1;
            }
        }
        assert_eq!(ties, 2);
    }

    #[test]
    fn real_square_tie() {
        // -sqrt3 against target 3
        let roots = AlgebraicNumber::real_roots(&p(&[-3, 0, 1]), DEFAULT_BUDGET).unwrap();
        let mut a = roots[0].clone();
        let c = compare_modulus_sq_rational(&mut a, &rat(3, 1)).unwrap();
        assert_eq!(c.ordering, Ordering::Equal);
        let mut a = roots[0].clone();
        let c = compare_modulus_sq_rational(&mut a, &rat(2, 1)).unwrap();
        assert_eq!(c.ordering, Ordering::Greater);
    }

    #[test]
    fn cube_root_pair_product_tie() {
        // x^12 - x^9 - x^6 - x^3 + 1: zeta/q has modulus exactly 1/q
        let f = p(&[1, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, 0, 1]);
        let set = RootSet::new(&f, DEFAULT_BUDGET).unwrap();
        let q = largest_real(&f);
        let target = inverse_square(&q).unwrap();
        let mut hits = 0;
        for i in 0..set.len() {
            let mut a = AlgebraicNumber::from_set(set.clone(), i);
            let mut t = target.clone();
            let c = compare_modulus_sq(&mut a, &mut t).unwrap();
            if c.ordering == Ordering::Equal {
                hits += 1;
            }
        }
        // 1/q and the two non-real zeta/q
        assert_eq!(hits, 3);
    }

    #[test]
    fn cmp_rational_exact() {
        let mut a = AlgebraicNumber::rational(&rat(3, 2));
        assert_eq!(a.cmp_rational(&rat(3, 2)).unwrap(), Ordering::Equal);
        let mut q = largest_real(&p(&[-1, -1, 1]));
        assert_eq!(q.cmp_rational(&rat(8, 5)).unwrap(), Ordering::Greater);
        assert_eq!(q.cmp_rational(&rat(13, 8)).unwrap(), Ordering::Less);
    }
}
