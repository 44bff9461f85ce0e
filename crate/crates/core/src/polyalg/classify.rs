use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::algebraic::{
    compare_modulus_sq, compare_modulus_sq_rational, locate, AlgebraicNumber, ModulusComparison,
};
use super::interval::Interval;
use super::modp::minimality_check;
use super::poly::IntPolynomial;
use super::roots::RootSet;
use crate::error::{Error, Result};

/// Certified modulus comparisons for one conjugate of `q`.
#[derive(Clone, Debug)]
pub struct ConjugateInfo {
    pub index: usize,
    pub approx: Complex64,
    pub real: bool,
    /// `|alpha|^2` against 1.
    pub vs_one: ModulusComparison,
    /// `|alpha|^2` against `q^2`.
    pub vs_q: ModulusComparison,
    /// `|alpha|^2` against `1/q^2`.
    pub vs_inv_q: ModulusComparison,
}

impl ConjugateInfo {
    pub fn modulus(&self) -> Interval {
        self.vs_one.alpha_sq.sqrt(64)
    }
}

/// Evidence behind one classification flag: the smallest certified gap in
/// squared modulus over the strict comparisons it relies on, and how many
/// comparisons were settled as exact ties.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagMargin {
    pub gap: Option<BigRational>,
    pub exact_ties: usize,
}

#[derive(Clone, Debug)]
pub struct NumberClass {
    pub is_algebraic_integer: bool,
    pub is_pisot: bool,
    pub is_perron: bool,
    pub is_salem: bool,
    pub is_anti_pisot: bool,
    pub margins: BTreeMap<String, FlagMargin>,
    pub minimality_verified: bool,
    pub q: Interval,
    pub conjugates: Vec<ConjugateInfo>,
}

impl NumberClass {
    pub fn count_vs_one(&self, ord: Ordering) -> usize {
        self.conjugates.iter().filter(|c| c.vs_one.ordering == ord).count()
    }
}

fn margin_over<'a>(comps: impl Iterator<Item = &'a ModulusComparison>) -> FlagMargin {
    let mut gap: Option<BigRational> = None;
    let mut exact_ties = 0;
    for c in comps {
        if c.exact_tie {
            exact_ties += 1;
        } else {
            let m = c.margin();
            gap = Some(match gap {
                Some(g) if g <= m => g,
                _ => m,
            });
        }
    }
    FlagMargin { gap, exact_ties }
}

/// Classifies the real root `root > 1` of `p` against its conjugates (the
/// other roots of the squarefree part of `p`, assumed minimal).
pub fn classify(p: &IntPolynomial, root: &AlgebraicNumber) -> Result<NumberClass> {
    let mut q = root.clone();
    if !q.is_real() {
        return Err(Error::InvalidInput("classified root must be real".into()));
    }
    if q.cmp_rational(&BigRational::one())? != Ordering::Greater {
        return Err(Error::InvalidInput("classified root must exceed 1".into()));
    }
    let budget = q.refine_budget();
    let mut set = RootSet::new(p, budget)?;
    let qi = locate(&mut q, &mut set)?
        .ok_or_else(|| Error::InvalidInput("root is not a root of the polynomial".into()))?;
    let f = set.poly().primitive();
    let is_algebraic_integer = f.leading().abs().is_one();

    let mut q2 = AlgebraicNumber::from_set(set.clone(), qi).square()?;
    let mut inv_q2 = q2.inverse()?;
    let mut conjugates = Vec::new();
    for i in 0..set.len() {
        if i == qi {
            continue;
        }
        let mut a = AlgebraicNumber::from_set(set.clone(), i);
        let vs_one = compare_modulus_sq_rational(&mut a, &BigRational::one())?;
        let vs_q = compare_modulus_sq(&mut a, &mut q2)?;
        let vs_inv_q = compare_modulus_sq(&mut a, &mut inv_q2)?;
        conjugates.push(ConjugateInfo {
            index: i,
            approx: a.approx(),
            real: a.is_real(),
            vs_one,
            vs_q,
            vs_inv_q,
        });
    }

    let all = |ord: Ordering, c: &[ConjugateInfo], key: fn(&ConjugateInfo) -> &ModulusComparison| {
        c.iter().all(|x| key(x).ordering == ord)
    };
    let inside = all(Ordering::Less, &conjugates, |c| &c.vs_one);
    let below_q = all(Ordering::Less, &conjugates, |c| &c.vs_q);
    let n_less = conjugates.iter().filter(|c| c.vs_one.ordering == Ordering::Less).count();
    let n_eq = conjugates.iter().filter(|c| c.vs_one.ordering == Ordering::Equal).count();
    let n_greater = conjugates.len() - n_less - n_eq;

    let is_pisot = is_algebraic_integer && inside;
    let is_perron = is_algebraic_integer && below_q;
    let is_salem = is_algebraic_integer && n_greater == 0 && n_eq > 0;
    let is_anti_pisot = is_algebraic_integer && n_less == 1 && n_greater >= 1;

    let mut margins = BTreeMap::new();
    if is_pisot {
        margins.insert("pisot".into(), margin_over(conjugates.iter().map(|c| &c.vs_one)));
    }
    if is_perron {
        margins.insert("perron".into(), margin_over(conjugates.iter().map(|c| &c.vs_q)));
    }
    if is_salem {
        margins.insert("salem".into(), margin_over(conjugates.iter().map(|c| &c.vs_one)));
    }
    if is_anti_pisot {
        margins.insert("anti_pisot".into(), margin_over(conjugates.iter().map(|c| &c.vs_one)));
    }
    let minimality_verified = minimality_check(&f).verified;
    let q_interval = AlgebraicNumber::from_set(set, qi).real_interval();

    debug_assert!(!is_pisot || is_perron);
    debug_assert!(!(is_pisot && is_salem));
    if margins.values().any(|m| m.gap.as_ref().is_some_and(|g| !g.is_positive()) && m.exact_ties == 0)
    {
        return Err(Error::InvariantViolation("non-positive classification margin".into()));
    }
    Ok(NumberClass {
        is_algebraic_integer,
        is_pisot,
        is_perron,
        is_salem,
        is_anti_pisot,
        margins,
        minimality_verified,
        q: q_interval,
        conjugates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::DEFAULT_BUDGET;

    fn largest(c: &[i64]) -> (IntPolynomial, AlgebraicNumber) {
        let f = IntPolynomial::from_i64(c);
        let q = AlgebraicNumber::real_roots(&f, DEFAULT_BUDGET).unwrap().pop().unwrap();
        (f, q)
    }

    #[test]
    fn quartic_is_anti_pisot() {
        let (f, q) = largest(&[-1, -1, 0, 0, 1]);
        let c = classify(&f, &q).unwrap();
        assert!(c.is_anti_pisot && !c.is_pisot && !c.is_salem);
        assert!(c.minimality_verified);
        assert!(c.margins["anti_pisot"].gap.as_ref().unwrap().is_positive());
    }

    #[test]
    fn golden_ratio_is_pisot() {
        let (f, q) = largest(&[-1, -1, 1]);
        let c = classify(&f, &q).unwrap();
        assert!(c.is_pisot && c.is_perron && !c.is_salem && !c.is_anti_pisot);
    }

    #[test]
    fn salem_quartic() {
        let (f, q) = largest(&[1, -1, -1, -1, 1]);
        let c = classify(&f, &q).unwrap();
        assert!(c.is_salem && c.is_perron && !c.is_pisot);
        assert_eq!(c.margins["salem"].exact_ties, 2);
    }

    #[test]
    fn non_integer_has_no_flags() {
        let (f, q) = largest(&[-3, 0, 2]);
        let c = classify(&f, &q).unwrap();
        assert!(!c.is_algebraic_integer && !c.is_pisot && !c.is_perron);
    }

    #[test]
    fn negated_conjugate_is_not_perron() {
        let (f, q) = largest(&[-3, 0, 1]);
        let c = classify(&f, &q).unwrap();
        assert!(!c.is_perron);
        assert!(c.conjugates[0].vs_q.exact_tie);
    }
}
