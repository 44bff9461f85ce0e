//! Verdict engine: decides `l(q) = 0`, `L(q) = 0` or uniform discreteness
//! for a real root `q` in `(1, 2)` from certified algebraic criteria.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::attractor::interior_certificate;
use crate::counting::growth_ratio;
use crate::error::{Error, Result};
use crate::heightsearch::{
    find_height_one_multiple_with, three_root_filter, FilterCertificate, HeightOneStatus,
    SearchOptions,
};
use crate::polyalg::algebraic::{compare_modulus_sq, is_root_of};
use crate::polyalg::interval::{decimal, Interval};
use crate::polyalg::{classify, AlgebraicNumber, IntPolynomial, NumberClass, RootSet, DEFAULT_BUDGET};
use crate::spectrum::smallest_positive_lambda;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

impl RuleId {
    pub const ALL: [RuleId; 8] =
        [RuleId::R0, RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5, RuleId::R6, RuleId::R7];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::R0 => "R0",
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
        }
    }

    /// The mathematical statement each rule applies.
    pub fn citation(self) -> &'static str {
        match self {
            RuleId::R0 => {
                "no {-1,0,1} polynomial vanishes at q (resp. q^2): all 2^(n+1) sums are distinct, \
                 so l(q) = 0 (resp. l(q^2) = 0, giving L(q) = 0 for q < sqrt 2)"
            }
            RuleId::R1 => "Pisot q: the spectrum is uniformly discrete",
            RuleId::R2 => "q not Perron: l(q) = 0; if also q < sqrt 2 and -q is not a conjugate, L(q) = 0",
            RuleId::R3 => "a conjugate alpha with q|alpha| < 1: l(q) = 0; if also q < sqrt 2, L(q) = 0",
            RuleId::R4 => "a non-real conjugate alpha with q|alpha| = 1: l(q) = 0; if also q < sqrt 2, L(q) = 0",
            RuleId::R5 => "anti-Pisot q that is a zero of a {-1,0,1} polynomial: l(q) = 0",
            RuleId::R6 => "q^2 Pisot and q not Pisot: l(q) = 0",
            RuleId::R7 => {
                "a conjugate lambda in the interior region with |lambda|^-2 > q: \
                 z_n(q) >= |lambda|^(-2(n+1)) grows faster than q^n, so l(q) = 0"
            }
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Conclusion {
    Inconclusive,
    DenseL0,
    DenseL0AndL0,
    Discrete,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::DenseL0 => "DenseL0",
            Conclusion::DenseL0AndL0 => "DenseL0AndL0",
            Conclusion::Discrete => "Discrete",
            Conclusion::Inconclusive => "Inconclusive",
        }
    }

    /// Process exit code for a decided or undecided verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::Inconclusive => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exit code for an error raised while deciding a verdict.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) => 3,
        Error::InvalidInput(_) | Error::Parse(_) => 64,
        _ => 1,
    }
}

/// Which real root of the input is `q`.
#[derive(Clone, Debug, PartialEq)]
pub enum RootSelector {
    Largest,
    /// Position among the real roots in ascending order.
    Index(usize),
    /// The unique real root in a closed interval.
    Interval(BigRational, BigRational),
}

/// Certified selection of a real root of `f`.
pub fn select_root(f: &IntPolynomial, sel: &RootSelector, budget: u32) -> Result<AlgebraicNumber> {
    let mut roots = AlgebraicNumber::real_roots(f, budget)?;
    if roots.is_empty() {
        return Err(Error::InvalidInput(format!("{f} has no real roots")));
    }
    match sel {
        RootSelector::Largest => Ok(roots.pop().expect("nonempty")),
        RootSelector::Index(k) => {
            let n = roots.len();
            roots
                .into_iter()
                .nth(*k)
                .ok_or_else(|| Error::InvalidInput(format!("root index {k} out of range (0..{n})")))
        }
        RootSelector::Interval(lo, hi) => {
            let mut inside = Vec::new();
            for mut r in roots {
                loop {
                    let iv = r.real_interval();
                    if &iv.lo >= lo && &iv.hi <= hi {
                        inside.push(r);
                        break;
                    }
                    if &iv.hi < lo || &iv.lo > hi {
                        break;
                    }
                    r.refine()?;
                }
            }
            if inside.len() != 1 {
                return Err(Error::InvalidInput(format!(
                    "interval holds {} real roots, expected exactly one",
                    inside.len()
                )));
            }
            Ok(inside.pop().expect("one root"))
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerdictOptions {
    pub budget: u32,
    /// Degree bound for height-one searches.
    pub dmax: usize,
    pub search: SearchOptions,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { budget: DEFAULT_BUDGET, dmax: 20, search: SearchOptions::default() }
    }
}

/// One rule that fired, with the evidence needed to re-check it.
#[derive(Clone, Debug)]
pub struct RuleFiring {
    pub rule: RuleId,
    pub conclusion: Conclusion,
    pub certificate: Value,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub poly: IntPolynomial,
    pub q: Interval,
    pub conclusion: Conclusion,
    pub rules_applied: Vec<RuleFiring>,
    pub caveats: Vec<String>,
    pub class: NumberClass,
    pub q_below_sqrt2: bool,
}

impl Verdict {
    pub fn rule_ids(&self) -> Vec<RuleId> {
        self.rules_applied.iter().map(|r| r.rule).collect()
    }

    pub fn exit_code(&self) -> i32 {
        self.conclusion.exit_code()
    }

    pub fn to_json(&self) -> Value {
        let c = &self.class;
        json!({
            "poly": self.poly.to_string(),
            "q": {"lo": decimal(&self.q.lo, 20), "hi": decimal(&self.q.hi, 20)},
            "conclusion": self.conclusion.as_str(),
            "rules_applied": self.rules_applied.iter().map(|r| json!({
                "rule": r.rule.as_str(),
                "citation": r.rule.citation(),
                "conclusion": r.conclusion.as_str(),
                "certificate": r.certificate,
            })).collect::<Vec<_>>(),
            "caveats": self.caveats,
            "q_below_sqrt2": self.q_below_sqrt2,
            "classification": {
                "algebraic_integer": c.is_algebraic_integer,
                "pisot": c.is_pisot,
                "perron": c.is_perron,
                "salem": c.is_salem,
                "anti_pisot": c.is_anti_pisot,
                "minimality_verified": c.minimality_verified,
            },
        })
    }
}

fn cdec(z: Complex64) -> Value {
    json!({"re": format!("{:.10}", z.re), "im": format!("{:.10}", z.im)})
}

fn idec(iv: &Interval) -> Value {
    json!([decimal(&iv.lo, 12), decimal(&iv.hi, 12)])
}

fn filter_json(c: &FilterCertificate) -> Value {
    c.to_json()
}

/// True when `i/q` is a root of `f`: `f(iy) = A(y) + i B(y)` and `1/q` is a
/// common root of `A` and `B`.
fn imaginary_inverse_is_root(f: &IntPolynomial, q: &AlgebraicNumber) -> Result<bool> {
    let n = f.degree();
    let mut re = vec![BigInt::zero(); n + 1];
    let mut im = vec![BigInt::zero(); n + 1];
    for (k, c) in f.coeffs().iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 { c.clone() } else { -c.clone() };
        if k % 2 == 0 {
            re[k] = sign;
        } else {
            im[k] = sign;
        }
    }
    let g = IntPolynomial::new(re).gcd(&IntPolynomial::new(im));
    if g.degree() == 0 || g.is_zero() {
        return Ok(false);
    }
    is_root_of(&q.inverse()?, &g)
}

/// Certified `q < sqrt 2`, by comparing `q^2` with 2 exactly.
fn below_sqrt2(q: &AlgebraicNumber) -> Result<bool> {
    let mut q2 = q.square()?;
    Ok(q2.cmp_rational(&BigRational::from_integer(2.into()))? == Ordering::Less)
}

struct Ctx<'a> {
    f: &'a IntPolynomial,
    q: &'a AlgebraicNumber,
    class: &'a NumberClass,
    sqrt2: bool,
    opts: &'a VerdictOptions,
}

impl Ctx<'_> {
    fn upgrade(&self, allowed: bool) -> Conclusion {
        if self.sqrt2 && allowed {
            Conclusion::DenseL0AndL0
        } else {
            Conclusion::DenseL0
        }
    }

    fn search(&self, g: &IntPolynomial) -> Result<HeightOneStatus> {
        let dmax = self.opts.dmax.max(g.degree());
        Ok(find_height_one_multiple_with(g, dmax, &self.opts.search)?.status)
    }

    /// Filter certificate for `g` or its reverse, backed by a bounded
    /// search that also finds nothing.
    fn refuted(&self, g: &IntPolynomial) -> Result<Option<(FilterCertificate, usize)>> {
        let cert = match three_root_filter(g)? {
            Some(c) => Some(c),
            None => three_root_filter(&g.reverse()?)?,
        };
        let Some(cert) = cert else { return Ok(None) };
        match self.search(g)? {
            HeightOneStatus::NoneUpTo(d) => Ok(Some((cert, d))),
            _ => Err(Error::InvariantViolation("filter certificate contradicted by a witness".into())),
        }
    }

    fn r0(&self) -> Result<Option<RuleFiring>> {
        if let Some((cert, d)) = self.refuted(self.f)? {
            return Ok(Some(RuleFiring {
                rule: RuleId::R0,
                conclusion: Conclusion::DenseL0,
                certificate: json!({"refuted": "q", "filter": filter_json(&cert), "search_none_up_to": d}),
            }));
        }
        if self.sqrt2 {
            let g = self.f.graeffe().squarefree_part();
            if let Some((cert, d)) = self.refuted(&g)? {
                return Ok(Some(RuleFiring {
                    rule: RuleId::R0,
                    conclusion: Conclusion::DenseL0AndL0,
                    certificate: json!({
                        "refuted": "q^2",
                        "square_poly": g.to_string(),
                        "filter": filter_json(&cert),
                        "search_none_up_to": d,
                    }),
                }));
            }
        }
        Ok(None)
    }

    fn r1(&self) -> Option<RuleFiring> {
        self.class.is_pisot.then(|| RuleFiring {
            rule: RuleId::R1,
            conclusion: Conclusion::Discrete,
            certificate: json!({
                "conjugates_inside_unit_disc": self.class.conjugates.len(),
                "min_gap_sq": self.class.margins.get("pisot").and_then(|m| m.gap.as_ref()).map(|g| decimal(g, 8)),
            }),
        })
    }

    fn r2(&self) -> Result<Option<RuleFiring>> {
        if self.class.is_perron {
            return Ok(None);
        }
        let neg_conj = is_root_of(&self.q.neg(), self.f)?;
        let witness = self
            .class
            .conjugates
            .iter()
            .find(|c| c.vs_q.ordering != Ordering::Less)
            .map(|c| json!({"conjugate": cdec(c.approx), "modulus_sq_vs_q_sq": format!("{:?}", c.vs_q.ordering)}));
        Ok(Some(RuleFiring {
            rule: RuleId::R2,
            conclusion: self.upgrade(!neg_conj),
            certificate: json!({
                "algebraic_integer": self.class.is_algebraic_integer,
                "dominant_conjugate": witness,
                "minus_q_is_conjugate": neg_conj,
            }),
        }))
    }

    fn r3(&self) -> Option<RuleFiring> {
        let c = self.class.conjugates.iter().find(|c| c.vs_inv_q.ordering == Ordering::Less)?;
        Some(RuleFiring {
            rule: RuleId::R3,
            conclusion: self.upgrade(true),
            certificate: json!({
                "conjugate": cdec(c.approx),
                "modulus": idec(&c.modulus()),
                "q_times_modulus": idec(&c.modulus().mul(&self.class.q).round_out(64)),
                "margin_sq": decimal(&c.vs_inv_q.margin(), 8),
            }),
        })
    }

    fn r4(&self) -> Result<Option<RuleFiring>> {
        let ties: Vec<_> = self
            .class
            .conjugates
            .iter()
            .filter(|c| !c.real && c.vs_inv_q.ordering == Ordering::Equal && c.vs_inv_q.exact_tie)
            .collect();
        let Some(c) = ties.first() else { return Ok(None) };
        // The L(q) route squares the tie; it degenerates when the only tied
        // conjugates are +-i/q, and then needs -q^2 conjugate to q^2.
        let imaginary = imaginary_inverse_is_root(self.f, self.q)?;
        let allowed = if imaginary && ties.len() <= 2 {
            is_root_of(&self.q.square()?.neg(), &self.f.graeffe())?
        } else {
            true
        };
        Ok(Some(RuleFiring {
            rule: RuleId::R4,
            conclusion: self.upgrade(allowed),
            certificate: json!({
                "conjugate": cdec(c.approx),
                "q_times_modulus": "1 (exact)",
                "plus_minus_i_over_q_are_roots": imaginary,
            }),
        }))
    }

    fn r5(&self) -> Result<Option<RuleFiring>> {
        if !self.class.is_anti_pisot {
            return Ok(None);
        }
        let dmax = self.opts.dmax.max(self.f.degree());
        let r = find_height_one_multiple_with(self.f, dmax, &self.opts.search)?;
        if r.status != HeightOneStatus::Found {
            return Ok(None);
        }
        Ok(Some(RuleFiring {
            rule: RuleId::R5,
            conclusion: self.upgrade(true),
            certificate: json!({
                "conjugates_inside_unit_disc": 1,
                "height_one_multiple": r.witness.map(|w| w.to_string()),
            }),
        }))
    }

    fn r6(&self) -> Result<Option<RuleFiring>> {
        let (m, g) = self.f.power_structure();
        if m != 2 || self.class.is_pisot {
            return Ok(None);
        }
        let q2 = self.q.square()?;
        let gclass = classify(&g, &q2)?;
        if !gclass.is_pisot {
            return Ok(None);
        }
        Ok(Some(RuleFiring {
            rule: RuleId::R6,
            conclusion: Conclusion::DenseL0,
            certificate: json!({"square_poly": g.to_string(), "q_squared": idec(&gclass.q)}),
        }))
    }

    fn r7(&self) -> Result<Option<RuleFiring>> {
        let set = RootSet::new(self.f, self.opts.budget)?;
        let mut inv_q = self.q.inverse()?;
        for c in &self.class.conjugates {
            if c.real {
                continue;
            }
            let lambda = AlgebraicNumber::from_set(set.clone(), c.index);
            if (lambda.approx() - c.approx).norm() > 1e-6 {
                return Err(Error::InvariantViolation("conjugate index mismatch".into()));
            }
            let cert = interior_certificate(&lambda)?;
            if !cert.holds {
                continue;
            }
            let mut l = lambda.clone();
            let cmp = compare_modulus_sq(&mut l, &mut inv_q)?;
            if cmp.ordering == Ordering::Less {
                let base = cmp.alpha_sq.recip().map(|iv| idec(&iv.round_out(64)));
                return Ok(Some(RuleFiring {
                    rule: RuleId::R7,
                    conclusion: Conclusion::DenseL0,
                    certificate: json!({
                        "lambda": cdec(c.approx),
                        "interior": cert.to_json(),
                        "growth_base": base,
                        "q": idec(&self.class.q),
                    }),
                }));
            }
        }
        Ok(None)
    }
}

/// Evaluates every rule and returns the strongest supported conclusion.
pub fn verdict(f: &IntPolynomial, sel: &RootSelector) -> Result<Verdict> {
    verdict_with(f, sel, &VerdictOptions::default())
}

pub fn verdict_with(f: &IntPolynomial, sel: &RootSelector, opts: &VerdictOptions) -> Result<Verdict> {
    if f.degree() < 1 {
        return Err(Error::InvalidInput("verdict needs a polynomial of degree >= 1".into()));
    }
    let f = f.squarefree_part().primitive();
    let mut q = select_root(&f, sel, opts.budget)?;
    if q.cmp_rational(&BigRational::one())? != Ordering::Greater
        || q.cmp_rational(&BigRational::from_integer(2.into()))? != Ordering::Less
    {
        return Err(Error::InvalidInput("selected root must lie in (1, 2)".into()));
    }
    let class = classify(&f, &q)?;
    let sqrt2 = below_sqrt2(&q)?;
    let ctx = Ctx { f: &f, q: &q, class: &class, sqrt2, opts };

    let mut fired = Vec::new();
    fired.extend(ctx.r0()?);
    fired.extend(ctx.r1());
    fired.extend(ctx.r2()?);
    fired.extend(ctx.r3());
    fired.extend(ctx.r4()?);
    fired.extend(ctx.r5()?);
    fired.extend(ctx.r6()?);
    fired.extend(ctx.r7()?);

    let mut caveats = Vec::new();
    if !class.minimality_verified {
        caveats.push("minimal polynomial not verified: conjugate-based rules assume irreducibility".to_string());
    }
    let conclusion = if class.is_pisot {
        let dense: Vec<&str> =
            fired.iter().filter(|r| r.rule != RuleId::R1).map(|r| r.rule.as_str()).collect();
        if !dense.is_empty() {
            caveats.push(format!("Pisot q preempts denseness rules that also fired: {}", dense.join(", ")));
        }
        fired.retain(|r| r.rule == RuleId::R1);
        Conclusion::Discrete
    } else {
        fired.iter().map(|r| r.conclusion).max().unwrap_or(Conclusion::Inconclusive)
    };
    if conclusion == Conclusion::Inconclusive
        && class.conjugates.iter().any(|c| c.real && c.vs_inv_q.ordering == Ordering::Equal)
    {
        caveats.push("a real conjugate has q|alpha| = 1; no criterion covers this case".to_string());
    }
    if conclusion == Conclusion::Inconclusive {
        if class.is_salem {
            caveats.push("Salem q: no criterion applies, and whether l(q) = 0 is open".to_string());
        } else {
            caveats.push("no criterion applies to this q".to_string());
        }
    }
    if conclusion == Conclusion::DenseL0AndL0 && !sqrt2 {
        return Err(Error::InvariantViolation("L(q) = 0 claimed without q < sqrt 2".into()));
    }
    Ok(Verdict {
        poly: f.clone(),
        q: class.q.clone(),
        conclusion,
        rules_applied: fired,
        caveats,
        class,
        q_below_sqrt2: sqrt2,
    })
}

/// Finite-`n` data set beside a verdict.
#[derive(Clone, Debug)]
pub struct Crosscheck {
    pub conclusion: Conclusion,
    /// `(n, smallest positive element of Lambda_n)`.
    pub lambda_min: Vec<(usize, f64)>,
    /// `(n, z_n / q^n)`.
    pub ratios: Vec<(usize, f64)>,
    pub divergence: bool,
    /// Observations at odds with the verdict; never overrides it.
    pub tensions: Vec<String>,
    pub trend: String,
}

impl Crosscheck {
    pub fn to_json(&self) -> Value {
        json!({
            "conclusion": self.conclusion.as_str(),
            "lambda_min": self.lambda_min.iter().map(|(n, v)| json!({"n": n, "value": format!("{v:.12e}")})).collect::<Vec<_>>(),
            "ratios": self.ratios.iter().map(|(n, v)| json!({"n": n, "ratio": format!("{v:.12e}")})).collect::<Vec<_>>(),
            "divergence": self.divergence,
            "trend": self.trend,
            "tensions": self.tensions,
        })
    }
}

/// Runs count growth and smallest-positive-Lambda up to `n_max` and flags
/// tension with the verdict's conclusion.
pub fn empirical_crosscheck(
    f: &IntPolynomial,
    q: &AlgebraicNumber,
    v: &Verdict,
    n_max: usize,
) -> Result<Crosscheck> {
    let f = f.squarefree_part().primitive();
    let series = growth_ratio(&f, q, n_max)?;
    let ratios: Vec<(usize, f64)> = series.ratios.iter().enumerate().map(|(n, r)| (n, r.mid_f64())).collect();
    let mut lambda_min = Vec::new();
    for n in 1..=n_max {
        let l = smallest_positive_lambda(&f, q, n)?;
        lambda_min.push((n, l.value.mid_f64()));
    }
    let first = lambda_min.first().map(|x| x.1).unwrap_or(f64::NAN);
    let last = lambda_min.last().map(|x| x.1).unwrap_or(f64::NAN);
    let shrink = last / first;
    let trend = if shrink < 0.5 {
        format!("smallest positive Lambda shrinks by a factor {:.3e} from n=1 to n={n_max}", shrink)
    } else {
        format!("smallest positive Lambda stays within a factor {:.3} of its n=1 value", shrink)
    };
    let mut tensions = Vec::new();
    match v.conclusion {
        Conclusion::Discrete if shrink < 0.1 => {
            tensions.push("Discrete verdict but the smallest positive Lambda keeps shrinking".to_string())
        }
        Conclusion::DenseL0 | Conclusion::DenseL0AndL0 if shrink > 0.5 => {
            tensions.push("denseness verdict but the smallest positive Lambda has not decreased yet".to_string())
        }
        _ => {}
    }
    Ok(Crosscheck {
        conclusion: v.conclusion,
        lambda_min,
        ratios,
        divergence: series.divergence,
        tensions,
        trend,
    })
}
