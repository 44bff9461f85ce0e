//! The eight worked examples with their printed approximations and the
//! pinned verdict expectations.

use num_complex::Complex64;

use crate::criteria::{Conclusion, RuleId};
use crate::error::Result;
use crate::polyalg::interval::rat;
use crate::polyalg::{isolate_roots, IntPolynomial};

/// A printed approximation and how to recover it from the roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Probe {
    /// The selected real root `q`.
    Q,
    /// Some root lies within tolerance of this complex value.
    Root { re: f64, im: f64 },
    /// Some conjugate of `q` has this modulus.
    ConjugateModulus,
    /// Some conjugate `alpha` has `|alpha| q` equal to the value.
    ModulusTimesQ,
    /// `1/q`.
    InverseQ,
    /// Some conjugate `lambda` has `|lambda|^-2` equal to the value.
    InverseModulusSquared,
    /// `|q^-2 u^-2 conj(u)^-2|` for the largest-modulus conjugate `u`.
    InverseSquareTriple,
}

#[derive(Clone, Copy, Debug)]
pub struct Printed {
    pub label: &'static str,
    pub probe: Probe,
    pub value: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub example: u8,
    pub tag: &'static str,
    pub poly: &'static str,
    pub conclusion: Conclusion,
    pub rules: &'static [RuleId],
    pub printed: &'static [Printed],
}

impl Fixture {
    pub fn polynomial(&self) -> IntPolynomial {
        self.poly.parse().expect("fixture polynomial parses")
    }
}

/// Tolerance for printed approximations.
pub const PRINTED_TOL: f64 = 1e-4;

const fn pr(label: &'static str, probe: Probe, value: f64) -> Printed {
    Printed { label, probe, value }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        example: 1,
        tag: "1",
        poly: "x^4 - x - 1",
        conclusion: Conclusion::DenseL0AndL0,
        rules: &[RuleId::R3, RuleId::R5],
        printed: &[
            pr("q", Probe::Q, 1.22074),
            pr("alpha", Probe::Root { re: -0.72449, im: 0.0 }, -0.72449),
        ],
    },
    Fixture {
        example: 2,
        tag: "2",
        poly: "x^5 - x^4 - x^2 - x + 1",
        conclusion: Conclusion::DenseL0,
        rules: &[RuleId::R3],
        printed: &[
            pr("q", Probe::Q, 1.52626),
            pr("alpha", Probe::Root { re: 0.59509, im: 0.0 }, 0.59509),
        ],
    },
    Fixture {
        example: 3,
        tag: "3",
        poly: "x^5 - x^4 + x^2 - x - 1",
        conclusion: Conclusion::DenseL0AndL0,
        rules: &[RuleId::R0, RuleId::R3],
        printed: &[
            pr("q", Probe::Q, 1.26278),
            pr("|alpha|", Probe::ConjugateModulus, 0.74090),
            pr("|alpha| q", Probe::ModulusTimesQ, 0.93559),
        ],
    },
    Fixture {
        example: 4,
        tag: "4",
        poly: "x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1",
        conclusion: Conclusion::DenseL0,
        rules: &[RuleId::R3],
        printed: &[
            pr("q", Probe::Q, 1.52501),
            pr("alpha", Probe::Root { re: 0.3741, im: 0.52404 }, 0.3741),
            pr("|alpha|", Probe::ConjugateModulus, 0.64387),
            pr("1/q", Probe::InverseQ, 0.65574),
        ],
    },
    Fixture {
        example: 5,
        tag: "5",
        poly: "x^12 - x^9 - x^6 - x^3 + 1",
        conclusion: Conclusion::DenseL0AndL0,
        rules: &[RuleId::R2, RuleId::R4],
        printed: &[pr("q", Probe::Q, 1.19863)],
    },
    Fixture {
        example: 6,
        tag: "6",
        poly: "x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1",
        conclusion: Conclusion::DenseL0,
        rules: &[RuleId::R7],
        printed: &[
            pr("q", Probe::Q, 1.5006),
            pr("lambda", Probe::Root { re: 0.02625, im: 0.7414 }, 0.02625),
            pr("|lambda|^-2", Probe::InverseModulusSquared, 1.81696),
        ],
    },
    Fixture {
        example: 7,
        tag: "7",
        poly: "x^18 + x^16 - x^14 - x^11 - x^10 - x^9 - x^8 - x^7 - x^6 - x^5 - x^4 - x^3 - x^2 - x - 1",
        conclusion: Conclusion::DenseL0AndL0,
        rules: &[RuleId::R0, RuleId::R2],
        printed: &[
            pr("q", Probe::Q, 1.22289),
            pr("u", Probe::Root { re: -0.03958, im: 1.3109 }, -0.03958),
            pr("conj u", Probe::Root { re: -0.03958, im: -1.3109 }, -0.03958),
            pr("triple product", Probe::InverseSquareTriple, 0.226024),
        ],
    },
    Fixture {
        example: 8,
        tag: "8a",
        poly: "x^5 - x^4 - x^3 + x - 1",
        conclusion: Conclusion::Inconclusive,
        rules: &[],
        printed: &[
            pr("q", Probe::Q, 1.54991),
            pr("|alpha| large", Probe::ConjugateModulus, 1.04492),
            pr("|alpha| small", Probe::ConjugateModulus, 0.76871),
        ],
    },
    Fixture {
        example: 8,
        tag: "8b",
        poly: "x^4 - x^3 - x^2 - x + 1",
        conclusion: Conclusion::Inconclusive,
        rules: &[],
        printed: &[pr("q", Probe::Q, 1.72208)],
    },
];

/// Outcome of evaluating one printed approximation.
#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    pub label: &'static str,
    pub expected: f64,
    pub computed: f64,
    pub pass: bool,
}

/// Evaluates every printed approximation of `fx` against certified roots
/// isolated to `1e-12`.
pub fn check_printed(fx: &Fixture) -> Result<Vec<ProbeOutcome>> {
    let f = fx.polynomial();
    let boxes = isolate_roots(&f, &rat(1, 1_000_000_000_000))?;
    let roots: Vec<Complex64> = boxes.iter().map(|b| b.center_f64()).collect();
    let q = roots
        .iter()
        .zip(boxes.iter())
        .filter(|(_, b)| b.real)
        .map(|(z, _)| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let conj: Vec<Complex64> = roots.iter().copied().filter(|z| (z.re - q).abs() > 1e-9 || z.im != 0.0).collect();
    let mut out = Vec::new();
    for p in fx.printed {
        let closest = |vals: Vec<f64>| {
            vals.into_iter()
                .min_by(|a, b| (a - p.value).abs().total_cmp(&(b - p.value).abs()))
                .unwrap_or(f64::NAN)
        };
        let computed = match p.probe {
            Probe::Q => q,
            Probe::Root { re, im } => {
                let target = Complex64::new(re, im);
                let z = roots
                    .iter()
                    .min_by(|a, b| (*a - target).norm().total_cmp(&(*b - target).norm()))
                    .copied()
                    .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
                if (z - target).norm() <= PRINTED_TOL * 2f64.sqrt() {
                    z.re
                } else {
                    f64::NAN
                }
            }
            Probe::ConjugateModulus => closest(conj.iter().map(|z| z.norm()).collect()),
            Probe::ModulusTimesQ => closest(conj.iter().map(|z| z.norm() * q).collect()),
            Probe::InverseQ => 1.0 / q,
            Probe::InverseModulusSquared => closest(conj.iter().map(|z| z.norm_sqr().recip()).collect()),
            Probe::InverseSquareTriple => {
                let u = conj.iter().map(|z| z.norm()).fold(0.0, f64::max);
                1.0 / (q * q * u.powi(4))
            }
        };
        let pass = (computed - p.value).abs() <= PRINTED_TOL;
        out.push(ProbeOutcome { label: p.label, expected: p.value, computed, pass });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_with_expected_degrees() {
        let degs: Vec<usize> = FIXTURES.iter().map(|f| f.polynomial().degree()).collect();
        assert_eq!(degs, vec![4, 5, 5, 8, 12, 11, 18, 5, 4]);
    }
}
