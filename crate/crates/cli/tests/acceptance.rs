//! The eight acceptance criteria, one pass/fail line each, with wall-clock
//! limits enforced as part of each verdict.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectra_core::attractor::{connectivity, interior_certificate, zn_lower_bound, Connectivity};
use spectra_core::counting::{count_distinct, power_count_identity, verify_inversion};
use spectra_core::fixtures::{check_printed, FIXTURES};
use spectra_core::heightsearch::{claim_sampler, find_height_one_multiple, three_root_filter, HeightOneStatus};
use spectra_core::polyalg::interval::rat;
use spectra_core::polyalg::{AlgebraicNumber, IntPolynomial, RootSet, DEFAULT_BUDGET};
use spectra_core::spectrum::{enumerate_spectrum, min_gap, pigeonhole_check, smallest_positive_lambda, DigitSet, ValueOracle};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(text: &str) -> IntPolynomial {
    text.parse().unwrap()
}

fn fixture_poly(tag: &str) -> IntPolynomial {
    FIXTURES.iter().find(|f| f.tag == tag).unwrap().polynomial()
}

fn largest_root(f: &IntPolynomial) -> AlgebraicNumber {
    AlgebraicNumber::real_roots(f, DEFAULT_BUDGET).unwrap().pop().unwrap()
}

fn root_near(f: &IntPolynomial, target: Complex64) -> AlgebraicNumber {
    let set = RootSet::new(f, DEFAULT_BUDGET).unwrap();
    let i = (0..set.len())
        .min_by(|&a, &b| {
            (set.root(a).center_f64() - target).norm().total_cmp(&(set.root(b).center_f64() - target).norm())
        })
        .unwrap();
    AlgebraicNumber::from_set(set, i)
}

fn root_reproduction() -> Check {
    let mut probes = 0;
    for fx in FIXTURES {
        for p in check_printed(fx).map_err(|e| e.to_string())? {
            ensure(p.pass, || format!("example {} {}: {} vs {}", fx.tag, p.label, p.computed, p.expected))?;
            probes += 1;
        }
    }
    Ok(format!("{probes} printed values within 1e-4"))
}

fn verdict_regression() -> Check {
    let mut out = Vec::new();
    let code = spectra_cli::run_with(vec!["spectra".into(), "examples".into()], None, &mut out);
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let summary = text.lines().last().unwrap_or_default().to_string();
    ensure(code == 0 && summary == "8/8 pass", || format!("exit {code}:\n{text}"))?;
    Ok(summary)
}

fn random_height_one(rng: &mut ChaCha8Rng) -> IntPolynomial {
    loop {
        let d = rng.gen_range(1..=8);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-1..=1)).collect();
        c[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
        c[d] = if rng.gen_bool(0.5) { 1 } else { -1 };
        let f = IntPolynomial::from_i64(&c);
        if f.is_squarefree() {
            return f;
        }
    }
}

fn exact_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let f = random_height_one(&mut rng);
        for n in 0..=10 {
            ensure(verify_inversion(&f, n).map_err(|e| e.to_string())?, || format!("inversion {f} n={n}"))?;
        }
    }
    for (text, kmax) in [("x^12 - x^9 - x^6 - x^3 + 1", 3), ("x^4 + x^2 + 1", 4)] {
        let f = poly(text);
        for k in 1..=kmax {
            ensure(power_count_identity(&f, k).map_err(|e| e.to_string())?, || format!("power identity {text} k={k}"))?;
        }
    }
    Ok("50 inversions for n <= 10; power identities hold".into())
}

fn lower_bounds() -> Check {
    let cases = [("4", Complex64::new(0.3741, 0.52404), 1u8), ("6", Complex64::new(0.02625, 0.7414), 2u8)];
    for (tag, near, clause) in cases {
        let f = fixture_poly(tag);
        let lam = root_near(&f, near);
        for n in 0..=14 {
            let b = zn_lower_bound(&lam, n).map_err(|e| e.to_string())?;
            ensure(b.clause == clause, || format!("example {tag}: clause {} not {clause}", b.clause))?;
            let z = count_distinct(&f, n).map_err(|e| e.to_string())?;
            ensure(b.certified_below(z), || format!("example {tag} n={n}: {z} < {}", b.value))?;
        }
    }
    Ok("counts meet both bounds for n <= 14".into())
}

fn pigeonhole_duality() -> Check {
    for text in ["x^2 - x - 1", "x^4 - x - 1", "x^4 - x^3 - x^2 - x + 1"] {
        let f = poly(text);
        let q = largest_root(&f);
        for n in 1..=20 {
            let r = enumerate_spectrum(&f, &q, n, &DigitSet::binary()).map_err(|e| e.to_string())?;
            let g = r.gap_residue(min_gap(&r).map_err(|e| e.to_string())?);
            let l = smallest_positive_lambda(&f, &q, n).map_err(|e| e.to_string())?;
            let mut o = ValueOracle::new(&q);
            let same = o.sign(&g.sub(&l.residue)).map_err(|e| e.to_string())? == Ordering::Equal;
            ensure(same, || format!("{text} n={n}: min gap differs from smallest positive lambda"))?;
            ensure(pigeonhole_check(&r).map_err(|e| e.to_string())?, || format!("{text} n={n}: pigeonhole"))?;
        }
    }
    Ok("exact equality and pigeonhole for three q, n <= 20".into())
}

/// Smallest positive element of Lambda_n for the quartic root at the n
/// where it changes, from a brute-force oracle.
const QUARTIC_LAMBDA: &[(usize, f64)] = &[
    (5, 0.0594843578),
    (11, 0.005272964063),
    (16, 0.00173457524),
    (22, 0.0004674195207),
    (24, 0.0004674195207),
];

fn pisot_contrast() -> Check {
    let golden = poly("x^2 - x - 1");
    let q = largest_root(&golden);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for n in 5..=25 {
        let v = smallest_positive_lambda(&golden, &q, n).map_err(|e| e.to_string())?.value.mid_f64();
        ensure(v >= 0.1 && ((v - inv_phi) / inv_phi).abs() < 1e-9, || format!("golden n={n}: {v}"))?;
    }
    let quartic = poly("x^4 - x - 1");
    let q = largest_root(&quartic);
    let mut prev = f64::INFINITY;
    for n in 1..=24 {
        let v = smallest_positive_lambda(&quartic, &q, n).map_err(|e| e.to_string())?.value.mid_f64();
        ensure(v <= prev, || format!("quartic n={n}: {v} > {prev}"))?;
        if let Some(&(_, want)) = QUARTIC_LAMBDA.iter().find(|&&(m, _)| m == n) {
            ensure(((v - want) / want).abs() < 1e-8, || format!("quartic n={n}: {v} vs {want}"))?;
        }
        prev = v;
    }
    ensure(prev < 1e-2, || format!("quartic n=24: {prev}"))?;
    Ok(format!("golden constant {inv_phi:.10}; quartic falls to {prev:.4e} at n=24"))
}

fn claim_stress() -> Check {
    let bound = BigRational::new(32476.into(), 100000.into());
    let s = claim_sampler(12, 10_000, 1).map_err(|e| e.to_string())?;
    ensure(s.minimum.lo >= bound, || format!("sampler minimum {}", s.minimum_f64()))?;
    let g = fixture_poly("7").graeffe().squarefree_part();
    let cert = three_root_filter(&g.reverse().map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?
        .ok_or("no filter certificate for the square")?;
    let v = cert.product.mid_f64();
    ensure((v - 0.226024).abs() < 1e-5 && cert.product.hi < bound, || format!("certificate {v}"))?;
    let r = find_height_one_multiple(&g, 20).map_err(|e| e.to_string())?;
    ensure(r.status == HeightOneStatus::NoneUpTo(20), || format!("search status {:?}", r.status))?;
    Ok(format!("sampler minimum {:.5}; certificate {v:.6}; NoneUpTo(20)", s.minimum_f64()))
}

fn attractor_sanity() -> Check {
    let c4 = connectivity(&AlgebraicNumber::rational(&rat(2, 5)), 40).map_err(|e| e.to_string())?;
    ensure(matches!(c4, Connectivity::Disconnected { .. }), || format!("0.4: {}", c4.label()))?;
    let c7 = connectivity(&AlgebraicNumber::rational(&rat(7, 10)), 40).map_err(|e| e.to_string())?;
    ensure(matches!(c7, Connectivity::Connected { .. }), || format!("0.7: {}", c7.label()))?;
    let lam = root_near(&fixture_poly("6"), Complex64::new(0.02625, 0.7414));
    let c = interior_certificate(&lam).map_err(|e| e.to_string())?;
    let (re, slack) = (c.re.mid_f64(), c.slack.mid_f64());
    ensure(c.holds && c.re.hi < c.slack.lo, || "interior inequality not certified".into())?;
    ensure((re - 0.02625).abs() < 1e-4 && (slack - 0.05037).abs() < 1e-4, || format!("{re} vs {slack}"))?;
    Ok(format!("0.4 disconnected, 0.7 connected, {re:.5} < {slack:.5}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("root reproduction", root_reproduction, 5),
        ("verdict regression", verdict_regression, 30),
        ("exact identity suites", exact_identities, 60),
        ("count lower bounds", lower_bounds, 120),
        ("pigeonhole and duality", pigeonhole_duality, 120),
        ("pisot vs non-pisot", pisot_contrast, 300),
        ("claim stress test", claim_stress, 600),
        ("attractor sanity", attractor_sanity, 10),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let took = t.elapsed();
        let line = match outcome {
            Ok(detail) if took <= Duration::from_secs(*limit) => format!("PASS  {detail}"),
            Ok(detail) => format!("FAIL  over {limit}s limit; {detail}"),
            Err(msg) => format!("FAIL  {msg}"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {} {name:<24} {:>7.2}s  {line}", i + 1, took.as_secs_f64());
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
