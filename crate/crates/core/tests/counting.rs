use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectra_core::counting::{
    count_distinct, count_distinct_algebraic, count_distinct_numeric, growth_ratio,
    power_count_identity, verify_inversion,
};
use spectra_core::polyalg::{isolate_roots, interval::rat, AlgebraicNumber, IntPolynomial, DEFAULT_BUDGET};
use spectra_core::spectrum::{enumerate_spectrum, DigitSet};
use spectra_core::Error;

const GOLDEN_COUNTS: [u64; 21] = [
    2, 4, 7, 12, 20, 33, 54, 88, 143, 232, 376, 609, 986, 1596, 2583, 4180, 6764, 10945, 17710,
    28656, 46367,
];
const QUARTIC_COUNTS: [u64; 21] = [
    2, 4, 8, 16, 28, 48, 82, 136, 220, 352, 556, 864, 1330, 2034, 3075, 4614, 6882, 10204, 15032,
    22036, 32180,
];

fn poly(text: &str) -> IntPolynomial {
    text.parse().unwrap()
}

fn top_root(f: &IntPolynomial) -> AlgebraicNumber {
    AlgebraicNumber::real_roots(f, DEFAULT_BUDGET).unwrap().pop().unwrap()
}

#[test]
fn golden_counts() {
    let f = poly("x^2 - x - 1");
    for (n, &z) in GOLDEN_COUNTS.iter().enumerate() {
        assert_eq!(count_distinct(&f, n).unwrap(), z, "n={n}");
    }
}

#[test]
fn quartic_counts_and_relation_collapse() {
    let f = poly("x^4 - x - 1");
    assert!(count_distinct(&f, 4).unwrap() < 32);
    let s = growth_ratio(&f, &top_root(&f), 20).unwrap();
    assert_eq!(s.counts, QUARTIC_COUNTS);
}

#[test]
fn binary_integers_distinct() {
    let f = poly("x - 2");
    for n in 0..12 {
        assert_eq!(count_distinct(&f, n).unwrap(), 1 << (n + 1));
    }
}

#[test]
fn count_matches_spectrum_length() {
    for text in ["x^2 - x - 1", "x^4 - x - 1", "x^4 - x^3 - x^2 - x + 1"] {
        let f = poly(text);
        let q = top_root(&f);
        for n in [6, 11] {
            let r = enumerate_spectrum(&f, &q, n, &DigitSet::binary()).unwrap();
            assert_eq!(r.len() as u64, count_distinct(&f, n).unwrap(), "{text} n={n}");
        }
    }
}

#[test]
fn numeric_agrees_at_every_root() {
    for text in ["x^5 - x^4 + x^2 - x - 1", "x^4 - x - 1"] {
        let f = poly(text);
        let exact = count_distinct(&f, 10).unwrap();
        for b in isolate_roots(&f, &rat(1, 1 << 60)).unwrap() {
            assert_eq!(count_distinct_numeric(b.center_f64(), 10, 1e-9).unwrap(), exact, "{text}");
        }
    }
    assert_eq!(count_distinct_algebraic(&top_root(&poly("x^2 - x - 1")), 2).unwrap(), 7);
}

#[test]
fn numeric_small_beta() {
    assert_eq!(count_distinct_numeric(Complex64::new(0.5, 0.0), 6, 1e-12).unwrap(), 128);
}

#[test]
fn inversion_on_examples() {
    for text in ["x^2 - x - 1", "x^4 - x - 1"] {
        for n in 0..=12 {
            assert!(verify_inversion(&poly(text), n).unwrap());
        }
    }
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

#[test]
fn inversion_on_random_height_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let f = random_height_one(&mut rng);
        for n in 0..=10 {
            assert!(verify_inversion(&f, n).unwrap(), "{f} n={n}");
        }
    }
}

#[test]
fn power_identity() {
    let salem_cube = poly("x^12 - x^9 - x^6 - x^3 + 1");
    for k in 1..=3 {
        assert!(power_count_identity(&salem_cube, k).unwrap());
    }
    let f = poly("x^4 + x^2 + 1");
    for k in 1..=4 {
        assert!(power_count_identity(&f, k).unwrap());
    }
    assert_eq!(power_count_identity(&poly("x^4 - x - 1"), 2), Err(Error::NoPowerStructure));
}

#[test]
fn golden_ratio_band() {
    let f = poly("x^2 - x - 1");
    let s = growth_ratio(&f, &top_root(&f), 20).unwrap();
    assert_eq!(s.counts, GOLDEN_COUNTS);
    for r in &s.ratios {
        let v = r.mid_f64();
        assert!((2.0..=3.0652).contains(&v), "{v}");
    }
    assert!(!s.divergence);
}

#[test]
fn quartic_ratio_diverges() {
    let f = poly("x^4 - x - 1");
    let s = growth_ratio(&f, &top_root(&f), 20).unwrap();
    assert!((s.ratios[20].mid_f64() - 595.79).abs() < 0.01);
    assert!(s.divergence);
    let csv = s.to_csv();
    assert!(csv.starts_with("n,z_n,ratio_decimal\n0,2,2"));
    assert_eq!(csv.lines().count(), 22);
}

#[test]
fn lower_growth_bound_calibrated() {
    for text in ["x^2 - x - 1", "x^4 - x - 1", "x^4 - x^3 - x^2 - x + 1"] {
        let f = poly(text);
        let s = growth_ratio(&f, &top_root(&f), 18).unwrap();
        let c = s.ratios[..=10].iter().map(|r| r.mid_f64()).fold(f64::MAX, f64::min);
        for r in &s.ratios[11..] {
            assert!(r.mid_f64() >= c * (1.0 - 1e-12), "{text}");
        }
    }
}
