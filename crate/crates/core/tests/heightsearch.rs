use num_bigint::BigInt;
use num_traits::One;
use spectra_core::fixtures::FIXTURES;
use spectra_core::heightsearch::{
    claim_exhaustive, claim_sampler, find_height_one_multiple, min_triple_product,
    three_root_filter, HeightOneStatus, CLAIM_BOUND_F64,
};
use spectra_core::polyalg::IntPolynomial;

fn poly(text: &str) -> IntPolynomial {
    text.parse().unwrap()
}

fn fixture_poly(tag: &str) -> IntPolynomial {
    FIXTURES.iter().find(|f| f.tag == tag).unwrap().polynomial()
}

#[test]
fn height_one_inputs_are_their_own_witness() {
    for text in ["x^2 - x - 1", "x^4 - x - 1", "x^4 - x^3 - x^2 - x + 1"] {
        let f = poly(text);
        let r = find_height_one_multiple(&f, 20).unwrap();
        assert_eq!(r.status, HeightOneStatus::Found);
        assert_eq!(r.witness.unwrap().degree(), f.degree());
    }
}

#[test]
fn witnesses_divide_exactly() {
    // x^2 + 2x + 2 has no unit-constant problem but is not height one
    for text in ["x^3 + 2x^2 + 2x + 1", "x^2 + 1", "x^4 + 2x^2 + 1"] {
        let f = poly(text);
        let r = find_height_one_multiple(&f, 12).unwrap();
        assert_eq!(r.status, HeightOneStatus::Found, "{text}");
        let w = r.witness.unwrap();
        assert!(w.is_height_one());
        assert_eq!(w.div_exact_int(&f), r.cofactor);
    }
}

#[test]
fn three_is_not_height_one() {
    let r = find_height_one_multiple(&poly("x - 3"), 10).unwrap();
    assert_eq!(r.status, HeightOneStatus::NoneUpTo(10));
}

#[test]
fn square_of_seventh_example_root() {
    let g = fixture_poly("7").graeffe();
    let r = find_height_one_multiple(&g, 20).unwrap();
    assert_eq!(r.status, HeightOneStatus::NoneUpTo(20));
    let cert = three_root_filter(&g.reverse().unwrap()).unwrap().expect("certificate");
    let v = cert.product.mid_f64();
    assert!((v - 0.226024).abs() < 1e-5, "{v}");
    assert!(cert.product.hi < num_rational::BigRational::new(BigInt::from(32476), BigInt::from(100000)));
    assert!(r.filter_certificate.is_some());
}

#[test]
fn filter_absent_for_height_one_roots() {
    assert!(three_root_filter(&poly("x^4 - x - 1")).unwrap().is_none());
    assert!(three_root_filter(&poly("x^3 - 2")).unwrap().is_none());
}

#[test]
fn certificate_implies_no_multiple() {
    let f = fixture_poly("7").graeffe().reverse().unwrap();
    assert!(three_root_filter(&f).unwrap().is_some());
    for d in [18, 19, 20] {
        let r = find_height_one_multiple(&f, d).unwrap();
        assert_eq!(r.status, HeightOneStatus::NoneUpTo(d));
    }
}

#[test]
fn product_of_cube_roots_of_unity_family() {
    let iv = min_triple_product(&poly("x^3 + x^2 + x + 1")).unwrap().unwrap();
    assert!(iv.contains(&num_rational::BigRational::one()));
}

#[test]
fn exhaustive_degree_three() {
    let r = claim_exhaustive(3).unwrap();
    assert_eq!(r.samples, 54);
    assert!((r.minimum_f64() - 1.0).abs() < 1e-9);
    assert!(r.respects_bound());
}

#[test]
fn sampler_is_deterministic_and_respects_bound() {
    let a = claim_sampler(10, 300, 7).unwrap();
    let b = claim_sampler(10, 300, 7).unwrap();
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.minimum, b.minimum);
    assert!(a.minimum_f64() >= CLAIM_BOUND_F64);
}
