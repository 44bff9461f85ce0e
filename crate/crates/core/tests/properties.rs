use proptest::prelude::*;
use spectra_core::counting::{count_distinct, verify_inversion};
use spectra_core::heightsearch::{find_height_one_multiple, HeightOneStatus};
use spectra_core::polyalg::IntPolynomial;

fn height_one(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg)
        .prop_flat_map(|d| (prop::collection::vec(-1i64..=1, d - 1), prop::bool::ANY, prop::bool::ANY))
        .prop_map(|(mid, s0, sd)| {
            let mut c = vec![if s0 { 1 } else { -1 }];
            c.extend(mid);
            c.push(if sd { 1 } else { -1 });
            IntPolynomial::from_i64(&c)
        })
}

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-3i64..=3, 2..=6).prop_filter_map("nonzero leading and constant", |c| {
        (c[0] != 0 && *c.last().unwrap() != 0).then(|| IntPolynomial::from_i64(&c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn reverse_is_an_involution(f in small_poly()) {
        prop_assert_eq!(f.reverse().unwrap().reverse().unwrap(), f);
    }

    #[test]
    fn product_divides_back(f in small_poly(), g in small_poly()) {
        let p = &f * &g;
        prop_assert_eq!(p.div_exact_int(&g), Some(f));
    }

    #[test]
    fn graeffe_keeps_degree(f in small_poly()) {
        prop_assert_eq!(f.graeffe().degree(), f.degree());
    }

    #[test]
    fn counts_within_bounds(f in height_one(6), n in 0usize..9) {
        prop_assume!(f.is_squarefree());
        let z = count_distinct(&f, n).unwrap();
        let z1 = count_distinct(&f, n + 1).unwrap();
        prop_assert!(z >= 1 && z <= 1 << (n + 1));
        prop_assert!(z <= z1 && z1 <= 2 * z);
        prop_assert!(verify_inversion(&f, n).unwrap());
    }

    #[test]
    fn height_one_polys_are_found(f in height_one(8)) {
        let r = find_height_one_multiple(&f, 10).unwrap();
        prop_assert_eq!(r.status, HeightOneStatus::Found);
        prop_assert!(r.witness.unwrap().degree() <= f.degree());
    }
}
