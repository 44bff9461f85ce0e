use num_rational::BigRational;
use spectra_core::criteria::{
    empirical_crosscheck, select_root, verdict, Conclusion, RootSelector, RuleId,
};
use spectra_core::fixtures::FIXTURES;
use spectra_core::polyalg::{IntPolynomial, DEFAULT_BUDGET};

fn poly(text: &str) -> IntPolynomial {
    text.parse().unwrap()
}

#[test]
fn fixture_verdicts_and_rule_sets() {
    for fx in FIXTURES {
        let v = verdict(&fx.polynomial(), &RootSelector::Largest).unwrap();
        assert_eq!(v.conclusion, fx.conclusion, "example {}", fx.tag);
        assert_eq!(v.rule_ids(), fx.rules, "example {}", fx.tag);
        assert_eq!(v.exit_code(), if fx.conclusion == Conclusion::Inconclusive { 2 } else { 0 });
    }
}

#[test]
fn golden_ratio_is_discrete() {
    let v = verdict(&poly("x^2 - x - 1"), &RootSelector::Largest).unwrap();
    assert_eq!(v.conclusion, Conclusion::Discrete);
    assert_eq!(v.rule_ids(), vec![RuleId::R1]);
}

#[test]
fn square_root_of_golden_ratio_keeps_l_open() {
    let v = verdict(&poly("x^4 - x^2 - 1"), &RootSelector::Largest).unwrap();
    assert_eq!(v.conclusion, Conclusion::DenseL0);
    let ids = v.rule_ids();
    assert!(ids.contains(&RuleId::R2) && ids.contains(&RuleId::R6), "{ids:?}");
    assert!(v.q_below_sqrt2);
}

#[test]
fn fourth_power_structure_upgrades_unit_product() {
    let v = verdict(&poly("x^8 - x^4 - 1"), &RootSelector::Largest).unwrap();
    assert_eq!(v.conclusion, Conclusion::DenseL0AndL0);
    assert!(v.rule_ids().contains(&RuleId::R4));
}

#[test]
fn above_sqrt2_never_claims_l() {
    for fx in FIXTURES {
        let v = verdict(&fx.polynomial(), &RootSelector::Largest).unwrap();
        if v.conclusion == Conclusion::DenseL0AndL0 {
            assert!(v.q_below_sqrt2, "example {}", fx.tag);
        }
    }
}

#[test]
fn salem_note_and_json_shape() {
    let fx = FIXTURES.iter().find(|f| f.tag == "8b").unwrap();
    let v = verdict(&fx.polynomial(), &RootSelector::Largest).unwrap();
    assert!(v.class.is_salem);
    assert!(v.caveats.iter().any(|c| c.contains("Salem")));
    let j = v.to_json();
    assert_eq!(j["conclusion"], "Inconclusive");
    assert!(j["rules_applied"].as_array().unwrap().is_empty());

    let ex6 = FIXTURES.iter().find(|f| f.tag == "6").unwrap();
    let j = verdict(&ex6.polynomial(), &RootSelector::Largest).unwrap().to_json();
    let r = &j["rules_applied"][0];
    assert_eq!(r["rule"], "R7");
    assert!(r["citation"].as_str().unwrap().contains("l(q) = 0"));
    let base: f64 = r["certificate"]["growth_base"][0].as_str().unwrap().parse().unwrap();
    assert!((base - 1.81696).abs() < 1e-4, "{base}");
}

#[test]
fn selector_errors() {
    let f = poly("x^4 - x - 1");
    assert!(verdict(&f, &RootSelector::Index(0)).is_err());
    let iv = RootSelector::Interval(BigRational::from_integer(5.into()), BigRational::from_integer(6.into()));
    assert!(verdict(&f, &iv).is_err());
    assert!(verdict(&poly("x^2 - 5"), &RootSelector::Largest).is_err());
}

#[test]
fn crosscheck_agrees_with_verdicts() {
    let cases = [("x^2 - x - 1", 22), ("x^4 - x - 1", 24), ("x^4 - x^3 - x^2 - x + 1", 22)];
    for (text, n) in cases {
        let f = poly(text);
        let q = select_root(&f, &RootSelector::Largest, DEFAULT_BUDGET).unwrap();
        let v = verdict(&f, &RootSelector::Largest).unwrap();
        let c = empirical_crosscheck(&f, &q, &v, n).unwrap();
        assert!(c.tensions.is_empty(), "{text}: {:?}", c.tensions);
        assert_eq!(c.conclusion, v.conclusion);
        let last = c.lambda_min.last().unwrap().1;
        match text {
            "x^2 - x - 1" => assert!(c.lambda_min.iter().all(|&(_, l)| l >= 0.1)),
            "x^4 - x - 1" => assert!(last < 1e-2),
            _ => assert_eq!(v.conclusion, Conclusion::Inconclusive),
        }
    }
}
