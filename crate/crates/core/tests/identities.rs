use num_traits::{One, Zero};
use proptest::prelude::*;

use vandint::divdiff::{
    divided_difference, divided_difference_sum_form, scaled_divided_difference, vandermonde_value,
};
use vandint::exact::{factorial, int, rat, to_f64, Rational};
use vandint::funcs::AnalyticFunction;
use vandint::identity::{
    check_integral_identity_exact, check_integral_identity_numeric,
    divided_difference_via_integral, IdentityReport, Value,
};
use vandint::points::PointSequence;
use vandint::quad::{weighted_integral, Cubature};

fn increasing_rationals(max_len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set((-60i64..=60, 1i64..=5), 2..=max_len)
        .prop_map(|set| {
            let mut v: Vec<Rational> = set.into_iter().map(|(p, q)| rat(p, q)).collect();
            v.sort();
            v.dedup();
            v
        })
        .prop_filter("at least two distinct points", |v| v.len() >= 2)
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = AnalyticFunction> {
    prop::collection::vec(-9i64..=9, 1..=max_degree + 1)
        .prop_map(|c| AnalyticFunction::polynomial(c.into_iter().map(int).collect()))
}

fn float_points(len: usize) -> impl Strategy<Value = PointSequence<f64>> {
    prop::collection::vec(0.2f64..1.0, len).prop_map(|gaps| {
        let mut acc = -1.5;
        let values = gaps
            .into_iter()
            .map(|g| {
                acc += g;
                acc
            })
            .collect();
        PointSequence::new(values).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_identity_holds(x in increasing_rationals(5), f in polynomial(7)) {
        let x = PointSequence::new(x).unwrap();
        let report = check_integral_identity_exact(&x, &f, 6).unwrap();
        prop_assert!(report.passed, "{}", report.to_json());
    }

    #[test]
    fn floating_identity_matches_exact(x in increasing_rationals(4), f in polynomial(6)) {
        let exact = PointSequence::new(x).unwrap();
        let Value::Exact(lhs) = check_integral_identity_exact(&exact, &f, 6).unwrap().lhs else {
            unreachable!()
        };
        let numeric = weighted_integral(&exact.to_f64(), &f, Cubature::default()).unwrap().value;
        let truth = to_f64(&lhs);
        prop_assert!((numeric - truth).abs() <= 1e-9 * truth.abs().max(1.0), "{numeric} vs {truth}");
    }

    #[test]
    fn three_routes_agree_on_polynomials(y in float_points(5), f in polynomial(8)) {
        let table = divided_difference(&y, &f).unwrap().value;
        let sum = divided_difference_sum_form(&y, &f).unwrap().value;
        let integral = divided_difference_via_integral(&y, &f, Cubature::default()).unwrap();
        let scale = 1.0 + table.abs();
        prop_assert!((table - sum).abs() <= 1e-8 * scale);
        prop_assert!((table - integral).abs() <= 1e-8 * scale);
    }

    #[test]
    fn vandermonde_integral_through_cubature(x in float_points(5)) {
        // f = a^n / n! has f^(n) = 1, so the weighted integral is int V.
        let n = x.dim();
        let f = AnalyticFunction::monomial(Rational::one() / factorial(n), n);
        let integral = weighted_integral(&x, &f, Cubature::default()).unwrap().value;
        let expected = vandermonde_value(x.values()) / to_f64(&factorial(n));
        prop_assert!((integral - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn right_side_is_scaled_divided_difference(x in increasing_rationals(6), f in polynomial(6)) {
        let x = PointSequence::new(x).unwrap();
        let y = x.y_from_x();
        let dd = divided_difference(&y, &f).unwrap().value;
        prop_assert_eq!(scaled_divided_difference(&x, &f).unwrap(), vandermonde_value(x.values()) * dd);
    }
}

#[test]
fn degree_below_n_gives_zero_on_both_sides() {
    let x = PointSequence::new(vec![int(-1), rat(1, 3), int(2), int(5)]).unwrap();
    let f = AnalyticFunction::polynomial(vec![int(4), int(-1), int(7)]);
    let r = check_integral_identity_exact(&x, &f, 6).unwrap();
    assert!(r.passed);
    assert_eq!(r.lhs, Value::Exact(Rational::zero()));
}

#[test]
fn zero_right_side_uses_absolute_tolerance() {
    let x = PointSequence::new(vec![0.0, 0.5, 1.75]).unwrap();
    let f = AnalyticFunction::polynomial(vec![int(1), int(2)]);
    let r = check_integral_identity_numeric(&x, &f, Cubature::default(), 1e-9).unwrap();
    assert!(r.passed);
    assert_eq!(r.tolerance, vandint::identity::ZERO_ABS_TOLERANCE);
}

#[test]
fn under_resolved_cubature_fails_the_check() {
    let x = PointSequence::new(vec![0.0, 1.0, 2.0, 4.0]).unwrap();
    let r = check_integral_identity_numeric(
        &x,
        &AnalyticFunction::sin(1.0, 0.0),
        Cubature::with_order(1),
        1e-9,
    )
    .unwrap();
    assert!(!r.passed);
    let relaxed = IdentityReport::numeric("x", 3, 1.0, 1.0 + 1e-6, 1e-5);
    assert!(relaxed.passed);
}

#[test]
fn pole_inside_sum_range_is_rejected() {
    let x = PointSequence::new(vec![1.0, 4.0, 7.0]).unwrap();
    assert!(check_integral_identity_numeric(
        &x,
        &AnalyticFunction::recip(10.0),
        Cubature::default(),
        1e-9
    )
    .is_err());
}
