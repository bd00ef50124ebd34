use proptest::prelude::*;
use sharp_atan::bounds::ENVELOPE_MAX_SUPREMUM;
use sharp_atan::certification::{
    envelope_sandwich_holds, oracle_relative_error, oracle_sample, BoundPair,
};
use sharp_atan::constants::CERTIFICATION_MARGIN;
use sharp_atan::kernels::MIDPOINT_ROUNDOFF;
use sharp_atan::{
    first_derivative, lower_bound, midpoint_arctan, second_derivative, upper_bound, Oracle,
    ShaferCoefficients, Side,
};

/// Signed value with magnitude log-uniform over `[1e-8, 1e8]`.
fn wide() -> impl Strategy<Value = f64> {
    (-8.0f64..8.0, any::<bool>()).prop_map(|(e, neg)| {
        let m = 10f64.powf(e);
        if neg {
            -m
        } else {
            m
        }
    })
}

fn triple() -> impl Strategy<Value = ShaferCoefficients> {
    (0.01f64..10.0, 0.01f64..10.0, 0.01f64..10.0)
        .prop_map(|(a, b, c)| ShaferCoefficients::new(a, b, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn bounds_are_odd(x in wide()) {
        prop_assert_eq!(lower_bound(-x), -lower_bound(x));
        prop_assert_eq!(upper_bound(-x), -upper_bound(x));
    }

    #[test]
    fn bounds_are_nondecreasing(x in wide(), step in 1e-6f64..1.0) {
        let y = x + step * x.abs().max(1e-8);
        prop_assert!(lower_bound(x) <= lower_bound(y));
        prop_assert!(upper_bound(x) <= upper_bound(y));
    }

    #[test]
    fn derivative_positive_and_concavity_sign(c in triple(), x in wide()) {
        prop_assert!(first_derivative(&c, x) > 0.0);
        let second = second_derivative(&c, x);
        prop_assert!(second != 0.0 && second.signum() == -x.signum());
    }

    #[test]
    fn ordering_against_oracle(x in wide()) {
        let truth = Oracle::shared().atan(x);
        prop_assert!(oracle_relative_error(&truth, lower_bound(x), Side::Lower) >= -CERTIFICATION_MARGIN);
        prop_assert!(oracle_relative_error(&truth, upper_bound(x), Side::Upper) >= -CERTIFICATION_MARGIN);
    }

    #[test]
    fn envelope_sandwich(x in wide()) {
        let s = oracle_sample(Oracle::shared(), &BoundPair::default(), x);
        prop_assert!(envelope_sandwich_holds(&s), "{:?}", s);
    }

    #[test]
    fn midpoint_certificate_covers_truth(x in wide()) {
        let m = midpoint_arctan(x);
        let truth = Oracle::shared().atan(x).to_f64();
        prop_assert!(m.covers(truth, 0.0), "{:?} vs {}", m, truth);
        prop_assert!(m.max_relative_error <= 0.5 * ENVELOPE_MAX_SUPREMUM + MIDPOINT_ROUNDOFF);
    }
}
