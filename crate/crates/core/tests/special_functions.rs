use std::f64::consts::PI;

use fraclap::special::{chebyshev_u, gamma, log_gamma, pochhammer, reciprocal_gamma, sin_pi};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reflection(x in -5.0f64..5.0) {
        prop_assume!((x - x.round()).abs() > 1e-6);
        let lhs = reciprocal_gamma(x) * reciprocal_gamma(1.0 - x);
        let rhs = sin_pi(x) / PI;
        prop_assert!((lhs - rhs).abs() <= 1e-12, "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn recurrence_positive(x in 0.01f64..60.0) {
        let d = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
        prop_assert!((d - x.ln()).abs() <= 1e-12 * x.ln().abs().max(1.0), "x={x}");
    }

    #[test]
    fn recurrence_reciprocal(x in -20.0f64..20.0) {
        prop_assume!((x - x.round()).abs() > 1e-6);
        // 1/Γ(x) = x / Γ(x+1)
        let lhs = reciprocal_gamma(x);
        let rhs = x * reciprocal_gamma(x + 1.0);
        prop_assert!(rel(lhs, rhs) <= 1e-12, "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn pochhammer_matches_gamma(a in -8.0f64..8.0, k in 0u64..25) {
        prop_assume!((a - a.round()).abs() > 1e-3 && (a + k as f64 - (a + k as f64).round()).abs() > 1e-3);
        let expected = gamma(a + k as f64) / gamma(a);
        prop_assert!(rel(pochhammer(a, k), expected) <= 1e-11, "a={a} k={k}");
    }
}

#[test]
fn chebyshev_bound() {
    for n in 0..=200u64 {
        for i in 0..1000 {
            let x = -1.0 + 2.0 * i as f64 / 999.0;
            let u = chebyshev_u(n, x);
            assert!(u.abs() <= (n + 1) as f64 * (1.0 + 1e-12), "n={n} x={x} U={u}");
        }
    }
}

#[test]
fn chebyshev_endpoints() {
    for n in 0..=200u64 {
        assert_eq!(chebyshev_u(n, 1.0), (n + 1) as f64);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(chebyshev_u(n, -1.0), sign * (n + 1) as f64);
    }
}
