use fraclap::green_hardy::{
    g_n, g_n_upper_bound, green, theorem2_check, theorem3_weight, uniform_bound_refined, uniform_bound_rough, Decision,
};

#[test]
fn diagonal_green_increases_towards_zero() {
    for alpha in [0.25, 0.5, 1.0, 1.4, 2.0] {
        for n in [1u64, 3, 7] {
            let values: Vec<f64> = [-1e3, -1e2, -1.0, -1e-1, -1e-2, -1e-3]
                .iter()
                .map(|&l| green(alpha, n, n, l).unwrap())
                .collect();
            assert!(values[0] > 0.0);
            assert!(
                values.windows(2).all(|w| w[1] > w[0]),
                "alpha={alpha} n={n}: {values:?}"
            );
        }
    }
}

#[test]
fn diagonal_bound_holds_at_every_alpha() {
    for alpha in [0.1, 0.3, 0.6, 0.9, 1.2, 1.45] {
        for n in 1..=6u64 {
            let bound = uniform_bound_rough(alpha, n, n)
                .unwrap()
                .min(uniform_bound_refined(alpha, n, n).unwrap());
            for lambda in [-1e-3, -1.0, -1e3] {
                let g = green(alpha, n, n, lambda).unwrap();
                assert!(g <= bound * (1.0 + 1e-12), "alpha={alpha} n={n} lambda={lambda}");
            }
        }
    }
}

/// Ratios of successive increments of G_11(-10^{-k}); a ratio ≥ 1 means no limit.
fn increment_ratios(alpha: f64) -> Vec<f64> {
    let values: Vec<f64> = (1..=8).map(|k| green(alpha, 1, 1, -10f64.powi(-k)).unwrap()).collect();
    let inc: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    inc.windows(2).map(|w| w[1] / w[0]).collect()
}

#[test]
fn criticality_signature() {
    for alpha in [1.5, 2.0, 3.0] {
        let r = increment_ratios(alpha);
        assert!(*r.last().unwrap() >= 0.95, "alpha={alpha}: {r:?}");
    }
    for alpha in [0.5, 1.0, 1.4] {
        let r = increment_ratios(alpha);
        assert!(*r.last().unwrap() <= 0.9, "alpha={alpha}: {r:?}");
    }
}

#[test]
fn g_n_growth_regimes() {
    let ns = [100u64, 1_000, 10_000];
    let low: Vec<f64> = ns.iter().map(|&n| g_n(0.25, n).unwrap()).collect();
    assert!(low.iter().all(|&g| g < 2.0 * low[0]), "{low:?}");

    let log: Vec<f64> = ns.iter().map(|&n| g_n(0.5, n).unwrap() / (n as f64).ln()).collect();
    assert!((log[2] - log[1]).abs() < (log[1] - log[0]).abs(), "{log:?}");
    assert!((log[2] / log[1] - 1.0).abs() < 0.1, "{log:?}");

    let pow: Vec<f64> = ns
        .iter()
        .map(|&n| g_n(1.25, n).unwrap() / (n as f64).powf(1.5))
        .collect();
    assert!((pow[2] - pow[1]).abs() < (pow[1] - pow[0]).abs(), "{pow:?}");
    assert!((pow[2] / pow[1] - 1.0).abs() < 0.05, "{pow:?}");
}

#[test]
fn g_n_below_majorant() {
    for alpha in [0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.4] {
        for n in (1..=10_000u64).step_by(37).chain([10_000]) {
            let g = g_n(alpha, n).unwrap();
            let b = g_n_upper_bound(alpha, n).unwrap();
            assert!(g <= b * (1.0 + 1e-12), "alpha={alpha} n={n}: {g} > {b}");
        }
    }
}

#[test]
fn power_weights_are_admissible() {
    for alpha in [0.25, 0.5, 0.75, 1.0, 1.25, 1.4] {
        for eps in [0.1, 0.5, 1.0, 2.0] {
            let w = theorem3_weight(alpha, eps).unwrap();
            let r = theorem2_check(alpha, &w, 2_000).unwrap();
            assert_eq!(r.decision, Decision::Admissible, "alpha={alpha} eps={eps}: {r:?}");
        }
    }
}
