use std::f64::consts::PI;

use fraclap::eigen::eigenvalues;
use fraclap::green_hardy::Potential;
use fraclap::operator::assemble;
use fraclap::spectral_probe::min_eig;

#[test]
fn nested_sections_lower_the_minimum() {
    let cases = [
        (0.5, Potential::delta(1, 0.5).unwrap()),
        (1.0, Potential::ClassicalHardy),
        (1.5, Potential::delta(2, 0.1).unwrap()),
        (2.0, Potential::delta(1, 1.0).unwrap()),
        (1.0, Potential::Kpp),
    ];
    for (alpha, v) in &cases {
        let mins: Vec<f64> = [20, 40, 80, 160, 320]
            .iter()
            .map(|&n| min_eig(*alpha, n, v).unwrap().min_eigenvalue)
            .collect();
        assert!(
            mins.windows(2).all(|w| w[1] <= w[0] + 1e-13),
            "alpha={alpha} {}: {mins:?}",
            v.describe()
        );
    }
}

#[test]
fn laplacian_sections_match_exact_spectrum() {
    for n in [1usize, 2, 7, 50, 120, 200] {
        let ev = eigenvalues(assemble(1.0, n).unwrap().matrix()).unwrap();
        for (k, &e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() <= 1e-10, "N={n} k={k}: {e} vs {exact}");
        }
    }
}
