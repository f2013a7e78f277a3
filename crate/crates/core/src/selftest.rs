//! Formula-versus-oracle suites: closed forms checked against independent
//! quadratures, matrix identities and exact special values.

use serde::Serialize;

use crate::bilaplacian::{bilap_green_real, lambda_1_closed, lambda_n_implicit, DeltaPerturbation, DEFAULT_TOL};
use crate::error::Result;
use crate::green_hardy::{
    c_alpha, green_entry, i_n_closed, i_n_quadrature, theorem2_check, uniform_bound_refined, uniform_bound_rough,
    Decision, GreenQuery, Potential,
};
use crate::operator::{assemble, entry, entry_oracle};

/// Outcome of one suite: the worst deviation seen against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub description: &'static str,
    pub checks: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Accumulates deviations; `worst` keeps NaN so that it cannot pass silently.
struct Tally {
    checks: usize,
    worst: f64,
    at: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            worst: 0.0,
            at: None,
        }
    }

    fn record(&mut self, deviation: f64, at: impl FnOnce() -> String) {
        self.checks += 1;
        if (deviation.is_nan() || deviation > self.worst) && !self.worst.is_nan() {
            self.worst = deviation;
            self.at = Some(at());
        }
    }

    fn finish(self, suite: &'static str, description: &'static str, tolerance: f64) -> SuiteResult {
        SuiteResult {
            suite,
            description,
            checks: self.checks,
            worst: self.worst,
            tolerance,
            passed: self.worst <= tolerance,
            detail: self.at.map(|a| format!("worst at {a}")),
        }
    }
}

fn failed(suite: &'static str, description: &'static str, tolerance: f64, err: crate::Error) -> SuiteResult {
    SuiteResult {
        suite,
        description,
        checks: 0,
        worst: f64::NAN,
        tolerance,
        passed: false,
        detail: Some(err.to_string()),
    }
}

fn run(
    suite: &'static str,
    description: &'static str,
    tolerance: f64,
    body: impl FnOnce(&mut Tally) -> Result<()>,
) -> SuiteResult {
    let mut tally = Tally::new();
    match body(&mut tally) {
        Ok(()) => tally.finish(suite, description, tolerance),
        Err(e) => failed(suite, description, tolerance, e),
    }
}

/// `count` points from 10^a to 10^b, both included.
pub fn logspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![10f64.powf(a)],
        _ => (0..count)
            .map(|k| 10f64.powf(a + (b - a) * k as f64 / (count - 1) as f64))
            .collect(),
    }
}

/// Closed-form entries against the Chebyshev integral, m, n ≤ 30.
pub fn matrix_oracle() -> SuiteResult {
    run("matrix_oracle", "matrix entries vs Chebyshev quadrature", 1e-9, |t| {
        for alpha in [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5] {
            for m in 1..=30 {
                for n in 1..=30 {
                    let d = (entry(alpha, m, n)? - entry_oracle(alpha, m, n)?).abs();
                    t.record(d, || format!("alpha={alpha} m={m} n={n}"));
                }
            }
        }
        Ok(())
    })
}

/// α = 1 is the second difference exactly, α = 2 its square, α = -1 is min(m, n).
pub fn base_cases() -> SuiteResult {
    run("base_cases", "integer and negative base cases", 1e-10, |t| {
        let n = 50;
        let lap = assemble(1.0, n)?;
        for i in 0..n {
            for j in 0..n {
                let exact = match i.abs_diff(j) {
                    0 => 2.0,
                    1 => -1.0,
                    _ => 0.0,
                };
                // exactness: any deviation is recorded as infinite
                let d = if lap.get(i, j) == exact { 0.0 } else { f64::INFINITY };
                t.record(d, || format!("alpha=1 ({i}, {j})"));
            }
        }
        let padded = assemble(1.0, n + 2)?;
        let square = padded.matrix().matmul(padded.matrix()).leading_block(n);
        let bilap = assemble(2.0, n)?;
        for i in 0..n {
            for j in 0..n {
                let d = (bilap.get(i, j) - square.get(i, j)).abs();
                t.record(d, || format!("alpha=2 ({i}, {j})"));
            }
        }
        for m in 1..=30u64 {
            for k in 1..=30u64 {
                let d = if entry(-1.0, m, k)? == m.min(k) as f64 {
                    0.0
                } else {
                    f64::INFINITY
                };
                t.record(d, || format!("alpha=-1 m={m} n={k}"));
            }
        }
        Ok(())
    })
}

/// Closed form of ∫ U_{n-1}² (1-x)^{-α} √(1-x²) dx against quadrature, n ≤ 20,
/// including points 1e-7 from the removable singularities.
pub fn in_identity() -> SuiteResult {
    run("in_identity", "I_n closed form vs quadrature", 1e-9, |t| {
        let alphas = [
            0.25,
            0.5 - 1e-7,
            0.5,
            0.5 + 1e-7,
            0.75,
            1.0 - 1e-7,
            1.0,
            1.0 + 1e-7,
            1.25,
            1.4,
        ];
        for alpha in alphas {
            for n in 1..=20 {
                let closed = i_n_closed(alpha, n)?;
                let quad = i_n_quadrature(alpha, n, 1e-13)?;
                let d = (closed - quad).abs() / quad.abs().max(1.0);
                t.record(d, || format!("alpha={alpha} n={n}"));
            }
        }
        Ok(())
    })
}

/// |G_{m,n}(λ)| ≤ min(C_α m n, refined bound) on the test grid, and C_1 = 1.
pub fn green_bounds() -> SuiteResult {
    run(
        "green_bounds",
        "Green kernel within both uniform bounds; C_1 = 1",
        1e-10,
        |t| {
            t.record((c_alpha(1.0)? - 1.0).abs(), || "C_1".into());
            for alpha in [0.25, 0.5, 0.75, 1.0, 1.25, 1.4] {
                for lambda in [-1e-4, -1e-2, -1.0, -1e2] {
                    for m in 1..=10 {
                        for n in 1..=10 {
                            let g = green_entry(&GreenQuery::new(alpha, m, n, lambda)?, 1e-12)?;
                            let bound = uniform_bound_rough(alpha, m, n)?.min(uniform_bound_refined(alpha, m, n)?);
                            // excess over the bound, 0 when it holds
                            let d = (g.abs() - bound).max(0.0);
                            t.record(d, || format!("alpha={alpha} lambda={lambda} m={m} n={n}"));
                        }
                    }
                }
            }
            Ok(())
        },
    )
}

/// λ_1(c) from the implicit equation against -c⁴/((c+1)(c+2)²), relative.
pub fn bilap_first_site() -> SuiteResult {
    run(
        "bilap_first_site",
        "first-site bilaplacian eigenvalue vs closed form",
        1e-12,
        |t| {
            for c in logspace(-3.0, 3.0, 50) {
                let p = DeltaPerturbation::new(1, c)?;
                let closed = lambda_1_closed(c)?;
                let d = (lambda_n_implicit(&p, DEFAULT_TOL)? / closed - 1.0).abs();
                t.record(d, || format!("c={c}"));
            }
            Ok(())
        },
    )
}

/// |1 - c G_nn(λ*)| at the implicit eigenvalue, n ≤ 10.
pub fn bilap_birman_schwinger() -> SuiteResult {
    run(
        "bilap_birman_schwinger",
        "Birman-Schwinger residual at the eigenvalue",
        1e-9,
        |t| {
            for n in 1..=10 {
                for c in logspace(-3.0, 3.0, 25) {
                    let p = DeltaPerturbation::new(n, c)?;
                    let lambda = lambda_n_implicit(&p, DEFAULT_TOL)?;
                    let d = (1.0 - c * bilap_green_real(n, n, lambda)?).abs();
                    t.record(d, || format!("n={n} c={c}"));
                }
            }
            Ok(())
        },
    )
}

/// α = 1, c δ_1: admissible at c = 1, inconclusive at c = 1 + 1e-9.
pub fn single_site_threshold() -> SuiteResult {
    run(
        "single_site_threshold",
        "single-site admissibility threshold at alpha = 1",
        0.0,
        |t| {
            let at_threshold = theorem2_check(1.0, &Potential::delta(1, 1.0)?, 10)?;
            let above = theorem2_check(1.0, &Potential::delta(1, 1.0 + 1e-9)?, 10)?;
            let miss = |ok: bool| if ok { 0.0 } else { 1.0 };
            t.record(miss(at_threshold.decision == Decision::Admissible), || "c=1".into());
            t.record(miss(above.decision == Decision::Inconclusive), || "c=1+1e-9".into());
            Ok(())
        },
    )
}

/// Every suite, in order.
pub fn run_all() -> Vec<SuiteResult> {
    vec![
        matrix_oracle(),
        base_cases(),
        in_identity(),
        green_bounds(),
        bilap_first_site(),
        bilap_birman_schwinger(),
        single_site_threshold(),
    ]
}
