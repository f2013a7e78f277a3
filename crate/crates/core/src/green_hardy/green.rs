//! Green kernel entries of (-Δ)^α and their uniform bounds.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::weights::{check_subcritical, g_n, gamma_square_ratio, i_n_closed};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, ChebPoint, Integrand, DEFAULT_TOL};

/// One Green kernel entry ((-Δ)^α - λ)^{-1}_{m,n}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenQuery {
    pub alpha: f64,
    pub m: u64,
    pub n: u64,
    pub lambda: f64,
}

impl GreenQuery {
    pub fn new(alpha: f64, m: u64, n: u64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::UnsupportedExponent(alpha));
        }
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!("indices start at 1, got m = {m}, n = {n}")));
        }
        let top = 4f64.powf(alpha);
        if !lambda.is_finite() || (0.0..=top).contains(&lambda) {
            return Err(Error::domain(
                "green_entry",
                lambda,
                "lambda must lie outside the spectrum [0, 4^alpha]",
            ));
        }
        Ok(GreenQuery { alpha, m, n, lambda })
    }
}

/// (2(1 - x))^α = (2 sin(θ/2))^{2α}.
fn symbol(p: &ChebPoint, alpha: f64) -> f64 {
    (2.0 * p.sin_half).powf(2.0 * alpha)
}

/// (2/π) ∫ U_{m-1} U_{n-1} / (2^α (1-x)^α - λ) √(1-x²) dx for real λ outside [0, 4^α].
pub fn green_entry(q: &GreenQuery, tol: f64) -> Result<f64> {
    let GreenQuery { alpha, m, n, lambda } = *q;
    let ig =
        Integrand::new(move |p: &ChebPoint| p.chebyshev_u(m - 1) * p.chebyshev_u(n - 1) / (symbol(p, alpha) - lambda))
            .with_frequency((m + n) as f64);
    Ok(2.0 / PI * integrate(&ig, 0.5 * PI * tol)?)
}

/// Convenience form of `green_entry` with the default tolerance.
pub fn green(alpha: f64, m: u64, n: u64, lambda: f64) -> Result<f64> {
    green_entry(&GreenQuery::new(alpha, m, n, lambda)?, DEFAULT_TOL)
}

/// Green kernel entry for complex λ ∉ [0, 4^α].
pub fn green_entry_complex(alpha: f64, m: u64, n: u64, lambda: Complex64, tol: f64) -> Result<Complex64> {
    if lambda.im == 0.0 {
        return green_entry(&GreenQuery::new(alpha, m, n, lambda.re)?, tol).map(Complex64::from);
    }
    GreenQuery::new(alpha, m, n, -1.0)?;
    let parts = [true, false].map(|real| {
        let ig = Integrand::new(move |p: &ChebPoint| {
            let r = 1.0 / (Complex64::from(symbol(p, alpha)) - lambda);
            p.chebyshev_u(m - 1) * p.chebyshev_u(n - 1) * if real { r.re } else { r.im }
        })
        .with_frequency((m + n) as f64);
        integrate(&ig, 0.5 * PI * tol).map(|v| 2.0 / PI * v)
    });
    let [re, im] = parts;
    Ok(Complex64::new(re?, im?))
}

/// C_α = (2^{1-α}/π) ∫ (1-x)^{-α} √(1-x²) dx by quadrature, α ∈ (0, 3/2).
pub fn c_alpha(alpha: f64) -> Result<f64> {
    check_subcritical("c_alpha", alpha)?;
    let scale = 2f64.powf(1.0 - alpha) / PI;
    // relative accuracy: the integral grows like 1/(3/2 - α)
    let tol = 1e-14 / (1.5 - alpha);
    let ig = Integrand::new(|_: &ChebPoint| 1.0).with_endpoint_exponent(-alpha);
    Ok(scale * integrate(&ig, tol)?)
}

/// C_α from the closed form of I_1(α).
pub fn c_alpha_closed(alpha: f64) -> Result<f64> {
    Ok(2f64.powf(1.0 - alpha) / PI * i_n_closed(alpha, 1)?)
}

/// |G_{m,n}(λ)| ≤ C_α m n for all λ < 0.
pub fn uniform_bound_rough(alpha: f64, m: u64, n: u64) -> Result<f64> {
    Ok(c_alpha(alpha)? * m as f64 * n as f64)
}

/// |G_{m,n}(λ)| ≤ (1/2π)(Γ²(α)/Γ(2α)) √g_m(α) √g_n(α) for all λ < 0.
pub fn uniform_bound_refined(alpha: f64, m: u64, n: u64) -> Result<f64> {
    check_subcritical("uniform_bound_refined", alpha)?;
    let gm = g_n(alpha, m)?;
    let gn = g_n(alpha, n)?;
    Ok(gamma_square_ratio(alpha) / (2.0 * PI) * gm.sqrt() * gn.sqrt())
}

/// (2/π) ∫ √(1-x²) / (4^α - 2^α (1-x)^α) dx: the constant in |G_{m,n}| ≤ C m n
/// for the reflected operator 4^α - (-Δ)^α, finite for every α > 0.
pub fn reflected_constant(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::UnsupportedExponent(alpha));
    }
    let top = 4f64.powf(alpha);
    // 4^α - (2(1-x))^α = 4^α (1 - sin^{2α}(θ/2)); near x = -1 it vanishes like (1+x)
    let ig = Integrand::new(move |p: &ChebPoint| {
        let s2a = p.sin_half.powf(2.0 * alpha);
        let gap = if s2a < 0.5 {
            1.0 - s2a
        } else {
            // 1 - sin^{2α} = -expm1(2α ln sin) with ln sin = ln1p(-cos²)/2
            -(alpha * (-p.cos_half * p.cos_half).ln_1p()).exp_m1()
        };
        1.0 / (top * gap)
    });
    Ok(2.0 / PI * integrate(&ig, 1e-13)?)
}
