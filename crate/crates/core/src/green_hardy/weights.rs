//! The weight sequence g_n(α), the integrals I_n(α) and the constants built from them.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, ChebPoint, Integrand};
use crate::special::{gamma, ln_pochhammer_shift_ratio, tan_pi, tan_pi_over, zeta_and_derivative};

/// Below this α, g_n uses the form expanded around 1/2, above it the one around 1.
const FORM_SWITCH: f64 = 0.75;

pub(crate) fn check_subcritical(function: &'static str, alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.5 {
        Ok(())
    } else {
        Err(Error::domain(function, alpha, "requires 0 < alpha < 3/2"))
    }
}

fn check_index(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("index n starts at 1".into()))
    } else {
        Ok(())
    }
}

/// Σ_{j=1}^{k} 1/(2j-1).
pub fn odd_harmonic(k: u64) -> f64 {
    // summed from the small terms up
    (1..=k).rev().map(|j| 1.0 / (2 * j - 1) as f64).sum()
}

/// ln[(α+1)_{2n-1} / (2-α)_{2n-1}].
fn ln_shifted_ratio(alpha: f64, n: u64) -> f64 {
    // (α+1) - (2-α) = 2α - 1 is exact, unlike the difference of the rounded arguments
    ln_pochhammer_shift_ratio(2.0 - alpha, 2.0 * alpha - 1.0, 2 * n - 1)
}

/// g_n(α) = (1 - (α)_{2n}/(1-α)_{2n}) tan(πα) for α ∈ (0, 3/2).
///
/// The removable points α = 1/2 and α = 1 take the values
/// (4/π) Σ_{j≤2n} 1/(2j-1) and 2πn. Elsewhere the formula is rearranged so
/// that the vanishing factor and the pole of tan cancel analytically, which
/// keeps full accuracy arbitrarily close to both points.
pub fn g_n(alpha: f64, n: u64) -> Result<f64> {
    check_subcritical("g_n", alpha)?;
    check_index(n)?;
    if alpha == 0.5 {
        return Ok(4.0 / PI * odd_harmonic(2 * n));
    }
    if alpha == 1.0 {
        return Ok(2.0 * PI * n as f64);
    }
    let lr = ln_shifted_ratio(alpha, n);
    if alpha < FORM_SWITCH {
        // R = (α)_{2n}/(1-α)_{2n} = [α/(1-α)] (α+1)_{2n-1}/(2-α)_{2n-1};
        // with δ = α - 1/2, tan(πα) = -1/tan(πδ), so g = expm1(ln R)/tan(πδ).
        let delta = alpha - 0.5;
        let ln_r = (2.0 * delta / (1.0 - alpha)).ln_1p() + lr;
        Ok(ln_r.exp_m1() / tan_pi(delta))
    } else {
        // (1-α)R = α (α+1)_{2n-1}/(2-α)_{2n-1} =: Q and
        // g = tan(πα) + Q tan(π(α-1))/(α-1).
        let q = alpha * lr.exp();
        Ok(tan_pi(alpha) + q * tan_pi_over(alpha - 1.0))
    }
}

/// Γ²(α)/Γ(2α).
pub fn gamma_square_ratio(alpha: f64) -> f64 {
    let g = gamma(alpha);
    g * g / gamma(2.0 * alpha)
}

/// I_n(α) = ∫ U_{n-1}²(x) (1-x)^{-α} √(1-x²) dx in closed form,
/// 2^{α-2} Γ²(α)/Γ(2α) g_n(α).
pub fn i_n_closed(alpha: f64, n: u64) -> Result<f64> {
    let g = g_n(alpha, n)?;
    Ok(2f64.powf(alpha - 2.0) * gamma_square_ratio(alpha) * g)
}

/// I_n(α) by quadrature.
pub fn i_n_quadrature(alpha: f64, n: u64, tol: f64) -> Result<f64> {
    check_subcritical("i_n_quadrature", alpha)?;
    check_index(n)?;
    let ig = Integrand::new(move |p: &ChebPoint| p.chebyshev_u(n - 1).powi(2))
        .with_endpoint_exponent(-alpha)
        .with_frequency(2.0 * n as f64);
    integrate(&ig, tol)
}

/// D_α of the power bound g_n(α) ≤ D_α n^{2α-1} on (1/2, 3/2); D_1 = 4π.
pub fn d_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.5 && alpha < 1.5) {
        return Err(Error::domain("d_alpha", alpha, "requires 1/2 < alpha < 3/2"));
    }
    let indicator = if alpha > 1.0 { 1.0 } else { 0.0 };
    let coeff = alpha * (1.0 + alpha) * 2f64.powf(2.0 * alpha - 1.0) / (2.0 - alpha).powf(2.0 * alpha);
    // tan(απ)/(α-1) = tan(π(α-1))/(α-1) is regular at α = 1
    Ok(indicator * tan_pi(alpha) + coeff * tan_pi_over(alpha - 1.0))
}

/// Explicit majorant of g_n(α):
/// tan(απ) on (0, 1/2), 2(3 + ln n)/π at 1/2 and D_α n^{2α-1} on (1/2, 3/2).
pub fn g_n_upper_bound(alpha: f64, n: u64) -> Result<f64> {
    check_subcritical("g_n_upper_bound", alpha)?;
    check_index(n)?;
    let nf = n as f64;
    if alpha < 0.5 {
        Ok(tan_pi(alpha))
    } else if alpha == 0.5 {
        Ok(2.0 * (3.0 + nf.ln()) / PI)
    } else {
        Ok(d_alpha(alpha)? * nf.powf(2.0 * alpha - 1.0))
    }
}

/// Right-hand side 2π Γ(2α)/Γ²(α) of the admissibility condition Σ g_n V_n ≤ threshold.
pub fn admissibility_threshold(alpha: f64) -> Result<f64> {
    check_subcritical("admissibility_threshold", alpha)?;
    Ok(2.0 * PI / gamma_square_ratio(alpha))
}

/// Coupling γ(α, ε) of the power weight γ / n^{max(1, 2α) + ε}.
pub fn power_weight_coupling(alpha: f64, epsilon: f64) -> Result<f64> {
    check_subcritical("power_weight_coupling", alpha)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::domain("power_weight_coupling", epsilon, "requires epsilon > 0"));
    }
    let threshold = admissibility_threshold(alpha)?;
    let (z, dz) = zeta_and_derivative(1.0 + epsilon)?;
    let value = if alpha < 0.5 {
        threshold / (tan_pi(alpha) * z)
    } else if alpha == 0.5 {
        // Σ 2(3 + ln n)/(π n^{1+ε}) = (2/π)(3ζ - ζ')
        threshold * PI / (2.0 * (3.0 * z - dz))
    } else if alpha == 1.0 {
        // exact g_n(1) = 2πn gives Σ g_n V_n = 2πγ ζ(1+ε)
        1.0 / z
    } else {
        threshold / (d_alpha(alpha)? * z)
    };
    Ok(value)
}
