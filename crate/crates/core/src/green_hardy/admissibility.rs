//! Sufficient condition Σ g_n(α) V_n ≤ 2π Γ(2α)/Γ²(α) for (-Δ)^α ≥ V, the
//! power weights it certifies, and the Hilbert–Schmidt bound behind it.

use std::f64::consts::PI;

use serde::Serialize;

use super::potential::{Decay, Potential, KPP_QUARTIC_COEFF};
use super::weights::{
    admissibility_threshold, check_subcritical, d_alpha, g_n, gamma_square_ratio, power_weight_coupling,
};
use crate::error::{Error, Result};
use crate::special::{hurwitz_zeta_and_derivative, tan_pi};

/// Relative slack allowed when comparing a sum with the threshold; absorbs
/// the rounding of the compensated sums and of the threshold itself.
const COMPARISON_SLACK: f64 = 1e-12;

/// Outcome of the admissibility check. The condition is only sufficient, so a
/// failed check is inconclusive rather than a proof of inadmissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Admissible,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub alpha: f64,
    pub potential: String,
    pub decision: Decision,
    /// Σ_{n ≤ terms} g_n(α) V_n
    pub partial_sum: f64,
    /// upper bound on the remaining Σ_{n > terms} g_n(α) V_n (+∞ if none is known)
    pub tail_bound: f64,
    pub threshold: f64,
    pub terms: u64,
    pub note: Option<String>,
}

/// Neumaier-compensated sum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Σ_{n > terms} g_n(α) n^{-p}, bounded through the majorant of g_n.
fn power_tail(alpha: f64, p: f64, terms: u64) -> Result<f64> {
    let a = terms as f64 + 1.0;
    let zeta = |s: f64| -> Result<f64> {
        if s > 1.0 {
            Ok(hurwitz_zeta_and_derivative(s, a)?.0)
        } else {
            Ok(f64::INFINITY)
        }
    };
    if alpha < 0.5 {
        Ok(tan_pi(alpha) * zeta(p)?)
    } else if alpha == 0.5 {
        // g_n ≤ 2(3 + ln n)/π and Σ ln n / n^p over n ≥ a is -∂ζ(p, a)
        if p <= 1.0 {
            return Ok(f64::INFINITY);
        }
        let (z, dz) = hurwitz_zeta_and_derivative(p, a)?;
        Ok(2.0 / PI * (3.0 * z - dz))
    } else if alpha == 1.0 {
        Ok(2.0 * PI * zeta(p - 1.0)?)
    } else {
        Ok(d_alpha(alpha)? * zeta(p - 2.0 * alpha + 1.0)?)
    }
}

/// Upper bound on Σ_{n > terms} g_n(α) V_n, or `None` when the potential
/// carries no decay information.
fn tail_bound(alpha: f64, v: &Potential, terms: u64) -> Result<Option<f64>> {
    if let Some(end) = v.support_end() {
        if end <= terms {
            return Ok(Some(0.0));
        }
    }
    let bound = match v {
        Potential::ClassicalHardy => 0.25 * power_tail(alpha, 2.0, terms)?,
        Potential::Kpp => 0.25 * power_tail(alpha, 2.0, terms)? + KPP_QUARTIC_COEFF * power_tail(alpha, 4.0, terms)?,
        Potential::PowerWeight { gamma, exponent, .. } => gamma * power_tail(alpha, *exponent, terms)?,
        Potential::Explicit {
            decay: Some(Decay::Power { coeff, exponent }),
            ..
        } => coeff * power_tail(alpha, *exponent, terms)?,
        // finite support reaching past `terms` is summed in full by the caller
        Potential::Delta { .. }
        | Potential::Explicit {
            decay: Some(Decay::FiniteSupport),
            ..
        } => 0.0,
        Potential::Explicit { decay: None, .. } => return Ok(None),
    };
    Ok(Some(bound))
}

fn check_potential(v: &Potential) -> Result<()> {
    match v {
        Potential::Delta { coupling, .. } if !(*coupling >= 0.0) => {
            Err(Error::InvalidInput("negative coupling".into()))
        }
        Potential::Explicit { values, .. } if values.iter().any(|x| !(*x >= 0.0)) => {
            Err(Error::InvalidInput("potential values must be non-negative".into()))
        }
        _ => Ok(()),
    }
}

/// Partial sum over n ≤ terms (over the whole support when it is finite), plus tail bound.
fn weighted_sum(alpha: f64, v: &Potential, terms: u64) -> Result<(f64, Option<f64>, u64)> {
    check_subcritical("theorem2_check", alpha)?;
    check_potential(v)?;
    let last = v.support_end().unwrap_or(terms);
    let mut acc = Compensated::default();
    for n in 1..=last {
        let vn = v.value(n);
        if vn != 0.0 {
            acc.add(g_n(alpha, n)? * vn);
        }
    }
    let tail = tail_bound(alpha, v, last)?;
    Ok((acc.value(), tail, last))
}

/// Checks Σ g_n(α) V_n ≤ 2π Γ(2α)/Γ²(α) with the first `terms` summands
/// computed and the rest bounded from above.
pub fn theorem2_check(alpha: f64, v: &Potential, terms: u64) -> Result<AdmissibilityReport> {
    let (partial, tail, used) = weighted_sum(alpha, v, terms)?;
    let threshold = admissibility_threshold(alpha)?;
    let (tail_bound, note) = match tail {
        Some(t) => (t, None),
        None => (f64::INFINITY, Some(Error::TailUnavailable(v.describe()).to_string())),
    };
    let total = partial + tail_bound;
    let decision = if total <= threshold * (1.0 + COMPARISON_SLACK) {
        Decision::Admissible
    } else {
        Decision::Inconclusive
    };
    let note =
        note.or_else(|| (!tail_bound.is_finite()).then(|| "the majorant series of the tail diverges".to_string()));
    Ok(AdmissibilityReport {
        alpha,
        potential: v.describe(),
        decision,
        partial_sum: partial,
        tail_bound,
        threshold,
        terms: used,
        note,
    })
}

/// The power weight γ(α, ε) / n^{max(1, 2α) + ε}.
pub fn theorem3_weight(alpha: f64, epsilon: f64) -> Result<Potential> {
    let gamma = power_weight_coupling(alpha, epsilon)?;
    Ok(Potential::PowerWeight {
        alpha,
        epsilon,
        gamma,
        exponent: (2.0 * alpha).max(1.0) + epsilon,
    })
}

/// Hilbert–Schmidt bound (1/2π)(Γ²(α)/Γ(2α)) Σ V_n g_n(α) on the
/// Birman–Schwinger operator; values below 1 certify (-Δ)^α ≥ V.
pub fn bs_hs_bound(alpha: f64, v: &Potential, terms: u64) -> Result<f64> {
    let (partial, tail, _) = weighted_sum(alpha, v, terms)?;
    let tail = tail.ok_or_else(|| Error::TailUnavailable(v.describe()))?;
    Ok(gamma_square_ratio(alpha) / (2.0 * PI) * (partial + tail))
}
