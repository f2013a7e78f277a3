//! Non-negative diagonal potentials V = (V_n)_{n≥1}.

use serde::Serialize;

use crate::error::{Error, Result};

/// Decay information for an explicitly listed potential beyond its last value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Decay {
    /// V_n = 0 for every n past the listed values.
    FiniteSupport,
    /// V_n ≤ coeff · n^{-exponent} for every n past the listed values.
    Power { coeff: f64, exponent: f64 },
}

/// Diagonal potential, indexed from n = 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Potential {
    /// 1/(4n²)
    ClassicalHardy,
    /// 2 - √((n-1)/n) - √((n+1)/n)
    Kpp,
    /// γ / n^{exponent} with exponent = max(1, 2α) + ε
    PowerWeight {
        alpha: f64,
        epsilon: f64,
        gamma: f64,
        exponent: f64,
    },
    /// c at site n, zero elsewhere
    Delta { site: u64, coupling: f64 },
    /// listed values V_1, V_2, ...; optional decay beyond them
    Explicit { values: Vec<f64>, decay: Option<Decay> },
}

impl Potential {
    /// V ≡ 0.
    pub fn zero() -> Self {
        Potential::Explicit {
            values: Vec::new(),
            decay: Some(Decay::FiniteSupport),
        }
    }

    pub fn delta(site: u64, coupling: f64) -> Result<Self> {
        if site == 0 {
            return Err(Error::InvalidInput("delta site starts at 1".into()));
        }
        if !(coupling >= 0.0 && coupling.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "coupling must be a non-negative number, got {coupling}"
            )));
        }
        Ok(Potential::Delta { site, coupling })
    }

    pub fn explicit(values: Vec<f64>, decay: Option<Decay>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidInput(format!(
                "potential values must be finite and non-negative, found {v}"
            )));
        }
        if let Some(Decay::Power { coeff, exponent }) = decay {
            if !(coeff >= 0.0 && exponent.is_finite()) {
                return Err(Error::InvalidInput("invalid decay annotation".into()));
            }
        }
        Ok(Potential::Explicit { values, decay })
    }

    /// V_n for n ≥ 1 (0 for n = 0).
    pub fn value(&self, n: u64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let nf = n as f64;
        match self {
            Potential::ClassicalHardy => 0.25 / (nf * nf),
            Potential::Kpp => kpp_value(n),
            Potential::PowerWeight { gamma, exponent, .. } => gamma * nf.powf(-exponent),
            Potential::Delta { site, coupling } => {
                if n == *site {
                    *coupling
                } else {
                    0.0
                }
            }
            Potential::Explicit { values, .. } => values.get(n as usize - 1).copied().unwrap_or(0.0),
        }
    }

    /// Last index with a possibly non-zero value, if the support is finite.
    pub fn support_end(&self) -> Option<u64> {
        match self {
            Potential::Delta { site, .. } => Some(*site),
            Potential::Explicit {
                values,
                decay: Some(Decay::FiniteSupport),
            } => Some(values.len() as u64),
            _ => None,
        }
    }

    /// Short human-readable label.
    pub fn describe(&self) -> String {
        match self {
            Potential::ClassicalHardy => "classical_hardy".into(),
            Potential::Kpp => "kpp".into(),
            Potential::PowerWeight {
                alpha, epsilon, gamma, ..
            } => format!("power_weight(alpha={alpha}, epsilon={epsilon}, gamma={gamma})"),
            Potential::Delta { site, coupling } => format!("delta(site={site}, c={coupling})"),
            Potential::Explicit { values, .. } => format!("explicit({} values)", values.len()),
        }
    }
}

/// 2 - √(1 - h) - √(1 + h) with h = 1/n, rewritten as
/// 2h² / ((a + b)(1 + a)(1 + b)), a = √(1-h), b = √(1+h), to avoid cancellation.
fn kpp_value(n: u64) -> f64 {
    let h = 1.0 / n as f64;
    let a = (1.0 - h).sqrt();
    let b = (1.0 + h).sqrt();
    2.0 * h * h / ((a + b) * (1.0 + a) * (1.0 + b))
}

/// Coefficient K in V^KPP_n ≤ 1/(4n²) + K/n⁴ for all n ≥ 1 (attained at n = 1).
pub const KPP_QUARTIC_COEFF: f64 = 0.3358;
