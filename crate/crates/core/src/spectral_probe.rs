//! Finite-section experiments: smallest eigenvalues of sections of
//! (-Δ)^α - V, their behaviour in N, and the inequality witnesses built on them.

use serde::Serialize;

use crate::eigen::smallest_eigenpair;
use crate::error::{Error, Result};
use crate::green_hardy::{reflected_constant, theorem3_weight, Potential};
use crate::operator::{assemble, assemble_reflected, TruncatedOperator};
use crate::roots::find_root;

/// Default section sizes.
pub const DEFAULT_SCHEDULE: [usize; 5] = [250, 500, 1000, 2000, 4000];

/// Residual bound, relative to ‖A‖, below which an eigenpair counts as converged.
const RESIDUAL_RATIO: f64 = 1e-8;

/// Largest power-law exponent tried by the extrapolation; faster decay is
/// treated as already converged.
const MAX_EXPONENT: f64 = 60.0;

/// Acceptance tolerance for "≥ 0": 1e-10 (1 + 4^α).
pub fn tolerance(alpha: f64) -> f64 {
    1e-10 * (1.0 + 4f64.powf(alpha))
}

/// Absolute accuracy expected from the dense eigensolver on a section with
/// spectrum in [-V, 4^α].
pub fn resolution(alpha: f64) -> f64 {
    256.0 * f64::EPSILON * (1.0 + 4f64.powf(alpha))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub alpha: f64,
    #[serde(rename = "N")]
    pub size: usize,
    pub potential: String,
    pub min_eigenvalue: f64,
    pub converged: bool,
    pub residual: f64,
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::InvalidInput("section size N must be at least 1".into()));
    }
    Ok(())
}

fn probe_operator(op: TruncatedOperator, v: &Potential) -> Result<ProbeResult> {
    let alpha = op.alpha();
    let size = op.size();
    let op = op.subtract_potential(|n| v.value(n));
    let pair = smallest_eigenpair(op.matrix())?;
    Ok(ProbeResult {
        alpha,
        size,
        potential: v.describe(),
        min_eigenvalue: pair.value,
        converged: pair.residual <= RESIDUAL_RATIO * pair.norm.max(f64::MIN_POSITIVE),
        residual: pair.residual,
    })
}

/// Smallest eigenvalue of the N×N section of (-Δ)^α - diag(V_1, ..., V_N).
pub fn min_eig(alpha: f64, size: usize, v: &Potential) -> Result<ProbeResult> {
    check_size(size)?;
    probe_operator(assemble(alpha, size)?, v)
}

/// Same for 4^α - (-Δ)^α - diag(V).
pub fn min_eig_reflected(alpha: f64, size: usize, v: &Potential) -> Result<ProbeResult> {
    check_size(size)?;
    probe_operator(assemble_reflected(alpha, size)?, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchedulePoint {
    #[serde(rename = "N")]
    pub size: usize,
    pub min_eig: f64,
    pub residual: f64,
}

impl From<&ProbeResult> for SchedulePoint {
    fn from(p: &ProbeResult) -> Self {
        SchedulePoint {
            size: p.size,
            min_eig: p.min_eigenvalue,
            residual: p.residual,
        }
    }
}

/// Heuristic limit of a sequence of section eigenvalues. Not a certified
/// enclosure: the rate at which sections converge is not known a priori.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation {
    pub limit: f64,
    pub error_bar: f64,
    /// fitted p in μ(N) ≈ limit + A N^{-p}, when a fit was possible
    pub exponent: Option<f64>,
}

/// Fits μ = L + A N^{-p} through three points. `None` when the differences do
/// not contract; `Some((L, None))` when they contract faster than any power up
/// to [`MAX_EXPONENT`].
fn power_law_fit(p: [(usize, f64); 3]) -> Option<(f64, Option<f64>)> {
    let [(n1, m1), (n2, m2), (n3, m3)] = p;
    let d1 = m1 - m2;
    let d2 = m2 - m3;
    if d2 == 0.0 {
        return Some((m3, None));
    }
    if d1 == 0.0 || d1.signum() != d2.signum() || d2.abs() >= d1.abs() {
        return None;
    }
    let target = (d1 / d2).ln();
    // x_i = (N3/N_i)^p, ratio (x1 - x2)/(x2 - 1) = d1/d2
    let ratio = |q: f64| -> f64 {
        let x1 = (n3 as f64 / n1 as f64).powf(q);
        let x2 = (n3 as f64 / n2 as f64).powf(q);
        ((x1 - x2) / (x2 - 1.0)).ln() - target
    };
    if ratio(MAX_EXPONENT) < 0.0 {
        return Some((m3, None));
    }
    let lo = 1e-6;
    if ratio(lo) > 0.0 {
        return None;
    }
    let q = find_root(ratio, lo, MAX_EXPONENT, 1e-12).ok()?;
    let x2 = (n3 as f64 / n2 as f64).powf(q);
    Some((m3 - d2 / (x2 - 1.0), Some(q)))
}

/// Richardson-type extrapolation on the last three points with a fitted
/// power-law exponent. The error bar is the size of the correction, or the
/// change from the previous triple if larger, plus `floor`.
pub fn extrapolate(points: &[(usize, f64)], floor: f64) -> Extrapolation {
    let k = points.len();
    match k {
        0 => Extrapolation {
            limit: f64::NAN,
            error_bar: f64::NAN,
            exponent: None,
        },
        1 => Extrapolation {
            limit: points[0].1,
            error_bar: points[0].1.abs() + floor,
            exponent: None,
        },
        2 => Extrapolation {
            limit: points[1].1,
            error_bar: (points[1].1 - points[0].1).abs() + floor,
            exponent: None,
        },
        _ => {
            let last = points[k - 1].1;
            let triple = |i: usize| [points[i], points[i + 1], points[i + 2]];
            match power_law_fit(triple(k - 3)) {
                Some((limit, exponent)) => {
                    let mut spread = (limit - last).abs();
                    if k >= 4 {
                        let previous = power_law_fit(triple(k - 4)).map_or(points[k - 2].1, |f| f.0);
                        spread = spread.max((limit - previous).abs());
                    }
                    Extrapolation {
                        limit,
                        error_bar: spread + floor,
                        exponent,
                    }
                }
                None => {
                    let d1 = (points[k - 3].1 - points[k - 2].1).abs();
                    let d2 = (points[k - 2].1 - last).abs();
                    Extrapolation {
                        limit: last,
                        error_bar: d1 + d2 + floor,
                        exponent: None,
                    }
                }
            }
        }
    }
}

/// Eigenvalues of nested sections for increasing N.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceSeries {
    pub schedule: Vec<SchedulePoint>,
    pub extrapolated: Extrapolation,
    /// non-increasing in N up to solver resolution
    pub monotone: bool,
    pub all_converged: bool,
}

fn check_schedule(schedule: &[usize]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidInput("empty N schedule".into()));
    }
    if schedule.contains(&0) || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "N schedule must be strictly increasing positive sizes".into(),
        ));
    }
    Ok(())
}

fn series(
    alpha: f64,
    schedule: &[usize],
    mut probe: impl FnMut(usize) -> Result<ProbeResult>,
) -> Result<ConvergenceSeries> {
    check_schedule(schedule)?;
    let probes = schedule.iter().map(|&n| probe(n)).collect::<Result<Vec<_>>>()?;
    let floor = resolution(alpha);
    let points: Vec<(usize, f64)> = probes.iter().map(|p| (p.size, p.min_eigenvalue)).collect();
    Ok(ConvergenceSeries {
        schedule: probes.iter().map(SchedulePoint::from).collect(),
        extrapolated: extrapolate(&points, floor),
        monotone: points.windows(2).all(|w| w[1].1 <= w[0].1 + floor),
        all_converged: probes.iter().all(|p| p.converged),
    })
}

pub fn convergence_series(alpha: f64, v: &Potential, schedule: &[usize]) -> Result<ConvergenceSeries> {
    series(alpha, schedule, |n| min_eig(alpha, n, v))
}

/// Interpretation of a criticality scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// extrapolated limit below zero by more than its error bar
    Negative,
    /// every section eigenvalue ≥ -tol
    NonNegative,
    /// critical α, but the predicted eigenvalue is below solver resolution
    NegativeBeyondResolution,
    Inconclusive,
}

/// Predicted |λ| for the perturbation c δ_n at α > 3/2, from the scaling of
/// the α = 2 closed form n⁸c⁴/4: (n²c)^{α/(α-3/2)}/4. Zero at α = 3/2, where
/// the eigenvalue is exponentially small.
pub fn expected_magnitude(alpha: f64, site: u64, coupling: f64) -> f64 {
    if alpha <= 1.5 {
        return 0.0;
    }
    let base = (site * site) as f64 * coupling;
    (alpha / (alpha - 1.5) * base.ln()).exp() / 4.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub alpha: f64,
    pub potential: String,
    pub site: u64,
    pub coupling: f64,
    pub schedule: Vec<SchedulePoint>,
    pub extrapolated: Extrapolation,
    pub monotone: bool,
    pub expected_magnitude: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
}

fn verdict(alpha: f64, s: &ConvergenceSeries, expected: Option<f64>) -> Verdict {
    let tol = tolerance(alpha);
    let e = s.extrapolated;
    if e.limit + e.error_bar < 0.0 {
        return Verdict::Negative;
    }
    if alpha >= 1.5 {
        return match expected {
            Some(m) if m < resolution(alpha) => Verdict::NegativeBeyondResolution,
            _ => Verdict::Inconclusive,
        };
    }
    if s.schedule.iter().all(|p| p.min_eig >= -tol) {
        Verdict::NonNegative
    } else {
        Verdict::Inconclusive
    }
}

/// For each coupling c, the series of section eigenvalues of (-Δ)^α - c δ_site.
pub fn criticality_scan(alpha: f64, site: u64, couplings: &[f64], schedule: &[usize]) -> Result<Vec<ScanReport>> {
    couplings
        .iter()
        .map(|&c| {
            let v = Potential::delta(site, c)?;
            let s = convergence_series(alpha, &v, schedule)?;
            let expected = (alpha >= 1.5).then(|| expected_magnitude(alpha, site, c));
            Ok(ScanReport {
                alpha,
                potential: v.describe(),
                site,
                coupling: c,
                verdict: verdict(alpha, &s, expected),
                schedule: s.schedule,
                extrapolated: s.extrapolated,
                monotone: s.monotone,
                expected_magnitude: expected,
                tolerance: tolerance(alpha),
            })
        })
        .collect()
}

/// Section eigenvalues for an inequality H ≥ V that should hold: all of them
/// should stay above -tol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub alpha: f64,
    pub potential: String,
    pub schedule: Vec<SchedulePoint>,
    pub tolerance: f64,
    pub min_over_schedule: f64,
    pub holds: bool,
    /// coupling below which a single site is certified (reflected operator only)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub single_site_threshold: Option<f64>,
    /// V^KPP_n > V^H_n for every n up to this bound (KPP witness only)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominates_classical_up_to: Option<u64>,
}

fn witness(alpha: f64, v: &Potential, s: ConvergenceSeries) -> WitnessReport {
    let tol = tolerance(alpha);
    let min_over_schedule = s.schedule.iter().map(|p| p.min_eig).fold(f64::INFINITY, f64::min);
    WitnessReport {
        alpha,
        potential: v.describe(),
        schedule: s.schedule,
        tolerance: tol,
        min_over_schedule,
        holds: min_over_schedule >= -tol,
        single_site_threshold: None,
        dominates_classical_up_to: None,
    }
}

/// (-Δ)^α - V over the schedule.
pub fn potential_witness(alpha: f64, v: &Potential, schedule: &[usize]) -> Result<WitnessReport> {
    let s = convergence_series(alpha, v, schedule)?;
    Ok(witness(alpha, v, s))
}

/// (-Δ)^α minus the power weight γ(α, ε)/n^{max(1,2α)+ε}.
pub fn hardy_witness(alpha: f64, epsilon: f64, schedule: &[usize]) -> Result<WitnessReport> {
    let v = theorem3_weight(alpha, epsilon)?;
    potential_witness(alpha, &v, schedule)
}

/// 4^α - (-Δ)^α - c δ_site over the schedule.
pub fn reflected_witness(alpha: f64, coupling: f64, site: u64, schedule: &[usize]) -> Result<WitnessReport> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::UnsupportedExponent(alpha));
    }
    let v = Potential::delta(site, coupling)?;
    let s = series(alpha, schedule, |n| min_eig_reflected(alpha, n, &v))?;
    let mut report = witness(alpha, &v, s);
    // the reflected Green kernel at 0 satisfies G_nn ≤ C n²
    report.single_site_threshold = Some(1.0 / (reflected_constant(alpha)? * (site * site) as f64));
    Ok(report)
}

/// Entrywise range over which V^KPP > V^H is checked.
pub const KPP_DOMINANCE_RANGE: u64 = 1_000_000;

/// -Δ - V^KPP over the schedule, plus the entrywise comparison with 1/(4n²).
pub fn kpp_witness(schedule: &[usize]) -> Result<WitnessReport> {
    let mut report = potential_witness(1.0, &Potential::Kpp, schedule)?;
    let dominated = (1..=KPP_DOMINANCE_RANGE).all(|n| Potential::Kpp.value(n) > Potential::ClassicalHardy.value(n));
    report.dominates_classical_up_to = dominated.then_some(KPP_DOMINANCE_RANGE);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn laplacian_section_oracle() {
        let p = min_eig(1.0, 100, &Potential::zero()).unwrap();
        assert!((p.min_eigenvalue - (2.0 - 2.0 * (PI / 101.0).cos())).abs() < 1e-12);
        assert!(p.converged);
    }

    #[test]
    fn bilaplacian_first_site() {
        let p = min_eig(2.0, 400, &Potential::delta(1, 1.0).unwrap()).unwrap();
        assert!((p.min_eigenvalue + 1.0 / 18.0).abs() < 1e-6);
    }

    #[test]
    fn extrapolation_of_power_law() {
        let pts: Vec<(usize, f64)> = [100, 200, 400, 800]
            .iter()
            .map(|&n| (n, -0.25 + 3.0 / (n as f64).powf(1.7)))
            .collect();
        let e = extrapolate(&pts, 0.0);
        assert!((e.limit + 0.25).abs() < 1e-12);
        assert!((e.exponent.unwrap() - 1.7).abs() < 1e-8);
        // non-geometric schedule
        let pts: Vec<(usize, f64)> = [100, 300, 700].iter().map(|&n| (n, 1.0 + 1.0 / n as f64)).collect();
        let e = extrapolate(&pts, 0.0);
        assert!((e.limit - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extrapolation_of_converged_and_noisy_sequences() {
        let e = extrapolate(&[(1, -0.5), (2, -0.5 - 1e-9), (4, -0.5 - 1e-30)], 1e-14);
        assert!((e.limit + 0.5).abs() < 1e-9 && e.error_bar < 1e-8);
        let e = extrapolate(&[(1, 1.0), (2, 2.0), (4, 1.5)], 0.0);
        assert_eq!(e.limit, 1.5);
        assert!(e.error_bar >= 1.5);
    }

    #[test]
    fn schedule_validation() {
        assert!(convergence_series(1.0, &Potential::zero(), &[]).is_err());
        assert!(convergence_series(1.0, &Potential::zero(), &[20, 10]).is_err());
        assert!(min_eig(1.0, 0, &Potential::zero()).is_err());
    }

    #[test]
    fn subcritical_scan_is_non_negative() {
        let r = criticality_scan(1.0, 1, &[0.5], &[50, 100, 200]).unwrap();
        assert_eq!(r[0].verdict, Verdict::NonNegative);
        assert!(r[0].monotone);
    }

    #[test]
    fn bilaplacian_scan_is_negative() {
        let r = criticality_scan(2.0, 1, &[1.0], &[50, 100, 200]).unwrap();
        assert_eq!(r[0].verdict, Verdict::Negative);
        assert!((r[0].extrapolated.limit + 1.0 / 18.0).abs() < 1e-9);
    }

    #[test]
    fn reflected_and_kpp_witnesses() {
        let w = reflected_witness(3.0, 1e-3, 1, &[50, 100]).unwrap();
        assert!(w.holds, "{w:?}");
        assert!(w.single_site_threshold.unwrap() > 0.0);
        let w = reflected_witness(2.0, 0.0, 1, &[50]).unwrap();
        assert!(w.holds);
        let w = kpp_witness(&[100, 200]).unwrap();
        assert!(w.holds);
        assert_eq!(w.dominates_classical_up_to, Some(KPP_DOMINANCE_RANGE));
    }
}
