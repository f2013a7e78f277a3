//! The bilaplacian Δ² on the half-line: its Green kernel in Joukowski
//! variables and the negative eigenvalue of Δ² - c δ_n.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::find_root;

/// Default relative tolerance of [`lambda_n_implicit`].
pub const DEFAULT_TOL: f64 = 1e-13;

/// Below this separation of ξ and η the Green kernel is summed term by term
/// instead of through the divided difference (ξ^p - η^p)/(ξ - η).
const DEGENERATE_GAP: f64 = 1e-2;

/// The in-disk solutions of ξ + 1/ξ = 2 + √λ and η + 1/η = 2 - √λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JoukowskiPair {
    pub xi: Complex64,
    pub eta: Complex64,
    pub lambda: Complex64,
    // ξ - 1 and η - 1, kept separately: both roots approach 1 as λ → 0
    xi_m1: Complex64,
    eta_m1: Complex64,
}

impl JoukowskiPair {
    /// ξ - η without cancellation near λ = 0.
    pub fn gap(&self) -> Complex64 {
        self.xi_m1 - self.eta_m1
    }

    /// 1 - ξη without cancellation near λ = 0.
    fn one_minus_product(&self) -> Complex64 {
        -(self.xi_m1 + self.eta_m1 + self.xi_m1 * self.eta_m1)
    }
}

/// In-disk root z = 1 + δ of z² - (2 + s)z + 1 = 0, returned as (z, δ).
fn in_disk_root(s: Complex64) -> (Complex64, Complex64) {
    // δ² - sδ - s = 0; take the larger |δ| first (no cancellation), the other
    // from the product of the roots, -s.
    let r = (s * s + 4.0 * s).sqrt();
    let big = if (s.conj() * r).re >= 0.0 {
        (s + r) * 0.5
    } else {
        (s - r) * 0.5
    };
    let other = if big == Complex64::new(0.0, 0.0) { big } else { -s / big };
    let (inside, outside) = if (1.0 + big).norm() < (1.0 + other).norm() {
        (big, other)
    } else {
        (other, big)
    };
    let far = 1.0 + outside;
    if far.norm() > 2.0 {
        // small root: invert the large one rather than cancel 1 + δ ≈ 0
        let z = 1.0 / far;
        (z, z - 1.0)
    } else {
        (1.0 + inside, inside)
    }
}

fn pair_from_root(lambda: Complex64, root: Complex64) -> JoukowskiPair {
    let (xi, xi_m1) = in_disk_root(root);
    let (eta, eta_m1) = in_disk_root(-root);
    JoukowskiPair {
        xi,
        eta,
        lambda,
        xi_m1,
        eta_m1,
    }
}

fn check_lambda(lambda: Complex64) -> Result<()> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(Error::InvalidInput(format!("lambda must be finite, got {lambda}")));
    }
    if lambda.im == 0.0 && (0.0..=16.0).contains(&lambda.re) {
        return Err(Error::domain(
            "joukowski_pair",
            lambda.re,
            "lambda must lie outside the spectrum [0, 16]",
        ));
    }
    Ok(())
}

/// Joukowski pair for λ ∉ [0, 16], using the principal square root of λ.
pub fn joukowski_pair(lambda: Complex64) -> Result<JoukowskiPair> {
    check_lambda(lambda)?;
    Ok(pair_from_root(lambda, lambda.sqrt()))
}

/// Σ_{j<k} (ξ^p - η^p)/(ξ - η) over p = d + 1 + 2j.
fn divided_difference_sum(pair: &JoukowskiPair, d: u64, k: u64) -> Complex64 {
    let (xi, eta) = (pair.xi, pair.eta);
    let gap = pair.gap();
    if gap.norm() >= DEGENERATE_GAP {
        let geometric = |z: Complex64| -> Complex64 {
            let z2 = z * z;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut term = z.powu((d + 1) as u32);
            for _ in 0..k {
                acc += term;
                term *= z2;
            }
            acc
        };
        return (geometric(xi) - geometric(eta)) / gap;
    }
    // D_1 = 1, D_2 = ξ + η, D_{p+1} = (ξ + η) D_p - ξη D_{p-1}
    let sum = xi + eta;
    let prod = xi * eta;
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let last = d + 2 * k - 1;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 1..=last {
        if p > d && (p - d - 1).is_multiple_of(2) {
            acc += cur;
        }
        let next = sum * cur - prod * prev;
        prev = cur;
        cur = next;
    }
    acc
}

fn check_indices(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!("indices start at 1, got m = {m}, n = {n}")));
    }
    Ok(())
}

fn green_from_pair(pair: &JoukowskiPair, m: u64, n: u64) -> Complex64 {
    // With k = min(m, n) and d = |m - n| the bracketed difference of
    // geometric terms equals Σ_{j<k} (ξ^p - η^p), p = d + 1 + 2j.
    let k = m.min(n);
    let d = m.max(n) - k;
    pair.xi * pair.eta / pair.one_minus_product() * divided_difference_sum(pair, d, k)
}

/// (Δ² - λ)^{-1}_{m,n} for λ ∉ [0, 16].
pub fn bilap_green(m: u64, n: u64, lambda: Complex64) -> Result<Complex64> {
    check_indices(m, n)?;
    let pair = joukowski_pair(lambda)?;
    Ok(green_from_pair(&pair, m, n))
}

/// [`bilap_green`] for real λ ∉ [0, 16], where the kernel is real.
pub fn bilap_green_real(m: u64, n: u64, lambda: f64) -> Result<f64> {
    Ok(bilap_green(m, n, Complex64::new(lambda, 0.0))?.re)
}

/// The perturbation c δ_n: coupling c > 0 at site n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaPerturbation {
    pub site: u64,
    pub coupling: f64,
}

impl DeltaPerturbation {
    pub fn new(site: u64, coupling: f64) -> Result<Self> {
        if site == 0 {
            return Err(Error::InvalidInput("delta site starts at 1".into()));
        }
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "coupling must be positive, got {coupling}"
            )));
        }
        Ok(DeltaPerturbation { site, coupling })
    }
}

/// Φ in the variable q = r²/(1 - r²) ∈ (0, ∞):
/// q Σ_{j<n} s^j sin((2j+1)φ)/sin φ with s = r², tan φ = (1 - r²)/(2r).
fn implicit_lhs_q(n: u64, q: f64) -> f64 {
    let s = q / (1.0 + q);
    let t = 1.0 / (1.0 + q);
    let phi = t.atan2(2.0 * s.sqrt());
    let sin_phi = phi.sin();
    let mut acc = 0.0;
    let mut power = 1.0;
    for j in 0..n {
        acc += power * ((2 * j + 1) as f64 * phi).sin() / sin_phi;
        power *= s;
    }
    q * acc
}

/// Φ(r) = (r²/(1-r²)) Σ_{j<n} r^{2j} U_{2j}(2r/(1+r²)) for r ∈ (0, 1).
pub fn implicit_lhs(n: u64, r: f64) -> f64 {
    let r2 = r * r;
    implicit_lhs_q(n, r2 / (1.0 - r2))
}

/// λ = -(1-r²)⁴/(r²(1+r²)²) written in q.
fn lambda_from_q(q: f64) -> f64 {
    let s = q / (1.0 + q);
    let t = 1.0 / (1.0 + q);
    -t.powi(4) / (s * (1.0 + s).powi(2))
}

/// Root q of Φ = 1/c, to relative tolerance `tol`.
fn implicit_q(p: &DeltaPerturbation, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let target = 1.0 / p.coupling;
    let n = p.site;
    // q ≤ Φ(q) ≤ n² q, so the root lies in [1/(c n²), 1/c]
    let lo = (target / (n * n) as f64).ln() - 1.0;
    let hi = target.ln() + 1.0;
    let x = find_root(
        |x| {
            let v = implicit_lhs_q(n, x.exp());
            (v / target).ln()
        },
        lo,
        hi,
        tol,
    )?;
    Ok(x.exp())
}

/// The unique r ∈ (0, 1) with Φ(r) = 1/c.
pub fn implicit_radius(p: &DeltaPerturbation, tol: f64) -> Result<f64> {
    let q = implicit_q(p, tol)?;
    Ok((q / (1.0 + q)).sqrt())
}

/// The negative eigenvalue λ_n(c) of Δ² - c δ_n from the implicit equation.
pub fn lambda_n_implicit(p: &DeltaPerturbation, tol: f64) -> Result<f64> {
    Ok(lambda_from_q(implicit_q(p, tol)?))
}

/// λ_1(c) = -c⁴/((c+1)(c+2)²).
pub fn lambda_1_closed(c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::domain("lambda_1_closed", c, "requires c > 0"));
    }
    Ok(-c.powi(4) / ((c + 1.0) * (c + 2.0).powi(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticRegime {
    SmallC,
    LargeC,
}

/// Truncated expansions of λ_n(c) for n ≥ 2:
/// -(n⁸c⁴/4)(1 - (2n(4n²-1)/3)c) as c → 0 and -c + 6 as c → ∞.
pub fn lambda_n_asymptotic(n: u64, c: f64, regime: AsymptoticRegime) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(
            "lambda_n_asymptotic",
            n as f64,
            "the expansions hold for n >= 2",
        ));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::domain("lambda_n_asymptotic", c, "requires c > 0"));
    }
    let nf = n as f64;
    Ok(match regime {
        AsymptoticRegime::SmallC => {
            let slope = 2.0 * nf * (4.0 * nf * nf - 1.0) / 3.0;
            -(nf.powi(8) * c.powi(4) / 4.0) * (1.0 - slope * c)
        }
        AsymptoticRegime::LargeC => -c + 6.0,
    })
}

/// |1 - c G_{nn}(λ)|, which vanishes at the eigenvalue.
pub fn bs_residual(p: &DeltaPerturbation, lambda: f64) -> Result<f64> {
    let g = bilap_green_real(p.site, p.site, lambda)?;
    Ok((1.0 - p.coupling * g).abs())
}

/// One row of a (n, c) sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BilapSweepRow {
    pub n: u64,
    pub c: f64,
    pub lambda_implicit: f64,
    pub lambda_closed_or_nan: f64,
    pub lambda_asym_small: f64,
    pub lambda_asym_large: f64,
    pub bs_residual: f64,
}

pub fn sweep_row(p: &DeltaPerturbation, tol: f64) -> Result<BilapSweepRow> {
    let lambda = lambda_n_implicit(p, tol)?;
    let (n, c) = (p.site, p.coupling);
    let closed = if n == 1 { lambda_1_closed(c)? } else { f64::NAN };
    let asym = |regime| lambda_n_asymptotic(n, c, regime).unwrap_or(f64::NAN);
    Ok(BilapSweepRow {
        n,
        c,
        lambda_implicit: lambda,
        lambda_closed_or_nan: closed,
        lambda_asym_small: asym(AsymptoticRegime::SmallC),
        lambda_asym_large: asym(AsymptoticRegime::LargeC),
        bs_residual: bs_residual(p, lambda)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green_hardy::{green_entry, green_entry_complex, GreenQuery};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pair_examples() {
        let p = joukowski_pair(c(25.0, 0.0)).unwrap();
        assert!((p.xi - c((7.0 - 45f64.sqrt()) / 2.0, 0.0)).norm() < 1e-15);
        assert!((p.eta - c((-3.0 + 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-15);
        for lambda in [-1e-12, -1e-4, -0.3, -1.0, -50.0, -1e8] {
            let p = joukowski_pair(c(lambda, 0.0)).unwrap();
            assert!((p.xi - p.eta.conj()).norm() < 1e-13, "{lambda}");
        }
        assert!(joukowski_pair(c(0.0, 0.0)).is_err());
        assert!(joukowski_pair(c(16.0, 0.0)).is_err());
        assert!(joukowski_pair(c(3.0, 1e-3)).is_ok());
    }

    #[test]
    fn pair_solves_defining_equations() {
        for lambda in [c(-2.0, 0.0), c(17.0, 0.0), c(5.0, 2.0), c(-1e-6, 1e-6), c(1e3, -4e3)] {
            let p = joukowski_pair(lambda).unwrap();
            let root = lambda.sqrt();
            assert!(p.xi.norm() < 1.0 && p.eta.norm() < 1.0);
            assert!((p.xi + 1.0 / p.xi - 2.0 - root).norm() < 1e-13 * (1.0 + root.norm()));
            assert!((p.eta + 1.0 / p.eta - 2.0 + root).norm() < 1e-13 * (1.0 + root.norm()));
        }
    }

    #[test]
    fn branch_choice_does_not_matter() {
        for lambda in [c(-0.7, 0.0), c(30.0, 0.0), c(2.0, -3.0)] {
            let a = pair_from_root(lambda, lambda.sqrt());
            let b = pair_from_root(lambda, -lambda.sqrt());
            for (m, n) in [(1, 1), (2, 5), (7, 3)] {
                let ga = green_from_pair(&a, m, n);
                let gb = green_from_pair(&b, m, n);
                assert!((ga - gb).norm() < 1e-13 * ga.norm());
            }
        }
    }

    #[test]
    fn green_matches_quadrature() {
        for (m, n, lambda) in [(1, 1, -1.0), (2, 5, -0.3), (4, 4, -1e-2), (8, 3, -100.0)] {
            let q = GreenQuery::new(2.0, m, n, lambda).unwrap();
            let oracle = green_entry(&q, 1e-13).unwrap();
            let g = bilap_green_real(m, n, lambda).unwrap();
            assert!(
                (g - oracle).abs() < 1e-10 * oracle.abs().max(1.0),
                "{m} {n} {lambda}: {g} vs {oracle}"
            );
        }
        let z = c(3.0, 2.0);
        let oracle = green_entry_complex(2.0, 2, 3, z, 1e-13).unwrap();
        assert!((bilap_green(2, 3, z).unwrap() - oracle).norm() < 1e-10);
    }

    #[test]
    fn both_kernel_paths_agree() {
        // small |ξ - η| takes the recurrence; compare with the explicit double sum
        for lambda in [-3e-5, -1e-4, -1e-3] {
            let p = joukowski_pair(c(lambda, 0.0)).unwrap();
            let closed = divided_difference_sum(&p, 2, 3);
            let mut direct = Complex64::new(0.0, 0.0);
            for j in 0..3u32 {
                let pw = 3 + 2 * j;
                let mut dd = Complex64::new(0.0, 0.0);
                for i in 0..pw {
                    dd += p.xi.powu(i) * p.eta.powu(pw - 1 - i);
                }
                direct += dd;
            }
            assert!((closed - direct).norm() < 1e-12 * direct.norm(), "{lambda}");
        }
    }

    #[test]
    fn green_symmetric() {
        for lambda in [c(-0.5, 0.0), c(20.0, 1.0)] {
            assert_eq!(bilap_green(3, 9, lambda).unwrap(), bilap_green(9, 3, lambda).unwrap());
        }
    }

    #[test]
    fn first_site_closed_form() {
        let p = DeltaPerturbation::new(1, 1.0).unwrap();
        assert_relative_eq!(
            lambda_n_implicit(&p, DEFAULT_TOL).unwrap(),
            -1.0 / 18.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(lambda_1_closed(2.0).unwrap(), -1.0 / 3.0, max_relative = 1e-15);
        for k in 0..50 {
            let cc = 10f64.powf(-3.0 + 6.0 * k as f64 / 49.0);
            let p = DeltaPerturbation::new(1, cc).unwrap();
            let v = lambda_n_implicit(&p, DEFAULT_TOL).unwrap();
            assert_relative_eq!(v, lambda_1_closed(cc).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn eigenvalue_is_a_birman_schwinger_fixed_point() {
        for n in 1..=10 {
            for cc in [1e-3, 0.1, 1.0, 7.0, 1e3] {
                let p = DeltaPerturbation::new(n, cc).unwrap();
                let lambda = lambda_n_implicit(&p, DEFAULT_TOL).unwrap();
                assert!(lambda < 0.0);
                assert!(bs_residual(&p, lambda).unwrap() < 1e-9, "{n} {cc}");
            }
        }
    }

    #[test]
    fn asymptotics() {
        assert_eq!(lambda_n_asymptotic(2, 3.0, AsymptoticRegime::LargeC).unwrap(), 3.0);
        let lead = lambda_n_asymptotic(2, 1e-6, AsymptoticRegime::SmallC).unwrap();
        assert_relative_eq!(lead, -64e-24, max_relative = 1e-4);
        assert!(lambda_n_asymptotic(1, 1.0, AsymptoticRegime::SmallC).is_err());
        // λ_1(c) = -c + 5 - 17/c + O(1/c²)
        let gaps: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&cc| (lambda_1_closed(cc).unwrap() + cc - 5.0).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 2e-3);
        assert_relative_eq!(gaps[2], 17e-4, max_relative = 1e-3);
    }

    #[test]
    fn sweep_row_fields() {
        let row = sweep_row(&DeltaPerturbation::new(1, 1.0).unwrap(), DEFAULT_TOL).unwrap();
        assert!(row.lambda_asym_small.is_nan());
        assert_relative_eq!(row.lambda_closed_or_nan, -1.0 / 18.0);
        let row = sweep_row(&DeltaPerturbation::new(2, 1e3).unwrap(), DEFAULT_TOL).unwrap();
        assert!(row.lambda_closed_or_nan.is_nan());
        assert!((row.lambda_implicit - row.lambda_asym_large).abs() < 1.0);
    }
}
