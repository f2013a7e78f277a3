//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Finds a root of `f` in [lo, hi], where f(lo) and f(hi) have opposite signs.
///
/// Bisection keeps the bracket; a secant step through the bracket ends is
/// taken whenever it lands strictly inside and the previous step shrank the
/// bracket by at least half. Stops when the bracket is narrower than
/// `xtol` or f vanishes.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::InvalidInput(format!(
            "root not bracketed: f({a}) = {fa}, f({b}) = {fb}"
        )));
    }
    let mut last_width = b - a;
    for _ in 0..400 {
        let width = b - a;
        if width <= xtol {
            break;
        }
        let secant = b - fb * (b - a) / (fb - fa);
        let use_secant = width <= 0.5 * last_width && secant > a && secant < b;
        let x = if use_secant { secant } else { 0.5 * (a + b) };
        // keep secant steps off the endpoints so the bracket keeps shrinking
        let guard = 0.01 * width;
        let x = x.clamp(a + guard.min(0.5 * width), b - guard.min(0.5 * width));
        last_width = width;
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    if b - a > xtol {
        return Err(Error::NonConvergence {
            what: "bracketed root search",
            detail: format!("bracket [{a}, {b}] still wider than {xtol}"),
        });
    }
    // endpoint with the smaller residual
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots() {
        let r = find_root(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        let r = find_root(|x| x.cos() - x, 0.0, 1.0, 1e-15).unwrap();
        assert!((r.cos() - r).abs() < 1e-15);
        // steep and flat pieces
        let r = find_root(|x| (x - 0.3).powi(3) * 1e6, -5.0, 1.0, 1e-14).unwrap();
        assert!((r - 0.3).abs() < 1e-4);
    }

    #[test]
    fn requires_bracket() {
        assert!(find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn few_evaluations_for_smooth_functions() {
        let mut calls = 0;
        find_root(
            |x| {
                calls += 1;
                x.exp() - 3.0
            },
            0.0,
            5.0,
            1e-14,
        )
        .unwrap();
        assert!(calls < 40, "{calls}");
    }
}
