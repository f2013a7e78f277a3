//! Quadrature over (-1, 1) against the semicircle weight √(1-x²) or plain dx.
//!
//! `integrate` substitutes x = cos θ and applies tanh–sinh quadrature on
//! θ ∈ (0, π). Quantities near the endpoints (1 - x, 1 + x, sin θ) are
//! formed from half-angle sines and cosines of the node's distance to the
//! endpoint, so algebraic factors (1 - x)^σ keep full relative accuracy even
//! when x rounds to ±1.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::error::{Error, Result};

/// Default absolute tolerance of `integrate`.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_LEVEL: u32 = 14;

/// A quadrature node expressed in every coordinate an integrand may need.
#[derive(Debug, Clone, Copy)]
pub struct ChebPoint {
    pub x: f64,
    pub theta: f64,
    pub pi_minus_theta: f64,
    /// 1 - x = 2 sin²(θ/2)
    pub one_minus_x: f64,
    /// 1 + x = 2 cos²(θ/2)
    pub one_plus_x: f64,
    pub sin_half: f64,
    pub cos_half: f64,
}

impl ChebPoint {
    /// Point for angle θ = `theta`, with `pi_minus_theta` = π - θ supplied
    /// separately so both endpoints are resolved.
    pub fn from_angle(theta: f64, pi_minus_theta: f64) -> Self {
        let (sin_half, cos_half) = if theta <= FRAC_PI_2 {
            ((0.5 * theta).sin(), (0.5 * theta).cos())
        } else {
            ((0.5 * pi_minus_theta).cos(), (0.5 * pi_minus_theta).sin())
        };
        let x = if theta <= FRAC_PI_2 {
            theta.cos()
        } else {
            -pi_minus_theta.cos()
        };
        ChebPoint {
            x,
            theta,
            pi_minus_theta,
            one_minus_x: 2.0 * sin_half * sin_half,
            one_plus_x: 2.0 * cos_half * cos_half,
            sin_half,
            cos_half,
        }
    }

    /// sin θ = √(1 - x²).
    pub fn sin_theta(&self) -> f64 {
        2.0 * self.sin_half * self.cos_half
    }

    /// sin(kθ), taken from whichever of θ, π - θ is smaller.
    pub fn sin_multiple(&self, k: u64) -> f64 {
        if self.theta <= FRAC_PI_2 {
            (k as f64 * self.theta).sin()
        } else {
            // sin(k(π - δ)) = (-1)^{k+1} sin(kδ)
            let v = (k as f64 * self.pi_minus_theta).sin();
            if k.is_multiple_of(2) {
                -v
            } else {
                v
            }
        }
    }

    /// U_n(x) = sin((n+1)θ) / sin θ.
    pub fn chebyshev_u(&self, n: u64) -> f64 {
        let s = self.sin_theta();
        if s == 0.0 {
            let v = (n + 1) as f64;
            return if self.x < 0.0 && n % 2 == 1 { -v } else { v };
        }
        self.sin_multiple(n + 1) / s
    }
}

/// Measure on (-1, 1) the integrand is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// √(1 - x²) dx
    Chebyshev2,
    /// dx
    Plain,
}

/// ∫ f(x) (1 - x)^σ w(x) dx over (-1, 1), with `f` regular.
pub struct Integrand<F> {
    f: F,
    weight: Weight,
    endpoint_exponent: f64,
    frequency: f64,
}

impl<F: Fn(&ChebPoint) -> f64> Integrand<F> {
    /// Regular `f` against the semicircle weight.
    pub fn new(f: F) -> Self {
        Integrand {
            f,
            weight: Weight::Chebyshev2,
            endpoint_exponent: 0.0,
            frequency: 1.0,
        }
    }

    pub fn with_weight(mut self, weight: Weight) -> Self {
        self.weight = weight;
        self
    }

    /// Algebraic factor (1 - x)^σ multiplied onto `f`.
    pub fn with_endpoint_exponent(mut self, sigma: f64) -> Self {
        self.endpoint_exponent = sigma;
        self
    }

    /// Largest angular frequency present in `f` (e.g. m + n for U_{m-1} U_{n-1});
    /// used to pick the starting step size.
    pub fn with_frequency(mut self, k: f64) -> Self {
        self.frequency = k.max(1.0);
        self
    }

    /// Integrand in t: f times weight, (1 - x)^σ and the Jacobian dθ/dt,
    /// assembled in logs so that nodes with θ below the f64 range still count.
    fn eval(&self, p: &ChebPoint, ln_sin_half: f64, ln_jacobian: f64) -> f64 {
        let sigma = self.endpoint_exponent;
        let ln_c = p.cos_half.ln();
        let ln_w = match self.weight {
            // (1-x)^σ sin²θ = 2^{σ+2} s^{2σ+2} c²
            Weight::Chebyshev2 => (sigma + 2.0) * LN_2 + (2.0 * sigma + 2.0) * ln_sin_half + 2.0 * ln_c,
            // (1-x)^σ sin θ = 2^{σ+1} s^{2σ+1} c
            Weight::Plain => (sigma + 1.0) * LN_2 + (2.0 * sigma + 1.0) * ln_sin_half + ln_c,
        };
        let w = (ln_w + ln_jacobian).exp();
        if w == 0.0 {
            return 0.0;
        }
        w * (self.f)(p)
    }

    /// Power of θ governing the θ → 0 behaviour of `eval` (assuming f(1) ≠ 0).
    fn left_order(&self) -> f64 {
        match self.weight {
            Weight::Chebyshev2 => 2.0 * self.endpoint_exponent + 3.0,
            Weight::Plain => 2.0 * self.endpoint_exponent + 2.0,
        }
    }
}

/// Tanh–sinh quadrature of `ig` to absolute tolerance `tol`.
pub fn integrate<F: Fn(&ChebPoint) -> f64>(ig: &Integrand<F>, tol: f64) -> Result<f64> {
    let order = ig.left_order();
    if !(order > 0.0) {
        return Err(Error::InvalidInput(format!(
            "endpoint exponent {} is not integrable against the chosen weight",
            ig.endpoint_exponent
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    // node spacing in θ near the middle is about (π²/4) h; aim for ≥ 8 nodes per period
    let h_target = 2.0 * PI / (ig.frequency * 8.0 * PI * PI / 4.0);
    let first = (-h_target.log2()).ceil().clamp(2.0, (MAX_LEVEL - 2) as f64) as u32;

    // Truncation point: the integrand decays like exp(-order·(π/2)·e^t) in t.
    let order_min = order.min(match ig.weight {
        Weight::Chebyshev2 => 3.0,
        Weight::Plain => 2.0,
    });
    let mut t_max = 3.0f64;
    while order_min * PI * t_max.sinh() - t_max < 45.0 && t_max < 24.0 {
        t_max += 0.25;
    }

    // pair of nodes θ_L = π / (1 + e^{2u}) and π - θ_L, u = (π/2) sinh t;
    // returns (value, |value|)
    let pair = |t: f64| -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let e2 = (-2.0 * u).exp();
        let small = PI * e2 / (1.0 + e2);
        let ln_small = PI.ln() - 2.0 * u - e2.ln_1p();
        // dθ/dt = θ (1 - θ/π) π cosh t
        let ln_jac = ln_small + (-small / PI).ln_1p() + (PI * t.cosh()).ln();
        let big = PI - small;
        let left = ChebPoint::from_angle(small, big);
        let right = ChebPoint::from_angle(big, small);
        let ln_s_left = if small > 1e-8 {
            left.sin_half.ln()
        } else {
            ln_small - LN_2
        };
        let a = ig.eval(&left, ln_s_left, ln_jac);
        let b = ig.eval(&right, right.sin_half.ln(), ln_jac);
        (a + b, a.abs() + b.abs())
    };

    let mut h = 0.5f64.powi(first as i32);
    let steps = (t_max / h).round() as i64;
    let centre = ChebPoint::from_angle(FRAC_PI_2, FRAC_PI_2);
    let mid = ig.eval(&centre, centre.sin_half.ln(), (0.25 * PI * PI).ln());
    let mut sum = mid;
    let mut abs_sum = mid.abs();
    for j in 1..=steps {
        let (v, a) = pair(j as f64 * h);
        sum += v;
        abs_sum += a;
    }
    let mut estimate = h * sum;
    let mut history = Vec::new();

    for level in first + 1..=MAX_LEVEL {
        h *= 0.5;
        let steps = (t_max / h).round() as i64;
        let mut j = 1;
        while j <= steps {
            let (v, a) = pair(j as f64 * h);
            sum += v;
            abs_sum += a;
            j += 2;
        }
        let next = h * sum;
        let diff = (next - estimate).abs();
        let floor = 64.0 * f64::EPSILON * h * abs_sum;
        history.push(diff);
        estimate = next;
        if !estimate.is_finite() {
            return Err(Error::NonConvergence {
                what: "tanh-sinh quadrature",
                detail: "integrand produced a non-finite value".into(),
            });
        }
        if diff < 0.5 * tol.max(floor) && level > first + 1 {
            return Ok(estimate);
        }
    }
    Err(Error::NonConvergence {
        what: "tanh-sinh quadrature",
        detail: format!(
            "{} levels did not reach tolerance {:e} (last change {:e})",
            MAX_LEVEL,
            tol,
            history.last().copied().unwrap_or(f64::NAN)
        ),
    })
}

/// Gauss–Chebyshev quadrature of the second kind: ∫ f(x) √(1-x²) dx with
/// `nodes` points, exact for polynomials of degree ≤ 2·nodes - 1.
pub fn gauss_chebyshev2<F: Fn(f64) -> f64>(f: F, nodes: usize) -> f64 {
    let n1 = (nodes + 1) as f64;
    (1..=nodes)
        .map(|k| {
            let a = k as f64 * PI / n1;
            let s = a.sin();
            PI / n1 * s * s * f(a.cos())
        })
        .sum()
}
