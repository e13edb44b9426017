//! Exponential-kernel convolution on a uniform grid.
//!
//! Both routines approximate
//!
//! ```text
//! C(x_i) = integral from a to x_i of exp(-rate * (x_i - lambda)) * f(lambda) dlambda
//! ```
//!
//! with `f` replaced by its piecewise-linear interpolant. On each step the
//! kernel-weighted moments of the interpolant are integrated exactly, so the
//! scheme is second order in the step and *exact* whenever `f` is affine.
//!
//! [`exp_convolution`] exploits the kernel identity
//! `exp(-rate * (x_i - lambda)) = exp(-rate * step) * exp(-rate * (x_(i-1) - lambda))`
//! to stream the whole history in O(N). [`naive_convolution_oracle`] computes
//! the same quadrature by direct O(N^2) summation with a freshly evaluated
//! kernel factor per node pair; it exists to check the recurrence, not to be
//! fast.

use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};

/// Below this value of `rate * step` the closed-form step weights lose digits
/// to cancellation (both involve `1 - exp(-z)` differences of order `z` and
/// `z^2`), so a short series takes over. The series branch also covers
/// `rate = 0`, where the scheme degenerates to the cumulative trapezoid rule.
const SMALL_Z_SERIES: f64 = 1e-4;

/// Cumulative kernel-weighted integral attached to its grid.
/// `values[0]` is exactly 0: the integral over an empty interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionResult {
    grid: Grid,
    values: Vec<f64>,
}

impl ConvolutionResult {
    #[must_use]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Per-step quadrature weights: the integral over one step is
/// `w_curr * f_i + w_prev * f_(i-1)`, and `decay` carries the history.
struct StepWeights {
    decay: f64,
    w_prev: f64,
    w_curr: f64,
}

fn step_weights(rate: f64, step: f64) -> StepWeights {
    let z = rate * step;
    let decay = (-z).exp();
    // w0 = integral of exp(-rate u) over [0, step]
    // w1 = integral of u exp(-rate u) over [0, step]
    let (w0, w1) = if z < SMALL_Z_SERIES {
        let w0 = step * (1.0 - z / 2.0 + z * z / 6.0);
        let w1 = step * step * (0.5 - z / 3.0 + z * z / 8.0);
        (w0, w1)
    } else {
        let em = -(-z).exp_m1(); // 1 - exp(-z), full precision
        let w0 = em / rate;
        let w1 = (em - z * decay) / (rate * rate);
        (w0, w1)
    };
    StepWeights {
        decay,
        w_prev: w1 / step,
        w_curr: w0 - w1 / step,
    }
}

fn check_rate(rate: f64) -> Result<()> {
    if !rate.is_finite() || rate < 0.0 {
        return Err(Error::InvalidParams(format!(
            "kernel rate = {rate} must be finite and nonnegative"
        )));
    }
    Ok(())
}

/// Streaming O(N) evaluation of the cumulative exponential convolution.
///
/// `rate = 0` is allowed and yields the plain cumulative integral of the
/// interpolant (cumulative trapezoid of `f`).
///
/// # Errors
/// [`Error::InvalidParams`] when `rate` is negative or not finite.
pub fn exp_convolution(f: &SampledFunction, rate: f64) -> Result<ConvolutionResult> {
    check_rate(rate)?;
    let w = step_weights(rate, f.grid().step());
    let values = f.values();
    let mut out = Vec::with_capacity(values.len());
    out.push(0.0);
    let mut c = 0.0;
    for pair in values.windows(2) {
        c = w.decay * c + w.w_curr * pair[1] + w.w_prev * pair[0];
        out.push(c);
    }
    Ok(ConvolutionResult {
        grid: f.grid().clone(),
        values: out,
    })
}

/// Direct O(N^2) summation of the same step quadrature.
///
/// Each history step is attenuated by a kernel factor evaluated from scratch
/// (`exp(-rate * (x_i - x_j))`), so no state is shared with the streaming
/// recurrence. Summation runs from the far end of the history toward the
/// current node, smallest contributions first.
///
/// # Errors
/// [`Error::InvalidParams`] when `rate` is negative or not finite.
pub fn naive_convolution_oracle(f: &SampledFunction, rate: f64) -> Result<ConvolutionResult> {
    check_rate(rate)?;
    let step = f.grid().step();
    let z = rate * step;
    // Same mathematical weights as the streaming path, grouped differently:
    // four series terms below the crossover, exp_m1 pairing above it.
    let (w0, w1) = if rate == 0.0 {
        (step, step * step / 2.0)
    } else if z < SMALL_Z_SERIES {
        let w0 = step * (1.0 + z * (-1.0 / 2.0 + z * (1.0 / 6.0 + z * (-1.0 / 24.0))));
        let w1 = step * step * (0.5 + z * (-1.0 / 3.0 + z * (1.0 / 8.0 + z * (-1.0 / 30.0))));
        (w0, w1)
    } else {
        let em = -(-z).exp_m1();
        (em / rate, (em - z * (-z).exp()) / (rate * rate))
    };
    let a_curr = w0 - w1 / step;
    let b_prev = w1 / step;

    let values = f.values();
    let mut out = Vec::with_capacity(values.len());
    for i in 0..values.len() {
        let mut acc = 0.0;
        for j in 1..=i {
            let kernel = (-rate * ((i - j) as f64) * step).exp();
            acc += kernel * (a_curr * values[j] + b_prev * values[j - 1]);
        }
        out.push(acc);
    }
    Ok(ConvolutionResult {
        grid: f.grid().clone(),
        values: out,
    })
}
