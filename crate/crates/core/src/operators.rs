//! The exponential-kernel derivative family.
//!
//! The primary operator acts on a function `f` sampled on a uniform grid
//! starting at the lower limit `a`:
//!
//! ```text
//! D f(x) = R(nu)/(1 - nu) * d/dx integral_a^x exp(-rate (x - lambda)) f(lambda) dlambda
//! ```
//!
//! with `rate = nu/(1 - nu)` and `R` a normalization rule pinned to 1 at both
//! endpoints. Differentiating under the integral sign turns the outer `d/dx`
//! into algebra:
//!
//! ```text
//! D f(x) = R(nu)/(1 - nu) * (f(x) - rate * C(x)),    C = exp_convolution(f, rate)
//! ```
//!
//! so no numerical differentiation of the convolution ever happens. The
//! companion operator of Caputo-Fabrizio type convolves `f'` instead and
//! carries the prefactor `(2 - nu) * R(nu) / (2 (1 - nu))`; picking the rule
//! `R(nu) = 2/(2 - nu)` collapses that to `1/(1 - nu)`.
//!
//! Useful closed forms (identity rule, lower limit `a`, `u = x - a`):
//!
//! ```text
//! D[1](x)   = exp(-rate u) / (1 - nu)
//! D[x](x)   = (1 - exp(-rate u)) / nu
//! D[x^2](x) = (2/nu) * (u - (1 - exp(-rate u)) / rate)      (for a = 0)
//! ```
//!
//! The first two make the operator's two limits visible: toward `nu = 1` it
//! recovers the classical derivative away from a boundary layer of width
//! `~1/rate`, and toward `nu = 0` it degenerates to the identity.

use crate::basis::ClosedFormFunction;
use crate::convolution::exp_convolution;
use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};
use crate::order::{FractionalOrder, NormalizationRule};

/// Named members of the operator family, as exposed on the command line.
///
/// `NewRLStar` is the kernel operator pinned to the identity normalization;
/// `LosadaNieto` is the Caputo-Fabrizio operator pinned to the rule
/// `2/(2 - nu)`. Both are aliases: they delegate to the general entry points
/// and are bit-identical to them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    NewRL,
    NewRLStar,
    CaputoFabrizio,
    LosadaNieto,
}

/// Kernel-form derivative of a sampled function (Leibniz form, no numerical
/// differentiation).
///
/// # Errors
/// Propagates normalization and convolution errors.
pub fn rl_ns_derivative(
    f: &SampledFunction,
    order: &FractionalOrder,
    norm: &NormalizationRule,
) -> Result<SampledFunction> {
    let r = norm.value(order)?;
    let rate = order.rate();
    let pre = r / (1.0 - order.nu());
    let conv = exp_convolution(f, rate)?;
    let values = f
        .values()
        .iter()
        .zip(conv.values())
        .map(|(fi, ci)| pre * (fi - rate * ci))
        .collect();
    SampledFunction::new(f.grid().clone(), values)
}

/// Caputo-Fabrizio-type derivative of a closed-form function, using its
/// exact first derivative.
///
/// # Errors
/// Propagates normalization, sampling, and convolution errors.
pub fn cf_derivative(
    f: &ClosedFormFunction,
    grid: &Grid,
    order: &FractionalOrder,
    norm: &NormalizationRule,
) -> Result<SampledFunction> {
    let fp = f.derivative().sample(grid)?;
    cf_from_derivative_samples(&fp, order, norm)
}

/// Caputo-Fabrizio-type derivative of a sampled function. The first
/// derivative is formed by second-order central differences, one-sided at
/// both ends, which needs at least three nodes.
///
/// # Errors
/// [`Error::MissingDerivative`] when the grid has fewer than three nodes.
pub fn cf_derivative_sampled(
    f: &SampledFunction,
    order: &FractionalOrder,
    norm: &NormalizationRule,
) -> Result<SampledFunction> {
    let n = f.grid().count();
    if n < 3 {
        return Err(Error::MissingDerivative(format!(
            "second-order difference stencil needs at least 3 nodes, grid has {n}"
        )));
    }
    let v = f.values();
    let h = f.grid().step();
    let mut fp = Vec::with_capacity(n);
    fp.push((-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h));
    for i in 1..n - 1 {
        fp.push((v[i + 1] - v[i - 1]) / (2.0 * h));
    }
    fp.push((3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h));
    let fp = SampledFunction::new(f.grid().clone(), fp)?;
    cf_from_derivative_samples(&fp, order, norm)
}

fn cf_from_derivative_samples(
    fp: &SampledFunction,
    order: &FractionalOrder,
    norm: &NormalizationRule,
) -> Result<SampledFunction> {
    let nu = order.nu();
    let pre = (2.0 - nu) * norm.value(order)? / (2.0 * (1.0 - nu));
    let conv = exp_convolution(fp, order.rate())?;
    let values = conv.values().iter().map(|c| pre * c).collect();
    SampledFunction::new(fp.grid().clone(), values)
}

/// Kernel-form derivative in the width parametrization `psi = 1/nu - 1`.
/// A thin alias: builds the order `nu = 1/(psi + 1)` and delegates, so the
/// output is bit-identical to [`rl_ns_derivative`] at that order.
///
/// # Errors
/// [`Error::InvalidPsi`] when `psi` is not a positive finite number.
pub fn psi_form_derivative(
    f: &SampledFunction,
    psi: f64,
    norm: &NormalizationRule,
) -> Result<SampledFunction> {
    let order = FractionalOrder::from_psi(psi)?;
    rl_ns_derivative(f, &order, norm)
}

/// Applies the family member selected by `kind` to a closed-form function.
/// The starred kinds pin their normalization rule and ignore `norm`.
///
/// # Errors
/// Propagates the underlying operator errors.
pub fn apply_kind(
    kind: OperatorKind,
    f: &ClosedFormFunction,
    grid: &Grid,
    order: &FractionalOrder,
    norm: &NormalizationRule,
) -> Result<SampledFunction> {
    match kind {
        OperatorKind::NewRL => rl_ns_derivative(&f.sample(grid)?, order, norm),
        OperatorKind::NewRLStar => {
            rl_ns_derivative(&f.sample(grid)?, order, &NormalizationRule::One)
        }
        OperatorKind::CaputoFabrizio => cf_derivative(f, grid, order, norm),
        OperatorKind::LosadaNieto => {
            cf_derivative(f, grid, order, &NormalizationRule::CaputoFabrizio)
        }
    }
}

/// Which endpoint of the order interval a limit suite approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitDirection {
    /// `nu -> 1`: the operator approaches the classical first derivative.
    /// Checked outside a boundary layer at the lower grid edge.
    ToOne,
    /// `nu -> 0`: the operator approaches the identity. Checked on the
    /// full grid.
    ToZero,
}

/// Sup-norm distance from the limit target at one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEntry {
    pub nu: f64,
    pub sup_error: f64,
}

/// Outcome of a limit suite; entries follow the order sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub direction: LimitDirection,
    pub entries: Vec<LimitEntry>,
}

impl LimitReport {
    /// True when the errors never increase along the sequence.
    #[must_use]
    pub fn non_increasing(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[1].sup_error <= w[0].sup_error)
    }

    #[must_use]
    pub fn final_error(&self) -> f64 {
        self.entries
            .last()
            .expect("sequence is non-empty")
            .sup_error
    }
}

/// Runs a limit suite: applies the identity-normalized kernel derivative at
/// each order of the sequence and measures the sup-norm distance from the
/// classical derivative (`ToOne`) or from the function itself (`ToZero`).
///
/// For `ToOne` the sup skips nodes with `x - start < delta`, where `delta`
/// is `boundary_exclusion` or its default `5/rate` (five kernel e-folds);
/// the kernel memory has not faded closer to the lower limit, so no
/// pointwise convergence happens there.
///
/// # Errors
/// [`Error::InvalidSequence`] when the sequence is empty, leaves (0, 1), or
/// is not strictly monotone toward the requested endpoint.
/// [`Error::InvalidParams`] when the exclusion removes every node.
pub fn limit_check(
    f: &ClosedFormFunction,
    direction: LimitDirection,
    grid: &Grid,
    nu_sequence: &[f64],
    boundary_exclusion: Option<f64>,
) -> Result<LimitReport> {
    if nu_sequence.is_empty() {
        return Err(Error::InvalidSequence("empty order sequence".into()));
    }
    for &nu in nu_sequence {
        if !nu.is_finite() || nu <= 0.0 || nu >= 1.0 {
            return Err(Error::InvalidSequence(format!(
                "order {nu} is outside the open interval (0, 1)"
            )));
        }
    }
    let monotone = match direction {
        LimitDirection::ToOne => nu_sequence.windows(2).all(|w| w[1] > w[0]),
        LimitDirection::ToZero => nu_sequence.windows(2).all(|w| w[1] < w[0]),
    };
    if !monotone {
        return Err(Error::InvalidSequence(format!(
            "sequence must be strictly monotone toward the {} endpoint",
            match direction {
                LimitDirection::ToOne => "upper",
                LimitDirection::ToZero => "lower",
            }
        )));
    }

    let samples = f.sample(grid)?;
    let target = match direction {
        LimitDirection::ToOne => f.derivative().sample(grid)?,
        LimitDirection::ToZero => samples.clone(),
    };

    let mut entries = Vec::with_capacity(nu_sequence.len());
    for &nu in nu_sequence {
        let order = FractionalOrder::new(nu)?;
        let d = rl_ns_derivative(&samples, &order, &NormalizationRule::One)?;
        let delta = match direction {
            LimitDirection::ToOne => boundary_exclusion.unwrap_or(5.0 / order.rate()),
            LimitDirection::ToZero => 0.0,
        };
        let mut sup = f64::NEG_INFINITY;
        for (i, (di, ti)) in d.values().iter().zip(target.values()).enumerate() {
            if grid.node(i) - grid.start() >= delta {
                sup = sup.max((di - ti).abs());
            }
        }
        if sup == f64::NEG_INFINITY {
            return Err(Error::InvalidParams(format!(
                "boundary exclusion {delta} leaves no nodes on a span of {}",
                grid.last() - grid.start()
            )));
        }
        entries.push(LimitEntry { nu, sup_error: sup });
    }
    Ok(LimitReport { direction, entries })
}
