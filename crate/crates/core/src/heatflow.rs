//! Steady heat flow driven by the kernel derivative.
//!
//! The stationary balance `K * D T = -g` with constant conductivity `K` and
//! volumetric source `g` has an affine solution once the inverse operator is
//! applied to the constant right-hand side:
//!
//! ```text
//! T(x) = -C * (g nu x / (K R) + g (1 - nu) / (K R))
//! ```
//!
//! where `C` is a free scaling constant. At `nu = 1` this degenerates to the
//! classical `T = -C g x / K` with zero intercept. Both the closed form and
//! the inversion pipeline are implemented; they must agree to rounding.

use crate::basis::ClosedFormFunction;
use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};
use crate::laplace::antiderivative_inverse;
use crate::order::{FractionalOrder, NormalizationRule};

/// Order of the balance equation: a fractional order in (0, 1), or the
/// classical first derivative as an explicit tag (1 is not a valid
/// [`FractionalOrder`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeatOrder {
    Fractional(FractionalOrder),
    Classical,
}

/// Parameters of the steady model.
#[derive(Debug, Clone)]
pub struct HeatFlowParams {
    conductivity: f64,
    flow: f64,
    scale: f64,
    order: HeatOrder,
    norm: NormalizationRule,
}

impl HeatFlowParams {
    /// # Errors
    /// [`Error::InvalidParams`] when `conductivity <= 0` or any value is not
    /// finite.
    pub fn new(
        conductivity: f64,
        flow: f64,
        scale: f64,
        order: HeatOrder,
        norm: NormalizationRule,
    ) -> Result<Self> {
        if !conductivity.is_finite() || conductivity <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "conductivity = {conductivity} must be positive and finite"
            )));
        }
        if !flow.is_finite() || !scale.is_finite() {
            return Err(Error::InvalidParams("flow and scale must be finite".into()));
        }
        Ok(Self {
            conductivity,
            flow,
            scale,
            order,
            norm,
        })
    }

    #[must_use]
    pub fn order(&self) -> &HeatOrder {
        &self.order
    }
}

/// One temperature profile: affine in `x` with the fitted line stored next
/// to the node values.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSeries {
    nu_label: String,
    xs: Vec<f64>,
    temperatures: Vec<f64>,
    slope: f64,
    intercept: f64,
}

impl SolutionSeries {
    #[must_use]
    pub fn nu_label(&self) -> &str {
        &self.nu_label
    }

    #[must_use]
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    #[must_use]
    pub fn temperatures(&self) -> &[f64] {
        &self.temperatures
    }

    #[must_use]
    pub fn slope(&self) -> f64 {
        self.slope
    }

    #[must_use]
    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    /// Temperatures as a sampled function on the given grid (which must be
    /// the grid the series was built on).
    pub fn as_sampled(&self, grid: &Grid) -> Result<SampledFunction> {
        SampledFunction::new(grid.clone(), self.temperatures.clone())
    }
}

/// Column label for an order: fractional orders print plainly ("0.3"),
/// the classical tag prints "1.0".
#[must_use]
pub fn nu_label(order: &HeatOrder) -> String {
    match order {
        HeatOrder::Fractional(o) => format!("{}", o.nu()),
        HeatOrder::Classical => "1.0".into(),
    }
}

fn line_coefficients(params: &HeatFlowParams) -> Result<(f64, f64)> {
    let HeatFlowParams {
        conductivity: k,
        flow: g,
        scale: c,
        ..
    } = *params;
    match &params.order {
        HeatOrder::Fractional(o) => {
            let r = params.norm.value(o)?;
            let slope = -c * g * o.nu() / (k * r);
            let intercept = -c * g * (1.0 - o.nu()) / (k * r);
            Ok((slope, intercept))
        }
        HeatOrder::Classical => Ok((-c * g / k, 0.0)),
    }
}

/// Closed-form solution: builds the affine series directly from the model
/// coefficients. Node values satisfy `T_i = slope * x_i + intercept` by
/// construction, bit for bit.
///
/// # Errors
/// Propagates normalization failures.
pub fn solve_steady(params: &HeatFlowParams, grid: &Grid) -> Result<SolutionSeries> {
    let (slope, intercept) = line_coefficients(params)?;
    let xs: Vec<f64> = grid.nodes().collect();
    let temperatures = xs.iter().map(|x| slope * x + intercept).collect();
    Ok(SolutionSeries {
        nu_label: nu_label(&params.order),
        xs,
        temperatures,
        slope,
        intercept,
    })
}

/// Inversion-route solution: applies the grid-domain inverse operator to the
/// constant right-hand side `Xi = -g/K` and scales by `C`. The line is read
/// off the first two nodes. Must match [`solve_steady`] to rounding.
///
/// # Errors
/// [`Error::InvalidParams`] for the classical tag (there is no inverse
/// operator to apply) or a grid not starting at 0.
pub fn solve_steady_via_inversion(params: &HeatFlowParams, grid: &Grid) -> Result<SolutionSeries> {
    let HeatOrder::Fractional(order) = &params.order else {
        return Err(Error::InvalidParams(
            "inversion route needs a fractional order in (0, 1)".into(),
        ));
    };
    let xi = ClosedFormFunction::Constant(-params.flow / params.conductivity).sample(grid)?;
    let base = antiderivative_inverse(&xi, order, &params.norm)?;
    let temperatures: Vec<f64> = base.values().iter().map(|v| params.scale * v).collect();
    let slope = (temperatures[1] - temperatures[0]) / grid.step();
    let intercept = temperatures[0];
    Ok(SolutionSeries {
        nu_label: nu_label(&params.order),
        xs: grid.nodes().collect(),
        temperatures,
        slope,
        intercept,
    })
}

/// The reference dataset: three series at orders 0.3, 0.6, and classical,
/// with `C = -1`, `g = 2`, `K = 3`, identity normalization, on `[0, x_max]`.
/// All three lines pass through `(1, 2/3)`.
///
/// # Errors
/// Propagates grid construction failures.
pub fn figure1_dataset(x_max: f64, points: usize) -> Result<Vec<SolutionSeries>> {
    let grid = Grid::from_span(0.0, x_max, points)?;
    let orders = [
        HeatOrder::Fractional(FractionalOrder::new(0.3)?),
        HeatOrder::Fractional(FractionalOrder::new(0.6)?),
        HeatOrder::Classical,
    ];
    let mut out = Vec::with_capacity(orders.len());
    for order in orders {
        let params = HeatFlowParams::new(3.0, 2.0, -1.0, order, NormalizationRule::One)?;
        out.push(solve_steady(&params, &grid)?);
    }
    Ok(out)
}
