//! Closed-form functions with exact derivatives and exact Laplace images.
//!
//! These are the reference inputs for every verification route in the crate:
//! each member knows its own derivative (no numerics involved) and its own
//! rational Laplace transform, so operator output can be cross-checked both
//! in the grid domain and in the transform domain.

use std::fmt;

use crate::error::Result;
use crate::grid::{Grid, SampledFunction};
use crate::laplace::RationalLaplaceImage;

/// A function with exact closed-form structure.
///
/// `AffineCombination` holds scaled terms; nesting is allowed and every
/// operation recurses through it.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormFunction {
    /// `f(x) = c`
    Constant(f64),
    /// `f(x) = x^k` with `k >= 0`; `x^0` is identically 1.
    Monomial(u32),
    /// `f(x) = exp(b x)`
    Exponential(f64),
    /// `f(x) = sin(w x)`
    Sine(f64),
    /// `f(x) = cos(w x)`
    Cosine(f64),
    /// `f(x) = sum_i a_i t_i(x)`
    AffineCombination(Vec<(f64, ClosedFormFunction)>),
}

impl ClosedFormFunction {
    #[must_use]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Constant(c) => *c,
            Self::Monomial(k) => x.powi(*k as i32),
            Self::Exponential(b) => (b * x).exp(),
            Self::Sine(w) => (w * x).sin(),
            Self::Cosine(w) => (w * x).cos(),
            Self::AffineCombination(terms) => terms.iter().map(|(a, t)| a * t.eval(x)).sum(),
        }
    }

    /// Exact first derivative, again in closed form.
    #[must_use]
    pub fn derivative(&self) -> Self {
        match self {
            Self::Constant(_) => Self::Constant(0.0),
            Self::Monomial(0) => Self::Constant(0.0),
            Self::Monomial(k) => {
                Self::AffineCombination(vec![(f64::from(*k), Self::Monomial(k - 1))])
            }
            Self::Exponential(b) if *b == 0.0 => Self::Constant(0.0),
            Self::Exponential(b) => Self::AffineCombination(vec![(*b, Self::Exponential(*b))]),
            Self::Sine(w) => Self::AffineCombination(vec![(*w, Self::Cosine(*w))]),
            Self::Cosine(w) => Self::AffineCombination(vec![(-*w, Self::Sine(*w))]),
            Self::AffineCombination(terms) => {
                Self::AffineCombination(terms.iter().map(|(a, t)| (*a, t.derivative())).collect())
            }
        }
    }

    /// Exact Laplace transform as a rational image in `s`.
    ///
    /// Transforms taken from the standard table:
    /// `c -> c/s`, `x^k -> k!/s^(k+1)`, `e^(bx) -> 1/(s-b)`,
    /// `sin(wx) -> w/(s^2+w^2)`, `cos(wx) -> s/(s^2+w^2)`.
    pub fn laplace_image(&self) -> Result<RationalLaplaceImage> {
        match self {
            Self::Constant(c) => RationalLaplaceImage::new(vec![*c], vec![0.0, 1.0]),
            Self::Monomial(k) => {
                let fact = (1..=u64::from(*k)).map(|i| i as f64).product::<f64>();
                let mut den = vec![0.0; *k as usize + 2];
                *den.last_mut().expect("nonempty") = 1.0;
                RationalLaplaceImage::new(vec![fact], den)
            }
            Self::Exponential(b) => RationalLaplaceImage::new(vec![1.0], vec![-b, 1.0]),
            Self::Sine(w) => RationalLaplaceImage::new(vec![*w], vec![w * w, 0.0, 1.0]),
            Self::Cosine(w) => RationalLaplaceImage::new(vec![0.0, 1.0], vec![w * w, 0.0, 1.0]),
            Self::AffineCombination(terms) => {
                let mut acc = RationalLaplaceImage::zero();
                for (a, t) in terms {
                    acc = acc.add(&t.laplace_image()?.scale_num(*a)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// Evaluates the function at every grid node.
    ///
    /// # Errors
    /// [`crate::Error::NonFiniteSample`] when evaluation overflows or is NaN.
    pub fn sample(&self, grid: &Grid) -> Result<SampledFunction> {
        let values = grid.nodes().map(|x| self.eval(x)).collect();
        SampledFunction::new(grid.clone(), values)
    }
}

impl fmt::Display for ClosedFormFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "{c}"),
            Self::Monomial(1) => write!(f, "x"),
            Self::Monomial(k) => write!(f, "x^{k}"),
            Self::Exponential(b) => write!(f, "exp({b})"),
            Self::Sine(w) => write!(f, "sin({w})"),
            Self::Cosine(w) => write!(f, "cos({w})"),
            Self::AffineCombination(terms) => {
                for (i, (a, t)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if *a == 1.0 {
                        write!(f, "{t}")?;
                    } else {
                        write!(f, "{a}*{t}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Reference inputs used across the verification suites. Every member has a
/// rational Laplace image, so both verification routes apply to all of them.
#[must_use]
pub fn test_basis() -> Vec<(&'static str, ClosedFormFunction)> {
    vec![
        ("1", ClosedFormFunction::Constant(1.0)),
        ("x", ClosedFormFunction::Monomial(1)),
        ("x^2", ClosedFormFunction::Monomial(2)),
        ("exp(-1)", ClosedFormFunction::Exponential(-1.0)),
        ("sin(2)", ClosedFormFunction::Sine(2.0)),
        ("cos(2)", ClosedFormFunction::Cosine(2.0)),
        (
            "2*x + 1",
            ClosedFormFunction::AffineCombination(vec![
                (2.0, ClosedFormFunction::Monomial(1)),
                (1.0, ClosedFormFunction::Constant(1.0)),
            ]),
        ),
    ]
}
