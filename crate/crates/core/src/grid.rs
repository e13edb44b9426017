//! Uniform grids and functions sampled on them.

use crate::error::{Error, Result};

/// Uniform one-dimensional grid. Node `i` is exactly `start + i * step`;
/// nothing is accumulated, so node positions are reproducible bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    start: f64,
    step: f64,
    count: usize,
}

impl Grid {
    /// Builds a grid of `count >= 2` nodes spaced `step > 0` apart.
    ///
    /// # Errors
    /// [`Error::InvalidGrid`] when `step` is not a positive finite number,
    /// `start` is not finite, or `count < 2`.
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::InvalidGrid(format!("start = {start} is not finite")));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "step = {step} must be positive and finite"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "count = {count} must be at least 2"
            )));
        }
        Ok(Self { start, step, count })
    }

    /// Builds a grid spanning `[start, end]` with `points` equally spaced nodes.
    ///
    /// # Errors
    /// [`Error::InvalidGrid`] when `end <= start` or `points < 2`.
    pub fn from_span(start: f64, end: f64, points: usize) -> Result<Self> {
        if !end.is_finite() || end <= start {
            return Err(Error::InvalidGrid(format!(
                "span end = {end} must exceed start = {start}"
            )));
        }
        if points < 2 {
            return Err(Error::InvalidGrid(format!(
                "points = {points} must be at least 2"
            )));
        }
        let step = (end - start) / (points - 1) as f64;
        Self::new(start, step, points)
    }

    #[must_use]
    pub fn start(&self) -> f64 {
        self.start
    }

    #[must_use]
    pub fn step(&self) -> f64 {
        self.step
    }

    #[must_use]
    pub fn count(&self) -> usize {
        self.count
    }

    /// Position of node `i`, computed as `start + i * step` (never accumulated).
    #[must_use]
    pub fn node(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    /// Position of the last node.
    #[must_use]
    pub fn last(&self) -> f64 {
        self.node(self.count - 1)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.node(i))
    }
}

/// Function values attached to a grid. All values are finite; the pairing is
/// immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl SampledFunction {
    /// Pairs a value vector with a grid.
    ///
    /// # Errors
    /// [`Error::LengthMismatch`] when lengths differ,
    /// [`Error::NonFiniteSample`] when any value is NaN or infinite.
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::LengthMismatch {
                expected: grid.count(),
                actual: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteSample { index, value });
            }
        }
        Ok(Self { grid, values })
    }

    #[must_use]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest absolute value over the grid.
    #[must_use]
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nodes_compose_exactly() {
        let g = Grid::new(0.0, 1e-3, 1001).unwrap();
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(500), 0.0 + 500.0 * 1e-3);
        assert_eq!(g.last(), 0.0 + 1000.0 * 1e-3);
    }

    #[test]
    fn span_form_hits_both_endpoints() {
        let g = Grid::from_span(0.0, 5.0, 101).unwrap();
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.last(), 5.0);
        assert_eq!(g.count(), 101);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(Grid::new(0.0, 0.0, 10).is_err());
        assert!(Grid::new(0.0, -0.1, 10).is_err());
        assert!(Grid::new(0.0, 0.1, 1).is_err());
        assert!(Grid::new(f64::NAN, 0.1, 10).is_err());
        assert!(Grid::from_span(1.0, 1.0, 10).is_err());
        assert!(Grid::from_span(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn sampled_function_validates_inputs() {
        let g = Grid::new(0.0, 0.5, 3).unwrap();
        assert!(matches!(
            SampledFunction::new(g.clone(), vec![1.0, 2.0]),
            Err(Error::LengthMismatch {
                expected: 3,
                actual: 2
            })
        ));
        assert!(matches!(
            SampledFunction::new(g.clone(), vec![1.0, f64::NAN, 2.0]),
            Err(Error::NonFiniteSample { index: 1, .. })
        ));
        let s = SampledFunction::new(g, vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.sup_norm(), 3.0);
    }

    proptest! {
        #[test]
        fn node_positions_are_reproducible(
            start in -10.0..10.0f64,
            step in 1e-6..1.0f64,
            count in 2usize..500,
            i in 0usize..500,
        ) {
            prop_assume!(i < count);
            let g = Grid::new(start, step, count).unwrap();
            // Same formula, same bits: positions never depend on iteration history.
            prop_assert_eq!(g.node(i).to_bits(), (start + i as f64 * step).to_bits());
            let collected: Vec<f64> = g.nodes().collect();
            prop_assert_eq!(collected[i].to_bits(), g.node(i).to_bits());
        }
    }
}
