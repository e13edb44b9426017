//! Fractional order and kernel normalization.
//!
//! The order nu lives strictly inside (0, 1). Both endpoints are limit cases
//! handled by dedicated checks, never by constructing an endpoint order. Two
//! derived quantities are cached on construction:
//!
//! * `psi = 1/nu - 1`, the kernel width of the reparametrized form, and
//! * `rate = nu/(1 - nu)`, the decay rate of the exponential kernel
//!   `exp(-rate * (x - lambda))`.
//!
//! They satisfy `nu * (psi + 1) = 1` and `rate * (1 - nu) = nu` to rounding.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Validated fractional order with cached kernel parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    nu: f64,
    psi: f64,
    rate: f64,
}

impl FractionalOrder {
    /// Builds an order from `nu` in the open interval (0, 1).
    ///
    /// # Errors
    /// [`Error::OrderOutOfRange`] when `nu` is not finite or lies outside (0, 1).
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= 0.0 || nu >= 1.0 {
            return Err(Error::OrderOutOfRange(nu));
        }
        Ok(Self {
            nu,
            psi: 1.0 / nu - 1.0,
            rate: nu / (1.0 - nu),
        })
    }

    /// Builds the order equivalent to kernel width `psi > 0`, i.e. `nu = 1/(psi + 1)`.
    ///
    /// # Errors
    /// [`Error::InvalidPsi`] when `psi` is not a positive finite number.
    pub fn from_psi(psi: f64) -> Result<Self> {
        if !psi.is_finite() || psi <= 0.0 {
            return Err(Error::InvalidPsi(psi));
        }
        Self::new(1.0 / (psi + 1.0))
    }

    #[must_use]
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Kernel width of the reparametrized form, `1/nu - 1`.
    #[must_use]
    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// Exponential kernel decay rate, `nu/(1 - nu)`.
    #[must_use]
    pub fn rate(&self) -> f64 {
        self.rate
    }
}

/// Normalization factor applied in front of the kernel integral.
///
/// The factor is only pinned at the endpoints (value 1 at nu = 0 and nu = 1),
/// so it is kept abstract: a rule maps nu to a positive finite number.
/// Nothing else (continuity, monotonicity) is assumed or enforced.
#[derive(Clone)]
pub enum NormalizationRule {
    /// Identically 1. The default for all derivative pipelines.
    One,
    /// `2/(2 - nu)`, the choice that turns the Caputo-Fabrizio prefactor
    /// into `1/(1 - nu)`.
    CaputoFabrizio,
    /// User-supplied rule; values are validated at evaluation time.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl NormalizationRule {
    /// Evaluates the rule at the given order.
    ///
    /// # Errors
    /// [`Error::InvalidNormalization`] when the rule yields a value that is
    /// not positive and finite.
    pub fn value(&self, order: &FractionalOrder) -> Result<f64> {
        let nu = order.nu();
        let v = match self {
            Self::One => 1.0,
            Self::CaputoFabrizio => 2.0 / (2.0 - nu),
            Self::Custom(f) => f(nu),
        };
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidNormalization { nu, value: v });
        }
        Ok(v)
    }

    /// Prefactor of the width-parametrized operator, `(psi + 1) * value(1/(psi + 1))`.
    /// Derived on demand; never stored.
    pub fn width_prefactor(&self, psi: f64) -> Result<f64> {
        let order = FractionalOrder::from_psi(psi)?;
        Ok((psi + 1.0) * self.value(&order)?)
    }
}

impl fmt::Debug for NormalizationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => f.write_str("One"),
            Self::CaputoFabrizio => f.write_str("CaputoFabrizio"),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn order_point_five() {
        let o = FractionalOrder::new(0.5).unwrap();
        assert_eq!(o.psi(), 1.0);
        assert_eq!(o.rate(), 1.0);
    }

    #[test]
    fn order_point_three() {
        let o = FractionalOrder::new(0.3).unwrap();
        assert!((o.psi() - 7.0 / 3.0).abs() <= 1e-15 * (7.0 / 3.0));
        assert!((o.rate() - 3.0 / 7.0).abs() <= 1e-15 * (3.0 / 7.0));
    }

    #[test]
    fn order_rejects_endpoints_and_garbage() {
        for bad in [0.0, 1.0, -0.1, 1.1, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                FractionalOrder::new(bad),
                Err(Error::OrderOutOfRange(_))
            ));
        }
    }

    #[test]
    fn from_psi_matches_direct_construction() {
        let a = FractionalOrder::from_psi(1.0).unwrap();
        let b = FractionalOrder::new(0.5).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            FractionalOrder::from_psi(0.0),
            Err(Error::InvalidPsi(_))
        ));
        assert!(matches!(
            FractionalOrder::from_psi(-2.0),
            Err(Error::InvalidPsi(_))
        ));
    }

    #[test]
    fn caputo_fabrizio_value_at_half() {
        let o = FractionalOrder::new(0.5).unwrap();
        let v = NormalizationRule::CaputoFabrizio.value(&o).unwrap();
        assert!((v - 4.0 / 3.0).abs() <= 1e-15 * (4.0 / 3.0));
    }

    #[test]
    fn caputo_fabrizio_approaches_two_at_the_upper_endpoint() {
        let o = FractionalOrder::new(1.0 - 1e-9).unwrap();
        let v = NormalizationRule::CaputoFabrizio.value(&o).unwrap();
        assert!((v - 2.0).abs() < 1e-8);
    }

    #[test]
    fn custom_rule_is_validated_at_evaluation() {
        let o = FractionalOrder::new(0.5).unwrap();
        let bad = NormalizationRule::Custom(Arc::new(|_| -1.0));
        assert!(matches!(
            bad.value(&o),
            Err(Error::InvalidNormalization { .. })
        ));
        let nan = NormalizationRule::Custom(Arc::new(|_| f64::NAN));
        assert!(nan.value(&o).is_err());
    }

    #[test]
    fn width_prefactor_identity_rule() {
        // With the identity rule the prefactor is psi + 1.
        let p = NormalizationRule::One.width_prefactor(1.0).unwrap();
        assert_eq!(p, 2.0);
        // Divided by psi it equals 1/(1 - nu), the kernel-form prefactor.
        let psi = 0.25;
        let nu = 1.0 / (psi + 1.0);
        let lhs = NormalizationRule::One.width_prefactor(psi).unwrap() / psi;
        let rhs = 1.0 / (1.0 - nu);
        assert!((lhs - rhs).abs() <= 1e-14 * rhs.abs());
    }

    proptest! {
        #[test]
        fn parametrization_coherence(nu in 1e-6..=0.999_999f64) {
            let o = FractionalOrder::new(nu).unwrap();
            // nu * (psi + 1) = 1 and rate * (1 - nu) = nu, both to 1e-15 relative.
            prop_assert!((nu * (o.psi() + 1.0) - 1.0).abs() <= 1e-15);
            prop_assert!((o.rate() * (1.0 - nu) - nu).abs() <= 1e-15 * nu);
        }

        #[test]
        fn caputo_fabrizio_is_strictly_increasing(a in 0.001..=0.998f64, d in 1e-3..=0.5f64) {
            let b = (a + d).min(0.999);
            prop_assume!(b > a);
            let oa = FractionalOrder::new(a).unwrap();
            let ob = FractionalOrder::new(b).unwrap();
            let rule = NormalizationRule::CaputoFabrizio;
            prop_assert!(rule.value(&ob).unwrap() > rule.value(&oa).unwrap());
        }
    }
}
