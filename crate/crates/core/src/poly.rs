//! Real-coefficient polynomials in ascending power order.
//!
//! Small fixed toolkit used by the rational Laplace images: arithmetic,
//! Horner evaluation (real and complex), long division, and root finding.
//! Roots of degree three and above come from the companion-matrix Schur
//! form; degrees one and two use closed forms.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Coefficient vector `[c0, c1, ...]` for `c0 + c1 s + ...`. Trailing zero
/// coefficients are trimmed on construction; the zero polynomial is `[0.0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    #[must_use]
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    #[must_use]
    pub fn zero() -> Self {
        Self::new(vec![0.0])
    }

    #[must_use]
    pub fn one() -> Self {
        Self::new(vec![1.0])
    }

    #[must_use]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs == [0.0]
    }

    /// `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    #[must_use]
    pub fn leading(&self) -> f64 {
        *self.coeffs.last().expect("coeffs never empty")
    }

    #[must_use]
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0.0);
            let b = other.coeffs.get(i).copied().unwrap_or(0.0);
            *slot = a + b;
        }
        Self::new(out)
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    #[must_use]
    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    #[must_use]
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    #[must_use]
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    #[must_use]
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    /// Number of low-order coefficients below `tol` in absolute value, i.e.
    /// the multiplicity of the root at the origin up to that tolerance.
    /// Returns 0 for the zero polynomial.
    #[must_use]
    pub fn low_order_zeros(&self, tol: f64) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.coeffs.iter().take_while(|c| c.abs() <= tol).count()
    }

    /// Divides by `s^m`; the dropped coefficients must already be (near) zero.
    #[must_use]
    pub fn shift_down(&self, m: usize) -> Self {
        debug_assert!(m < self.coeffs.len());
        Self::new(self.coeffs[m..].to_vec())
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder`.
    ///
    /// # Panics
    /// Panics if `divisor` is the zero polynomial.
    #[must_use]
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; nd - dd + 1];
        let lead = divisor.leading();
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// All complex roots. Degrees one and two are closed-form; higher degrees
    /// go through the companion-matrix Schur decomposition.
    #[must_use]
    pub fn roots(&self) -> Vec<Complex64> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        match deg {
            0 => Vec::new(),
            1 => vec![Complex64::new(-self.coeffs[0] / self.coeffs[1], 0.0)],
            2 => quadratic_roots(self.coeffs[0], self.coeffs[1], self.coeffs[2]),
            _ => {
                let lead = self.leading();
                let n = deg;
                let monic: Vec<f64> = self.coeffs[..n].iter().map(|c| c / lead).collect();
                let companion = DMatrix::from_fn(n, n, |r, c| {
                    if c == n - 1 {
                        -monic[r]
                    } else if r == c + 1 {
                        1.0
                    } else {
                        0.0
                    }
                });
                companion.complex_eigenvalues().iter().copied().collect()
            }
        }
    }
}

/// Roots of `c + b s + a s^2` using the cancellation-safe form.
fn quadratic_roots(c: f64, b: f64, a: f64) -> Vec<Complex64> {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        // q = 0 only when b = 0 and disc = 0, i.e. both roots are 0.
        if q == 0.0 {
            return vec![Complex64::new(0.0, 0.0); 2];
        }
        vec![Complex64::new(q / a, 0.0), Complex64::new(c / q, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a);
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}
