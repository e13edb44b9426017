//! Transform-domain view of the operator family.
//!
//! The kernel derivative acts on Laplace transforms by multiplication with
//! the degree-one rational symbol
//!
//! ```text
//! S(s) = R(nu) s / (nu + (1 - nu) s)
//! ```
//!
//! which interpolates between the identity (`nu -> 0`) and the classical
//! differentiation symbol `s` (`nu -> 1`). Its inverse is implemented twice,
//! deliberately:
//!
//! * [`antiderivative_inverse`] works in the grid domain,
//!   `T = (1 - nu)/R * Xi + nu/R * integral of Xi`, and is the primary route;
//! * [`inverse_laplace_rational`] inverts rational images symbolically via
//!   partial fractions, restricted to real simple poles plus an origin pole
//!   of multiplicity at most two, and serves as the cross-check route.
//!
//! Rational images are kept canonical: coefficients ascending, trailing
//! zeros trimmed, denominator monic, and common factors cancelled by root
//! matching.

use num_complex::Complex64;

use crate::basis::ClosedFormFunction;
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::order::{FractionalOrder, NormalizationRule};
use crate::poly::Polynomial;

/// Relative threshold under which a low-order coefficient counts as an exact
/// zero when reading the pole multiplicity at the origin.
const COEFF_ZERO_REL: f64 = 1e-12;

/// Numerator and denominator roots closer than this (scaled by the root
/// magnitude) are treated as a common factor and cancelled.
const ROOT_MATCH_TOL: f64 = 1e-12;

/// Imaginary parts below this (relative) threshold classify a pole as real,
/// and pole pairs closer than this count as repeated.
const POLE_CLASS_TOL: f64 = 1e-9;

/// Largest admissible value of `exp(-s x_N) |f(x_N)|` before the truncated
/// transform window is rejected.
const TAIL_BOUND: f64 = 1e-12;

/// Rational function of `s` in canonical form: coefficients ascending,
/// trailing zeros trimmed, denominator monic. The zero image is `0/1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalLaplaceImage {
    num: Polynomial,
    den: Polynomial,
}

impl RationalLaplaceImage {
    /// Builds an image from ascending coefficient vectors and normalizes it
    /// (trim plus monic denominator; no root cancellation).
    ///
    /// # Errors
    /// [`Error::DegenerateImage`] when the denominator is identically zero,
    /// [`Error::InvalidParams`] when any coefficient is not finite.
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        if num.iter().chain(den.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidParams(
                "rational image coefficients must be finite".into(),
            ));
        }
        Self::normalized(Polynomial::new(num), Polynomial::new(den))
    }

    #[must_use]
    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateImage);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let lead = den.leading();
        Ok(Self {
            num: num.scale(1.0 / lead),
            den: den.scale(1.0 / lead),
        })
    }

    /// Ascending numerator coefficients.
    #[must_use]
    pub fn num(&self) -> &[f64] {
        self.num.coeffs()
    }

    /// Ascending denominator coefficients (monic).
    #[must_use]
    pub fn den(&self) -> &[f64] {
        self.den.coeffs()
    }

    #[must_use]
    pub fn eval(&self, s: f64) -> f64 {
        self.num.eval(s) / self.den.eval(s)
    }

    /// Full canonicalization: origin factors and matched nonzero roots are
    /// cancelled, then the denominator is re-normalized to monic. Applying
    /// it twice gives the same coefficients bit for bit.
    pub fn canonical(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(Self::zero());
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let zn = num.low_order_zeros(COEFF_ZERO_REL * num.max_abs_coeff());
        let zd = den.low_order_zeros(COEFF_ZERO_REL * den.max_abs_coeff());
        let m = zn.min(zd);
        if m > 0 {
            num = num.shift_down(m);
            den = den.shift_down(m);
        }
        if num.degree().unwrap_or(0) >= 1 && den.degree().unwrap_or(0) >= 1 {
            (num, den) = cancel_matched_roots(num, den);
        }
        Self::normalized(num, den)
    }

    /// Scales the numerator by a finite constant.
    pub fn scale_num(&self, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::InvalidParams(format!(
                "scale factor {k} must be finite"
            )));
        }
        Self::normalized(self.num.scale(k), self.den.clone())
    }

    /// Sum over the common denominator, returned in canonical form.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalized(num, den)?.canonical()
    }

    /// Product, returned in canonical form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Self::normalized(num, den)?.canonical()
    }
}

/// Cancels numerator/denominator root pairs that match within
/// [`ROOT_MATCH_TOL`]. Real matches deflate linear factors; complex matches
/// deflate only as full conjugate pairs, so coefficients stay real. When
/// nothing matches, both polynomials are returned untouched.
fn cancel_matched_roots(num: Polynomial, den: Polynomial) -> (Polynomial, Polynomial) {
    let nroots = num.roots();
    let droots = den.roots();
    let mut used = vec![false; droots.len()];
    let mut matched: Vec<(Complex64, Complex64)> = Vec::new();
    for nz in &nroots {
        let mut best: Option<(usize, f64)> = None;
        for (j, dz) in droots.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (nz - dz).norm();
            if d <= ROOT_MATCH_TOL * (1.0 + dz.norm()) && best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, _)) = best {
            used[j] = true;
            matched.push((*nz, droots[j]));
        }
    }
    if matched.is_empty() {
        return (num, den);
    }

    let mut num_out = num;
    let mut den_out = den;
    let mut consumed = vec![false; matched.len()];
    for i in 0..matched.len() {
        if consumed[i] {
            continue;
        }
        let (nz, dz) = matched[i];
        if nz.im.abs() <= POLE_CLASS_TOL * (1.0 + nz.norm()) {
            num_out = deflate_linear(&num_out, nz.re);
            den_out = deflate_linear(&den_out, dz.re);
            consumed[i] = true;
        } else {
            // Cancel only together with the conjugate partner.
            let partner = (i + 1..matched.len()).find(|&j| {
                !consumed[j]
                    && (matched[j].0 - nz.conj()).norm() <= POLE_CLASS_TOL * (1.0 + nz.norm())
                    && (matched[j].1 - dz.conj()).norm() <= POLE_CLASS_TOL * (1.0 + dz.norm())
            });
            if let Some(j) = partner {
                num_out = deflate_quadratic(&num_out, nz);
                den_out = deflate_quadratic(&den_out, dz);
                consumed[i] = true;
                consumed[j] = true;
            } else {
                consumed[i] = true; // unpaired complex match: leave it alone
            }
        }
    }
    (num_out, den_out)
}

fn deflate_linear(p: &Polynomial, root: f64) -> Polynomial {
    p.div_rem(&Polynomial::new(vec![-root, 1.0])).0
}

fn deflate_quadratic(p: &Polynomial, z: Complex64) -> Polynomial {
    p.div_rem(&Polynomial::new(vec![z.norm_sqr(), -2.0 * z.re, 1.0]))
        .0
}

/// The multiplication symbol of the kernel derivative, plus the identity
/// limit object.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSymbol {
    image: RationalLaplaceImage,
}

impl OperatorSymbol {
    /// The `nu -> 0` limit object: multiplication by 1.
    #[must_use]
    pub fn identity() -> Self {
        Self {
            image: RationalLaplaceImage {
                num: Polynomial::one(),
                den: Polynomial::one(),
            },
        }
    }

    #[must_use]
    pub fn image(&self) -> &RationalLaplaceImage {
        &self.image
    }

    #[must_use]
    pub fn eval(&self, s: f64) -> f64 {
        self.image.eval(s)
    }

    /// Value of the symbol as `s` grows without bound: the ratio of leading
    /// coefficients, `R(nu)/(1 - nu)` for a proper operator symbol.
    #[must_use]
    pub fn limit_at_infinity(&self) -> f64 {
        let nd = self.image.num.degree().unwrap_or(0);
        let dd = self.image.den.degree().unwrap_or(0);
        match nd.cmp(&dd) {
            std::cmp::Ordering::Less => 0.0,
            std::cmp::Ordering::Equal => self.image.num.leading() / self.image.den.leading(),
            std::cmp::Ordering::Greater => f64::INFINITY,
        }
    }
}

/// Builds the operator symbol `R(nu) s / (nu + (1 - nu) s)` in canonical
/// form: numerator and denominator both degree one, value 0 at `s = 0`.
///
/// # Errors
/// Propagates normalization failures.
pub fn operator_symbol(
    order: &FractionalOrder,
    norm: &NormalizationRule,
) -> Result<OperatorSymbol> {
    let r = norm.value(order)?;
    let nu = order.nu();
    let image = RationalLaplaceImage::new(vec![0.0, r], vec![nu, 1.0 - nu])?;
    Ok(OperatorSymbol { image })
}

/// Multiplies an image by the operator symbol and re-canonicalizes, which
/// cancels shared factors such as the symbol's zero at the origin against
/// an origin pole of the input.
///
/// # Errors
/// [`Error::DegenerateImage`] if the product loses its denominator.
pub fn apply_symbol(
    image: &RationalLaplaceImage,
    symbol: &OperatorSymbol,
) -> Result<RationalLaplaceImage> {
    image.mul(symbol.image())
}

/// Inverts a strictly proper rational image by partial fractions.
///
/// Supported pole structure: distinct real poles, plus a pole at the origin
/// of multiplicity at most two. The result is exact in closed form:
/// `A/s -> A`, `B/s^2 -> B x`, `R/(s - p) -> R exp(p x)`.
///
/// # Errors
/// [`Error::ImproperImage`] when the numerator degree reaches the
/// denominator degree (a distributional part would appear),
/// [`Error::UnsupportedPoleStructure`] for complex, repeated, or deep origin
/// poles.
pub fn inverse_laplace_rational(image: &RationalLaplaceImage) -> Result<ClosedFormFunction> {
    let img = image.canonical()?;
    if img.num.is_zero() {
        return Ok(ClosedFormFunction::Constant(0.0));
    }
    let nd = img.num.degree().expect("nonzero");
    let dd = img.den.degree().expect("denominator never zero");
    if nd >= dd {
        return Err(Error::ImproperImage(format!(
            "numerator degree {nd} >= denominator degree {dd}"
        )));
    }

    let den = &img.den;
    let m = den.low_order_zeros(COEFF_ZERO_REL * den.max_abs_coeff());
    if m > 2 {
        return Err(Error::UnsupportedPoleStructure(format!(
            "origin pole of multiplicity {m}"
        )));
    }
    let q = den.shift_down(m);
    let mut poles = Vec::new();
    for z in q.roots() {
        if z.im.abs() > POLE_CLASS_TOL * (1.0 + z.norm()) {
            return Err(Error::UnsupportedPoleStructure(format!(
                "complex pole pair near {:.6} +- {:.6}i",
                z.re,
                z.im.abs()
            )));
        }
        if z.norm() <= POLE_CLASS_TOL {
            return Err(Error::UnsupportedPoleStructure(
                "origin pole multiplicity exceeds the detected order".into(),
            ));
        }
        poles.push(z.re);
    }
    for i in 0..poles.len() {
        for j in i + 1..poles.len() {
            if (poles[i] - poles[j]).abs() <= POLE_CLASS_TOL * (1.0 + poles[i].abs()) {
                return Err(Error::UnsupportedPoleStructure(format!(
                    "repeated pole near {:.6}",
                    poles[i]
                )));
            }
        }
    }

    let dden = den.derivative();
    let mut terms: Vec<(f64, ClosedFormFunction)> = Vec::new();
    match m {
        0 => {}
        1 => {
            // Simple origin pole: same residue formula as any simple pole.
            let a = img.num.eval(0.0) / dden.eval(0.0);
            terms.push((1.0, ClosedFormFunction::Constant(a)));
        }
        2 => {
            // num/(s^2 q): B from the leading coefficient of the expansion,
            // A from its first derivative at the origin.
            let q0 = q.eval(0.0);
            let b = img.num.eval(0.0) / q0;
            let a = (img.num.derivative().eval(0.0) * q0
                - img.num.eval(0.0) * q.derivative().eval(0.0))
                / (q0 * q0);
            terms.push((1.0, ClosedFormFunction::Constant(a)));
            terms.push((b, ClosedFormFunction::Monomial(1)));
        }
        _ => unreachable!("guarded above"),
    }
    for &p in &poles {
        let r = img.num.eval(p) / dden.eval(p);
        terms.push((r, ClosedFormFunction::Exponential(p)));
    }

    if terms.len() == 1 && terms[0].0 == 1.0 {
        return Ok(terms.pop().expect("nonempty").1);
    }
    Ok(ClosedFormFunction::AffineCombination(terms))
}

/// Composite-trapezoid Laplace transform of a sampled function at a real
/// point `s > 0`. The grid must start at 0 and reach far enough that the
/// integrand tail is negligible.
///
/// # Errors
/// [`Error::InvalidParams`] for a nonpositive `s` or a grid not starting at
/// 0; [`Error::TruncationTooSevere`] when `exp(-s x_N) |f(x_N)|` is at least
/// [`TAIL_BOUND`].
pub fn numeric_laplace(f: &SampledFunction, s: f64) -> Result<f64> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "transform point s = {s} must be positive and finite"
        )));
    }
    let grid = f.grid();
    if grid.start() != 0.0 {
        return Err(Error::InvalidParams(format!(
            "transform grid must start at 0, got {}",
            grid.start()
        )));
    }
    let last = grid.last();
    let tail = (-s * last).exp() * f.values().last().expect("count >= 2").abs();
    if tail >= TAIL_BOUND {
        return Err(Error::TruncationTooSevere {
            tail,
            bound: TAIL_BOUND,
        });
    }
    let step = grid.step();
    let n = grid.count();
    let mut acc = 0.0;
    for (i, &v) in f.values().iter().enumerate() {
        let g = (-s * grid.node(i)).exp() * v;
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        acc += w * g;
    }
    Ok(acc * step)
}

/// Grid-domain inverse of the kernel derivative:
/// `T(x) = (1 - nu)/R * Xi(x) + nu/R * integral_0^x Xi`, the running
/// integral formed by cumulative trapezoid. Exact (to rounding) whenever
/// `Xi` is affine.
///
/// # Errors
/// [`Error::InvalidParams`] when the grid does not start at 0; propagates
/// normalization failures.
pub fn antiderivative_inverse(
    xi: &SampledFunction,
    order: &FractionalOrder,
    norm: &NormalizationRule,
) -> Result<SampledFunction> {
    let grid = xi.grid();
    if grid.start() != 0.0 {
        return Err(Error::InvalidParams(format!(
            "inverse operator grid must start at 0, got {}",
            grid.start()
        )));
    }
    let r = norm.value(order)?;
    let nu = order.nu();
    let step = grid.step();
    let v = xi.values();
    let mut out = Vec::with_capacity(v.len());
    let mut integral = 0.0;
    out.push((1.0 - nu) / r * v[0]);
    for pair in v.windows(2) {
        integral += step * (pair[0] + pair[1]) / 2.0;
        out.push((1.0 - nu) / r * pair[1] + nu / r * integral);
    }
    SampledFunction::new(grid.clone(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::test_basis;
    use crate::grid::Grid;
    use crate::operators::rl_ns_derivative;
    use proptest::prelude::*;

    fn order(nu: f64) -> FractionalOrder {
        FractionalOrder::new(nu).unwrap()
    }

    fn bits_eq(a: &RationalLaplaceImage, b: &RationalLaplaceImage) -> bool {
        let pair = |x: &[f64], y: &[f64]| {
            x.len() == y.len() && x.iter().zip(y).all(|(p, q)| p.to_bits() == q.to_bits())
        };
        pair(a.num(), b.num()) && pair(a.den(), b.den())
    }

    #[test]
    fn symbol_at_one_half_is_two_s_over_s_plus_one() {
        let sym = operator_symbol(&order(0.5), &NormalizationRule::One).unwrap();
        assert_eq!(sym.image().num(), &[0.0, 2.0]);
        assert_eq!(sym.image().den(), &[1.0, 1.0]);
        assert_eq!(sym.eval(1.0), 1.0);
        assert_eq!(sym.eval(0.0), 0.0);
        assert_eq!(sym.limit_at_infinity(), 2.0);
    }

    #[test]
    fn symbol_shape_holds_across_orders() {
        for nu in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let o = order(nu);
            let sym = operator_symbol(&o, &NormalizationRule::One).unwrap();
            assert_eq!(sym.image().num().len(), 2);
            assert_eq!(sym.image().den().len(), 2);
            assert_eq!(sym.image().num()[0], 0.0);
            let want = 1.0 / (1.0 - nu);
            assert!((sym.limit_at_infinity() - want).abs() <= 1e-14 * want);
        }
    }

    #[test]
    fn symbol_approaches_plain_s_toward_the_upper_endpoint() {
        let sym = operator_symbol(&order(1.0 - 1e-7), &NormalizationRule::One).unwrap();
        for s in [1.0, 2.0, 5.0] {
            assert!((sym.eval(s) / s - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn identity_symbol_leaves_images_unchanged() {
        let image = ClosedFormFunction::Exponential(-1.0)
            .laplace_image()
            .unwrap();
        let out = apply_symbol(&image, &OperatorSymbol::identity()).unwrap();
        assert!(bits_eq(&out, &image.canonical().unwrap()));
    }

    #[test]
    fn symbol_times_constant_image_cancels_the_origin() {
        // 1/s * 2s/(s+1) = 2/(s+1)
        let one = ClosedFormFunction::Constant(1.0).laplace_image().unwrap();
        let sym = operator_symbol(&order(0.5), &NormalizationRule::One).unwrap();
        let out = apply_symbol(&one, &sym).unwrap();
        assert_eq!(out.num(), &[2.0]);
        assert_eq!(out.den(), &[1.0, 1.0]);
    }

    #[test]
    fn symbol_times_ramp_image_keeps_one_origin_pole() {
        // 1/s^2 * 2s/(s+1) = 2/(s(s+1))
        let x = ClosedFormFunction::Monomial(1).laplace_image().unwrap();
        let sym = operator_symbol(&order(0.5), &NormalizationRule::One).unwrap();
        let out = apply_symbol(&x, &sym).unwrap();
        assert_eq!(out.num(), &[2.0]);
        assert_eq!(out.den(), &[0.0, 1.0, 1.0]);
    }

    #[test]
    fn canonicalization_cancels_matched_real_roots() {
        // (s^2 - 1)/(s - 1) -> s + 1
        let img = RationalLaplaceImage::new(vec![-1.0, 0.0, 1.0], vec![-1.0, 1.0]).unwrap();
        let c = img.canonical().unwrap();
        assert_eq!(c.den(), &[1.0]);
        assert_eq!(c.num().len(), 2);
        assert!((c.num()[0] - 1.0).abs() < 1e-12);
        assert!((c.num()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonicalization_cancels_conjugate_pairs_together() {
        // (s^2+1)(s+2) / ((s^2+1)(s+3)) -> (s+2)/(s+3)
        let num = Polynomial::new(vec![1.0, 0.0, 1.0]).mul(&Polynomial::new(vec![2.0, 1.0]));
        let den = Polynomial::new(vec![1.0, 0.0, 1.0]).mul(&Polynomial::new(vec![3.0, 1.0]));
        let img = RationalLaplaceImage::new(num.coeffs().to_vec(), den.coeffs().to_vec()).unwrap();
        let c = img.canonical().unwrap();
        assert_eq!(c.num().len(), 2);
        assert_eq!(c.den().len(), 2);
        assert!((c.num()[0] - 2.0).abs() < 1e-10);
        assert!((c.den()[0] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn canonicalization_is_idempotent_bit_for_bit() {
        let sym = operator_symbol(&order(0.3), &NormalizationRule::One).unwrap();
        let inputs = [
            ClosedFormFunction::Constant(1.0).laplace_image().unwrap(),
            ClosedFormFunction::Monomial(1).laplace_image().unwrap(),
            ClosedFormFunction::Exponential(-1.0)
                .laplace_image()
                .unwrap(),
            ClosedFormFunction::Sine(2.0).laplace_image().unwrap(),
        ];
        for image in inputs {
            let applied = apply_symbol(&image, &sym).unwrap();
            for img in [image, applied] {
                let once = img.canonical().unwrap();
                let twice = once.canonical().unwrap();
                assert!(bits_eq(&once, &twice));
            }
        }
    }

    #[test]
    fn degenerate_and_invalid_images_are_rejected() {
        assert!(matches!(
            RationalLaplaceImage::new(vec![1.0], vec![0.0, 0.0]),
            Err(Error::DegenerateImage)
        ));
        assert!(RationalLaplaceImage::new(vec![f64::NAN], vec![1.0]).is_err());
    }

    #[test]
    fn inversion_of_reference_images() {
        // 2/(s+1) -> 2 exp(-x)
        let img = RationalLaplaceImage::new(vec![2.0], vec![1.0, 1.0]).unwrap();
        let f = inverse_laplace_rational(&img).unwrap();
        for x in [0.0, 0.5, 1.5] {
            assert!((f.eval(x) - 2.0 * (-x).exp()).abs() < 1e-14);
        }
        // (1/3 + s/3)/s^2 -> 1/3 + x/3
        let img =
            RationalLaplaceImage::new(vec![1.0 / 3.0, 1.0 / 3.0], vec![0.0, 0.0, 1.0]).unwrap();
        let f = inverse_laplace_rational(&img).unwrap();
        for x in [0.0, 1.0, 2.0] {
            assert!((f.eval(x) - (1.0 + x) / 3.0).abs() < 1e-14);
        }
        // 1/s -> 1
        let img = RationalLaplaceImage::new(vec![1.0], vec![0.0, 1.0]).unwrap();
        assert_eq!(
            inverse_laplace_rational(&img).unwrap(),
            ClosedFormFunction::Constant(1.0)
        );
    }

    #[test]
    fn inversion_rejects_whats_outside_the_class() {
        // Improper: (s^2+1)/(s+1), and the equal-degree case s/(s+1).
        let img = RationalLaplaceImage::new(vec![1.0, 0.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            inverse_laplace_rational(&img),
            Err(Error::ImproperImage(_))
        ));
        let img = RationalLaplaceImage::new(vec![0.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            inverse_laplace_rational(&img),
            Err(Error::ImproperImage(_))
        ));
        // Origin pole of multiplicity three.
        let img = RationalLaplaceImage::new(vec![1.0], vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            inverse_laplace_rational(&img),
            Err(Error::UnsupportedPoleStructure(_))
        ));
        // Complex pair.
        let img = RationalLaplaceImage::new(vec![1.0], vec![1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            inverse_laplace_rational(&img),
            Err(Error::UnsupportedPoleStructure(_))
        ));
        // Repeated real pole: 1/(s-2)^2.
        let img = RationalLaplaceImage::new(vec![1.0], vec![4.0, -4.0, 1.0]).unwrap();
        assert!(matches!(
            inverse_laplace_rational(&img),
            Err(Error::UnsupportedPoleStructure(_))
        ));
    }

    #[test]
    fn inversion_is_the_identity_on_the_supported_basis() {
        for (name, f) in test_basis() {
            let invertible = matches!(
                f,
                ClosedFormFunction::Constant(_)
                    | ClosedFormFunction::Monomial(0 | 1)
                    | ClosedFormFunction::Exponential(_)
                    | ClosedFormFunction::AffineCombination(_)
            );
            if !invertible || name == "x^2" {
                continue;
            }
            let back = inverse_laplace_rational(&f.laplace_image().unwrap()).unwrap();
            for x in [0.0, 0.25, 1.0, 2.0] {
                let want = f.eval(x);
                assert!(
                    (back.eval(x) - want).abs() <= 1e-9 * want.abs().max(1.0),
                    "{name} at {x}: {} vs {want}",
                    back.eval(x)
                );
            }
        }
    }

    #[test]
    fn numeric_transform_of_decaying_exponential() {
        let g = Grid::new(0.0, 1e-3, 40_001).unwrap();
        let f = ClosedFormFunction::Exponential(-1.0).sample(&g).unwrap();
        let got = numeric_laplace(&f, 1.0).unwrap();
        assert!((got - 0.5).abs() < 1e-6, "{got}");
    }

    #[test]
    fn numeric_transform_guards_its_window() {
        let g = Grid::new(0.0, 1e-2, 101).unwrap();
        let f = ClosedFormFunction::Constant(1.0).sample(&g).unwrap();
        assert!(matches!(
            numeric_laplace(&f, 1.0),
            Err(Error::TruncationTooSevere { .. })
        ));
        let g2 = Grid::new(1.0, 1e-2, 101).unwrap();
        let f2 = ClosedFormFunction::Constant(1.0).sample(&g2).unwrap();
        assert!(matches!(
            numeric_laplace(&f2, 1.0),
            Err(Error::InvalidParams(_))
        ));
        let f3 = ClosedFormFunction::Constant(1.0).sample(&g).unwrap();
        assert!(numeric_laplace(&f3, -1.0).is_err());
    }

    #[test]
    fn inverse_operator_on_constant_is_affine() {
        // Xi = 1, nu = 0.5, R = 1: T = 0.5 + 0.5 x.
        let g = Grid::new(0.0, 1e-3, 1001).unwrap();
        let xi = ClosedFormFunction::Constant(1.0).sample(&g).unwrap();
        let t = antiderivative_inverse(&xi, &order(0.5), &NormalizationRule::One).unwrap();
        for (i, v) in t.values().iter().enumerate() {
            let x = g.node(i);
            assert!((v - (0.5 + 0.5 * x)).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_after_inverse_returns_the_input() {
        let g = Grid::new(0.0, 1e-3, 1001).unwrap();
        let xi = ClosedFormFunction::Constant(1.0).sample(&g).unwrap();
        let o = order(0.5);
        let t = antiderivative_inverse(&xi, &o, &NormalizationRule::One).unwrap();
        let back = rl_ns_derivative(&t, &o, &NormalizationRule::One).unwrap();
        for v in back.values() {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn canonical_form_is_stable_on_integer_coefficient_images(
            num in proptest::collection::vec(-9.0..=9.0f64, 1..5),
            den in proptest::collection::vec(-9.0..=9.0f64, 1..5),
        ) {
            let num: Vec<f64> = num.iter().map(|c| c.round()).collect();
            let mut den: Vec<f64> = den.iter().map(|c| c.round()).collect();
            if den.iter().all(|&c| c == 0.0) {
                den = vec![1.0];
            }
            let img = RationalLaplaceImage::new(num, den).unwrap();
            let once = img.canonical().unwrap();
            let twice = once.canonical().unwrap();
            prop_assert!(bits_eq(&once, &twice));
        }
    }
}
