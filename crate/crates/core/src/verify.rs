//! Self-contained invariant suite.
//!
//! Every property the crate promises is recomputed here from scratch against
//! an independent reference: a closed form, the quadratic-cost summation
//! oracle, the transform-domain route, or an exact bit pattern. The CLI
//! `verify` subcommand runs this suite and maps any failure to a nonzero
//! exit code. Nothing here depends on random input; reruns are identical.

use std::time::{Duration, Instant};

use crate::basis::{test_basis, ClosedFormFunction};
use crate::convolution::{exp_convolution, naive_convolution_oracle};
use crate::error::Result;
use crate::grid::{Grid, SampledFunction};
use crate::heatflow::{
    figure1_dataset, solve_steady, solve_steady_via_inversion, HeatFlowParams, HeatOrder,
};
use crate::laplace::{
    antiderivative_inverse, apply_symbol, inverse_laplace_rational, numeric_laplace,
    operator_symbol,
};
use crate::operators::{
    apply_kind, cf_derivative, limit_check, psi_form_derivative, rl_ns_derivative, LimitDirection,
    OperatorKind,
};
use crate::order::{FractionalOrder, NormalizationRule};

/// Exact-arithmetic identities: affine constructions, reference slopes,
/// route equivalence of two exact pipelines.
pub const TOL_EXACT: f64 = 1e-12;

/// Agreement between the streaming convolution and the direct-summation
/// oracle. Same quadrature, different accumulation; only rounding separates
/// them.
pub const TOL_ORACLE_REL: f64 = 1e-8;

/// Convolution against analytic integrals on inputs where the scheme is
/// exact (affine integrands).
pub const TOL_ANALYTIC_REL: f64 = 1e-10;

/// Linearity of the derivative pipelines under floating point.
pub const TOL_LINEARITY_REL: f64 = 1e-12;

/// Derivative anchors against their closed forms on the default step 1e-3.
pub const TOL_ANCHOR_REL: f64 = 1e-8;

/// Derivative-after-inverse round trip, sup norm relative to the input.
pub const TOL_ROUND_TRIP_REL: f64 = 1e-6;

/// Grid-domain transform of the derivative against the rational symbol.
/// Dominated by the trapezoid error of the truncated transform window.
pub const TOL_SYMBOL_REL: f64 = 1e-4;

/// Largest error allowed at the end of a limit sequence (order 0.999 or
/// 0.001); the distance from the limit operator itself is order 1e-3.
pub const TOL_LIMIT_FINAL: f64 = 2e-3;

/// Loop closure of the steady model through the derivative.
pub const TOL_LOOP_REL: f64 = 1e-6;

/// One verified property.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn run(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match body() {
        Ok((passed, detail)) => CheckResult {
            name,
            passed,
            detail,
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn rel_sup(got: &[f64], want: &[f64]) -> f64 {
    let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    got.iter()
        .zip(want)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        / scale
}

fn bits_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

fn grid01(step: f64) -> Result<Grid> {
    let count = (1.0 / step).round() as usize + 1;
    Grid::new(0.0, step, count)
}

fn one() -> NormalizationRule {
    NormalizationRule::One
}

/// All functional invariants (no timing involved).
#[must_use]
pub fn run_functional() -> Vec<CheckResult> {
    vec![
        run("convolution_oracle_agreement", oracle_agreement),
        run("convolution_analytic_anchors", analytic_anchors),
        run("operator_linearity", operator_linearity),
        run("derivative_closed_form_anchors", derivative_anchors),
        run("quadratic_anchor_refinement", quadratic_refinement),
        run("operator_kind_aliases", kind_aliases),
        run("width_reparametrization", width_reparametrization),
        run("cf_matches_kernel_form_at_zero_start", cf_vs_kernel),
        run("cf_annihilates_constants", cf_constants),
        run("limit_toward_one", limit_toward_one),
        run("limit_toward_zero", limit_toward_zero),
        run("inversion_round_trip", inversion_round_trip),
        run("symbol_consistency", symbol_consistency),
        run("symbol_shape", symbol_shape),
        run("dual_route_derivative", dual_route_derivative),
        run("rational_inversion_identity", rational_inversion_identity),
        run("canonical_idempotence", canonical_idempotence),
        run("heatflow_route_equivalence", heatflow_routes),
        run("heatflow_affinity", heatflow_affinity),
        run("heatflow_fixed_point", heatflow_fixed_point),
        run("heatflow_loop_closure", heatflow_loop_closure),
        run("figure1_reference_values", figure1_reference),
        run("classical_consistency", classical_consistency),
    ]
}

/// Timing-based properties, separated so test environments can skip them.
#[must_use]
pub fn run_performance() -> Vec<CheckResult> {
    vec![
        run("convolution_linear_scaling", convolution_scaling),
        run("streaming_beats_quadratic_oracle", streaming_vs_oracle),
    ]
}

/// Functional checks followed by performance checks.
#[must_use]
pub fn run_all() -> Vec<CheckResult> {
    let mut out = run_functional();
    out.extend(run_performance());
    out
}

fn oracle_agreement() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for (name, f) in test_basis() {
        for rate in [0.1, 1.0, 10.0] {
            for count in [64usize, 256, 1024] {
                let grid = Grid::new(0.0, 1.0 / (count - 1) as f64, count)?;
                let s = f.sample(&grid)?;
                let fast = exp_convolution(&s, rate)?;
                let slow = naive_convolution_oracle(&s, rate)?;
                let err = rel_sup(fast.values(), slow.values());
                if err > worst {
                    worst = err;
                    worst_at = format!("{name}, rate {rate}, n {count}");
                }
            }
        }
    }
    Ok((
        worst <= TOL_ORACLE_REL,
        format!("max rel sup {worst:.3e} at {worst_at} (tol {TOL_ORACLE_REL:.0e})"),
    ))
}

fn analytic_anchors() -> Result<(bool, String)> {
    let grid = Grid::new(0.0, 1.0 / 1023.0, 1024)?;
    let mut worst = 0.0f64;

    // f = 1, rate 2: C(x) = (1 - exp(-2x))/2.
    let c = exp_convolution(&ClosedFormFunction::Constant(1.0).sample(&grid)?, 2.0)?;
    let want: Vec<f64> = grid
        .nodes()
        .map(|x| (1.0 - (-2.0 * x).exp()) / 2.0)
        .collect();
    worst = worst.max(rel_sup(c.values(), &want));

    // f = x, rate 1: C(x) = x - 1 + exp(-x).
    let c = exp_convolution(&ClosedFormFunction::Monomial(1).sample(&grid)?, 1.0)?;
    let want: Vec<f64> = grid.nodes().map(|x| x - 1.0 + (-x).exp()).collect();
    worst = worst.max(rel_sup(c.values(), &want));

    // rate 0: plain running integral; f = 1 gives C(x) = x.
    let c = exp_convolution(&ClosedFormFunction::Constant(1.0).sample(&grid)?, 0.0)?;
    let want: Vec<f64> = grid.nodes().collect();
    worst = worst.max(rel_sup(c.values(), &want));

    Ok((
        worst <= TOL_ANALYTIC_REL,
        format!("max rel sup {worst:.3e} (tol {TOL_ANALYTIC_REL:.0e})"),
    ))
}

fn operator_linearity() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let order = FractionalOrder::new(0.5)?;
    let (alpha, beta) = (2.5, -1.25);
    let f = ClosedFormFunction::Exponential(-1.0).sample(&grid)?;
    let g = ClosedFormFunction::Sine(2.0).sample(&grid)?;
    let combo_values: Vec<f64> = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| alpha * a + beta * b)
        .collect();
    let combo = SampledFunction::new(grid.clone(), combo_values)?;
    let d_combo = rl_ns_derivative(&combo, &order, &one())?;
    let df = rl_ns_derivative(&f, &order, &one())?;
    let dg = rl_ns_derivative(&g, &order, &one())?;
    let want: Vec<f64> = df
        .values()
        .iter()
        .zip(dg.values())
        .map(|(a, b)| alpha * a + beta * b)
        .collect();
    let err = rel_sup(d_combo.values(), &want);
    Ok((
        err <= TOL_LINEARITY_REL,
        format!("rel sup {err:.3e} (tol {TOL_LINEARITY_REL:.0e})"),
    ))
}

fn derivative_anchors() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let mut worst = 0.0f64;
    for nu in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let order = FractionalOrder::new(nu)?;
        let rate = order.rate();

        let d = rl_ns_derivative(
            &ClosedFormFunction::Constant(1.0).sample(&grid)?,
            &order,
            &one(),
        )?;
        let want: Vec<f64> = grid
            .nodes()
            .map(|x| (-rate * x).exp() / (1.0 - nu))
            .collect();
        worst = worst.max(rel_sup(d.values(), &want));

        let d = rl_ns_derivative(
            &ClosedFormFunction::Monomial(1).sample(&grid)?,
            &order,
            &one(),
        )?;
        let want: Vec<f64> = grid
            .nodes()
            .map(|x| (1.0 - (-rate * x).exp()) / nu)
            .collect();
        worst = worst.max(rel_sup(d.values(), &want));
    }
    Ok((
        worst <= TOL_ANCHOR_REL,
        format!("max rel sup {worst:.3e} (tol {TOL_ANCHOR_REL:.0e})"),
    ))
}

fn quadratic_refinement() -> Result<(bool, String)> {
    // The scheme is exact on affine inputs, so convergence order is read
    // off the quadratic anchor D[x^2] = (2/nu)(x - (1 - exp(-rate x))/rate).
    let order = FractionalOrder::new(0.5)?;
    let rate = order.rate();
    let sup_err = |count: usize| -> Result<f64> {
        let grid = Grid::new(0.0, 1.0 / (count - 1) as f64, count)?;
        let d = rl_ns_derivative(
            &ClosedFormFunction::Monomial(2).sample(&grid)?,
            &order,
            &one(),
        )?;
        let want: Vec<f64> = grid
            .nodes()
            .map(|x| 2.0 / order.nu() * (x - (1.0 - (-rate * x).exp()) / rate))
            .collect();
        Ok(rel_sup(d.values(), &want))
    };
    let coarse = sup_err(257)?;
    let fine = sup_err(513)?;
    let ratio = coarse / fine;
    Ok((
        (3.0..=5.0).contains(&ratio),
        format!("halving the step shrinks the error {ratio:.2}x (expected ~4x; {coarse:.3e} -> {fine:.3e})"),
    ))
}

fn kind_aliases() -> Result<(bool, String)> {
    let grid = grid01(1e-2)?;
    let order = FractionalOrder::new(0.6)?;
    let f = ClosedFormFunction::Cosine(2.0);
    let star = apply_kind(OperatorKind::NewRLStar, &f, &grid, &order, &one())?;
    let plain = apply_kind(OperatorKind::NewRL, &f, &grid, &order, &one())?;
    let ln = apply_kind(OperatorKind::LosadaNieto, &f, &grid, &order, &one())?;
    let cf = apply_kind(
        OperatorKind::CaputoFabrizio,
        &f,
        &grid,
        &order,
        &NormalizationRule::CaputoFabrizio,
    )?;
    let ok = bits_eq(star.values(), plain.values()) && bits_eq(ln.values(), cf.values());
    Ok((
        ok,
        "alias outputs bit-identical to their general forms".into(),
    ))
}

fn width_reparametrization() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let f = ClosedFormFunction::Exponential(-1.0).sample(&grid)?;
    for psi in [1.0 / 3.0, 1.0, 3.0] {
        let via_psi = psi_form_derivative(&f, psi, &one())?;
        let order = FractionalOrder::new(1.0 / (psi + 1.0))?;
        let direct = rl_ns_derivative(&f, &order, &one())?;
        if !bits_eq(via_psi.values(), direct.values()) {
            return Ok((false, format!("mismatch at psi = {psi}")));
        }
    }
    Ok((
        true,
        "width form bit-identical at psi in {1/3, 1, 3}".into(),
    ))
}

fn cf_vs_kernel() -> Result<(bool, String)> {
    // Equality holds when f vanishes at the lower limit. The two pipelines
    // discretize different integrands, so a fine step keeps their O(step^2)
    // separation under the shared tolerance.
    let grid = Grid::new(0.0, 2e-5, 50_001)?;
    let fns = [
        ClosedFormFunction::Monomial(1),
        ClosedFormFunction::Monomial(2),
        ClosedFormFunction::Sine(2.0),
    ];
    let mut worst = 0.0f64;
    for f in &fns {
        for nu in [0.3, 0.6, 0.9] {
            let order = FractionalOrder::new(nu)?;
            let via_cf = cf_derivative(f, &grid, &order, &NormalizationRule::CaputoFabrizio)?;
            let via_kernel = rl_ns_derivative(&f.sample(&grid)?, &order, &one())?;
            worst = worst.max(rel_sup(via_cf.values(), via_kernel.values()));
        }
    }
    Ok((
        worst <= TOL_ORACLE_REL,
        format!("max rel sup {worst:.3e} (tol {TOL_ORACLE_REL:.0e})"),
    ))
}

fn cf_constants() -> Result<(bool, String)> {
    let grid = grid01(1e-2)?;
    let order = FractionalOrder::new(0.5)?;
    let d = cf_derivative(
        &ClosedFormFunction::Constant(5.0),
        &grid,
        &order,
        &NormalizationRule::CaputoFabrizio,
    )?;
    let all_zero = d.values().iter().all(|&v| v == 0.0);
    // And the kernel form does NOT annihilate constants: D[1](0) = 1/(1-nu).
    let dk = rl_ns_derivative(
        &ClosedFormFunction::Constant(1.0).sample(&grid)?,
        &order,
        &one(),
    )?;
    let kernel_nonzero = dk.values()[0] > 1.0;
    Ok((
        all_zero && kernel_nonzero,
        "cf kind is exactly zero on constants; kernel kind is not".into(),
    ))
}

fn limit_toward_one() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let f = ClosedFormFunction::Monomial(1);
    let report = limit_check(
        &f,
        LimitDirection::ToOne,
        &grid,
        &[0.9, 0.99, 0.999],
        Some(0.1),
    )?;
    // Closed-form oracle for each sup on the same nodes.
    let mut oracle_gap = 0.0f64;
    for entry in &report.entries {
        let order = FractionalOrder::new(entry.nu)?;
        let mut want = f64::NEG_INFINITY;
        for x in grid.nodes() {
            if x >= 0.1 {
                want = want.max(((1.0 - (-order.rate() * x).exp()) / entry.nu - 1.0).abs());
            }
        }
        oracle_gap = oracle_gap.max((entry.sup_error - want).abs());
    }
    let ok =
        report.non_increasing() && report.final_error() <= TOL_LIMIT_FINAL && oracle_gap <= 1e-9;
    let errs: Vec<String> = report
        .entries
        .iter()
        .map(|e| format!("{:.4e}", e.sup_error))
        .collect();
    Ok((
        ok,
        format!(
            "sup errors [{}] non-increasing, final <= {TOL_LIMIT_FINAL:.0e}, closed-form gap {oracle_gap:.1e}",
            errs.join(", ")
        ),
    ))
}

fn limit_toward_zero() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let f = ClosedFormFunction::Monomial(1);
    let report = limit_check(&f, LimitDirection::ToZero, &grid, &[0.1, 0.01, 0.001], None)?;
    let ok = report.non_increasing() && report.final_error() <= TOL_LIMIT_FINAL;
    let errs: Vec<String> = report
        .entries
        .iter()
        .map(|e| format!("{:.4e}", e.sup_error))
        .collect();
    Ok((
        ok,
        format!(
            "sup errors [{}] non-increasing, final <= {TOL_LIMIT_FINAL:.0e}",
            errs.join(", ")
        ),
    ))
}

fn inversion_round_trip() -> Result<(bool, String)> {
    let grid = Grid::new(0.0, 2.5e-4, 4001)?;
    let mut worst = 0.0f64;
    for (_, xi) in test_basis() {
        let xs = xi.sample(&grid)?;
        for nu10 in 1..=9 {
            let order = FractionalOrder::new(f64::from(nu10) / 10.0)?;
            let t = antiderivative_inverse(&xs, &order, &one())?;
            let back = rl_ns_derivative(&t, &order, &one())?;
            worst = worst.max(rel_sup(back.values(), xs.values()));
        }
    }
    Ok((
        worst <= TOL_ROUND_TRIP_REL,
        format!("max rel sup {worst:.3e} (tol {TOL_ROUND_TRIP_REL:.0e})"),
    ))
}

fn symbol_consistency() -> Result<(bool, String)> {
    let grid = Grid::new(0.0, 1e-3, 40_001)?;
    let f = ClosedFormFunction::Exponential(-1.0);
    let image = f.laplace_image()?;
    let samples = f.sample(&grid)?;
    let mut worst = 0.0f64;
    for nu in [0.3, 0.6] {
        let order = FractionalOrder::new(nu)?;
        let d = rl_ns_derivative(&samples, &order, &one())?;
        let sym = operator_symbol(&order, &one())?;
        for s in [1.0, 2.0, 5.0] {
            let numeric = numeric_laplace(&d, s)?;
            let symbolic = sym.eval(s) * image.eval(s);
            worst = worst.max((numeric - symbolic).abs() / symbolic.abs());
        }
    }
    Ok((
        worst <= TOL_SYMBOL_REL,
        format!("max rel err {worst:.3e} (tol {TOL_SYMBOL_REL:.0e})"),
    ))
}

fn symbol_shape() -> Result<(bool, String)> {
    for nu10 in 1..=9 {
        let nu = f64::from(nu10) / 10.0;
        let order = FractionalOrder::new(nu)?;
        let sym = operator_symbol(&order, &one())?;
        let want_inf = 1.0 / (1.0 - nu);
        let ok = sym.image().num().len() == 2
            && sym.image().den().len() == 2
            && sym.image().num()[0] == 0.0
            && (sym.limit_at_infinity() - want_inf).abs() <= 1e-14 * want_inf;
        if !ok {
            return Ok((false, format!("shape violated at nu = {nu}")));
        }
    }
    let half = operator_symbol(&FractionalOrder::new(0.5)?, &one())?;
    let ok = half.image().num() == [0.0, 2.0] && half.image().den() == [1.0, 1.0];
    Ok((
        ok,
        "degree 1/1, zero at origin, leading ratio 1/(1-nu)".into(),
    ))
}

fn dual_route_derivative() -> Result<(bool, String)> {
    // Transform route L^-1(S . F) against the grid route, on inputs whose
    // image stays in the invertible class after multiplication by S.
    let grid = grid01(1e-3)?;
    let inputs = [
        ClosedFormFunction::Constant(1.0),
        ClosedFormFunction::Monomial(1),
        ClosedFormFunction::AffineCombination(vec![
            (2.0, ClosedFormFunction::Monomial(1)),
            (1.0, ClosedFormFunction::Constant(1.0)),
        ]),
    ];
    let mut worst = 0.0f64;
    for f in &inputs {
        for nu in [0.3, 0.5, 0.7] {
            let order = FractionalOrder::new(nu)?;
            let sym = operator_symbol(&order, &one())?;
            let transformed = apply_symbol(&f.laplace_image()?, &sym)?;
            let closed = inverse_laplace_rational(&transformed)?;
            let want: Vec<f64> = grid.nodes().map(|x| closed.eval(x)).collect();
            let d = rl_ns_derivative(&f.sample(&grid)?, &order, &one())?;
            worst = worst.max(rel_sup(d.values(), &want));
        }
    }
    Ok((
        worst <= TOL_ANALYTIC_REL,
        format!("max rel sup {worst:.3e} (tol {TOL_ANALYTIC_REL:.0e})"),
    ))
}

fn rational_inversion_identity() -> Result<(bool, String)> {
    let inputs = [
        ClosedFormFunction::Constant(1.0),
        ClosedFormFunction::Monomial(1),
        ClosedFormFunction::Exponential(-1.0),
        ClosedFormFunction::AffineCombination(vec![
            (2.0, ClosedFormFunction::Monomial(1)),
            (1.0, ClosedFormFunction::Constant(1.0)),
        ]),
    ];
    let mut worst = 0.0f64;
    for f in &inputs {
        let back = inverse_laplace_rational(&f.laplace_image()?)?;
        for i in 0..=20 {
            let x = f64::from(i) * 0.1;
            let want = f.eval(x);
            worst = worst.max((back.eval(x) - want).abs() / want.abs().max(1.0));
        }
    }
    Ok((worst <= 1e-9, format!("max rel err {worst:.3e} (tol 1e-9)")))
}

fn canonical_idempotence() -> Result<(bool, String)> {
    let sym = operator_symbol(&FractionalOrder::new(0.3)?, &one())?;
    for (_, f) in test_basis() {
        let image = f.laplace_image()?;
        let applied = apply_symbol(&image, &sym)?;
        for img in [image, applied] {
            let once = img.canonical()?;
            let twice = once.canonical()?;
            if !(bits_eq(once.num(), twice.num()) && bits_eq(once.den(), twice.den())) {
                return Ok((false, format!("canonical form moved for {f}")));
            }
        }
    }
    Ok((true, "canonicalization is a bitwise fixed point".into()))
}

fn heat_params(nu: f64, c: f64) -> Result<HeatFlowParams> {
    HeatFlowParams::new(
        3.0,
        2.0,
        c,
        HeatOrder::Fractional(FractionalOrder::new(nu)?),
        one(),
    )
}

fn heatflow_routes() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let mut worst = 0.0f64;
    for nu10 in 1..=9 {
        let p = heat_params(f64::from(nu10) / 10.0, -1.0)?;
        let closed = solve_steady(&p, &grid)?;
        let inverted = solve_steady_via_inversion(&p, &grid)?;
        let sup = closed
            .temperatures()
            .iter()
            .zip(inverted.temperatures())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        worst = worst
            .max(sup)
            .max((closed.slope() - inverted.slope()).abs())
            .max((closed.intercept() - inverted.intercept()).abs());
    }
    Ok((
        worst <= TOL_EXACT,
        format!("max abs gap {worst:.3e} (tol {TOL_EXACT:.0e})"),
    ))
}

fn heatflow_affinity() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let s = solve_steady_via_inversion(&heat_params(0.4, 1.0)?, &grid)?;
    let mut worst = 0.0f64;
    for w in s.temperatures().windows(3) {
        worst = worst.max((w[2] - 2.0 * w[1] + w[0]).abs());
    }
    Ok((
        worst <= TOL_EXACT,
        format!("max second difference {worst:.3e} (tol {TOL_EXACT:.0e})"),
    ))
}

fn heatflow_fixed_point() -> Result<(bool, String)> {
    let grid = Grid::new(0.0, 0.25, 9)?; // node 4 sits at x = 1
    let mut worst = 0.0f64;
    for nu in [0.2, 0.5, 0.8] {
        let s = solve_steady(&heat_params(nu, -1.0)?, &grid)?;
        worst = worst.max((s.temperatures()[4] - 2.0 / 3.0).abs());
    }
    Ok((
        worst <= TOL_EXACT,
        format!("T(1) pinned to -Cg/K, max gap {worst:.3e}"),
    ))
}

fn heatflow_loop_closure() -> Result<(bool, String)> {
    let grid = grid01(1e-3)?;
    let mut worst = 0.0f64;
    for nu10 in 1..=9 {
        let nu = f64::from(nu10) / 10.0;
        let p = heat_params(nu, 1.0)?;
        let s = solve_steady(&p, &grid)?;
        let sampled = s.as_sampled(&grid)?;
        let order = FractionalOrder::new(nu)?;
        let d = rl_ns_derivative(&sampled, &order, &one())?;
        let want = -2.0 / 3.0;
        for v in d.values() {
            worst = worst.max((v - want).abs() / want.abs());
        }
    }
    Ok((
        worst <= TOL_LOOP_REL,
        format!("max rel gap to -g/K: {worst:.3e} (tol {TOL_LOOP_REL:.0e})"),
    ))
}

fn figure1_reference() -> Result<(bool, String)> {
    let series = figure1_dataset(5.0, 101)?;
    let want = [
        (0.2, 2.0 * 0.7 / 3.0),
        (0.4, 2.0 * 0.4 / 3.0),
        (2.0 / 3.0, 0.0),
    ];
    let mut worst = 0.0f64;
    for (s, (slope, intercept)) in series.iter().zip(want) {
        worst = worst
            .max((s.slope() - slope).abs())
            .max((s.intercept() - intercept).abs())
            .max((s.slope() + s.intercept() - 2.0 / 3.0).abs());
    }
    Ok((
        worst <= TOL_EXACT,
        format!("slopes, intercepts, crossing at (1, 2/3): max gap {worst:.3e}"),
    ))
}

fn classical_consistency() -> Result<(bool, String)> {
    let grid = Grid::new(0.0, 0.05, 21)?;
    let classical = solve_steady(
        &HeatFlowParams::new(3.0, 2.0, -1.0, HeatOrder::Classical, one())?,
        &grid,
    )?;
    let near = solve_steady(&heat_params(0.999, -1.0)?, &grid)?;
    for (i, (a, b)) in near
        .temperatures()
        .iter()
        .zip(classical.temperatures())
        .enumerate()
    {
        let bound = (1.0 - 0.999) * (2.0 / 3.0) * (1.0 + grid.node(i));
        if (a - b).abs() > bound + 1e-12 {
            return Ok((false, format!("bound violated at node {i}")));
        }
    }
    Ok((
        true,
        "order 0.999 profile within (1-nu)|Cg/K|(1+x) of the classical line".into(),
    ))
}

/// Fastest of several reps; the minimum is the least-contended run and is
/// the stablest wall-clock estimator on a shared machine.
fn fastest_time(reps: usize, mut body: impl FnMut()) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            body();
            t.elapsed()
        })
        .min()
        .expect("at least one rep")
}

fn ramp_samples(count: usize) -> Result<SampledFunction> {
    let grid = Grid::new(0.0, 1.0 / (count - 1) as f64, count)?;
    ClosedFormFunction::Monomial(1).sample(&grid)
}

fn convolution_scaling() -> Result<(bool, String)> {
    let small = ramp_samples(100_000)?;
    let big = ramp_samples(1_000_000)?;
    std::hint::black_box(exp_convolution(&big, 1.0)?); // warm up

    let mut verdict = (false, String::new());
    for attempt in 1..=3 {
        let t_small = fastest_time(11, || {
            std::hint::black_box(
                exp_convolution(&small, 1.0)
                    .unwrap()
                    .values()
                    .last()
                    .copied(),
            );
        });
        let t_big = fastest_time(5, || {
            std::hint::black_box(exp_convolution(&big, 1.0).unwrap().values().last().copied());
        });
        let ratio = t_big.as_secs_f64() / t_small.as_secs_f64();
        let ok = t_big < Duration::from_secs(1) && (8.0..=12.0).contains(&ratio);
        verdict = (
            ok,
            format!(
                "1e6 nodes in {:.1} ms (< 1 s), 10x input takes {ratio:.1}x time (want 8..12), attempt {attempt}",
                t_big.as_secs_f64() * 1e3
            ),
        );
        if ok {
            break;
        }
    }
    Ok(verdict)
}

fn streaming_vs_oracle() -> Result<(bool, String)> {
    let big = ramp_samples(1_000_000)?;
    let t_big = fastest_time(5, || {
        std::hint::black_box(exp_convolution(&big, 1.0).unwrap().values().last().copied());
    });
    let oracle_input = ramp_samples(10_000)?;
    let t0 = Instant::now();
    std::hint::black_box(
        naive_convolution_oracle(&oracle_input, 1.0)?
            .values()
            .last()
            .copied(),
    );
    let t_oracle = t0.elapsed();
    // Quadratic extrapolation of the oracle from 1e4 to 1e6 nodes.
    let extrapolated = t_oracle.as_secs_f64() * 1e4;
    let speedup = extrapolated / t_big.as_secs_f64();
    Ok((
        speedup >= 50.0,
        format!("streaming path {speedup:.0}x faster than the extrapolated quadratic oracle (want >= 50x)"),
    ))
}
