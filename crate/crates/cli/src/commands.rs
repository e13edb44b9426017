//! Subcommand argument structs and their implementations.

use clap::{Args, ValueEnum};
use expfrac::{
    apply_kind, figure1_dataset, numeric_laplace, operator_symbol, rl_ns_derivative, solve_steady,
    verify, FractionalOrder, HeatFlowParams, HeatOrder, OperatorKind,
};

use crate::output::{fmt_value, render_table, write_output, OutputFormat, Table};
use crate::parse::{
    parse_function_spec, parse_grid_spec, parse_normalization, parse_number_list, parse_order_list,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unparsable specs, or a computation rejected by the
    /// library; exits with status 1.
    Validation(String),
    /// The verification suite found failing invariants; exits with
    /// status 2.
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 1,
            Self::ChecksFailed(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Validation(msg) => f.write_str(msg),
            Self::ChecksFailed(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl From<expfrac::Error> for CliError {
    fn from(e: expfrac::Error) -> Self {
        Self::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Validation(format!("io: {e}"))
    }
}

type CliResult = Result<(), CliError>;

/// Operator family member selectable on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindFlag {
    /// Kernel-form derivative (normalization from --normalization)
    Rl,
    /// Kernel-form derivative pinned to the identity normalization
    RlStar,
    /// Derivative of Caputo-Fabrizio type (normalization from --normalization)
    Cf,
    /// Caputo-Fabrizio type pinned to the 2/(2-nu) rule
    Ln,
}

impl KindFlag {
    fn to_kind(self) -> OperatorKind {
        match self {
            Self::Rl => OperatorKind::NewRL,
            Self::RlStar => OperatorKind::NewRLStar,
            Self::Cf => OperatorKind::CaputoFabrizio,
            Self::Ln => OperatorKind::LosadaNieto,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Rl => "rl",
            Self::RlStar => "rl-star",
            Self::Cf => "cf",
            Self::Ln => "ln",
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output path, or - for standard output
    #[arg(long, default_value = "-", value_name = "PATH")]
    pub output: String,
    /// Table format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct DerivArgs {
    /// Closed-form input: NUMBER | x | x^K | exp(B) | sin(W) | cos(W),
    /// scaled with '*' and summed with '+' (exp(B) means e^(Bx))
    #[arg(long = "fn", value_name = "SPEC")]
    pub function: String,
    /// Comma-separated fractional orders in (0, 1)
    #[arg(long, value_name = "LIST")]
    pub nu: String,
    /// Grid: start:step:end or start..end@points
    #[arg(long, value_name = "GRID")]
    pub grid: String,
    /// Operator family member
    #[arg(long, value_enum, default_value_t = KindFlag::Rl)]
    pub kind: KindFlag,
    /// Normalization rule: one | cf | custom:<value-table path>
    #[arg(long, value_name = "RULE", default_value = "one")]
    pub normalization: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    /// Closed-form input (same grammar as deriv)
    #[arg(long = "fn", value_name = "SPEC")]
    pub function: String,
    /// Comma-separated fractional orders in (0, 1)
    #[arg(long, value_name = "LIST")]
    pub nu: String,
    /// Comma-separated transform points s > 0
    #[arg(long, value_name = "LIST", default_value = "1,2,5")]
    pub s: String,
    /// Truncation window for the numerical transform; must start at 0 and
    /// extend far enough for the integrand to decay
    #[arg(long, value_name = "GRID")]
    pub grid: String,
    /// Normalization rule: one | cf | custom:<value-table path>
    #[arg(long, value_name = "RULE", default_value = "one")]
    pub normalization: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HeatflowArgs {
    /// Comma-separated orders in (0, 1), plus 1 for the classical law
    #[arg(long, value_name = "LIST")]
    pub nu: String,
    /// Thermal conductivity K > 0
    #[arg(long, default_value_t = 3.0)]
    pub conductivity: f64,
    /// Constant heat flow g
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub flow: f64,
    /// Integration-constant scale C
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub scale: f64,
    /// Grid: start:step:end or start..end@points
    #[arg(long, value_name = "GRID")]
    pub grid: String,
    /// Normalization rule: one | cf | custom:<value-table path>
    #[arg(long, value_name = "RULE", default_value = "one")]
    pub normalization: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    /// Right edge of the spatial interval [0, xmax]
    #[arg(long)]
    pub xmax: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only the functional checks, skipping wall-clock measurements
    #[arg(long)]
    pub skip_perf: bool,
}

fn join_values(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| fmt_value(*v)).collect();
    parts.join(",")
}

pub fn deriv(args: &DerivArgs) -> CliResult {
    let f = parse_function_spec(&args.function)
        .map_err(|e| CliError::Validation(format!("--fn {:?}: {e}", args.function)))?;
    let grid = parse_grid_spec(&args.grid).map_err(CliError::Validation)?;
    let nus = parse_order_list(&args.nu).map_err(CliError::Validation)?;
    let norm = parse_normalization(&args.normalization).map_err(CliError::Validation)?;

    let mut columns = vec!["x".to_string()];
    let mut series = Vec::new();
    for &nu in &nus {
        let order = FractionalOrder::new(nu)?;
        columns.push(format!("D_nu{}", fmt_value(nu)));
        series.push(apply_kind(args.kind.to_kind(), &f, &grid, &order, &norm)?);
    }
    let rows: Vec<Vec<f64>> = (0..grid.count())
        .map(|i| {
            let mut row = Vec::with_capacity(columns.len());
            row.push(grid.node(i));
            row.extend(series.iter().map(|s| s.values()[i]));
            row
        })
        .collect();

    let params = vec![
        ("fn".to_string(), args.function.clone()),
        ("nu".to_string(), join_values(&nus)),
        ("kind".to_string(), args.kind.name().to_string()),
        ("normalization".to_string(), args.normalization.clone()),
        ("grid".to_string(), args.grid.clone()),
        ("nodes".to_string(), grid.count().to_string()),
    ];
    let text = render_table("deriv", &params, &Table { columns, rows }, args.out.format);
    write_output(&args.out.output, &text)?;
    Ok(())
}

pub fn laplace(args: &LaplaceArgs) -> CliResult {
    let f = parse_function_spec(&args.function)
        .map_err(|e| CliError::Validation(format!("--fn {:?}: {e}", args.function)))?;
    let grid = parse_grid_spec(&args.grid).map_err(CliError::Validation)?;
    let nus = parse_order_list(&args.nu).map_err(CliError::Validation)?;
    let ss = parse_number_list("s list", &args.s).map_err(CliError::Validation)?;
    let norm = parse_normalization(&args.normalization).map_err(CliError::Validation)?;

    let image = f.laplace_image()?;
    let samples = f.sample(&grid)?;
    let mut rows = Vec::new();
    for &nu in &nus {
        let order = FractionalOrder::new(nu)?;
        let d = rl_ns_derivative(&samples, &order, &norm)?;
        let sym = operator_symbol(&order, &norm)?;
        for &s in &ss {
            let numeric = numeric_laplace(&d, s)?;
            let symbolic = sym.eval(s) * image.eval(s);
            let rel_err = (numeric - symbolic).abs() / symbolic.abs().max(1e-300);
            rows.push(vec![nu, s, numeric, symbolic, rel_err]);
        }
    }

    let columns = ["nu", "s", "numeric", "symbolic", "rel_err"]
        .map(String::from)
        .to_vec();
    let params = vec![
        ("fn".to_string(), args.function.clone()),
        ("nu".to_string(), join_values(&nus)),
        ("s".to_string(), join_values(&ss)),
        ("normalization".to_string(), args.normalization.clone()),
        ("grid".to_string(), args.grid.clone()),
    ];
    let text = render_table(
        "laplace",
        &params,
        &Table { columns, rows },
        args.out.format,
    );
    write_output(&args.out.output, &text)?;
    Ok(())
}

pub fn heatflow(args: &HeatflowArgs) -> CliResult {
    let grid = parse_grid_spec(&args.grid).map_err(CliError::Validation)?;
    let nus = parse_order_list(&args.nu).map_err(CliError::Validation)?;
    let norm = parse_normalization(&args.normalization).map_err(CliError::Validation)?;

    let mut columns = vec!["x".to_string()];
    let mut params = vec![
        ("nu".to_string(), join_values(&nus)),
        ("conductivity".to_string(), fmt_value(args.conductivity)),
        ("flow".to_string(), fmt_value(args.flow)),
        ("scale".to_string(), fmt_value(args.scale)),
        ("normalization".to_string(), args.normalization.clone()),
        ("grid".to_string(), args.grid.clone()),
    ];
    let mut series = Vec::new();
    for &nu in &nus {
        let order = if nu == 1.0 {
            HeatOrder::Classical
        } else {
            HeatOrder::Fractional(FractionalOrder::new(nu)?)
        };
        let model = HeatFlowParams::new(
            args.conductivity,
            args.flow,
            args.scale,
            order,
            norm.clone(),
        )?;
        let solution = solve_steady(&model, &grid)?;
        columns.push(format!("T_nu{}", solution.nu_label()));
        params.push((
            format!("slope_nu{}", solution.nu_label()),
            fmt_value(solution.slope()),
        ));
        params.push((
            format!("intercept_nu{}", solution.nu_label()),
            fmt_value(solution.intercept()),
        ));
        series.push(solution);
    }
    let rows: Vec<Vec<f64>> = (0..grid.count())
        .map(|i| {
            let mut row = Vec::with_capacity(columns.len());
            row.push(grid.node(i));
            row.extend(series.iter().map(|s| s.temperatures()[i]));
            row
        })
        .collect();

    let text = render_table(
        "heatflow",
        &params,
        &Table { columns, rows },
        args.out.format,
    );
    write_output(&args.out.output, &text)?;
    Ok(())
}

pub fn figure1(args: &Figure1Args) -> CliResult {
    let series = figure1_dataset(args.xmax, args.points)?;

    let mut columns = vec!["x".to_string()];
    let mut params = vec![
        ("xmax".to_string(), fmt_value(args.xmax)),
        ("points".to_string(), args.points.to_string()),
        ("conductivity".to_string(), "3".to_string()),
        ("flow".to_string(), "2".to_string()),
        ("scale".to_string(), "-1".to_string()),
    ];
    for s in &series {
        columns.push(format!("T_nu{}", s.nu_label()));
        params.push((format!("slope_nu{}", s.nu_label()), fmt_value(s.slope())));
        params.push((
            format!("intercept_nu{}", s.nu_label()),
            fmt_value(s.intercept()),
        ));
    }
    let rows: Vec<Vec<f64>> = (0..series[0].xs().len())
        .map(|i| {
            let mut row = Vec::with_capacity(columns.len());
            row.push(series[0].xs()[i]);
            row.extend(series.iter().map(|s| s.temperatures()[i]));
            row
        })
        .collect();

    let text = render_table(
        "figure1",
        &params,
        &Table { columns, rows },
        args.out.format,
    );
    write_output(&args.out.output, &text)?;
    Ok(())
}

pub fn run_verify(args: &VerifyArgs) -> CliResult {
    let results = if args.skip_perf {
        verify::run_functional()
    } else {
        verify::run_all()
    };
    let mut failed = 0usize;
    for r in &results {
        let verdict = if r.passed { "pass" } else { "FAIL" };
        println!("{}: {verdict} ({})", r.name, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} checks passed", results.len());
        Ok(())
    } else {
        println!("{failed} of {} checks failed", results.len());
        Err(CliError::ChecksFailed(failed))
    }
}
