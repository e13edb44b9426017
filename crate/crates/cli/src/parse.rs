//! Parsers for flag values: closed-form function specs, grid specs, order
//! lists, and normalization rules.

use std::fmt;
use std::sync::Arc;

use expfrac::{ClosedFormFunction, Grid, NormalizationRule};

/// Upper bound on grid nodes accepted from the command line. Keeps a typo
/// in a step size from attempting a multi-gigabyte allocation.
pub const MAX_NODES: usize = 10_000_000;

/// Where and why a function spec stopped parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at position {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("{token:?}")))
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        let found = match self.rest().chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        ParseError {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn at_number(&self) -> bool {
        matches!(self.rest().chars().next(), Some(c) if c.is_ascii_digit() || c == '.' || c == '+' || c == '-')
    }

    /// Longest prefix matching `[+-]? digits [. digits] [eE [+-] digits]`.
    fn number(&mut self) -> Result<f64, ParseError> {
        let b = self.src.as_bytes();
        let n = b.len();
        let start = self.pos;
        let mut i = start;
        if i < n && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let int_start = i;
        while i < n && b[i].is_ascii_digit() {
            i += 1;
        }
        let mut digits = i - int_start;
        if i < n && b[i] == b'.' {
            i += 1;
            let frac_start = i;
            while i < n && b[i].is_ascii_digit() {
                i += 1;
            }
            digits += i - frac_start;
        }
        if digits == 0 {
            return Err(self.err("a number"));
        }
        if i < n && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < n && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            let exp_start = j;
            while j < n && b[j].is_ascii_digit() {
                j += 1;
            }
            if j > exp_start {
                i = j;
            }
        }
        let text = &self.src[start..i];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = i;
                Ok(v)
            }
            _ => Err(ParseError {
                position: start,
                expected: "a finite number".to_string(),
                found: format!("{text:?}"),
            }),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let b = self.src.as_bytes();
        let start = self.pos;
        let mut i = start;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == start {
            return Err(self.err("a nonnegative integer exponent"));
        }
        let text = &self.src[start..i];
        match text.parse::<u32>() {
            Ok(k) if k <= 170 => {
                self.pos = i;
                Ok(k)
            }
            // 171! overflows f64, so larger powers have no Laplace image.
            _ => Err(ParseError {
                position: start,
                expected: "an exponent no larger than 170".to_string(),
                found: format!("{text:?}"),
            }),
        }
    }
}

/// Parses the closed-form mini-grammar:
///
/// ```text
/// expr := term (' '* '+' ' '* term)*
/// term := NUMBER '*' atom | NUMBER | atom
/// atom := 'x' | 'x^' UINT | 'exp(' NUMBER ')' | 'sin(' NUMBER ')' | 'cos(' NUMBER ')'
/// ```
///
/// `exp(b)` means `e^(b x)`; `sin(w)`/`cos(w)` mean `sin(w x)`/`cos(w x)`.
///
/// # Errors
/// [`ParseError`] carrying the byte position and the expected token.
pub fn parse_function_spec(src: &str) -> Result<ClosedFormFunction, ParseError> {
    let mut s = Scanner::new(src);
    let mut terms = vec![parse_term(&mut s)?];
    loop {
        s.skip_ws();
        if s.eat("+") {
            terms.push(parse_term(&mut s)?);
        } else {
            break;
        }
    }
    s.skip_ws();
    if s.pos != s.src.len() {
        return Err(s.err("'+' or end of input"));
    }
    Ok(assemble(terms))
}

fn parse_term(s: &mut Scanner) -> Result<(f64, ClosedFormFunction), ParseError> {
    s.skip_ws();
    if s.at_number() {
        let coeff = s.number()?;
        s.skip_ws();
        if s.eat("*") {
            s.skip_ws();
            return Ok((coeff, parse_atom(s)?));
        }
        return Ok((coeff, ClosedFormFunction::Constant(1.0)));
    }
    Ok((1.0, parse_atom(s)?))
}

fn parse_atom(s: &mut Scanner) -> Result<ClosedFormFunction, ParseError> {
    if s.eat("exp(") {
        let b = s.number()?;
        s.expect(")")?;
        return Ok(ClosedFormFunction::Exponential(b));
    }
    if s.eat("sin(") {
        let w = s.number()?;
        s.expect(")")?;
        return Ok(ClosedFormFunction::Sine(w));
    }
    if s.eat("cos(") {
        let w = s.number()?;
        s.expect(")")?;
        return Ok(ClosedFormFunction::Cosine(w));
    }
    if s.eat("x") {
        if s.eat("^") {
            return Ok(ClosedFormFunction::Monomial(s.exponent()?));
        }
        return Ok(ClosedFormFunction::Monomial(1));
    }
    Err(s.err("'x', 'x^K', 'exp(B)', 'sin(W)', 'cos(W)', or a number"))
}

fn assemble(terms: Vec<(f64, ClosedFormFunction)>) -> ClosedFormFunction {
    if terms.len() == 1 {
        let (coeff, f) = terms.into_iter().next().expect("one term");
        if let ClosedFormFunction::Constant(c) = f {
            return ClosedFormFunction::Constant(coeff * c);
        }
        if coeff == 1.0 {
            return f;
        }
        return ClosedFormFunction::AffineCombination(vec![(coeff, f)]);
    }
    ClosedFormFunction::AffineCombination(terms)
}

/// Parses `start:step:end` (end inclusive when it lands on a node) or
/// `start..end@points`.
///
/// # Errors
/// A human-readable message naming the offending piece.
pub fn parse_grid_spec(spec: &str) -> Result<Grid, String> {
    if let Some((range, points)) = spec.split_once('@') {
        let (a, b) = range
            .split_once("..")
            .ok_or_else(|| format!("grid {spec:?}: span form is start..end@points"))?;
        let start = grid_number(spec, a)?;
        let end = grid_number(spec, b)?;
        let points: usize = points
            .trim()
            .parse()
            .map_err(|_| format!("grid {spec:?}: point count must be a positive integer"))?;
        if points > MAX_NODES {
            return Err(format!("grid {spec:?}: more than {MAX_NODES} nodes"));
        }
        return Grid::from_span(start, end, points).map_err(|e| format!("grid {spec:?}: {e}"));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!(
            "grid {spec:?}: expected start:step:end or start..end@points"
        ));
    }
    let start = grid_number(spec, parts[0])?;
    let step = grid_number(spec, parts[1])?;
    let end = grid_number(spec, parts[2])?;
    if step <= 0.0 {
        return Err(format!("grid {spec:?}: step must be positive"));
    }
    if end <= start {
        return Err(format!("grid {spec:?}: end must exceed start"));
    }
    let ratio = (end - start) / step;
    // Land on `end` exactly when it is a whole number of steps away, up to
    // rounding in the division; otherwise stop at the last node below it.
    let rounded = ratio.round();
    let steps = if (ratio - rounded).abs() <= 1e-9 * rounded.max(1.0) {
        rounded
    } else {
        ratio.floor()
    };
    if steps < 1.0 || steps >= MAX_NODES as f64 {
        return Err(format!(
            "grid {spec:?}: node count must be between 2 and {MAX_NODES}"
        ));
    }
    Grid::new(start, step, steps as usize + 1).map_err(|e| format!("grid {spec:?}: {e}"))
}

fn grid_number(spec: &str, text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("grid {spec:?}: {text:?} is not a finite number")),
    }
}

/// Parses a comma-separated list of finite numbers, sorted ascending with
/// exact duplicates removed.
///
/// # Errors
/// A message naming the list and the entry that failed to parse.
pub fn parse_number_list(label: &str, list: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        match part.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            _ => return Err(format!("{label} {list:?}: {part:?} is not a finite number")),
        }
    }
    if out.is_empty() {
        return Err(format!("{label} {list:?}: at least one entry required"));
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    out.dedup();
    Ok(out)
}

/// [`parse_number_list`] labeled for the `--nu` flag.
///
/// # Errors
/// See [`parse_number_list`].
pub fn parse_order_list(list: &str) -> Result<Vec<f64>, String> {
    parse_number_list("order list", list)
}

/// Parses `one`, `cf`, or `custom:<path>` where the file is a two-column
/// value table (order, value) interpolated piecewise-linearly; values are
/// clamped to the end rows outside the tabulated range.
///
/// # Errors
/// A message naming the rule or the offending table line.
pub fn parse_normalization(spec: &str) -> Result<NormalizationRule, String> {
    match spec {
        "one" => Ok(NormalizationRule::One),
        "cf" => Ok(NormalizationRule::CaputoFabrizio),
        other => match other.strip_prefix("custom:") {
            Some(path) => load_value_table(path),
            None => Err(format!(
                "normalization {spec:?}: expected one, cf, or custom:<path>"
            )),
        },
    }
}

fn load_value_table(path: &str) -> Result<NormalizationRule, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("normalization table {path:?}: {e}"))?;
    let mut rows: Vec<(f64, f64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let nu = fields.next().and_then(|t| t.parse::<f64>().ok());
        let value = fields.next().and_then(|t| t.parse::<f64>().ok());
        let extra = fields.next();
        match (nu, value, extra) {
            (Some(nu), Some(value), None)
                if (0.0..=1.0).contains(&nu) && value.is_finite() && value > 0.0 =>
            {
                rows.push((nu, value));
            }
            _ => {
                return Err(format!(
                    "normalization table {path:?} line {}: expected `order value` with order in [0, 1] and value > 0",
                    idx + 1
                ))
            }
        }
    }
    if rows.len() < 2 {
        return Err(format!(
            "normalization table {path:?}: needs at least two rows"
        ));
    }
    if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(format!(
            "normalization table {path:?}: orders must be strictly increasing"
        ));
    }
    Ok(NormalizationRule::Custom(Arc::new(move |nu| {
        interpolate(&rows, nu)
    })))
}

fn interpolate(rows: &[(f64, f64)], nu: f64) -> f64 {
    let last = rows.len() - 1;
    if nu <= rows[0].0 {
        return rows[0].1;
    }
    if nu >= rows[last].0 {
        return rows[last].1;
    }
    let i = rows.partition_point(|(x, _)| *x < nu);
    let (x0, y0) = rows[i - 1];
    let (x1, y1) = rows[i];
    y0 + (y1 - y0) * (nu - x0) / (x1 - x0)
}
