//! Table rendering and output plumbing.
//!
//! Artifacts are self-describing: `#`-prefixed comment lines carry the
//! command and its parameters, followed by one header row and the data.
//! Values use Rust's shortest round-trip decimal form, so re-parsing an
//! emitted file recovers bit-identical numbers, and identical configs
//! produce byte-identical files (no timestamps anywhere).

use std::io::Write;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Tsv,
}

impl OutputFormat {
    fn separator(self) -> char {
        match self {
            Self::Csv => ',',
            Self::Tsv => '\t',
        }
    }
}

/// Shortest decimal representation that parses back to the same value.
pub fn fmt_value(v: f64) -> String {
    format!("{v}")
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn render_table(
    command: &str,
    params: &[(String, String)],
    table: &Table,
    format: OutputFormat,
) -> String {
    let sep = format.separator().to_string();
    let mut out = String::new();
    out.push_str("# expfrac ");
    out.push_str(command);
    out.push('\n');
    if !params.is_empty() {
        let kv: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str("# ");
        out.push_str(&kv.join(" "));
        out.push('\n');
    }
    out.push_str("# seedless deterministic\n");
    out.push_str(&table.columns.join(&sep));
    out.push('\n');
    for row in &table.rows {
        debug_assert_eq!(row.len(), table.columns.len());
        let cells: Vec<String> = row.iter().map(|v| fmt_value(*v)).collect();
        out.push_str(&cells.join(&sep));
        out.push('\n');
    }
    out
}

/// Writes to the named file, or to standard output when the target is `-`.
pub fn write_output(target: &str, content: &str) -> std::io::Result<()> {
    if target == "-" {
        std::io::stdout().lock().write_all(content.as_bytes())
    } else {
        std::fs::write(target, content)
    }
}
