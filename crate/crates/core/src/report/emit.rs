//! Serialization of reports and suites to JSON, CSV and gnuplot data.

use std::path::Path;

use serde::Serialize;

use super::suite::SuiteOutcome;
use super::{AlphaGridRow, ComparisonReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    GnuplotDat,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "gnuplot-dat" | "dat" => Ok(Format::GnuplotDat),
            other => Err(Error::Argument(format!(
                "unknown format '{other}'; expected json, csv or gnuplot-dat"
            ))),
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Missing,
    Text(String),
    Flag(bool),
}

/// Shortest round-trip representation, scientific outside `[1e-4, 1e15)`.
fn number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Missing => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn dat(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Missing => "NaN".into(),
            Cell::Text(s) if s.is_empty() => "-".into(),
            Cell::Text(s) => s.split_whitespace().collect::<Vec<_>>().join("_"),
            Cell::Flag(b) => u8::from(*b).to_string(),
        }
    }
}

/// A document with a flat tabular view.
pub trait Tabular: Serialize {
    fn columns(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<Cell>>;
}

impl Tabular for SuiteOutcome {
    fn columns(&self) -> Vec<&'static str> {
        vec!["suite", "name", "measured", "tolerance", "pass", "detail"]
    }

    fn rows(&self) -> Vec<Vec<Cell>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    Cell::Text(self.suite_name.clone()),
                    Cell::Text(c.name.clone()),
                    Cell::Num(c.measured),
                    Cell::Num(c.tolerance),
                    Cell::Flag(c.pass),
                    Cell::Text(c.detail.clone().unwrap_or_default()),
                ]
            })
            .collect()
    }
}

impl Tabular for ComparisonReport {
    fn columns(&self) -> Vec<&'static str> {
        vec!["quantity", "value"]
    }

    fn rows(&self) -> Vec<Vec<Cell>> {
        let mut rows = vec![
            ("B", Cell::Num(self.schrodinger.energy)),
            ("B_prime", Cell::Num(self.path_integral.energy)),
            ("a", Cell::Num(self.schrodinger.decay())),
            ("a_prime", Cell::Num(self.path_integral.decay())),
            ("energy_gap", Cell::Num(self.deltas.energy_gap)),
            ("decay_gap", Cell::Num(self.deltas.decay_gap)),
        ];
        let names = [
            ["bc_schrodinger_psi_schrodinger_bc", "bc_schrodinger_psi_path_integral_bc"],
            ["bc_path_integral_psi_schrodinger_bc", "bc_path_integral_psi_path_integral_bc"],
        ];
        for (row, row_names) in self.bc_matrix.iter().zip(names) {
            for (bc, name) in row.iter().zip(row_names) {
                rows.push((name, Cell::Num(bc.relative)));
            }
        }
        let (e, err) = match &self.spectral {
            Some(s) => (Cell::Num(s.energy), Cell::Num(s.error_estimate)),
            None => (Cell::Missing, Cell::Missing),
        };
        rows.push(("spectral_E", e));
        rows.push(("spectral_err", err));
        rows.into_iter()
            .map(|(k, v)| vec![Cell::Text(k.to_string()), v])
            .collect()
    }
}

/// Rows of a `compare --alpha-grid` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaGridTable(pub Vec<AlphaGridRow>);

impl Tabular for AlphaGridTable {
    fn columns(&self) -> Vec<&'static str> {
        vec!["alpha", "B", "B_prime", "spectral_E", "spectral_err", "gap"]
    }

    fn rows(&self) -> Vec<Vec<Cell>> {
        let opt = |x: Option<f64>| x.map_or(Cell::Missing, Cell::Num);
        self.0
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.alpha),
                    Cell::Num(r.b),
                    Cell::Num(r.b_prime),
                    opt(r.spectral_e),
                    opt(r.spectral_err),
                    Cell::Num(r.gap),
                ]
            })
            .collect()
    }
}

/// Renders a document in the given format.
pub fn render<T: Tabular>(doc: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::Serialize(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            let ser = |e: csv::Error| Error::Serialize(e.to_string());
            w.write_record(doc.columns()).map_err(ser)?;
            for row in doc.rows() {
                w.write_record(row.iter().map(Cell::csv)).map_err(ser)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Serialize(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Serialize(e.to_string()))
        }
        Format::GnuplotDat => {
            let mut s = format!("# {}\n", doc.columns().join(" "));
            for row in doc.rows() {
                s.push_str(&row.iter().map(Cell::dat).collect::<Vec<_>>().join(" "));
                s.push('\n');
            }
            Ok(s)
        }
    }
}

/// Writes a rendered document to `path`.
pub fn emit<T: Tabular>(doc: &T, format: Format, path: &Path) -> Result<()> {
    let text = render(doc, format)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
