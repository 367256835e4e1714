//! Curve reports: the tabular artifact every experiment emits.
//!
//! A report is one or more named curves over a threshold grid plus a
//! metadata block (configuration hash, root seed, crate version) that
//! makes the run reproducible. Emission is deterministic: identical
//! reports produce identical bytes, and every floating-point cell is
//! written with the shortest representation that parses back to the
//! exact same value.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One row of a curve: the statistics of a single threshold `b`.
///
/// Which cells are populated depends on the experiment. Bias studies
/// fill everything: `point` carries the oracle value from the long
/// reference run, `ci_lo`/`ci_hi` a normal band around the conditional
/// mean (mean ± z·SE over the finite replications), and
/// `cond_mean`/`q10`/`q90`/`n_finite` the across-replication summary of
/// estimates conditional on being finite. Single-run estimates fill
/// `point` and its CLT confidence interval. Closed-form model curves
/// fill `point` alone. An empty `point` means the quantity did not
/// resolve (for example a threshold the series never exceeds).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub b: f64,
    pub point: Option<f64>,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub cond_mean: Option<f64>,
    pub q10: Option<f64>,
    pub q90: Option<f64>,
    pub n_finite: usize,
    pub bound: Option<f64>,
}

impl CurveRow {
    /// A row carrying nothing but the threshold (an unresolved entry).
    pub fn empty(b: f64) -> Self {
        Self {
            b,
            point: None,
            ci_lo: None,
            ci_hi: None,
            cond_mean: None,
            q10: None,
            q90: None,
            n_finite: 0,
            bound: None,
        }
    }

    /// Multiply every time-valued cell by `factor` (unit conversion —
    /// thresholds and counts are left alone).
    pub(crate) fn scale_times(mut self, factor: f64) -> Self {
        for cell in [
            &mut self.point,
            &mut self.ci_lo,
            &mut self.ci_hi,
            &mut self.cond_mean,
            &mut self.q10,
            &mut self.q90,
            &mut self.bound,
        ] {
            if let Some(v) = cell.as_mut() {
                *v *= factor;
            }
        }
        self
    }
}

/// A named curve: rows sorted by strictly increasing threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCurve {
    pub name: String,
    pub rows: Vec<CurveRow>,
}

/// Reproducibility metadata attached to every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    /// SHA-256 of the canonical JSON encoding of the full configuration.
    pub config_hash: String,
    /// Root seed; every simulation stream is forked from it.
    pub seed: u64,
    /// Replication count the aggregates were computed over.
    pub replications: usize,
    /// Version of the crate that produced the report.
    pub version: String,
}

/// The full emission artifact: metadata plus one or more curves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub metadata: ReportMetadata,
    pub curves: Vec<NamedCurve>,
}

impl CurveReport {
    /// A report with a single anonymous curve.
    pub fn single(metadata: ReportMetadata, rows: Vec<CurveRow>) -> Self {
        Self {
            metadata,
            curves: vec![NamedCurve {
                name: String::new(),
                rows,
            }],
        }
    }

    /// Check the structural invariants: per curve, thresholds strictly
    /// increase, every populated cell is finite, intervals are ordered,
    /// and `q10 ≤ cond_mean ≤ q90` wherever all three are present.
    pub fn validate(&self) -> Result<()> {
        for curve in &self.curves {
            let mut prev = f64::NEG_INFINITY;
            for row in &curve.rows {
                if !(row.b > prev) {
                    return Err(Error::Data(format!(
                        "curve {:?}: thresholds must strictly increase, got {} after {prev}",
                        curve.name, row.b
                    )));
                }
                prev = row.b;
                for cell in [
                    Some(row.b),
                    row.point,
                    row.ci_lo,
                    row.ci_hi,
                    row.cond_mean,
                    row.q10,
                    row.q90,
                    row.bound,
                ]
                .into_iter()
                .flatten()
                {
                    if !cell.is_finite() {
                        return Err(Error::Data(format!(
                            "curve {:?} at b = {}: non-finite cell {cell}",
                            curve.name, row.b
                        )));
                    }
                }
                if let (Some(lo), Some(hi)) = (row.ci_lo, row.ci_hi) {
                    if lo > hi {
                        return Err(Error::Data(format!(
                            "curve {:?} at b = {}: interval [{lo}, {hi}] is reversed",
                            curve.name, row.b
                        )));
                    }
                }
                if let (Some(q10), Some(mean), Some(q90)) = (row.q10, row.cond_mean, row.q90) {
                    if !(q10 <= mean && mean <= q90) {
                        return Err(Error::Data(format!(
                            "curve {:?} at b = {}: expected q10 {q10} ≤ mean {mean} ≤ q90 {q90}",
                            curve.name, row.b
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Output encodings for [`emit_curves`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

const COLUMNS: [&str; 9] = [
    "b",
    "point",
    "ci_lo",
    "ci_hi",
    "cond_mean",
    "q10",
    "q90",
    "n_finite",
    "bound",
];

fn fmt_cell(cell: Option<f64>) -> String {
    // `{}` on f64 prints the shortest decimal string that parses back to
    // the same bits, which is what makes the round-trip exact.
    cell.map(|v| v.to_string()).unwrap_or_default()
}

/// Write a report.
///
/// CSV with a single curve uses exactly the nine data columns; with
/// several curves a leading `curve` label column is added. JSON always
/// mirrors the CSV data and additionally carries the metadata block.
/// Output is deterministic: the same report gives the same bytes.
pub fn emit_curves(
    report: &CurveReport,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<()> {
    report.validate()?;
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            out.write_all(b"\n")?;
        }
        OutputFormat::Csv => {
            let labeled = report.curves.len() > 1;
            let mut text = String::new();
            if labeled {
                text.push_str("curve,");
            }
            text.push_str(&COLUMNS.join(","));
            text.push('\n');
            for curve in &report.curves {
                for row in &curve.rows {
                    if labeled {
                        text.push_str(&curve.name);
                        text.push(',');
                    }
                    let cells = [
                        fmt_cell(Some(row.b)),
                        fmt_cell(row.point),
                        fmt_cell(row.ci_lo),
                        fmt_cell(row.ci_hi),
                        fmt_cell(row.cond_mean),
                        fmt_cell(row.q10),
                        fmt_cell(row.q90),
                        row.n_finite.to_string(),
                        fmt_cell(row.bound),
                    ];
                    text.push_str(&cells.join(","));
                    text.push('\n');
                }
            }
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// [`emit_curves`] into a file created (or truncated) at `path`.
pub fn emit_curves_to_path(
    report: &CurveReport,
    format: OutputFormat,
    path: &Path,
) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    emit_curves(report, format, &mut file)?;
    Ok(())
}

/// Parse CSV text produced by [`emit_curves`] back into named curves
/// (the single-curve form comes back under the empty name). Inverse of
/// the CSV writer to full precision.
pub fn parse_curves_csv(text: &str) -> Result<Vec<NamedCurve>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Data("empty curve file".into()))?;
    let labeled = match header {
        h if h == COLUMNS.join(",") => false,
        h if h == format!("curve,{}", COLUMNS.join(",")) => true,
        other => {
            return Err(Error::Data(format!(
                "unrecognized curve header {other:?}"
            )))
        }
    };
    let parse_opt = |cell: &str, row: usize| -> Result<Option<f64>> {
        if cell.is_empty() {
            return Ok(None);
        }
        cell.parse::<f64>().map(Some).map_err(|_| {
            Error::Data(format!("row {row}: cannot parse {cell:?} as a number"))
        })
    };
    let mut curves: Vec<NamedCurve> = Vec::new();
    for (i, line) in lines.enumerate() {
        let row_no = i + 2;
        let cells: Vec<&str> = line.split(',').collect();
        let expected = COLUMNS.len() + usize::from(labeled);
        if cells.len() != expected {
            return Err(Error::Data(format!(
                "row {row_no}: expected {expected} cells, found {}",
                cells.len()
            )));
        }
        let (name, data) = if labeled {
            (cells[0], &cells[1..])
        } else {
            ("", &cells[..])
        };
        let row = CurveRow {
            b: parse_opt(data[0], row_no)?.ok_or_else(|| {
                Error::Data(format!("row {row_no}: missing threshold"))
            })?,
            point: parse_opt(data[1], row_no)?,
            ci_lo: parse_opt(data[2], row_no)?,
            ci_hi: parse_opt(data[3], row_no)?,
            cond_mean: parse_opt(data[4], row_no)?,
            q10: parse_opt(data[5], row_no)?,
            q90: parse_opt(data[6], row_no)?,
            n_finite: data[7].parse().map_err(|_| {
                Error::Data(format!(
                    "row {row_no}: cannot parse {:?} as a count",
                    data[7]
                ))
            })?,
            bound: parse_opt(data[8], row_no)?,
        };
        match curves.last_mut() {
            Some(last) if last.name == name => last.rows.push(row),
            _ => curves.push(NamedCurve {
                name: name.to_string(),
                rows: vec![row],
            }),
        }
    }
    Ok(curves)
}
