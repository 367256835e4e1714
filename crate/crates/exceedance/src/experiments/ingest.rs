//! Reading observation series from CSV files.
//!
//! Input files are plain comma-separated text with one observation per
//! row; the caller picks the column. Errors carry 1-based row numbers so
//! a malformed cell in a million-line file can actually be found.

use std::path::Path;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// How to treat the first row of the file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeaderPolicy {
    /// The file has no header; parse every row.
    None,
    /// Unconditionally drop the first row.
    Skip,
    /// Drop the first row only if its selected column does not parse as
    /// a number (the safe default for files of unknown origin).
    Auto,
}

/// Read one column of a CSV file into a [`TimeSeries`].
///
/// `column` is 0-based. Values must be finite numbers; a trailing
/// newline is fine, but an interior blank row is an error. CRLF line
/// endings are accepted.
pub fn ingest_csv(path: &Path, column: usize, header: HeaderPolicy) -> Result<TimeSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    ingest_csv_text(&text, column, header)
        .map_err(|e| match e {
            Error::Data(msg) => Error::Data(format!("{}: {msg}", path.display())),
            other => other,
        })
}

/// [`ingest_csv`] on already-loaded text (exposed for tests and for
/// callers that stream from something other than a file).
pub fn ingest_csv_text(text: &str, column: usize, header: HeaderPolicy) -> Result<TimeSeries> {
    let mut values = Vec::new();
    let mut rows = text.split('\n').enumerate().peekable();
    let mut first_data_row = true;
    while let Some((i, raw)) = rows.next() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let row_no = i + 1;
        if line.is_empty() {
            if rows.peek().is_none() {
                break; // trailing newline
            }
            return Err(Error::Data(format!("row {row_no}: blank row")));
        }
        let cell = line.split(',').nth(column).ok_or_else(|| {
            Error::Data(format!(
                "row {row_no}: no column {column} (found {} columns)",
                line.split(',').count()
            ))
        })?;
        let parsed = cell.trim().parse::<f64>();
        if first_data_row {
            first_data_row = false;
            match header {
                HeaderPolicy::Skip => continue,
                HeaderPolicy::Auto if parsed.is_err() => continue,
                _ => {}
            }
        }
        let value = parsed.map_err(|_| {
            Error::Data(format!(
                "row {row_no}: cannot parse {:?} as a number",
                cell.trim()
            ))
        })?;
        if !value.is_finite() {
            return Err(Error::Data(format!(
                "row {row_no}: non-finite value {value}"
            )));
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::Data("no data rows in input".into()));
    }
    TimeSeries::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_single_column() {
        let series = ingest_csv_text("1.5\n2\n-3.25\n", 0, HeaderPolicy::None).unwrap();
        assert_eq!(series.values(), &[1.5, 2.0, -3.25]);
    }

    #[test]
    fn selects_requested_column() {
        let text = "2020-01-01,4.2,x\n2020-01-02,5.1,y\n";
        let series = ingest_csv_text(text, 1, HeaderPolicy::None).unwrap();
        assert_eq!(series.values(), &[4.2, 5.1]);
    }

    #[test]
    fn auto_header_skips_only_non_numeric_first_rows() {
        let with = ingest_csv_text("speed\n3.0\n4.0\n", 0, HeaderPolicy::Auto).unwrap();
        assert_eq!(with.values(), &[3.0, 4.0]);
        let without = ingest_csv_text("3.0\n4.0\n", 0, HeaderPolicy::Auto).unwrap();
        assert_eq!(without.values(), &[3.0, 4.0]);
    }

    #[test]
    fn skip_header_drops_first_row_unconditionally() {
        let series = ingest_csv_text("1.0\n2.0\n", 0, HeaderPolicy::Skip).unwrap();
        assert_eq!(series.values(), &[2.0]);
    }

    #[test]
    fn crlf_and_trailing_newline_are_fine() {
        let series = ingest_csv_text("1.0\r\n2.0\r\n", 0, HeaderPolicy::None).unwrap();
        assert_eq!(series.values(), &[1.0, 2.0]);
    }

    #[test]
    fn errors_carry_row_numbers() {
        let err = ingest_csv_text("1.0\nbogus\n3.0\n", 0, HeaderPolicy::None).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        let err = ingest_csv_text("1.0\n\n3.0\n", 0, HeaderPolicy::None).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        let err = ingest_csv_text("1.0,2.0\n3.0\n", 1, HeaderPolicy::None).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
    }

    #[test]
    fn rejects_non_finite_and_empty_input() {
        assert!(ingest_csv_text("1.0\nNaN\n", 0, HeaderPolicy::None).is_err());
        assert!(ingest_csv_text("inf\n", 0, HeaderPolicy::None).is_err());
        assert!(ingest_csv_text("", 0, HeaderPolicy::None).is_err());
        // A header-only file has no data rows.
        assert!(ingest_csv_text("speed\n", 0, HeaderPolicy::Auto).is_err());
    }
}
