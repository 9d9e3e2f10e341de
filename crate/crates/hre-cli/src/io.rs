//! Input parsing: judgment matrices from plain CSV and known priorities from
//! a JSON object.
//!
//! Matrix files hold n rows of n positive decimal numbers separated by
//! commas; blank lines and `#` comments are skipped. Cells may be fractions
//! such as `5/8`, which are parsed as two exact decimals and divided, because
//! judgment tables are frequently stated in fractions.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use hre::{PcMatrix, ReferenceAssignment};

#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

fn fail<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

pub fn load_matrix(path: &Path) -> Result<PcMatrix, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_csv(&text)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn parse_matrix_csv(text: &str) -> Result<PcMatrix, InputError> {
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (col, cell) in line.split(',').enumerate() {
            let value = parse_cell(cell.trim()).map_err(|msg| {
                InputError(format!("line {line_no}, column {}: {msg}", col + 1))
            })?;
            row.push(value);
        }
        rows.push((line_no, row));
    }
    if rows.is_empty() {
        return fail("no matrix rows found");
    }
    let n = rows[0].1.len();
    if rows.len() != n {
        return fail(format!(
            "matrix must be square: first row has {n} values but the file has {} rows",
            rows.len()
        ));
    }
    for (line_no, row) in &rows {
        if row.len() != n {
            return fail(format!(
                "line {line_no}: expected {n} values, got {}",
                row.len()
            ));
        }
    }
    PcMatrix::from_rows(rows.into_iter().map(|(_, r)| r).collect())
        .map_err(|e| InputError(e.to_string()))
}

fn parse_cell(cell: &str) -> Result<f64, String> {
    if cell.is_empty() {
        return Err("empty cell".into());
    }
    if let Some((num, den)) = cell.split_once('/') {
        if den.contains('/') {
            return Err(format!("malformed fraction {cell:?}"));
        }
        let numerator: f64 = num
            .trim()
            .parse()
            .map_err(|_| format!("malformed number {:?}", num.trim()))?;
        let denominator: f64 = den
            .trim()
            .parse()
            .map_err(|_| format!("malformed number {:?}", den.trim()))?;
        if denominator == 0.0 {
            return Err(format!("zero denominator in {cell:?}"));
        }
        return Ok(numerator / denominator);
    }
    cell.parse()
        .map_err(|_| format!("malformed number {cell:?}"))
}

/// Known-priority file: a JSON object mapping 1-based concept indices (as
/// strings) to positive numbers, e.g. `{"2": 5, "3": 7}`.
pub fn load_known(path: &Path) -> Result<ReferenceAssignment, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_known_json(&text)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn parse_known_json(text: &str) -> Result<ReferenceAssignment, InputError> {
    let raw: BTreeMap<String, f64> = serde_json::from_str(text)
        .map_err(|e| InputError(format!("known-values JSON: {e}")))?;
    let mut pairs = Vec::with_capacity(raw.len());
    for (key, value) in raw {
        let index: usize = key.parse().map_err(|_| {
            InputError(format!(
                "known-values key {key:?} is not a positive concept index"
            ))
        })?;
        pairs.push((index, value));
    }
    ReferenceAssignment::from_pairs(&pairs).map_err(|e| InputError(e.to_string()))
}

/// A user-supplied ranking: a JSON array of n positive numbers.
pub fn load_solution(path: &Path) -> Result<Vec<f64>, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let values: Vec<f64> = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("solution JSON: {e}")))?;
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_exactly() {
        let m = parse_matrix_csv("1, 3/5\n5/3, 1\n").unwrap();
        assert_eq!(m.get(0, 1), 3.0 / 5.0);
        assert_eq!(m.get(1, 0), 5.0 / 3.0);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let m = parse_matrix_csv("# judgments\n\n1,2\n0.5,1\n").unwrap();
        assert_eq!(m.n(), 2);
    }

    #[test]
    fn names_line_and_column_on_bad_cell() {
        let err = parse_matrix_csv("1,2\nx,1\n").unwrap_err();
        assert!(err.0.contains("line 2, column 1"), "{err}");
        let err = parse_matrix_csv("1,2\n0.5,1/0\n").unwrap_err();
        assert!(err.0.contains("line 2, column 2"), "{err}");
        let err = parse_matrix_csv("1,2/3/4\n1,1\n").unwrap_err();
        assert!(err.0.contains("column 2"), "{err}");
    }

    #[test]
    fn rejects_non_square_input() {
        let err = parse_matrix_csv("1,2,3\n1,1,1\n").unwrap_err();
        assert!(err.0.contains("3 values"), "{err}");
        let err = parse_matrix_csv("1,2\n0.5,1,9\n").unwrap_err();
        assert!(err.0.contains("line 2"), "{err}");
    }

    #[test]
    fn surfaces_domain_errors() {
        let err = parse_matrix_csv("1,-2\n0.5,1\n").unwrap_err();
        assert!(err.0.contains("(1,2)"), "{err}");
    }

    #[test]
    fn parses_known_values() {
        let r = parse_known_json(r#"{"2": 5, "3": 7.0}"#).unwrap();
        assert_eq!(r.get(2), Some(5.0));
        assert_eq!(r.get(3), Some(7.0));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn known_value_errors_name_the_key() {
        let err = parse_known_json(r#"{"zero": 5}"#).unwrap_err();
        assert!(err.0.contains("\"zero\""), "{err}");
        let err = parse_known_json(r#"{"2": -5}"#).unwrap_err();
        assert!(err.0.contains("concept 2"), "{err}");
        let err = parse_known_json("{oops").unwrap_err();
        assert!(err.0.contains("line 1"), "{err}");
    }
}
