//! Score lists and matrix files.

use std::fs;
use std::path::Path;

use interval_tournament::PointMatrix;

use crate::CliError;

/// Parses integers separated by commas and/or whitespace (so one-column
/// files work too).
pub fn parse_scores(text: &str) -> Result<Vec<i64>, CliError> {
    let values: Vec<i64> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::Input(format!("not an integer score: {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(CliError::Input("no scores given".into()));
    }
    Ok(values)
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Reads `n` lines of `n` comma-separated integers. Blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<PointMatrix, CliError> {
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>().map_err(|_| {
                    CliError::Input(format!(
                        "malformed matrix: line {} has non-integer entry {t:?}",
                        line_no + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    PointMatrix::from_rows(rows).map_err(|e| CliError::Input(format!("malformed matrix: {e}")))
}
