//! Plain-text layouts shared by the subcommands.

use std::fmt::Write;

use interval_tournament::PointMatrix;

/// Two aligned columns of `key value`.
pub fn key_values(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").unwrap();
    }
    out
}

/// One header line and one value line.
pub fn csv_record(rows: &[(&str, String)]) -> String {
    let keys: Vec<&str> = rows.iter().map(|(k, _)| *k).collect();
    let values: Vec<&str> = rows.iter().map(|(_, v)| v.as_str()).collect();
    format!("{}\n{}\n", keys.join(","), values.join(","))
}

/// Matrix in the golden-file format: `n` lines of comma-separated entries.
pub fn matrix_csv(m: &PointMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Right-aligned grid with player indices on top and each row's score on the
/// right.
pub fn matrix_table(m: &PointMatrix, scores: &[i64]) -> String {
    let n = m.n();
    let width = m
        .rows()
        .flatten()
        .chain(scores)
        .map(|v| v.to_string().len())
        .chain([n.to_string().len(), 1])
        .max()
        .unwrap();
    let label = n.to_string().len().max(1);
    let mut out = String::new();
    write!(out, "{:label$} ", "").unwrap();
    for j in 0..n {
        write!(out, " {j:>width$}").unwrap();
    }
    writeln!(out, "  | {:>width$}", "d").unwrap();
    for (i, row) in m.rows().enumerate() {
        write!(out, "{i:>label$} ").unwrap();
        for v in row {
            write!(out, " {v:>width$}").unwrap();
        }
        writeln!(out, "  | {:>width$}", scores[i]).unwrap();
    }
    out
}

pub fn list(values: &[i64]) -> String {
    values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_values_pad_to_longest_key() {
        let text = key_values(&[("n", "6".into()), ("window", "[8, 16]".into())]);
        assert_eq!(text, "n       6\nwindow  [8, 16]\n");
    }

    #[test]
    fn csv_record_layout() {
        assert_eq!(
            csv_record(&[("n", "2".into()), ("f", "0".into())]),
            "n,f\n2,0\n"
        );
    }

    #[test]
    fn matrix_layouts() {
        let m = PointMatrix::from_rows(vec![vec![0, 12], vec![3, 0]]).unwrap();
        assert_eq!(matrix_csv(&m), "0,12\n3,0\n");
        assert_eq!(
            matrix_table(&m, &[12, 3]),
            "    0  1  |  d\n0   0 12  | 12\n1   3  0  |  3\n"
        );
    }
}
