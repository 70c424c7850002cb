//! Shared domain types: score sequences, point matrices, interval bounds and
//! the statistics and checks every other module relies on.

use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted player count and largest accepted single score.
///
/// Keeps `S_n <= n * d_n` inside `i64`; products of the form `b * B_n` are
/// evaluated in `i128`.
pub const MAX_MAGNITUDE: i64 = 1_000_000_000;

/// Nondecreasing sequence of nonnegative scores `d_1 <= ... <= d_n`, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScoreSequence {
    scores: Vec<i64>,
}

impl ScoreSequence {
    /// Validates an already sorted sequence.
    pub fn new(scores: Vec<i64>) -> Result<Self> {
        validate_raw(&scores)?;
        if let Some(index) = scores.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotSorted { index: index + 1 });
        }
        Ok(Self { scores })
    }

    /// Sorts `raw` (stably) and returns it together with the permutation that
    /// maps each sorted position back to its position in `raw`.
    pub fn normalize(raw: &[i64]) -> Result<(Self, Permutation)> {
        validate_raw(raw)?;
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| raw[i]);
        let scores = order.iter().map(|&i| raw[i]).collect();
        Ok((Self { scores }, Permutation(order)))
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[i64] {
        &self.scores
    }

    /// Largest score `d_n`.
    pub fn max_score(&self) -> i64 {
        self.scores[self.scores.len() - 1]
    }

    pub fn total(&self) -> i64 {
        self.scores.iter().sum()
    }
}

impl fmt::Display for ScoreSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.scores.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

fn validate_raw(raw: &[i64]) -> Result<()> {
    if raw.len() < 2 {
        return Err(Error::InputTooShort { len: raw.len() });
    }
    if raw.len() as u64 > MAX_MAGNITUDE as u64 {
        return Err(Error::TooLarge {
            what: "player count",
            value: raw.len() as i64,
            limit: MAX_MAGNITUDE,
        });
    }
    for (index, &value) in raw.iter().enumerate() {
        if value < 0 {
            return Err(Error::NegativeScore { index, value });
        }
        if value > MAX_MAGNITUDE {
            return Err(Error::TooLarge {
                what: "score",
                value,
                limit: MAX_MAGNITUDE,
            });
        }
    }
    Ok(())
}

/// `sorted position -> original position`, zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Original position of the player at sorted position `sorted`.
    pub fn original(&self, sorted: usize) -> usize {
        self.0[sorted]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Bounds `a <= m_ij + m_ji <= b` on the points shared out in every match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalParams {
    a: i64,
    b: i64,
}

impl IntervalParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 0 || a > b {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

/// Square matrix of match results; `m_ij` is what player `i` won against `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl PointMatrix {
    /// Builds a matrix from rows, checking shape, sign and the zero diagonal.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::InputTooShort { len: n });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != n {
                return Err(Error::NonSquare {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            for (col, &value) in values.iter().enumerate() {
                if value < 0 {
                    return Err(Error::NegativeEntry { row, col, value });
                }
                if row == col && value != 0 {
                    return Err(Error::NonzeroDiagonal { index: row, value });
                }
            }
            entries.extend(values);
        }
        Ok(Self { n, entries })
    }

    pub(crate) fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: i64) {
        debug_assert!(value >= 0 && (i != j || value == 0));
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows().map(<[i64]>::to_vec).collect()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    /// `m_ij + m_ji`.
    pub fn pair_total(&self, i: usize, j: usize) -> i64 {
        self.get(i, j) + self.get(j, i)
    }

    /// Returns a copy with `m_ij` replaced by `value`; used to perturb
    /// known-good matrices in tests.
    pub fn with_entry(&self, i: usize, j: usize, value: i64) -> Result<Self> {
        let mut rows = self.to_rows();
        rows[i][j] = value;
        Self::from_rows(rows)
    }
}

/// `E`, `F`, `G` and the row sums of one point matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixStats {
    pub max_entry: i64,
    pub max_pair_total: i64,
    pub min_pair_total: i64,
    pub row_sums: Vec<i64>,
}

pub fn matrix_stats(m: &PointMatrix) -> MatrixStats {
    let n = m.n();
    let max_entry = m.entries.iter().copied().max().unwrap_or(0);
    let mut max_pair_total = i64::MIN;
    let mut min_pair_total = i64::MAX;
    for i in 0..n {
        for j in i + 1..n {
            let t = m.pair_total(i, j);
            max_pair_total = max_pair_total.max(t);
            min_pair_total = min_pair_total.min(t);
        }
    }
    MatrixStats {
        max_entry,
        max_pair_total,
        min_pair_total,
        row_sums: m.row_sums(),
    }
}

/// `e`, `f`, `g` of a score sequence and the window `[lo, hi]` searched for `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalSummary {
    pub e: i64,
    pub f: i64,
    pub g: i64,
    pub f_search_lo: i64,
    pub f_search_hi: i64,
}

/// One row whose sum differs from the required score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowMismatch {
    pub row: usize,
    pub expected: i64,
    pub actual: i64,
}

/// One unordered pair whose total falls outside `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    pub i: usize,
    pub j: usize,
    pub total: i64,
}

/// Result of checking a matrix against a score list and an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub nonzero_diagonal: Vec<usize>,
    pub row_mismatches: Vec<RowMismatch>,
    pub pair_violations: Vec<PairViolation>,
}

impl VerificationReport {
    pub fn zero_diagonal(&self) -> bool {
        self.nonzero_diagonal.is_empty()
    }

    pub fn row_sums_match(&self) -> bool {
        self.row_mismatches.is_empty()
    }

    pub fn pairs_in_window(&self) -> bool {
        self.pair_violations.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.zero_diagonal() && self.row_sums_match() && self.pairs_in_window()
    }
}

/// Checks that `m` realizes `d` as an `(a,b,n)`-tournament.
pub fn verify_realization(
    m: &PointMatrix,
    d: &ScoreSequence,
    params: IntervalParams,
) -> Result<VerificationReport> {
    verify_scores(m, d.scores(), params)
}

/// Like [`verify_realization`] but compares row `i` against `scores[i]` for an
/// arbitrary (possibly unsorted) score list.
pub fn verify_scores(
    m: &PointMatrix,
    scores: &[i64],
    params: IntervalParams,
) -> Result<VerificationReport> {
    let n = m.n();
    if scores.len() != n {
        return Err(Error::ShapeMismatch {
            matrix: n,
            scores: scores.len(),
        });
    }
    let nonzero_diagonal = (0..n).filter(|&i| m.get(i, i) != 0).collect();
    let row_mismatches = m
        .row_sums()
        .into_iter()
        .zip(scores)
        .enumerate()
        .filter(|(_, (actual, expected))| actual != *expected)
        .map(|(row, (actual, &expected))| RowMismatch {
            row,
            expected,
            actual,
        })
        .collect();
    let mut pair_violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let total = m.pair_total(i, j);
            if total < params.a() || total > params.b() {
                pair_violations.push(PairViolation { i, j, total });
            }
        }
    }
    Ok(VerificationReport {
        nonzero_diagonal,
        row_mismatches,
        pair_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_sorts_and_records_origin() {
        let (d, perm) = ScoreSequence::normalize(&[3, 1, 2]).unwrap();
        assert_eq!(d.scores(), &[1, 2, 3]);
        assert_eq!(perm.as_slice(), &[1, 2, 0]);
    }

    #[test]
    fn normalize_zero_pair_is_identity() {
        let (d, perm) = ScoreSequence::normalize(&[0, 0]).unwrap();
        assert_eq!(d.scores(), &[0, 0]);
        assert!(perm.is_identity());
    }

    #[test]
    fn normalize_sample_scores() {
        let (d, _) = ScoreSequence::normalize(&[9, 34, 9, 19, 32, 20]).unwrap();
        assert_eq!(d.scores(), &[9, 9, 19, 20, 32, 34]);
    }

    #[test]
    fn normalize_is_stable() {
        let (_, perm) = ScoreSequence::normalize(&[5, 1, 5, 1]).unwrap();
        assert_eq!(perm.as_slice(), &[1, 3, 0, 2]);
    }

    #[test]
    fn rejects_bad_sequences() {
        assert_eq!(
            ScoreSequence::normalize(&[4]).unwrap_err(),
            Error::InputTooShort { len: 1 }
        );
        assert_eq!(
            ScoreSequence::normalize(&[1, -2, 3]).unwrap_err(),
            Error::NegativeScore {
                index: 1,
                value: -2
            }
        );
        assert!(matches!(
            ScoreSequence::normalize(&[1, MAX_MAGNITUDE + 1]),
            Err(Error::TooLarge { .. })
        ));
        assert_eq!(
            ScoreSequence::new(vec![2, 1]).unwrap_err(),
            Error::NotSorted { index: 1 }
        );
    }

    #[test]
    fn interval_params_reject_inverted_bounds() {
        assert!(IntervalParams::new(3, 2).is_err());
        assert!(IntervalParams::new(-1, 2).is_err());
        assert!(IntervalParams::new(2, 2).is_ok());
    }

    #[test]
    fn matrix_validation() {
        assert!(matches!(
            PointMatrix::from_rows(vec![vec![0, 1], vec![1]]),
            Err(Error::NonSquare { row: 1, .. })
        ));
        assert!(matches!(
            PointMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]),
            Err(Error::NegativeEntry { .. })
        ));
        assert!(matches!(
            PointMatrix::from_rows(vec![vec![1, 0], vec![1, 0]]),
            Err(Error::NonzeroDiagonal { index: 0, .. })
        ));
    }

    #[test]
    fn zero_matrix_stats() {
        let s = matrix_stats(&PointMatrix::zeros(2));
        assert_eq!((s.max_entry, s.max_pair_total, s.min_pair_total), (0, 0, 0));
        assert_eq!(s.row_sums, vec![0, 0]);
    }

    #[test]
    fn verify_reports_each_failure_kind() {
        let m = PointMatrix::from_rows(vec![vec![0, 2, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap();
        let report = verify_scores(&m, &[2, 1, 3], IntervalParams::new(1, 2).unwrap()).unwrap();
        assert!(report.zero_diagonal());
        assert_eq!(
            report.row_mismatches,
            vec![RowMismatch {
                row: 2,
                expected: 3,
                actual: 2
            }]
        );
        assert!(report.pairs_in_window());
        assert!(!report.is_valid());

        let tight = verify_scores(&m, &[2, 1, 2], IntervalParams::new(2, 2).unwrap()).unwrap();
        assert!(tight.row_sums_match());
        assert_eq!(tight.pair_violations.len(), 1);
    }

    #[test]
    fn verify_rejects_shape_mismatch() {
        let m = PointMatrix::zeros(3);
        let d = ScoreSequence::new(vec![0, 0]).unwrap();
        assert_eq!(
            verify_realization(&m, &d, IntervalParams::new(0, 0).unwrap()).unwrap_err(),
            Error::ShapeMismatch {
                matrix: 3,
                scores: 2
            }
        );
    }
}
