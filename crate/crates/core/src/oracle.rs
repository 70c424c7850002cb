//! Ground truth by exhaustion on small instances, plus the classical score
//! sequence characterizations the interval test specializes to.

use rayon::prelude::*;

use crate::analysis::{
    bound_e, interval_test, max_g, max_g_bisect, min_f, min_f_linear, min_f_quadratic,
    prefix_tables,
};
use crate::construct::mini_max;
use crate::domain::{matrix_stats, verify_realization, IntervalParams, PointMatrix, ScoreSequence};
use crate::error::{Error, Result};

/// Default cap on enumerated pair-states.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest player count the enumeration accepts.
pub const MAX_PLAYERS: usize = 6;

/// Everything the enumeration learned about the realizations of one sequence
/// whose pair totals all lie in `[a_floor, pair_cap]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub realizable: bool,
    pub count: u64,
    pub min_f: Option<i64>,
    pub max_g: Option<i64>,
    pub min_e: Option<i64>,
    /// First realization in search order.
    pub witness: Option<PointMatrix>,
    /// `frontier[t]`: largest smallest-pair-total among realizations whose
    /// largest pair total is exactly `t`, for `t` in `0..=pair_cap`.
    pub frontier: Vec<Option<i64>>,
    /// Pair-states assigned during the search.
    pub visited: u64,
}

impl OracleResult {
    /// Whether some enumerated realization has all pair totals in `[a, b]`.
    pub fn admits(&self, a: i64, b: i64) -> bool {
        self.frontier
            .iter()
            .take((b + 1).max(0) as usize)
            .any(|g| g.is_some_and(|g| g >= a))
    }
}

/// Exhaustive depth-first enumeration with a work budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Upper estimate of the search size: the number of matrices whose rows
    /// have the right sums and entries at most `pair_cap`.
    pub fn cost_estimate(d: &ScoreSequence, pair_cap: i64) -> u64 {
        if pair_cap < 0 {
            return 0;
        }
        let parts = d.len() - 1;
        d.scores()
            .iter()
            .map(|&score| bounded_compositions(score, parts, pair_cap))
            .fold(1u64, u64::saturating_mul)
    }

    pub fn enumerate(
        &self,
        d: &ScoreSequence,
        pair_cap: i64,
        a_floor: i64,
    ) -> Result<OracleResult> {
        self.enumerate_scores(d.scores(), pair_cap, a_floor)
    }

    /// Same as [`Oracle::enumerate`] for scores in any order.
    pub fn enumerate_scores(
        &self,
        scores: &[i64],
        pair_cap: i64,
        a_floor: i64,
    ) -> Result<OracleResult> {
        let (sorted, _) = ScoreSequence::normalize(scores)?;
        let estimate = Self::cost_estimate(&sorted, pair_cap);
        if scores.len() > MAX_PLAYERS || estimate > self.budget {
            return Err(Error::OracleBudgetExceeded {
                cost: estimate,
                budget: self.budget,
            });
        }
        let mut search = Search::new(scores, pair_cap, a_floor.max(0), self.budget);
        if pair_cap >= a_floor.max(0) {
            search.run(0)?;
        }
        Ok(search.finish())
    }
}

/// Enumerates with the default budget.
pub fn enumerate_extremes(d: &ScoreSequence, pair_cap: i64, a_floor: i64) -> Result<OracleResult> {
    Oracle::default().enumerate(d, pair_cap, a_floor)
}

/// Ways to write `total` as an ordered sum of `parts` values in `0..=cap`.
fn bounded_compositions(total: i64, parts: usize, cap: i64) -> u64 {
    let total = total as usize;
    let cap = cap as usize;
    let mut ways = vec![0u64; total + 1];
    ways[0] = 1;
    for _ in 0..parts {
        let mut next = vec![0u64; total + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for v in 0..=cap.min(total - s) {
                next[s + v] = next[s + v].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[total]
}

struct Search {
    n: usize,
    pairs: Vec<(usize, usize)>,
    remaining: Vec<i64>,
    open_pairs: Vec<usize>,
    matrix: Vec<i64>,
    cap: i64,
    floor: i64,
    budget: u64,
    visited: u64,
    count: u64,
    min_f: Option<i64>,
    max_g: Option<i64>,
    min_e: Option<i64>,
    witness: Option<Vec<i64>>,
    frontier: Vec<Option<i64>>,
    // running extremes along the current path
    path_max_total: Vec<i64>,
    path_min_total: Vec<i64>,
    path_max_entry: Vec<i64>,
}

impl Search {
    fn new(scores: &[i64], cap: i64, floor: i64, budget: u64) -> Self {
        let n = scores.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let depth = pairs.len();
        Self {
            n,
            pairs,
            remaining: scores.to_vec(),
            open_pairs: vec![n - 1; n],
            matrix: vec![0; n * n],
            cap,
            floor,
            budget,
            visited: 0,
            count: 0,
            min_f: None,
            max_g: None,
            min_e: None,
            witness: None,
            frontier: vec![None; (cap.max(-1) + 1) as usize],
            path_max_total: vec![0; depth + 1],
            path_min_total: vec![i64::MAX; depth + 1],
            path_max_entry: vec![0; depth + 1],
        }
    }

    fn can_finish(&self, player: usize) -> bool {
        let rem = self.remaining[player];
        rem >= 0 && rem <= self.cap * self.open_pairs[player] as i64
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        if depth == self.pairs.len() {
            self.record(depth);
            return Ok(());
        }
        let (i, j) = self.pairs[depth];
        for total in self.floor..=self.cap {
            let hi = total.min(self.remaining[i]);
            let lo = (total - self.remaining[j]).max(0);
            for forward in lo..=hi {
                let backward = total - forward;
                self.visited += 1;
                if self.visited > self.budget {
                    return Err(Error::OracleBudgetExceeded {
                        cost: self.visited,
                        budget: self.budget,
                    });
                }
                self.assign(i, j, forward, backward);
                if self.can_finish(i) && self.can_finish(j) {
                    self.path_max_total[depth + 1] = self.path_max_total[depth].max(total);
                    self.path_min_total[depth + 1] = self.path_min_total[depth].min(total);
                    self.path_max_entry[depth + 1] =
                        self.path_max_entry[depth].max(forward).max(backward);
                    self.run(depth + 1)?;
                }
                self.unassign(i, j, forward, backward);
            }
        }
        Ok(())
    }

    fn assign(&mut self, i: usize, j: usize, forward: i64, backward: i64) {
        self.matrix[i * self.n + j] = forward;
        self.matrix[j * self.n + i] = backward;
        self.remaining[i] -= forward;
        self.remaining[j] -= backward;
        self.open_pairs[i] -= 1;
        self.open_pairs[j] -= 1;
    }

    fn unassign(&mut self, i: usize, j: usize, forward: i64, backward: i64) {
        self.matrix[i * self.n + j] = 0;
        self.matrix[j * self.n + i] = 0;
        self.remaining[i] += forward;
        self.remaining[j] += backward;
        self.open_pairs[i] += 1;
        self.open_pairs[j] += 1;
    }

    fn record(&mut self, depth: usize) {
        debug_assert!(self.remaining.iter().all(|&r| r == 0));
        let f = self.path_max_total[depth];
        let g = self.path_min_total[depth];
        let e = self.path_max_entry[depth];
        self.count += 1;
        self.min_f = Some(self.min_f.map_or(f, |v| v.min(f)));
        self.max_g = Some(self.max_g.map_or(g, |v| v.max(g)));
        self.min_e = Some(self.min_e.map_or(e, |v| v.min(e)));
        let slot = &mut self.frontier[f as usize];
        *slot = Some(slot.map_or(g, |v| v.max(g)));
        if self.witness.is_none() {
            self.witness = Some(self.matrix.clone());
        }
    }

    fn finish(self) -> OracleResult {
        let n = self.n;
        OracleResult {
            realizable: self.count > 0,
            count: self.count,
            min_f: self.min_f,
            max_g: self.max_g,
            min_e: self.min_e,
            witness: self.witness.map(|entries| {
                PointMatrix::from_rows(entries.chunks(n).map(<[i64]>::to_vec).collect())
                    .expect("enumerated matrices are well formed")
            }),
            frontier: self.frontier,
            visited: self.visited,
        }
    }
}

/// Landau: `d` is the score sequence of an ordinary round robin (one point
/// per match) iff `S_n = B_n` and `S_k >= B_k` for every `k`.
pub fn landau_test(d: &ScoreSequence) -> bool {
    moon_test(d, 1)
}

/// Moon: `d` is the score sequence of a tournament with exactly `c` points per
/// match iff `S_n = c*B_n` and `S_k >= c*B_k` for every `k`.
///
/// # Panics
/// If `c < 1`.
pub fn moon_test(d: &ScoreSequence, c: i64) -> bool {
    assert!(c >= 1, "points per match must be positive, got {c}");
    let t = prefix_tables(d);
    let n = t.n();
    let c = c as i128;
    t.sum(n) as i128 == c * t.binom(n) as i128
        && (1..n).all(|k| t.sum(k) as i128 >= c * t.binom(k) as i128)
}

/// One disagreement found by [`sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub scores: Vec<i64>,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of a [`sweep`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SweepReport {
    /// Sequences examined per length, `(n, count)`.
    pub sequences: Vec<(usize, usize)>,
    pub checks: u64,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn total_sequences(&self) -> usize {
        self.sequences.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All nondecreasing sequences of length `n` with entries in `0..=d_max`, in
/// lexicographic order.
pub fn nondecreasing_sequences(n: usize, d_max: i64) -> Vec<Vec<i64>> {
    fn extend(prefix: &mut Vec<i64>, n: usize, d_max: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let start = prefix.last().copied().unwrap_or(0);
        for v in start..=d_max {
            prefix.push(v);
            extend(prefix, n, d_max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), n, d_max, &mut out);
    out
}

/// Compares the analysis formulas with exhaustive enumeration for every
/// nondecreasing sequence with `2 <= n <= n_max` and entries up to `d_max`.
///
/// Checked per sequence: `min_f`, `max_g` and `bound_e` against the
/// enumerated extremes; `interval_test(a, b)` against the enumerated
/// realizations for all `0 <= a <= b <= 2e + 1`; the closed forms for `f` and
/// `g` against bisection; the [`mini_max`] matrix; `interval_test(c, c)` against [`moon_test`] for
/// `c = 1, 2, 3` and `interval_test(1, 1)` against [`landau_test`].
///
/// Sequences are checked in parallel; the report is ordered as if run
/// sequentially.
pub fn sweep(n_max: usize, d_max: i64, oracle: Oracle) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for n in 2..=n_max {
        let sequences = nondecreasing_sequences(n, d_max);
        report.sequences.push((n, sequences.len()));
        let results: Vec<Result<(u64, Vec<Mismatch>)>> = sequences
            .par_iter()
            .map(|scores| check_sequence(scores, oracle))
            .collect();
        for result in results {
            let (checks, mismatches) = result?;
            report.checks += checks;
            report.mismatches.extend(mismatches);
        }
    }
    Ok(report)
}

fn check_sequence(scores: &[i64], oracle: Oracle) -> Result<(u64, Vec<Mismatch>)> {
    let d = ScoreSequence::new(scores.to_vec())?;
    let mut checks = 0u64;
    let mut mismatches = Vec::new();
    let mut compare = |check: &str, expected: String, actual: String| {
        checks += 1;
        if expected != actual {
            mismatches.push(Mismatch {
                scores: scores.to_vec(),
                check: check.to_string(),
                expected,
                actual,
            });
        }
    };

    let e = bound_e(&d);
    let cap = 2 * e + 1;
    let truth = oracle.enumerate(&d, cap, 0)?;
    let f = min_f(&d);
    let g = max_g(&d, f);
    compare("realizable", "true".into(), truth.realizable.to_string());
    compare("min_f", fmt(truth.min_f), f.to_string());
    compare("max_g", fmt(truth.max_g), g.to_string());
    compare("bound_e", fmt(truth.min_e), e.to_string());
    compare(
        "min_f_quadratic",
        f.to_string(),
        min_f_quadratic(&d).to_string(),
    );
    compare("min_f_linear", f.to_string(), min_f_linear(&d).to_string());
    compare("max_g_bisect", fmt(Some(g)), fmt(max_g_bisect(&d, f)));
    let (_, m) = mini_max(&d);
    let stats = matrix_stats(&m);
    let valid = verify_realization(&m, &d, IntervalParams::new(g, f)?)?.is_valid();
    compare(
        "mini_max",
        format!("valid F={f} G={g}"),
        format!(
            "{} F={} G={}",
            if valid { "valid" } else { "invalid" },
            stats.max_pair_total,
            stats.min_pair_total
        ),
    );

    for b in 0..=cap {
        for a in 0..=b {
            let params = IntervalParams::new(a, b)?;
            compare(
                &format!("interval_test({a},{b})"),
                truth.admits(a, b).to_string(),
                interval_test(&d, params).to_string(),
            );
        }
    }

    compare(
        "landau",
        landau_test(&d).to_string(),
        interval_test(&d, IntervalParams::new(1, 1)?).to_string(),
    );
    for c in 1..=3 {
        compare(
            &format!("moon(c={c})"),
            moon_test(&d, c).to_string(),
            interval_test(&d, IntervalParams::new(c, c)?).to_string(),
        );
    }
    Ok((checks, mismatches))
}

fn fmt(v: Option<i64>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}
