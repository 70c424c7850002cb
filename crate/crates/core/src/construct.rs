//! Witness constructions for a score sequence.
//!
//! * [`naive_construct`]: a cycle carrying each whole score, `E <= d_n`.
//! * [`pigeonhole_construct`]: every row spread as evenly as possible, `E <= e`.
//! * [`mini_max`]: repeated [`score_slicing`] producing a `(g,f,n)`-tournament,
//!   so the largest pair total is the least possible and the smallest pair
//!   total is the greatest possible.

use crate::analysis::{extremal_summary, is_realizable};
use crate::domain::{ExtremalSummary, IntervalParams, PointMatrix, ScoreSequence};
use crate::error::{Error, Result};

/// `m_{n,1} = d_n`, `m_{i,i+1} = d_i`, everything else zero. Accepts scores
/// in any order.
pub fn naive_construct(raw: &[i64]) -> Result<PointMatrix> {
    // Same validation as normalization; the sorted copy is discarded.
    ScoreSequence::normalize(raw)?;
    let n = raw.len();
    let mut m = PointMatrix::zeros(n);
    for (i, &d) in raw[..n - 1].iter().enumerate() {
        m.set(i, i + 1, d);
    }
    m.set(n - 1, 0, raw[n - 1]);
    Ok(m)
}

/// Spreads each score over the `n-1` opponents in parts differing by at most
/// one: `d_i mod (n-1)` parts of `ceil(d_i/(n-1))` then `floor(d_i/(n-1))`
/// parts, assigned to opponents `i+1, i+2, ...` cyclically.
pub fn pigeonhole_construct(d: &ScoreSequence) -> PointMatrix {
    let n = d.len();
    let opponents = n as i64 - 1;
    let mut m = PointMatrix::zeros(n);
    for (i, &score) in d.scores().iter().enumerate() {
        let (small, larger_parts) = (score / opponents, score % opponents);
        for step in 1..n {
            let part = if (step as i64) <= larger_parts {
                small + 1
            } else {
                small
            };
            m.set(i, (i + step) % n, part);
        }
    }
    m
}

/// Working state of the minimax reconstruction.
///
/// The unsettled players are kept sorted by provisional score; `players[i]`
/// is the matrix index of the player holding `provisional[i]`. Everyone else
/// is settled: all their matches are final and their points already deducted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicingState {
    provisional: Vec<i64>,
    players: Vec<usize>,
    matrix: PointMatrix,
    missing: i64,
    additional: Vec<i64>,
}

impl SlicingState {
    /// Starts with an empty matrix and the provisional scores equal to `d`.
    pub fn new(d: &ScoreSequence) -> Self {
        let n = d.len();
        Self {
            provisional: d.scores().to_vec(),
            players: (0..n).collect(),
            matrix: PointMatrix::zeros(n),
            missing: 0,
            additional: Vec::new(),
        }
    }

    /// Number of players not yet settled.
    pub fn k(&self) -> usize {
        self.provisional.len()
    }

    /// Provisional scores of the unsettled players, nondecreasing.
    pub fn prefix(&self) -> &[i64] {
        &self.provisional
    }

    /// Matrix index of each unsettled player, aligned with [`prefix`](Self::prefix).
    pub fn players(&self) -> &[usize] {
        &self.players
    }

    pub fn matrix(&self) -> &PointMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PointMatrix {
        self.matrix
    }

    /// Missing points `(k-1)b - p_k` of the player settled by the last step.
    pub fn missing(&self) -> i64 {
        self.missing
    }

    /// Additional points `A_i = P_i - a*B_i` of the remaining prefix after the
    /// last slicing step.
    pub fn additional(&self) -> &[i64] {
        &self.additional
    }

    /// Settles the last two players directly.
    fn finish_pair(&mut self, params: IntervalParams) -> Result<()> {
        let (p1, p2) = (self.provisional[0], self.provisional[1]);
        if p1 + p2 < params.a() || p1 + p2 > params.b() {
            return Err(Error::InfeasiblePrefix {
                k: 2,
                reason: "final pair total outside [a, b]",
            });
        }
        let (x, y) = (self.players[0], self.players[1]);
        self.matrix.set(x, y, p1);
        self.matrix.set(y, x, p2);
        self.provisional.clear();
        self.players.clear();
        Ok(())
    }
}

/// Settles all matches of the strongest unsettled player `k` and reduces the
/// state to `k-1` players.
///
/// Player `k`'s `p_k` wins are placed one point at a time, preferring the
/// weakest opponents, and a point is only placed where the rest of the
/// prefix can still be completed. Each opponent is then left with a window of
/// possible residual scores; the residuals are levelled inside those windows
/// at the smallest total that keeps the reduced prefix realizable, and the
/// opponent's share of the pair is whatever that takes off its score.
///
/// The reduced prefix is re-sorted and realizable with `(a, b)`.
pub fn score_slicing(state: &mut SlicingState, params: IntervalParams) -> Result<()> {
    let k = state.k();
    let (a, b) = (params.a(), params.b());
    if k < 3 {
        return Err(Error::InfeasiblePrefix {
            k,
            reason: "score slicing needs at least 3 unsettled players",
        });
    }
    let p = &state.provisional;
    if p.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InfeasiblePrefix {
            k,
            reason: "provisional scores are not nondecreasing",
        });
    }
    if !is_realizable(p, a, b) {
        return Err(Error::InfeasiblePrefix {
            k,
            reason: "provisional prefix fails the interval test",
        });
    }

    let rest = k - 1;
    let (opp, q) = (&p[..rest], p[rest]);
    let wins = place_wins(opp, q, a, b);
    let lo: Vec<i64> = (0..rest).map(|i| (opp[i] + wins[i] - b).max(0)).collect();
    let hi: Vec<i64> = (0..rest).map(|i| opp[i] - (a - wins[i]).max(0)).collect();
    let residual = level_residuals(&lo, &hi, a, b).ok_or(Error::InfeasiblePrefix {
        k,
        reason: "no realizable residual inside the opponents' windows",
    })?;

    let top = state.players[rest];
    for i in 0..rest {
        let who = state.players[i];
        state.matrix.set(who, top, opp[i] - residual[i]);
        state.matrix.set(top, who, wins[i]);
    }
    let mut order: Vec<usize> = (0..rest).collect();
    order.sort_by_key(|&i| residual[i]);
    state.missing = rest as i64 * b - q;
    state.provisional = order.iter().map(|&i| residual[i]).collect();
    state.players = order.iter().map(|&i| state.players[i]).collect();
    let mut running = 0;
    state.additional = (1..=rest)
        .map(|i| {
            running += state.provisional[i - 1];
            running - a * binom(i)
        })
        .collect();
    Ok(())
}

/// Distributes `q` points of the top player over its opponents `opp`. Points
/// go first where they only raise an opponent's lowest possible residual,
/// then where they change nothing, and only then where they push an
/// opponent's residual floor up; ties go to the weaker opponent.
fn place_wins(opp: &[i64], q: i64, a: i64, b: i64) -> Vec<i64> {
    let m = opp.len();
    let mut wins = vec![0i64; m];
    let mut order: Vec<usize> = Vec::with_capacity(m);
    let mut buf: Vec<i128> = Vec::with_capacity(m);
    for _ in 0..q {
        let cuts = Cuts::new(opp, &wins, q, a, b, &mut buf);
        // The prefix is realizable, so some completion always exists.
        debug_assert!(cuts.is_some());
        let Some(cuts) = cuts else { break };
        order.clear();
        order.extend((0..m).filter(|&i| wins[i] < b));
        order.sort_by_key(|&i| {
            let tier = if wins[i] < a.min(b - opp[i]) {
                0
            } else if wins[i] < b - opp[i] {
                1
            } else {
                2
            };
            (tier, opp[i] + wins[i], i)
        });
        let next = order
            .iter()
            .copied()
            .find(|&i| cuts.admits(opp[i], wins[i], a, b));
        debug_assert!(next.is_some());
        let Some(i) = next else { break };
        wins[i] += 1;
    }
    debug_assert!(Cuts::new(opp, &wins, q, a, b, &mut buf).is_some());
    wins
}

/// Which opponents may hand the top player one more point.
///
/// With `held[i]` points already taken from opponent `i`, the remaining pair
/// windows against the top player are `[max(0, a-held), b-held]`. The prefix
/// can still be completed iff, for every opponent count `s`, the `s` largest
/// `v_i = p_i + held_i - b` sum to at most `b(B_m - B_{m-s})` and the `s`
/// smallest `z_i = p_i - max(0, a-held_i)` sum to at least
/// `a*B_s - (q - sum held)`. The other cut conditions do not involve `held`
/// and hold because the prefix is realizable.
///
/// One more point from `i` raises `v_i` by one, raises `z_i` by one when
/// `held_i < a`, and tightens every lower bound by one. So a tight upper
/// bound at `s` only admits `v_i` below the `s`-th largest `v`, and a tight
/// lower bound at `s` only admits a rising `z_i` below the `(s+1)`-th
/// smallest `z`.
#[derive(Debug, Clone, Copy)]
struct Cuts {
    upper: Option<i128>,
    lower: Option<i128>,
}

impl Cuts {
    /// `None` when the prefix cannot be completed at all.
    fn new(opp: &[i64], held: &[i64], q: i64, a: i64, b: i64, buf: &mut Vec<i128>) -> Option<Self> {
        let m = opp.len() as i128;
        let (a, b) = (a as i128, b as i128);
        let taken: i128 = held.iter().map(|&h| h as i128).sum();
        let short = q as i128 - taken;
        if short < 0 {
            return None;
        }
        let pairs = |s: i128| s * (s - 1) / 2;

        buf.clear();
        buf.extend(opp.iter().zip(held).map(|(&p, &h)| (p + h) as i128 - b));
        buf.sort_unstable_by(|x, y| y.cmp(x));
        let mut upper = None;
        let mut run = 0;
        for (s, &v) in (1..).zip(buf.iter()) {
            run += v;
            let slack = b * (pairs(m) - pairs(m - s)) - run;
            if slack < 0 {
                return None;
            }
            if slack == 0 {
                upper = Some(v);
            }
        }

        buf.clear();
        buf.extend(
            opp.iter()
                .zip(held)
                .map(|(&p, &h)| p as i128 - (a - h as i128).max(0)),
        );
        buf.sort_unstable();
        let mut lower = None;
        let mut run = 0;
        for (s, &z) in (1..).zip(buf.iter()) {
            run += z;
            let slack = run - (a * pairs(s) - short);
            if slack < 0 {
                return None;
            }
            if slack == 0 && lower.is_none() {
                lower = Some(buf.get(s as usize).copied().unwrap_or(i128::MAX));
            }
        }
        Some(Self { upper, lower })
    }

    fn admits(&self, p: i64, held: i64, a: i64, b: i64) -> bool {
        let v = (p + held - b) as i128;
        let z = p as i128 - (a - held).max(0) as i128;
        self.upper.is_none_or(|cut| v < cut) && self.lower.is_none_or(|cut| held < a && z < cut)
    }
}

/// Picks `r` with `lo <= r <= hi` realizable with `(a, b)`, or `None`.
///
/// For a fixed total the most level choice (`r_i = clamp(level, lo_i, hi_i)`)
/// is majorized by every other choice, so it is the best candidate for both
/// the lower and the upper bounds of the interval test. Raising the total
/// only helps the lower bounds and only hurts the upper ones, so the
/// smallest total meeting the lower bounds decides.
fn level_residuals(lo: &[i64], hi: &[i64], a: i64, b: i64) -> Option<Vec<i64>> {
    let floor = lo.iter().sum::<i64>().max(a * binom(lo.len()));
    let ceiling: i64 = hi.iter().sum();
    if floor > ceiling {
        return None;
    }
    let meets_lower = |r: &[i64]| {
        let mut sorted = r.to_vec();
        sorted.sort_unstable();
        let mut run = 0;
        (1..).zip(&sorted).all(|(s, &v)| {
            run += v;
            run >= a * binom(s)
        })
    };
    let (mut low, mut high) = (floor, ceiling);
    if !meets_lower(&levelled(lo, hi, high)) {
        return None;
    }
    while low < high {
        let mid = low + (high - low) / 2;
        if meets_lower(&levelled(lo, hi, mid)) {
            high = mid;
        } else {
            low = mid + 1;
        }
    }
    let r = levelled(lo, hi, low);
    let mut sorted = r.clone();
    sorted.sort_unstable();
    is_realizable(&sorted, a, b).then_some(r)
}

/// The most level vector inside `[lo, hi]` with sum `total`; at the final
/// level, later entries are raised first.
fn levelled(lo: &[i64], hi: &[i64], total: i64) -> Vec<i64> {
    let sum_at = |level: i64| -> i64 { lo.iter().zip(hi).map(|(&l, &h)| level.clamp(l, h)).sum() };
    let (mut low, mut high) = (
        lo.iter().copied().min().unwrap_or(0),
        hi.iter().copied().max().unwrap_or(0),
    );
    while low < high {
        let mid = low + (high - low + 1) / 2;
        if sum_at(mid) <= total {
            low = mid;
        } else {
            high = mid - 1;
        }
    }
    let mut r: Vec<i64> = lo.iter().zip(hi).map(|(&l, &h)| low.clamp(l, h)).collect();
    let mut extra = total - r.iter().sum::<i64>();
    for i in (0..r.len()).rev() {
        if extra == 0 {
            break;
        }
        if r[i] == low && r[i] < hi[i] {
            r[i] += 1;
            extra -= 1;
        }
    }
    debug_assert_eq!(extra, 0);
    r
}

fn binom(k: usize) -> i64 {
    let k = k as i64;
    k * (k - 1) / 2
}

/// Computes `(e, f, g)` and reconstructs a `(g,f,n)`-tournament realizing `d`.
pub fn mini_max(d: &ScoreSequence) -> (ExtremalSummary, PointMatrix) {
    let summary = extremal_summary(d);
    let params = IntervalParams::new(summary.g, summary.f).expect("g <= f by construction");
    let matrix = reconstruct(d, params).expect("(g, f) is realizable by construction");
    (summary, matrix)
}

/// Runs the slicing reconstruction for an arbitrary feasible `(a, b)`.
pub fn reconstruct(d: &ScoreSequence, params: IntervalParams) -> Result<PointMatrix> {
    if !is_realizable(d.scores(), params.a(), params.b()) {
        return Err(Error::InfeasiblePrefix {
            k: d.len(),
            reason: "score sequence fails the interval test",
        });
    }
    let mut state = SlicingState::new(d);
    while state.k() >= 3 {
        score_slicing(&mut state, params)?;
    }
    state.finish_pair(params)?;
    Ok(state.into_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{interval_test, max_g, min_f};
    use crate::domain::{matrix_stats, verify_realization};
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> ScoreSequence {
        ScoreSequence::new(v.to_vec()).unwrap()
    }

    fn params(a: i64, b: i64) -> IntervalParams {
        IntervalParams::new(a, b).unwrap()
    }

    #[test]
    fn naive_examples() {
        let m = naive_construct(&[1, 2, 3]).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![vec![0, 1, 0], vec![0, 0, 2], vec![3, 0, 0]]
        );
        assert_eq!(naive_construct(&[0, 0]).unwrap(), PointMatrix::zeros(2));
        let m = naive_construct(&[5, 5]).unwrap();
        assert_eq!(m.to_rows(), vec![vec![0, 5], vec![5, 0]]);
    }

    #[test]
    fn naive_accepts_unsorted_and_rejects_invalid() {
        let m = naive_construct(&[4, 0, 2]).unwrap();
        assert_eq!(m.row_sums(), vec![4, 0, 2]);
        assert!(naive_construct(&[1]).is_err());
        assert!(naive_construct(&[1, -1]).is_err());
    }

    #[test]
    fn pigeonhole_examples() {
        let m = pigeonhole_construct(&seq(&[3, 3, 3]));
        for row in m.rows() {
            let mut parts: Vec<i64> = row.iter().copied().filter(|&v| v > 0).collect();
            parts.sort_unstable();
            assert_eq!(parts, vec![1, 2]);
        }
        assert_eq!(matrix_stats(&m).max_entry, 2);

        let d = seq(&[2, 2, 4]);
        let m = pigeonhole_construct(&d);
        assert_eq!(
            m.to_rows(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![2, 2, 0]]
        );
        assert!(verify_realization(&m, &d, params(0, 4)).unwrap().is_valid());

        assert_eq!(pigeonhole_construct(&seq(&[0, 0])), PointMatrix::zeros(2));
    }

    /// Checks the post-conditions of one slicing step.
    fn check_step(before: &SlicingState, after: &SlicingState, p: IntervalParams) {
        let k = before.k();
        assert_eq!(after.k(), k - 1);
        assert!(after.prefix().windows(2).all(|w| w[0] <= w[1]));
        assert!(is_realizable(after.prefix(), p.a(), p.b()));
        let m = after.matrix();
        let top = before.players()[k - 1];
        let opponents = &before.players()[..k - 1];
        let won: i64 = opponents.iter().map(|&who| m.get(top, who)).sum();
        assert_eq!(won, before.prefix()[k - 1]);
        for (i, &who) in opponents.iter().enumerate() {
            let t = m.pair_total(who, top);
            assert!(p.a() <= t && t <= p.b(), "pair total {t}");
            let pos = after.players().iter().position(|&x| x == who).unwrap();
            assert_eq!(after.prefix()[pos], before.prefix()[i] - m.get(who, top));
        }
    }

    #[test]
    fn slicing_first_step_on_sample_scores() {
        let p = params(8, 9);
        let before = SlicingState::new(&seq(&[9, 9, 19, 20, 32, 34]));
        let mut after = before.clone();
        score_slicing(&mut after, p).unwrap();
        check_step(&before, &after, p);
        assert_eq!(after.missing(), 5 * 9 - 34);
        let prefix = after.prefix();
        let mut running = 0;
        for (i, &extra) in after.additional().iter().enumerate() {
            running += prefix[i];
            assert_eq!(extra, running - 8 * binom(i + 1));
        }
    }

    #[test]
    fn slicing_spreads_wins_when_the_top_opponent_cannot_take_them_all() {
        // Handing every transferable point to the strongest opponents leaves
        // player 7 unable to keep its pair totals at a = 2.
        let d = seq(&[4, 4, 4, 4, 7, 8, 12]);
        let p = params(2, 3);
        let mut state = SlicingState::new(&d);
        while state.k() >= 3 {
            let before = state.clone();
            score_slicing(&mut state, p).unwrap();
            check_step(&before, &state, p);
        }
        let m = reconstruct(&d, p).unwrap();
        assert!(verify_realization(&m, &d, p).unwrap().is_valid());
    }

    #[test]
    fn slicing_zero_case() {
        let mut state = SlicingState::new(&seq(&[0, 0, 0]));
        score_slicing(&mut state, params(0, 0)).unwrap();
        assert_eq!(state.prefix(), &[0, 0]);
        assert_eq!(state.matrix(), &PointMatrix::zeros(3));
    }

    #[test]
    fn slicing_rejects_infeasible_prefix() {
        let mut state = SlicingState::new(&seq(&[9, 9, 19, 20, 32, 34]));
        assert!(matches!(
            score_slicing(&mut state, params(9, 9)),
            Err(Error::InfeasiblePrefix { k: 6, .. })
        ));
        let mut state = SlicingState::new(&seq(&[1, 1]));
        assert!(matches!(
            score_slicing(&mut state, params(0, 2)),
            Err(Error::InfeasiblePrefix { k: 2, .. })
        ));
    }

    #[test]
    fn mini_max_on_sample_scores() {
        let d = seq(&[9, 9, 19, 20, 32, 34]);
        let (summary, m) = mini_max(&d);
        assert_eq!((summary.f, summary.g), (9, 8));
        assert!(verify_realization(&m, &d, params(8, 9)).unwrap().is_valid());
        let stats = matrix_stats(&m);
        assert_eq!((stats.max_pair_total, stats.min_pair_total), (9, 8));
    }

    #[test]
    fn levelled_fills_from_the_bottom() {
        assert_eq!(levelled(&[0, 0, 5], &[9, 2, 9], 9), vec![2, 2, 5]);
        assert_eq!(levelled(&[0, 0, 5], &[9, 2, 9], 11), vec![4, 2, 5]);
        assert_eq!(levelled(&[0, 0], &[5, 5], 3), vec![1, 2]);
        assert_eq!(levelled(&[1, 1], &[1, 1], 2), vec![1, 1]);
    }

    #[test]
    fn mini_max_small_examples() {
        let (s, m) = mini_max(&seq(&[2, 2]));
        assert_eq!((s.f, s.g), (4, 4));
        assert_eq!(m.to_rows(), vec![vec![0, 2], vec![2, 0]]);

        let (s, m) = mini_max(&seq(&[1, 1, 1]));
        assert_eq!((s.f, s.g), (1, 1));
        let stats = matrix_stats(&m);
        assert_eq!((stats.max_pair_total, stats.min_pair_total), (1, 1));
        assert_eq!(stats.row_sums, vec![1, 1, 1]);

        let (_, m) = mini_max(&seq(&[0, 0]));
        assert_eq!(m, PointMatrix::zeros(2));
    }

    #[test]
    fn reconstruct_rejects_infeasible_params() {
        assert!(reconstruct(&seq(&[9, 9, 19, 20, 32, 34]), params(0, 8)).is_err());
    }

    fn sorted_scores(max_len: usize, max_score: i64) -> impl Strategy<Value = ScoreSequence> {
        prop::collection::vec(0..=max_score, 2..=max_len).prop_map(|mut v| {
            v.sort_unstable();
            ScoreSequence::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn constructors_realize_the_scores(d in sorted_scores(12, 30)) {
            let naive = naive_construct(d.scores()).unwrap();
            prop_assert_eq!(naive.row_sums(), d.scores().to_vec());
            prop_assert!(matrix_stats(&naive).max_entry <= d.max_score());

            let h = crate::analysis::bound_e(&d);
            let even = pigeonhole_construct(&d);
            prop_assert!(verify_realization(&even, &d, params(0, 2 * h)).unwrap().is_valid());
            prop_assert!(matrix_stats(&even).max_entry <= h);

            let (s, m) = mini_max(&d);
            prop_assert!(verify_realization(&m, &d, params(s.g, s.f)).unwrap().is_valid());
            let stats = matrix_stats(&m);
            prop_assert_eq!(stats.max_pair_total, s.f);
            prop_assert_eq!(stats.min_pair_total, s.g);
        }

        #[test]
        fn every_slicing_step_keeps_a_feasible_sorted_prefix(
            d in sorted_scores(10, 25),
            widen_a in 0i64..3,
            widen_b in 0i64..3,
        ) {
            let f = min_f(&d);
            let g = max_g(&d, f);
            let p = params((g - widen_a).max(0), f + widen_b);
            prop_assert!(interval_test(&d, p));
            let mut state = SlicingState::new(&d);
            while state.k() >= 3 {
                let before = state.clone();
                score_slicing(&mut state, p).unwrap();
                check_step(&before, &state, p);
            }
        }
    }
}
