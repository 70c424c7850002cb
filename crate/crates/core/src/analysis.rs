//! Realizability of a score sequence as an `(a,b,n)`-tournament and the
//! extremal parameters `e`, `f` and `g`.
//!
//! For a nondecreasing `D` with prefix sums `S_k` and `B_k = k(k-1)/2`, `D` is
//! realizable with every pair total in `[a, b]` iff for all `k`
//!
//! ```text
//! a*B_k <= S_k <= b*B_n - L_k - (n-k)*d_k,
//! L_0 = 0,  L_k = max(L_{k-1}, b*B_k - S_k).
//! ```
//!
//! The lower inequality does not involve `b` and the upper one does not
//! involve `a`, so `f` (least feasible `b` with `a = 0`) and `g` (largest
//! feasible `a`) can be computed independently.

use crate::domain::{ExtremalSummary, IntervalParams, ScoreSequence};

/// Binomial prefix `B_0..B_n` and score prefix sums `S_0..S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTables {
    binom: Vec<i64>,
    sums: Vec<i64>,
}

impl PrefixTables {
    pub fn n(&self) -> usize {
        self.sums.len() - 1
    }

    /// `B_k = k(k-1)/2`.
    pub fn binom(&self, k: usize) -> i64 {
        self.binom[k]
    }

    /// `S_k`, the sum of the `k` smallest scores.
    pub fn sum(&self, k: usize) -> i64 {
        self.sums[k]
    }

    pub fn binoms(&self) -> &[i64] {
        &self.binom
    }

    pub fn sums(&self) -> &[i64] {
        &self.sums
    }
}

pub fn prefix_tables(d: &ScoreSequence) -> PrefixTables {
    let n = d.len();
    let mut binom = Vec::with_capacity(n + 1);
    let mut sums = Vec::with_capacity(n + 1);
    binom.push(0);
    sums.push(0);
    for (i, &score) in d.scores().iter().enumerate() {
        binom.push(binom[i] + i as i64);
        sums.push(sums[i] + score);
    }
    PrefixTables { binom, sums }
}

/// Loss values `L_0..L_n` for one upper bound `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LossTable {
    b: i64,
    values: Vec<i128>,
}

impl LossTable {
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn get(&self, k: usize) -> i128 {
        self.values[k]
    }
}

pub fn loss_table(d: &ScoreSequence, b: i64, t: &PrefixTables) -> LossTable {
    debug_assert_eq!(d.len(), t.n());
    let mut values = Vec::with_capacity(t.n() + 1);
    values.push(0i128);
    for k in 1..=t.n() {
        let deficit = b as i128 * t.binom(k) as i128 - t.sum(k) as i128;
        values.push(values[k - 1].max(deficit));
    }
    LossTable { b, values }
}

/// Decides whether `d` is the score sequence of some `(a,b,n)`-tournament.
pub fn interval_test(d: &ScoreSequence, params: IntervalParams) -> bool {
    is_realizable(d.scores(), params.a(), params.b())
}

/// Single-pass form of [`interval_test`] over any nondecreasing slice with at
/// least two entries. No allocation; used on provisional prefixes during
/// reconstruction.
pub(crate) fn is_realizable(scores: &[i64], a: i64, b: i64) -> bool {
    let n = scores.len() as i128;
    let (a, b) = (a as i128, b as i128);
    let cap = b * (n * (n - 1) / 2);
    let mut sum: i128 = 0;
    let mut loss: i128 = 0;
    for (i, &score) in scores.iter().enumerate() {
        let k = i as i128 + 1;
        let score = score as i128;
        let binom = k * (k - 1) / 2;
        sum += score;
        if sum < a * binom {
            return false;
        }
        loss = loss.max(b * binom - sum);
        if sum > cap - loss - (n - k) * score {
            return false;
        }
    }
    true
}

fn ceil_div(num: i128, den: i128) -> i128 {
    debug_assert!(num >= 0 && den > 0);
    (num + den - 1) / den
}

/// `e(D) = ceil(d_n / (n-1))`, the least possible largest single entry.
pub fn bound_e(d: &ScoreSequence) -> i64 {
    ceil_div(d.max_score() as i128, d.len() as i128 - 1) as i64
}

/// Window `[lo, hi]` known to contain `f`:
/// `lo = max(ceil(S_n/B_n), ceil(d_n/(n-1)))`, `hi = 2*ceil(d_n/(n-1))`.
pub fn f_search_interval(d: &ScoreSequence, t: &PrefixTables) -> (i64, i64) {
    let n = t.n();
    let h = bound_e(d);
    let average = ceil_div(t.sum(n) as i128, t.binom(n) as i128) as i64;
    (average.max(h), 2 * h)
}

/// Least `b` such that `d` is realizable with all pair totals at most `b`,
/// found by bisection over [`f_search_interval`].
pub fn min_f(d: &ScoreSequence) -> i64 {
    let t = prefix_tables(d);
    let (mut lo, mut hi) = f_search_interval(d, &t);
    debug_assert!(is_realizable(d.scores(), 0, hi));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if is_realizable(d.scores(), 0, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Closed form for `f` read directly off the upper inequality:
/// `max ceil((S_k + (n-k) d_k - S_j) / (B_n - B_j))` over `0 <= j < n`, `j <= k <= n`.
///
/// Quadratic in `n`; kept as an independent cross-check of [`min_f`].
pub fn min_f_quadratic(d: &ScoreSequence) -> i64 {
    let t = prefix_tables(d);
    let n = t.n();
    let scores = d.scores();
    let mut best: i128 = 0;
    for j in 0..n {
        let den = (t.binom(n) - t.binom(j)) as i128;
        for k in j..=n {
            let d_k = if k == 0 { 0 } else { scores[k - 1] } as i128;
            let num = t.sum(k) as i128 + (n - k) as i128 * d_k - t.sum(j) as i128;
            best = best.max(ceil_div(num, den));
        }
    }
    best as i64
}

/// Linear-time closed form `f = max_{0 <= j < n} ceil((S_n - S_j) / (B_n - B_j))`.
///
/// The `k = n` terms of [`min_f_quadratic`] dominate because
/// `S_k + (n-k) d_k <= S_n` for a nondecreasing sequence.
pub fn min_f_linear(d: &ScoreSequence) -> i64 {
    let t = prefix_tables(d);
    let n = t.n();
    (0..n)
        .map(|j| {
            ceil_div(
                (t.sum(n) - t.sum(j)) as i128,
                (t.binom(n) - t.binom(j)) as i128,
            )
        })
        .max()
        .unwrap_or(0) as i64
}

/// Largest `a` with `interval_test(d, (a, f))`, via the closed form
/// `min_{2 <= k <= n} floor(S_k / B_k)` (never above `f`).
pub fn max_g(d: &ScoreSequence, f: i64) -> i64 {
    let mut sum = d.scores()[0];
    let mut g = i64::MAX;
    for (i, &score) in d.scores().iter().enumerate().skip(1) {
        let k = i as i64 + 1;
        sum += score;
        g = g.min(sum / (k * (k - 1) / 2));
    }
    g.min(f)
}

/// Bisection counterpart of [`max_g`] over `[0, f]`; returns `None` when even
/// `a = 0` fails, i.e. `f` is below the least feasible upper bound.
pub fn max_g_bisect(d: &ScoreSequence, f: i64) -> Option<i64> {
    if !is_realizable(d.scores(), 0, f) {
        return None;
    }
    let (mut lo, mut hi) = (0, f);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if is_realizable(d.scores(), mid, f) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Some(lo)
}

pub fn extremal_summary(d: &ScoreSequence) -> ExtremalSummary {
    let t = prefix_tables(d);
    let (f_search_lo, f_search_hi) = f_search_interval(d, &t);
    let f = min_f(d);
    ExtremalSummary {
        e: bound_e(d),
        f,
        g: max_g(d, f),
        f_search_lo,
        f_search_hi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> ScoreSequence {
        ScoreSequence::new(v.to_vec()).unwrap()
    }

    fn params(a: i64, b: i64) -> IntervalParams {
        IntervalParams::new(a, b).unwrap()
    }

    const SAMPLE: [i64; 6] = [9, 9, 19, 20, 32, 34];
    const LOPSIDED: [i64; 6] = [0, 0, 0, 40, 40, 40];

    #[test]
    fn prefix_tables_examples() {
        let t = prefix_tables(&seq(&SAMPLE));
        assert_eq!(t.sums(), &[0, 9, 18, 37, 57, 89, 123]);
        assert_eq!(t.binoms(), &[0, 0, 1, 3, 6, 10, 15]);

        let t = prefix_tables(&seq(&[0, 0]));
        assert_eq!(t.sums(), &[0, 0, 0]);
        assert_eq!(t.binoms(), &[0, 0, 1]);

        let t = prefix_tables(&seq(&LOPSIDED));
        assert_eq!((t.sum(6), t.binom(6)), (120, 15));
    }

    #[test]
    fn loss_table_examples() {
        let d = seq(&[1, 1, 1]);
        assert_eq!(
            loss_table(&d, 1, &prefix_tables(&d)).values(),
            &[0, 0, 0, 0]
        );

        let d = seq(&LOPSIDED);
        let l = loss_table(&d, 10, &prefix_tables(&d));
        // 10*B_k - S_k for k = 1..3 is 0, 10, 30.
        assert_eq!(l.get(3), 30);

        let l = loss_table(&d, 0, &prefix_tables(&d));
        assert!(l.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn interval_test_examples() {
        let d = seq(&SAMPLE);
        assert!(interval_test(&d, params(0, 9)));
        assert!(!interval_test(&d, params(9, 9)));
        assert!(interval_test(&d, params(8, 9)));
        assert!(!interval_test(&d, params(0, 8)));
        assert!(!interval_test(&seq(&[0, 0]), params(1, 1)));
    }

    #[test]
    fn bound_e_examples() {
        assert_eq!(bound_e(&seq(&SAMPLE)), 7);
        assert_eq!(bound_e(&seq(&[0, 0, 0])), 0);
        assert_eq!(bound_e(&seq(&LOPSIDED)), 8);
    }

    #[test]
    fn f_search_interval_examples() {
        for (d, expected) in [
            (&LOPSIDED[..], (8, 16)),
            (&SAMPLE[..], (9, 14)),
            (&[0, 0][..], (0, 0)),
        ] {
            let d = seq(d);
            assert_eq!(f_search_interval(&d, &prefix_tables(&d)), expected);
        }
    }

    #[test]
    fn min_f_examples() {
        assert_eq!(min_f(&seq(&SAMPLE)), 9);
        assert_eq!(min_f(&seq(&LOPSIDED)), 10);
        assert_eq!(min_f(&seq(&[1, 1, 1])), 1);
    }

    #[test]
    fn max_g_examples() {
        assert_eq!(max_g(&seq(&SAMPLE), 9), 8);
        assert_eq!(max_g(&seq(&LOPSIDED), 10), 0);
        assert_eq!(max_g(&seq(&[1, 1, 1]), 1), 1);
    }

    #[test]
    fn extremal_summary_examples() {
        let s = extremal_summary(&seq(&SAMPLE));
        assert_eq!((s.e, s.f, s.g), (7, 9, 8));
        assert_eq!((s.f_search_lo, s.f_search_hi), (9, 14));

        let s = extremal_summary(&seq(&[0, 0]));
        assert_eq!((s.e, s.f, s.g), (0, 0, 0));

        let s = extremal_summary(&seq(&LOPSIDED));
        assert_eq!((s.e, s.f, s.g), (8, 10, 0));
    }

    #[test]
    fn two_players_share_everything() {
        for (x, y) in [(0, 0), (0, 7), (3, 3), (2, 9)] {
            let s = extremal_summary(&seq(&[x, y]));
            assert_eq!((s.f, s.g), (x + y, x + y));
        }
    }

    #[test]
    fn g_is_tight_for_sample_sequence() {
        let d = seq(&SAMPLE);
        assert!(interval_test(&d, params(8, 9)));
        assert!(!interval_test(&d, params(9, 9)));
        let d = seq(&LOPSIDED);
        assert!(interval_test(&d, params(0, 10)));
        assert!(!interval_test(&d, params(1, 10)));
    }

    #[test]
    fn large_values_do_not_overflow() {
        let n = 2000;
        let d = ScoreSequence::new(vec![crate::domain::MAX_MAGNITUDE; n]).unwrap();
        let f = min_f(&d);
        assert_eq!(f, min_f_linear(&d));
        assert!(interval_test(&d, params(0, f)));
        assert!(!interval_test(&d, params(0, f - 1)));
    }

    fn sorted_scores(max_len: usize, max_score: i64) -> impl Strategy<Value = ScoreSequence> {
        prop::collection::vec(0..=max_score, 2..=max_len).prop_map(|mut v| {
            v.sort_unstable();
            ScoreSequence::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn loss_table_matches_prefix_maximum(d in sorted_scores(12, 40), b in 0i64..30) {
            let t = prefix_tables(&d);
            let l = loss_table(&d, b, &t);
            for k in 0..=t.n() {
                let direct = (0..=k)
                    .map(|j| (b as i128 * t.binom(j) as i128 - t.sum(j) as i128).max(0))
                    .max()
                    .unwrap();
                prop_assert_eq!(l.get(k), direct);
            }
            prop_assert!(l.values().windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn interval_test_is_monotone(d in sorted_scores(10, 30), a in 0i64..8, b in 0i64..20, da in 0i64..4, db in 0i64..4) {
            prop_assume!(a <= b);
            if interval_test(&d, params(a, b)) {
                let a2 = (a - da).max(0);
                prop_assert!(interval_test(&d, params(a2, b + db)));
            }
        }

        #[test]
        fn upper_window_is_always_feasible(d in sorted_scores(15, 60)) {
            prop_assert!(interval_test(&d, params(0, 2 * bound_e(&d))));
        }

        #[test]
        fn closed_forms_agree_with_bisection(d in sorted_scores(20, 80)) {
            let f = min_f(&d);
            prop_assert_eq!(min_f_quadratic(&d), f);
            prop_assert_eq!(min_f_linear(&d), f);
            let g = max_g(&d, f);
            prop_assert_eq!(max_g_bisect(&d, f), Some(g));
            prop_assert!(g <= f);
            let t = prefix_tables(&d);
            let n = t.n();
            prop_assert!(g <= t.sum(n) / t.binom(n));
            prop_assert!(bound_e(&d) <= f);
        }
    }
}
