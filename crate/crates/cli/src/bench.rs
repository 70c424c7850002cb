//! Timings on seeded random sequences.
//!
//! Sequence generation is reproducible from the seed; the timings themselves
//! are wall-clock and vary between runs.

use std::time::{Duration, Instant};

use interval_tournament::{bound_e, interval_test, min_f, mini_max, IntervalParams, ScoreSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub op: &'static str,
    pub n: usize,
    pub d_n: i64,
    pub seconds: f64,
}

/// Uniform scores in `0..=top` with the largest forced to `top`.
pub fn random_scores(rng: &mut ChaCha8Rng, n: usize, top: i64) -> ScoreSequence {
    let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=top)).collect();
    v.push(top);
    v.sort_unstable();
    ScoreSequence::new(v).expect("random scores are valid")
}

fn fastest<T>(repeats: usize, mut f: impl FnMut() -> T) -> f64 {
    (0..repeats)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed()
        })
        .min()
        .unwrap_or(Duration::ZERO)
        .as_secs_f64()
}

/// `interval_test` and `min_f` on each of `sizes` with `d_n = n`, then
/// `mini_max` on each of `minimax_sizes` with `d_n = 2n`.
pub fn run(
    seed: u64,
    sizes: &[usize],
    minimax_sizes: &[usize],
    repeats: usize,
) -> Result<Vec<Row>, CliError> {
    if let Some(&n) = sizes.iter().chain(minimax_sizes).find(|&&n| n < 2) {
        return Err(CliError::Input(format!(
            "bench sizes must be at least 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &n in sizes {
        let d = random_scores(&mut rng, n, n as i64);
        let params = IntervalParams::new(0, 2 * bound_e(&d))?;
        rows.push(Row {
            op: "interval_test",
            n,
            d_n: d.max_score(),
            seconds: fastest(repeats, || interval_test(&d, params)),
        });
        rows.push(Row {
            op: "min_f",
            n,
            d_n: d.max_score(),
            seconds: fastest(repeats, || min_f(&d)),
        });
    }
    for &n in minimax_sizes {
        let d = random_scores(&mut rng, n, 2 * n as i64);
        rows.push(Row {
            op: "mini_max",
            n,
            d_n: d.max_score(),
            seconds: fastest(repeats, || mini_max(&d)),
        });
    }
    Ok(rows)
}

pub fn render(rows: &[Row], as_json: bool) -> String {
    if as_json {
        let v: Vec<_> = rows
            .iter()
            .map(|r| json!({"op": r.op, "n": r.n, "d_n": r.d_n, "seconds": r.seconds}))
            .collect();
        return format!("{}\n", serde_json::Value::Array(v));
    }
    let mut out = String::from("op,n,d_n,seconds\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{:.6}\n", r.op, r.n, r.d_n, r.seconds));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_depend_only_on_the_seed() {
        let a = random_scores(&mut ChaCha8Rng::seed_from_u64(5), 50, 80);
        let b = random_scores(&mut ChaCha8Rng::seed_from_u64(5), 50, 80);
        assert_eq!(a, b);
        assert_eq!(a.max_score(), 80);
    }

    #[test]
    fn rows_cover_every_op_and_size() {
        let rows = run(1, &[10, 20], &[6], 1).unwrap();
        let shape: Vec<_> = rows.iter().map(|r| (r.op, r.n, r.d_n)).collect();
        assert_eq!(
            shape,
            [
                ("interval_test", 10, 10),
                ("min_f", 10, 10),
                ("interval_test", 20, 20),
                ("min_f", 20, 20),
                ("mini_max", 6, 12),
            ]
        );
        let csv = render(&rows, false);
        assert!(csv.starts_with("op,n,d_n,seconds\ninterval_test,10,10,"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn tiny_sizes_are_rejected() {
        assert!(run(0, &[1], &[], 1).is_err());
    }
}
