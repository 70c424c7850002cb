//! `itour`: decide, bound and construct interval tournaments from a score
//! list.

mod bench;
mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use interval_tournament::oracle::{Oracle, DEFAULT_BUDGET};
use interval_tournament::{
    bound_e, extremal_summary, interval_test, matrix_stats, mini_max, naive_construct,
    pigeonhole_construct, reconstruct, sweep, verify_realization, IntervalParams, MatrixStats,
    Permutation, PointMatrix, ScoreSequence, VerificationReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl From<interval_tournament::Error> for CliError {
    fn from(e: interval_tournament::Error) -> Self {
        match e {
            interval_tournament::Error::OracleBudgetExceeded { .. } => Self::Budget(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Budget(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "itour",
    version,
    about = "Score sequences of (a,b,n)-tournaments"
)]
pub struct RunConfig {
    #[command(subcommand)]
    command: Command,

    /// Output format (default: json, csv for bench).
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Pigeonhole,
    Minimax,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ScoresArg {
    /// Scores separated by commas or whitespace, in any order.
    #[arg(long, allow_hyphen_values = true)]
    scores: Option<String>,

    /// File with scores separated by commas or whitespace.
    #[arg(long)]
    scores_file: Option<PathBuf>,
}

impl ScoresArg {
    fn load(&self) -> Result<(ScoreSequence, Permutation), CliError> {
        let text = match (&self.scores, &self.scores_file) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => input::read_file(path)?,
            (None, None) => unreachable!("clap enforces the group"),
        };
        Ok(ScoreSequence::normalize(&input::parse_scores(&text)?)?)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print n, e, f and g.
    Bounds {
        #[command(flatten)]
        scores: ScoresArg,
    },
    /// Decide whether the scores are realizable with pair totals in [a, b].
    Test {
        #[command(flatten)]
        scores: ScoresArg,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// Build a point matrix and check it.
    Reconstruct {
        #[command(flatten)]
        scores: ScoresArg,
        #[arg(long, value_enum, default_value = "minimax")]
        method: Method,
        /// Pair window; defaults depend on the method.
        #[arg(long, requires = "b", allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long, requires = "a", allow_negative_numbers = true)]
        b: Option<i64>,
    },
    /// Check a matrix file (rows in sorted score order) against the scores.
    Verify {
        #[command(flatten)]
        scores: ScoresArg,
        #[arg(long)]
        matrix: PathBuf,
        /// Pair window; without it only row sums and the diagonal are checked.
        #[arg(long, requires = "b", allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long, requires = "a", allow_negative_numbers = true)]
        b: Option<i64>,
    },
    /// Enumerate every realization of a small sequence.
    Oracle {
        #[command(flatten)]
        scores: ScoresArg,
        /// Largest pair total searched (default 2*ceil(d_n/(n-1))).
        #[arg(long)]
        pair_cap: Option<i64>,
        /// Smallest pair total searched.
        #[arg(long, default_value_t = 0)]
        a_floor: i64,
        #[arg(long, env = "ITOUR_ORACLE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compare the formulas with enumeration on all small sequences.
    Sweep {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        d_max: i64,
        #[arg(long, env = "ITOUR_ORACLE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Time interval_test, min_f and mini_max on seeded random sequences.
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [1_000, 10_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [25, 50, 100, 200])]
        minimax_sizes: Vec<usize>,
        /// Runs per measurement; the fastest is reported.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

/// What a command wants written, and how to exit.
#[derive(Debug, Default)]
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn out(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }

    fn failing_if(mut self, failed: bool) -> Self {
        self.code = u8::from(failed);
        self
    }
}

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let (stdout, stderr, code) = match run(&config) {
        Ok(o) => (o.stdout, o.stderr, o.code),
        Err(e) => (String::new(), format!("error: {e}\n"), e.code()),
    };
    // A closed pipe downstream is not worth a panic.
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    ExitCode::from(code)
}

fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let format = config.format;
    let fmt = format.unwrap_or(Format::Json);
    match &config.command {
        Command::Bounds { scores } => {
            let (d, perm) = scores.load()?;
            Ok(bounds(&d, &perm, fmt))
        }
        Command::Test { scores, a, b } => {
            let (d, perm) = scores.load()?;
            let params = IntervalParams::new(*a, *b)?;
            Ok(test(&d, &perm, params, fmt))
        }
        Command::Reconstruct {
            scores,
            method,
            a,
            b,
        } => {
            let (d, perm) = scores.load()?;
            let window = window(*a, *b)?;
            reconstruct_cmd(&d, &perm, *method, window, fmt)
        }
        Command::Verify {
            scores,
            matrix,
            a,
            b,
        } => {
            let (d, perm) = scores.load()?;
            let m = input::parse_matrix(&input::read_file(matrix)?)?;
            let window = window(*a, *b)?;
            verify(&d, &perm, &m, window, fmt)
        }
        Command::Oracle {
            scores,
            pair_cap,
            a_floor,
            budget,
        } => {
            let (d, perm) = scores.load()?;
            oracle(&d, &perm, *pair_cap, *a_floor, *budget, fmt)
        }
        Command::Sweep {
            n_max,
            d_max,
            budget,
        } => sweep_cmd(*n_max, *d_max, *budget, fmt),
        Command::Bench {
            seed,
            sizes,
            minimax_sizes,
            repeats,
        } => {
            let rows = bench::run(*seed, sizes, minimax_sizes, (*repeats).max(1))?;
            Ok(Outcome::out(bench::render(
                &rows,
                format.unwrap_or(Format::Csv) == Format::Json,
            )))
        }
    }
}

fn window(a: Option<i64>, b: Option<i64>) -> Result<Option<IntervalParams>, CliError> {
    match (a, b) {
        (Some(a), Some(b)) => Ok(Some(IntervalParams::new(a, b)?)),
        _ => Ok(None),
    }
}

fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

/// Appends the sorted scores and permutation when sorting moved anything.
fn with_order(mut v: Value, d: &ScoreSequence, perm: &Permutation) -> Value {
    if !perm.is_identity() {
        let obj = v.as_object_mut().unwrap();
        obj.insert("scores".into(), json!(d.scores()));
        obj.insert("permutation".into(), json!(perm.as_slice()));
    }
    v
}

fn order_rows(d: &ScoreSequence, perm: &Permutation) -> Vec<(&'static str, String)> {
    if perm.is_identity() {
        return Vec::new();
    }
    let p: Vec<i64> = perm.as_slice().iter().map(|&i| i as i64).collect();
    vec![
        ("scores", render::list(d.scores())),
        ("permutation", render::list(&p)),
    ]
}

fn bounds(d: &ScoreSequence, perm: &Permutation, fmt: Format) -> Outcome {
    let s = extremal_summary(d);
    let n = d.len();
    let text = match fmt {
        Format::Json => json_line(&with_order(
            json!({"n": n, "e": s.e, "f": s.f, "g": s.g}),
            d,
            perm,
        )),
        Format::Csv => render::csv_record(&[
            ("n", n.to_string()),
            ("e", s.e.to_string()),
            ("f", s.f.to_string()),
            ("g", s.g.to_string()),
        ]),
        Format::Table => {
            let mut rows = vec![
                ("n", n.to_string()),
                ("e", s.e.to_string()),
                ("f", s.f.to_string()),
                ("g", s.g.to_string()),
                (
                    "f window",
                    format!("[{}, {}]", s.f_search_lo, s.f_search_hi),
                ),
            ];
            rows.extend(order_rows(d, perm));
            render::key_values(&rows)
        }
    };
    Outcome::out(text)
}

fn test(d: &ScoreSequence, perm: &Permutation, params: IntervalParams, fmt: Format) -> Outcome {
    let ok = interval_test(d, params);
    let text = match fmt {
        Format::Json => json_line(&with_order(json!({"realizable": ok}), d, perm)),
        Format::Csv => render::csv_record(&[("realizable", ok.to_string())]),
        Format::Table => {
            let mut rows = vec![
                ("a", params.a().to_string()),
                ("b", params.b().to_string()),
                ("realizable", ok.to_string()),
            ];
            rows.extend(order_rows(d, perm));
            render::key_values(&rows)
        }
    };
    Outcome::out(text).failing_if(!ok)
}

fn stats_json(s: &MatrixStats) -> Value {
    json!({"E": s.max_entry, "F": s.max_pair_total, "G": s.min_pair_total})
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "zero_diagonal": r.zero_diagonal(),
        "row_sums_match": r.row_sums_match(),
        "pairs_in_window": r.pairs_in_window(),
        "row_mismatches": r.row_mismatches.iter()
            .map(|m| json!({"row": m.row, "expected": m.expected, "actual": m.actual}))
            .collect::<Vec<_>>(),
        "pair_violations": r.pair_violations.iter()
            .map(|p| json!({"i": p.i, "j": p.j, "total": p.total}))
            .collect::<Vec<_>>(),
    })
}

fn report_rows(
    r: &VerificationReport,
    s: &MatrixStats,
    window: Option<IntervalParams>,
) -> Vec<(&'static str, String)> {
    let window = window.map_or("none".to_string(), |p| format!("[{}, {}]", p.a(), p.b()));
    let mut rows = vec![
        ("valid", r.is_valid().to_string()),
        ("window", window),
        ("E", s.max_entry.to_string()),
        ("F", s.max_pair_total.to_string()),
        ("G", s.min_pair_total.to_string()),
    ];
    let mismatches: Vec<String> = r
        .row_mismatches
        .iter()
        .map(|m| {
            format!(
                "row {} sums to {}, expected {}",
                m.row, m.actual, m.expected
            )
        })
        .collect();
    let violations: Vec<String> = r
        .pair_violations
        .iter()
        .map(|p| format!("pair ({}, {}) totals {}", p.i, p.j, p.total))
        .collect();
    if !mismatches.is_empty() {
        rows.push(("rows", mismatches.join("; ")));
    }
    if !violations.is_empty() {
        rows.push(("pairs", violations.join("; ")));
    }
    rows
}

fn reconstruct_cmd(
    d: &ScoreSequence,
    perm: &Permutation,
    method: Method,
    window: Option<IntervalParams>,
    fmt: Format,
) -> Result<Outcome, CliError> {
    let (m, params) = match method {
        Method::Naive => {
            let params = IntervalParams::new(0, 2 * d.max_score())?;
            (naive_construct(d.scores())?, window.unwrap_or(params))
        }
        Method::Pigeonhole => {
            let params = IntervalParams::new(0, 2 * bound_e(d))?;
            (pigeonhole_construct(d), window.unwrap_or(params))
        }
        Method::Minimax => match window {
            Some(params) => {
                if !interval_test(d, params) {
                    return Err(CliError::Input(format!(
                        "scores {d} are not realizable with pair totals in [{}, {}]",
                        params.a(),
                        params.b()
                    )));
                }
                (reconstruct(d, params)?, params)
            }
            None => {
                let (s, m) = mini_max(d);
                (m, IntervalParams::new(s.g, s.f)?)
            }
        },
    };
    let report = verify_realization(&m, d, params)?;
    let stats = matrix_stats(&m);
    let mut out = Outcome::default();
    match fmt {
        Format::Json => {
            let v = json!({
                "method": format!("{method:?}").to_lowercase(),
                "n": d.len(),
                "a": params.a(),
                "b": params.b(),
                "scores": d.scores(),
                "permutation": perm.as_slice(),
                "matrix": m.to_rows(),
                "stats": stats_json(&stats),
                "report": report_json(&report),
            });
            out.stdout = json_line(&v);
        }
        Format::Csv => {
            out.stdout = render::matrix_csv(&m);
            out.stderr = render::key_values(&report_rows(&report, &stats, Some(params)));
        }
        Format::Table => {
            out.stdout = render::matrix_table(&m, d.scores());
            out.stdout.push('\n');
            let mut rows = report_rows(&report, &stats, Some(params));
            rows.extend(order_rows(d, perm));
            out.stdout.push_str(&render::key_values(&rows));
        }
    }
    Ok(out.failing_if(!report.is_valid()))
}

fn verify(
    d: &ScoreSequence,
    perm: &Permutation,
    m: &PointMatrix,
    window: Option<IntervalParams>,
    fmt: Format,
) -> Result<Outcome, CliError> {
    let params = match window {
        Some(p) => p,
        None => IntervalParams::new(0, i64::MAX)?,
    };
    let report = verify_realization(m, d, params)?;
    let stats = matrix_stats(m);
    let text = match fmt {
        Format::Json => {
            let mut v = json!({
                "n": d.len(),
                "a": window.map(|p| p.a()),
                "b": window.map(|p| p.b()),
                "stats": stats_json(&stats),
            });
            let obj = v.as_object_mut().unwrap();
            if let Value::Object(r) = report_json(&report) {
                obj.extend(r);
            }
            json_line(&with_order(v, d, perm))
        }
        Format::Csv => render::csv_record(&[
            ("valid", report.is_valid().to_string()),
            ("E", stats.max_entry.to_string()),
            ("F", stats.max_pair_total.to_string()),
            ("G", stats.min_pair_total.to_string()),
            ("row_mismatches", report.row_mismatches.len().to_string()),
            ("pair_violations", report.pair_violations.len().to_string()),
        ]),
        Format::Table => {
            let mut rows = report_rows(&report, &stats, window);
            rows.extend(order_rows(d, perm));
            render::key_values(&rows)
        }
    };
    Ok(Outcome::out(text).failing_if(!report.is_valid()))
}

fn oracle(
    d: &ScoreSequence,
    perm: &Permutation,
    pair_cap: Option<i64>,
    a_floor: i64,
    budget: u64,
    fmt: Format,
) -> Result<Outcome, CliError> {
    let n = d.len() as i64;
    let cap = pair_cap.unwrap_or(2 * ((d.max_score() + n - 2) / (n - 1)));
    let r = Oracle::with_budget(budget).enumerate(d, cap, a_floor)?;
    let text = match fmt {
        Format::Json => {
            let v = json!({
                "n": d.len(),
                "pair_cap": cap,
                "a_floor": a_floor,
                "realizable": r.realizable,
                "count": r.count,
                "min_e": r.min_e,
                "min_f": r.min_f,
                "max_g": r.max_g,
                "visited": r.visited,
                "frontier": r.frontier,
                "witness": r.witness.as_ref().map(PointMatrix::to_rows),
            });
            json_line(&with_order(v, d, perm))
        }
        Format::Csv | Format::Table => {
            let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
            let rows = [
                ("realizable", r.realizable.to_string()),
                ("count", r.count.to_string()),
                ("min_e", opt(r.min_e)),
                ("min_f", opt(r.min_f)),
                ("max_g", opt(r.max_g)),
                ("visited", r.visited.to_string()),
            ];
            if fmt == Format::Csv {
                render::csv_record(&rows)
            } else {
                let mut text = render::key_values(&rows);
                if let Some(w) = &r.witness {
                    text.push('\n');
                    text.push_str(&render::matrix_table(w, d.scores()));
                }
                text
            }
        }
    };
    Ok(Outcome::out(text))
}

fn sweep_cmd(n_max: usize, d_max: i64, budget: u64, fmt: Format) -> Result<Outcome, CliError> {
    if !(2..=5).contains(&n_max) || !(0..=6).contains(&d_max) {
        return Err(CliError::Input(format!(
            "sweep needs 2 <= n-max <= 5 and 0 <= d-max <= 6, got {n_max} and {d_max}"
        )));
    }
    let report = sweep(n_max, d_max, Oracle::with_budget(budget))?;
    let mut out = Outcome::out(match fmt {
        Format::Json => json_line(&json!({
            "n_max": n_max,
            "d_max": d_max,
            "sequences": report.sequences.iter()
                .map(|&(n, c)| json!({"n": n, "count": c}))
                .collect::<Vec<_>>(),
            "checks": report.checks,
            "mismatches": report.mismatches.iter()
                .map(|m| json!({
                    "scores": m.scores,
                    "check": m.check,
                    "expected": m.expected,
                    "actual": m.actual,
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut text = String::from("n,sequences\n");
            for (n, c) in &report.sequences {
                text.push_str(&format!("{n},{c}\n"));
            }
            text
        }
        Format::Table => render::key_values(&[
            ("sequences", report.total_sequences().to_string()),
            ("checks", report.checks.to_string()),
            ("mismatches", report.mismatches.len().to_string()),
        ]),
    });
    if fmt != Format::Json {
        for m in &report.mismatches {
            out.stderr.push_str(&format!(
                "mismatch {}: {} expected {} got {}\n",
                render::list(&m.scores),
                m.check,
                m.expected,
                m.actual
            ));
        }
    }
    Ok(out.failing_if(!report.is_clean()))
}
