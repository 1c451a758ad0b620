//! Argument definitions and command handlers.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use stable_index_core::verify::{self, LemmaReport, PairCoverage, DEFAULT_SEED};
use stable_index_core::{
    build_glasses, circulant, classify_extremal, extremal_census, extremal_pair, g_of, max_finite_theta, run_search,
    stable_index, BoolMatrix, HorizonPolicy, SearchOptions,
};

use crate::error::{CliError, EXIT_FAILED, EXIT_OK};
use crate::format::{parse_matrix, write_matrix_file};
use crate::report::{outcome_json, outcome_line, spec_json, JsonReport};

#[derive(Debug, Parser)]
#[command(name = "stable-index", version, about = "Stable index of 0-1 matrices")]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the stable index of a matrix or edge-list file.
    Theta {
        file: PathBuf,
        /// bound | cycle | cap:<k>
        #[arg(long, default_value = "bound")]
        policy: Policy,
        #[arg(long)]
        json: bool,
    },
    /// Write a matrix file for a standard construction.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Print g(n), s(n) and the extremal data for order n.
    Bound {
        n: usize,
        /// Also print the small-order table.
        #[arg(long)]
        table: bool,
    },
    /// Exhaustively compute s(n).
    Search {
        n: usize,
        #[arg(long, default_value_t = 1)]
        shards: u64,
        /// Run only these shards (repeatable); default is all of them.
        #[arg(long = "shard-index")]
        shard_index: Vec<u64>,
        #[arg(long)]
        resume_dir: Option<PathBuf>,
        /// Permit n = 6 (2^36 matrices).
        #[arg(long = "allow-n6")]
        allow_n6: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Upper end of the suite's parameter range.
        #[arg(long)]
        max: Option<usize>,
        /// Random samples per order where a suite samples.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a matrix attains g(n).
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// g(p,k,q): a p-cycle joined to a q-cycle by a path of length k-1.
    Glasses {
        p: usize,
        k: usize,
        q: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The directed n-cycle.
    Circulant {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
pub struct Output {
    /// Destination file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Policy(pub HorizonPolicy);

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bound" => Ok(Policy(HorizonPolicy::TheoremBound)),
            "cycle" => Ok(Policy(HorizonPolicy::CycleDetect)),
            _ => {
                let cap = s
                    .strip_prefix("cap:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| format!("expected bound, cycle or cap:<k> with k >= 1, got {s:?}"))?;
                Ok(Policy(HorizonPolicy::ExplicitCap { cap }))
            }
        }
    }
}

fn policy_name(p: HorizonPolicy) -> String {
    match p {
        HorizonPolicy::TheoremBound => "bound".into(),
        HorizonPolicy::CycleDetect => "cycle".into(),
        HorizonPolicy::ExplicitCap { cap } => format!("cap:{cap}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Lemma3,
    Lemma8,
    Eq3,
    Lemma4,
    Lemma5,
    Theorem1,
    Lemma9,
    All,
}

fn read_matrix(path: &Path) -> Result<BoolMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(io_err(Path::new("<stdout>")))
}

/// Runs one command, writing results to `out`. Returns the exit status for
/// commands that complete; errors carry their own.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Theta { file, policy, json } => cmd_theta(&file, policy.0, json, out),
        Command::Construct { kind } => cmd_construct(kind, out),
        Command::Bound { n, table } => cmd_bound(n, table, out),
        Command::Search {
            n,
            shards,
            shard_index,
            resume_dir,
            allow_n6,
            json,
        } => cmd_search(n, shards, &shard_index, resume_dir, allow_n6, json, out),
        Command::Verify {
            suite,
            max,
            trials,
            seed,
            json,
        } => cmd_verify(suite, max, trials, seed, json, out),
        Command::Classify { file, json } => cmd_classify(&file, json, out),
    }
}

fn cmd_theta(file: &Path, policy: HorizonPolicy, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let a = read_matrix(file)?;
    let start = Instant::now();
    let outcome = stable_index(&a, policy)?;
    if json {
        let inputs = json!({ "file": file.display().to_string(), "n": a.n(), "policy": policy_name(policy) });
        emit(out, &JsonReport::new("theta", inputs, outcome_json(&outcome), start.elapsed()).to_pretty())?;
    } else {
        emit(out, &outcome_line(&outcome))?;
    }
    Ok(EXIT_OK)
}

fn cmd_construct(kind: Construction, out: &mut dyn Write) -> Result<u8, CliError> {
    let (a, dest) = match kind {
        Construction::Glasses { p, k, q, out } => (build_glasses(p, k, q)?.0.to_matrix(), out.out),
        Construction::Circulant { n, out } => {
            if n == 0 {
                return Err(CliError::Usage("circulant order must be at least 1".into()));
            }
            (circulant(n), out.out)
        }
    };
    let text = write_matrix_file(&a);
    match dest {
        Some(path) => std::fs::write(&path, text).map_err(io_err(&path))?,
        None => write!(out, "{text}").map_err(io_err(Path::new("<stdout>")))?,
    }
    Ok(EXIT_OK)
}

fn cmd_bound(n: usize, table: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let s = max_finite_theta(n)?;
    emit(out, &format!("n={n} s={s}"))?;
    if n < 7 {
        emit(out, &format!("g={} (formula does not apply below 7; s from exhaustive search)", g_of(n)))?;
    } else {
        let (p, q) = extremal_pair(n)?;
        emit(out, &format!("g={}", g_of(n)))?;
        emit(out, &format!("pair={{{p},{q}}} case: {}", stable_index_core::extremal::residue_case(n)))?;
        let census = extremal_census(n)?;
        let names: Vec<String> = census.family.iter().map(ToString::to_string).collect();
        emit(out, &format!("census: {} ({} digraphs attain g({n}))", names.join(", "), names.len()))?;
    }
    if table {
        emit(out, "n  s(n)")?;
        for (m, s) in stable_index_core::stable_index::SMALL_ORDER_MAX_THETA {
            emit(out, &format!("{m}  {s}"))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_search(
    n: usize,
    shards: u64,
    indices: &[u64],
    resume_dir: Option<PathBuf>,
    allow_n6: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    if n == 6 && !allow_n6 {
        return Err(CliError::Usage(
            "search 6 scans 2^36 matrices and takes hours; pass --allow-n6 to run it".into(),
        ));
    }
    let opts = SearchOptions {
        allow_long_run: allow_n6,
        resume_dir: resume_dir.clone(),
    };
    let start = Instant::now();
    let subset = (!indices.is_empty()).then_some(indices);
    let report = run_search(n, shards, subset, &opts)?;
    let elapsed = start.elapsed();
    if json {
        let inputs = json!({
            "n": n,
            "shards": shards,
            "shard_index": indices,
            "resume_dir": resume_dir.map(|d| d.display().to_string()),
        });
        let outcome = serde_json::to_value(&report).expect("report serializes");
        emit(out, &JsonReport::new("search", inputs, outcome, elapsed).to_pretty())?;
        return Ok(EXIT_OK);
    }
    let scope = if subset.is_some() {
        format!(" (partial: {} of {shards} shards)", indices.len())
    } else {
        String::new()
    };
    emit(out, &format!("n={n} s={}{scope}", report.s_value))?;
    emit(
        out,
        &format!(
            "scanned={} infinite={} cycle_confirmed={} horizon_escapes={} elapsed={:.2}s",
            report.matrices_scanned,
            report.infinite,
            report.cycle_confirmed,
            report.horizon_escapes,
            elapsed.as_secs_f64()
        ),
    )?;
    for (t, c) in &report.counts {
        emit(out, &format!("theta={t} count={c}"))?;
    }
    emit(out, &format!("extremal classes: {}", report.extremal_matrices.len()))?;
    for rows in &report.extremal_matrices {
        emit(out, "")?;
        for r in rows {
            emit(out, r)?;
        }
    }
    Ok(EXIT_OK)
}

fn suite_reports(suite: Suite, max: Option<usize>, trials: usize, seed: u64) -> Result<Vec<LemmaReport>, CliError> {
    let mut reports = Vec::new();
    let all = suite == Suite::All;
    // `--max` only applies when a single suite is selected
    let bound = |default: usize| if all { default } else { max.unwrap_or(default) };
    if all || suite == Suite::Lemma3 {
        reports.push(verify::verify_lemma3_range(bound(8)));
    }
    if all || suite == Suite::Lemma8 {
        for n in 2..=bound(8) {
            reports.push(verify::verify_lemma8(n, trials, seed)?);
        }
    }
    if all || suite == Suite::Eq3 {
        let m = bound(8);
        reports.push(verify::verify_eq3(m, m, 5));
    }
    if all || suite == Suite::Lemma4 {
        for n in 7..=bound(12) {
            for p in 1..n {
                reports.push(verify::verify_lemma4(p, n - p, PairCoverage::Auto, seed)?);
            }
        }
    }
    if all || suite == Suite::Lemma5 {
        reports.push(verify::verify_lemma5(bound(100))?);
    }
    if all || suite == Suite::Theorem1 {
        reports.push(verify::verify_theorem1(bound(16))?);
    }
    if all || suite == Suite::Lemma9 {
        reports.push(verify::verify_lemma9(bound(8))?);
    }
    Ok(reports)
}

/// Counterexamples printed per report before truncating.
const SHOWN_FAILURES: usize = 20;

fn cmd_verify(
    suite: Suite,
    max: Option<usize>,
    trials: usize,
    seed: u64,
    json: bool,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let start = Instant::now();
    let reports = suite_reports(suite, max, trials, seed)?;
    let passed = reports.iter().all(LemmaReport::passed);
    if json {
        let inputs = json!({ "suite": format!("{suite:?}").to_lowercase(), "max": max, "trials": trials, "seed": seed });
        let outcome = json!({ "passed": passed, "reports": reports });
        emit(out, &JsonReport::new("verify", inputs, outcome, start.elapsed()).to_pretty())?;
    } else {
        for r in &reports {
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            emit(
                out,
                &format!("{verdict} {} [{}]: {} cases, {} failures", r.lemma_id, r.parameter_range, r.cases_checked, r.failures.len()),
            )?;
            for note in &r.notes {
                emit(out, &format!("  note: {note}"))?;
            }
            for f in r.failures.iter().take(SHOWN_FAILURES) {
                emit(out, &format!("  counterexample: {f}"))?;
            }
            if r.failures.len() > SHOWN_FAILURES {
                emit(out, &format!("  ... and {} more", r.failures.len() - SHOWN_FAILURES))?;
            }
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_classify(file: &Path, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let a = read_matrix(file)?;
    let start = Instant::now();
    let r = classify_extremal(&a)?;
    if json {
        let outcome = json!({
            "theta": r.theta,
            "g": r.g_value,
            "is_extremal": r.is_extremal,
            "matched_spec": r.matched_spec.as_ref().map(spec_json).unwrap_or(Value::Null),
            "note": r.note,
        });
        let inputs = json!({ "file": file.display().to_string(), "n": a.n() });
        emit(out, &JsonReport::new("classify", inputs, outcome, start.elapsed()).to_pretty())?;
        return Ok(EXIT_OK);
    }
    emit(out, &r.note)?;
    match &r.matched_spec {
        Some(spec) => emit(out, &format!("extremal: yes, spec {spec}"))?,
        None => emit(out, "extremal: no")?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies() {
        assert_eq!("bound".parse::<Policy>().unwrap().0, HorizonPolicy::TheoremBound);
        assert_eq!("cycle".parse::<Policy>().unwrap().0, HorizonPolicy::CycleDetect);
        assert_eq!("cap:7".parse::<Policy>().unwrap().0, HorizonPolicy::ExplicitCap { cap: 7 });
        assert!("cap:0".parse::<Policy>().is_err());
        assert!("cap:".parse::<Policy>().is_err());
        assert!("always".parse::<Policy>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
