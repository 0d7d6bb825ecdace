//! Command-line front end.
//!
//! Every command echoes its configuration and the tool version ahead of the
//! result and is deterministic given its arguments; `--threads` never changes
//! the output.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{
    char_poly_roots, decay_report, h_recurrence, verify_against_bruteforce, CensusError, GapConvention,
};
use crate::decomposition::{decompose, DecomposeError};
use crate::interval::{
    counterexample_interval, exact_count_distribution, gap_probability_estimate, histogram_over_interval,
    run_subinterval_batch, IntervalError, IntervalMode, IntervalParams, WalkConfig,
};
use crate::legality::is_legal;
use crate::stats::DistributionSummary;
use crate::system::{Plrs, PlrsError, SequenceCache};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "plrs", version, about = "Decompositions over positive linear recurrences")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CoeffArg {
    /// Comma-separated recurrence coefficients c_1,...,c_L.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terms G_1..G_n.
    Seq {
        #[command(flatten)]
        coeffs: CoeffArg,
        #[arg(long)]
        n: usize,
    },
    /// Legal decomposition of a non-negative integer.
    Decompose {
        #[command(flatten)]
        coeffs: CoeffArg,
        value: String,
    },
    /// Summand-count distribution over [0, G_k), an interval, or the non-Gaussian example.
    Dist {
        #[command(flatten)]
        coeffs: CoeffArg,
        #[arg(long, conflicts_with_all = ["lo", "counterexample_n"])]
        upto_index: Option<usize>,
        #[arg(long, requires = "len", conflicts_with = "counterexample_n")]
        lo: Option<String>,
        #[arg(long, requires = "lo")]
        len: Option<String>,
        #[arg(long)]
        counterexample_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Draws for --mode sample.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Largest interval --mode exhaustive will walk.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Block-lemma experiments on [m, m + G_alpha) for sampled m in [G_n, G_{n+1}).
    Subinterval {
        #[command(flatten)]
        coeffs: CoeffArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        /// Walk every offset when G_alpha is at most this.
        #[arg(long, default_value_t = WalkConfig::default().exhaustive_budget)]
        exhaustive_budget: u64,
        /// Offsets drawn per m otherwise.
        #[arg(long, default_value_t = WalkConfig::default().samples)]
        walk_samples: u64,
        /// Only estimate the fraction of m passing the zero-run gate.
        #[arg(long)]
        gap_probability: bool,
    },
    /// Counts of integers without a gap of length Z or more.
    Census {
        #[command(flatten)]
        coeffs: CoeffArg,
        #[arg(long = "Z", visible_alias = "z")]
        z: usize,
        #[arg(long, default_value_t = 60)]
        n: usize,
        /// Check the table against enumeration for n up to this.
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long, value_enum, default_value_t = ConventionArg::Between)]
        gap_convention: ConventionArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Between,
    Anchored,
}

impl From<ConventionArg> for GapConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Between => GapConvention::BetweenSummands,
            ConventionArg::Anchored => GapConvention::AnchoredAtZero,
        }
    }
}

/// A failed run: the process exit code and a one-line message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<PlrsError> for CliError {
    fn from(e: PlrsError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<DecomposeError> for CliError {
    fn from(e: DecomposeError) -> Self {
        let code = match e {
            DecomposeError::BudgetTooSmall { .. } => EXIT_BUDGET,
            DecomposeError::NoLegalDecomposition
            | DecomposeError::MultipleLegalDecompositions
            | DecomposeError::NotMaterialized { .. } => EXIT_INVARIANT,
            _ => EXIT_INVALID,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<IntervalError> for CliError {
    fn from(e: IntervalError) -> Self {
        match e {
            IntervalError::Decompose(d) => d.into(),
            IntervalError::BudgetExceeded { .. } => CliError { code: EXIT_BUDGET, message: e.to_string() },
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        let code = match e {
            CensusError::BudgetExceeded { .. } => EXIT_BUDGET,
            CensusError::NoConvergence { .. } => EXIT_INVARIANT,
            _ => EXIT_INVALID,
        };
        CliError { code, message: e.to_string() }
    }
}

/// Parses `args` (including the program name) and returns the rendered output.
pub fn run<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)
        .map_err(|e| CliError { code: if e.use_stderr() { EXIT_INVALID } else { 0 }, message: e.to_string() })?;
    execute(&cli)
}

/// Runs a parsed command; `--out` is honoured by [`main`], not here.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Seq { coeffs, n } => cmd_seq(cli, &coeffs.coeffs, *n),
        Command::Decompose { coeffs, value } => cmd_decompose(cli, &coeffs.coeffs, value),
        Command::Dist { coeffs, upto_index, lo, len, counterexample_n, mode, samples, budget } => {
            let target = match (upto_index, lo, len, counterexample_n) {
                (Some(k), None, None, None) => DistTarget::Upto(*k),
                (None, Some(lo), Some(len), None) => DistTarget::Interval(parse_big(lo)?, parse_big(len)?),
                (None, None, None, Some(n)) => DistTarget::Counterexample(*n),
                _ => return Err(CliError::invalid("give exactly one of --upto-index, --lo/--len, --counterexample-n")),
            };
            let mode = match mode {
                ModeArg::Exact => IntervalMode::Exact,
                ModeArg::Exhaustive => IntervalMode::Exhaustive { budget: *budget },
                ModeArg::Sample => IntervalMode::Sample { samples: *samples, seed: cli.seed },
            };
            cmd_dist(cli, &coeffs.coeffs, target, mode)
        }
        Command::Subinterval { coeffs, n, alpha, q, samples, exhaustive_budget, walk_samples, gap_probability } => {
            let walk = WalkConfig { exhaustive_budget: *exhaustive_budget, samples: *walk_samples };
            cmd_subinterval(cli, &coeffs.coeffs, *n, *alpha, *q, *samples, walk, *gap_probability)
        }
        Command::Census { coeffs, z, n, verify, gap_convention } => {
            cmd_census(cli, &coeffs.coeffs, *z, *n, *verify, (*gap_convention).into())
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn parse_big(s: &str) -> Result<BigUint, CliError> {
    s.parse::<BigUint>().map_err(|_| CliError::invalid(format!("not a non-negative integer: {s:?}")))
}

fn coeff_list(c: &[i64]) -> String {
    c.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

struct Meta {
    command: &'static str,
    seed: u64,
    config: BTreeMap<&'static str, String>,
}

impl Meta {
    fn new(cli: &Cli, command: &'static str, coeffs: &[i64]) -> Self {
        let mut config = BTreeMap::new();
        config.insert("coeffs", coeff_list(coeffs));
        Meta { command, seed: cli.seed, config }
    }

    fn with(mut self, key: &'static str, value: impl ToString) -> Self {
        self.config.insert(key, value.to_string());
        self
    }

    fn comment(&self) -> String {
        let mut line = format!("# plrs {VERSION} {} seed={}", self.command, self.seed);
        for (k, v) in &self.config {
            let _ = write!(line, " {k}={v}");
        }
        line.push('\n');
        line
    }

    fn json(&self) -> Value {
        json!({
            "tool": "plrs",
            "version": VERSION,
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
        })
    }
}

fn render_json(meta: &Meta, result: impl Serialize) -> Result<String, CliError> {
    let doc = json!({ "meta": meta.json(), "result": result });
    let mut s =
        serde_json::to_string_pretty(&doc).map_err(|e| CliError { code: EXIT_INVARIANT, message: e.to_string() })?;
    s.push('\n');
    Ok(s)
}

fn cmd_seq(cli: &Cli, coeffs: &[i64], n: usize) -> Result<String, CliError> {
    let plrs = Plrs::new(coeffs)?;
    if n < 1 {
        return Err(CliError::invalid("--n must be at least 1"));
    }
    let meta = Meta::new(cli, "seq", coeffs).with("n", n);
    let mut cache = SequenceCache::new(plrs);
    cache.ensure(n);
    match cli.format {
        Format::Json => {
            let rows: Vec<Value> = (1..=n).map(|k| json!({ "n": k, "g": cache.at(k).to_string() })).collect();
            render_json(&meta, rows)
        }
        Format::Csv | Format::Text => {
            let mut out = meta.comment();
            out.push_str("n,G_n\n");
            for k in 1..=n {
                let _ = writeln!(out, "{k},{}", cache.at(k));
            }
            Ok(out)
        }
    }
}

fn cmd_decompose(cli: &Cli, coeffs: &[i64], value: &str) -> Result<String, CliError> {
    let plrs = Plrs::new(coeffs)?;
    let v = parse_big(value)?;
    let method = if plrs.is_monotone() { "greedy" } else { "general" };
    let meta = Meta::new(cli, "decompose", coeffs).with("value", value).with("method", method);
    let mut cache = SequenceCache::new(plrs.clone());
    let d = decompose(&mut cache, &v)?;
    if d.value() != &v || !is_legal(&plrs, &d.to_top_down(None)) {
        return Err(CliError { code: EXIT_INVARIANT, message: "decomposition failed its legality check".into() });
    }
    let gaps = d.gap_lengths();
    let gap_list = gaps.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    match cli.format {
        Format::Json => render_json(
            &meta,
            json!({
                "decomposition": d,
                "symbolic": d.render_symbolic(),
                "values": d.render_values(&cache),
                "summands": d.summand_count(),
                "gaps": gaps,
                "legal": true,
            }),
        ),
        Format::Csv => {
            let mut out = meta.comment();
            out.push_str("index,coeff,term\n");
            for &(j, a) in d.entries().iter().rev() {
                let _ = writeln!(out, "{j},{a},{}", cache.at(j));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = meta.comment();
            let _ = writeln!(out, "value: {v}");
            let _ = writeln!(out, "decomposition: {}", d.render_values(&cache));
            let _ = writeln!(out, "symbolic: {}", d.render_symbolic());
            let _ = writeln!(out, "summands: {}", d.summand_count());
            let _ = writeln!(out, "gaps: {}", if gap_list.is_empty() { "none" } else { &gap_list });
            out.push_str("legal: true\n");
            Ok(out)
        }
    }
}

enum DistTarget {
    Upto(usize),
    Interval(BigUint, BigUint),
    Counterexample(usize),
}

fn cmd_dist(cli: &Cli, coeffs: &[i64], target: DistTarget, mode: IntervalMode) -> Result<String, CliError> {
    let plrs = Plrs::new(coeffs)?;
    let mut cache = SequenceCache::new(plrs.clone());
    let meta = Meta::new(cli, "dist", coeffs);
    let (meta, lo, hi, summary) = match target {
        DistTarget::Upto(k) => {
            if k < 1 {
                return Err(CliError::invalid("--upto-index must be at least 1"));
            }
            let s = exact_count_distribution(&plrs, k);
            (meta.with("upto-index", k), BigUint::default(), cache.term(k).clone(), s)
        }
        DistTarget::Interval(lo, len) => {
            let s = histogram_over_interval(&mut cache, &lo, &len, mode, cli.threads)?;
            let meta = meta.with("lo", &lo).with("len", &len).with("mode", mode_name(mode));
            let hi = &lo + &len;
            (meta, lo, hi, s)
        }
        DistTarget::Counterexample(n) => {
            let r = counterexample_interval(&mut cache, n)?;
            (meta.with("counterexample-n", n), r.lo, r.hi, r.distribution)
        }
    };
    match cli.format {
        Format::Json => render_json(&meta, json!({ "lo": lo.to_string(), "hi": hi.to_string(), "summary": summary })),
        Format::Csv => {
            let mut out = meta.comment();
            out.push_str(&summary_comment(&lo, &hi, &summary));
            out.push_str(&summary.to_csv());
            Ok(out)
        }
        Format::Text => {
            let mut out = meta.comment();
            let _ = writeln!(out, "interval: [{lo}, {hi})");
            out.push_str(&summary_lines(&summary));
            out.push_str("histogram:\n");
            for (k, v) in summary.histogram.iter() {
                let _ = writeln!(out, "  {k} {v}");
            }
            Ok(out)
        }
    }
}

fn mode_name(mode: IntervalMode) -> &'static str {
    match mode {
        IntervalMode::Exact => "exact",
        IntervalMode::Exhaustive { .. } => "exhaustive",
        IntervalMode::Sample { .. } => "sample",
    }
}

fn summary_lines(s: &DistributionSummary) -> String {
    format!(
        "total: {}\nmean: {}\nvariance: {}\nstddev: {}\nks: {}\nks_raw: {}\ndegenerate: {}\nbimodal: {}\n",
        s.total, s.mean, s.variance, s.stddev, s.ks, s.ks_raw, s.degenerate, s.bimodal
    )
}

fn summary_comment(lo: &BigUint, hi: &BigUint, s: &DistributionSummary) -> String {
    format!(
        "# lo={lo} hi={hi} total={} mean={} variance={} ks={} ks_raw={} degenerate={} bimodal={}\n",
        s.total, s.mean, s.variance, s.ks, s.ks_raw, s.degenerate, s.bimodal
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_subinterval(
    cli: &Cli,
    coeffs: &[i64],
    n: usize,
    alpha: Option<usize>,
    q: Option<usize>,
    samples: u64,
    walk: WalkConfig,
    gap_only: bool,
) -> Result<String, CliError> {
    let plrs = Plrs::new(coeffs)?;
    if samples < 1 {
        return Err(CliError::invalid("--samples must be at least 1"));
    }
    let params = IntervalParams::with_overrides(n, alpha, q)?;
    let mut cache = SequenceCache::new(plrs);
    let meta = Meta::new(cli, "subinterval", coeffs)
        .with("n", params.n)
        .with("alpha", params.alpha)
        .with("q", params.q)
        .with("samples", samples);
    if gap_only {
        let meta = meta.with("gap-probability", true);
        let g = gap_probability_estimate(&mut cache, params, samples, cli.seed, cli.threads)?;
        return match cli.format {
            Format::Json => render_json(&meta, g),
            Format::Csv => {
                let mut out = meta.comment();
                out.push_str("hits,samples,fraction,warning\n");
                let _ = writeln!(out, "{},{},{},{}", g.hits, g.samples, g.fraction, g.warning.unwrap_or_default());
                Ok(out)
            }
            Format::Text => {
                let mut out = meta.comment();
                let _ = writeln!(out, "zero-run fraction: {} ({} of {})", g.fraction, g.hits, g.samples);
                if let Some(w) = g.warning {
                    let _ = writeln!(out, "warning: {w}");
                }
                Ok(out)
            }
        };
    }
    let meta = meta.with("exhaustive-budget", walk.exhaustive_budget).with("walk-samples", walk.samples);
    let batch = run_subinterval_batch(&mut cache, params, samples, cli.seed, cli.threads, walk)?;
    let a = &batch.aggregate;
    if a.within_hypothesis && (a.c3_failures + a.shift_bound_violations + a.bijection_failures) > 0 {
        return Err(CliError {
            code: EXIT_INVARIANT,
            message: format!(
                "block lemma violated: c3 {} shift {} bijection {}",
                a.c3_failures, a.shift_bound_violations, a.bijection_failures
            ),
        });
    }
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let opt_i = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    match cli.format {
        Format::Json => render_json(&meta, &batch),
        Format::Csv | Format::Text => {
            let mut out = meta.comment();
            let _ = writeln!(
                out,
                "# samples={} passing={} pass_fraction={} median_ks={} c3_failures={} shift_bound_violations={} bijection_failures={} prefix_disagreements={}",
                a.samples,
                a.passing,
                a.pass_fraction,
                opt(a.median_ks),
                a.c3_failures,
                a.shift_bound_violations,
                a.bijection_failures,
                a.prefix_disagreements
            );
            if let Some(w) = &a.warning {
                let _ = writeln!(out, "# warning: {w}");
            }
            out.push_str("m,zero_run,passed,exhaustive,visited,c3_constant,shift_min,shift_max,shift_bound,bijective,prefix_disagreements,mean,ks\n");
            for r in &batch.reports {
                let (mean, ks) =
                    r.distribution.as_ref().map(|d| (d.mean.to_string(), d.ks.to_string())).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{mean},{ks}",
                    r.m,
                    r.zero_run_found,
                    r.passed(),
                    r.exhaustive,
                    r.visited,
                    r.c3_constant,
                    opt_i(r.shift_error_min),
                    opt_i(r.shift_error_max),
                    r.shift_error_bound,
                    r.bijection_verified,
                    r.prefix_disagreements
                );
            }
            Ok(out)
        }
    }
}

fn cmd_census(
    cli: &Cli,
    coeffs: &[i64],
    z: usize,
    n: usize,
    verify: Option<usize>,
    convention: GapConvention,
) -> Result<String, CliError> {
    let plrs = Plrs::new(coeffs)?;
    let mut cache = SequenceCache::new(plrs.clone());
    let mut meta = Meta::new(cli, "census", coeffs).with("Z", z).with("n", n).with(
        "gap-convention",
        match convention {
            GapConvention::BetweenSummands => "between",
            GapConvention::AnchoredAtZero => "anchored",
        },
    );
    let table = h_recurrence(&mut cache, z, n, convention)?;
    let roots = char_poly_roots(&plrs, z, Some(&table))?;
    let decay = match decay_report(&table, &roots) {
        Ok(d) => Some(d),
        Err(CensusError::TableTooShort { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let verified = match verify {
        Some(upto) => {
            meta = meta.with("verify", upto);
            let bad = verify_against_bruteforce(&mut cache, &table, upto)?;
            if !bad.is_empty() {
                return Err(CliError {
                    code: EXIT_INVARIANT,
                    message: format!("recurrence disagrees with enumeration at n = {bad:?}"),
                });
            }
            Some(upto.min(table.n_max()))
        }
        None => None,
    };
    let verify_line = verified.map(|u| format!("verified n ≤ {u} against brute force: OK"));
    match cli.format {
        Format::Json => {
            render_json(&meta, json!({ "table": table, "roots": roots, "decay": decay, "verified_upto": verified }))
        }
        Format::Csv | Format::Text => {
            let mut out = meta.comment();
            let roots_json = serde_json::to_string(&roots).expect("plain data");
            let _ = writeln!(out, "# roots={roots_json}");
            if let Some(d) = &decay {
                let _ = writeln!(
                    out,
                    "# decay slope={} predicted={} deviation={} pass={}",
                    d.slope, d.predicted, d.deviation, d.pass
                );
            }
            if let Some(line) = &verify_line {
                let _ = writeln!(out, "# {line}");
            }
            out.push_str(&table.to_csv());
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        run(std::iter::once("plrs").chain(args.iter().copied())).unwrap()
    }

    fn code(args: &[&str]) -> u8 {
        run(std::iter::once("plrs").chain(args.iter().copied())).unwrap_err().code
    }

    #[test]
    fn seq_last_rows() {
        assert!(ok(&["seq", "--coeffs", "1,1", "--n", "10"]).ends_with("10,89\n"));
        assert!(ok(&["seq", "--coeffs", "2,3,1", "--n", "5"]).ends_with("5,93\n"));
    }

    #[test]
    fn invalid_inputs_exit_two() {
        assert_eq!(code(&["seq", "--coeffs", "0,1", "--n", "5"]), EXIT_INVALID);
        assert_eq!(code(&["census", "--coeffs", "1,1", "--Z", "2"]), EXIT_INVALID);
        assert_eq!(code(&["decompose", "--coeffs", "1,1", "12x"]), EXIT_INVALID);
        assert_eq!(code(&["seq", "--coeffs", "-1,2", "--n", "3"]), EXIT_INVALID);
    }

    #[test]
    fn budget_exit_three() {
        assert_eq!(
            code(&["dist", "--coeffs", "1,1", "--lo", "0", "--len", "1000", "--mode", "exhaustive", "--budget", "10"]),
            EXIT_BUDGET
        );
    }

    #[test]
    fn decompose_text() {
        let out = ok(&["decompose", "--coeffs", "1,1", "100"]);
        assert!(out.contains("decomposition: 89+8+3\n"));
        assert!(out.contains("summands: 3\n"));
        assert!(out.contains("gaps: 1,4\n"));
        let out = ok(&["decompose", "--coeffs", "2,3,1", "184"]);
        assert!(out.contains("symbolic: G5+2·G4+3·G3+G1\n"));
        let out = ok(&["decompose", "--coeffs", "1,1", "0"]);
        assert!(out.contains("decomposition: 0\n") && out.contains("summands: 0\n"));
    }
}
