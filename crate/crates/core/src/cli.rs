//! Command-line front end: every command prints one JSON document.
//!
//! Output is deterministic for a fixed configuration: thread count never
//! appears in it, and wall-clock time is included only with `--timing`.
//! Exit codes: 0 success, 2 usage, 3 guard exceeded, 4 invariant violation,
//! 1 anything else.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analyze::{
    analyze_exact, census_2dim, classify_bad_ordering, lcs_code_affine, lcs_code_bruteforce, sample_orderings,
    AnalyzeError, CensusVerify, Guards,
};
use crate::bounds::{self, BoundsError};
use crate::construct::{construct_half_rate, ConstructError, ConstructOptions, VerifyMode};
use crate::gf::Field;
use crate::insdel::{rank_certificate, InsdelError};
use crate::rscode::{parse_field_spec, parse_indices, CodeError, EvaluationVector, RsCode};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "rs-insdel", version, about = "Reed-Solomon codes under insertion/deletion errors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall-clock time in the output (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_codewords: u64,
    #[arg(long, global = true, default_value_t = 362_880)]
    pub max_census_classes: u64,
    #[arg(long, global = true, default_value_t = 400_000_000)]
    pub max_optimality_checks: u128,
    /// Wall-time limit in seconds; 0 disables it.
    #[arg(long, global = true, default_value_t = 60)]
    pub time_limit: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyzeMethod {
    /// Affine fast path for full-length k = 2, brute force otherwise.
    Auto,
    Brute,
    Affine,
    Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyArg {
    Exact,
    Certificate,
    None,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// LCS(C) and insdel capability of RS_{n,k}(α).
    Analyze {
        #[arg(long)]
        field: String,
        #[arg(long)]
        k: usize,
        /// Comma-separated element indices.
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = AnalyzeMethod::Auto)]
        method: AnalyzeMethod,
        /// Error count for the rank certificate.
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Whether a full-length ordering is one of the listed bad orderings.
    Classify {
        #[arg(long)]
        field: String,
        #[arg(long)]
        alpha: String,
    },
    /// Enumerates all classes of full-length 2-dimensional codes.
    Census {
        #[arg(long)]
        field: String,
        /// `all`, `none`, or N to check every N-th class against the exact LCS.
        #[arg(long, default_value = "auto")]
        verify: String,
    },
    /// LCS(C) of random full-length orderings.
    Sample {
        #[arg(long)]
        field: String,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Builds α ∈ F_q^{2k} whose RS_{2k,k}(α) corrects one insdel.
    Construct {
        #[arg(long)]
        field: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = VerifyArg::Exact)]
        verify: VerifyArg,
        /// Skip prefix pairs too close to matter.
        #[arg(long)]
        restrict_dh: bool,
        /// Attempt fields below the guaranteed size.
        #[arg(long)]
        allow_small_q: bool,
        /// Use the coarser 100k⁴ field-size requirement.
        #[arg(long)]
        theorem3_bound: bool,
    },
    /// Evaluates a counting bound.
    Bounds {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Proportion of full-length 2-dimensional codes correcting one insdel.
    Table1,
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    HalfSingleton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Prop7 {
        #[arg(long)]
        field: u64,
    },
    Prop6 {
        #[arg(long)]
        field: u64,
        #[arg(long)]
        ell: u64,
    },
    Claim8 {
        #[arg(long)]
        field: u64,
        #[arg(long)]
        delta: f64,
    },
}

/// The validated configuration, echoed into every report. Thread count and
/// output path are deliberately left out.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub field: Option<String>,
    pub k: Option<usize>,
    pub t: Option<usize>,
    pub delta: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub guards: GuardConfig,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GuardConfig {
    pub max_codewords: u64,
    pub max_census_classes: u64,
    pub max_optimality_checks: u128,
    pub time_limit_s: u64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
    Invariant(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Invariant(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Guard(_) => "guard_exceeded",
            CliError::Invariant(_) => "invariant_violation",
            CliError::Other(_) => "error",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Guard(m) | CliError::Invariant(m) | CliError::Other(m) => m,
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<AnalyzeError> for CliError {
    fn from(e: AnalyzeError) -> Self {
        match e {
            AnalyzeError::GuardExceeded { .. } | AnalyzeError::Timeout(_) => CliError::Guard(e.to_string()),
            AnalyzeError::NotFullLength | AnalyzeError::Precondition(_) | AnalyzeError::Code(_) => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

impl From<InsdelError> for CliError {
    fn from(e: InsdelError) -> Self {
        match e {
            InsdelError::TooManyPairs { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::SingularSystem { .. }
            | ConstructError::BadSetCeiling { .. }
            | ConstructError::VerificationFailed { .. }
            | ConstructError::NoGoodPair { below_bound: false, .. } => CliError::Invariant(e.to_string()),
            ConstructError::NoGoodPair { .. } => CliError::Other(e.to_string()),
            ConstructError::Analyze(a) => a.into(),
            ConstructError::Insdel(i) => i.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Analyze(a) => a.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn field_arc(spec: &str) -> Result<Arc<Field>, CliError> {
    Ok(Arc::new(parse_field_spec(spec)?))
}

fn eval_vector(field: &Arc<Field>, alpha: &str) -> Result<EvaluationVector, CliError> {
    Ok(EvaluationVector::from_indices(field.clone(), &parse_indices(alpha)?)?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn config_for(command: &Command, common: &CommonArgs) -> RunConfig {
    let mut cfg = RunConfig {
        command: "",
        field: None,
        k: None,
        t: None,
        delta: None,
        trials: None,
        seed: None,
        guards: GuardConfig {
            max_codewords: common.max_codewords,
            max_census_classes: common.max_census_classes,
            max_optimality_checks: common.max_optimality_checks,
            time_limit_s: common.time_limit,
        },
        threads: common.threads,
        output: common.output.clone(),
        format: common.format,
    };
    match command {
        Command::Analyze { field, k, t, .. } => {
            (cfg.command, cfg.field, cfg.k, cfg.t) = ("analyze", Some(field.clone()), Some(*k), Some(*t));
        }
        Command::Classify { field, .. } => (cfg.command, cfg.field) = ("classify", Some(field.clone())),
        Command::Census { field, .. } => (cfg.command, cfg.field) = ("census", Some(field.clone())),
        Command::Sample { field, delta, trials, seed } => {
            cfg.command = "sample";
            cfg.field = Some(field.clone());
            (cfg.delta, cfg.trials, cfg.seed) = (Some(*delta), Some(*trials), Some(*seed));
        }
        Command::Construct { field, k, .. } => {
            (cfg.command, cfg.field, cfg.k) = ("construct", Some(field.clone()), Some(*k));
        }
        Command::Bounds { which } => {
            cfg.command = "bounds";
            match which {
                BoundCommand::HalfSingleton { k, .. } => cfg.k = Some(*k),
                BoundCommand::Prop7 { field } | BoundCommand::Prop6 { field, .. } => {
                    cfg.field = Some(field.to_string())
                }
                BoundCommand::Claim8 { field, delta } => {
                    cfg.field = Some(field.to_string());
                    cfg.delta = Some(*delta);
                }
            }
        }
        Command::Table1 => cfg.command = "table1",
    }
    cfg
}

fn dispatch(command: &Command, guards: &Guards) -> Result<Value, CliError> {
    match command {
        Command::Analyze { field, k, alpha, method, t } => {
            let f = field_arc(field)?;
            let eval = eval_vector(&f, alpha)?;
            let code = RsCode::new(eval.clone(), *k)?;
            let mut out = json!({ "alpha": eval.to_string(), "method_requested": method });
            out["report"] = match method {
                AnalyzeMethod::Brute => to_value(&lcs_code_bruteforce(&code, guards)?),
                AnalyzeMethod::Affine => {
                    if *k != 2 {
                        return Err(CliError::Usage("the affine method needs k = 2".into()));
                    }
                    to_value(&lcs_code_affine(&eval)?)
                }
                AnalyzeMethod::Auto => to_value(&analyze_exact(&code, guards)?),
                AnalyzeMethod::Certificate => {
                    let cert = rank_certificate(&code, *t)?;
                    json!({ "method": "rank_certificate", "t": t, "certificate": cert })
                }
            };
            Ok(out)
        }
        Command::Classify { field, alpha } => {
            let f = field_arc(field)?;
            let eval = eval_vector(&f, alpha)?;
            Ok(json!({ "alpha": eval.to_string(), "verdict": classify_bad_ordering(&eval)? }))
        }
        Command::Census { field, verify } => {
            let f = field_arc(field)?;
            let mode = match verify.as_str() {
                "auto" => CensusVerify::default_for(f.order()),
                "all" => CensusVerify::All,
                "none" => CensusVerify::None,
                n => CensusVerify::Every(
                    n.parse()
                        .ok()
                        .filter(|&n: &u64| n > 0)
                        .ok_or_else(|| CliError::Usage(format!("bad --verify `{n}`")))?,
                ),
            };
            let report = census_2dim(&f, mode, guards)?;
            if report.mismatches > 0 {
                return Err(CliError::Invariant(format!(
                    "census verdicts disagree with the exact LCS on {} classes",
                    report.mismatches
                )));
            }
            Ok(to_value(&report))
        }
        Command::Sample { field, delta, trials, seed } => {
            let f = field_arc(field)?;
            Ok(to_value(&sample_orderings(&f, *delta, *trials, *seed, guards)?))
        }
        Command::Construct { field, k, verify, restrict_dh, allow_small_q, theorem3_bound } => {
            let f = parse_field_spec(field)?;
            let mode = match verify {
                VerifyArg::Exact => VerifyMode::Exact,
                VerifyArg::Certificate => VerifyMode::Certificate,
                VerifyArg::None => VerifyMode::None,
            };
            let options = ConstructOptions {
                restrict_dh: *restrict_dh,
                allow_small_q: *allow_small_q,
                theorem3_bound: *theorem3_bound,
            };
            let trace = construct_half_rate(f.order() as u64, *k, mode, options, guards)?;
            guards_elapsed(guards)?;
            Ok(to_value(&trace))
        }
        Command::Bounds { which } => Ok(to_value(&match which {
            BoundCommand::HalfSingleton { n, k } => bounds::half_singleton_report(*n, *k)?,
            BoundCommand::Prop7 { field } => bounds::prop7_report(*field)?,
            BoundCommand::Prop6 { field, ell } => bounds::prop6_report(*field, *ell)?,
            BoundCommand::Claim8 { field, delta } => bounds::claim8_bound(*field, *delta)?,
        })),
        Command::Table1 => Ok(json!({ "rows": bounds::table1(guards)? })),
    }
}

fn guards_elapsed(guards: &Guards) -> Result<(), CliError> {
    match guards.deadline {
        Some(d) if Instant::now() > d => Err(CliError::Guard("wall-time guard exceeded".into())),
        _ => Ok(()),
    }
}

fn table1_csv(rows: &Value) -> String {
    let mut out = String::from("q,method,classes_total,classes_correcting_one,proportion,prop7_lower_bound,prop7_proportion\n");
    for r in rows["rows"].as_array().into_iter().flatten() {
        let s = |k: &str| match &r[k] {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        out.push_str(&[
            s("q"),
            s("method"),
            s("classes_total"),
            s("classes_correcting_one"),
            s("proportion_3dp"),
            s("prop7_lower_bound"),
            s("prop7_proportion_3dp"),
        ]
        .join(","));
        out.push('\n');
    }
    out
}

/// Runs a parsed command and renders its output document.
pub fn run(cli: &Cli) -> (i32, String) {
    let config = config_for(&cli.command, &cli.common);
    let start = Instant::now();
    let guards = Guards {
        max_codewords: cli.common.max_codewords,
        max_census_classes: cli.common.max_census_classes,
        max_optimality_checks: cli.common.max_optimality_checks,
        deadline: (cli.common.time_limit > 0).then(|| start + Duration::from_secs(cli.common.time_limit)),
    };
    let result = if cli.common.format == Format::Csv && !matches!(cli.command, Command::Table1) {
        Err(CliError::Usage("--format csv is only available for table1".into()))
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.threads.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Other(e.to_string()));
        pool.and_then(|p| p.install(|| dispatch(&cli.command, &guards)))
    };
    let mut doc = json!({ "schema": SCHEMA, "command": config.command, "config": to_value(&config) });
    if cli.common.timing {
        doc["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    match result {
        Ok(v) if cli.common.format == Format::Csv => (0, table1_csv(&v)),
        Ok(v) => {
            doc["result"] = v;
            (0, serde_json::to_string_pretty(&doc).expect("json") + "\n")
        }
        Err(e) => {
            doc["error"] = json!({ "kind": e.kind(), "message": e.message() });
            (e.exit_code(), serde_json::to_string_pretty(&doc).expect("json") + "\n")
        }
    }
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (code, text) = run(&cli);
    match &cli.common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    if code != 0 {
        eprintln!("rs-insdel: exit {code}");
    }
    code
}
