//! `antilin` — construct, verify, and search for maximal sets of mutually
//! orthogonal (skew) conjugations on ℂᵈ.

mod formats;

use std::path::{Path, PathBuf};
use std::process;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use antilin::basis::{gram, signature, space_dims};
use antilin::construct::{fourier_set, max_sets, OrthoSet, SetKind};
use antilin::search::{
    assemble_report, explore_dimension, run_restart, search_with, Budget, SearchConfig,
    SearchReport, Stopwatch, Strategy, ACHIEVED_TOL,
};
use antilin::AntiLinearOp;

use formats::{
    gram_to_csv, write_text, CertificateDto, OperatorSetFile, SearchReportDto, SCHEMA_VERSION,
};

/// Largest dimension accepted without --force.
const DIM_GUARD: usize = 64;

/// Error carrying the process exit code: 2 for invalid requests, 3 for I/O,
/// parse, and data-access problems.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

struct StdStopwatch(Instant);

impl StdStopwatch {
    fn new() -> Self {
        Self(Instant::now())
    }
}

impl Stopwatch for StdStopwatch {
    fn elapsed_s(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

#[derive(Parser)]
#[command(
    name = "antilin",
    version,
    about = "Orthogonal conjugations and skew conjugations on finite-dimensional complex Hilbert spaces",
    long_about = "Construct, verify, and numerically search for maximal sets of mutually \
orthogonal conjugations (symmetric unitaries) and skew conjugations (antisymmetric \
unitaries) under the canonical Hermitian form (a, b) = Tr(b ∘ a).\n\n\
Exit codes: 0 success; 1 a verification or search did not succeed; 2 invalid \
request; 3 I/O, parse, or data-access failure.\n\n\
The ANTILIN_SEED environment variable provides the default seed for `search` \
and `range` when --seed is not given."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write explicit orthogonal sets (power-of-two maximal sets, or the
    /// diagonal Fourier baseline) as JSON files.
    Construct(ConstructArgs),
    /// Check a JSON operator set: structure, unitarity, and Gram orthogonality.
    Verify(VerifyArgs),
    /// Seeded gradient-descent search for k mutually orthogonal operators.
    Search(SearchArgs),
    /// Print subspace dimensions d(d±1)/2 and the signature of the canonical form.
    Signature(SignatureArgs),
    /// Sample the numerical range {⟨φ, ϑφ⟩ : ‖φ‖ = 1} of one stored operator.
    Range(RangeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Conjugation,
    Skew,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SearchKindArg {
    Conjugation,
    Skew,
}

impl SearchKindArg {
    fn to_kind(self) -> SetKind {
        match self {
            SearchKindArg::Conjugation => SetKind::Conjugation,
            SearchKindArg::Skew => SetKind::Skew,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Tensor recursion over the d = 2 quadruple; saturates d(d±1)/2 at d = 2ⁿ.
    Power2,
    /// Diagonal Fourier conjugations diag(ω^{jk}); size d at any d.
    Fourier,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Joint,
    Greedy,
}

impl StrategyArg {
    fn to_strategy(self) -> Strategy {
        match self {
            StrategyArg::Joint => Strategy::Joint,
            StrategyArg::Greedy => Strategy::Greedy,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    /// Hilbert-space dimension d.
    #[arg(short, long)]
    dim: usize,
    /// Which set(s) to write.
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    kind: KindArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Power2)]
    method: MethodArg,
    /// Output stem; writes {stem}.conj.json and/or {stem}.skew.json.
    #[arg(short, long)]
    out: PathBuf,
    /// Validation tolerance recorded in the files.
    #[arg(long, default_value_t = antilin::DEFAULT_TOL)]
    tol: f64,
    /// Allow dimensions above 64.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Operator-set JSON file (kind must be conjugation or skew).
    #[arg(short, long)]
    input: PathBuf,
    /// Verification tolerance; defaults to the tolerance stored in the file.
    #[arg(long)]
    tol: Option<f64>,
    /// Also write the Gram matrix of the canonical form as CSV.
    #[arg(long)]
    gram_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Hilbert-space dimension d.
    #[arg(short, long)]
    dim: usize,
    #[arg(long, value_enum)]
    kind: SearchKindArg,
    /// Number of mutually orthogonal operators to search for.
    #[arg(short = 'k', long, conflicts_with_all = ["k_min", "k_max"])]
    target_k: Option<usize>,
    /// Sweep: search every k from here to --k-max.
    #[arg(long, requires = "k_max")]
    k_min: Option<usize>,
    /// Sweep upper bound (inclusive).
    #[arg(long, requires = "k_min")]
    k_max: Option<usize>,
    /// Master seed; restart r derives its own stream from it.
    #[arg(long, env = "ANTILIN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    /// Iteration budget per descent.
    #[arg(long, default_value_t = 2000)]
    max_iters: u32,
    /// Initial Armijo step size.
    #[arg(long, default_value_t = 0.1)]
    step_size: f64,
    /// Loss at or below which the search succeeds.
    #[arg(long, default_value_t = 1e-12)]
    tol_loss: f64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Joint)]
    strategy: StrategyArg,
    /// Run restarts in parallel; the report is byte-identical to a
    /// sequential run with the same seed.
    #[arg(long, conflicts_with = "max_seconds")]
    parallel: bool,
    /// Wall-clock budget in seconds, honored between restarts and sweep steps.
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Witness stem: successful sets are written to {stem}.set.json, or
    /// {stem}.k{K}.set.json in a sweep.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Also write the report JSON (same bytes as stdout) to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Allow dimensions above 64.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SignatureArgs {
    /// Hilbert-space dimension d.
    #[arg(short, long)]
    dim: usize,
}

#[derive(Args)]
struct RangeArgs {
    /// Operator-set JSON file (any kind, including general).
    #[arg(short, long)]
    input: PathBuf,
    /// Zero-based index of the operator within the file.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Number of random unit vectors to sample.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, env = "ANTILIN_SEED", default_value_t = 0)]
    seed: u64,
    /// Also write the sampled values as CSV lines `re,im`.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Dies quietly on SIGPIPE, like other line-oriented tools, instead of
/// panicking when a downstream reader (head, jq -e, ...) closes early.
fn reset_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Search(args) => cmd_search(&args),
        Command::Signature(args) => cmd_signature(&args),
        Command::Range(args) => cmd_range(&args),
    };
    match outcome {
        Ok(code) => process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            process::exit(e.code);
        }
    }
}

fn guard_dim(dim: usize, force: bool) -> Result<(), CliError> {
    if dim == 0 {
        return Err(CliError::invalid("dimension must be at least 1"));
    }
    if dim > DIM_GUARD && !force {
        return Err(CliError::invalid(format!(
            "dimension {dim} exceeds {DIM_GUARD}; pass --force to proceed"
        )));
    }
    Ok(())
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut name = stem.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(suffix);
    stem.with_file_name(name)
}

fn write_set_file(set: &OrthoSet, tol: f64, path: &Path) -> Result<(), CliError> {
    OperatorSetFile::from_ortho_set(set, tol).save(path)?;
    println!(
        "wrote {}: {} {}(s) at dim {} [{}], bound d(d{})/2 = {}",
        path.display(),
        set.len(),
        set.kind().label(),
        set.dim(),
        set.meta(),
        if set.kind().bound_sign() == '+' { "+1" } else { "-1" },
        set.kind().bound(set.dim())
    );
    Ok(())
}

fn cmd_construct(args: &ConstructArgs) -> Result<i32, CliError> {
    guard_dim(args.dim, args.force)?;
    if !(args.tol > 0.0) || !args.tol.is_finite() {
        return Err(CliError::invalid("--tol must be positive and finite"));
    }
    match args.method {
        MethodArg::Power2 => {
            let (conj, skew) =
                max_sets(args.dim).map_err(|e| CliError::invalid(e.to_string()))?;
            if args.kind != KindArg::Skew {
                write_set_file(&conj, args.tol, &with_suffix(&args.out, ".conj.json"))?;
            }
            if args.kind != KindArg::Conjugation {
                write_set_file(&skew, args.tol, &with_suffix(&args.out, ".skew.json"))?;
            }
        }
        MethodArg::Fourier => {
            if args.kind != KindArg::Conjugation {
                return Err(CliError::invalid(
                    "the Fourier baseline provides conjugations only; use --kind conjugation",
                ));
            }
            let set =
                fourier_set(args.dim).map_err(|e| CliError::invalid(e.to_string()))?;
            write_set_file(&set, args.tol, &with_suffix(&args.out, ".conj.json"))?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let file = OperatorSetFile::load(&args.input)?;
    let kind = file.set_kind()?.ok_or_else(|| {
        CliError::invalid(
            "cannot verify a set of kind \"general\"; expected conjugation or skew",
        )
    })?;
    let tol = args.tol.unwrap_or(file.tol);
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(CliError::invalid("tolerance must be positive and finite"));
    }
    let mats = file.matrices()?;
    let cert = antilin::search::verify_matrices(kind, &mats, tol)
        .map_err(|e| CliError::data(e.to_string()))?;
    print!("{}", CertificateDto::from_certificate(&cert).to_json()?);

    if let Some(csv_path) = &args.gram_csv {
        let ops: Result<Vec<AntiLinearOp>, _> =
            mats.iter().map(|m| AntiLinearOp::new(m.clone())).collect();
        let ops = ops.map_err(|e| CliError::data(e.to_string()))?;
        let g = gram(&ops).map_err(|e| CliError::data(e.to_string()))?;
        write_text(csv_path, &gram_to_csv(&g))?;
        eprintln!("wrote Gram matrix to {}", csv_path.display());
    }

    if !cert.passed {
        if kind == SetKind::Skew && file.dim % 2 == 1 {
            eprintln!(
                "note: no skew conjugation exists at odd dimension {}: an antisymmetric \
                 matrix M of odd size has det M = det Mᵀ = det(−M) = −det M = 0, so M \
                 cannot be unitary",
                file.dim
            );
        }
        eprintln!(
            "verification FAILED at tol {tol:.3e}: structure {:.3e}, unitarity {:.3e}, \
             offdiag {:.3e}, diag {:.3e}",
            cert.max_structure_residual,
            cert.max_unitarity_residual,
            cert.max_offdiag_gram,
            cert.max_diag_deviation
        );
        return Ok(1);
    }
    eprintln!(
        "verified {} {}(s) at dim {} within tol {tol:.3e}",
        cert.size,
        kind.label(),
        cert.dim
    );
    Ok(0)
}

fn build_config(args: &SearchArgs, target_k: usize) -> Result<SearchConfig, CliError> {
    let cfg = SearchConfig {
        dim: args.dim,
        kind: args.kind.to_kind(),
        target_k,
        restarts: args.restarts,
        max_iters: args.max_iters,
        step_size: args.step_size,
        tol_loss: args.tol_loss,
        seed: args.seed,
        strategy: args.strategy.to_strategy(),
    };
    cfg.validate().map_err(|e| CliError::invalid(e.to_string()))?;
    Ok(cfg)
}

fn parallel_search(cfg: &SearchConfig, stopwatch: &StdStopwatch) -> SearchReport {
    let t0 = stopwatch.elapsed_s();
    let outcomes: Vec<_> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, r))
        .collect();
    assemble_report(cfg, outcomes, stopwatch.elapsed_s() - t0, false, "search")
}

fn emit_witness(
    report: &SearchReport,
    out: &Option<PathBuf>,
    suffix: &str,
) -> Result<(), CliError> {
    if let (Some(stem), Some(set)) = (out, &report.achieved) {
        let path = with_suffix(stem, suffix);
        OperatorSetFile::from_ortho_set(set, ACHIEVED_TOL).save(&path)?;
        eprintln!("wrote witness {}", path.display());
    }
    Ok(())
}

fn cmd_search(args: &SearchArgs) -> Result<i32, CliError> {
    guard_dim(args.dim, args.force)?;
    let stopwatch = StdStopwatch::new();

    if let (Some(k_min), Some(k_max)) = (args.k_min, args.k_max) {
        if args.parallel {
            return Err(CliError::invalid(
                "--parallel applies to single-target searches; sweeps run sequentially",
            ));
        }
        let base = build_config(args, k_max)?;
        let budget = Budget {
            max_seconds: args.max_seconds,
        };
        let reports = explore_dimension(&base, k_min, k_max, &budget, &stopwatch)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        let dtos: Vec<SearchReportDto> =
            reports.iter().map(SearchReportDto::from_report).collect();
        let mut json = serde_json::to_string_pretty(&dtos)
            .map_err(|e| CliError::data(format!("cannot serialize reports: {e}")))?;
        json.push('\n');
        print!("{json}");
        if let Some(path) = &args.report {
            write_text(path, &json)?;
        }
        let mut all_ok = reports.len() == k_max - k_min + 1;
        for report in &reports {
            emit_witness(
                report,
                &args.out,
                &format!(".k{}.set.json", report.config.target_k),
            )?;
            eprintln!(
                "k={}: best loss {:.3e} over {} restart(s), {}",
                report.config.target_k,
                report.best_loss,
                report.per_restart_losses.len(),
                if report.succeeded() { "succeeded" } else { "failed" }
            );
            all_ok &= report.succeeded();
        }
        return Ok(if all_ok { 0 } else { 1 });
    }

    let target_k = args.target_k.ok_or_else(|| {
        CliError::invalid("specify --target-k, or both --k-min and --k-max for a sweep")
    })?;
    let cfg = build_config(args, target_k)?;
    let report = if args.parallel {
        parallel_search(&cfg, &stopwatch)
    } else {
        search_with(&cfg, &stopwatch, args.max_seconds)
            .map_err(|e| CliError::invalid(e.to_string()))?
    };
    let json = SearchReportDto::from_report(&report).to_json()?;
    print!("{json}");
    if let Some(path) = &args.report {
        write_text(path, &json)?;
    }
    emit_witness(&report, &args.out, ".set.json")?;
    eprintln!(
        "{} {} {}(s) at dim {}: best loss {:.3e} over {} restart(s) in {:.2}s",
        if report.succeeded() { "found" } else { "did not find" },
        cfg.target_k,
        cfg.kind.label(),
        cfg.dim,
        report.best_loss,
        report.per_restart_losses.len(),
        report.wall_time_s
    );
    Ok(if report.succeeded() { 0 } else { 1 })
}

fn cmd_signature(args: &SignatureArgs) -> Result<i32, CliError> {
    if args.dim == 0 {
        return Err(CliError::invalid("dimension must be at least 1"));
    }
    let (plus, minus) = space_dims(args.dim);
    let body = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "dim": args.dim,
        "plus_dim": plus,
        "minus_dim": minus,
        "total": plus + minus,
        "signature": signature(args.dim),
        "conjugation_bound": SetKind::Conjugation.bound(args.dim),
        "skew_bound": SetKind::Skew.bound(args.dim),
    });
    let mut json = serde_json::to_string_pretty(&body)
        .map_err(|e| CliError::data(format!("cannot serialize: {e}")))?;
    json.push('\n');
    print!("{json}");
    Ok(0)
}

fn cmd_range(args: &RangeArgs) -> Result<i32, CliError> {
    let file = OperatorSetFile::load(&args.input)?;
    let mats = file.matrices()?;
    if args.index >= mats.len() {
        return Err(CliError::data(format!(
            "index {} out of range: {} holds {} matrices",
            args.index,
            args.input.display(),
            mats.len()
        )));
    }
    let op = AntiLinearOp::new(mats[args.index].clone())
        .map_err(|e| CliError::data(e.to_string()))?;
    let est = antilin::op::numerical_range_samples(&op, args.samples, args.seed)
        .map_err(|e| CliError::invalid(e.to_string()))?;
    let samples: Vec<[f64; 2]> = est.samples.iter().map(|z| [z.re, z.im]).collect();
    let body = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "dim": file.dim,
        "index": args.index,
        "seed": args.seed,
        "radius_estimate": est.radius_estimate,
        "phase_covariance_residual": est.phase_covariance_residual,
        "samples": samples,
    });
    let mut json = serde_json::to_string_pretty(&body)
        .map_err(|e| CliError::data(format!("cannot serialize: {e}")))?;
    json.push('\n');
    print!("{json}");
    if let Some(path) = &args.csv {
        let mut csv = String::new();
        for z in &est.samples {
            csv.push_str(&format!("{:.16e},{:.16e}\n", z.re, z.im));
        }
        write_text(path, &csv)?;
    }
    Ok(0)
}
