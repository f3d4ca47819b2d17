//! `seqprod`: run law audits, the characterization demos, and spectral
//! decompositions from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use seqprod_audit::{
    characterization_rows, run_full_suite, AuditError, AuditReport, ErrorKind, Expectation, LawId, SuiteConfig,
    SuiteRow, Verdict, DEFAULT_TRIALS,
};
use seqprod_core::json::{decomposition_to_value, element_from_str, element_to_value};
use seqprod_core::spectral::{spectral_decompose, DEFAULT_GAP};
use seqprod_core::{AlgebraDescriptor, Element, Error as CoreError, ProductSpec, SequentialProduct};

#[derive(Parser)]
#[command(name = "seqprod", about = "Sequential products on Euclidean Jordan algebras", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit laws from a config file or an ad-hoc row set.
    Audit(AuditArgs),
    /// Run a canned demonstration.
    Demo {
        #[arg(value_enum)]
        which: Demo,
        #[command(flatten)]
        common: Common,
    },
    /// Print the spectral decomposition of an element read from JSON.
    Decompose {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Eigenvalues closer than this are merged.
        #[arg(long, default_value_t = DEFAULT_GAP)]
        gap: f64,
    },
    /// Print the version.
    Version,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Demo {
    /// Twisted products violating invariance, symmetry and inverse preservation.
    Characterizations,
}

#[derive(Args)]
struct Common {
    /// Suite seed; rows with their own seed keep it.
    #[arg(long, env = "SEQPROD_SEED")]
    seed: Option<u64>,
    /// Write the JSON report here.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["config", "algebra"])))]
struct AuditArgs {
    #[arg(long, value_name = "FILE", conflicts_with_all = ["product", "laws", "trials"])]
    config: Option<PathBuf>,
    /// Algebra shorthand: real:n, complex:n, quat:n, spin:d or sum(a,b,...).
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, default_value = "standard")]
    product: String,
    /// Comma-separated law names, or `all`.
    #[arg(long, default_value = "all")]
    laws: String,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Overrides every row's tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    common: Common,
}

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exit {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    Numerical = 3,
}

/// A one-line diagnostic plus the status it maps to.
struct Failure {
    exit: Exit,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { exit: Exit::Usage, message: message.into() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let exit = match e {
            CoreError::NumericalFailure { .. } => Exit::Numerical,
            _ => Exit::Usage,
        };
        Self { exit, message: e.to_string() }
    }
}

impl From<AuditError> for Failure {
    fn from(e: AuditError) -> Self {
        match e {
            AuditError::Core(c) => c.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

type CliResult = Result<Exit, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(cli.command) {
        Ok(exit) => exit,
        Err(f) => {
            eprintln!("seqprod: {}", f.message);
            f.exit
        }
    };
    ExitCode::from(status as u8)
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Audit(args) => audit(args),
        Command::Demo { which: Demo::Characterizations, common } => demo(common),
        Command::Decompose { input, out, gap } => decompose(&input, out.as_deref(), gap),
        Command::Version => {
            println!("seqprod {}", env!("CARGO_PKG_VERSION"));
            Ok(Exit::Ok)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn audit(args: AuditArgs) -> CliResult {
    let mut config = match &args.config {
        Some(path) => SuiteConfig::from_json(&read(path)?)?,
        None => adhoc_config(&args)?,
    };
    if let Some(seed) = args.common.seed {
        config.seed = seed;
    }
    if let Some(tol) = args.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure::usage(format!("--tol must be positive, got {tol}")));
        }
        config.tol = Some(tol);
    }
    let report = run_full_suite(&config);
    print!("{}", report.table());
    finish(&report, args.common.out.as_deref())
}

fn adhoc_config(args: &AuditArgs) -> Result<SuiteConfig, Failure> {
    let shorthand = args.algebra.as_deref().unwrap_or_default();
    let algebra: AlgebraDescriptor = shorthand.parse().map_err(|e: CoreError| Failure::usage(e.to_string()))?;
    let product: ProductSpec = args.product.parse().map_err(|e: CoreError| Failure::usage(e.to_string()))?;
    // reject unsupported combinations before running anything
    SequentialProduct::<f64>::new(product, algebra.clone())?;
    if args.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let laws = LawId::parse_list(&args.laws)?;
    let rows = laws
        .into_iter()
        .map(|law| SuiteRow { trials: args.trials, ..SuiteRow::new(law, product, algebra.clone()) })
        .collect();
    Ok(SuiteConfig::new(0, rows))
}

fn demo(common: Common) -> CliResult {
    let config = SuiteConfig::new(common.seed.unwrap_or(0), characterization_rows());
    let report = run_full_suite(&config);
    for e in report.entries.iter().filter(|e| e.expected == Expectation::Fail) {
        println!("== {} under {} on {} ==", e.law.name(), e.product, e.algebra);
        println!("   {}", e.law.statement());
        match &e.witness {
            Some(w) => {
                println!("   violated at trial {} (seed {}), residual {:.6e}", w.trial, w.seed, w.residual);
                if let Some(iso) = &w.inputs.iso {
                    println!("   isomorphism: {iso}");
                }
                for (name, x) in &w.inputs.elements {
                    println!("   {name} = {}", element_to_value(x));
                }
            }
            None => println!("   no violation found in {} trials (max residual {:.3e})", e.trials, e.max_residual),
        }
        println!();
    }
    print!("{}", report.table());
    finish(&report, common.out.as_deref())
}

/// Writes the report and maps its outcome to an exit status.
fn finish(report: &AuditReport, out: Option<&Path>) -> CliResult {
    if let Some(path) = out {
        write(path, &report.to_json())?;
    }
    let kinds: Vec<ErrorKind> = report.entries.iter().filter_map(|e| e.error.as_ref().map(|err| err.kind)).collect();
    if kinds.contains(&ErrorKind::Capability) {
        let first = report.entries.iter().find_map(|e| e.error.as_ref().filter(|err| err.kind == ErrorKind::Capability));
        return Err(Failure::usage(first.map(|err| err.message.clone()).unwrap_or_default()));
    }
    if kinds.contains(&ErrorKind::Numerical) {
        return Err(Failure { exit: Exit::Numerical, message: "numerical failure during audit".into() });
    }
    if report.passed() {
        Ok(Exit::Ok)
    } else {
        let bad = report.entries.iter().filter(|e| !e.as_expected()).count();
        let unexpected_pass = report
            .entries
            .iter()
            .filter(|e| e.expected == Expectation::Fail && e.verdict == Verdict::Pass)
            .count();
        eprintln!("seqprod: {bad} rows not as expected ({unexpected_pass} expected violations not found)");
        Ok(Exit::Mismatch)
    }
}

fn decompose(input: &Path, out: Option<&Path>, gap: f64) -> CliResult {
    if !(gap > 0.0 && gap.is_finite()) {
        return Err(Failure::usage(format!("--gap must be positive, got {gap}")));
    }
    let element: Element<f64> = element_from_str(&read(input)?)?;
    let dec = spectral_decompose(&element, gap)?;
    println!("spectral decomposition on {}: {} distinct eigenvalues", element.algebra(), dec.len());
    for (lambda, p) in dec.pairs() {
        let rank = seqprod_core::algebra::trace_inner_product(p, p)?.round();
        println!("  {lambda:>22.15e}  rank {rank}  {}", element_to_value(p));
    }
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&decomposition_to_value(&dec))
            .map_err(|e| Failure::usage(e.to_string()))?;
        write(path, &text)?;
    }
    Ok(Exit::Ok)
}
