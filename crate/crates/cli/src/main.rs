//! `opmeans`: compute operator means, run verification suites, check
//! quadrature and generate seeded SPD ensembles.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage, input or
//! domain errors. Diagnostics go to standard error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opmeans::io::{parse_matrix_json, write_matrix_json};
use opmeans::means::{GeometricPath, DEFAULT_LOG_MEAN_NODES};
use opmeans::quadrature::{mu_rule, nu_rule, PowerBand, DEFAULT_NODES};
use opmeans::verify::{band_grid, SCALAR_X_GRID};
use opmeans::{
    heinz, heron, logarithmic_mean, random_spd, scalar_power_integral, spectral_decompose, weighted_arithmetic,
    weighted_geometric, weighted_harmonic, EnsembleConfig, HermitianMatrix, QuadratureRule, Representation,
    SuiteId, Verifier,
};

const SCALAR_TOLERANCE: f64 = 1e-7;
const MASS_TOLERANCE: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "opmeans", version, about = "Operator means on symmetric positive definite matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a mean of two matrices read from JSON files.
    Mean(MeanArgs),
    /// Run a randomized verification suite.
    Verify(VerifyArgs),
    /// Tabulate scalar integral representations against x^r.
    Quadcheck(QuadcheckArgs),
    /// Write a seeded ensemble of SPD matrices.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MeanKind {
    Arithmetic,
    Harmonic,
    Geometric,
    Heinz,
    Heron,
    Logarithmic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct MeanArgs {
    #[arg(long, value_enum)]
    kind: MeanKind,
    /// Weight of the mean (`--nu` is an alias).
    #[arg(long, visible_alias = "nu", allow_negative_numbers = true)]
    r: Option<f64>,
    /// Gauss-Legendre nodes for the logarithmic mean.
    #[arg(long, default_value_t = DEFAULT_LOG_MEAN_NODES)]
    nodes: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(num_args = 2, required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct EnsembleArgs {
    #[arg(long, default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    lmin: f64,
    #[arg(long, default_value_t = 10.0)]
    lmax: f64,
}

impl EnsembleArgs {
    fn config(&self) -> EnsembleConfig {
        EnsembleConfig::new(self.dim, self.lmin, self.lmax, self.trials, self.seed)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Gauss-Jacobi nodes of the integral consistency suite.
    #[arg(long, default_value_t = 128)]
    nodes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct QuadcheckArgs {
    #[arg(long, default_value_t = DEFAULT_NODES)]
    nodes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Directory receiving `matrix_NNNN.json` files.
    #[arg(long)]
    out: PathBuf,
}

/// Failure carrying the exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

type CliResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    let result = match cli.command {
        Command::Mean(args) => cmd_mean(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Quadcheck(args) => cmd_quadcheck(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Applies `OPMEANS_THREADS`; `0` runs serially.
fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("OPMEANS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| usage(format!("OPMEANS_THREADS must be a nonnegative integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global()
        .map_err(|e| usage(format!("cannot configure thread pool: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write to standard output: {e}"))),
    }
}

fn read_matrix(path: &Path) -> Result<HermitianMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_mean(args: MeanArgs) -> CliResult {
    let a = read_matrix(&args.inputs[0])?;
    let b = read_matrix(&args.inputs[1])?;
    let param = || args.r.ok_or_else(|| usage("this mean requires --r/--nu"));
    let result = match args.kind {
        MeanKind::Arithmetic => weighted_arithmetic(&a, &b, param()?),
        MeanKind::Harmonic => weighted_harmonic(&a, &b, param()?),
        MeanKind::Geometric => weighted_geometric(&a, &b, param()?),
        MeanKind::Heinz => heinz(&a, &b, param()?),
        MeanKind::Heron => heron(&a, &b, param()?),
        MeanKind::Logarithmic => QuadratureRule::gauss_legendre(args.nodes).and_then(|rule| logarithmic_mean(&a, &b, &rule)),
    }
    .map_err(usage)?;
    warn_if_ill_conditioned(args.kind, &a, &b);
    emit(args.out.as_deref(), &write_matrix_json(&result))?;
    Ok(ExitCode::SUCCESS)
}

fn warn_if_ill_conditioned(kind: MeanKind, a: &HermitianMatrix, b: &HermitianMatrix) {
    let inputs_bad = [a, b]
        .iter()
        .any(|m| spectral_decompose(m).is_ok_and(|s| s.is_ill_conditioned()));
    let path_bad = match kind {
        MeanKind::Geometric | MeanKind::Heinz | MeanKind::Heron | MeanKind::Logarithmic => {
            GeometricPath::new(a, b).is_ok_and(|p| p.is_ill_conditioned())
        }
        MeanKind::Arithmetic | MeanKind::Harmonic => false,
    };
    if inputs_bad || path_bad {
        eprintln!("warning: ill-conditioned input (eigenvalue ratio above 1e12); result may be inaccurate");
    }
}

fn cmd_verify(args: VerifyArgs) -> CliResult {
    let suite: SuiteId = args.suite.parse().map_err(usage)?;
    let config = args.ensemble.config();
    let verifier = Verifier {
        integral_nodes: args.nodes,
        ..Verifier::default()
    };
    let report = verifier.run(suite, &config).map_err(usage)?;
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => to_csv(&report.check_summaries())?,
    };
    emit(args.out.as_deref(), &text)?;
    let s = report.summary;
    eprintln!(
        "{suite}: {} pass, {} fail, {} domain-violation, worst violation {:.3e}",
        s.pass, s.fail, s.domain_violation, report.worst_violation
    );
    for o in report.failures().take(5) {
        eprintln!(
            "fail: {} trial {} seed {} parameters {:?} magnitude {:.3e}",
            o.check_id, o.trial, o.seed, o.parameters, o.violation_magnitude
        );
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| usage(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| usage(format!("csv: {e}")))
}

#[derive(Serialize)]
struct QuadRow {
    row: &'static str,
    variant: String,
    x: Option<f64>,
    r: f64,
    value: Option<f64>,
    error: Option<f64>,
    within_tolerance: bool,
}

fn cmd_quadcheck(args: QuadcheckArgs) -> CliResult {
    if args.nodes < 4 {
        return Err(usage(format!("--nodes must be at least 4, got {}", args.nodes)));
    }
    let k = args.nodes;
    let mut rows = Vec::new();
    for rep in Representation::ALL {
        for r in band_grid(rep.band) {
            for &x in &SCALAR_X_GRID {
                let value = scalar_power_integral(x, r, rep, k).ok();
                let error = value.map(|v| (v - x.powf(r)).abs());
                rows.push(QuadRow {
                    row: "scalar",
                    variant: rep.id(),
                    x: Some(x),
                    r,
                    value,
                    error,
                    within_tolerance: error.is_some_and(|e| e <= SCALAR_TOLERANCE),
                });
            }
        }
    }
    let measures = [("mu", PowerBand::Superlinear, mu_rule as fn(f64, usize) -> _), ("nu", PowerBand::Negative, nu_rule)];
    for (variant, band, rule) in measures {
        for r in band_grid(band) {
            let m = rule(r, k).ok().map(|q: QuadratureRule| q.total_mass());
            let error = m.map(|m| (m - 1.0).abs());
            rows.push(QuadRow {
                row: "mass",
                variant: variant.to_string(),
                x: None,
                r,
                value: m,
                error,
                within_tolerance: error.is_some_and(|e| e <= MASS_TOLERANCE),
            });
        }
    }
    let text = match args.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).map_err(|e| usage(format!("json: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(args.out.as_deref(), &text)?;
    let bad = rows.iter().filter(|r| !r.within_tolerance).count();
    eprintln!("quadcheck with {k} nodes: {} rows, {bad} outside tolerance", rows.len());
    Ok(if bad == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_gen(args: GenArgs) -> CliResult {
    let config = args.ensemble.config();
    config.validate().map_err(usage)?;
    fs::create_dir_all(&args.out).map_err(|e| usage(format!("cannot create {}: {e}", args.out.display())))?;
    for t in 0..config.trials {
        let m = random_spd(&config, t).map_err(usage)?;
        let path = args.out.join(format!("matrix_{t:04}.json"));
        emit(Some(&path), &write_matrix_json(&m))?;
    }
    Ok(ExitCode::SUCCESS)
}
