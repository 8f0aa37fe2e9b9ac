//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 degenerate input
//! (a test set or query with an absent class).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ovalue::error::{Error, Result};
use ovalue::report::{
    self, compare, emit_ops_curve, emit_oprc, evaluate, load_predictions, parse_metric_list,
    EvaluationRequest, MetricSpec, OpsConfig, ReportFormat, TestsetSpec,
};

#[derive(Parser)]
#[command(
    name = "ovalue",
    version,
    about = "O-values: prevalence-adjusted percentile ranks for classification metrics",
    long_about = "Computes classification metrics together with their o-values: the \
                  probability that a random reference classifier, conditioned on the \
                  test set's prevalence, performs strictly worse. O-values from test \
                  sets with different class balances are directly comparable."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate metrics and their o-values on one test set
    Evaluate(EvaluateArgs),
    /// Compare test sets against one shared reference pool
    Compare(CompareArgs),
    /// Emit o-values over a grid of nominal values, per prevalence
    OpsCurve(OpsCurveArgs),
    /// Emit the outperformance precision-recall curve of a test set
    Oprc(OprcArgs),
}

#[derive(Args)]
struct PoolOpts {
    /// Reference tree depth
    #[arg(long, default_value_t = 6)]
    depth: u32,
    /// Reference pool size
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Seed for all randomized computation
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Grid resolution for labeling o-values
    #[arg(long, default_value_t = 2000)]
    grid: u32,
    /// Reuse or store the reference pool at this path
    #[arg(long, value_name = "PATH")]
    pool_cache: Option<PathBuf>,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatOpt::Table)]
    format: FormatOpt,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatOpt {
    Json,
    Csv,
    Table,
}

impl From<FormatOpt> for ReportFormat {
    fn from(f: FormatOpt) -> Self {
        match f {
            FormatOpt::Json => ReportFormat::Json,
            FormatOpt::Csv => ReportFormat::Csv,
            FormatOpt::Table => ReportFormat::Table,
        }
    }
}

#[derive(Args)]
struct InputOpts {
    /// Force the field delimiter (auto-detected between comma and tab)
    #[arg(long, value_parser = parse_delimiter, value_name = "CHAR")]
    delimiter: Option<u8>,
}

fn parse_delimiter(s: &str) -> std::result::Result<u8, String> {
    match s {
        "," => Ok(b','),
        "\t" | "tab" => Ok(b'\t'),
        ";" => Ok(b';'),
        other => Err(format!("unsupported delimiter '{other}' (use ',', ';', or 'tab')")),
    }
}

#[derive(Args)]
struct EvaluateArgs {
    /// Prediction file with header columns `label` (0/1) and `score`
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Test-set name shown in the report (default: the file stem)
    #[arg(long)]
    name: Option<String>,
    /// Comma-separated list: recall, precision, f1, mcc, auc:<kind>,
    /// nauc:<kind>, point:<kind>@<x> with kind one of roc, prc, lift, gain
    #[arg(long, value_name = "LIST")]
    metrics: String,
    /// Decision threshold for labeling metrics
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    /// Evaluate as if prevalence were this value (recorded in the report)
    #[arg(long, value_name = "PI")]
    pi_override: Option<f64>,
    #[command(flatten)]
    pool: PoolOpts,
    #[command(flatten)]
    input_opts: InputOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct CompareArgs {
    /// Named test set as NAME=PATH; give at least twice
    #[arg(long = "compare", value_name = "NAME=PATH", required = true)]
    compare: Vec<String>,
    /// Comma-separated metric list (see `evaluate --help`)
    #[arg(long, value_name = "LIST")]
    metrics: String,
    /// Decision threshold for labeling metrics
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    /// Evaluate every set as if prevalence were this value
    #[arg(long, value_name = "PI")]
    pi_override: Option<f64>,
    #[command(flatten)]
    pool: PoolOpts,
    #[command(flatten)]
    input_opts: InputOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct OpsCurveArgs {
    /// Metric whose o-value curve to emit: a labeling metric, auc:<kind>,
    /// or nauc:<kind>
    #[arg(long)]
    metric: String,
    /// Comma-separated prevalences
    #[arg(long, default_value = "0.1,0.5", value_name = "LIST")]
    pi: String,
    /// Number of equally spaced nominal values
    #[arg(long, default_value_t = 101)]
    mu_points: usize,
    /// Nominal value range as LO:HI (default: the metric's codomain)
    #[arg(long, value_name = "LO:HI")]
    mu_range: Option<String>,
    #[command(flatten)]
    pool: PoolOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct OprcArgs {
    /// Prediction file with header columns `label` (0/1) and `score`
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Comma-separated recall grid
    #[arg(
        long,
        default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
        value_name = "LIST"
    )]
    recall_grid: String,
    #[command(flatten)]
    pool: PoolOpts,
    #[command(flatten)]
    input_opts: InputOpts,
    #[command(flatten)]
    output: OutputOpts,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(text) => print!("{text}"),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Evaluate(args) => run_evaluate(args),
        Command::Compare(args) => run_compare(args),
        Command::OpsCurve(args) => run_ops_curve(args),
        Command::Oprc(args) => run_oprc(args),
    }
}

fn default_name(path: &std::path::Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "testset".to_string())
}

fn apply_pool_opts(request: &mut EvaluationRequest, pool: &PoolOpts) {
    request.depth = pool.depth;
    request.samples = pool.samples;
    request.seed = pool.seed;
    request.grid_resolution = pool.grid;
    request.pool_cache = pool.pool_cache.clone();
}

fn run_evaluate(args: EvaluateArgs) -> Result<String> {
    let name = args.name.unwrap_or_else(|| default_name(&args.input));
    let mut request = EvaluationRequest::new(
        vec![TestsetSpec {
            name,
            path: args.input,
        }],
        parse_metric_list(&args.metrics)?,
    );
    request.threshold = args.threshold;
    request.pi_override = args.pi_override;
    request.delimiter = args.input_opts.delimiter;
    apply_pool_opts(&mut request, &args.pool);
    let report = evaluate(&request)?;
    Ok(report::render_report(&report, args.output.format.into()))
}

fn run_compare(args: CompareArgs) -> Result<String> {
    let testsets = args
        .compare
        .iter()
        .map(|entry| {
            let (name, path) = entry.split_once('=').ok_or_else(|| {
                Error::InvalidRequest(format!(
                    "--compare expects NAME=PATH, got '{entry}'"
                ))
            })?;
            if name.is_empty() {
                return Err(Error::InvalidRequest(format!(
                    "empty test-set name in '{entry}'"
                )));
            }
            Ok(TestsetSpec {
                name: name.to_string(),
                path: PathBuf::from(path),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut request = EvaluationRequest::new(testsets, parse_metric_list(&args.metrics)?);
    request.threshold = args.threshold;
    request.pi_override = args.pi_override;
    request.delimiter = args.input_opts.delimiter;
    apply_pool_opts(&mut request, &args.pool);
    let report = compare(&request)?;
    Ok(report::render_report(&report, args.output.format.into()))
}

fn parse_float_list(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<f64>()
                .map_err(|_| Error::InvalidRequest(format!("unparseable {what} '{item}'")))
        })
        .collect()
}

/// Default nominal-value range: the metric's codomain, with AUC upper
/// bounds taken as the largest ideal area over the requested prevalences.
fn default_mu_range(metric: &MetricSpec, pi_list: &[f64]) -> (f64, f64) {
    match metric {
        MetricSpec::Labeling(kind) => kind.codomain(),
        MetricSpec::Auc(kind) => {
            let hi = pi_list
                .iter()
                .map(|&pi| kind.ideal_auc(pi))
                .fold(1.0_f64, f64::max);
            (0.0, hi)
        }
        MetricSpec::Nauc(_) | MetricSpec::Point { .. } => (0.0, 1.0),
    }
}

fn run_ops_curve(args: OpsCurveArgs) -> Result<String> {
    let metric: MetricSpec = args.metric.parse()?;
    let pi_list = parse_float_list(&args.pi, "prevalence")?;
    if args.mu_points < 2 {
        return Err(Error::InvalidRequest(
            "--mu-points must be at least 2".into(),
        ));
    }
    let (lo, hi) = match &args.mu_range {
        Some(range) => {
            let (lo, hi) = range.split_once(':').ok_or_else(|| {
                Error::InvalidRequest(format!("--mu-range expects LO:HI, got '{range}'"))
            })?;
            let parse = |v: &str| {
                v.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidRequest(format!("unparseable range bound '{v}'"))
                })
            };
            (parse(lo)?, parse(hi)?)
        }
        None => default_mu_range(&metric, &pi_list),
    };
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidRequest(format!(
            "invalid value range {lo}:{hi}"
        )));
    }
    let step = (hi - lo) / (args.mu_points - 1) as f64;
    let mu_grid: Vec<f64> = (0..args.mu_points).map(|i| lo + i as f64 * step).collect();
    let cfg = OpsConfig {
        depth: args.pool.depth,
        samples: args.pool.samples,
        seed: args.pool.seed,
        grid_resolution: args.pool.grid,
        pool_cache: args.pool.pool_cache,
    };
    let series = emit_ops_curve(&metric, &pi_list, &mu_grid, &cfg)?;
    Ok(report::render_ops_curves(&series, args.output.format.into()))
}

fn run_oprc(args: OprcArgs) -> Result<String> {
    let recall_grid = parse_float_list(&args.recall_grid, "recall")?;
    let predictions = load_predictions(&args.input, args.input_opts.delimiter)?;
    let cfg = OpsConfig {
        depth: args.pool.depth,
        samples: args.pool.samples,
        seed: args.pool.seed,
        grid_resolution: args.pool.grid,
        pool_cache: args.pool.pool_cache,
    };
    let points = emit_oprc(&predictions, &recall_grid, &cfg)?;
    Ok(report::render_oprc(&points, args.output.format.into()))
}
