use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use faircluster::config::objective_name;
use faircluster::report::{emit, Format};
use faircluster::sweep::center_cost_below_fairlet;
use faircluster::{load_csv, run_sweep, CliError, ExperimentConfig, KRange, ObjectiveChoice, Result, SweepConfig};
use faircluster_core::fairlets::decompose;
use faircluster_core::{decomposition_cost, Objective};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "faircluster", version, about = "Fair k-center / k-median clustering via fairlets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep k for the classical and fair pipelines and write a report.
    Sweep(SweepArgs),
    /// Run only the fairlet decomposition and write the fairlets as JSON.
    Decompose(DecomposeArgs),
}

#[derive(Args)]
struct DataArgs {
    /// Delimited input file with a header row.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    color_column: String,
    /// Value of the color column that marks a point blue.
    #[arg(long)]
    positive: String,
    /// Comma-separated numeric feature columns.
    #[arg(long, value_delimiter = ',', required = true)]
    features: Vec<String>,
    #[arg(long)]
    subsample: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    no_normalize: bool,
    #[arg(long, default_value_t = 2)]
    tprime: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Inclusive range such as `2..20`, or a single value.
    #[arg(long, default_value = "2..20")]
    k: String,
    #[arg(long, default_value = "both")]
    objective: String,
    /// JSON report path.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value = "center")]
    objective: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct FairletOut {
    center: usize,
    members: Vec<usize>,
}

#[derive(Serialize)]
struct DecompositionOut {
    objective: &'static str,
    t_prime: usize,
    cost: f64,
    fairlets: Vec<FairletOut>,
}

fn config(data: DataArgs, k_range: KRange, objective: ObjectiveChoice) -> ExperimentConfig {
    ExperimentConfig {
        input_path: data.input,
        color_column: data.color_column,
        positive_value: data.positive,
        feature_columns: data.features,
        subsample: data.subsample,
        normalize: !data.no_normalize,
        sweep: SweepConfig { k_range, t_prime: data.tprime, objective, seed: data.seed },
    }
}

fn sweep(args: SweepArgs) -> Result<()> {
    let cfg = config(args.data, args.k.parse()?, args.objective.parse()?);
    let report = run_sweep(&cfg)?;
    for r in center_cost_below_fairlet(&report) {
        eprintln!("note: center k = {} has fair cost {} below fairlet cost {}", r.k, r.fair_cost, r.fairlet_cost);
    }
    emit(&report, Format::Json, &args.out)?;
    if let Some(path) = args.csv {
        emit(&report, Format::Csv, &path)?;
    }
    eprintln!("{} records, {} skipped", report.records.len(), report.skipped.len());
    Ok(())
}

fn decompose_only(args: DecomposeArgs) -> Result<()> {
    let objective = match args.objective.parse()? {
        ObjectiveChoice::Center => Objective::Center,
        ObjectiveChoice::Median => Objective::Median,
        ObjectiveChoice::Both => return Err(CliError::Config("decompose takes a single objective".into())),
    };
    let cfg = config(args.data, KRange::new(1, 1)?, ObjectiveChoice::Center);
    let loaded = load_csv(&cfg)?;
    let ds = &loaded.dataset;
    let dec = decompose(ds, cfg.sweep.t_prime, objective)?;
    let out = DecompositionOut {
        objective: objective_name(objective),
        t_prime: cfg.sweep.t_prime,
        cost: decomposition_cost(ds, &dec, objective),
        fairlets: dec
            .fairlets()
            .iter()
            .map(|f| FairletOut { center: f.center(), members: f.members().to_vec() })
            .collect(),
    };
    let file = std::fs::File::create(&args.out)?;
    serde_json::to_writer_pretty(file, &out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are configuration errors; help and version are not errors
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Decompose(args) => decompose_only(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
