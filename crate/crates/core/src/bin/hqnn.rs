use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hqnn::dataset::{load_mnist, make_splits, stratified_subset, SplitSpec};
use hqnn::experiment::{compare_runs, describe_example, emit_report, load_report, run_training, RunConfig};
use hqnn::model::ModelKind;
use hqnn::pqc::Backend;
use hqnn::rng::{stream_rng, Stream};

#[derive(Parser)]
#[command(name = "hqnn", version, about = "Hybrid quantum-classical MNIST experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train and test a model over one or more seeds and write report files.
    Train(TrainArgs),
    /// Compare two finished runs (report directories).
    Compare {
        run_a: PathBuf,
        run_b: PathBuf,
        /// Also write the comparison as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print split sizes and a text rendering of one encoded example.
    InspectData {
        #[arg(long, default_value = "data/mnist")]
        data_dir: PathBuf,
        #[arg(long, default_value_t = hqnn::experiment::DEFAULT_SEEDS[0])]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        subset_fraction: f64,
        /// Index into the training split of the example to render.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

/// Every flag is optional so that a config file can supply it.
#[derive(Args)]
struct TrainArgs {
    /// TOML file with any of the fields below; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<ModelKind>,
    #[arg(long)]
    backend: Option<Backend>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    batch_size: Option<usize>,
    #[arg(long)]
    lr: Option<f64>,
    /// Comma-separated list, e.g. `--seeds 1,2,3`.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long)]
    data_dir: Option<PathBuf>,
    #[arg(long)]
    subset_fraction: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Evaluate the untrained model only.
    #[arg(long)]
    dry_run: bool,
    /// Directory for per-seed split caches.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl TrainArgs {
    fn resolve(self) -> hqnn::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_toml_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.model {
            cfg.model = v;
        }
        if let Some(v) = self.backend {
            cfg.backend = v;
        }
        if let Some(v) = self.epochs {
            cfg.epochs = v;
        }
        if let Some(v) = self.batch_size {
            cfg.batch_size = v;
        }
        if let Some(v) = self.lr {
            cfg.learning_rate = v;
        }
        if let Some(v) = self.seeds {
            cfg.seeds = v;
        }
        if let Some(v) = self.data_dir {
            cfg.data_dir = v;
        }
        if let Some(v) = self.subset_fraction {
            cfg.subset_fraction = v;
        }
        if let Some(v) = self.threads {
            cfg.threads = Some(v);
        }
        if let Some(v) = self.out {
            cfg.out = v;
        }
        if let Some(v) = self.cache_dir {
            cfg.cache_dir = Some(v);
        }
        cfg.dry_run |= self.dry_run;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn train(args: TrainArgs) -> hqnn::Result<()> {
    let cfg = args.resolve()?;
    println!("{}\n", cfg.echo());
    let report = run_training(&cfg)?;
    for run in &report.runs {
        println!(
            "seed {:>6}: train {} / val {} / test {}  test ACC {:.2}%  BA {:.2}%",
            run.seed,
            run.train_size,
            run.val_size,
            run.test_size,
            100.0 * run.test_acc,
            100.0 * run.test_ba
        );
    }
    println!(
        "average    : test ACC {:.2}%  BA {:.2}%  ({:.1} s)",
        100.0 * report.mean_test_acc,
        100.0 * report.mean_test_ba,
        report.timings.total_secs
    );
    for path in emit_report(&report, &cfg.out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn compare(a: PathBuf, b: PathBuf, out: Option<PathBuf>) -> hqnn::Result<()> {
    let cmp = compare_runs(&load_report(&a)?, &load_report(&b)?)?;
    print!("{}", cmp.render());
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&cmp).expect("comparison serializes");
        std::fs::write(&path, json + "\n").map_err(|e| hqnn::Error::Io { path, source: e })?;
    }
    Ok(())
}

fn inspect(data_dir: PathBuf, seed: u64, fraction: f64, index: usize) -> hqnn::Result<()> {
    let data = load_mnist(&data_dir)?;
    println!("tune records {}, test records {}", data.tune.len(), data.test.len());
    let mut splits = make_splits(&data.tune, &data.test, SplitSpec::default(), seed)?;
    if fraction < 1.0 {
        let mut rng = stream_rng(seed, Stream::Subset);
        splits.train = stratified_subset(&splits.train, fraction, &mut rng)?;
        splits.validation = stratified_subset(&splits.validation, fraction, &mut rng)?;
        splits.test = stratified_subset(&splits.test, fraction, &mut rng)?;
    }
    println!(
        "seed {seed}: train {} / validation {} / test {}",
        splits.train.len(),
        splits.validation.len(),
        splits.test.len()
    );
    let record = splits
        .train
        .get(index)
        .ok_or_else(|| hqnn::Error::Argument(format!("index {index} beyond training split")))?;
    print!("\ntrain[{index}]: {}", describe_example(record)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Train(args) => train(args),
        Command::Compare { run_a, run_b, out } => compare(run_a, run_b, out),
        Command::InspectData {
            data_dir,
            seed,
            subset_fraction,
            index,
        } => inspect(data_dir, seed, subset_fraction, index),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
