//! Seeded training/validation/test protocol and report files.
//!
//! For every seed the tune set is re-split, the model is initialized from
//! the seed, trained with mini-batch Adam on cross-entropy, evaluated on
//! train and validation after each epoch, and finally tested.
//!
//! Per-example work fans out over rayon but every reduction is an
//! index-ordered sum, so reports are bit-identical for a fixed config.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{
    load_mnist, make_splits, read_split_cache, stratified_subset, write_split_cache, ExampleRecord, MnistData,
    SplitSpec, Splits, NUM_CLASSES,
};
use crate::error::{Error, Result};
use crate::model::{loss_and_gradient, predict, ExampleGrad, ModelKind, ModelParams, PqcEvaluator};
use crate::nn::{accuracy, adam_step, argmax_predict, balanced_accuracy, cce_loss, AdamConfig, AdamState, OneHotLabel};
use crate::pqc::{encode_chunk, Backend};
use crate::rng::{stream_rng, Stream};

pub const DEFAULT_SEEDS: [u64; 5] = [2021, 2022, 2023, 2024, 2025];

/// Everything that determines a run. Mirrors the CLI flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelKind,
    pub backend: Backend,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub seeds: Vec<u64>,
    pub data_dir: PathBuf,
    /// Stratified fraction kept of each split, in (0, 1].
    pub subset_fraction: f64,
    pub threads: Option<usize>,
    pub out: PathBuf,
    /// Skip training and evaluate the freshly initialized model.
    pub dry_run: bool,
    pub cache_dir: Option<PathBuf>,
    pub split: SplitSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelKind::Quantum,
            backend: Backend::Analytic,
            epochs: 10,
            batch_size: 32,
            learning_rate: AdamConfig::default().learning_rate,
            seeds: DEFAULT_SEEDS.to_vec(),
            data_dir: PathBuf::from("data/mnist"),
            subset_fraction: 1.0,
            threads: None,
            out: PathBuf::from("runs/latest"),
            dry_run: false,
            cache_dir: None,
            split: SplitSpec::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be at least 1".into()));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch size must be at least 1".into()));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Config(format!(
                "learning rate {} must be positive",
                self.learning_rate
            )));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if !(self.subset_fraction > 0.0 && self.subset_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "subset fraction {} not in (0, 1]",
                self.subset_fraction
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    pub fn adam(&self) -> AdamConfig {
        AdamConfig {
            learning_rate: self.learning_rate,
            ..AdamConfig::default()
        }
    }

    pub fn param_count(&self) -> usize {
        ModelParams::init(self.model, 0).param_count()
    }

    /// Human-readable resolved configuration, including the parameter count.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "model              {}", self.model);
        let _ = writeln!(s, "trainable params   {}", self.param_count());
        let _ = writeln!(s, "backend            {}", self.backend);
        let _ = writeln!(
            s,
            "epochs             {}{}",
            self.epochs,
            if self.dry_run { " (dry run)" } else { "" }
        );
        let _ = writeln!(s, "batch size         {}", self.batch_size);
        let _ = writeln!(s, "learning rate      {}", self.learning_rate);
        let _ = writeln!(s, "seeds              {:?}", self.seeds);
        let _ = writeln!(s, "subset fraction    {}", self.subset_fraction);
        let _ = writeln!(s, "data dir           {}", self.data_dir.display());
        let _ = writeln!(
            s,
            "threads            {}",
            self.threads.map_or("auto".to_string(), |t| t.to_string())
        );
        let _ = write!(s, "out                {}", self.out.display());
        s
    }
}

/// Post-epoch metrics over the full train and validation subsets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpochMetrics {
    pub epoch: usize,
    pub cce_train: f64,
    pub cce_val: f64,
    pub acc_train: f64,
    pub acc_val: f64,
}

/// Counts indexed `[true class − 1][predicted class − 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; NUM_CLASSES]; NUM_CLASSES],
}

impl ConfusionMatrix {
    pub fn from_labels(preds: &[u8], truths: &[u8]) -> Self {
        let mut m = Self::default();
        for (&p, &t) in preds.iter().zip(truths) {
            m.counts[t as usize - 1][p as usize - 1] += 1;
        }
        m
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> [u64; NUM_CLASSES] {
        self.counts.map(|row| row.iter().sum())
    }

    pub fn accuracy(&self) -> f64 {
        let diag: u64 = (0..NUM_CLASSES).map(|c| self.counts[c][c]).sum();
        diag as f64 / self.total() as f64
    }
}

/// One seed's complete history.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedReport {
    pub seed: u64,
    pub train_size: usize,
    pub val_size: usize,
    pub test_size: usize,
    pub epochs: Vec<EpochMetrics>,
    /// Mean cross-entropy of every mini-batch, in training order.
    pub batch_losses: Vec<f64>,
    pub test_acc: f64,
    pub test_ba: f64,
    pub confusion: ConfusionMatrix,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub per_seed_secs: Vec<f64>,
    pub total_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub param_count: usize,
    /// How the train/validation partition relates across seeds.
    pub split_policy: String,
    pub runs: Vec<SeedReport>,
    pub mean_test_acc: f64,
    pub mean_test_ba: f64,
    /// Wall-clock timings; written to their own file and excluded from
    /// `report.json` so that reports are reproducible.
    #[serde(skip)]
    pub timings: Timings,
}

/// Loss and accuracy of a model over a set of records.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub cce: f64,
    pub acc: f64,
    pub preds: Vec<u8>,
    pub truths: Vec<u8>,
}

/// Evaluates `params` on `records` without touching them.
pub fn evaluate(params: &ModelParams, records: &[ExampleRecord], backend: Backend) -> Result<Evaluation> {
    if records.is_empty() {
        return Err(Error::Argument("cannot evaluate on an empty set".into()));
    }
    let probs: Vec<Vec<f64>> = records
        .par_iter()
        .map_init(|| PqcEvaluator::new(backend), |eval, r| predict(params, r, eval))
        .collect::<Result<_>>()?;
    let mut total = 0.0;
    for (p, r) in probs.iter().zip(records) {
        total += cce_loss(p, OneHotLabel::new(r.label)?)?;
    }
    let preds: Vec<u8> = probs.iter().map(|p| argmax_predict(p)).collect();
    let truths: Vec<u8> = records.iter().map(|r| r.label).collect();
    Ok(Evaluation {
        cce: total / records.len() as f64,
        acc: accuracy(&preds, &truths)?,
        preds,
        truths,
    })
}

/// Mean loss and gradient over one mini-batch, summed in index order.
pub fn batch_gradient(
    params: &ModelParams,
    records: &[ExampleRecord],
    batch: &[usize],
    backend: Backend,
) -> Result<(f64, Vec<f64>)> {
    let per_example: Vec<ExampleGrad> = batch
        .par_iter()
        .map_init(
            || PqcEvaluator::new(backend),
            |eval, &i| loss_and_gradient(params, &records[i], eval),
        )
        .collect::<Result<_>>()?;
    let n = per_example.len() as f64;
    let mut grad = vec![0.0; params.param_count()];
    let mut loss = 0.0;
    for ex in &per_example {
        loss += ex.loss;
        for (g, d) in grad.iter_mut().zip(&ex.grad) {
            *g += d;
        }
    }
    grad.iter_mut().for_each(|g| *g /= n);
    Ok((loss / n, grad))
}

fn seed_splits(config: &RunConfig, data: &MnistData, seed: u64) -> Result<Splits> {
    let cached = match &config.cache_dir {
        Some(dir) => {
            let path = dir.join(format!("splits_seed{seed}.bin"));
            if path.exists() {
                read_split_cache(&path, seed)?
            } else {
                None
            }
        }
        None => None,
    };
    let full = match cached {
        Some(s) => s,
        None => {
            let s = make_splits(&data.tune, &data.test, config.split, seed)?;
            if let Some(dir) = &config.cache_dir {
                write_split_cache(&dir.join(format!("splits_seed{seed}.bin")), &s, seed)?;
            }
            s
        }
    };
    if config.subset_fraction >= 1.0 {
        return Ok(full);
    }
    let mut rng = stream_rng(seed, Stream::Subset);
    Ok(Splits {
        train: stratified_subset(&full.train, config.subset_fraction, &mut rng)?,
        validation: stratified_subset(&full.validation, config.subset_fraction, &mut rng)?,
        test: stratified_subset(&full.test, config.subset_fraction, &mut rng)?,
    })
}

fn train_seed(config: &RunConfig, data: &MnistData, seed: u64) -> Result<SeedReport> {
    let splits = seed_splits(config, data, seed)?;
    let backend = config.backend;
    let mut params = ModelParams::init(config.model, seed);
    let mut adam = AdamState::new(config.adam(), params.param_count());
    let mut shuffle_rng = stream_rng(seed, Stream::Shuffle);
    let mut order: Vec<usize> = (0..splits.train.len()).collect();
    let mut epochs = Vec::new();
    let mut batch_losses = Vec::new();

    let n_epochs = if config.dry_run { 0 } else { config.epochs };
    for epoch in 1..=n_epochs {
        order.shuffle(&mut shuffle_rng);
        for (b, batch) in order.chunks(config.batch_size).enumerate() {
            let diverged = || Error::Divergence { epoch, batch: b + 1 };
            let (loss, grad) = match batch_gradient(&params, &splits.train, batch, backend) {
                Err(Error::Probability(_)) => return Err(diverged()),
                other => other?,
            };
            if !loss.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(diverged());
            }
            let mut flat = params.to_flat();
            adam_step(&mut flat, &grad, &mut adam)?;
            params.assign_flat(&flat)?;
            batch_losses.push(loss);
        }
        let train = evaluate(&params, &splits.train, backend)?;
        let val = evaluate(&params, &splits.validation, backend)?;
        epochs.push(EpochMetrics {
            epoch,
            cce_train: train.cce,
            cce_val: val.cce,
            acc_train: train.acc,
            acc_val: val.acc,
        });
    }

    let test = evaluate(&params, &splits.test, backend)?;
    Ok(SeedReport {
        seed,
        train_size: splits.train.len(),
        val_size: splits.validation.len(),
        test_size: splits.test.len(),
        epochs,
        batch_losses,
        test_acc: test.acc,
        test_ba: balanced_accuracy(&test.preds, &test.truths)?,
        confusion: ConfusionMatrix::from_labels(&test.preds, &test.truths),
    })
}

/// Loads the MNIST files named by the config and runs every seed.
pub fn run_training(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let data = load_mnist(&config.data_dir)?;
    run_training_on(config, &data)
}

/// Runs every seed on already-loaded data.
pub fn run_training_on(config: &RunConfig, data: &MnistData) -> Result<RunReport> {
    config.validate()?;
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| run_seeds(config, data)),
        None => run_seeds(config, data),
    }
}

fn run_seeds(config: &RunConfig, data: &MnistData) -> Result<RunReport> {
    let start = Instant::now();
    let mut runs = Vec::with_capacity(config.seeds.len());
    let mut per_seed_secs = Vec::with_capacity(config.seeds.len());
    for &seed in &config.seeds {
        let t = Instant::now();
        runs.push(train_seed(config, data, seed)?);
        per_seed_secs.push(t.elapsed().as_secs_f64());
    }
    let n = runs.len() as f64;
    Ok(RunReport {
        config: config.clone(),
        param_count: config.param_count(),
        split_policy: "train/validation re-split per seed; test set fixed".into(),
        mean_test_acc: runs.iter().map(|r| r.test_acc).sum::<f64>() / n,
        mean_test_ba: runs.iter().map(|r| r.test_ba).sum::<f64>() / n,
        runs,
        timings: Timings {
            per_seed_secs,
            total_secs: start.elapsed().as_secs_f64(),
        },
    })
}

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

#[derive(Serialize)]
struct SummarySeed {
    seed: u64,
    test_acc: f64,
    test_ba: f64,
}

#[derive(Serialize)]
struct SummaryAverage {
    test_acc: f64,
    test_ba: f64,
}

#[derive(Serialize)]
struct Summary<'a> {
    model: ModelKind,
    backend: Backend,
    param_count: usize,
    epochs: usize,
    subset_fraction: f64,
    split_policy: &'a str,
    per_seed: Vec<SummarySeed>,
    average: SummaryAverage,
}

fn write_file(path: PathBuf, contents: &str) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `epochs.csv`, `summary.json`, `confusion_seed<k>.csv`,
/// `report.json` and `timings.json` into `dir`.
///
/// Everything except `timings.json` is a pure function of the report.
pub fn emit_report(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();

    let mut csv = String::from("seed,epoch,cce_train,cce_val,acc_train,acc_val\n");
    for run in &report.runs {
        for m in &run.epochs {
            let _ = writeln!(
                csv,
                "{},{},{:.6},{:.6},{:.6},{:.6}",
                run.seed, m.epoch, m.cce_train, m.cce_val, m.acc_train, m.acc_val
            );
        }
    }
    written.push(write_file(dir.join("epochs.csv"), &csv)?);

    let summary = Summary {
        model: report.config.model,
        backend: report.config.backend,
        param_count: report.param_count,
        epochs: if report.config.dry_run { 0 } else { report.config.epochs },
        subset_fraction: report.config.subset_fraction,
        split_policy: &report.split_policy,
        per_seed: report
            .runs
            .iter()
            .map(|r| SummarySeed {
                seed: r.seed,
                test_acc: round6(r.test_acc),
                test_ba: round6(r.test_ba),
            })
            .collect(),
        average: SummaryAverage {
            test_acc: round6(report.mean_test_acc),
            test_ba: round6(report.mean_test_ba),
        },
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    written.push(write_file(dir.join("summary.json"), &(json + "\n"))?);

    for run in &report.runs {
        let mut csv = String::from("true\\pred");
        for c in 1..=NUM_CLASSES {
            let _ = write!(csv, ",{c}");
        }
        csv.push('\n');
        for (t, row) in run.confusion.counts.iter().enumerate() {
            let _ = write!(csv, "{}", t + 1);
            for n in row {
                let _ = write!(csv, ",{n}");
            }
            csv.push('\n');
        }
        written.push(write_file(dir.join(format!("confusion_seed{}.csv", run.seed)), &csv)?);
    }

    let full = serde_json::to_string(report).expect("report serializes");
    written.push(write_file(dir.join("report.json"), &(full + "\n"))?);
    let timings = serde_json::to_string_pretty(&report.timings).expect("timings serialize");
    written.push(write_file(dir.join("timings.json"), &(timings + "\n"))?);
    Ok(written)
}

/// Reads `report.json` written by [`emit_report`].
pub fn load_report(dir: &Path) -> Result<RunReport> {
    let path = dir.join("report.json");
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedDelta {
    pub seed: u64,
    pub acc_a: f64,
    pub acc_b: f64,
    pub ba_a: f64,
    pub ba_b: f64,
    pub delta_acc: f64,
    pub delta_ba: f64,
}

/// Across-seed mean of one epoch's metrics for both runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub epoch: usize,
    pub a: EpochMetrics,
    pub b: EpochMetrics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label_a: String,
    pub label_b: String,
    pub per_seed: Vec<SeedDelta>,
    pub mean_acc_a: f64,
    pub mean_acc_b: f64,
    pub mean_ba_a: f64,
    pub mean_ba_b: f64,
    pub mean_delta_acc: f64,
    pub mean_delta_ba: f64,
    pub curves: Vec<CurvePoint>,
}

/// Mean over seeds of each epoch's metrics.
pub fn mean_curve(report: &RunReport) -> Vec<EpochMetrics> {
    let n_epochs = report.runs.first().map_or(0, |r| r.epochs.len());
    let n = report.runs.len() as f64;
    (0..n_epochs)
        .map(|k| {
            let mut m = EpochMetrics {
                epoch: k + 1,
                cce_train: 0.0,
                cce_val: 0.0,
                acc_train: 0.0,
                acc_val: 0.0,
            };
            for run in &report.runs {
                let e = &run.epochs[k];
                m.cce_train += e.cce_train / n;
                m.cce_val += e.cce_val / n;
                m.acc_train += e.acc_train / n;
                m.acc_val += e.acc_val / n;
            }
            m
        })
        .collect()
}

/// Per-seed and mean test deltas (`a − b`) plus mean learning curves.
pub fn compare_runs(a: &RunReport, b: &RunReport) -> Result<Comparison> {
    let seeds_a: Vec<u64> = a.runs.iter().map(|r| r.seed).collect();
    let seeds_b: Vec<u64> = b.runs.iter().map(|r| r.seed).collect();
    if seeds_a != seeds_b {
        return Err(Error::Comparison(format!(
            "seed lists differ: {seeds_a:?} vs {seeds_b:?}"
        )));
    }
    let epochs_a: Vec<usize> = a.runs.iter().map(|r| r.epochs.len()).collect();
    let epochs_b: Vec<usize> = b.runs.iter().map(|r| r.epochs.len()).collect();
    if epochs_a != epochs_b {
        return Err(Error::Comparison("runs have different epoch counts".into()));
    }
    let per_seed: Vec<SeedDelta> = a
        .runs
        .iter()
        .zip(&b.runs)
        .map(|(x, y)| SeedDelta {
            seed: x.seed,
            acc_a: x.test_acc,
            acc_b: y.test_acc,
            ba_a: x.test_ba,
            ba_b: y.test_ba,
            delta_acc: x.test_acc - y.test_acc,
            delta_ba: x.test_ba - y.test_ba,
        })
        .collect();
    let n = per_seed.len() as f64;
    let curves = mean_curve(a)
        .into_iter()
        .zip(mean_curve(b))
        .map(|(ma, mb)| CurvePoint {
            epoch: ma.epoch,
            a: ma,
            b: mb,
        })
        .collect();
    Ok(Comparison {
        label_a: a.config.model.to_string(),
        label_b: b.config.model.to_string(),
        mean_acc_a: a.mean_test_acc,
        mean_acc_b: b.mean_test_acc,
        mean_ba_a: a.mean_test_ba,
        mean_ba_b: b.mean_test_ba,
        mean_delta_acc: per_seed.iter().map(|d| d.delta_acc).sum::<f64>() / n,
        mean_delta_ba: per_seed.iter().map(|d| d.delta_ba).sum::<f64>() / n,
        per_seed,
        curves,
    })
}

impl Comparison {
    /// Plain-text table: one row per seed plus the average, then mean curves.
    pub fn render(&self) -> String {
        let pct = |v: f64| format!("{:.2}%", 100.0 * v);
        let pp = |v: f64| format!("{:+.2} pp", 100.0 * v);
        let (a, b) = (&self.label_a, &self.label_b);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<10} {:>12} {:>12} {:>10} {:>12} {:>12} {:>10}",
            "seed",
            format!("ACC {a}"),
            format!("ACC {b}"),
            "dACC",
            format!("BA {a}"),
            format!("BA {b}"),
            "dBA"
        );
        for d in &self.per_seed {
            let _ = writeln!(
                s,
                "{:<10} {:>12} {:>12} {:>10} {:>12} {:>12} {:>10}",
                d.seed,
                pct(d.acc_a),
                pct(d.acc_b),
                pp(d.delta_acc),
                pct(d.ba_a),
                pct(d.ba_b),
                pp(d.delta_ba)
            );
        }
        let _ = writeln!(
            s,
            "{:<10} {:>12} {:>12} {:>10} {:>12} {:>12} {:>10}",
            "average",
            pct(self.mean_acc_a),
            pct(self.mean_acc_b),
            pp(self.mean_delta_acc),
            pct(self.mean_ba_a),
            pct(self.mean_ba_b),
            pp(self.mean_delta_ba)
        );
        if !self.curves.is_empty() {
            let _ = writeln!(s, "\nmean curves (epoch: cce_train cce_val acc_train acc_val)");
            for c in &self.curves {
                let _ = writeln!(
                    s,
                    "{:>3}  {a}: {:.4} {:.4} {:.4} {:.4} | {b}: {:.4} {:.4} {:.4} {:.4}",
                    c.epoch,
                    c.a.cce_train,
                    c.a.cce_val,
                    c.a.acc_train,
                    c.a.acc_val,
                    c.b.cce_train,
                    c.b.cce_val,
                    c.b.acc_train,
                    c.b.acc_val
                );
            }
        }
        s
    }
}

/// Text rendering of one record: the 8×8 image as shaded characters and
/// each quadrant's encoded angles as multiples of π.
pub fn describe_example(record: &ExampleRecord) -> Result<String> {
    const SHADES: &[u8] = b" .:-=+*#%@";
    let mut s = String::new();
    let _ = writeln!(s, "digit {} (class {})", record.digit, record.label);
    let img = record.image8();
    for row in img.chunks_exact(8) {
        let line: String = row
            .iter()
            .map(|&v| SHADES[((v * (SHADES.len() - 1) as f64).round() as usize).min(SHADES.len() - 1)] as char)
            .flat_map(|c| [c, c])
            .collect();
        let _ = writeln!(s, "|{line}|");
    }
    for (q, name) in ["top-left", "top-right", "bottom-left", "bottom-right"]
        .iter()
        .enumerate()
    {
        let angles = encode_chunk(&record.chunks[q])?;
        let _ = writeln!(s, "{name} chunk, theta / pi:");
        for row in angles.theta().chunks_exact(4) {
            let cells: Vec<String> = row.iter().map(|t| format!("{:.3}", t / std::f64::consts::PI)).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
    }
    Ok(s)
}
