//! Trains the hybrid model and the 310-parameter baseline on the same splits
//! and prints per-seed deltas and mean learning curves.
//!
//!     cargo run --release --example compare_models -- data/mnist 0.05

use std::path::PathBuf;

use hqnn::dataset::load_mnist;
use hqnn::experiment::{compare_runs, run_training_on, RunConfig};
use hqnn::model::ModelKind;

fn main() -> hqnn::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args.next().map(PathBuf::from).unwrap_or_else(|| "data/mnist".into());
    let fraction: f64 = args.next().map(|s| s.parse().expect("subset fraction")).unwrap_or(0.05);
    let data = load_mnist(&dir)?;

    let run = |model| {
        let config = RunConfig {
            model,
            subset_fraction: fraction,
            ..RunConfig::default()
        };
        run_training_on(&config, &data)
    };
    let quantum = run(ModelKind::Quantum)?;
    let classical = run(ModelKind::Classical)?;
    print!("{}", compare_runs(&quantum, &classical)?.render());
    Ok(())
}
