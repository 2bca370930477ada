//! One epoch on a 1% subset with the full statevector backend, checked batch
//! by batch against the analytic backend. Takes a few minutes on one core.
//!
//!     cargo run --release --example statevector_training -- data/mnist

use std::path::PathBuf;
use std::time::Instant;

use hqnn::dataset::load_mnist;
use hqnn::experiment::{run_training_on, RunConfig};
use hqnn::pqc::Backend;

fn main() -> hqnn::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| "data/mnist".into());
    let data = load_mnist(&dir)?;
    let run = |backend| {
        let config = RunConfig {
            backend,
            epochs: 1,
            seeds: vec![2021],
            subset_fraction: 0.01,
            ..RunConfig::default()
        };
        let t = Instant::now();
        let report = run_training_on(&config, &data)?;
        println!("{backend:<11} finished in {:.1?}", t.elapsed());
        Ok::<_, hqnn::Error>(report.runs[0].batch_losses.clone())
    };
    let slow = run(Backend::Statevector)?;
    let fast = run(Backend::Analytic)?;
    for (i, (s, f)) in slow.iter().zip(&fast).enumerate() {
        println!("batch {i:>2}: {s:.12} {f:.12}  diff {:.1e}", (s - f).abs());
    }
    Ok(())
}
