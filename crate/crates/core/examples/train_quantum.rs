//! Desk-scale training of the hybrid model on a stratified 5% subset.
//!
//!     cargo run --release --example train_quantum -- data/mnist runs/quantum

use std::path::PathBuf;

use hqnn::experiment::{emit_report, run_training, RunConfig};

fn main() -> hqnn::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = RunConfig {
        data_dir: args.next().map(PathBuf::from).unwrap_or_else(|| "data/mnist".into()),
        out: args.next().map(PathBuf::from).unwrap_or_else(|| "runs/quantum".into()),
        subset_fraction: 0.05,
        ..RunConfig::default()
    };
    println!("{}\n", config.echo());

    let report = run_training(&config)?;
    println!("seed   epoch  train CCE  val CCE  val ACC");
    for run in &report.runs {
        for e in &run.epochs {
            println!(
                "{:<6} {:>5} {:>10.4} {:>8.4} {:>8.3}",
                run.seed, e.epoch, e.cce_train, e.cce_val, e.acc_val
            );
        }
    }
    println!(
        "\nmean test ACC {:.3}, BA {:.3}",
        report.mean_test_acc, report.mean_test_ba
    );
    for path in emit_report(&report, &config.out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
