//! Loads MNIST, builds the seeded splits and shows one encoded example.
//!
//!     cargo run --release --example mnist_pipeline -- data/mnist

use std::path::PathBuf;

use hqnn::dataset::{load_mnist, make_splits, stratified_subset, SplitSpec};
use hqnn::experiment::describe_example;
use hqnn::rng::{stream_rng, Stream};

fn main() -> hqnn::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| "data/mnist".into());
    let data = load_mnist(&dir)?;
    println!("tune {} / test {}", data.tune.len(), data.test.len());

    let splits = make_splits(&data.tune, &data.test, SplitSpec::default(), 2021)?;
    println!(
        "train {} / validation {} / test {}",
        splits.train.len(),
        splits.validation.len(),
        splits.test.len()
    );

    let small = stratified_subset(&splits.train, 0.05, &mut stream_rng(2021, Stream::Subset))?;
    let mut per_digit = [0usize; 10];
    for r in &small {
        per_digit[r.digit as usize] += 1;
    }
    println!("5% training subset: {} records, per digit {per_digit:?}", small.len());

    print!("\n{}", describe_example(&splits.train[0])?);
    Ok(())
}
