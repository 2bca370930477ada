//! A hand-written training loop over `batch_gradient` and `adam_step`,
//! without the experiment driver. Uses synthetic data so it runs anywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hqnn::dataset::ExampleRecord;
use hqnn::experiment::{batch_gradient, evaluate};
use hqnn::model::{ModelKind, ModelParams};
use hqnn::nn::{adam_step, AdamConfig, AdamState};
use hqnn::pqc::Backend;

fn blob(digit: u8, rng: &mut ChaCha8Rng) -> ExampleRecord {
    let mut chunks = [[0.0; 16]; 4];
    for (q, chunk) in chunks.iter_mut().enumerate() {
        for (p, v) in chunk.iter_mut().enumerate() {
            let on = (q * 16 + p) % 10 == digit as usize;
            *v = if on {
                rng.random_range(0.7..1.0)
            } else {
                rng.random_range(0.0..0.2)
            };
        }
    }
    ExampleRecord::new(chunks, digit).unwrap()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let train: Vec<ExampleRecord> = (0..400).map(|i| blob((i % 10) as u8, &mut rng)).collect();
    let test: Vec<ExampleRecord> = (0..100).map(|i| blob((i % 10) as u8, &mut rng)).collect();

    let mut params = ModelParams::init(ModelKind::Quantum, 5);
    let config = AdamConfig {
        learning_rate: 0.02,
        ..AdamConfig::default()
    };
    let mut adam = AdamState::new(config, params.param_count());
    let mut flat = params.to_flat();

    for epoch in 1..=5 {
        let order: Vec<usize> = (0..train.len()).collect();
        let mut total = 0.0;
        for batch in order.chunks(32) {
            let (loss, grad) = batch_gradient(&params, &train, batch, Backend::Analytic).unwrap();
            adam_step(&mut flat, &grad, &mut adam).unwrap();
            params.assign_flat(&flat).unwrap();
            total += loss * batch.len() as f64;
        }
        let eval = evaluate(&params, &test, Backend::Analytic).unwrap();
        println!(
            "epoch {epoch}: train CCE {:.4}  test CCE {:.4}  test ACC {:.3}",
            total / 400.0,
            eval.cce,
            eval.acc
        );
    }
}
