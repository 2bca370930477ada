//! The closed-form star-circuit expectation against a full 17-qubit
//! statevector simulation, including a shuffled gate order.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hqnn::pqc::{pqc_forward_analytic, ChunkAngles, PqcLayout, PqcParams, StatevectorPqc};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut sim = StatevectorPqc::new(PqcLayout::default()).unwrap();
    let mut order: [usize; 16] = std::array::from_fn(|j| j);
    order.shuffle(&mut rng);
    let mut shuffled = StatevectorPqc::new(PqcLayout::with_gate_order(order).unwrap()).unwrap();

    for _ in 0..5 {
        let angles = ChunkAngles::new(std::array::from_fn(|_| rng.random_range(0.0..std::f64::consts::PI))).unwrap();
        let params = PqcParams {
            z: std::array::from_fn(|_| rng.random::<f64>()),
        };
        let t = Instant::now();
        let fast = pqc_forward_analytic(&angles, &params);
        let t_fast = t.elapsed();
        let t = Instant::now();
        let full = sim.forward(&angles, &params).unwrap();
        let t_full = t.elapsed();
        let perm = shuffled.forward(&angles, &params).unwrap();
        println!(
            "analytic {fast:+.12} ({t_fast:>9.2?})  statevector {full:+.12} ({t_full:>9.2?})  shuffled diff {:.1e}",
            (perm - full).abs()
        );
    }
}
