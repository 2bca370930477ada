//! Continuous angle encoding against the thresholded basis-state variant.

use hqnn::pqc::{encode_chunk, encode_chunk_binary, pqc_forward_analytic, PqcParams};

fn main() {
    let chunk: [f64; 16] = std::array::from_fn(|p| (p as f64 / 15.0).powi(2));
    let params = PqcParams {
        z: std::array::from_fn(|p| 0.1 + 0.04 * p as f64),
    };

    let smooth = encode_chunk(&chunk).unwrap();
    println!("continuous: <Z> = {:+.6}", pqc_forward_analytic(&smooth, &params));
    for threshold in [0.25, 0.5, 0.75] {
        let binary = encode_chunk_binary(&chunk, threshold).unwrap();
        let on = binary.excitation().iter().filter(|&&p| p == 1.0).count();
        println!(
            "threshold {threshold}: {on:>2} qubits in |1>, <Z> = {:+.6}",
            pqc_forward_analytic(&binary, &params)
        );
    }
}
