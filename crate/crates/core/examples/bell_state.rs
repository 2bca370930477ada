//! Prepares a Bell pair with H then CNOT and prints the amplitudes.

use hqnn::gates::{cnot, hadamard};
use hqnn::qsim::StateVector;

fn main() {
    let mut sv = StateVector::new(2).unwrap();
    sv.apply_single(&hadamard(), 0).unwrap();
    sv.apply_two(&cnot(), 0, 1).unwrap();

    for (k, a) in sv.amplitudes().iter().enumerate() {
        println!("|{:02b}>  {:+.6} {:+.6}i", k, a.re, a.im);
    }
    println!(
        "<Z0> = {:.3}, <Z1> = {:.3}",
        sv.expectation_z(0).unwrap(),
        sv.expectation_z(1).unwrap()
    );
}
