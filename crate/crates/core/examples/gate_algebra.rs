use hqnn::gates::{cnot, cnot_pow, hadamard, pauli_x, rx, GateMatrix};

fn main() {
    let named = [
        ("X", pauli_x()),
        ("H", hadamard()),
        ("Rx(0.7)", rx(0.7).unwrap()),
        ("CNOT", cnot()),
        ("CNOT^0.3", cnot_pow(0.3).unwrap()),
    ];
    for (name, g) in &named {
        println!("{name:<9} dim {}  |U†U - I| = {:.1e}", g.dim(), g.unitarity_deviation());
    }

    let half = cnot_pow(0.5).unwrap();
    println!("\nsqrt(CNOT)^2 vs CNOT: {:.1e}", (&half * &half).max_abs_diff(&cnot()));
    println!(
        "CNOT^1 vs CNOT:       {:.1e}",
        cnot_pow(1.0).unwrap().max_abs_diff(&cnot())
    );
    println!(
        "CNOT^0 vs I:          {:.1e}",
        cnot_pow(0.0).unwrap().max_abs_diff(&GateMatrix::identity(4))
    );
    println!(
        "CNOT^0.4 CNOT^0.9 vs CNOT^1.3: {:.1e}",
        (&cnot_pow(0.4).unwrap() * &cnot_pow(0.9).unwrap()).max_abs_diff(&cnot_pow(1.3).unwrap())
    );
    println!("\nCNOT^0.5 = {half:?}");
}
