use hqnn::pqc::{
    pqc_forward_analytic, pqc_value_and_gradient_analytic, ChunkAngles, PqcLayout, PqcParams, StatevectorPqc,
};

fn main() {
    let angles = ChunkAngles::new(std::array::from_fn(|j| 0.2 * j as f64)).unwrap();
    let params = PqcParams {
        z: std::array::from_fn(|j| 0.05 * j as f64 - 0.3),
    };
    let (value, analytic) = pqc_value_and_gradient_analytic(&angles, &params);
    let (_, adjoint) = StatevectorPqc::new(PqcLayout::default())
        .unwrap()
        .value_and_gradient(&angles, &params)
        .unwrap();

    println!("<Z> = {value:.10}\n");
    println!("  j     analytic      adjoint  central diff");
    let h = 1e-5;
    for j in 0..16 {
        let (mut up, mut down) = (params, params);
        up.z[j] += h;
        down.z[j] -= h;
        let fd = (pqc_forward_analytic(&angles, &up) - pqc_forward_analytic(&angles, &down)) / (2.0 * h);
        println!("{j:>3} {:>12.8} {:>12.8} {:>13.8}", analytic[j], adjoint[j], fd);
    }
}
