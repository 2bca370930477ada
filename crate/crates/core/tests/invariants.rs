use proptest::prelude::*;

use hqnn::dataset::{
    assemble_quadrants, encode_idx_images, encode_idx_labels, parse_idx_images, parse_idx_labels, resize_8x8,
    split_quadrants, stratified_subset, ExampleRecord, RawImage, IMAGE_PIXELS,
};
use hqnn::gates::{cnot_pow, rx};
use hqnn::model::{ModelKind, ModelParams};
use hqnn::nn::{argmax_predict, softmax};
use hqnn::pqc::{pqc_forward_analytic, pqc_value_and_gradient_analytic, ChunkAngles, PqcParams};
use hqnn::qsim::StateVector;
use hqnn::rng::{stream_rng, Stream};

fn angles() -> impl Strategy<Value = ChunkAngles> {
    prop::array::uniform16(0.0..=std::f64::consts::PI).prop_map(|t| ChunkAngles::new(t).unwrap())
}

fn params() -> impl Strategy<Value = PqcParams> {
    prop::array::uniform16(-3.0f64..3.0).prop_map(|z| PqcParams { z })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idx_round_trip(pixels in prop::collection::vec(any::<u8>(), IMAGE_PIXELS * 3), digits in prop::collection::vec(0u8..10, 3)) {
        let images: Vec<RawImage> = pixels.chunks(IMAGE_PIXELS).map(|p| RawImage::from_pixels(p).unwrap()).collect();
        prop_assert_eq!(parse_idx_images(&encode_idx_images(&images)).unwrap(), images);
        prop_assert_eq!(parse_idx_labels(&encode_idx_labels(&digits)).unwrap(), digits);
    }

    #[test]
    fn resize_stays_in_unit_range(pixels in prop::collection::vec(any::<u8>(), IMAGE_PIXELS)) {
        let img8 = resize_8x8(&RawImage::from_pixels(&pixels).unwrap());
        prop_assert!(img8.iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert_eq!(assemble_quadrants(&split_quadrants(&img8)), img8);
    }

    #[test]
    fn expectation_is_bounded_and_periodic(a in angles(), p in params(), j in 0usize..16) {
        let e = pqc_forward_analytic(&a, &p);
        prop_assert!((-1.0..=1.0).contains(&e));
        let mut shifted = p;
        shifted.z[j] += 2.0;
        prop_assert!((pqc_forward_analytic(&a, &shifted) - e).abs() < 1e-12);
    }

    #[test]
    fn gradient_is_bounded(a in angles(), p in params()) {
        let (_, g) = pqc_value_and_gradient_analytic(&a, &p);
        prop_assert!(g.iter().all(|d| d.abs() <= std::f64::consts::PI + 1e-12));
    }

    #[test]
    fn gates_preserve_norm(theta in -10.0f64..10.0, z in -4.0f64..4.0, q in 0usize..3, t in 0usize..3) {
        let mut sv = StateVector::new(3).unwrap();
        sv.apply_single(&rx(theta).unwrap(), q).unwrap();
        sv.apply_single(&rx(theta * 0.7).unwrap(), (q + 1) % 3).unwrap();
        if q != t {
            sv.apply_two(&cnot_pow(z).unwrap(), q, t).unwrap();
        }
        prop_assert!((sv.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn softmax_is_a_distribution(logits in prop::collection::vec(-50.0f64..50.0, 10)) {
        let p = softmax(&logits);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let best = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let class = argmax_predict(&p) as usize;
        prop_assert!(logits[class - 1] >= best - 1e-9);
    }

    #[test]
    fn flat_parameters_round_trip(seed in any::<u64>(), quantum in any::<bool>()) {
        let kind = if quantum { ModelKind::Quantum } else { ModelKind::Classical };
        let params = ModelParams::init(kind, seed);
        let mut other = ModelParams::init(kind, seed.wrapping_add(1));
        other.assign_flat(&params.to_flat()).unwrap();
        prop_assert_eq!(other, params);
    }

    #[test]
    fn subset_keeps_class_proportions(seed in any::<u64>(), fraction in 0.05f64..1.0) {
        let records: Vec<ExampleRecord> = (0..200)
            .map(|i| ExampleRecord::new([[0.5; 16]; 4], [0u8, 0, 1, 2, 3][i % 5]).unwrap())
            .collect();
        let subset = stratified_subset(&records, fraction, &mut stream_rng(seed, Stream::Subset)).unwrap();
        let target = (fraction * 200.0).round() as usize;
        prop_assert!(subset.len().abs_diff(target) <= 1);
        for digit in 0..4u8 {
            let share = records.iter().filter(|r| r.digit == digit).count() as f64 / 200.0;
            let got = subset.iter().filter(|r| r.digit == digit).count() as f64;
            prop_assert!((got - share * subset.len() as f64).abs() <= 1.0);
        }
    }
}
