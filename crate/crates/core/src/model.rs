//! The hybrid quantum model and the dense baseline.
//!
//! Quantum model: the four image quadrants feed two parallel layers of four
//! PQCs each (quadrant `k` → PQC `k` of both layers); the eight readout
//! expectations are merged by a dense 8→10 softmax head. 8·16 + 8·10 + 10 = 218
//! trainable scalars.
//!
//! Baseline: 64 → 4 (ReLU) → 10 (softmax), 260 + 50 = 310 trainable scalars.
//!
//! Both models expose their parameters as one flat vector in a fixed order
//! so the optimizer never needs to know which model it is driving.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{Chunk, ExampleRecord};
use crate::error::{Error, Result};
use crate::nn::{cce_loss, softmax_cce_grad, Activation, DenseLayer, OneHotLabel, NUM_CLASSES};
use crate::pqc::{
    encode_chunk, pqc_forward_analytic, pqc_value_and_gradient_analytic, Backend, ChunkAngles, PqcLayout, PqcParams,
    StatevectorPqc, DATA_QUBITS,
};
use crate::rng::{stream_rng, Stream};

pub const NUM_PQCS: usize = 8;
pub const QUANTUM_PARAM_COUNT: usize = NUM_PQCS * DATA_QUBITS + NUM_PQCS * NUM_CLASSES + NUM_CLASSES;
pub const BASELINE_PARAM_COUNT: usize = 64 * 4 + 4 + 4 * 10 + 10;
const BASELINE_HIDDEN: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[default]
    Quantum,
    Classical,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Quantum => "quantum",
            ModelKind::Classical => "classical",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum" => Ok(ModelKind::Quantum),
            "classical" => Ok(ModelKind::Classical),
            other => Err(Error::Argument(format!("unknown model '{other}'"))),
        }
    }
}

/// All trainable scalars of either model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModelParams {
    Quantum {
        /// PQCs 0–3 form the first parallel layer, 4–7 the second.
        pqcs: Vec<PqcParams>,
        head: DenseLayer,
    },
    Baseline {
        hidden: DenseLayer,
        output: DenseLayer,
    },
}

impl ModelParams {
    /// PQC exponents uniform on `[0, 1)`, head Glorot-uniform.
    pub fn init_quantum<R: Rng>(rng: &mut R) -> Self {
        let pqcs = (0..NUM_PQCS)
            .map(|_| PqcParams {
                z: std::array::from_fn(|_| rng.random::<f64>()),
            })
            .collect();
        let head = DenseLayer::glorot_uniform(NUM_PQCS, NUM_CLASSES, Activation::Softmax, rng);
        ModelParams::Quantum { pqcs, head }
    }

    pub fn init_baseline<R: Rng>(rng: &mut R) -> Self {
        let hidden = DenseLayer::glorot_uniform(64, BASELINE_HIDDEN, Activation::Relu, rng);
        let output = DenseLayer::glorot_uniform(BASELINE_HIDDEN, NUM_CLASSES, Activation::Softmax, rng);
        ModelParams::Baseline { hidden, output }
    }

    /// Seeded initialization from the run's dedicated init stream.
    pub fn init(kind: ModelKind, seed: u64) -> Self {
        let mut rng = stream_rng(seed, Stream::Init);
        match kind {
            ModelKind::Quantum => Self::init_quantum(&mut rng),
            ModelKind::Classical => Self::init_baseline(&mut rng),
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Quantum { .. } => ModelKind::Quantum,
            ModelParams::Baseline { .. } => ModelKind::Classical,
        }
    }

    pub fn param_count(&self) -> usize {
        match self {
            ModelParams::Quantum { pqcs, head } => pqcs.len() * DATA_QUBITS + head.param_count(),
            ModelParams::Baseline { hidden, output } => hidden.param_count() + output.param_count(),
        }
    }

    /// Checks the fixed architecture: 8 PQCs with an 8→10 head, or 64→4→10.
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            ModelParams::Quantum { pqcs, head } => {
                pqcs.len() == NUM_PQCS
                    && head.inputs == NUM_PQCS
                    && head.outputs == NUM_CLASSES
                    && head.activation == Activation::Softmax
            }
            ModelParams::Baseline { hidden, output } => {
                hidden.inputs == 64
                    && hidden.outputs == BASELINE_HIDDEN
                    && output.inputs == BASELINE_HIDDEN
                    && output.outputs == NUM_CLASSES
                    && output.activation == Activation::Softmax
            }
        };
        let layers_ok = match self {
            ModelParams::Quantum { head, .. } => dense_consistent(head),
            ModelParams::Baseline { hidden, output } => dense_consistent(hidden) && dense_consistent(output),
        };
        if !ok || !layers_ok {
            return Err(Error::Parameter(format!("{} model has the wrong shape", self.kind())));
        }
        Ok(())
    }

    /// Flat order: PQC exponents (PQC-major), then each dense layer's weights
    /// (row-major) followed by its biases.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        match self {
            ModelParams::Quantum { pqcs, head } => {
                for p in pqcs {
                    out.extend_from_slice(&p.z);
                }
                head.write_flat(&mut out);
            }
            ModelParams::Baseline { hidden, output } => {
                hidden.write_flat(&mut out);
                output.write_flat(&mut out);
            }
        }
        out
    }

    pub fn assign_flat(&mut self, flat: &[f64]) -> Result<()> {
        if flat.len() != self.param_count() {
            return Err(Error::Parameter(format!(
                "expected {} parameters, got {}",
                self.param_count(),
                flat.len()
            )));
        }
        match self {
            ModelParams::Quantum { pqcs, head } => {
                let (zs, rest) = flat.split_at(pqcs.len() * DATA_QUBITS);
                for (p, z) in pqcs.iter_mut().zip(zs.chunks_exact(DATA_QUBITS)) {
                    p.z.copy_from_slice(z);
                }
                head.read_flat(rest)?;
            }
            ModelParams::Baseline { hidden, output } => {
                let rest = hidden.read_flat(flat)?;
                output.read_flat(rest)?;
            }
        }
        Ok(())
    }
}

fn dense_consistent(layer: &DenseLayer) -> bool {
    layer.weights.len() == layer.inputs * layer.outputs && layer.biases.len() == layer.outputs
}

/// Evaluates PQC expectations (and optionally gradients) with either backend.
pub enum PqcEvaluator {
    Analytic,
    Statevector(Box<StatevectorPqc>),
}

impl PqcEvaluator {
    pub fn new(backend: Backend) -> Self {
        match backend {
            Backend::Analytic => PqcEvaluator::Analytic,
            Backend::Statevector => PqcEvaluator::Statevector(Box::new(
                StatevectorPqc::new(PqcLayout::default()).expect("default layout is valid"),
            )),
        }
    }

    pub fn value(&mut self, angles: &ChunkAngles, params: &PqcParams) -> Result<f64> {
        match self {
            PqcEvaluator::Analytic => Ok(pqc_forward_analytic(angles, params)),
            PqcEvaluator::Statevector(sim) => sim.forward(angles, params),
        }
    }

    pub fn value_and_gradient(
        &mut self,
        angles: &ChunkAngles,
        params: &PqcParams,
    ) -> Result<(f64, [f64; DATA_QUBITS])> {
        match self {
            PqcEvaluator::Analytic => Ok(pqc_value_and_gradient_analytic(angles, params)),
            PqcEvaluator::Statevector(sim) => sim.value_and_gradient(angles, params),
        }
    }
}

/// Output of the quantum model's forward pass.
#[derive(Clone, Debug)]
pub struct QuantumForward {
    /// Readout expectations of PQCs 0–7.
    pub expectations: [f64; NUM_PQCS],
    pub probabilities: Vec<f64>,
}

fn encode_all(chunks: &[Chunk; 4]) -> Result<[ChunkAngles; 4]> {
    Ok([
        encode_chunk(&chunks[0])?,
        encode_chunk(&chunks[1])?,
        encode_chunk(&chunks[2])?,
        encode_chunk(&chunks[3])?,
    ])
}

/// Duplicates the quadrants into two PQC layers, merges the eight readouts
/// through the softmax head and returns class probabilities.
pub fn quantum_model_forward(
    chunks: &[Chunk; 4],
    pqcs: &[PqcParams],
    head: &DenseLayer,
    eval: &mut PqcEvaluator,
) -> Result<QuantumForward> {
    if pqcs.len() != NUM_PQCS {
        return Err(Error::Parameter(format!(
            "expected {NUM_PQCS} PQCs, got {}",
            pqcs.len()
        )));
    }
    let angles = encode_all(chunks)?;
    let mut expectations = [0.0; NUM_PQCS];
    for (k, e) in expectations.iter_mut().enumerate() {
        *e = eval.value(&angles[k % 4], &pqcs[k])?;
    }
    let probabilities = head.forward(&expectations)?.output;
    Ok(QuantumForward {
        expectations,
        probabilities,
    })
}

/// Loss, flat gradient and probabilities for one example.
#[derive(Clone, Debug)]
pub struct ExampleGrad {
    pub loss: f64,
    pub grad: Vec<f64>,
    pub probabilities: Vec<f64>,
}

/// Class probabilities for one example.
pub fn predict(params: &ModelParams, record: &ExampleRecord, eval: &mut PqcEvaluator) -> Result<Vec<f64>> {
    match params {
        ModelParams::Quantum { pqcs, head } => {
            Ok(quantum_model_forward(&record.chunks, pqcs, head, eval)?.probabilities)
        }
        ModelParams::Baseline { hidden, output } => {
            let a = hidden.forward(&record.image8())?;
            Ok(output.forward(&a.output)?.output)
        }
    }
}

/// Cross-entropy of one example and its gradient with respect to every
/// parameter, in [`ModelParams::to_flat`] order.
pub fn loss_and_gradient(params: &ModelParams, record: &ExampleRecord, eval: &mut PqcEvaluator) -> Result<ExampleGrad> {
    let truth = OneHotLabel::new(record.label)?;
    let mut grad = Vec::with_capacity(params.param_count());
    let probabilities = match params {
        ModelParams::Quantum { pqcs, head } => {
            if pqcs.len() != NUM_PQCS {
                return Err(Error::Parameter(format!(
                    "expected {NUM_PQCS} PQCs, got {}",
                    pqcs.len()
                )));
            }
            let angles = encode_all(&record.chunks)?;
            let mut expectations = [0.0; NUM_PQCS];
            let mut pqc_grads = [[0.0; DATA_QUBITS]; NUM_PQCS];
            for k in 0..NUM_PQCS {
                let (v, g) = eval.value_and_gradient(&angles[k % 4], &pqcs[k])?;
                expectations[k] = v;
                pqc_grads[k] = g;
            }
            let cache = head.forward(&expectations)?;
            let hg = head.backward_pre_activation(&cache, &softmax_cce_grad(&cache.output, truth))?;
            for (k, g) in pqc_grads.iter().enumerate() {
                grad.extend(g.iter().map(|d| hg.input[k] * d));
            }
            grad.extend_from_slice(&hg.weights);
            grad.extend_from_slice(&hg.biases);
            cache.output
        }
        ModelParams::Baseline { hidden, output } => {
            let hc = hidden.forward(&record.image8())?;
            let oc = output.forward(&hc.output)?;
            let og = output.backward_pre_activation(&oc, &softmax_cce_grad(&oc.output, truth))?;
            let hg = hidden.backward(&hc, &og.input)?;
            grad.extend_from_slice(&hg.weights);
            grad.extend_from_slice(&hg.biases);
            grad.extend_from_slice(&og.weights);
            grad.extend_from_slice(&og.biases);
            oc.output
        }
    };
    let loss = cce_loss(&probabilities, truth)?;
    Ok(ExampleGrad {
        loss,
        grad,
        probabilities,
    })
}
