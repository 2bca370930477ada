//! The star-topology parametrized circuit.
//!
//! Sixteen data qubits hold one 4×4 image chunk as `Rx(πx)` rotations. Each
//! data qubit then controls a `CNOT^z` on a single readout qubit that was
//! prepared in |1⟩, and the circuit output is the readout's ⟨Z⟩.
//!
//! Because every data qubit touches the readout exactly once and is never
//! reused, its effect on the readout is the mixture "rotate by `Rx(πz)` with
//! probability `p = sin²(θ/2)`". Rx rotations about a common axis commute, so
//! with `w = ⟨Z⟩ + i⟨Y⟩` starting at `-1` the whole circuit collapses to
//!
//! ```text
//! ⟨Z⟩ = −Re ∏_j [(1 − p_j) + p_j · e^{iπ z_j}]
//! ```
//!
//! which is the analytic backend. The 17-qubit statevector backend simulates
//! the same circuit gate by gate and is the reference for it.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dataset::Chunk;
use crate::error::{Error, Result};
use crate::gates::{cnot_pow, cnot_pow_block, pauli_x, rx, sin_cos_pi};
use crate::qsim::StateVector;

pub const DATA_QUBITS: usize = 16;
pub const PQC_QUBITS: usize = DATA_QUBITS + 1;

/// Which evaluator computes PQC expectations and gradients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Analytic,
    Statevector,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Analytic => "analytic",
            Backend::Statevector => "statevector",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Backend::Analytic),
            "statevector" => Ok(Backend::Statevector),
            other => Err(Error::Argument(format!("unknown backend '{other}'"))),
        }
    }
}

/// Qubit wiring of one PQC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqcLayout {
    /// `data_qubits[p]` holds pixel `p` of the chunk (raster order).
    pub data_qubits: [usize; DATA_QUBITS],
    pub readout_qubit: usize,
    /// Order in which the controlled gates are applied, as pixel/parameter
    /// slots. Slot `j` uses control `data_qubits[j]` and exponent `z[j]`.
    pub gate_order: [usize; DATA_QUBITS],
}

impl Default for PqcLayout {
    /// Pixel `p` on qubit `p`, readout on qubit 16, raster gate order.
    fn default() -> Self {
        Self {
            data_qubits: std::array::from_fn(|p| p),
            readout_qubit: DATA_QUBITS,
            gate_order: std::array::from_fn(|p| p),
        }
    }
}

impl PqcLayout {
    pub fn with_gate_order(gate_order: [usize; DATA_QUBITS]) -> Result<Self> {
        let layout = Self {
            gate_order,
            ..Self::default()
        };
        layout.validate()?;
        Ok(layout)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = [false; PQC_QUBITS];
        for &q in self.data_qubits.iter().chain(std::iter::once(&self.readout_qubit)) {
            if q >= PQC_QUBITS || std::mem::replace(&mut seen[q], true) {
                return Err(Error::Argument(format!(
                    "qubit {q} repeated or out of range in PQC layout"
                )));
            }
        }
        let mut slots = [false; DATA_QUBITS];
        for &s in &self.gate_order {
            if s >= DATA_QUBITS || std::mem::replace(&mut slots[s], true) {
                return Err(Error::Argument(
                    "gate order is not a permutation of the 16 slots".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Rotation angle per data qubit, each in `[0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChunkAngles {
    theta: [f64; DATA_QUBITS],
}

impl ChunkAngles {
    pub fn new(theta: [f64; DATA_QUBITS]) -> Result<Self> {
        if let Some(t) = theta.iter().find(|t| !(0.0..=PI).contains(*t)) {
            return Err(Error::Encoding(format!("angle {t} outside [0, π]")));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> &[f64; DATA_QUBITS] {
        &self.theta
    }

    /// Probability that each data qubit reads |1⟩, `sin²(θ/2)`.
    pub fn excitation(&self) -> [f64; DATA_QUBITS] {
        self.theta.map(|t| (t / 2.0).sin().powi(2))
    }
}

/// The 16 trainable `CNOT^z` exponents of one PQC.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PqcParams {
    pub z: [f64; DATA_QUBITS],
}

/// Maps pixel values in `[0, 1]` to angles `θ = πx` in raster order.
pub fn encode_chunk(chunk: &Chunk) -> Result<ChunkAngles> {
    if let Some(x) = chunk.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::Encoding(format!("pixel value {x} outside [0, 1]")));
    }
    ChunkAngles::new(chunk.map(|x| PI * x))
}

/// X-gate encoding: a pixel brighter than `threshold` becomes an angle of π,
/// anything else 0.
pub fn encode_chunk_binary(chunk: &Chunk, threshold: f64) -> Result<ChunkAngles> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Argument(format!("threshold {threshold} not in (0, 1)")));
    }
    ChunkAngles::new(chunk.map(|x| if x > threshold { PI } else { 0.0 }))
}

#[inline]
fn factor(p: f64, z: f64) -> Complex64 {
    let (s, c) = sin_cos_pi(z);
    Complex64::new(1.0 - p + p * c, p * s)
}

/// Closed-form readout expectation of the star circuit.
pub fn pqc_forward_analytic(angles: &ChunkAngles, params: &PqcParams) -> f64 {
    let p = angles.excitation();
    let prod = p
        .iter()
        .zip(&params.z)
        .fold(Complex64::new(1.0, 0.0), |acc, (&p, &z)| acc * factor(p, z));
    -prod.re
}

/// `∂⟨Z⟩/∂z_j` of the closed form, together with the expectation itself.
pub fn pqc_value_and_gradient_analytic(angles: &ChunkAngles, params: &PqcParams) -> (f64, [f64; DATA_QUBITS]) {
    let p = angles.excitation();
    let f: [Complex64; DATA_QUBITS] = std::array::from_fn(|j| factor(p[j], params.z[j]));
    // prefix[j] = f_0 ⋯ f_{j-1}; the suffix is accumulated on the way back
    let mut prefix = [Complex64::new(1.0, 0.0); DATA_QUBITS + 1];
    for j in 0..DATA_QUBITS {
        prefix[j + 1] = prefix[j] * f[j];
    }
    let mut grad = [0.0; DATA_QUBITS];
    let mut suffix = Complex64::new(1.0, 0.0);
    for j in (0..DATA_QUBITS).rev() {
        let (s, c) = sin_cos_pi(params.z[j]);
        // d/dz of p·e^{iπz} = iπp·e^{iπz}
        let dfactor = Complex64::new(-PI * p[j] * s, PI * p[j] * c);
        grad[j] = -(prefix[j] * suffix * dfactor).re;
        suffix *= f[j];
    }
    (-prefix[DATA_QUBITS].re, grad)
}

pub fn pqc_gradient(angles: &ChunkAngles, params: &PqcParams) -> [f64; DATA_QUBITS] {
    pqc_value_and_gradient_analytic(angles, params).1
}

/// Gate-by-gate 17-qubit simulation of one PQC with reusable buffers.
#[derive(Clone, Debug)]
pub struct StatevectorPqc {
    layout: PqcLayout,
    state: StateVector,
    costate: StateVector,
}

impl StatevectorPqc {
    pub fn new(layout: PqcLayout) -> Result<Self> {
        layout.validate()?;
        Ok(Self {
            layout,
            state: StateVector::new(PQC_QUBITS)?,
            costate: StateVector::new(PQC_QUBITS)?,
        })
    }

    pub fn layout(&self) -> &PqcLayout {
        &self.layout
    }

    fn run(&mut self, angles: &ChunkAngles, params: &PqcParams) -> Result<f64> {
        let l = &self.layout;
        let sv = &mut self.state;
        sv.reset();
        sv.apply_single(&pauli_x(), l.readout_qubit)?;
        for (p, &theta) in angles.theta().iter().enumerate() {
            sv.apply_single(&rx(theta)?, l.data_qubits[p])?;
        }
        for &slot in &l.gate_order {
            sv.apply_two(&cnot_pow(params.z[slot])?, l.data_qubits[slot], l.readout_qubit)?;
        }
        sv.expectation_z(l.readout_qubit)
    }

    pub fn forward(&mut self, angles: &ChunkAngles, params: &PqcParams) -> Result<f64> {
        self.run(angles, params)
    }

    /// Expectation and exact `∂⟨Z⟩/∂z_j` by adjoint differentiation.
    ///
    /// With `CNOT^z = |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ e^{iπz(I−X)/2}` the derivative of
    /// each gate is `G·U` with `G = (iπ/2)·|1⟩⟨1| ⊗ (I − X)`. Sweeping the
    /// gates backwards with the state `|φ⟩` and the costate `|λ⟩ = U†⋯Z|ψ⟩`
    /// gives each component as `2·Re⟨λ|G|φ⟩`.
    pub fn value_and_gradient(
        &mut self,
        angles: &ChunkAngles,
        params: &PqcParams,
    ) -> Result<(f64, [f64; DATA_QUBITS])> {
        let value = self.run(angles, params)?;
        let readout = self.layout.readout_qubit;
        self.costate.clone_from(&self.state);
        self.costate.apply_z_raw(readout);

        let h = PI / 2.0;
        let generator = [
            Complex64::new(0.0, h),
            Complex64::new(0.0, -h),
            Complex64::new(0.0, -h),
            Complex64::new(0.0, h),
        ];
        let mut grad = [0.0; DATA_QUBITS];
        for (step, &slot) in self.layout.gate_order.iter().enumerate().rev() {
            let control = self.layout.data_qubits[slot];
            let elem = self
                .costate
                .controlled_matrix_element(&self.state, &generator, control, readout);
            grad[slot] = 2.0 * elem.re;
            if step > 0 {
                let inverse = cnot_pow_block(-params.z[slot]);
                self.state.apply_controlled_raw(&inverse, control, readout);
                self.costate.apply_controlled_raw(&inverse, control, readout);
            }
        }
        Ok((value, grad))
    }
}

/// One-shot statevector evaluation of a PQC.
pub fn pqc_forward_statevector(angles: &ChunkAngles, params: &PqcParams, layout: &PqcLayout) -> Result<f64> {
    StatevectorPqc::new(layout.clone())?.forward(angles, params)
}
