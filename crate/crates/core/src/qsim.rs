//! Dense statevector register and gate kernels.
//!
//! Bit `b` of a basis-state index addresses qubit `b` (little-endian), so a
//! gate on qubit `q` acts on amplitude pairs that are `1 << q` apart.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::GateMatrix;

pub const MAX_QUBITS: usize = 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The 2^n complex amplitudes of an n-qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-|0⟩ register.
    pub fn new(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits];
        amps[0] = ONE;
        Ok(Self { n_qubits, amps })
    }

    /// Wraps raw amplitudes. The vector is not renormalized, which lets
    /// callers build superpositions for linearity checks.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::Argument(format!(
                "{} amplitudes supplied for a {n_qubits}-qubit register",
                amps.len()
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Resets to |0…0⟩ without reallocating.
    pub fn reset(&mut self) {
        self.amps.fill(ZERO);
        self.amps[0] = ONE;
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.amps.len(), other.amps.len(), "register size mismatch");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::Index(format!(
                "qubit {q} out of range for a {}-qubit register",
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// Applies a 2×2 unitary to qubit `q` in place.
    pub fn apply_single(&mut self, gate: &GateMatrix, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        if gate.dim() != 2 {
            return Err(Error::Argument(format!("expected a 2x2 gate, got {0}x{0}", gate.dim())));
        }
        gate.check_unitary()?;
        let m = [gate.get(0, 0), gate.get(0, 1), gate.get(1, 0), gate.get(1, 1)];
        self.apply_single_raw(&m, q);
        Ok(())
    }

    /// Kernel behind [`apply_single`](Self::apply_single) without validation.
    /// `m` is row-major. Also used for non-unitary operators such as
    /// generator insertions in gradient code.
    pub(crate) fn apply_single_raw(&mut self, m: &[Complex64; 4], q: usize) {
        let stride = 1usize << q;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = m[0] * x + m[1] * y;
                *a1 = m[2] * x + m[3] * y;
            }
        }
    }

    /// Applies a 4×4 unitary to the qubit pair (`control`, `target`) in place.
    ///
    /// The gate's row/column index is `(control_bit << 1) | target_bit`.
    /// Gates whose control = 0 block is the identity (controlled gates) take a
    /// fast path that only touches the control = 1 half of the register.
    pub fn apply_two(&mut self, gate: &GateMatrix, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::Index(format!("control and target are both qubit {control}")));
        }
        if gate.dim() != 4 {
            return Err(Error::Argument(format!("expected a 4x4 gate, got {0}x{0}", gate.dim())));
        }
        gate.check_unitary()?;

        if is_controlled(gate) {
            let block = [gate.get(2, 2), gate.get(2, 3), gate.get(3, 2), gate.get(3, 3)];
            self.apply_controlled_raw(&block, control, target);
            return Ok(());
        }

        let mut m = [ZERO; 16];
        m.copy_from_slice(gate.entries());
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        let (low, high) = (control.min(target), control.max(target));
        for k in 0..self.amps.len() >> 2 {
            let base = insert_zero_bit(insert_zero_bit(k, low), high);
            let idx = [base, base | tbit, base | cbit, base | cbit | tbit];
            let v = idx.map(|i| self.amps[i]);
            for (r, &i) in idx.iter().enumerate() {
                let row = &m[r * 4..r * 4 + 4];
                self.amps[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
            }
        }
        Ok(())
    }

    /// Applies the 2×2 `block` to `target` on the subspace where `control` is 1.
    pub(crate) fn apply_controlled_raw(&mut self, block: &[Complex64; 4], control: usize, target: usize) {
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        let (low, high) = (control.min(target), control.max(target));
        for k in 0..self.amps.len() >> 2 {
            let i0 = insert_zero_bit(insert_zero_bit(k, low), high) | cbit;
            let i1 = i0 | tbit;
            let (x, y) = (self.amps[i0], self.amps[i1]);
            self.amps[i0] = block[0] * x + block[1] * y;
            self.amps[i1] = block[2] * x + block[3] * y;
        }
    }

    /// `⟨self| (|1⟩⟨1|_control ⊗ block_target) |ket⟩`.
    pub(crate) fn controlled_matrix_element(
        &self,
        ket: &StateVector,
        block: &[Complex64; 4],
        control: usize,
        target: usize,
    ) -> Complex64 {
        assert_eq!(self.amps.len(), ket.amps.len(), "register size mismatch");
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        let (low, high) = (control.min(target), control.max(target));
        let mut total = ZERO;
        for k in 0..self.amps.len() >> 2 {
            let i0 = insert_zero_bit(insert_zero_bit(k, low), high) | cbit;
            let i1 = i0 | tbit;
            let (x, y) = (ket.amps[i0], ket.amps[i1]);
            total += self.amps[i0].conj() * (block[0] * x + block[1] * y);
            total += self.amps[i1].conj() * (block[2] * x + block[3] * y);
        }
        total
    }

    /// Multiplies amplitudes with bit `q` set by −1 (the Pauli-Z operator).
    pub(crate) fn apply_z_raw(&mut self, q: usize) {
        let bit = 1usize << q;
        for (k, a) in self.amps.iter_mut().enumerate() {
            if k & bit != 0 {
                *a = -*a;
            }
        }
    }

    /// `⟨Z_q⟩ = Σ_k |a_k|² · (±1)`, + when bit `q` of `k` is 0.
    pub fn expectation_z(&self, q: usize) -> Result<f64> {
        self.check_qubit(q)?;
        let stride = 1usize << q;
        let mut total = 0.0;
        for block in self.amps.chunks_exact(stride << 1) {
            let (lo, hi) = block.split_at(stride);
            total += lo.iter().map(|a| a.norm_sqr()).sum::<f64>();
            total -= hi.iter().map(|a| a.norm_sqr()).sum::<f64>();
        }
        Ok(total)
    }
}

fn check_size(n_qubits: usize) -> Result<()> {
    if !(1..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::Size(n_qubits));
    }
    Ok(())
}

/// Inserts a 0 bit at position `pos`, shifting higher bits up.
#[inline(always)]
fn insert_zero_bit(k: usize, pos: usize) -> usize {
    let low_mask = (1usize << pos) - 1;
    ((k & !low_mask) << 1) | (k & low_mask)
}

fn is_controlled(gate: &GateMatrix) -> bool {
    let id = [[ONE, ZERO], [ZERO, ONE]];
    (0..2).all(|r| (0..2).all(|c| gate.get(r, c) == id[r][c]))
        && (0..2).all(|r| (2..4).all(|c| gate.get(r, c) == ZERO && gate.get(c, r) == ZERO))
}
