//! Unitary matrices for the gate set used by the model.
//!
//! Two-qubit matrices are written in the (control, target) basis order with
//! the control as the high bit of the 2-bit block index, so `cnot()` reads
//! exactly like the textbook 4×4 matrix.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance of [`GateMatrix::check_unitary`].
pub const UNITARY_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense 2×2 or 4×4 complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct GateMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl GateMatrix {
    /// Builds a matrix from row-major entries. `dim` must be 2 or 4.
    pub fn from_rows(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::Argument(format!("gate dimension must be 2 or 4, got {dim}")));
        }
        if entries.len() != dim * dim {
            return Err(Error::Argument(format!(
                "expected {} entries for a {dim}x{dim} gate, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim == 2 || dim == 4, "gate dimension must be 2 or 4");
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        Self { dim: d, entries }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Largest elementwise modulus of `self - other`. Panics on a dimension mismatch.
    pub fn max_abs_diff(&self, other: &GateMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise deviation of `G†G` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&GateMatrix::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Returns a gate error if `‖G†G − I‖` exceeds [`UNITARY_TOL`].
    pub fn check_unitary(&self) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > UNITARY_TOL || !deviation.is_finite() {
            return Err(Error::Gate { deviation });
        }
        Ok(())
    }

    /// Matrix-vector product, mostly useful for small checks.
    pub fn apply_to(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }
}

impl Mul for &GateMatrix {
    type Output = GateMatrix;

    fn mul(self, rhs: &GateMatrix) -> GateMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = vec![ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[r * d + c] = (0..d).map(|k| self.get(r, k) * rhs.get(k, c)).sum();
            }
        }
        GateMatrix { dim: d, entries }
    }
}

impl fmt::Debug for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GateMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let e = self.get(r, c);
                    format!("{:+.6}{:+.6}i", e.re, e.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> GateMatrix {
    GateMatrix {
        dim: 2,
        entries: vec![ZERO, ONE, ONE, ZERO],
    }
}

pub fn hadamard() -> GateMatrix {
    let h = c(FRAC_1_SQRT_2, 0.0);
    GateMatrix {
        dim: 2,
        entries: vec![h, h, h, -h],
    }
}

/// Rotation about the x axis, `exp(-iθX/2)`.
pub fn rx(theta: f64) -> Result<GateMatrix> {
    if !theta.is_finite() {
        return Err(Error::Argument(format!("rx angle must be finite, got {theta}")));
    }
    let (s, co) = (theta / 2.0).sin_cos();
    Ok(GateMatrix {
        dim: 2,
        entries: vec![c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)],
    })
}

pub fn cnot() -> GateMatrix {
    let mut entries = vec![ZERO; 16];
    entries[0] = ONE;
    entries[5] = ONE;
    entries[11] = ONE;
    entries[14] = ONE;
    GateMatrix { dim: 4, entries }
}

/// `(sin πx, cos πx)`, exact when `2x` is an integer.
pub fn sin_cos_pi(x: f64) -> (f64, f64) {
    let r = x - 2.0 * (x / 2.0).round();
    let quarter = (2.0 * r).round();
    let (s, co) = (PI * (r - quarter / 2.0)).sin_cos();
    match quarter as i32 {
        0 => (s, co),
        1 => (co, -s),
        -1 => (-co, s),
        _ => (-s, -co),
    }
}

/// The lower-right (control = 1) block of [`cnot_pow`]: `[[gc, -igs], [-igs, gc]]`
/// with `c = cos(πz/2)`, `s = sin(πz/2)`, `g = exp(iπz/2)`.
///
/// Equal to `g · Rx(πz)`.
pub fn cnot_pow_block(z: f64) -> [Complex64; 4] {
    let (s, co) = sin_cos_pi(z / 2.0);
    let g = c(co, s);
    let diag = g * co;
    let off = g * c(0.0, -s);
    [diag, off, off, diag]
}

/// Fractional power of CNOT. `z = 0` is the identity and `z = 1` is [`cnot`].
///
/// The global phase `g` on the controlled block is kept, so the matrix is
/// `CNOT^z` exactly rather than a phase-stripped controlled rotation.
pub fn cnot_pow(z: f64) -> Result<GateMatrix> {
    if !z.is_finite() {
        return Err(Error::Argument(format!("cnot_pow exponent must be finite, got {z}")));
    }
    let [a, b, cc, d] = cnot_pow_block(z);
    let mut entries = vec![ZERO; 16];
    entries[0] = ONE;
    entries[5] = ONE;
    entries[10] = a;
    entries[11] = b;
    entries[14] = cc;
    entries[15] = d;
    Ok(GateMatrix { dim: 4, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    fn mat2(rows: [[Complex64; 2]; 2]) -> GateMatrix {
        GateMatrix::from_rows(2, rows.concat()).unwrap()
    }

    #[test]
    fn pauli_x_is_involution() {
        let x = pauli_x();
        assert_eq!(x.entries(), &[ZERO, ONE, ONE, ZERO]);
        assert!((&x * &x).max_abs_diff(&GateMatrix::identity(2)) < TOL);
    }

    #[test]
    fn pauli_x_is_rx_pi_up_to_phase() {
        let phased = rx(PI).unwrap().scale(c(0.0, 1.0));
        assert!(phased.max_abs_diff(&pauli_x()) < TOL);
    }

    #[test]
    fn hadamard_columns() {
        let h = hadamard();
        assert!((&h * &h).max_abs_diff(&GateMatrix::identity(2)) < TOL);
        let plus = h.apply_to(&[ONE, ZERO]);
        let minus = h.apply_to(&[ZERO, ONE]);
        for (got, want) in plus.iter().zip([FRAC_1_SQRT_2, FRAC_1_SQRT_2]) {
            assert!((got - c(want, 0.0)).norm() < TOL);
        }
        for (got, want) in minus.iter().zip([FRAC_1_SQRT_2, -FRAC_1_SQRT_2]) {
            assert!((got - c(want, 0.0)).norm() < TOL);
        }
    }

    #[test]
    fn rx_special_angles() {
        assert!(rx(0.0).unwrap().max_abs_diff(&GateMatrix::identity(2)) < TOL);
        let want_pi = mat2([[ZERO, c(0.0, -1.0)], [c(0.0, -1.0), ZERO]]);
        assert!(rx(PI).unwrap().max_abs_diff(&want_pi) < TOL);
        let h = FRAC_1_SQRT_2;
        let want_half = mat2([[c(h, 0.0), c(0.0, -h)], [c(0.0, -h), c(h, 0.0)]]);
        assert!(rx(PI / 2.0).unwrap().max_abs_diff(&want_half) < TOL);
    }

    #[test]
    fn non_finite_arguments_rejected() {
        assert!(matches!(rx(f64::NAN), Err(Error::Argument(_))));
        assert!(matches!(rx(f64::INFINITY), Err(Error::Argument(_))));
        assert!(matches!(cnot_pow(f64::NAN), Err(Error::Argument(_))));
    }

    #[test]
    fn cnot_matches_textbook_and_powers() {
        let cx = cnot();
        let expected = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
        for (r, row) in expected.iter().enumerate() {
            for (col, &v) in row.iter().enumerate() {
                assert_eq!(cx.get(r, col), c(v as f64, 0.0));
            }
        }
        assert!((&cx * &cx).max_abs_diff(&GateMatrix::identity(4)) < TOL);
        assert_eq!(cnot_pow(1.0).unwrap().max_abs_diff(&cx), 0.0);
        assert_eq!(cnot_pow(0.0).unwrap().max_abs_diff(&GateMatrix::identity(4)), 0.0);
        assert_eq!(cnot_pow(-3.0).unwrap().max_abs_diff(&cx), 0.0);
    }

    #[test]
    fn sin_cos_pi_matches_libm() {
        assert_eq!(sin_cos_pi(0.5), (1.0, 0.0));
        assert_eq!(sin_cos_pi(-0.5), (-1.0, 0.0));
        assert_eq!(sin_cos_pi(3.0).1, -1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let x: f64 = rng.random_range(-10.0..10.0);
            let (s, co) = sin_cos_pi(x);
            let (ws, wc) = (PI * x).sin_cos();
            assert!((s - ws).abs() < 1e-14 && (co - wc).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn cnot_half_power_block() {
        let m = cnot_pow(0.5).unwrap();
        let g = Complex64::from_polar(1.0, PI / 4.0);
        let h = FRAC_1_SQRT_2;
        assert!((m.get(2, 2) - g * h).norm() < TOL);
        assert!((m.get(2, 3) - c(0.0, -1.0) * g * h).norm() < TOL);
        assert!((m.get(3, 2) - c(0.0, -1.0) * g * h).norm() < TOL);
        assert!((m.get(3, 3) - g * h).norm() < TOL);
        // square root of CNOT
        assert!((&m * &m).max_abs_diff(&cnot()) < TOL);
    }

    #[test]
    fn non_unitary_rejected() {
        let bad = mat2([[ONE, ONE], [ZERO, ONE]]);
        assert!(matches!(bad.check_unitary(), Err(Error::Gate { .. })));
        assert!(GateMatrix::from_rows(3, vec![ZERO; 9]).is_err());
        assert!(GateMatrix::from_rows(2, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn constructors_are_unitary_and_cnot_pow_is_a_periodic_semigroup() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [pauli_x(), hadamard(), cnot()] {
            assert!(g.is_unitary(TOL));
        }
        for _ in 0..100 {
            let z1: f64 = rng.random_range(-4.0..4.0);
            let z2: f64 = rng.random_range(-4.0..4.0);
            let theta: f64 = rng.random_range(-10.0..10.0);
            assert!(rx(theta).unwrap().is_unitary(TOL));
            let a = cnot_pow(z1).unwrap();
            let b = cnot_pow(z2).unwrap();
            assert!(a.is_unitary(TOL));
            assert!((&a * &b).max_abs_diff(&cnot_pow(z1 + z2).unwrap()) < TOL);
            assert!(a.max_abs_diff(&cnot_pow(z1 + 4.0).unwrap()) < TOL);
        }
    }

    #[test]
    fn block_is_phase_times_rx() {
        for z in [-1.3, 0.0, 0.25, 0.7, 1.0, 2.9] {
            let block = cnot_pow_block(z);
            let g = Complex64::from_polar(1.0, PI * z / 2.0);
            let r = rx(PI * z).unwrap().scale(g);
            for (i, e) in block.iter().enumerate() {
                assert!((e - r.entries()[i]).norm() < TOL);
            }
        }
    }
}
