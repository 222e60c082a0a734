//! N-qubit state vectors and density matrices.
//!
//! The density matrix is the primary representation; [`StateVector`] exists
//! for noiseless cross-checks of the pipeline. Structural invariants
//! (Hermiticity, unit trace) are enforced at 1e-12 and positive
//! semidefiniteness at -1e-10 on the minimum eigenvalue.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Entrywise tolerance for Hermiticity and trace checks.
pub const STRUCTURAL_TOL: f64 = 1e-12;
/// Floor for the minimum eigenvalue of a positive semidefinite matrix.
pub const PSD_MIN_EIGENVALUE: f64 = -1e-10;
/// Max `|UU' - I|` accepted when conjugating by a unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Pure N-qubit state with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Builds a state from 2^qubits amplitudes; the squared-amplitude sum
    /// must be 1 within 1e-12.
    pub fn try_new(qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: dim,
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("state norm^2 = {norm_sq} deviates from 1"),
            });
        }
        Ok(Self {
            qubits,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// |00...0>
    pub fn ground(qubits: usize) -> Self {
        assert!(qubits >= 1, "need at least one qubit");
        let dim = 1usize << qubits;
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self { qubits, amplitudes }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Measurement probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies a 2x2 operator to one qubit in place.
    pub(crate) fn apply_single_qubit(&mut self, op: &ComplexMatrix, qubit: usize) {
        debug_assert_eq!(op.dim(), 2);
        let bit = 1usize << (self.qubits - 1 - qubit);
        let (a, b) = (op.get(0, 0), op.get(0, 1));
        let (c, d) = (op.get(1, 0), op.get(1, 1));
        for r0 in 0..self.amplitudes.len() {
            if r0 & bit != 0 {
                continue;
            }
            let r1 = r0 | bit;
            let x0 = self.amplitudes[r0];
            let x1 = self.amplitudes[r1];
            self.amplitudes[r0] = a * x0 + b * x1;
            self.amplitudes[r1] = c * x0 + d * x1;
        }
    }

    /// Applies exp(+-i (gamma/2) X^(x)N) in place. X^(x)N is the index
    /// complement permutation, so the closed form only mixes `v[r]` with
    /// `v[~r]`.
    pub(crate) fn apply_entangler(&mut self, gamma: f64, inverse: bool) {
        let cos = (gamma / 2.0).cos();
        let sin = (gamma / 2.0).sin();
        let phase = if inverse {
            Complex64::new(0.0, -sin)
        } else {
            Complex64::new(0.0, sin)
        };
        let dim = self.amplitudes.len();
        for r in 0..dim / 2 {
            let rbar = dim - 1 - r;
            let x = self.amplitudes[r];
            let y = self.amplitudes[rbar];
            self.amplitudes[r] = cos * x + phase * y;
            self.amplitudes[rbar] = cos * y + phase * x;
        }
    }
}

/// Validation report for a candidate density matrix.
///
/// Produced by [`validate_density`]; a report, not an error, so invalid
/// inputs can be inspected.
#[derive(Debug, Clone, Copy)]
pub struct DensityReport {
    /// Max `|rho_ij - conj(rho_ji)|`.
    pub hermiticity_deviation: f64,
    /// `|trace - 1|`.
    pub trace_deviation: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
}

impl DensityReport {
    /// True when all three checks pass at the module tolerances.
    pub fn is_valid(&self) -> bool {
        self.hermiticity_deviation <= STRUCTURAL_TOL
            && self.trace_deviation <= STRUCTURAL_TOL
            && self.min_eigenvalue >= PSD_MIN_EIGENVALUE
    }
}

impl std::fmt::Display for DensityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "hermiticity deviation {:.3e}, trace deviation {:.3e}, min eigenvalue {:.3e}: {}",
            self.hermiticity_deviation,
            self.trace_deviation,
            self.min_eigenvalue,
            if self.is_valid() { "ok" } else { "INVALID" }
        )
    }
}

/// Diagnostic checks on an arbitrary square matrix: Hermiticity deviation,
/// trace deviation, and minimum eigenvalue.
pub fn validate_density(matrix: &ComplexMatrix) -> DensityReport {
    DensityReport {
        hermiticity_deviation: matrix.hermiticity_deviation(),
        trace_deviation: (matrix.trace() - Complex64::new(1.0, 0.0)).norm(),
        min_eigenvalue: matrix
            .hermitian_eigenvalues()
            .first()
            .copied()
            .unwrap_or(f64::NAN),
    }
}

/// Density matrix of an N-qubit system: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Accepts a 2^N-dimensional matrix that is Hermitian and unit-trace
    /// within 1e-12. Positive semidefiniteness is not eigen-checked here;
    /// use [`Self::validate`] for the full report.
    pub fn try_new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { dim });
        }
        let qubits = dim.trailing_zeros() as usize;
        if qubits == 0 {
            return Err(Error::NotPowerOfTwo { dim });
        }
        let herm = matrix.hermiticity_deviation();
        if herm > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("hermiticity deviation {herm:.3e}"),
            });
        }
        let trace_dev = (matrix.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("trace deviation {trace_dev:.3e}"),
            });
        }
        Ok(Self { qubits, matrix })
    }

    /// |psi><psi|
    pub fn pure(state: &StateVector) -> Self {
        let dim = state.dim();
        let matrix = ComplexMatrix::from_fn(dim, |r, c| {
            state.amplitude(r) * state.amplitude(c).conj()
        })
        .expect("dim >= 2");
        Self {
            qubits: state.qubits(),
            matrix,
        }
    }

    /// |00...0><00...0|
    pub fn ground(qubits: usize) -> Self {
        Self::pure(&StateVector::ground(qubits))
    }

    /// I / 2^N
    pub fn maximally_mixed(qubits: usize) -> Self {
        assert!(qubits >= 1);
        let dim = 1usize << qubits;
        let weight = Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            qubits,
            matrix: ComplexMatrix::identity(dim).scaled(weight),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `u rho u'` for unitary `u` (checked at 1e-10).
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: u.dim(),
                right: self.dim(),
            });
        }
        let deviation = u.unitarity_deviation();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        let rotated = u.matmul(&self.matrix).matmul(&u.adjoint());
        Ok(Self {
            qubits: self.qubits,
            matrix: rotated,
        })
    }

    /// Real parts of the diagonal: the computational-basis measurement
    /// probabilities.
    pub fn computational_probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix.get(i, i).re).collect()
    }

    /// Full diagnostic report (Hermiticity, trace, minimum eigenvalue).
    pub fn validate(&self) -> DensityReport {
        validate_density(&self.matrix)
    }

    /// In-place `E rho E'` sum over the given 2x2 Kraus operators acting on
    /// one qubit.
    pub(crate) fn apply_single_qubit_kraus(&mut self, ops: &[ComplexMatrix], qubit: usize) {
        debug_assert!(qubit < self.qubits);
        let dim = self.dim();
        let bit = 1usize << (self.qubits - 1 - qubit);
        let source = self.matrix.as_dmatrix().clone();
        let mut accumulator: DMatrix<Complex64> = DMatrix::zeros(dim, dim);
        let mut scratch: DMatrix<Complex64> = DMatrix::zeros(dim, dim);
        for op in ops {
            debug_assert_eq!(op.dim(), 2);
            scratch.copy_from(&source);
            left_mul_embedded(&mut scratch, op, bit);
            right_mul_embedded_adjoint(&mut scratch, op, bit);
            accumulator += &scratch;
        }
        *self.matrix.as_dmatrix_mut() = accumulator;
    }

    /// In-place `U rho U'` for a 2x2 unitary acting on one qubit.
    pub(crate) fn apply_single_qubit_unitary(&mut self, op: &ComplexMatrix, qubit: usize) {
        debug_assert!(qubit < self.qubits);
        debug_assert_eq!(op.dim(), 2);
        let bit = 1usize << (self.qubits - 1 - qubit);
        let m = self.matrix.as_dmatrix_mut();
        left_mul_embedded(m, op, bit);
        right_mul_embedded_adjoint(m, op, bit);
    }

    /// In-place `J rho J'` with `J = exp(+-i (gamma/2) X^(x)N)`.
    ///
    /// X^(x)N permutes basis index r to its complement r~, so
    /// `J rho J' = cos^2 rho + sin^2 rho[r~,c~] +- i cos sin (rho[r~,c] - rho[r,c~])`.
    pub(crate) fn apply_entangler(&mut self, gamma: f64, inverse: bool) {
        let cos = (gamma / 2.0).cos();
        let sin = (gamma / 2.0).sin();
        let cos2 = Complex64::new(cos * cos, 0.0);
        let sin2 = Complex64::new(sin * sin, 0.0);
        let cross = if inverse {
            Complex64::new(0.0, -cos * sin)
        } else {
            Complex64::new(0.0, cos * sin)
        };
        let dim = self.dim();
        let source = self.matrix.as_dmatrix().clone();
        let m = self.matrix.as_dmatrix_mut();
        for r in 0..dim {
            let rbar = dim - 1 - r;
            for c in 0..dim {
                let cbar = dim - 1 - c;
                m[(r, c)] = cos2 * source[(r, c)] + sin2 * source[(rbar, cbar)]
                    + cross * (source[(rbar, c)] - source[(r, cbar)]);
            }
        }
    }
}

/// `m <- embed(op, bit) * m`, mixing row pairs that differ at `bit`.
fn left_mul_embedded(m: &mut DMatrix<Complex64>, op: &ComplexMatrix, bit: usize) {
    let dim = m.nrows();
    let (a, b) = (op.get(0, 0), op.get(0, 1));
    let (c, d) = (op.get(1, 0), op.get(1, 1));
    for r0 in 0..dim {
        if r0 & bit != 0 {
            continue;
        }
        let r1 = r0 | bit;
        for col in 0..dim {
            let x0 = m[(r0, col)];
            let x1 = m[(r1, col)];
            m[(r0, col)] = a * x0 + b * x1;
            m[(r1, col)] = c * x0 + d * x1;
        }
    }
}

/// `m <- m * embed(op, bit)'`, mixing column pairs that differ at `bit`.
fn right_mul_embedded_adjoint(m: &mut DMatrix<Complex64>, op: &ComplexMatrix, bit: usize) {
    let dim = m.nrows();
    let (a, b) = (op.get(0, 0).conj(), op.get(0, 1).conj());
    let (c, d) = (op.get(1, 0).conj(), op.get(1, 1).conj());
    for c0 in 0..dim {
        if c0 & bit != 0 {
            continue;
        }
        let c1 = c0 | bit;
        for row in 0..dim {
            let x0 = m[(row, c0)];
            let x1 = m[(row, c1)];
            m[(row, c0)] = x0 * a + x1 * b;
            m[(row, c1)] = x0 * c + x1 * d;
        }
    }
}
