use crate::error::{Error, Result};
use crate::linalg::{qubits_for_dim, re, ComplexMatrix, ATOL, C64, I, ONE, PSD_FLOOR, ZERO};

/// Largest register the simulator is meant for.
pub const MAX_QUBITS: usize = 4;

const DICHOTOMIC_TOL: f64 = 1e-10;

/// A Hermitian, unit-trace, positive semidefinite state of 1 to 4 qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `matrix` against every density-matrix invariant.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        qubits_for_dim(matrix.rows())?;
        let deviation = matrix.hermiticity_deviation();
        if deviation > ATOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace - ONE).norm() > ATOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let min_eigenvalue = matrix.hermitian_eigenvalues()[0];
        if min_eigenvalue < PSD_FLOOR {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix known to be a valid state by construction
    /// (unitary conjugation, normalized projection, partial trace).
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    /// The pure state |ψ⟩⟨ψ| for a normalized amplitude vector.
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        qubits_for_dim(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > ATOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self::from_trusted(ComplexMatrix::outer(amplitudes, amplitudes)))
    }

    /// Computational basis state |index⟩ of an `n_qubits` register.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1 << n_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self::pure(&amps)
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1 << n_qubits;
        Ok(Self::from_trusted(
            ComplexMatrix::identity(dim).scale(re(1.0 / dim as f64)),
        ))
    }

    /// |0⟩⟨0|
    pub fn zero() -> Self {
        Self::from_trusted(ComplexMatrix::outer(&[ONE, ZERO], &[ONE, ZERO]))
    }

    /// |1⟩⟨1|
    pub fn one() -> Self {
        Self::from_trusted(ComplexMatrix::outer(&[ZERO, ONE], &[ZERO, ONE]))
    }

    /// |+⟩⟨+| with |+⟩ = (|0⟩ + |1⟩)/√2.
    pub fn plus() -> Self {
        let a = re(std::f64::consts::FRAC_1_SQRT_2);
        Self::from_trusted(ComplexMatrix::outer(&[a, a], &[a, a]))
    }

    /// Single-qubit state (I + r·σ)/2; requires |r| ≤ 1.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let [x, y, z] = r;
        let m = ComplexMatrix::from_row_major(
            2,
            2,
            &[
                re((1.0 + z) / 2.0),
                C64::new(x / 2.0, -y / 2.0),
                C64::new(x / 2.0, y / 2.0),
                re((1.0 - z) / 2.0),
            ],
        )?;
        Self::new(m)
    }

    /// Bloch coordinates (x, y, z) of a single-qubit state.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        let off = self.matrix.get(0, 1);
        let z = (self.matrix.get(0, 0) - self.matrix.get(1, 1)).re;
        Ok([2.0 * off.re, -2.0 * off.im, z])
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.matrix.approx_eq(&other.matrix, tol)
    }
}

/// A square matrix with U†U = I.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    matrix: ComplexMatrix,
}

impl Unitary {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let u = Self { matrix };
        let deviation = u.unitarity_deviation();
        if deviation > ATOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        Ok(Self::from_trusted(ComplexMatrix::identity(1 << n_qubits)))
    }

    /// ‖U†U − I‖_max
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.matrix.adjoint().inner() * self.matrix.inner();
        ComplexMatrix::from_inner(prod).max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }

    /// The product `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_trusted(self.matrix.matmul(&other.matrix)?))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_trusted(self.matrix.adjoint())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.matrix.approx_eq(&other.matrix, tol)
    }
}

/// Outcome of a dichotomic measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn value(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

/// A Hermitian operator; dichotomic ones have spectrum in {+1, −1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
    dichotomic: bool,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, dichotomic: bool) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > ATOL {
            return Err(Error::NotHermitian { deviation });
        }
        if dichotomic {
            let deviation = matrix
                .matmul(&matrix)?
                .max_abs_diff(&ComplexMatrix::identity(matrix.rows()));
            if deviation > DICHOTOMIC_TOL {
                return Err(Error::NotDichotomic { deviation });
            }
        }
        Ok(Self { matrix, dichotomic })
    }

    /// O = 2|ψ0⟩⟨ψ0| − I, which is +1 on |ψ0⟩ and −1 on its complement.
    pub fn from_state(psi0: &[C64]) -> Result<Self> {
        let projector = DensityMatrix::pure(psi0)?;
        let m = projector
            .matrix()
            .scale(re(2.0))
            .sub(&ComplexMatrix::identity(psi0.len()))?;
        Self::new(m, true)
    }

    pub fn sigma_x() -> Self {
        Self::from_trusted_pauli(&[ZERO, ONE, ONE, ZERO])
    }

    pub fn sigma_y() -> Self {
        Self::from_trusted_pauli(&[ZERO, -I, I, ZERO])
    }

    pub fn sigma_z() -> Self {
        Self::from_trusted_pauli(&[ONE, ZERO, ZERO, -ONE])
    }

    fn from_trusted_pauli(entries: &[C64; 4]) -> Self {
        Self {
            matrix: ComplexMatrix::from_row_major(2, 2, entries).expect("2x2"),
            dichotomic: true,
        }
    }

    /// The same observable acting on `qubit` of an `n_qubits` register.
    pub fn on_qubit(&self, qubit: usize, n_qubits: usize) -> Result<Self> {
        let matrix = crate::linalg::embed_single(&self.matrix, qubit, n_qubits)?;
        Ok(Self {
            matrix,
            dichotomic: self.dichotomic,
        })
    }

    /// Spectral projector (I ± O)/2 for the given outcome.
    pub fn projector(&self, outcome: Outcome) -> ComplexMatrix {
        let id = ComplexMatrix::identity(self.dim());
        let signed = self.matrix.scale(re(outcome.value()));
        id.add(&signed).expect("same shape").scale(re(0.5))
    }

    pub fn is_dichotomic(&self) -> bool {
        self.dichotomic
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.matrix.trace().norm() <= tol
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.matrix.approx_eq(&other.matrix, tol)
    }
}

/// One branch of a projective measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub outcome: Outcome,
    pub probability: f64,
    /// Normalized post-measurement state; `None` when the branch has
    /// probability at or below 1e-12.
    pub post_state: Option<DensityMatrix>,
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "register must have 1 to {MAX_QUBITS} qubits, got {n_qubits}"
        )));
    }
    Ok(())
}

pub(crate) fn check_register(n_qubits: usize) -> Result<()> {
    check_qubit_count(n_qubits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_major(2, 2, &[re(0.5), ONE, ZERO, re(0.5)]).unwrap();
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rejects_bad_trace() {
        let m = ComplexMatrix::from_real(2, &[0.5, 0.0, 0.0, 0.6]).unwrap();
        assert!(matches!(DensityMatrix::new(m), Err(Error::TraceNotOne { .. })));
    }

    #[test]
    fn rejects_negative_eigenvalue() {
        let m = ComplexMatrix::from_real(2, &[1.2, 0.0, 0.0, -0.2]).unwrap();
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn rejects_odd_dimension() {
        let m = ComplexMatrix::identity(3).scale(re(1.0 / 3.0));
        assert_eq!(DensityMatrix::new(m), Err(Error::UnsupportedRegister(3)));
    }

    #[test]
    fn tiny_negative_eigenvalue_is_tolerated() {
        let m = ComplexMatrix::from_real(2, &[1.0 + 5e-11, 0.0, 0.0, -5e-11]).unwrap();
        assert!(DensityMatrix::new(m).is_ok());
    }

    #[test]
    fn bloch_round_trip() {
        let r = [0.3, -0.4, 0.5];
        let rho = DensityMatrix::from_bloch(r).unwrap();
        let back = rho.bloch_vector().unwrap();
        for i in 0..3 {
            assert!((r[i] - back[i]).abs() < ATOL);
        }
        assert!(DensityMatrix::from_bloch([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn observable_from_state_is_dichotomic() {
        let a = re(std::f64::consts::FRAC_1_SQRT_2);
        let o = Observable::from_state(&[a, a]).unwrap();
        assert!(o.approx_eq(&Observable::sigma_x(), ATOL));
        let zero = Observable::from_state(&[ONE, ZERO]).unwrap();
        assert!(zero.approx_eq(&Observable::sigma_z(), ATOL));
    }

    #[test]
    fn non_dichotomic_flagged() {
        let m = ComplexMatrix::from_real(2, &[2.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(matches!(Observable::new(m.clone(), true), Err(Error::NotDichotomic { .. })));
        assert!(Observable::new(m, false).is_ok());
    }

    #[test]
    fn unitary_check() {
        let m = ComplexMatrix::from_real(2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(Unitary::new(m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn register_limits() {
        assert!(DensityMatrix::maximally_mixed(0).is_err());
        assert!(DensityMatrix::maximally_mixed(5).is_err());
        assert_eq!(DensityMatrix::maximally_mixed(4).unwrap().dim(), 16);
        assert!(DensityMatrix::basis(1, 2).is_err());
    }
}
