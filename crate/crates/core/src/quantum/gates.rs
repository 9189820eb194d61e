use super::state::{check_register, Unitary};
use crate::error::{Error, Result};
use crate::linalg::{embed_single, re, ComplexMatrix, C64, I, ONE, ZERO};

/// U(θ) = cos θ·I + i sin θ·σx, the free evolution between measurement times.
pub fn u_theta(theta: f64) -> Unitary {
    let (s, c) = theta.sin_cos();
    let m = ComplexMatrix::from_row_major(2, 2, &[re(c), C64::new(0.0, s), C64::new(0.0, s), re(c)])
        .expect("2x2");
    Unitary::from_trusted(m)
}

pub fn hadamard() -> Unitary {
    let a = re(std::f64::consts::FRAC_1_SQRT_2);
    Unitary::from_trusted(ComplexMatrix::from_row_major(2, 2, &[a, a, a, -a]).expect("2x2"))
}

pub fn pauli_x() -> Unitary {
    Unitary::from_trusted(ComplexMatrix::from_row_major(2, 2, &[ZERO, ONE, ONE, ZERO]).expect("2x2"))
}

pub fn pauli_y() -> Unitary {
    Unitary::from_trusted(ComplexMatrix::from_row_major(2, 2, &[ZERO, -I, I, ZERO]).expect("2x2"))
}

pub fn pauli_z() -> Unitary {
    Unitary::from_trusted(ComplexMatrix::from_row_major(2, 2, &[ONE, ZERO, ZERO, -ONE]).expect("2x2"))
}

/// Lifts a single-qubit gate onto `qubit` of an `n_qubits` register.
pub fn on_qubit(gate: &Unitary, qubit: usize, n_qubits: usize) -> Result<Unitary> {
    check_register(n_qubits)?;
    Ok(Unitary::from_trusted(embed_single(gate.matrix(), qubit, n_qubits)?))
}

/// Controlled-Z: a −1 phase on basis states where both qubits are |1⟩.
/// Symmetric in `control` and `target`.
pub fn controlled_phase(control: usize, target: usize, n_qubits: usize) -> Result<Unitary> {
    check_register(n_qubits)?;
    for index in [control, target] {
        if index >= n_qubits {
            return Err(Error::QubitOutOfRange { index, n_qubits });
        }
    }
    if control == target {
        return Err(Error::SameQubit(control));
    }
    let bit = |idx: usize, q: usize| (idx >> (n_qubits - 1 - q)) & 1;
    let diag: Vec<C64> = (0..1usize << n_qubits)
        .map(|idx| {
            if bit(idx, control) == 1 && bit(idx, target) == 1 {
                -ONE
            } else {
                ONE
            }
        })
        .collect();
    Ok(Unitary::from_trusted(ComplexMatrix::from_diagonal(&diag)))
}

/// P ⊗ V + (I − P) ⊗ I: applies `op` to a trailing target register only
/// inside the subspace selected by the projector `projector`.
pub fn controlled_by_projector(projector: &ComplexMatrix, op: &Unitary) -> Result<Unitary> {
    if !projector.is_square() {
        return Err(Error::NotSquare {
            rows: projector.rows(),
            cols: projector.cols(),
        });
    }
    let complement = ComplexMatrix::identity(projector.rows()).sub(projector)?;
    let m = projector
        .kron(op.matrix())
        .add(&complement.kron(&ComplexMatrix::identity(op.dim())))?;
    Unitary::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ATOL;
    use crate::quantum::{Observable, Outcome};
    use std::f64::consts::PI;

    #[test]
    fn u_theta_special_values() {
        assert!(u_theta(0.0).approx_eq(&Unitary::identity(1).unwrap(), ATOL));
        let ix = Unitary::from_trusted(pauli_x().matrix().scale(I));
        assert!(u_theta(PI / 2.0).approx_eq(&ix, ATOL));
    }

    #[test]
    fn cz_matches_explicit_matrix() {
        let explicit = ComplexMatrix::from_real(
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, -1.0,
            ],
        )
        .unwrap();
        let cz = controlled_phase(0, 1, 2).unwrap();
        assert!(cz.matrix().approx_eq(&explicit, 0.0));
        assert_eq!(cz, controlled_phase(1, 0, 2).unwrap());
    }

    #[test]
    fn cz_index_errors() {
        assert_eq!(controlled_phase(1, 1, 2), Err(Error::SameQubit(1)));
        assert_eq!(
            controlled_phase(0, 3, 3),
            Err(Error::QubitOutOfRange { index: 3, n_qubits: 3 })
        );
        assert!(controlled_phase(0, 1, 5).is_err());
    }

    #[test]
    fn cz_on_non_adjacent_qubits() {
        // qubits 0 and 2 of three: phase on |1x1⟩ = indices 5 and 7
        let cz = controlled_phase(0, 2, 3).unwrap();
        for idx in 0..8 {
            let expected = if idx == 5 || idx == 7 { -1.0 } else { 1.0 };
            assert_eq!(cz.matrix().get(idx, idx), re(expected));
        }
    }

    #[test]
    fn projector_controlled_not() {
        let p1 = Observable::sigma_z().projector(Outcome::Minus);
        let cnot = controlled_by_projector(&p1, &pauli_x()).unwrap();
        // |10⟩ -> |11⟩
        assert_eq!(cnot.matrix().get(3, 2), ONE);
        assert_eq!(cnot.matrix().get(0, 0), ONE);
        let not_projector = ComplexMatrix::from_real(2, &[0.5, 0.0, 0.0, 0.0]).unwrap();
        assert!(controlled_by_projector(&not_projector, &pauli_x()).is_err());
    }
}
