//! Exact density-matrix simulation of small qubit registers.
//!
//! Basis ordering: qubit 0 is the most significant bit of the basis index,
//! so in a two-qubit register the order is |00⟩, |01⟩, |10⟩, |11⟩.

mod gates;
mod ops;
mod state;

pub use gates::{
    controlled_by_projector, controlled_phase, hadamard, on_qubit, pauli_x, pauli_y, pauli_z,
    u_theta,
};
pub use ops::{apply, apply_diagonal, apply_on_qubit, expectation, measure, partial_trace, tensor, Tensor};
pub use state::{DensityMatrix, MeasurementRecord, Observable, Outcome, Unitary, MAX_QUBITS};
