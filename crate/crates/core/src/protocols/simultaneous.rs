use super::{CorrelatorSet, ProtocolConfig, TIMES};
use crate::error::{Error, Result};
use crate::linalg::ATOL;
use crate::linalg::C64;
use crate::quantum::{
    apply, apply_diagonal, apply_on_qubit, controlled_phase, expectation, hadamard,
    partial_trace, u_theta, DensityMatrix, Observable, Tensor,
};

const SYSTEM: usize = 0;
const REGISTER: usize = 4;

/// Ancilla qubit and the pair of instants it couples to, in readout order
/// C₁₂, C₂₃, C₁₃. The system is qubit 0.
pub const ANCILLA_PAIRS: [(usize, (usize, usize)); 3] = [(1, (1, 2)), (2, (2, 3)), (3, (1, 3))];

/// Which ancilla quadrature carries the correlator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AncillaReadout {
    #[default]
    SigmaX,
    SigmaY,
}

/// Runs the single-shot three-ancilla circuit with ⟨σx⟩ readout.
pub fn simultaneous_circuit(config: &ProtocolConfig) -> Result<CorrelatorSet> {
    simultaneous_circuit_with(config, AncillaReadout::SigmaX)
}

/// All three correlators read off one final 4-qubit state.
pub fn simultaneous_circuit_with(
    config: &ProtocolConfig,
    readout: AncillaReadout,
) -> Result<CorrelatorSet> {
    let state = simultaneous_final_state(config)?;
    let quadrature = match readout {
        AncillaReadout::SigmaX => Observable::sigma_x(),
        AncillaReadout::SigmaY => Observable::sigma_y(),
    };
    let mut c = [0.0; 3];
    for (slot, (ancilla, _)) in c.iter_mut().zip(ANCILLA_PAIRS) {
        let reduced = partial_trace(&state, &[ancilla])?;
        *slot = expectation(&quadrature, &reduced)?;
    }
    CorrelatorSet::new(c[0], c[1], c[2])
}

/// Final register state: system ⊗ three ancillas, before readout.
pub fn simultaneous_final_state(config: &ProtocolConfig) -> Result<DensityMatrix> {
    if !config.observable().approx_eq(&Observable::sigma_z(), ATOL) {
        return Err(Error::ObservableNotSigmaZ);
    }
    let ancilla = apply(&hadamard(), &DensityMatrix::zero())?;
    let mut state = config.initial_state().clone();
    for _ in 0..ANCILLA_PAIRS.len() {
        state = state.tensor(&ancilla);
    }
    let evolve = u_theta(config.theta());
    for time in 1..=TIMES {
        if time > 1 {
            state = apply_on_qubit(&evolve, SYSTEM, &state)?;
        }
        state = apply_diagonal(&couplings_at(time)?, &state)?;
    }
    Ok(state)
}

/// Diagonal of the product of the controlled-phase gates fired at `time`.
fn couplings_at(time: usize) -> Result<Vec<C64>> {
    let mut phases = vec![C64::new(1.0, 0.0); 1 << REGISTER];
    for (ancilla, (a, b)) in ANCILLA_PAIRS {
        if a == time || b == time {
            let cz = controlled_phase(SYSTEM, ancilla, REGISTER)?;
            for (i, p) in phases.iter_mut().enumerate() {
                *p *= cz.matrix().get(i, i);
            }
        }
    }
    Ok(phases)
}
