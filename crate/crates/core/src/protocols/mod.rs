//! Two-time correlator protocols and the K statistic.
//!
//! Time model: the configured initial state is the system state at t₁, and
//! the system evolves by `u_theta(θ)` over each of the equal intervals
//! t₁→t₂ and t₂→t₃.

mod config;
mod inrm;
mod invasiveness;
mod separate;
mod simultaneous;
mod sweep;

pub use config::{CorrelatorSet, ProtocolConfig, TIMES};
pub use inrm::{inrm_branch, inrm_correlator, k_statistic_inrm, InrmBranch};
pub use invasiveness::{
    invasiveness_demo, perturbation, scattering_stages, InvasivenessDemo, PerturbationReport,
    ScatteringStage,
};
pub use separate::{correlator_separate, k_statistic_separate};
pub use simultaneous::{
    simultaneous_circuit, simultaneous_circuit_with, simultaneous_final_state, AncillaReadout,
    ANCILLA_PAIRS,
};
pub use sweep::{grid_inclusive, grid_periodic, k_statistic, sweep_k, sweep_k_with, Engine};

use crate::error::{Error, Result};

pub(crate) fn check_pair(k: usize, m: usize) -> Result<()> {
    if k >= 1 && k < m && m <= TIMES {
        Ok(())
    } else {
        Err(Error::InvalidTimePair { k, m })
    }
}
