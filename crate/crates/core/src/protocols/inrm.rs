use super::{check_pair, CorrelatorSet, ProtocolConfig, TIMES};
use crate::error::{Error, Result};
use crate::quantum::{
    apply, controlled_by_projector, expectation, measure, partial_trace, pauli_x, DensityMatrix,
    Observable, Outcome, Tensor,
};

const PROBE: usize = 1;

/// One post-selected sub-experiment of an ideal negative result measurement.
///
/// The probe flips only when the system sits in the `coupled` eigenspace of
/// O. Runs where it did not flip are kept and assigned the other outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct InrmBranch {
    pub coupled: Outcome,
    pub kept: Outcome,
    pub flip_probability: f64,
    pub kept_probability: f64,
    /// System state in the kept runs; `None` if no run is kept.
    pub post_state: Option<DensityMatrix>,
}

/// Runs the probe interaction at instant `time` for the given coupled outcome.
pub fn inrm_branch(config: &ProtocolConfig, time: usize, coupled: Outcome) -> Result<InrmBranch> {
    if !(1..=TIMES).contains(&time) {
        return Err(Error::InvalidTimePair { k: time, m: time });
    }
    let obs = config.observable();
    let system = config.state_at(time)?;
    let joint = system.tensor(&DensityMatrix::zero());
    let coupling = controlled_by_projector(&obs.projector(coupled), &pauli_x())?;
    let joint = apply(&coupling, &joint)?;
    let probe_z = Observable::sigma_z().on_qubit(PROBE, 2)?;
    let (unflipped, flipped) = measure(&probe_z, &joint)?;
    let post_state = match unflipped.post_state {
        Some(s) => Some(partial_trace(&s, &[0])?),
        None => None,
    };
    Ok(InrmBranch {
        coupled,
        kept: coupled.flipped(),
        flip_probability: flipped.probability,
        kept_probability: unflipped.probability,
        post_state,
    })
}

/// ⟨O(t_k)O(t_m)⟩ with the t_k reading taken by ideal negative result
/// measurements and t_m read projectively. The two sub-experiments are
/// weighted by their kept-run probabilities.
pub fn inrm_correlator(config: &ProtocolConfig, k: usize, m: usize) -> Result<f64> {
    check_pair(k, m)?;
    let obs = config.observable();
    let mut total = 0.0;
    for coupled in [Outcome::Minus, Outcome::Plus] {
        let branch = inrm_branch(config, k, coupled)?;
        let Some(post) = branch.post_state else {
            continue;
        };
        let at_m = config.evolve(&post, m - k)?;
        total += branch.kept_probability * branch.kept.value() * expectation(obs, &at_m)?;
    }
    Ok(total)
}

pub fn k_statistic_inrm(config: &ProtocolConfig) -> Result<CorrelatorSet> {
    CorrelatorSet::new(
        inrm_correlator(config, 1, 2)?,
        inrm_correlator(config, 2, 3)?,
        inrm_correlator(config, 1, 3)?,
    )
}
