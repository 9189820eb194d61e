//! Thermal spin-ensemble arithmetic.
//!
//! A single-spin ensemble state splits as ε·ρ_pp + (1 − ε)·I/2. The identity
//! part is traceless under every σ-type observable, so it contributes no
//! signal, and its outcome statistics stay uniform under any unitary.

use crate::error::{Error, Result};
use crate::linalg::{re, ATOL};
use crate::quantum::{apply, expectation, measure, DensityMatrix, Observable, Unitary};

/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380649e-23;
/// Proton magnetic moment, J/T.
pub const PROTON_MAGNETIC_MOMENT: f64 = 1.41060679736e-26;
pub const DEFAULT_FIELD_TESLA: f64 = 11.7;
pub const DEFAULT_TEMPERATURE_KELVIN: f64 = 300.0;
/// Upper bound on ε that is often quoted for room-temperature NMR; reports
/// compare the computed ε against it.
pub const QUOTED_EPSILON_BOUND: f64 = 1e-7;

/// ε·ρ_pp + (1 − ε)·I/2 for a single qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoPureState {
    epsilon: f64,
    pure_part: DensityMatrix,
    degenerate: bool,
}

impl PseudoPureState {
    pub fn new(epsilon: f64, pure_part: DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidProbability {
                name: "epsilon",
                value: epsilon,
            });
        }
        if pure_part.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: pure_part.dim(),
            });
        }
        Ok(Self {
            epsilon,
            pure_part,
            degenerate: false,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn pure_part(&self) -> &DensityMatrix {
        &self.pure_part
    }

    /// True when ε = 0 and `pure_part` is the |0⟩⟨0| placeholder.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn reconstruct(&self) -> DensityMatrix {
        let half = DensityMatrix::maximally_mixed(1).expect("one qubit");
        let m = self
            .pure_part
            .matrix()
            .scale(re(self.epsilon))
            .add(&half.matrix().scale(re(1.0 - self.epsilon)))
            .expect("2x2");
        DensityMatrix::new(m).expect("convex mixture of states")
    }
}

/// Splits a single-qubit state into its pure and maximally mixed parts.
/// ε is the Bloch-vector length; ρ_pp points along the Bloch vector.
pub fn decompose(rho: &DensityMatrix) -> Result<PseudoPureState> {
    let r = rho.bloch_vector()?;
    let epsilon = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    if epsilon <= ATOL {
        return Ok(PseudoPureState {
            epsilon: 0.0,
            pure_part: DensityMatrix::zero(),
            degenerate: true,
        });
    }
    let epsilon = epsilon.min(1.0);
    let n = r.map(|x| x / epsilon);
    let pure_part = DensityMatrix::from_bloch(n)?;
    Ok(PseudoPureState {
        epsilon,
        pure_part,
        degenerate: false,
    })
}

/// Magnetic moment, field and temperature of a spin-1/2 ensemble.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalParams {
    magnetic_moment: f64,
    field: f64,
    temperature: f64,
    boltzmann: f64,
}

impl ThermalParams {
    pub fn new(magnetic_moment: f64, field: f64, temperature: f64) -> Result<Self> {
        if !(magnetic_moment > 0.0 && magnetic_moment.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "magnetic moment must be positive, got {magnetic_moment}"
            )));
        }
        if !(field >= 0.0 && field.is_finite()) {
            return Err(Error::InvalidParameter(format!("field must be >= 0, got {field}")));
        }
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        Ok(Self {
            magnetic_moment,
            field,
            temperature,
            boltzmann: BOLTZMANN,
        })
    }

    pub fn magnetic_moment(&self) -> f64 {
        self.magnetic_moment
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// μB/kT
    pub fn energy_ratio(&self) -> f64 {
        self.magnetic_moment * self.field / (self.boltzmann * self.temperature)
    }

    /// α = exp(−μB/kT)
    pub fn alpha(&self) -> f64 {
        (-self.energy_ratio()).exp()
    }
}

impl Default for ThermalParams {
    /// Protons at 11.7 T and 300 K.
    fn default() -> Self {
        Self::new(
            PROTON_MAGNETIC_MOMENT,
            DEFAULT_FIELD_TESLA,
            DEFAULT_TEMPERATURE_KELVIN,
        )
        .expect("valid defaults")
    }
}

/// ε = (1 − α)/(1 + α). Evaluated through expm1 because α is within 1e-4
/// of 1 at typical fields, where 1 − α cancels.
pub fn thermal_epsilon(params: &ThermalParams) -> f64 {
    let alpha_minus_one = (-params.energy_ratio()).exp_m1();
    -alpha_minus_one / (2.0 + alpha_minus_one)
}

/// tr(O ρ) of the full ensemble state. The observable must be traceless so
/// that the identity component cancels.
pub fn observable_signal(state: &PseudoPureState, obs: &Observable) -> Result<f64> {
    check_signal_observable(obs)?;
    expectation(obs, &state.reconstruct())
}

/// Contributions (pure part, identity part) to the ensemble signal.
pub fn signal_components(state: &PseudoPureState, obs: &Observable) -> Result<(f64, f64)> {
    check_signal_observable(obs)?;
    let pure = state.epsilon * expectation(obs, &state.pure_part)?;
    let identity = (1.0 - state.epsilon) * expectation(obs, &DensityMatrix::maximally_mixed(1)?)?;
    Ok((pure, identity))
}

fn check_signal_observable(obs: &Observable) -> Result<()> {
    if !obs.is_dichotomic() {
        return Err(Error::NotDichotomic { deviation: f64::NAN });
    }
    if !obs.is_traceless(ATOL) {
        return Err(Error::NotTraceless {
            trace: obs.matrix().trace().re,
        });
    }
    Ok(())
}

/// Single-qubit gates applied in order, then a dichotomic readout.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeCircuit {
    pub gates: Vec<Unitary>,
    pub readout: Observable,
}

impl ProbeCircuit {
    pub fn measure_only(readout: Observable) -> Self {
        Self {
            gates: Vec::new(),
            readout,
        }
    }

    fn run(&self, rho: &DensityMatrix) -> Result<ComponentStatistics> {
        let mut state = rho.clone();
        for gate in &self.gates {
            state = apply(gate, &state)?;
        }
        let (plus, minus) = measure(&self.readout, &state)?;
        Ok(ComponentStatistics {
            prob_plus: plus.probability,
            prob_minus: minus.probability,
            signal: expectation(&self.readout, &state)?,
        })
    }
}

/// Outcome statistics of one ensemble component under a probe circuit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentStatistics {
    pub prob_plus: f64,
    pub prob_minus: f64,
    pub signal: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FairSamplingReport {
    pub epsilon: f64,
    pub pure_component: ComponentStatistics,
    pub identity_component: ComponentStatistics,
    /// Signal of the full ensemble state.
    pub observed_signal: f64,
    /// ε times the pure-component signal.
    pub scaled_pure_signal: f64,
    /// Whether the two components have different outcome distributions.
    pub components_differ: bool,
}

/// Runs `circuit` on the pure and identity components separately and on the
/// whole ensemble state.
pub fn fair_sampling_report(
    state: &PseudoPureState,
    circuit: &ProbeCircuit,
) -> Result<FairSamplingReport> {
    let pure_component = circuit.run(&state.pure_part)?;
    let identity_component = circuit.run(&DensityMatrix::maximally_mixed(1)?)?;
    let observed_signal = circuit.run(&state.reconstruct())?.signal;
    let components_differ = (pure_component.prob_plus - identity_component.prob_plus).abs() > ATOL;
    Ok(FairSamplingReport {
        epsilon: state.epsilon,
        pure_component,
        identity_component,
        observed_signal,
        scaled_pure_signal: state.epsilon * pure_component.signal,
        components_differ,
    })
}

/// Summary printed by the `ensemble` command.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleReport {
    pub params: ThermalParams,
    pub alpha: f64,
    pub epsilon: f64,
    pub quoted_bound: f64,
    /// False when the computed ε does not fall below the quoted bound.
    pub quoted_bound_reproduced: bool,
    /// Signal of ρ = ε|0⟩⟨0| + (1 − ε)I/2 under σz.
    pub sigma_z_signal: f64,
    pub identity_signal: f64,
}

pub fn ensemble_report(params: &ThermalParams) -> Result<EnsembleReport> {
    let epsilon = thermal_epsilon(params);
    let state = PseudoPureState::new(epsilon, DensityMatrix::zero())?;
    let (_, identity_signal) = signal_components(&state, &Observable::sigma_z())?;
    Ok(EnsembleReport {
        params: *params,
        alpha: params.alpha(),
        epsilon,
        quoted_bound: QUOTED_EPSILON_BOUND,
        quoted_bound_reproduced: epsilon < QUOTED_EPSILON_BOUND,
        sigma_z_signal: observable_signal(&state, &Observable::sigma_z())?,
        identity_signal,
    })
}
