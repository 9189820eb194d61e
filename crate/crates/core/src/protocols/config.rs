use crate::error::{Error, Result};
use crate::linalg::STAT_TOL;
use crate::quantum::{apply, u_theta, DensityMatrix, Observable};

/// Number of measurement instants t₁, t₂, t₃.
pub const TIMES: usize = 3;

/// The correlators C₁₂, C₂₃, C₁₃ of one protocol run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelatorSet {
    c12: f64,
    c23: f64,
    c13: f64,
}

impl CorrelatorSet {
    pub fn new(c12: f64, c23: f64, c13: f64) -> Result<Self> {
        for (name, c) in [("c12", c12), ("c23", c23), ("c13", c13)] {
            if !c.is_finite() || c.abs() > 1.0 + STAT_TOL {
                return Err(Error::InvalidParameter(format!(
                    "correlator {name} = {c} outside [-1, 1]"
                )));
            }
        }
        Ok(Self { c12, c23, c13 })
    }

    pub fn c12(&self) -> f64 {
        self.c12
    }

    pub fn c23(&self) -> f64 {
        self.c23
    }

    pub fn c13(&self) -> f64 {
        self.c13
    }

    /// K = C₁₂ + C₂₃ − C₁₃; macrorealism with non-invasive measurement bounds it by 1.
    pub fn k(&self) -> f64 {
        self.c12 + self.c23 - self.c13
    }

    /// Correlator for the pair (k, m); 1 ≤ k < m ≤ 3.
    pub fn get(&self, k: usize, m: usize) -> Option<f64> {
        match (k, m) {
            (1, 2) => Some(self.c12),
            (2, 3) => Some(self.c23),
            (1, 3) => Some(self.c13),
            _ => None,
        }
    }

    pub fn violates_bound(&self, tol: f64) -> bool {
        self.k() > 1.0 + tol
    }
}

/// Equal-interval evolution angle, initial system state and measured observable.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolConfig {
    theta: f64,
    initial_state: DensityMatrix,
    observable: Observable,
}

impl ProtocolConfig {
    /// Maximally mixed initial state measured with σz.
    pub fn new(theta: f64) -> Self {
        Self {
            theta,
            initial_state: DensityMatrix::maximally_mixed(1).expect("one qubit"),
            observable: Observable::sigma_z(),
        }
    }

    pub fn with_initial_state(mut self, rho: DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rho.dim(),
            });
        }
        self.initial_state = rho;
        Ok(self)
    }

    pub fn with_observable(mut self, obs: Observable) -> Result<Self> {
        if obs.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: obs.dim(),
            });
        }
        if !obs.is_dichotomic() {
            return Err(Error::NotDichotomic { deviation: f64::NAN });
        }
        self.observable = obs;
        Ok(self)
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn initial_state(&self) -> &DensityMatrix {
        &self.initial_state
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }

    /// System state at t_time when nothing has been measured before it.
    pub(crate) fn state_at(&self, time: usize) -> Result<DensityMatrix> {
        self.evolve(&self.initial_state, time - 1)
    }

    /// Free evolution over `intervals` equal steps.
    pub(crate) fn evolve(&self, rho: &DensityMatrix, intervals: usize) -> Result<DensityMatrix> {
        apply(&u_theta(intervals as f64 * self.theta), rho)
    }
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self::new(0.0)
    }
}
