//! Classical hidden-variable baselines.
//!
//! The hidden state is always ±1. Between consecutive instants it flips with
//! a fixed probability (a Markov "telegraph" process). Readouts reveal the
//! state and, in the invasive variant, flip it afterwards with probability
//! `invasive_kick`. Each correlator C_km comes from its own experiment that
//! reads only at t_k and t_m.

use crate::error::{Error, Result};
use crate::protocols::{CorrelatorSet, TIMES};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TelegraphModel {
    p_flip_per_step: f64,
    initial_prob_up: f64,
    invasive_kick: f64,
}

impl TelegraphModel {
    pub fn new(p_flip_per_step: f64, initial_prob_up: f64, invasive_kick: f64) -> Result<Self> {
        for (name, value) in [
            ("p_flip_per_step", p_flip_per_step),
            ("initial_prob_up", initial_prob_up),
            ("invasive_kick", invasive_kick),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        Ok(Self {
            p_flip_per_step,
            initial_prob_up,
            invasive_kick,
        })
    }

    pub fn non_invasive(p_flip_per_step: f64, initial_prob_up: f64) -> Result<Self> {
        Self::new(p_flip_per_step, initial_prob_up, 0.0)
    }

    /// Unbiased start with flip probability sin²θ per interval, the flip
    /// statistics of a σz-measured qubit evolving under `u_theta(θ)`.
    pub fn from_rotation_angle(theta: f64) -> Self {
        Self {
            p_flip_per_step: theta.sin().powi(2).clamp(0.0, 1.0),
            initial_prob_up: 0.5,
            invasive_kick: 0.0,
        }
    }

    pub fn p_flip_per_step(&self) -> f64 {
        self.p_flip_per_step
    }

    pub fn initial_prob_up(&self) -> f64 {
        self.initial_prob_up
    }

    pub fn invasive_kick(&self) -> f64 {
        self.invasive_kick
    }

    /// Flip probability over the interval following instant `time` in an
    /// experiment that reads at `readouts`.
    fn interval_flip(&self, time: usize, readouts: (usize, usize)) -> f64 {
        if time == readouts.0 || time == readouts.1 {
            let (p, kick) = (self.p_flip_per_step, self.invasive_kick);
            p * (1.0 - kick) + kick * (1.0 - p)
        } else {
            self.p_flip_per_step
        }
    }
}

/// Hidden values at (t₁, t₂, t₃) as seen just before any readout kick.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trajectory {
    pub states: [i8; TIMES],
    pub probability: f64,
}

/// All eight hidden trajectories of the experiment reading at t_k and t_m.
pub fn trajectories(model: &TelegraphModel, k: usize, m: usize) -> Result<Vec<Trajectory>> {
    crate::protocols::check_pair(k, m)?;
    let mut out = Vec::with_capacity(1 << TIMES);
    for bits in 0..1u8 << TIMES {
        let states = [0, 1, 2].map(|i| if bits >> (TIMES - 1 - i) & 1 == 0 { 1i8 } else { -1 });
        let mut probability = if states[0] == 1 {
            model.initial_prob_up
        } else {
            1.0 - model.initial_prob_up
        };
        for t in 1..TIMES {
            let p = model.interval_flip(t, (k, m));
            probability *= if states[t - 1] == states[t] { 1.0 - p } else { p };
        }
        out.push(Trajectory { states, probability });
    }
    Ok(out)
}

fn correlator(model: &TelegraphModel, k: usize, m: usize) -> Result<f64> {
    Ok(trajectories(model, k, m)?
        .iter()
        .map(|t| t.probability * f64::from(t.states[k - 1] * t.states[m - 1]))
        .sum())
}

fn correlators(model: &TelegraphModel) -> Result<CorrelatorSet> {
    CorrelatorSet::new(
        correlator(model, 1, 2)?,
        correlator(model, 2, 3)?,
        correlator(model, 1, 3)?,
    )
}

/// Exact correlators for non-invasive readout; K never exceeds 1.
pub fn enumerate_k(model: &TelegraphModel) -> Result<CorrelatorSet> {
    if model.invasive_kick > 0.0 {
        return Err(Error::InvasiveReadout(model.invasive_kick));
    }
    correlators(model)
}

/// Exact correlators when every readout may flip the hidden state.
pub fn invasive_k(model: &TelegraphModel) -> Result<CorrelatorSet> {
    correlators(model)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Heads,
    Tails,
}

impl Face {
    pub fn value(self) -> i8 {
        match self {
            Face::Heads => 1,
            Face::Tails => -1,
        }
    }

    pub fn turned(self) -> Self {
        match self {
            Face::Heads => Face::Tails,
            Face::Tails => Face::Heads,
        }
    }
}

/// A coin's physical face alongside a blindfolded observer's description of it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinWorld {
    pub face: Face,
    /// Probabilities the observer assigns to (heads, tails).
    pub observer_distribution: [f64; 2],
}

impl CoinWorld {
    pub fn blindfolded(face: Face) -> Self {
        Self {
            face,
            observer_distribution: [0.5, 0.5],
        }
    }

    /// Turning the coin over: the face always changes, the observer's
    /// distribution is permuted and so stays uniform.
    pub fn turn_over(&self) -> Self {
        let [h, t] = self.observer_distribution;
        Self {
            face: self.face.turned(),
            observer_distribution: [t, h],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoinStep {
    pub before: CoinWorld,
    pub operation: &'static str,
    pub after: CoinWorld,
}

/// `n_steps` blindfolded turns starting from heads.
pub fn coin_demo(n_steps: usize) -> Result<Vec<CoinStep>> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter("coin demo needs at least one step".into()));
    }
    let mut world = CoinWorld::blindfolded(Face::Heads);
    let mut steps = Vec::with_capacity(n_steps);
    for _ in 0..n_steps {
        let after = world.turn_over();
        steps.push(CoinStep {
            before: world,
            operation: "flip",
            after,
        });
        world = after;
    }
    Ok(steps)
}
