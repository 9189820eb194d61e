use std::fmt;
use std::str::FromStr;

use super::{k_statistic_inrm, k_statistic_separate, simultaneous_circuit, CorrelatorSet, ProtocolConfig};
use crate::error::{Error, Result};

/// Correlator engine used for a θ sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Separate,
    Simultaneous,
    Inrm,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Separate, Engine::Simultaneous, Engine::Inrm];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Separate => "separate",
            Engine::Simultaneous => "simultaneous",
            Engine::Inrm => "inrm",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown engine '{s}'")))
    }
}

pub fn k_statistic(config: &ProtocolConfig, engine: Engine) -> Result<CorrelatorSet> {
    match engine {
        Engine::Separate => k_statistic_separate(config),
        Engine::Simultaneous => simultaneous_circuit(config),
        Engine::Inrm => k_statistic_inrm(config),
    }
}

/// Correlators at each θ of `grid` for the default configuration (I/2, σz).
pub fn sweep_k(grid: &[f64], engine: Engine) -> Result<Vec<(f64, CorrelatorSet)>> {
    sweep_k_with(&ProtocolConfig::default(), grid, engine)
}

/// Like [`sweep_k`] but overriding θ on a caller-supplied configuration.
pub fn sweep_k_with(
    template: &ProtocolConfig,
    grid: &[f64],
    engine: Engine,
) -> Result<Vec<(f64, CorrelatorSet)>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.iter()
        .map(|&theta| {
            let cfg = template.clone().with_theta(theta);
            Ok((theta, k_statistic(&cfg, engine)?))
        })
        .collect()
}

/// `points` evenly spaced values from `min` to `max`, both ends included.
pub fn grid_inclusive(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 points, got {points}")));
    }
    if min.partial_cmp(&max) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidParameter(format!("need min < max, got [{min}, {max}]")));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i == points - 1 { max } else { min + step * i as f64 })
        .collect())
}

/// `points` evenly spaced values covering [0, 2π).
pub fn grid_periodic(points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::EmptyGrid);
    }
    let step = std::f64::consts::TAU / points as f64;
    Ok((0..points).map(|i| step * i as f64).collect())
}
