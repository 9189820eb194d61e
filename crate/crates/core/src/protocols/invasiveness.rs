use crate::error::Result;
use crate::quantum::{apply, controlled_phase, on_qubit, partial_trace, u_theta, DensityMatrix, Tensor};

/// Bloch-vector comparison of a coupled run against interaction-free evolution.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationReport {
    pub input_label: String,
    /// System after free evolution u_theta(θ) alone.
    pub bloch_before: [f64; 3],
    /// System after the ancilla-coupled run, ancilla traced out.
    pub bloch_after: [f64; 3],
    /// `bloch_after - bloch_before`
    pub displacement: [f64; 3],
}

/// Reports for |0⟩, |1⟩ and the maximally mixed state at one θ.
#[derive(Clone, Debug, PartialEq)]
pub struct InvasivenessDemo {
    pub zero: PerturbationReport,
    pub one: PerturbationReport,
    pub mixed: PerturbationReport,
}

impl InvasivenessDemo {
    pub fn reports(&self) -> [&PerturbationReport; 3] {
        [&self.zero, &self.one, &self.mixed]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScatteringStage {
    Prepared,
    FirstCoupling,
    Evolved,
    SecondCoupling,
}

pub fn invasiveness_demo(theta: f64) -> Result<InvasivenessDemo> {
    Ok(InvasivenessDemo {
        zero: perturbation(&DensityMatrix::zero(), "|0>", theta)?,
        one: perturbation(&DensityMatrix::one(), "|1>", theta)?,
        mixed: perturbation(&DensityMatrix::maximally_mixed(1)?, "I/2", theta)?,
    })
}

/// Pushes `input` through one scattering interaction: ancilla |+⟩,
/// controlled-phase, u_theta(θ) on the system, controlled-phase.
pub fn perturbation(input: &DensityMatrix, label: &str, theta: f64) -> Result<PerturbationReport> {
    let free = apply(&u_theta(theta), input)?;
    let stages = scattering_stages(input, theta)?;
    let (_, coupled) = stages.last().expect("four stages");
    let bloch_before = free.bloch_vector()?;
    let bloch_after = coupled.bloch_vector()?;
    let displacement = [0, 1, 2].map(|i| bloch_after[i] - bloch_before[i]);
    Ok(PerturbationReport {
        input_label: label.to_owned(),
        bloch_before,
        bloch_after,
        displacement,
    })
}

/// Reduced system state after each stage of the scattering interaction.
pub fn scattering_stages(
    input: &DensityMatrix,
    theta: f64,
) -> Result<Vec<(ScatteringStage, DensityMatrix)>> {
    let cz = controlled_phase(0, 1, 2)?;
    let evolve = on_qubit(&u_theta(theta), 0, 2)?;
    let mut joint = input.tensor(&DensityMatrix::plus());
    let mut stages = vec![(ScatteringStage::Prepared, partial_trace(&joint, &[0])?)];
    for (stage, gate) in [
        (ScatteringStage::FirstCoupling, &cz),
        (ScatteringStage::Evolved, &evolve),
        (ScatteringStage::SecondCoupling, &cz),
    ] {
        joint = apply(gate, &joint)?;
        stages.push((stage, partial_trace(&joint, &[0])?));
    }
    Ok(stages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ATOL, STAT_TOL};
    use std::f64::consts::PI;

    fn norm(v: [f64; 3]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn mixed_state_stays_mixed_throughout() {
        let half = DensityMatrix::maximally_mixed(1).unwrap();
        for i in 0..25 {
            for (_, s) in scattering_stages(&half, 0.25 * i as f64).unwrap() {
                assert!(s.approx_eq(&half, ATOL));
            }
        }
    }

    #[test]
    fn no_displacement_without_evolution() {
        let demo = invasiveness_demo(0.0).unwrap();
        for r in demo.reports() {
            assert!(norm(r.displacement) < ATOL);
        }
    }

    #[test]
    fn pi_over_6_against_hand_computed_states() {
        // |0⟩: free gives cosθ|0⟩ + i sinθ|1⟩, Bloch (0, sin2θ, cos2θ); the second
        // controlled-phase entangles with the ancilla and leaves (0, 0, cos2θ).
        let th = PI / 6.0;
        let (s2, c2) = (2.0 * th).sin_cos();
        let demo = invasiveness_demo(th).unwrap();
        let expected_zero = [0.0, -s2, 0.0];
        let expected_one = [0.0, s2, 0.0];
        for i in 0..3 {
            assert!((demo.zero.displacement[i] - expected_zero[i]).abs() < STAT_TOL);
            assert!((demo.one.displacement[i] - expected_one[i]).abs() < STAT_TOL);
        }
        assert!((demo.zero.bloch_after[2] - c2).abs() < STAT_TOL);
        assert!((demo.one.bloch_after[2] + c2).abs() < STAT_TOL);
        assert!(norm(demo.zero.displacement) > 0.5);
    }

    #[test]
    fn equal_and_opposite() {
        for i in 0..100 {
            let demo = invasiveness_demo(2.0 * PI * i as f64 / 100.0).unwrap();
            for k in 0..3 {
                assert!((demo.zero.displacement[k] + demo.one.displacement[k]).abs() < STAT_TOL);
                assert!(demo.mixed.displacement[k].abs() < ATOL);
            }
            for r in demo.reports() {
                assert!(norm(r.bloch_before) <= 1.0 + STAT_TOL);
                assert!(norm(r.bloch_after) <= 1.0 + STAT_TOL);
            }
        }
    }
}
