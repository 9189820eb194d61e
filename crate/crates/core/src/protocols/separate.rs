use super::{check_pair, CorrelatorSet, ProtocolConfig};
use crate::error::Result;
use crate::quantum::{expectation, measure};

/// ⟨O(t_k)O(t_m)⟩ from an experiment that measures only at t_k and t_m.
///
/// Both outcomes at t_k are followed exactly: each collapsed branch evolves
/// over m − k intervals and contributes p·o_k·⟨O⟩.
pub fn correlator_separate(config: &ProtocolConfig, k: usize, m: usize) -> Result<f64> {
    check_pair(k, m)?;
    let obs = config.observable();
    let at_k = config.state_at(k)?;
    let (plus, minus) = measure(obs, &at_k)?;
    let mut total = 0.0;
    for record in [plus, minus] {
        let Some(post) = record.post_state else {
            continue;
        };
        let at_m = config.evolve(&post, m - k)?;
        total += record.probability * record.outcome.value() * expectation(obs, &at_m)?;
    }
    Ok(total)
}

/// The three separate-run correlators and K.
pub fn k_statistic_separate(config: &ProtocolConfig) -> Result<CorrelatorSet> {
    CorrelatorSet::new(
        correlator_separate(config, 1, 2)?,
        correlator_separate(config, 2, 3)?,
        correlator_separate(config, 1, 3)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::STAT_TOL;
    use crate::quantum::{DensityMatrix, Observable};
    use std::f64::consts::PI;

    /// Branch enumeration by hand for σz on I/2: collapse to |0⟩ or |1⟩
    /// (prob 1/2 each), then P(same outcome after n intervals) = cos²(nθ).
    fn oracle(theta: f64, intervals: usize) -> f64 {
        let p_same = (intervals as f64 * theta).cos().powi(2);
        let mut c = 0.0;
        for _start in [1.0, -1.0] {
            c += 0.5 * (p_same - (1.0 - p_same));
        }
        c
    }

    #[test]
    fn zero_theta_gives_perfect_correlation() {
        let cfg = ProtocolConfig::new(0.0);
        for (k, m) in [(1, 2), (2, 3), (1, 3)] {
            assert!((correlator_separate(&cfg, k, m).unwrap() - 1.0).abs() < STAT_TOL);
        }
    }

    #[test]
    fn matches_branch_oracle() {
        for i in 0..64 {
            let th = i as f64 * PI / 37.0;
            let cfg = ProtocolConfig::new(th);
            let c12 = correlator_separate(&cfg, 1, 2).unwrap();
            let c13 = correlator_separate(&cfg, 1, 3).unwrap();
            assert!((c12 - oracle(th, 1)).abs() < STAT_TOL);
            assert!((c13 - oracle(th, 2)).abs() < STAT_TOL);
            assert!((c12 - (2.0 * th).cos()).abs() < STAT_TOL);
            assert!((c13 - (4.0 * th).cos()).abs() < STAT_TOL);
        }
    }

    #[test]
    fn k_at_reference_angles() {
        let at = |th: f64| k_statistic_separate(&ProtocolConfig::new(th)).unwrap();
        let c = at(0.0);
        assert!((c.k() - 1.0).abs() < STAT_TOL);
        let c = at(PI / 6.0);
        assert!((c.k() - 1.5).abs() < STAT_TOL);
        let c = at(PI / 4.0);
        assert!(c.c12().abs() < STAT_TOL && c.c23().abs() < STAT_TOL);
        assert!((c.c13() + 1.0).abs() < STAT_TOL);
        assert!((c.k() - 1.0).abs() < STAT_TOL);
    }

    #[test]
    fn invalid_pairs() {
        let cfg = ProtocolConfig::new(0.2);
        for (k, m) in [(0, 1), (2, 2), (3, 1), (2, 4)] {
            assert_eq!(
                correlator_separate(&cfg, k, m),
                Err(Error::InvalidTimePair { k, m })
            );
        }
    }

    #[test]
    fn pure_initial_state() {
        // From |0⟩: C12 = cos2θ regardless of history, C23 = cos2θ, C13 = cos4θ.
        let th = 0.3;
        let cfg = ProtocolConfig::new(th)
            .with_initial_state(DensityMatrix::zero())
            .unwrap();
        let c = k_statistic_separate(&cfg).unwrap();
        assert!((c.c12() - (2.0 * th).cos()).abs() < STAT_TOL);
        assert!((c.c13() - (4.0 * th).cos()).abs() < STAT_TOL);
        // σx readout of |0⟩ at t1 is still a valid dichotomic experiment
        let cfg = cfg.with_observable(Observable::sigma_x()).unwrap();
        let c = k_statistic_separate(&cfg).unwrap();
        // U(θ) commutes with σx: outcomes never change
        assert!((c.k() - 1.0).abs() < STAT_TOL);
    }
}
