//! Finite-shot estimates layered over exact correlators.
//!
//! The product o_k·o_m of one run is ±1 with mean C_km, so each correlator's
//! shot record is a sequence of ±1 draws with P(+1) = (1 + C_km)/2.

use rand::Rng;

use crate::error::{Error, Result};
use crate::protocols::CorrelatorSet;

/// Sample mean of `shots` ±1 products whose exact mean is `exact`.
pub fn sample_correlator<R: Rng + ?Sized>(exact: f64, shots: u64, rng: &mut R) -> Result<f64> {
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be positive".into()));
    }
    let p_plus = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
    let plus = (0..shots).filter(|_| rng.gen_bool(p_plus)).count() as f64;
    Ok((2.0 * plus - shots as f64) / shots as f64)
}

/// Independent finite-shot estimates of all three correlators.
pub fn sample_correlators<R: Rng + ?Sized>(
    exact: &CorrelatorSet,
    shots: u64,
    rng: &mut R,
) -> Result<CorrelatorSet> {
    CorrelatorSet::new(
        sample_correlator(exact.c12(), shots, rng)?,
        sample_correlator(exact.c23(), shots, rng)?,
        sample_correlator(exact.c13(), shots, rng)?,
    )
}
