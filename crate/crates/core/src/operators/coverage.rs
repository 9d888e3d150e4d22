//! Image-coverage estimation: how much of the disk a symbol misses.

use super::roots::preimage_count;
use super::OperatorError;
use crate::analytic_map::AnalyticMap;
use crate::scalar::{real, unit_phase, Real, C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Preimage counts over an area-uniform sample of targets, plus the
/// resulting omitted-area estimate A[D ∖ Φ(D)].
#[derive(Debug, Clone)]
pub struct CoverageReport<T> {
    /// (w, n_Φ(w)) for every sampled target.
    pub samples: Vec<(C<T>, usize)>,
    /// Fraction of samples with no preimage; estimates the omitted area
    /// under the normalized area measure.
    pub omitted_area: T,
    /// Boundary tolerance used for root acceptance.
    pub boundary_eps: T,
    /// Samples where some root was flagged in the boundary annulus.
    pub flagged_samples: usize,
}

/// Samples w area-uniformly and counts preimages; full maps of the disk
/// should come out with omitted area at the sampling-noise level.
pub fn fullness_defect<T: Real>(
    symbol: &AnalyticMap<T>,
    w_samples: usize,
    boundary_eps: T,
    seed: u64,
) -> Result<CoverageReport<T>, OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = real::<T>(2.0) * T::PI();
    let mut samples = Vec::with_capacity(w_samples);
    let mut misses = 0usize;
    let mut flagged_samples = 0usize;
    for _ in 0..w_samples {
        let u: f64 = rng.gen();
        let t: f64 = rng.gen();
        let w = unit_phase(real::<T>(t) * tau) * real::<T>(u).sqrt();
        let count = preimage_count(symbol, w, boundary_eps)?;
        if count.interior == 0 {
            misses += 1;
        }
        if count.boundary_flagged > 0 {
            flagged_samples += 1;
        }
        samples.push((w, count.interior));
    }
    Ok(CoverageReport {
        samples,
        omitted_area: real::<T>(misses as f64) / real::<T>(w_samples as f64),
        boundary_eps,
        flagged_samples,
    })
}

/// True when n_Φ(w) ≤ 1 on an area-uniform sample of D(0, radius): the
/// single-valued-near-the-origin hypothesis behind the local isometry
/// comparison.
pub fn unique_preimage_near_origin<T: Real>(
    symbol: &AnalyticMap<T>,
    radius: T,
    samples: usize,
    boundary_eps: T,
    seed: u64,
) -> Result<bool, OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = real::<T>(2.0) * T::PI();
    for _ in 0..samples {
        let u: f64 = rng.gen();
        let t: f64 = rng.gen();
        let w = unit_phase(real::<T>(t) * tau) * (real::<T>(u).sqrt() * radius);
        if preimage_count(symbol, w, boundary_eps)?.interior > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
