//! Integration over the unit disk against (1−|z|²)^α dA, with dA normalized
//! so the disk has measure one.
//!
//! In the radial variable u = |z|² the measure splits as du · dθ/(2π), so a
//! Gauss–Jacobi rule in u absorbs the boundary singularity (1−u)^α exactly
//! while an equispaced rule covers the angle. A seeded importance-sampling
//! Monte Carlo estimator serves as an independent oracle and as the method
//! of choice for discontinuous integrands.

mod angular;
mod gauss_jacobi;

pub use angular::circle_mean;
pub use gauss_jacobi::{gauss_jacobi_unit, gauss_legendre_unit, EigenFailure};

use crate::scalar::{pairwise_sum_complex, real, unit_phase, Real, C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default radial node count.
pub const DEFAULT_RADIAL_NODES: usize = 64;
/// Default angular node count.
pub const DEFAULT_ANGULAR_NODES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("weight exponent alpha must be finite and > -1, got {alpha}")]
    AlphaNotIntegrable { alpha: f64 },
    #[error("need at least {min} radial nodes, got {got}")]
    TooFewRadialNodes { got: usize, min: usize },
    #[error("need at least {min} angular nodes, got {got}")]
    TooFewAngularNodes { got: usize, min: usize },
    #[error("eigenvalue iteration failed at index {index}")]
    Eigen { index: usize },
    #[error("integrand not finite at node z = {re} + {im}i")]
    NonFiniteIntegrand { re: f64, im: f64 },
    #[error("Monte Carlo needs at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("subdisk radius must lie in (0,1), got {radius}")]
    BadSubdiskRadius { radius: f64 },
}

/// Quadrature rule for ∫_D g(z)(1−|z|²)^α dA(z).
///
/// Radial Gauss–Jacobi nodes in u = |z|² paired with M equispaced angles;
/// the rule value is (1/M) Σ_θ Σ_u w_u g(√u e^{iθ}).
#[derive(Debug, Clone)]
pub struct WeightedDiskRule<T> {
    alpha: T,
    radial: Vec<(T, T)>,
    angular: usize,
}

impl<T: Real> WeightedDiskRule<T> {
    /// Builds the rule; K radial and M angular nodes.
    pub fn build(alpha: T, radial_nodes: usize, angular_nodes: usize) -> Result<Self, QuadratureError> {
        if !alpha.is_finite() || alpha <= -T::one() {
            return Err(QuadratureError::AlphaNotIntegrable {
                alpha: alpha.to_f64().unwrap_or(f64::NAN),
            });
        }
        if radial_nodes < 4 {
            return Err(QuadratureError::TooFewRadialNodes {
                got: radial_nodes,
                min: 4,
            });
        }
        if angular_nodes < 8 {
            return Err(QuadratureError::TooFewAngularNodes {
                got: angular_nodes,
                min: 8,
            });
        }
        let radial = gauss_jacobi_unit(alpha, radial_nodes)
            .map_err(|e| QuadratureError::Eigen { index: e.index })?;
        Ok(Self {
            alpha,
            radial,
            angular: angular_nodes,
        })
    }

    /// Rule with the default K = 64, M = 256.
    pub fn with_default_nodes(alpha: T) -> Result<Self, QuadratureError> {
        Self::build(alpha, DEFAULT_RADIAL_NODES, DEFAULT_ANGULAR_NODES)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Radial (u, w) pairs; u = |z|² and the weight absorbs (1−u)^α.
    pub fn radial(&self) -> &[(T, T)] {
        &self.radial
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial.len()
    }

    pub fn angular_nodes(&self) -> usize {
        self.angular
    }

    /// ∫_D g(z)(1−|z|²)^α dA(z); the weight is supplied by the rule, so `g`
    /// is the bare integrand factor.
    ///
    /// Summation is radial-inner, angular-outer, pairwise at both levels.
    pub fn integrate<F>(&self, g: F) -> Result<C<T>, QuadratureError>
    where
        F: Fn(C<T>) -> C<T>,
    {
        let m = self.angular;
        let tau = real::<T>(2.0) * T::PI();
        let mut angular_sums = Vec::with_capacity(m);
        let mut radial_terms = Vec::with_capacity(self.radial.len());
        for j in 0..m {
            let theta = tau * real::<T>(j as f64) / real::<T>(m as f64);
            let dir = unit_phase(theta);
            radial_terms.clear();
            for &(u, w) in &self.radial {
                let z = dir * u.sqrt();
                let gv = g(z);
                if !gv.re.is_finite() || !gv.im.is_finite() {
                    return Err(QuadratureError::NonFiniteIntegrand {
                        re: z.re.to_f64().unwrap_or(f64::NAN),
                        im: z.im.to_f64().unwrap_or(f64::NAN),
                    });
                }
                radial_terms.push(gv * w);
            }
            angular_sums.push(pairwise_sum_complex(&radial_terms));
        }
        Ok(pairwise_sum_complex(&angular_sums) / real::<T>(m as f64))
    }

    /// Real-part convenience for real-valued integrands.
    pub fn integrate_real<F>(&self, g: F) -> Result<T, QuadratureError>
    where
        F: Fn(C<T>) -> T,
    {
        self.integrate(|z| C::new(g(z), T::zero())).map(|v| v.re)
    }
}

/// Rule for ∫_{D(0,r)} g(z) dA(z) over a centered subdisk, plain weight.
///
/// Gauss–Legendre nodes mapped affinely onto u ∈ [0, r²]. Any (1−|z|²)^α
/// factor stays inside the integrand: the singularity sits outside the
/// subdomain, so no absorption is needed.
#[derive(Debug, Clone)]
pub struct SubdiskRule<T> {
    radius: T,
    radial: Vec<(T, T)>,
    angular: usize,
}

impl<T: Real> SubdiskRule<T> {
    pub fn build(radius: T, radial_nodes: usize, angular_nodes: usize) -> Result<Self, QuadratureError> {
        if !(radius > T::zero() && radius < T::one()) {
            return Err(QuadratureError::BadSubdiskRadius {
                radius: radius.to_f64().unwrap_or(f64::NAN),
            });
        }
        if radial_nodes < 4 {
            return Err(QuadratureError::TooFewRadialNodes {
                got: radial_nodes,
                min: 4,
            });
        }
        if angular_nodes < 8 {
            return Err(QuadratureError::TooFewAngularNodes {
                got: angular_nodes,
                min: 8,
            });
        }
        let u_max = radius * radius;
        let radial = gauss_legendre_unit(radial_nodes)
            .map_err(|e| QuadratureError::Eigen { index: e.index })?
            .into_iter()
            .map(|(u, w): (T, T)| (u * u_max, w * u_max))
            .collect();
        Ok(Self {
            radius,
            radial,
            angular: angular_nodes,
        })
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn integrate_real<F>(&self, g: F) -> Result<T, QuadratureError>
    where
        F: Fn(C<T>) -> T,
    {
        let m = self.angular;
        let tau = real::<T>(2.0) * T::PI();
        let mut angular_sums = Vec::with_capacity(m);
        let mut radial_terms = Vec::with_capacity(self.radial.len());
        for j in 0..m {
            let theta = tau * real::<T>(j as f64) / real::<T>(m as f64);
            let dir = unit_phase(theta);
            radial_terms.clear();
            for &(u, w) in &self.radial {
                let z = dir * u.sqrt();
                let gv = g(z);
                if !gv.is_finite() {
                    return Err(QuadratureError::NonFiniteIntegrand {
                        re: z.re.to_f64().unwrap_or(f64::NAN),
                        im: z.im.to_f64().unwrap_or(f64::NAN),
                    });
                }
                radial_terms.push(C::new(gv * w, T::zero()));
            }
            angular_sums.push(pairwise_sum_complex(&radial_terms));
        }
        Ok(pairwise_sum_complex(&angular_sums).re / real::<T>(m as f64))
    }
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate<T> {
    pub estimate: C<T>,
    pub std_error: T,
    pub samples: usize,
}

/// Importance-sampled ∫_D g(z)(1−|z|²)^α dA(z).
///
/// Radial density (α+1)(1−u)^α via the inverse transform u = 1 − v^{1/(α+1)},
/// uniform angle; the estimate is mean(g)/(α+1). Reproducible for a fixed
/// seed.
pub fn integrate_mc<T, F>(
    alpha: T,
    g: F,
    samples: usize,
    seed: u64,
) -> Result<McEstimate<T>, QuadratureError>
where
    T: Real,
    F: Fn(C<T>) -> C<T>,
{
    if !alpha.is_finite() || alpha <= -T::one() {
        return Err(QuadratureError::AlphaNotIntegrable {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
        });
    }
    if samples < 10_000 {
        return Err(QuadratureError::TooFewSamples {
            got: samples,
            min: 10_000,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inv_ap1 = T::one() / (alpha + T::one());
    let tau = real::<T>(2.0) * T::PI();

    let mut sum = C::new(T::zero(), T::zero());
    let mut sum_norm_sq = T::zero();
    let n_t = real::<T>(samples as f64);
    for _ in 0..samples {
        let v: f64 = rng.gen();
        let th: f64 = rng.gen();
        let u = T::one() - real::<T>(v).powf(inv_ap1);
        let z = unit_phase(real::<T>(th) * tau) * u.sqrt();
        let gv = g(z);
        if !gv.re.is_finite() || !gv.im.is_finite() {
            return Err(QuadratureError::NonFiniteIntegrand {
                re: z.re.to_f64().unwrap_or(f64::NAN),
                im: z.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        sum += gv;
        sum_norm_sq += gv.norm_sqr();
    }
    let mean = sum / n_t;
    let var = ((sum_norm_sq - mean.norm_sqr() * n_t) / (n_t - T::one())).max(T::zero());
    Ok(McEstimate {
        estimate: mean * inv_ap1,
        std_error: (var / n_t).sqrt() * inv_ap1,
        samples,
    })
}
