//! Finite Blaschke products λ Π_j (a_j−z)/(1−ā_j z).

use super::{series::PowerSeries, MapError};
use crate::scalar::{real, Real, C};
use crate::tolerances::BLASCHKE_LOG_DERIV_FALLBACK;

/// Degree-d Blaschke product: the canonical family of d-to-1 full self-maps
/// of the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct<T> {
    phase: C<T>,
    zeros: Vec<C<T>>,
}

impl<T: Real> BlaschkeProduct<T> {
    pub fn new(phase: C<T>, zeros: Vec<C<T>>) -> Result<Self, MapError> {
        if zeros.is_empty() {
            return Err(MapError::EmptyZeros);
        }
        let modulus = phase.norm();
        if (modulus - T::one()).abs() > real(1e-14) {
            return Err(MapError::PhaseNotUnimodular {
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        for (index, zero) in zeros.iter().enumerate() {
            if zero.norm() >= T::one() {
                return Err(MapError::ZeroOutsideDisk {
                    index,
                    modulus: zero.norm().to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            phase: phase / modulus,
            zeros,
        })
    }

    /// Product with phase e^{iθ} and the given zeros.
    pub fn from_zeros(lambda_theta: T, zeros: Vec<C<T>>) -> Result<Self, MapError> {
        Self::new(crate::scalar::unit_phase(lambda_theta), zeros)
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn phase(&self) -> C<T> {
        self.phase
    }

    pub fn zeros(&self) -> &[C<T>] {
        &self.zeros
    }

    pub fn fixes_origin(&self) -> bool {
        self.zeros.iter().any(|a| a.norm() == T::zero())
    }

    pub(crate) fn eval(&self, z: C<T>) -> C<T> {
        let one = C::new(T::one(), T::zero());
        let mut acc = self.phase;
        for &a in &self.zeros {
            acc = acc * (a - z) / (one - a.conj() * z);
        }
        acc
    }

    /// Derivative by the logarithmic derivative
    /// Φ′/Φ = Σ_j [−1/(a_j−z) + ā_j/(1−ā_j z)], falling back to the product
    /// rule near zeros of Φ where the quotient degenerates.
    pub(crate) fn eval_derivative(&self, z: C<T>) -> C<T> {
        let value = self.eval(z);
        if value.norm() < real(BLASCHKE_LOG_DERIV_FALLBACK) {
            return self.derivative_product_rule(z);
        }
        let one = C::new(T::one(), T::zero());
        let mut log_deriv = C::new(T::zero(), T::zero());
        for &a in &self.zeros {
            log_deriv = log_deriv - one / (a - z) + a.conj() / (one - a.conj() * z);
        }
        value * log_deriv
    }

    fn derivative_product_rule(&self, z: C<T>) -> C<T> {
        let one = C::new(T::one(), T::zero());
        let factors: Vec<C<T>> = self
            .zeros
            .iter()
            .map(|&a| (a - z) / (one - a.conj() * z))
            .collect();
        let mut total = C::new(T::zero(), T::zero());
        for (j, &a) in self.zeros.iter().enumerate() {
            let denom = one - a.conj() * z;
            let dj = C::new(a.norm_sqr() - T::one(), T::zero()) / (denom * denom);
            let mut rest = self.phase;
            for (l, &f) in factors.iter().enumerate() {
                if l != j {
                    rest = rest * f;
                }
            }
            total += dj * rest;
        }
        total
    }

    /// Taylor coefficients at 0 through degree `n`: the factor expansions
    /// multiplied with truncation at every step.
    pub fn taylor(&self, n: usize) -> PowerSeries<T> {
        let mut acc = PowerSeries::constant(self.phase).truncated(n);
        for &a in &self.zeros {
            let factor = factor_series(a, n);
            acc = acc.mul_truncated(&factor, n);
        }
        acc
    }
}

// (a−z)/(1−āz) = a − (1−|a|²) Σ_{k≥1} ā^{k−1} z^k
fn factor_series<T: Real>(a: C<T>, n: usize) -> PowerSeries<T> {
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(a);
    let head = -(C::new(T::one() - a.norm_sqr(), T::zero()));
    let mut pow = C::new(T::one(), T::zero());
    for _ in 1..=n {
        coeffs.push(head * pow);
        pow = pow * a.conj();
    }
    PowerSeries::new(coeffs).expect("nonempty by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn b(zeros: &[(f64, f64)]) -> BlaschkeProduct<f64> {
        BlaschkeProduct::from_zeros(0.0, zeros.iter().map(|&(x, y)| cx(x, y)).collect()).unwrap()
    }

    #[test]
    fn two_zeros_at_origin_is_z_squared() {
        let phi = b(&[(0.0, 0.0), (0.0, 0.0)]);
        let v = phi.eval(cx(0.3, 0.0));
        assert!((v - cx(0.09, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fixes_origin_iff_some_zero_vanishes() {
        assert!(b(&[(0.0, 0.0), (0.4, 0.0)]).fixes_origin());
        assert!(!b(&[(0.3, 0.0), (0.4, 0.0)]).fixes_origin());
        assert!(b(&[(0.3, 0.0)]).eval(cx(0.0, 0.0)).norm() > 0.0);
    }

    #[test]
    fn boundary_modulus_close_to_one() {
        let phi = b(&[(0.0, 0.0), (0.4, 0.0), (-0.3, 0.2)]);
        let r = 1.0 - 1e-8;
        for i in 0..256 {
            let t = i as f64 / 256.0 * std::f64::consts::TAU;
            let m = phi.eval(cx(r * t.cos(), r * t.sin())).norm();
            assert!((1.0 - 1e-6..=1.0).contains(&m), "modulus {m} at angle {t}");
        }
    }

    #[test]
    fn interior_modulus_below_one() {
        let phi = b(&[(0.5, 0.1), (-0.2, 0.3)]);
        for i in 0..64 {
            let t = i as f64 / 64.0 * std::f64::consts::TAU;
            for r in [0.2, 0.6, 0.95] {
                assert!(phi.eval(cx(r * t.cos(), r * t.sin())).norm() < 1.0);
            }
        }
    }

    #[test]
    fn derivative_fallback_agrees_with_log_derivative_nearby() {
        let phi = b(&[(0.4, 0.0), (0.0, 0.0)]);
        // at a zero of the map the product rule takes over
        let at_zero = phi.eval_derivative(cx(0.4, 0.0));
        // finite difference reference
        let h = 1e-7;
        let fd = (phi.eval(cx(0.4 + h, 0.0)) - phi.eval(cx(0.4 - h, 0.0))) / cx(2.0 * h, 0.0);
        assert!((at_zero - fd).norm() < 1e-6);
    }

    #[test]
    fn taylor_matches_evaluation() {
        let phi = b(&[(0.0, 0.0), (0.4, -0.1)]);
        let series = phi.taylor(40);
        let z = cx(0.08, -0.05);
        assert!((series.eval(z) - phi.eval(z)).norm() < 1e-13);
    }

    #[test]
    fn rejects_invalid_construction() {
        assert!(BlaschkeProduct::<f64>::new(cx(1.0, 0.0), vec![]).is_err());
        assert!(BlaschkeProduct::new(cx(1.0, 0.0), vec![cx(1.2, 0.0)]).is_err());
        assert!(BlaschkeProduct::new(cx(0.7, 0.0), vec![cx(0.2, 0.0)]).is_err());
    }
}
