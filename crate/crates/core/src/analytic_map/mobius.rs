//! Disk automorphisms λ(a−z)/(1−āz).

use super::{series::PowerSeries, MapError};
use crate::scalar::{real, unit_phase, Real, C};

/// Conformal automorphism of the unit disk.
///
/// `rotation(θ)` normalizes the phase so the result is exactly z ↦ e^{iθ}z,
/// and `involution(a)` is the self-inverse map exchanging 0 and a.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskAutomorphism<T> {
    phase: C<T>,
    center: C<T>,
}

impl<T: Real> DiskAutomorphism<T> {
    pub fn new(phase: C<T>, center: C<T>) -> Result<Self, MapError> {
        let modulus = phase.norm();
        if (modulus - T::one()).abs() > real(1e-14) {
            return Err(MapError::PhaseNotUnimodular {
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        if center.norm() >= T::one() {
            return Err(MapError::CenterOutsideDisk {
                modulus: center.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        // exact unimodularity keeps Schwarz-Pick residuals at rounding level
        let phase = phase / modulus;
        Ok(Self { phase, center })
    }

    /// z ↦ e^{iθ} z.
    pub fn rotation(theta: T) -> Self {
        Self {
            phase: -unit_phase(theta),
            center: C::new(T::zero(), T::zero()),
        }
    }

    /// The involution Φ_a exchanging 0 and a (phase 1).
    pub fn involution(center: C<T>) -> Result<Self, MapError> {
        Self::new(C::new(T::one(), T::zero()), center)
    }

    pub fn phase(&self) -> C<T> {
        self.phase
    }

    pub fn center(&self) -> C<T> {
        self.center
    }

    pub fn is_rotation(&self) -> bool {
        self.center.norm() == T::zero()
    }

    pub(crate) fn eval(&self, z: C<T>) -> C<T> {
        let one = C::new(T::one(), T::zero());
        self.phase * (self.center - z) / (one - self.center.conj() * z)
    }

    pub(crate) fn eval_derivative(&self, z: C<T>) -> C<T> {
        let one = C::new(T::one(), T::zero());
        let denom = one - self.center.conj() * z;
        let norm_sq = C::new(self.center.norm_sqr() - T::one(), T::zero());
        self.phase * norm_sq / (denom * denom)
    }

    /// Taylor coefficients at 0 through degree `n`: the geometric expansion
    /// of λ(a−z)Σ ā^k z^k.
    pub fn taylor(&self, n: usize) -> PowerSeries<T> {
        let a = self.center;
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(self.phase * a);
        let head = -self.phase * (T::one() - a.norm_sqr());
        let mut pow = C::new(T::one(), T::zero());
        for _ in 1..=n {
            coeffs.push(head * pow);
            pow = pow * a.conj();
        }
        PowerSeries::new(coeffs).expect("nonempty by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn rotation_is_multiplication_by_phase() {
        let rot = DiskAutomorphism::rotation(std::f64::consts::FRAC_PI_2);
        let v = rot.eval(cx(0.5, 0.0));
        assert!((v - cx(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn involution_swaps_origin_and_center() {
        let a = cx(0.5, 0.0);
        let phi = DiskAutomorphism::involution(a).unwrap();
        assert!((phi.eval(cx(0.0, 0.0)) - a).norm() < 1e-15);
        assert!(phi.eval(a).norm() < 1e-15);
    }

    #[test]
    fn involution_composed_with_itself_is_identity_on_grid() {
        let phi = DiskAutomorphism::involution(cx(0.3, -0.4)).unwrap();
        for i in 0..64 {
            let t = i as f64 / 64.0 * std::f64::consts::TAU;
            for r in [0.1, 0.5, 0.9] {
                let z = cx(r * t.cos(), r * t.sin());
                assert!((phi.eval(phi.eval(z)) - z).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn derivative_at_zero_matches_schwarz_pick_equality() {
        // |Φ'(0)| = 1 − |Φ(0)|² for any automorphism
        let phi = DiskAutomorphism::involution(cx(0.5, 0.0)).unwrap();
        assert_relative_eq!(
            phi.eval_derivative(cx(0.0, 0.0)).norm(),
            1.0 - 0.25,
            max_relative = 1e-14
        );
    }

    #[test]
    fn rejects_center_outside_disk_and_bad_phase() {
        assert!(DiskAutomorphism::new(cx(1.0, 0.0), cx(1.0, 0.0)).is_err());
        assert!(DiskAutomorphism::new(cx(0.5, 0.0), cx(0.0, 0.0)).is_err());
    }

    #[test]
    fn taylor_matches_evaluation_near_origin() {
        let phi = DiskAutomorphism::new(unit_phase(0.7), cx(0.4, 0.2)).unwrap();
        let series = phi.taylor(40);
        for &re in &[0.05, -0.08] {
            let z = cx(re, 0.03);
            assert!((series.eval(z) - phi.eval(z)).norm() < 1e-12);
        }
    }
}
