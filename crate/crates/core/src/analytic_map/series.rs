//! Finite complex power series Σ c_k z^k with truncated arithmetic.

use crate::scalar::{real, Real, C};
use super::MapError;

/// Polynomial / truncated Taylor series with coefficients c_0..c_N.
///
/// Evaluation is Horner from the highest coefficient down, so results are
/// bit-reproducible across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<C<T>>,
}

impl<T: Real> PowerSeries<T> {
    pub fn new(coeffs: Vec<C<T>>) -> Result<Self, MapError> {
        if coeffs.is_empty() {
            return Err(MapError::EmptyCoefficients);
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(MapError::NonFiniteCoefficient);
        }
        Ok(Self { coeffs })
    }

    /// Series from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self {
            coeffs: coeffs
                .iter()
                .map(|&c| C::new(real(c), T::zero()))
                .collect(),
        }
    }

    /// The monomial z^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![C::new(T::zero(), T::zero()); k + 1];
        coeffs[k] = C::new(T::one(), T::zero());
        Self { coeffs }
    }

    pub fn identity() -> Self {
        Self::monomial(1)
    }

    pub fn constant(c: C<T>) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    /// Coefficient c_k, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> C<T> {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| C::new(T::zero(), T::zero()))
    }

    pub(crate) fn eval(&self, z: C<T>) -> C<T> {
        let mut acc = *self.coeffs.last().expect("nonempty");
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * z + c;
        }
        acc
    }

    /// Termwise derivative: c_k z^k ↦ k c_k z^{k−1}.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self {
                coeffs: vec![C::new(T::zero(), T::zero())],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * real::<T>(k as f64))
            .collect();
        Self { coeffs }
    }

    /// Copy with coefficients beyond degree `n` dropped and zeros padded so
    /// exactly n+1 coefficients remain.
    pub fn truncated(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n + 1);
        coeffs.resize(n + 1, C::new(T::zero(), T::zero()));
        Self { coeffs }
    }

    /// Product with every term beyond degree `n` discarded.
    pub fn mul_truncated(&self, rhs: &Self, n: usize) -> Self {
        let mut coeffs = vec![C::new(T::zero(), T::zero()); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > n {
                break;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    pub fn scaled(&self, factor: C<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Composition (outer ∘ inner) by Horner's scheme, every intermediate
    /// product truncated at degree `n`.
    pub fn compose_truncated(outer: &Self, inner: &Self, n: usize) -> Self {
        let mut acc = Self::constant(outer.coeff(outer.degree())).truncated(n);
        for k in (0..outer.degree()).rev() {
            acc = acc.mul_truncated(inner, n);
            acc.coeffs[0] += outer.coeff(k);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn rejects_empty_coefficients() {
        assert!(matches!(
            PowerSeries::<f64>::new(vec![]),
            Err(MapError::EmptyCoefficients)
        ));
    }

    #[test]
    fn horner_matches_direct_sum() {
        let s = PowerSeries::from_real(&[1.0, 2.0, 3.0]);
        let z = cx(0.3, -0.2);
        let direct = cx(1.0, 0.0) + cx(2.0, 0.0) * z + cx(3.0, 0.0) * z * z;
        assert!((s.eval(z) - direct).norm() < 1e-15);
    }

    #[test]
    fn derivative_shifts_coefficients() {
        let s = PowerSeries::from_real(&[1.0, 2.0, 3.0]);
        let d = s.derivative();
        assert_eq!(d.coeffs(), &[cx(2.0, 0.0), cx(6.0, 0.0)]);
    }

    #[test]
    fn truncated_pads_with_zeros() {
        let s = PowerSeries::<f64>::identity();
        let t = s.truncated(3);
        assert_eq!(t.coeffs().len(), 4);
        assert_eq!(t.coeff(1), cx(1.0, 0.0));
        assert_eq!(t.coeff(3), cx(0.0, 0.0));
    }

    #[test]
    fn composition_of_squares_is_fourth_power() {
        let sq = PowerSeries::<f64>::monomial(2);
        let c = PowerSeries::compose_truncated(&sq, &sq, 4);
        for k in 0..4 {
            assert_eq!(c.coeff(k), cx(0.0, 0.0));
        }
        assert_eq!(c.coeff(4), cx(1.0, 0.0));
    }

    #[test]
    fn composition_truncates_intermediate_products() {
        // (1+z)^2 composed with z^3 at n=4 keeps only degrees ≤ 4
        let outer = PowerSeries::from_real(&[1.0, 2.0, 1.0]);
        let inner = PowerSeries::<f64>::monomial(3);
        let c = PowerSeries::compose_truncated(&outer, &inner, 4);
        assert_eq!(c.coeff(0), cx(1.0, 0.0));
        assert_eq!(c.coeff(3), cx(2.0, 0.0));
        assert_eq!(c.degree(), 4);
    }
}
