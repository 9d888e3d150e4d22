//! Scalar abstraction: every numeric kernel in this crate is generic over a
//! floating-point type implementing [`Real`].

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Complex number over the working scalar type.
pub type C<T> = Complex<T>;

/// `re + i·im` from `f64` constants.
#[inline]
pub fn complex<T: Real>(re: f64, im: f64) -> C<T> {
    C::new(real(re), real(im))
}

/// Unimodular `e^{iθ}`.
#[inline]
pub fn unit_phase<T: Real>(theta: T) -> C<T> {
    C::new(theta.cos(), theta.sin())
}

/// Pairwise (cascade) summation; deterministic and more accurate than a
/// running sum for long node lists.
pub fn pairwise_sum<T: Real>(values: &[T]) -> T {
    match values.len() {
        0 => T::zero(),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Pairwise summation of complex values.
pub fn pairwise_sum_complex<T: Real>(values: &[C<T>]) -> C<T> {
    match values.len() {
        0 => C::new(T::zero(), T::zero()),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_short_lists() {
        let v = [1.0f64, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(pairwise_sum(&v), 15.0);
    }

    #[test]
    fn pairwise_sum_is_accurate_on_many_terms() {
        let v: Vec<f64> = (0..100_000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        let exact: f64 = v.iter().rev().sum(); // ascending magnitudes
        assert!((pairwise_sum(&v) - exact).abs() < 1e-11);
    }

    #[test]
    fn unit_phase_is_unimodular() {
        let w = unit_phase(0.7f64);
        assert!((w.norm() - 1.0).abs() < 1e-15);
    }
}
