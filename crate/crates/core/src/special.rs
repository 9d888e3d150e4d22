//! Log-gamma and beta functions, used by the closed-form moment oracles.

use crate::scalar::{real, Real};

// Lanczos approximation, g = 7, 9 coefficients. Relative accuracy is near
// machine epsilon for f64 over the positive axis.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for real `x` (poles at 0, −1, −2, …).
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = real::<T>(0.5);
    if x < half {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = real::<T>(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += real::<T>(c) / (x + real::<T>(i as f64));
    }
    let g = real::<T>(7.5);
    let t = x + g;
    let log_sqrt_two_pi = real::<T>(0.918_938_533_204_672_7);
    log_sqrt_two_pi + (x + half) * t.ln() - t + acc.ln()
}

/// Natural log of the beta function B(a, b) for a, b > 0.
pub fn ln_beta<T: Real>(a: T, b: T) -> T {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Beta function B(a, b) = ∫₀¹ t^{a−1}(1−t)^{b−1} dt for a, b > 0.
pub fn beta<T: Real>(a: T, b: T) -> T {
    ln_beta(a, b).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_at_known_points() {
        assert_relative_eq!(ln_gamma(1.0f64), 0.0, epsilon = 1e-14);
        assert_relative_eq!(ln_gamma(2.0f64), 0.0, epsilon = 1e-14);
        assert_relative_eq!(
            ln_gamma(0.5f64),
            std::f64::consts::PI.sqrt().ln(),
            epsilon = 1e-14
        );
        // Γ(24) = 23!
        let fact23: f64 = (1..=23).map(|k| k as f64).product();
        assert_relative_eq!(ln_gamma(24.0f64), fact23.ln(), max_relative = 1e-14);
    }

    #[test]
    fn beta_matches_integer_formula() {
        // B(m+1, n+1) = m! n! / (m+n+1)!
        assert_relative_eq!(beta(3.0f64, 4.0), 2.0 * 6.0 / 720.0, max_relative = 1e-13);
        // B(1, b) = 1/b
        assert_relative_eq!(beta(1.0f64, 2.5), 0.4, max_relative = 1e-13);
    }

    #[test]
    fn beta_handles_fractional_arguments() {
        // B(1/2, 1/2) = π
        assert_relative_eq!(
            beta(0.5f64, 0.5),
            std::f64::consts::PI,
            max_relative = 1e-13
        );
    }

    #[test]
    fn works_in_f32() {
        assert!((beta(1.0f32, 2.0) - 0.5).abs() < 1e-5);
    }
}
