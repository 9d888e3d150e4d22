//! Norm evaluators on the disk: the conformally invariant seminorm
//! ‖f‖_p = (∫|f′|^p(1−|z|²)^{p−2}dA)^{1/p}, the Banach norm |f(0)| + ‖f‖_p,
//! weighted Bergman norms, and the order-n norm
//! Σ_{k<n}|f^{(k)}(0)| + ‖f^{(n)}‖ with weight exponent np−2.
//!
//! Evaluation pairs the rule's radial Gauss–Jacobi nodes with adaptive
//! angular integration (see [`crate::quadrature::circle_mean`]): integrands
//! |g|^p lose smoothness along circles passing near zeros of g, and a fixed
//! angular count cannot certify the tight invariance tolerances this crate
//! tests for. Derivatives of compositions are always evaluated pointwise by
//! the chain rule, never through a truncated expansion.

use crate::analytic_map::{AnalyticMap, MapError, PowerSeries, DEFAULT_TRUNCATION_ORDER};
use crate::quadrature::{circle_mean, QuadratureError, WeightedDiskRule};
use crate::scalar::{pairwise_sum, real, unit_phase, Real, C};
use crate::tolerances::{ANGULAR_REL_TOL, RULE_ALPHA_MATCH};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormError {
    #[error("p must satisfy p > 1, got {p}")]
    BadP { p: f64 },
    #[error("p must satisfy p >= 1, got {p}")]
    BadBergmanP { p: f64 },
    #[error("weight exponent must satisfy alpha > -1, got {alpha}")]
    BadAlpha { alpha: f64 },
    #[error("equivalent norm needs order n >= 2, got {order}")]
    BadOrder { order: usize },
    #[error("rule has weight exponent {got} but the norm needs {expected}")]
    RuleMismatch { expected: f64, got: f64 },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Norm selector. `p` travels separately so one kind can be evaluated across
/// a range of integrability exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormKind<T> {
    BesovSeminorm,
    BesovNorm,
    Bergman { alpha: T },
    Equivalent { order: usize },
}

impl<T: Real> NormKind<T> {
    /// Weight exponent the quadrature rule must carry for this kind.
    pub fn rule_alpha(&self, p: T) -> T {
        match *self {
            NormKind::BesovSeminorm | NormKind::BesovNorm => p - real(2.0),
            NormKind::Bergman { alpha } => alpha,
            NormKind::Equivalent { order } => real::<T>(order as f64) * p - real(2.0),
        }
    }

    pub fn label(&self) -> String {
        match self {
            NormKind::BesovSeminorm => "besov-semi".into(),
            NormKind::BesovNorm => "besov".into(),
            NormKind::Bergman { alpha } => format!("bergman(alpha={alpha})"),
            NormKind::Equivalent { order } => format!("equiv(n={order})"),
        }
    }
}

fn check_rule<T: Real>(rule: &WeightedDiskRule<T>, expected: T) -> Result<(), NormError> {
    if (rule.alpha() - expected).abs() > real(RULE_ALPHA_MATCH) {
        return Err(NormError::RuleMismatch {
            expected: expected.to_f64().unwrap_or(f64::NAN),
            got: rule.alpha().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// ∫_D |g(z)|^p (1−|z|²)^α dA(z) with the weight supplied by the rule:
/// radial Gauss–Jacobi nodes, adaptive integration around each circle.
pub fn integral_abs_p<T, F>(rule: &WeightedDiskRule<T>, p: T, g: F) -> T
where
    T: Real,
    F: Fn(C<T>) -> C<T>,
{
    let tol = real::<T>(ANGULAR_REL_TOL);
    let mut terms = Vec::with_capacity(rule.radial_nodes());
    for &(u, w) in rule.radial() {
        let r = u.sqrt();
        let mean = circle_mean(|theta: T| (g(unit_phase(theta) * r)).norm().powf(p), tol);
        terms.push(w * mean);
    }
    pairwise_sum(&terms)
}

/// Seminorm ‖f‖_p; zero for constants. The rule must carry α = p − 2.
pub fn besov_seminorm<T: Real>(
    f: &AnalyticMap<T>,
    p: T,
    rule: &WeightedDiskRule<T>,
) -> Result<T, NormError> {
    if !(p > T::one()) {
        return Err(NormError::BadP {
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    check_rule(rule, p - real(2.0))?;
    let integral = integral_abs_p(rule, p, |z| f.eval_derivative(z));
    Ok(integral.powf(T::one() / p))
}

/// Banach norm |f(0)| + ‖f‖_p.
pub fn besov_norm<T: Real>(
    f: &AnalyticMap<T>,
    p: T,
    rule: &WeightedDiskRule<T>,
) -> Result<T, NormError> {
    let seminorm = besov_seminorm(f, p, rule)?;
    let at_zero = f.value(C::new(T::zero(), T::zero()))?;
    Ok(at_zero.norm() + seminorm)
}

/// Weighted Bergman norm (∫|f|^p(1−|z|²)^α dA)^{1/p}.
pub fn bergman_norm<T: Real>(
    f: &AnalyticMap<T>,
    p: T,
    alpha: T,
    rule: &WeightedDiskRule<T>,
) -> Result<T, NormError> {
    if !(p >= T::one()) {
        return Err(NormError::BadBergmanP {
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !(alpha > -T::one()) {
        return Err(NormError::BadAlpha {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
        });
    }
    check_rule(rule, alpha)?;
    let integral = integral_abs_p(rule, p, |z| f.eval(z));
    Ok(integral.powf(T::one() / p))
}

/// Order-n norm Σ_{k<n}|f^{(k)}(0)| + ‖f^{(n)}‖ with weight exponent np−2.
///
/// Non-polynomial maps are expanded at the origin through the default
/// truncation order before differentiating n times.
pub fn equivalent_norm<T: Real>(
    f: &AnalyticMap<T>,
    p: T,
    order: usize,
    rule: &WeightedDiskRule<T>,
) -> Result<T, NormError> {
    if order < 2 {
        return Err(NormError::BadOrder { order });
    }
    if !(p > T::one()) {
        return Err(NormError::BadP {
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let alpha = real::<T>(order as f64) * p - real(2.0);
    check_rule(rule, alpha)?;

    let series: PowerSeries<T> = match f {
        AnalyticMap::Series(s) => s.clone(),
        other => {
            if order > DEFAULT_TRUNCATION_ORDER {
                return Err(NormError::Map(MapError::TruncationExceeded {
                    required: order,
                    order: DEFAULT_TRUNCATION_ORDER,
                }));
            }
            other.taylor_truncate(DEFAULT_TRUNCATION_ORDER)
        }
    };

    let mut head = T::zero();
    let mut factorial = T::one();
    for k in 0..order {
        if k > 0 {
            factorial *= real::<T>(k as f64);
        }
        head += (series.coeff(k) * factorial).norm();
    }

    let mut nth = series;
    for _ in 0..order {
        nth = nth.derivative();
    }
    let tail_map: AnalyticMap<T> = nth.into();
    let integral = integral_abs_p(rule, p, |z| tail_map.eval(z));
    Ok(head + integral.powf(T::one() / p))
}

/// Dispatch on [`NormKind`].
pub fn evaluate<T: Real>(
    f: &AnalyticMap<T>,
    p: T,
    kind: NormKind<T>,
    rule: &WeightedDiskRule<T>,
) -> Result<T, NormError> {
    match kind {
        NormKind::BesovSeminorm => besov_seminorm(f, p, rule),
        NormKind::BesovNorm => besov_norm(f, p, rule),
        NormKind::Bergman { alpha } => bergman_norm(f, p, alpha, rule),
        NormKind::Equivalent { order } => equivalent_norm(f, p, order, rule),
    }
}

/// Builds a rule matching `kind` at the given node counts.
pub fn rule_for<T: Real>(
    kind: NormKind<T>,
    p: T,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<WeightedDiskRule<T>, NormError> {
    Ok(WeightedDiskRule::build(
        kind.rule_alpha(p),
        radial_nodes,
        angular_nodes,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_map::DiskAutomorphism;
    use crate::special::beta;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn seminorm_rule(p: f64, k: usize) -> WeightedDiskRule<f64> {
        WeightedDiskRule::build(p - 2.0, k, 64).unwrap()
    }

    #[test]
    fn identity_seminorm_closed_form() {
        for &p in &[1.25, 1.5, 2.0, 3.0, 5.0] {
            let rule = seminorm_rule(p, 64);
            let s = besov_seminorm(&AnalyticMap::identity(), p, &rule).unwrap();
            assert_relative_eq!(s, (1.0 / (p - 1.0)).powf(1.0 / p), max_relative = 1e-12);
        }
    }

    #[test]
    fn constant_seminorm_vanishes() {
        let rule = seminorm_rule(1.5, 32);
        let c: AnalyticMap<f64> = PowerSeries::constant(cx(2.0, -1.0)).into();
        assert_eq!(besov_seminorm(&c, 1.5, &rule).unwrap(), 0.0);
        assert_relative_eq!(
            besov_norm(&c, 1.5, &rule).unwrap(),
            5.0f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn monomial_seminorm_matches_beta_oracle() {
        for &(m, p) in &[(2usize, 1.5f64), (3, 3.0)] {
            let rule = seminorm_rule(p, 256);
            let s = besov_seminorm(&AnalyticMap::monomial(m), p, &rule).unwrap();
            let exact = (m as f64).powf(p) * beta((m as f64 - 1.0) * p / 2.0 + 1.0, p - 1.0);
            assert_relative_eq!(s.powf(p), exact, max_relative = 1e-9);
        }
    }

    #[test]
    fn besov_norm_adds_value_at_zero() {
        let p = 3.0;
        let rule = seminorm_rule(p, 64);
        let f: AnalyticMap<f64> = PowerSeries::from_real(&[1.0, 1.0]).into();
        let expect = 1.0 + 0.5f64.powf(1.0 / 3.0);
        assert_relative_eq!(besov_norm(&f, p, &rule).unwrap(), expect, max_relative = 1e-12);
    }

    #[test]
    fn bergman_norm_closed_forms() {
        // constants: (1/(α+1))^{1/p}
        for &(p, alpha) in &[(1.5f64, -0.5f64), (2.0, 0.0), (3.0, 2.0)] {
            let rule = WeightedDiskRule::build(alpha, 64, 64).unwrap();
            let one: AnalyticMap<f64> = PowerSeries::from_real(&[1.0]).into();
            assert_relative_eq!(
                bergman_norm(&one, p, alpha, &rule).unwrap(),
                (1.0 / (alpha + 1.0)).powf(1.0 / p),
                max_relative = 1e-12
            );
        }
        // ∫|z|² dA = 1/2
        let rule = WeightedDiskRule::build(0.0, 64, 64).unwrap();
        assert_relative_eq!(
            bergman_norm(&AnalyticMap::identity(), 2.0, 0.0, &rule).unwrap(),
            0.5f64.sqrt(),
            max_relative = 1e-13
        );
        // zero map
        let zero: AnalyticMap<f64> = PowerSeries::from_real(&[0.0]).into();
        assert_eq!(bergman_norm(&zero, 2.0, 0.0, &rule).unwrap(), 0.0);
    }

    #[test]
    fn equivalent_norm_examples() {
        // f = z, n = 2: |f(0)| + |f'(0)| = 1, second derivative vanishes
        let p = 1.5;
        let rule = WeightedDiskRule::build(2.0 * p - 2.0, 32, 64).unwrap();
        assert_relative_eq!(
            equivalent_norm(&AnalyticMap::identity(), p, 2, &rule).unwrap(),
            1.0,
            max_relative = 1e-14
        );

        // f = z², n = 2, p = 3: f'' ≡ 2, weight exponent 4
        let p = 3.0;
        let rule = WeightedDiskRule::build(4.0, 32, 64).unwrap();
        let v = equivalent_norm(&AnalyticMap::monomial(2), p, 2, &rule).unwrap();
        assert_relative_eq!(v, 2.0 * 0.2f64.powf(1.0 / 3.0), max_relative = 1e-12);

        // f = z^k/k! with k < n scores exactly 1
        let p = 1.5;
        let n = 4;
        let rule = WeightedDiskRule::build(n as f64 * p - 2.0, 32, 64).unwrap();
        for k in 0..n {
            let mut fact = 1.0;
            for i in 1..=k {
                fact *= i as f64;
            }
            let f: AnalyticMap<f64> =
                PowerSeries::monomial(k).scaled(cx(1.0 / fact, 0.0)).into();
            assert_relative_eq!(
                equivalent_norm(&f, p, n, &rule).unwrap(),
                1.0,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn equivalent_norm_rejects_low_order_and_mismatched_rule() {
        let rule = WeightedDiskRule::build(1.0, 32, 64).unwrap();
        assert!(matches!(
            equivalent_norm(&AnalyticMap::<f64>::identity(), 1.5, 1, &rule),
            Err(NormError::BadOrder { order: 1 })
        ));
        assert!(matches!(
            equivalent_norm(&AnalyticMap::<f64>::identity(), 1.5, 3, &rule),
            Err(NormError::RuleMismatch { .. })
        ));
        assert!(matches!(
            besov_seminorm(&AnalyticMap::<f64>::identity(), 5.0, &rule),
            Err(NormError::RuleMismatch { .. })
        ));
    }

    #[test]
    fn seminorm_equals_bergman_norm_of_derivative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for &p in &[1.25f64, 1.5, 3.0, 5.0] {
            let rule = seminorm_rule(p, 64);
            for _ in 0..5 {
                let coeffs: Vec<C<f64>> = (0..6)
                    .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let f = PowerSeries::new(coeffs).unwrap();
                let fd: AnalyticMap<f64> = f.derivative().into();
                let f: AnalyticMap<f64> = f.into();
                let a = besov_seminorm(&f, p, &rule).unwrap();
                let b = bergman_norm(&fd, p, p - 2.0, &rule).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn seminorm_invariant_under_automorphism_precomposition() {
        let p = 1.5;
        let rule = seminorm_rule(p, 128);
        let f: AnalyticMap<f64> = PowerSeries::from_real(&[0.0, 0.0, 1.0]).into();
        let phi: AnalyticMap<f64> = DiskAutomorphism::involution(cx(0.5, 0.0)).unwrap().into();
        let composed = AnalyticMap::composed(f.clone(), phi);
        let a = besov_seminorm(&f, p, &rule).unwrap();
        let b = besov_seminorm(&composed, p, &rule).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-8);
    }

    #[test]
    fn rotation_invariance_of_every_kind() {
        let p = 1.5f64;
        let theta = 0.9;
        for kind in [
            NormKind::BesovSeminorm,
            NormKind::BesovNorm,
            NormKind::Bergman { alpha: 0.5 },
            NormKind::Equivalent { order: 2 },
        ] {
            let rule = rule_for(kind, p, 64, 64).unwrap();
            for m in 1..4usize {
                let f = AnalyticMap::<f64>::monomial(m);
                let rotated = AnalyticMap::composed(f.clone(), AnalyticMap::rotation(theta));
                let a = evaluate(&f, p, kind, &rule).unwrap();
                let b = evaluate(&rotated, p, kind, &rule).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn norms_are_homogeneous() {
        let p = 1.25f64;
        let c = cx(-0.7, 0.4);
        let f = PowerSeries::from_real(&[0.3, 0.5, -0.2]);
        let scaled: AnalyticMap<f64> = f.scaled(c).into();
        let f: AnalyticMap<f64> = f.into();
        let rule = seminorm_rule(p, 64);
        let a = besov_seminorm(&scaled, p, &rule).unwrap();
        let b = besov_seminorm(&f, p, &rule).unwrap() * c.norm();
        assert_relative_eq!(a, b, max_relative = 1e-13);

        let rule0 = WeightedDiskRule::build(0.5, 64, 64).unwrap();
        let a = bergman_norm(&scaled, p, 0.5, &rule0).unwrap();
        let b = bergman_norm(&f, p, 0.5, &rule0).unwrap() * c.norm();
        assert_relative_eq!(a, b, max_relative = 1e-13);
    }
}
