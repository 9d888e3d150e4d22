//! Integral identities and inequalities attached to composition operators:
//! the area change of variable with multiplicity, pushforward-measure
//! equality over centered Borel regions, and the local two-sided derivative
//! comparison on subdisks.

use super::roots::preimage_count;
use super::{OperatorError, WeightedSymbol};
use crate::analytic_map::AnalyticMap;
use crate::quadrature::{integrate_mc, SubdiskRule, WeightedDiskRule};
use crate::scalar::{real, Real, C};

fn require_alpha<T: Real>(rule: &WeightedDiskRule<T>, expected: T) -> Result<(), OperatorError> {
    if (rule.alpha() - expected).abs() > real(1e-12) {
        return Err(OperatorError::RuleMismatch {
            expected: expected.to_f64().unwrap_or(f64::NAN),
            got: rule.alpha().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Two routes to the same area integral.
#[derive(Debug, Clone, Copy)]
pub struct CovCheck<T> {
    /// ∫_D g(Φ(z)) |Φ′(z)|² dA(z).
    pub lhs: T,
    /// ∫_D g(w) n_Φ(w) dA(w), with n_Φ evaluated pointwise by root counting.
    pub rhs: T,
    pub gap: T,
}

/// Area change of variable w = Φ(z): substitution on the left, preimage
/// counting on the right. The rule must carry weight exponent 0.
pub fn change_of_variable_check<T, G>(
    symbol: &AnalyticMap<T>,
    g: G,
    rule: &WeightedDiskRule<T>,
    boundary_eps: T,
) -> Result<CovCheck<T>, OperatorError>
where
    T: Real,
    G: Fn(C<T>) -> T,
{
    require_alpha(rule, T::zero())?;
    let lhs = rule.integrate_real(|z| {
        let image = symbol.eval(z);
        let deriv = symbol.eval_derivative(z);
        g(image) * deriv.norm_sqr()
    })?;
    let rhs = counting_integral(symbol, rule, boundary_eps, |w| g(w))?;
    Ok(CovCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

/// The two sides of ∫|Φ′|^p(1−|z|²)^{p−2}dA vs ∫ n_Φ(w)(1−|w|²)^{p−2}dA(w),
/// computed by independent code paths (derivative quadrature vs counting
/// quadrature). For p < 2 the left side dominates; the gap closes only for
/// rotations.
pub fn counting_comparison<T: Real>(
    symbol: &AnalyticMap<T>,
    p: T,
    rule: &WeightedDiskRule<T>,
    boundary_eps: T,
) -> Result<(T, T), OperatorError> {
    require_alpha(rule, p - real(2.0))?;
    let lhs = rule.integrate_real(|z| symbol.eval_derivative(z).norm().powf(p))?;
    let rhs = counting_integral(symbol, rule, boundary_eps, |_| T::one())?;
    Ok((lhs, rhs))
}

/// ∫ g(w) n_Φ(w) (1−|w|²)^α dA(w) over the rule, with the first counting
/// failure carried out of the integration loop.
fn counting_integral<T, G>(
    symbol: &AnalyticMap<T>,
    rule: &WeightedDiskRule<T>,
    boundary_eps: T,
    g: G,
) -> Result<T, OperatorError>
where
    T: Real,
    G: Fn(C<T>) -> T,
{
    let first_error = std::cell::RefCell::new(None);
    let value = rule.integrate_real(|w| match preimage_count(symbol, w, boundary_eps) {
        Ok(count) => g(w) * real::<T>(count.interior as f64),
        Err(e) => {
            first_error.borrow_mut().get_or_insert(e);
            T::zero()
        }
    });
    if let Some(e) = first_error.into_inner() {
        return Err(e);
    }
    Ok(value?)
}

/// Centered disk or annulus, the regions whose weighted area has a closed
/// form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CenteredRegion<T> {
    Disk { radius: T },
    Annulus { inner: T, outer: T },
}

impl<T: Real> CenteredRegion<T> {
    fn radii(&self) -> Result<(T, T), OperatorError> {
        let (inner, outer) = match *self {
            CenteredRegion::Disk { radius } => (T::zero(), radius),
            CenteredRegion::Annulus { inner, outer } => (inner, outer),
        };
        if !(inner >= T::zero() && inner < outer && outer < T::one()) {
            return Err(OperatorError::BadRegion);
        }
        Ok((inner, outer))
    }

    pub fn contains(&self, w: C<T>) -> bool {
        let (inner, outer) = match *self {
            CenteredRegion::Disk { radius } => (T::zero(), radius),
            CenteredRegion::Annulus { inner, outer } => (inner, outer),
        };
        let m = w.norm();
        m >= inner && m < outer
    }

    /// ∫_E (1−|w|²)^α dA(w) = [(1−ρᵢ²)^{α+1} − (1−ρₒ²)^{α+1}]/(α+1).
    pub fn weighted_area(&self, alpha: T) -> Result<T, OperatorError> {
        let (inner, outer) = self.radii()?;
        let ap1 = alpha + T::one();
        let at = |rho: T| (T::one() - rho * rho).powf(ap1);
        Ok((at(inner) - at(outer)) / ap1)
    }

    pub fn label(&self) -> String {
        match self {
            CenteredRegion::Disk { radius } => format!("disk(0,{radius})"),
            CenteredRegion::Annulus { inner, outer } => format!("annulus({inner},{outer})"),
        }
    }
}

/// Integration route for the measure-equality check.
#[derive(Debug, Clone, Copy)]
pub enum BorelMethod {
    /// Tensor quadrature; adequate when the indicator's jump circle is
    /// resolved, coarse otherwise.
    Quadrature { radial_nodes: usize, angular_nodes: usize },
    /// Seeded importance sampling; the right tool for indicators.
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct BorelCheck<T> {
    /// ∫ χ_E(Φ(z)) |ψ(z)|^p (1−|z|²)^α dA(z).
    pub lhs: T,
    /// ∫_E (1−|w|²)^α dA(w), closed form.
    pub rhs: T,
    /// Standard error of the left side when estimated by sampling.
    pub std_error: Option<T>,
}

/// Pushforward-measure equality test for a weighted symbol: equality over
/// every Borel set characterizes isometric weighted composition operators on
/// the weighted Bergman space, and centered regions already separate the
/// witness maps.
pub fn borel_equality_check<T: Real>(
    ws: &WeightedSymbol<T>,
    p: T,
    alpha: T,
    region: CenteredRegion<T>,
    method: BorelMethod,
) -> Result<BorelCheck<T>, OperatorError> {
    let rhs = region.weighted_area(alpha)?;
    let integrand = |z: C<T>| {
        if region.contains(ws.symbol.eval(z)) {
            ws.weight_at(z).norm().powf(p)
        } else {
            T::zero()
        }
    };
    match method {
        BorelMethod::Quadrature {
            radial_nodes,
            angular_nodes,
        } => {
            let rule = WeightedDiskRule::build(alpha, radial_nodes, angular_nodes)?;
            let lhs = rule.integrate_real(integrand)?;
            Ok(BorelCheck {
                lhs,
                rhs,
                std_error: None,
            })
        }
        BorelMethod::MonteCarlo { samples, seed } => {
            let est = integrate_mc(
                alpha,
                |z| C::new(integrand(z), T::zero()),
                samples,
                seed,
            )?;
            Ok(BorelCheck {
                lhs: est.estimate.re,
                rhs,
                std_error: Some(est.std_error),
            })
        }
    }
}

/// The two local integrals compared on D(0, r):
/// I₁ = ∫ |Φ′|^p (1−|z|²)^{p−2} dA and I₂ = ∫ |Φ′|² (1−|Φ|²)^{p−2} dA.
///
/// The pointwise derivative-modulus inequality forces I₁ ≤ I₂ for p > 2 and
/// I₁ ≥ I₂ for p < 2, with equality only for automorphisms.
#[derive(Debug, Clone, Copy)]
pub struct LocalCheck<T> {
    pub derivative_side: T,
    pub image_side: T,
}

pub fn local_isometry_check<T: Real>(
    symbol: &AnalyticMap<T>,
    p: T,
    radius: T,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<LocalCheck<T>, OperatorError> {
    let rule = SubdiskRule::build(radius, radial_nodes, angular_nodes)?;
    let exponent = p - real(2.0);
    let one = T::one();
    let derivative_side = rule.integrate_real(|z| {
        let d = symbol.eval_derivative(z).norm();
        d.powf(p) * (one - z.norm_sqr()).powf(exponent)
    })?;
    let image_side = rule.integrate_real(|z| {
        let d = symbol.eval_derivative(z).norm();
        let v = symbol.eval(z).norm_sqr();
        d * d * (one - v).powf(exponent)
    })?;
    Ok(LocalCheck {
        derivative_side,
        image_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_map::{BlaschkeProduct, PowerSeries};
    use crate::operators::Weight;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn unweighted_rule() -> WeightedDiskRule<f64> {
        WeightedDiskRule::build(0.0, 64, 256).unwrap()
    }

    #[test]
    fn square_map_doubles_area() {
        let check = change_of_variable_check(
            &AnalyticMap::<f64>::monomial(2),
            |_| 1.0,
            &unweighted_rule(),
            1e-6,
        )
        .unwrap();
        assert_relative_eq!(check.lhs, 2.0, max_relative = 1e-10);
        assert_relative_eq!(check.rhs, 2.0, max_relative = 1e-10);
    }

    #[test]
    fn rotation_preserves_radial_integrals() {
        let check = change_of_variable_check(
            &AnalyticMap::<f64>::rotation(0.7),
            |w| w.norm_sqr(),
            &unweighted_rule(),
            1e-6,
        )
        .unwrap();
        assert_relative_eq!(check.lhs, 0.5, max_relative = 1e-10);
        assert!(check.gap < 1e-10);
    }

    #[test]
    fn half_map_shrinks_area_by_quarter() {
        // lhs = |Φ'|² ∫ dA = 1/4; rhs = area of D(0,1/2) = 1/4. The right
        // side integrates an indicator, so only coarse agreement is owed.
        let half: AnalyticMap<f64> = PowerSeries::from_real(&[0.0, 0.5]).into();
        let check = change_of_variable_check(&half, |_| 1.0, &unweighted_rule(), 1e-6).unwrap();
        assert_relative_eq!(check.lhs, 0.25, max_relative = 1e-12);
        assert!((check.rhs - 0.25).abs() < 0.02, "rhs {}", check.rhs);
    }

    #[test]
    fn cubic_monomial_cases() {
        let cube = AnalyticMap::<f64>::monomial(3);
        let rule = unweighted_rule();
        let check = change_of_variable_check(&cube, |_| 1.0, &rule, 1e-6).unwrap();
        assert_relative_eq!(check.lhs, 3.0, max_relative = 1e-10);
        assert_relative_eq!(check.rhs, 3.0, max_relative = 1e-10);

        let check = change_of_variable_check(&cube, |w| w.norm_sqr(), &rule, 1e-6).unwrap();
        // ∫ |z|⁶ 9|z|⁴ dA = 9/6 = 3/2 = rhs
        assert_relative_eq!(check.lhs, 1.5, max_relative = 1e-10);
        assert_relative_eq!(check.rhs, 1.5, max_relative = 1e-10);
    }

    #[test]
    fn cov_check_requires_unweighted_rule() {
        let rule = WeightedDiskRule::build(0.5, 16, 16).unwrap();
        assert!(matches!(
            change_of_variable_check(&AnalyticMap::<f64>::monomial(2), |_| 1.0, &rule, 1e-6),
            Err(OperatorError::RuleMismatch { .. })
        ));
    }

    #[test]
    fn counting_comparison_for_square_p_below_two() {
        use crate::special::beta;
        let p = 1.5f64;
        let rule = WeightedDiskRule::build(p - 2.0, 256, 64).unwrap();
        let (lhs, rhs) =
            counting_comparison(&AnalyticMap::<f64>::monomial(2), p, &rule, 1e-6).unwrap();
        // closed forms: lhs = 2^p B(p/2+1, p−1), rhs = 2/(p−1)
        let lhs_exact = 2.0f64.powf(p) * beta(p / 2.0 + 1.0, p - 1.0);
        assert_relative_eq!(lhs, lhs_exact, max_relative = 1e-6);
        assert_relative_eq!(rhs, 2.0 / (p - 1.0), max_relative = 1e-10);
        assert!(lhs > rhs, "direction must be strict for p < 2");
    }

    #[test]
    fn region_areas_and_membership() {
        let disk = CenteredRegion::Disk { radius: 0.5f64 };
        // α = 0: plain area ρ²
        assert_relative_eq!(disk.weighted_area(0.0).unwrap(), 0.25, epsilon = 1e-15);
        assert!(disk.contains(cx(0.3, 0.2)));
        assert!(!disk.contains(cx(0.5, 0.1)));

        let ann = CenteredRegion::Annulus {
            inner: 0.3f64,
            outer: 0.6,
        };
        assert_relative_eq!(
            ann.weighted_area(0.0).unwrap(),
            0.36 - 0.09,
            epsilon = 1e-15
        );
        assert!(CenteredRegion::Annulus {
            inner: 0.6f64,
            outer: 0.3
        }
        .weighted_area(0.0)
        .is_err());
    }

    #[test]
    fn rotation_weighted_by_its_derivative_balances_measures() {
        let ws =
            WeightedSymbol::derivative_weighted(AnalyticMap::<f64>::rotation(0.4)).unwrap();
        for region in [
            CenteredRegion::Disk { radius: 0.25 },
            CenteredRegion::Disk { radius: 0.5 },
            CenteredRegion::Annulus {
                inner: 0.3,
                outer: 0.6,
            },
        ] {
            let check = borel_equality_check(
                &ws,
                1.5,
                -0.5,
                region,
                BorelMethod::MonteCarlo {
                    samples: 200_000,
                    seed: 9,
                },
            )
            .unwrap();
            let sigma = check.std_error.unwrap().max(1e-12);
            assert!(
                (check.lhs - check.rhs).abs() <= 4.0 * sigma,
                "{}: {} vs {} (sigma {sigma})",
                region.label(),
                check.lhs,
                check.rhs
            );
        }
    }

    #[test]
    fn zero_weight_gives_zero_left_side() {
        let ws = WeightedSymbol::new(
            AnalyticMap::<f64>::rotation(0.1),
            Weight::Map(PowerSeries::from_real(&[0.0]).into()),
        )
        .unwrap();
        let check = borel_equality_check(
            &ws,
            2.0,
            0.0,
            CenteredRegion::Disk { radius: 0.5 },
            BorelMethod::Quadrature {
                radial_nodes: 32,
                angular_nodes: 32,
            },
        )
        .unwrap();
        assert_eq!(check.lhs, 0.0);
        assert!(check.lhs <= check.rhs);
    }

    #[test]
    fn square_symbol_near_origin_breaks_measure_equality() {
        // record both values; the doubled covering makes the left side
        // larger on small centered disks
        let ws = WeightedSymbol::derivative_weighted(AnalyticMap::<f64>::monomial(2)).unwrap();
        let check = borel_equality_check(
            &ws,
            1.5,
            -0.5,
            CenteredRegion::Disk { radius: 0.25 },
            BorelMethod::MonteCarlo {
                samples: 400_000,
                seed: 21,
            },
        )
        .unwrap();
        let sigma = check.std_error.unwrap();
        assert!(
            (check.lhs - check.rhs).abs() > 4.0 * sigma,
            "expected a measurable inequality: {} vs {} (sigma {sigma})",
            check.lhs,
            check.rhs
        );
    }

    #[test]
    fn local_check_directions_for_square_map() {
        let sq = AnalyticMap::<f64>::monomial(2);
        // p = 3, r = 0.5: I1 = 8∫u^{3/2}(1−u)du < I2 = 4∫u(1−u²)du on [0,1/4]
        // (the u^{3/2} kink at the origin limits the radial rate)
        let check = local_isometry_check(&sq, 3.0, 0.5, 128, 64).unwrap();
        let i1_exact = 8.0 * (0.25f64.powf(2.5) / 2.5 - 0.25f64.powf(3.5) / 3.5);
        let i2_exact = 4.0 * (0.25f64.powi(2) / 2.0 - 0.25f64.powi(4) / 4.0);
        assert_relative_eq!(check.derivative_side, i1_exact, max_relative = 1e-9);
        assert_relative_eq!(check.image_side, i2_exact, max_relative = 1e-10);
        assert!(check.derivative_side < check.image_side);

        // p = 1.5 flips the direction
        let check = local_isometry_check(&sq, 1.5, 0.5, 64, 64).unwrap();
        assert!(check.derivative_side > check.image_side);
    }

    #[test]
    fn local_check_is_balanced_for_rotations() {
        let rot = AnalyticMap::<f64>::rotation(1.0);
        for &p in &[1.5f64, 3.0] {
            let check = local_isometry_check(&rot, p, 0.7, 64, 64).unwrap();
            assert_relative_eq!(
                check.derivative_side,
                check.image_side,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn local_check_direction_for_blaschke_at_wide_radius() {
        let phi: AnalyticMap<f64> =
            BlaschkeProduct::from_zeros(0.0, vec![cx(0.0, 0.0), cx(0.4, 0.0)])
                .unwrap()
                .into();
        let check = local_isometry_check(&phi, 3.0, 0.999, 128, 256).unwrap();
        assert!(
            check.derivative_side < check.image_side,
            "I1 = {}, I2 = {}",
            check.derivative_side,
            check.image_side
        );
    }
}
