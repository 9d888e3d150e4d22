//! Preimage counting for rational and polynomial self-maps.
//!
//! Solving Φ(z) = w reduces to a complex polynomial root problem
//! num(z) − w·den(z) = 0. Roots come from the Aberth–Ehrlich simultaneous
//! iteration (cubically convergent, deterministic initial layout), with
//! closed forms for degrees one and two. Roots inside the annulus
//! [1−ε, 1) are flagged instead of counted so boundary drift cannot
//! silently change counts.

use crate::analytic_map::AnalyticMap;
use crate::scalar::{real, unit_phase, Real, C};
use crate::tolerances::{PREIMAGE_MERGE_TOL, ROOT_CONVERGENCE_TOL};

use super::OperatorError;

/// Polynomial pair num/den with Φ = num/den on the disk.
#[derive(Debug, Clone)]
pub(crate) struct RationalMap<T> {
    pub num: Vec<C<T>>,
    pub den: Vec<C<T>>,
}

/// Convolution of coefficient lists.
fn poly_mul<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    let mut out = vec![C::new(T::zero(), T::zero()); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl<T: Real> RationalMap<T> {
    /// Rational form of a map, when one exists (compositions do not expand).
    pub fn of(map: &AnalyticMap<T>) -> Option<Self> {
        let one = C::new(T::one(), T::zero());
        match map {
            AnalyticMap::Series(s) => Some(Self {
                num: s.coeffs().to_vec(),
                den: vec![one],
            }),
            AnalyticMap::Automorphism(m) => {
                let a = m.center();
                let lambda = m.phase();
                Some(Self {
                    num: vec![lambda * a, -lambda],
                    den: vec![one, -a.conj()],
                })
            }
            AnalyticMap::Blaschke(b) => {
                let mut num = vec![b.phase()];
                let mut den = vec![one];
                for &a in b.zeros() {
                    num = poly_mul(&num, &[a, -one]);
                    den = poly_mul(&den, &[one, -a.conj()]);
                }
                Some(Self { num, den })
            }
            AnalyticMap::Compose { .. } => None,
        }
    }

    /// Coefficients of num(z) − w·den(z).
    pub fn preimage_poly(&self, w: C<T>) -> Vec<C<T>> {
        let n = self.num.len().max(self.den.len());
        let zero = C::new(T::zero(), T::zero());
        (0..n)
            .map(|k| {
                let a = self.num.get(k).copied().unwrap_or(zero);
                let b = self.den.get(k).copied().unwrap_or(zero);
                a - w * b
            })
            .collect()
    }
}

fn horner_with_derivative<T: Real>(coeffs: &[C<T>], z: C<T>) -> (C<T>, C<T>) {
    let mut value = *coeffs.last().expect("nonempty");
    let mut deriv = C::new(T::zero(), T::zero());
    for &c in coeffs.iter().rev().skip(1) {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// All complex roots of Σ c_k z^k, multiplicity represented by repetition.
pub fn polynomial_roots<T: Real>(coeffs: &[C<T>]) -> Result<Vec<C<T>>, OperatorError> {
    let zero = C::new(T::zero(), T::zero());
    let max_mag = coeffs
        .iter()
        .map(|c| c.norm())
        .fold(T::zero(), |a, b| a.max(b));
    if max_mag == T::zero() {
        // identically zero polynomial: no isolated roots to report
        return Ok(Vec::new());
    }

    // drop negligible leading coefficients
    let lead_tol = max_mag * real::<T>(1e-14);
    let mut degree = coeffs.len() - 1;
    while degree > 0 && coeffs[degree].norm() <= lead_tol {
        degree -= 1;
    }
    // exact zero roots split off structurally
    let mut low = 0;
    while low < degree && coeffs[low] == zero {
        low += 1;
    }
    let mut roots = vec![zero; low];
    let body = &coeffs[low..=degree];
    if body.len() > 1 {
        roots.extend(dense_roots(body)?);
    }
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite roots")
    });
    Ok(roots)
}

fn dense_roots<T: Real>(coeffs: &[C<T>]) -> Result<Vec<C<T>>, OperatorError> {
    match coeffs.len() {
        2 => Ok(vec![-coeffs[0] / coeffs[1]]),
        3 => Ok(quadratic_roots(coeffs[0], coeffs[1], coeffs[2])),
        _ => aberth(coeffs),
    }
}

// numerically stable complex quadratic: roots of c + bz + az²
fn quadratic_roots<T: Real>(c: C<T>, b: C<T>, a: C<T>) -> Vec<C<T>> {
    let two = real::<T>(2.0);
    let four = real::<T>(4.0);
    let disc = (b * b - a * c * four).sqrt();
    let plus = b + disc;
    let minus = b - disc;
    let q = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    if q.norm() == T::zero() {
        // b = disc = 0: double root
        let r = (-c / a).sqrt();
        return vec![r, -r];
    }
    let q = -q / C::new(two, T::zero());
    vec![q / a, c / q]
}

fn aberth<T: Real>(coeffs: &[C<T>]) -> Result<Vec<C<T>>, OperatorError> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let monic: Vec<C<T>> = coeffs.iter().map(|&c| c / lead).collect();

    // initial layout: circle at the geometric mean of the root moduli with
    // an angular offset breaking conjugate symmetry
    let c0 = monic[0].norm();
    let radius = if c0 > T::zero() {
        c0.powf(T::one() / real::<T>(degree as f64))
            .max(real(0.25))
            .min(real(4.0))
    } else {
        real(0.5)
    };
    let one = C::new(T::one(), T::zero());
    let tau = real::<T>(2.0) * T::PI();
    let mut z: Vec<C<T>> = (0..degree)
        .map(|k| {
            let angle = tau * real::<T>(k as f64) / real::<T>(degree as f64) + real(0.4);
            unit_phase(angle) * radius
        })
        .collect();

    let tol = real::<T>(ROOT_CONVERGENCE_TOL);
    let max_iter = 120;
    for _ in 0..max_iter {
        let mut max_step = T::zero();
        for k in 0..degree {
            let (value, deriv) = horner_with_derivative(&monic, z[k]);
            if value.norm() == T::zero() {
                continue;
            }
            let newton = if deriv.norm() > T::zero() {
                value / deriv
            } else {
                // stalled on a critical point: nudge off it
                z[k] += C::new(real(1e-4), real(2e-4));
                continue;
            };
            let mut repulsion = C::new(T::zero(), T::zero());
            for (l, &zl) in z.iter().enumerate() {
                if l != k {
                    let diff = z[k] - zl;
                    if diff.norm() > T::zero() {
                        repulsion += one / diff;
                    }
                }
            }
            let denom = one - newton * repulsion;
            let step = if denom.norm() > real(1e-290) {
                newton / denom
            } else {
                newton
            };
            z[k] -= step;
            max_step = max_step.max(step.norm() / (T::one() + z[k].norm()));
        }
        if max_step <= tol {
            return Ok(z);
        }
    }
    Err(OperatorError::RootsNoConvergence {
        iterations: max_iter,
    })
}

/// Preimage count of w under Φ with boundary flagging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreimageCount {
    /// Distinct preimage points with |z| < 1 − ε.
    pub interior: usize,
    /// Roots in [1−ε, 1): suspicious, excluded from the count.
    pub boundary_flagged: usize,
}

/// n_Φ(w): the number of distinct solutions of Φ(z) = w inside the disk.
///
/// Roots closer than the merge tolerance collapse to one preimage point, so
/// a critical value counts its multiple root once.
pub fn preimage_count<T: Real>(
    map: &AnalyticMap<T>,
    w: C<T>,
    boundary_eps: T,
) -> Result<PreimageCount, OperatorError> {
    let eps = boundary_eps.to_f64().unwrap_or(f64::NAN);
    if !(eps > 0.0 && eps < 0.01) {
        return Err(OperatorError::BadBoundaryTolerance { eps });
    }
    let rational = RationalMap::of(map).ok_or(OperatorError::UnsupportedForCounting)?;
    let roots = polynomial_roots(&rational.preimage_poly(w))?;
    let merged = merge_points(&roots);

    let mut interior = 0;
    let mut boundary_flagged = 0;
    let inner_radius = T::one() - boundary_eps;
    for &r in &merged {
        let m = r.norm();
        if m < inner_radius {
            interior += 1;
        } else if m < T::one() {
            boundary_flagged += 1;
        }
    }
    Ok(PreimageCount {
        interior,
        boundary_flagged,
    })
}

fn merge_points<T: Real>(points: &[C<T>]) -> Vec<C<T>> {
    let tol = real::<T>(PREIMAGE_MERGE_TOL);
    let mut reps: Vec<C<T>> = Vec::with_capacity(points.len());
    for &p in points {
        if !reps.iter().any(|&r| (r - p).norm() <= tol) {
            reps.push(p);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_map::{BlaschkeProduct, PowerSeries};

    fn cx(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn square_map_preimages() {
        let sq = AnalyticMap::<f64>::monomial(2);
        // w = 1/4 has preimages ±1/2
        let count = preimage_count(&sq, cx(0.25, 0.0), 1e-6).unwrap();
        assert_eq!(count.interior, 2);
        // the critical value 0 has the single preimage 0
        let count = preimage_count(&sq, cx(0.0, 0.0), 1e-6).unwrap();
        assert_eq!(count.interior, 1);
        // values outside the image of the closed disk
        let count = preimage_count(&sq, cx(0.0, 0.99), 1e-6).unwrap();
        assert_eq!(count.interior, 2, "|w|<1 always has two square roots in D");
    }

    #[test]
    fn rotation_has_single_preimage() {
        let rot = AnalyticMap::<f64>::rotation(1.3);
        for w in [cx(0.1, 0.2), cx(-0.7, 0.1), cx(0.0, 0.0)] {
            let count = preimage_count(&rot, w, 1e-6).unwrap();
            assert_eq!(count.interior, 1);
            assert_eq!(count.boundary_flagged, 0);
        }
    }

    #[test]
    fn blaschke_degree_three_is_three_to_one() {
        let phi: AnalyticMap<f64> = BlaschkeProduct::from_zeros(
            0.7,
            vec![cx(0.0, 0.0), cx(0.4, 0.0), cx(-0.3, 0.2)],
        )
        .unwrap()
        .into();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let r = rng.gen::<f64>().sqrt() * 0.98;
            let t = rng.gen::<f64>() * std::f64::consts::TAU;
            let w = cx(r * t.cos(), r * t.sin());
            let count = preimage_count(&phi, w, 1e-6).unwrap();
            assert_eq!(count.interior, 3, "w = {w}");
        }
    }

    #[test]
    fn scaled_identity_misses_large_values() {
        let half: AnalyticMap<f64> = PowerSeries::from_real(&[0.0, 0.5]).into();
        assert_eq!(preimage_count(&half, cx(0.2, 0.0), 1e-6).unwrap().interior, 1);
        assert_eq!(preimage_count(&half, cx(0.8, 0.0), 1e-6).unwrap().interior, 0);
    }

    #[test]
    fn polynomial_roots_match_known_factorization() {
        // (z-0.3)(z-0.5i)(z+0.2+0.1i) expanded
        let r1 = cx(0.3, 0.0);
        let r2 = cx(0.0, 0.5);
        let r3 = cx(-0.2, -0.1);
        let one = cx(1.0, 0.0);
        let poly = {
            let a = [-r1, one];
            let b = [-r2, one];
            let c = [-r3, one];
            let ab = super::poly_mul(&a, &b);
            super::poly_mul(&ab, &c)
        };
        let mut roots = polynomial_roots(&poly).unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let mut expected = [r1, r2, r3];
        expected.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (r, e) in roots.iter().zip(expected.iter()) {
            assert!((r - e).norm() < 1e-12, "{r} vs {e}");
        }
    }

    #[test]
    fn high_degree_unit_roots() {
        // z^8 = w: roots evenly spaced on a circle
        let mut coeffs = vec![cx(0.0, 0.0); 9];
        coeffs[8] = cx(1.0, 0.0);
        coeffs[0] = cx(-0.3, 0.4);
        let roots = polynomial_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 8);
        let target = cx(0.3, -0.4).norm().powf(1.0 / 8.0);
        for r in &roots {
            assert!((r.norm() - target).abs() < 1e-12);
            let v = r.powu(8);
            assert!((v - cx(0.3, -0.4)).norm() < 1e-11);
        }
    }

    #[test]
    fn rejects_bad_boundary_tolerance() {
        let sq = AnalyticMap::<f64>::monomial(2);
        assert!(preimage_count(&sq, cx(0.0, 0.0), 0.5).is_err());
        assert!(preimage_count(&sq, cx(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn boundary_roots_are_flagged_not_counted() {
        // Φ = z, w with |w| = 1 − ε/2 lands in the flag annulus
        let id = AnalyticMap::<f64>::identity();
        let eps = 1e-3;
        let count = preimage_count(&id, cx(1.0 - eps / 2.0, 0.0), eps).unwrap();
        assert_eq!(count.interior, 0);
        assert_eq!(count.boundary_flagged, 1);
    }

    #[test]
    fn composition_is_rejected() {
        let node = AnalyticMap::composed(
            AnalyticMap::<f64>::monomial(2),
            AnalyticMap::<f64>::rotation(0.3),
        );
        assert!(matches!(
            preimage_count(&node, cx(0.1, 0.0), 1e-6),
            Err(OperatorError::UnsupportedForCounting)
        ));
    }
}
