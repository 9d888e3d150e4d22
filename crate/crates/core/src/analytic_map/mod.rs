//! Analytic self-maps of the unit disk and generic analytic test functions,
//! with exact pointwise values and derivatives.

mod blaschke;
mod mobius;
pub mod schema;
mod series;

pub use blaschke::BlaschkeProduct;
pub use mobius::DiskAutomorphism;
pub use series::PowerSeries;

use crate::scalar::{real, unit_phase, Real, C};
use thiserror::Error;

use crate::tolerances::{VALIDATION_RADIUS, VALIDATION_SLACK};

/// Truncation order used when composite maps are expanded at the origin.
///
/// All fixed test maps evaluate through quadrature nodes of radius well
/// below one, where degree-64 tails sit under 1e−10.
pub const DEFAULT_TRUNCATION_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("evaluation point must satisfy |z| < 1, got |z| = {modulus}")]
    OutsideDomain { modulus: f64 },
    #[error("coefficient list must be nonempty")]
    EmptyCoefficients,
    #[error("coefficients must be finite")]
    NonFiniteCoefficient,
    #[error("Blaschke product needs at least one zero")]
    EmptyZeros,
    #[error("phase must be unimodular, got modulus {modulus}")]
    PhaseNotUnimodular { modulus: f64 },
    #[error("automorphism center must satisfy |a| < 1, got {modulus}")]
    CenterOutsideDisk { modulus: f64 },
    #[error("Blaschke zero {index} must satisfy |a| < 1, got {modulus}")]
    ZeroOutsideDisk { index: usize, modulus: f64 },
    #[error(
        "derivative order {required} exceeds truncation order {order}; \
         raise the truncation order to at least {required}"
    )]
    TruncationExceeded { required: usize, order: usize },
    #[error("not a self-map: |Φ({re} + {im}i)| = {modulus} > 1")]
    NotSelfMap { re: f64, im: f64, modulus: f64 },
}

/// Outcome of the self-map grid validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfMapReport<T> {
    pub is_self_map: bool,
    pub max_modulus: T,
    /// Point where the modulus exceeded 1 (for failed checks).
    pub witness: Option<C<T>>,
}

/// Analytic map on the disk: power series, disk automorphism, finite
/// Blaschke product, or a composition of maps.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticMap<T> {
    Series(PowerSeries<T>),
    Automorphism(DiskAutomorphism<T>),
    Blaschke(BlaschkeProduct<T>),
    Compose {
        outer: Box<AnalyticMap<T>>,
        inner: Box<AnalyticMap<T>>,
    },
}

impl<T: Real> From<PowerSeries<T>> for AnalyticMap<T> {
    fn from(s: PowerSeries<T>) -> Self {
        Self::Series(s)
    }
}

impl<T: Real> From<DiskAutomorphism<T>> for AnalyticMap<T> {
    fn from(m: DiskAutomorphism<T>) -> Self {
        Self::Automorphism(m)
    }
}

impl<T: Real> From<BlaschkeProduct<T>> for AnalyticMap<T> {
    fn from(b: BlaschkeProduct<T>) -> Self {
        Self::Blaschke(b)
    }
}

impl<T: Real> AnalyticMap<T> {
    /// z ↦ e^{iθ} z.
    pub fn rotation(theta: T) -> Self {
        DiskAutomorphism::rotation(theta).into()
    }

    /// The identity map.
    pub fn identity() -> Self {
        PowerSeries::identity().into()
    }

    /// z ↦ z^k.
    pub fn monomial(k: usize) -> Self {
        PowerSeries::monomial(k).into()
    }

    /// Composition outer ∘ inner as a lazily evaluated node.
    pub fn composed(outer: AnalyticMap<T>, inner: AnalyticMap<T>) -> Self {
        Self::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    /// Value at z, |z| < 1.
    pub fn value(&self, z: C<T>) -> Result<C<T>, MapError> {
        self.check_domain(z)?;
        Ok(self.eval(z))
    }

    /// First derivative at z, |z| < 1; compositions use the chain rule.
    pub fn derivative_value(&self, z: C<T>) -> Result<C<T>, MapError> {
        self.check_domain(z)?;
        Ok(self.eval_derivative(z))
    }

    fn check_domain(&self, z: C<T>) -> Result<(), MapError> {
        let modulus = z.norm();
        if modulus >= T::one() {
            return Err(MapError::OutsideDomain {
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub(crate) fn eval(&self, z: C<T>) -> C<T> {
        match self {
            Self::Series(s) => s.eval(z),
            Self::Automorphism(m) => m.eval(z),
            Self::Blaschke(b) => b.eval(z),
            Self::Compose { outer, inner } => outer.eval(inner.eval(z)),
        }
    }

    pub(crate) fn eval_derivative(&self, z: C<T>) -> C<T> {
        match self {
            Self::Series(s) => s.derivative().eval(z),
            Self::Automorphism(m) => m.eval_derivative(z),
            Self::Blaschke(b) => b.eval_derivative(z),
            Self::Compose { outer, inner } => {
                // (f∘Φ)'(z) = f'(Φ(z)) · Φ'(z)
                outer.eval_derivative(inner.eval(z)) * inner.eval_derivative(z)
            }
        }
    }

    /// Taylor expansion at 0 through degree `n` (exactly n+1 coefficients).
    ///
    /// Compositions expand both factors and compose degree-by-degree with
    /// all intermediate products truncated at `n`.
    pub fn taylor_truncate(&self, n: usize) -> PowerSeries<T> {
        match self {
            Self::Series(s) => s.truncated(n),
            Self::Automorphism(m) => m.taylor(n),
            Self::Blaschke(b) => b.taylor(n),
            Self::Compose { outer, inner } => {
                let outer_series = outer.taylor_truncate(n);
                let inner_series = inner.taylor_truncate(n);
                PowerSeries::compose_truncated(&outer_series, &inner_series, n)
            }
        }
    }

    /// f^{(k)}(0) = k! · (k-th Taylor coefficient).
    ///
    /// Power series are read off directly; other variants expand through
    /// [`DEFAULT_TRUNCATION_ORDER`] and reject higher orders.
    pub fn nth_derivative_at_zero(&self, k: usize) -> Result<C<T>, MapError> {
        let coeff = match self {
            Self::Series(s) => s.coeff(k),
            _ => {
                if k > DEFAULT_TRUNCATION_ORDER {
                    return Err(MapError::TruncationExceeded {
                        required: k,
                        order: DEFAULT_TRUNCATION_ORDER,
                    });
                }
                self.taylor_truncate(DEFAULT_TRUNCATION_ORDER).coeff(k)
            }
        };
        let mut factorial = T::one();
        for i in 1..=k {
            factorial *= real::<T>(i as f64);
        }
        Ok(coeff * factorial)
    }

    /// Checks |value| ≤ 1 + 1e−12 over a polar grid of outer radius
    /// 1 − 1e−4. Automorphisms and Blaschke products are self-maps by
    /// construction and short-circuit.
    pub fn validate_self_map(&self, grid_density: usize) -> SelfMapReport<T> {
        match self {
            Self::Automorphism(_) | Self::Blaschke(_) => SelfMapReport {
                is_self_map: true,
                max_modulus: T::one(),
                witness: None,
            },
            _ => self.grid_validate(grid_density.max(16)),
        }
    }

    fn grid_validate(&self, grid_density: usize) -> SelfMapReport<T> {
        let r_max = real::<T>(VALIDATION_RADIUS);
        let tol = T::one() + real::<T>(VALIDATION_SLACK);
        let tau = real::<T>(2.0) * T::PI();
        let angles = 4 * grid_density;
        let mut max_modulus = self.eval(C::new(T::zero(), T::zero())).norm();
        let mut witness = None;
        for q in 0..grid_density {
            let r = r_max * real::<T>((q + 1) as f64) / real::<T>(grid_density as f64);
            for j in 0..angles {
                let theta = tau * real::<T>(j as f64) / real::<T>(angles as f64);
                let z = unit_phase(theta) * r;
                let m = self.eval(z).norm();
                if m > max_modulus {
                    max_modulus = m;
                    if m > tol {
                        witness = Some(z);
                    }
                }
            }
        }
        SelfMapReport {
            is_self_map: max_modulus <= tol,
            max_modulus,
            witness,
        }
    }
}
