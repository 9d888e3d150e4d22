//! Numerical toolkit for conformally invariant function-space norms on the
//! unit disk and for diagnosing when composition operators preserve them.
//!
//! The crate evaluates the derivative-weighted p-norms ‖f‖_p with weight
//! (1−|z|²)^{p−2}, weighted Bergman norms, and the order-n variant built from
//! Taylor data at the origin; on top of those it measures how far a
//! composition operator f ↦ f∘Φ is from being an isometry, checks the
//! pointwise derivative-modulus inequality for self-maps, counts preimages,
//! verifies area change-of-variable identities, and searches parametric
//! self-map families for isometry candidates. Everything is deterministic:
//! quadrature rules are fixed by their node counts and all sampling is
//! seeded.
//!
//! Numeric kernels are generic over the scalar via [`scalar::Real`]; the
//! aliases below fix the common concrete choices.

pub mod analytic_map;
pub mod norms;
pub mod operators;
pub mod quadrature;
pub mod scalar;
pub mod search;
pub mod special;
pub mod tolerances;
pub mod verify;

pub use analytic_map::{
    AnalyticMap, BlaschkeProduct, DiskAutomorphism, MapError, PowerSeries, SelfMapReport,
};
pub use norms::{besov_norm, besov_seminorm, bergman_norm, equivalent_norm, NormError, NormKind};
pub use quadrature::{integrate_mc, QuadratureError, SubdiskRule, WeightedDiskRule};

/// Complex double precision.
pub type Complex64 = num_complex::Complex<f64>;
/// Complex single precision.
pub type Complex32 = num_complex::Complex<f32>;

/// Double-precision analytic map.
pub type Map64 = AnalyticMap<f64>;
/// Single-precision analytic map.
pub type Map32 = AnalyticMap<f32>;

/// Double-precision disk rule.
pub type Rule64 = WeightedDiskRule<f64>;
/// Single-precision disk rule.
pub type Rule32 = WeightedDiskRule<f32>;
