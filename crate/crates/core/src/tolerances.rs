//! Every tolerance and threshold used by the library and its verification
//! battery, in one place.
//!
//! Values fall in three groups: machine-precision slack on exact identities,
//! quadrature targets backed by convergence measurements, and statistical
//! bounds for the seeded Monte Carlo estimators.

/// Outer radius of the self-map validation grid; the maximum principle makes
/// a boundary-adjacent grid sufficient.
pub const VALIDATION_RADIUS: f64 = 1.0 - 1e-4;

/// Modulus slack accepted on the validation grid.
pub const VALIDATION_SLACK: f64 = 1e-12;

/// Relative target for the adaptive angular integration inside norm
/// evaluators.
pub const ANGULAR_REL_TOL: f64 = 1e-13;

/// Allowed mismatch between a rule's weight exponent and the exponent a norm
/// evaluator requires.
pub const RULE_ALPHA_MATCH: f64 = 1e-12;

/// Below this modulus the Blaschke logarithmic derivative switches to the
/// product rule (removable singularity at zeros of the product).
pub const BLASCHKE_LOG_DERIV_FALLBACK: f64 = 1e-12;

/// Roots of Φ(z) − w closer than this merge into one preimage point.
pub const PREIMAGE_MERGE_TOL: f64 = 1e-9;

/// Default boundary annulus width for preimage counting: roots with
/// |root| ∈ [1−ε, 1) are flagged rather than counted.
pub const PREIMAGE_BOUNDARY_EPS: f64 = 1e-6;

/// Convergence target for the simultaneous root iteration.
pub const ROOT_CONVERGENCE_TOL: f64 = 1e-13;

/// Seminorms below this floor are treated as zero in relative deviations.
pub const SEMINORM_FLOOR: f64 = 1e-15;

// ---- verification battery thresholds ----

/// Constant-moment identity ∫(1−|z|²)^α dA = 1/(α+1), relative.
pub const CHECK_MOMENT_REL: f64 = 1e-12;

/// Monomial seminorm vs. beta-function closed form, relative.
pub const CHECK_MONOMIAL_REL: f64 = 1e-8;

/// Seminorm vs. Bergman-norm-of-derivative route agreement, relative.
pub const CHECK_DERIVATIVE_ROUTE_REL: f64 = 1e-12;

/// Seminorm invariance under automorphism precomposition, relative.
pub const CHECK_MOBIUS_DEV: f64 = 1e-7;

/// Isometry defect certified for rotations, absolute.
pub const CHECK_ROTATION_DEFECT: f64 = 1e-9;

/// Isometry defect that non-rotation witnesses must exceed, absolute.
pub const CHECK_WITNESS_DEFECT_MIN: f64 = 1e-3;

/// |‖C_Φ z‖ − ‖z‖| − |Φ(0)| for the involution witness, absolute.
pub const CHECK_INVOLUTION_ROW_ABS: f64 = 1e-6;

/// Pointwise derivative-modulus inequality residual bound on the grid.
pub const CHECK_SCHWARZ_PICK: f64 = 1e-12;

/// Area change-of-variable identity, primary case, relative.
pub const CHECK_COV_PRIMARY_REL: f64 = 1e-8;

/// Area change-of-variable identity, additional cases, relative.
pub const CHECK_COV_EXTRA_REL: f64 = 1e-6;

/// Omitted-area estimate allowed for full maps.
pub const CHECK_FULL_MAP_OMITTED: f64 = 1e-3;

/// Omitted-area window around 3/4 for the half-scaling witness.
pub const CHECK_HALF_MAP_OMITTED_ABS: f64 = 0.01;

/// Monte Carlo agreement in units of the standard error.
pub const CHECK_MC_SIGMAS: f64 = 4.0;

/// Defect the rotation search family must reach.
pub const CHECK_SEARCH_ROTATION_MAX: f64 = 1e-8;

/// Defect floor the degree-2 search family must stay above.
pub const CHECK_SEARCH_SEPARATION_MIN: f64 = 1e-3;
