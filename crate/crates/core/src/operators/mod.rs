//! Composition operators f ↦ f∘Φ as numerical objects: isometry-defect
//! reports over a test basis, seminorm preservation, the pointwise
//! derivative-modulus residual, preimage counting, area identities, and
//! weighted-operator checks.
//!
//! A vanishing defect over a finite basis is evidence, never a proof: the
//! underlying operator statements quantify over whole function spaces.

mod checks;
mod coverage;
mod roots;

pub use checks::{
    borel_equality_check, change_of_variable_check, counting_comparison, local_isometry_check,
    BorelCheck, BorelMethod, CenteredRegion, CovCheck, LocalCheck,
};
pub use coverage::{fullness_defect, unique_preimage_near_origin, CoverageReport};
pub use roots::{polynomial_roots, preimage_count, PreimageCount};

use crate::analytic_map::{AnalyticMap, MapError, PowerSeries};
use crate::norms::{self, NormError, NormKind};
use crate::quadrature::{QuadratureError, WeightedDiskRule};
use crate::scalar::{real, unit_phase, Real, C};
use crate::tolerances::SEMINORM_FLOOR;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("preimage counting needs a polynomial, automorphism, or Blaschke symbol")]
    UnsupportedForCounting,
    #[error("boundary tolerance must lie in (0, 0.01), got {eps}")]
    BadBoundaryTolerance { eps: f64 },
    #[error("root iteration failed to converge after {iterations} iterations")]
    RootsNoConvergence { iterations: usize },
    #[error("rule has weight exponent {got} but this check needs {expected}")]
    RuleMismatch { expected: f64, got: f64 },
    #[error("region radii must satisfy 0 <= inner < outer < 1")]
    BadRegion,
    #[error("test basis must be nonempty")]
    EmptyBasis,
}

/// Grid density used when operations validate their symbol argument.
const SYMBOL_VALIDATION_DENSITY: usize = 32;

fn ensure_symbol<T: Real>(symbol: &AnalyticMap<T>) -> Result<(), OperatorError> {
    let report = symbol.validate_self_map(SYMBOL_VALIDATION_DENSITY);
    if !report.is_self_map {
        let w = report
            .witness
            .unwrap_or_else(|| C::new(T::zero(), T::zero()));
        return Err(OperatorError::Map(MapError::NotSelfMap {
            re: w.re.to_f64().unwrap_or(f64::NAN),
            im: w.im.to_f64().unwrap_or(f64::NAN),
            modulus: report.max_modulus.to_f64().unwrap_or(f64::NAN),
        }));
    }
    Ok(())
}

/// C_Φ f = f ∘ Φ as a lazily evaluated node; the symbol must be a self-map.
pub fn compose<T: Real>(
    symbol: &AnalyticMap<T>,
    f: &AnalyticMap<T>,
) -> Result<AnalyticMap<T>, OperatorError> {
    ensure_symbol(symbol)?;
    Ok(AnalyticMap::composed(f.clone(), symbol.clone()))
}

/// The default six-function polynomial test basis.
pub fn default_basis<T: Real>() -> Vec<(String, AnalyticMap<T>)> {
    vec![
        ("z".into(), AnalyticMap::monomial(1)),
        ("z^2".into(), AnalyticMap::monomial(2)),
        ("z^3".into(), AnalyticMap::monomial(3)),
        ("z^4".into(), AnalyticMap::monomial(4)),
        (
            "z+z^2/2".into(),
            PowerSeries::from_real(&[0.0, 1.0, 0.5]).into(),
        ),
        (
            "(z-0.3)z".into(),
            PowerSeries::from_real(&[0.0, -0.3, 1.0]).into(),
        ),
    ]
}

/// Node counts for the rules the diagnostics build internally.
#[derive(Debug, Clone, Copy)]
pub struct DiagnosticOptions {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl Default for DiagnosticOptions {
    fn default() -> Self {
        Self {
            radial_nodes: 64,
            angular_nodes: 64,
        }
    }
}

/// One basis function's norm pair under the operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectRow<T> {
    pub id: String,
    pub norm: T,
    pub composed_norm: T,
    pub defect: T,
}

/// Norm pairs (‖f‖, ‖C_Φ f‖) over a basis and the maximum discrepancy.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport<T> {
    pub p: T,
    pub kind: String,
    pub rows: Vec<DefectRow<T>>,
    pub max_defect: T,
    pub symbol_at_zero: C<T>,
}

/// Measures |‖C_Φ f‖ − ‖f‖| over the basis with the selected norm.
///
/// A small maximum certifies "numerically isometric on this basis" only.
pub fn isometry_defect<T: Real>(
    symbol: &AnalyticMap<T>,
    p: T,
    kind: NormKind<T>,
    basis: &[(String, AnalyticMap<T>)],
    options: DiagnosticOptions,
) -> Result<DefectReport<T>, OperatorError> {
    if basis.is_empty() {
        return Err(OperatorError::EmptyBasis);
    }
    ensure_symbol(symbol)?;
    let rule = norms::rule_for(kind, p, options.radial_nodes, options.angular_nodes)?;
    let mut rows = Vec::with_capacity(basis.len());
    for (id, f) in basis {
        let reference = norms::evaluate(f, p, kind, &rule)?;
        let composed = AnalyticMap::composed(f.clone(), symbol.clone());
        let image = norms::evaluate(&composed, p, kind, &rule)?;
        rows.push(DefectRow {
            id: id.clone(),
            norm: reference,
            composed_norm: image,
            defect: (image - reference).abs(),
        });
    }
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    let max_defect = rows
        .iter()
        .map(|r| r.defect)
        .fold(T::zero(), |a, b| a.max(b));
    let symbol_at_zero = symbol.value(C::new(T::zero(), T::zero()))?;
    Ok(DefectReport {
        p,
        kind: kind.label(),
        rows,
        max_defect,
        symbol_at_zero,
    })
}

/// Maximum relative seminorm deviation |‖f∘Φ‖_p − ‖f‖_p| / ‖f‖_p over the
/// basis.
pub fn seminorm_preservation_check<T: Real>(
    symbol: &AnalyticMap<T>,
    p: T,
    basis: &[(String, AnalyticMap<T>)],
    options: DiagnosticOptions,
) -> Result<T, OperatorError> {
    if basis.is_empty() {
        return Err(OperatorError::EmptyBasis);
    }
    ensure_symbol(symbol)?;
    let rule = norms::rule_for(
        NormKind::BesovSeminorm,
        p,
        options.radial_nodes,
        options.angular_nodes,
    )?;
    let floor = real::<T>(SEMINORM_FLOOR);
    let mut worst = T::zero();
    for (_, f) in basis {
        let reference = norms::besov_seminorm(f, p, &rule)?;
        let composed = AnalyticMap::composed(f.clone(), symbol.clone());
        let image = norms::besov_seminorm(&composed, p, &rule)?;
        worst = worst.max((image - reference).abs() / reference.max(floor));
    }
    Ok(worst)
}

/// Pointwise residual |Φ′(z)|(1−|z|²) − (1−|Φ(z)|²) over a polar grid.
///
/// The residual is nonpositive for self-maps and vanishes identically
/// exactly when Φ is a disk automorphism.
#[derive(Debug, Clone)]
pub struct ResidualReport<T> {
    /// Largest signed residual (closest to equality).
    pub max_residual: T,
    /// Largest magnitude; at rounding level only for automorphisms.
    pub max_abs_residual: T,
    /// (z, residual) samples, origin first, then ring by ring.
    pub field: Vec<(C<T>, T)>,
}

/// Outer radius of the residual grid. Stops short of 1 so non-automorphic
/// maps, whose residual tends to 0 at the boundary, remain distinguishable.
pub const RESIDUAL_GRID_RADIUS: f64 = 0.999;

pub fn schwarz_pick_residual<T: Real>(
    symbol: &AnalyticMap<T>,
    grid_density: usize,
) -> Result<ResidualReport<T>, OperatorError> {
    ensure_symbol(symbol)?;
    let rings = grid_density.max(8);
    let spokes = 4 * rings;
    let r_max = real::<T>(RESIDUAL_GRID_RADIUS);
    let tau = real::<T>(2.0) * T::PI();
    let one = T::one();

    let mut field = Vec::with_capacity(1 + rings * spokes);
    let push = |z: C<T>, field: &mut Vec<(C<T>, T)>| {
        let value = symbol.eval(z);
        let deriv = symbol.eval_derivative(z);
        let residual = deriv.norm() * (one - z.norm_sqr()) - (one - value.norm_sqr());
        field.push((z, residual));
    };
    push(C::new(T::zero(), T::zero()), &mut field);
    for q in 0..rings {
        let r = r_max * real::<T>((q + 1) as f64) / real::<T>(rings as f64);
        for j in 0..spokes {
            let theta = tau * real::<T>(j as f64) / real::<T>(spokes as f64);
            push(unit_phase(theta) * r, &mut field);
        }
    }
    let mut max_residual = T::neg_infinity();
    let mut max_abs_residual = T::zero();
    for &(_, res) in &field {
        max_residual = max_residual.max(res);
        max_abs_residual = max_abs_residual.max(res.abs());
    }
    Ok(ResidualReport {
        max_residual,
        max_abs_residual,
        field,
    })
}

/// Weight of a weighted composition operator W_{ψ,Φ} f = ψ·(f∘Φ).
#[derive(Debug, Clone, PartialEq)]
pub enum Weight<T> {
    /// An explicit analytic weight.
    Map(AnalyticMap<T>),
    /// ψ = Φ′, evaluated exactly through the symbol's derivative.
    SymbolDerivative,
}

/// Symbol/weight pair for W_{ψ,Φ}.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSymbol<T> {
    pub symbol: AnalyticMap<T>,
    pub weight: Weight<T>,
}

impl<T: Real> WeightedSymbol<T> {
    pub fn new(symbol: AnalyticMap<T>, weight: Weight<T>) -> Result<Self, OperatorError> {
        ensure_symbol(&symbol)?;
        Ok(Self { symbol, weight })
    }

    /// The operator with ψ = Φ′.
    pub fn derivative_weighted(symbol: AnalyticMap<T>) -> Result<Self, OperatorError> {
        Self::new(symbol, Weight::SymbolDerivative)
    }

    pub(crate) fn weight_at(&self, z: C<T>) -> C<T> {
        match &self.weight {
            Weight::Map(m) => m.eval(z),
            Weight::SymbolDerivative => self.symbol.eval_derivative(z),
        }
    }
}

/// Maximum defect of W_{ψ,Φ} over the basis in the Bergman norm with weight
/// exponent p−2: max_g |‖ψ·(g∘Φ)‖ − ‖g‖|.
pub fn weighted_isometry_check<T: Real>(
    ws: &WeightedSymbol<T>,
    p: T,
    basis: &[(String, AnalyticMap<T>)],
    options: DiagnosticOptions,
) -> Result<T, OperatorError> {
    if basis.is_empty() {
        return Err(OperatorError::EmptyBasis);
    }
    let alpha = p - real(2.0);
    let rule = WeightedDiskRule::build(alpha, options.radial_nodes, options.angular_nodes)?;
    let inv_p = T::one() / p;
    let mut worst = T::zero();
    for (_, g) in basis {
        let reference = norms::bergman_norm(g, p, alpha, &rule)?;
        let image = norms::integral_abs_p(&rule, p, |z| {
            ws.weight_at(z) * g.eval(ws.symbol.eval(z))
        })
        .powf(inv_p);
        worst = worst.max((image - reference).abs());
    }
    Ok(worst)
}

/// Exact check of 2(k!)² = (2k)! in integer arithmetic.
///
/// Holds for k = 1 and fails for every k ≥ 2: the norm-preservation
/// argument for the order-n norm hinges on exactly this obstruction.
pub fn factorial_identity_holds(k: u32) -> bool {
    assert!(k <= 16, "2k! exceeds u128 beyond k = 16");
    let fact = |n: u32| -> u128 { (1..=n as u128).product() };
    2 * fact(k) * fact(k) == fact(2 * k)
}
