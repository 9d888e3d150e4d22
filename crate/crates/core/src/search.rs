//! Derivative-free minimization of the isometry defect over parametric
//! families of self-maps fixing the origin.
//!
//! The families are closed under the decoding used here: Blaschke products
//! with a structural zero at the origin (degree 1 is exactly the rotations)
//! and truncated power series with a feasibility penalty. Zero radii are
//! squashed through a logistic bijection and capped below 1, so every
//! parameter vector decodes to a valid map and the defect stays defined.
//! Nelder–Mead with seeded random restarts trades speed for robustness: the
//! objective involves quadrature of |·|^p terms with kinks at critical
//! points, which rules out smooth-gradient methods.

use crate::analytic_map::{AnalyticMap, BlaschkeProduct, PowerSeries};
use crate::norms::{self, NormError, NormKind};
use crate::operators::OperatorError;
use crate::quadrature::WeightedDiskRule;
use crate::scalar::{real, unit_phase, Real, C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Cap on decoded zero radii; keeps the family closed (zeros escaping to the
/// boundary degenerate the product).
pub const MAX_ZERO_RADIUS: f64 = 0.999;

/// Decoded zeros beyond this radius raise a proximity warning.
pub const ZERO_RADIUS_WARNING: f64 = 0.99;

/// Weight of the self-map feasibility penalty for series decoding.
pub const FEASIBILITY_PENALTY: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("need at least one restart")]
    NoRestarts,
    #[error("evaluation budget must be at least 200 per restart, got {got}")]
    BudgetTooSmall { got: usize },
    #[error("parameter vector has length {got}, family needs {expected}")]
    BadParameterCount { expected: usize, got: usize },
    #[error("parameters must be finite")]
    NonFiniteParameters,
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Family of origin-fixing self-maps being searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// λ·z·Π_{j<d}(a_j−z)/(1−ā_jz): parameters are the phase angle and the
    /// free zeros in squashed polar coordinates. Degree 1 is the rotations.
    BlaschkeFixingZero { degree: usize },
    /// z·(c_1 + c_2 z + … + c_N z^{N−1}) with a feasibility penalty keeping
    /// the decoded map inside the disk.
    SeriesFixingZero { order: usize },
}

/// A decoded parameter vector.
#[derive(Debug, Clone)]
pub struct DecodedMap<T> {
    pub map: AnalyticMap<T>,
    /// 10⁶ · max(0, max boundary modulus − 1) for series; zero for Blaschke.
    pub penalty: T,
    /// Some decoded zero sits within 0.01 of the radius cap.
    pub near_boundary: bool,
}

impl SearchSpace {
    pub fn dimension(&self) -> usize {
        match *self {
            SearchSpace::BlaschkeFixingZero { degree } => {
                assert!(degree >= 1, "degree must be positive");
                1 + 2 * (degree - 1)
            }
            SearchSpace::SeriesFixingZero { order } => {
                assert!(order >= 1, "order must be positive");
                2 * order
            }
        }
    }

    pub fn decode<T: Real>(&self, params: &[T]) -> Result<DecodedMap<T>, SearchError> {
        if params.len() != self.dimension() {
            return Err(SearchError::BadParameterCount {
                expected: self.dimension(),
                got: params.len(),
            });
        }
        if params.iter().any(|v| !v.is_finite()) {
            return Err(SearchError::NonFiniteParameters);
        }
        match *self {
            SearchSpace::BlaschkeFixingZero { degree } => {
                let mut zeros = vec![C::new(T::zero(), T::zero())];
                let mut near_boundary = false;
                for j in 0..degree - 1 {
                    let radius = real::<T>(MAX_ZERO_RADIUS) * logistic(params[1 + 2 * j]);
                    if radius > real(ZERO_RADIUS_WARNING) {
                        near_boundary = true;
                    }
                    zeros.push(unit_phase(params[2 + 2 * j]) * radius);
                }
                let map = BlaschkeProduct::new(unit_phase(params[0]), zeros)
                    .expect("decoded zeros are capped inside the disk");
                Ok(DecodedMap {
                    map: map.into(),
                    penalty: T::zero(),
                    near_boundary,
                })
            }
            SearchSpace::SeriesFixingZero { order } => {
                let mut coeffs = Vec::with_capacity(order + 1);
                coeffs.push(C::new(T::zero(), T::zero()));
                for j in 0..order {
                    coeffs.push(C::new(params[2 * j], params[2 * j + 1]));
                }
                let series = PowerSeries::new(coeffs).expect("nonempty");
                let map: AnalyticMap<T> = series.into();
                let excess = (boundary_max_modulus(&map) - T::one()).max(T::zero());
                Ok(DecodedMap {
                    map,
                    penalty: excess * real(FEASIBILITY_PENALTY),
                    near_boundary: false,
                })
            }
        }
    }

    /// Starting point drawn uniformly from the natural parameter box.
    fn random_start<T: Real>(&self, rng: &mut ChaCha8Rng) -> Vec<T> {
        let tau = std::f64::consts::TAU;
        match *self {
            SearchSpace::BlaschkeFixingZero { degree } => {
                let mut params = vec![real::<T>(rng.gen::<f64>() * tau)];
                for _ in 0..degree - 1 {
                    params.push(real(rng.gen_range(-2.0..2.0)));
                    params.push(real(rng.gen::<f64>() * tau));
                }
                params
            }
            SearchSpace::SeriesFixingZero { order } => (0..2 * order)
                .map(|_| real(rng.gen_range(-0.5..0.5)))
                .collect(),
        }
    }
}

fn logistic<T: Real>(s: T) -> T {
    T::one() / (T::one() + (-s).exp())
}

fn boundary_max_modulus<T: Real>(map: &AnalyticMap<T>) -> T {
    let r = real::<T>(crate::tolerances::VALIDATION_RADIUS);
    let angles = 128;
    let tau = real::<T>(2.0) * T::PI();
    let mut max = T::zero();
    for j in 0..angles {
        let theta = tau * real::<T>(j as f64) / real::<T>(angles as f64);
        max = max.max(map.eval(unit_phase(theta) * r).norm());
    }
    max
}

/// Isometry-defect objective with the basis norms computed once.
pub struct Objective<'a, T: Real> {
    space: SearchSpace,
    p: T,
    kind: NormKind<T>,
    basis: &'a [(String, AnalyticMap<T>)],
    rule: WeightedDiskRule<T>,
    reference_norms: Vec<T>,
}

impl<'a, T: Real> Objective<'a, T> {
    pub fn new(
        space: SearchSpace,
        p: T,
        kind: NormKind<T>,
        basis: &'a [(String, AnalyticMap<T>)],
        radial_nodes: usize,
        angular_nodes: usize,
    ) -> Result<Self, SearchError> {
        if basis.is_empty() {
            return Err(SearchError::Operator(OperatorError::EmptyBasis));
        }
        let rule = norms::rule_for(kind, p, radial_nodes, angular_nodes)?;
        let reference_norms = basis
            .iter()
            .map(|(_, f)| norms::evaluate(f, p, kind, &rule))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            space,
            p,
            kind,
            basis,
            rule,
            reference_norms,
        })
    }

    /// Defect of the decoded map plus its feasibility penalty.
    pub fn value(&self, params: &[T]) -> Result<T, SearchError> {
        let decoded = self.space.decode(params)?;
        let mut worst = T::zero();
        for ((_, f), &reference) in self.basis.iter().zip(&self.reference_norms) {
            let composed = AnalyticMap::composed(f.clone(), decoded.map.clone());
            let image = norms::evaluate(&composed, self.p, self.kind, &self.rule)?;
            worst = worst.max((image - reference).abs());
        }
        Ok(worst + decoded.penalty)
    }
}

/// Search outcome: global best over all restarts plus per-restart traces.
#[derive(Debug, Clone)]
pub struct SearchResult<T> {
    pub best_params: Vec<T>,
    pub best_defect: T,
    pub best_restart: usize,
    /// Best-so-far value after each simplex iteration, one trace per restart.
    pub traces: Vec<Vec<T>>,
    pub seed: u64,
    /// False when some restart exhausted its budget before the simplex
    /// collapsed; the best value found is still reported.
    pub converged: bool,
    /// Some decoded zero approached the radius cap during the best run.
    pub near_boundary: bool,
}

/// Options for [`minimize`].
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Objective evaluations allowed per restart (at least 200).
    pub budget: usize,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 8,
            seed: 0,
            budget: 400,
            radial_nodes: 64,
            angular_nodes: 64,
        }
    }
}

/// Nelder–Mead over the family from seeded random starts; deterministic for
/// fixed options, merged by lowest defect with ties to the earlier restart.
pub fn minimize<T: Real>(
    space: SearchSpace,
    p: T,
    kind: NormKind<T>,
    basis: &[(String, AnalyticMap<T>)],
    options: SearchOptions,
) -> Result<SearchResult<T>, SearchError> {
    if options.restarts == 0 {
        return Err(SearchError::NoRestarts);
    }
    if options.budget < 200 {
        return Err(SearchError::BudgetTooSmall {
            got: options.budget,
        });
    }
    let objective = Objective::new(
        space,
        p,
        kind,
        basis,
        options.radial_nodes,
        options.angular_nodes,
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let starts: Vec<Vec<T>> = (0..options.restarts)
        .map(|_| space.random_start(&mut rng))
        .collect();

    let mut best_params: Option<Vec<T>> = None;
    let mut best_defect = T::infinity();
    let mut best_restart = 0;
    let mut traces = Vec::with_capacity(options.restarts);
    let mut converged = true;
    for (restart, start) in starts.into_iter().enumerate() {
        let run = nelder_mead(&objective, start, options.budget)?;
        if run.best_value < best_defect {
            best_defect = run.best_value;
            best_params = Some(run.best_params);
            best_restart = restart;
        }
        converged &= run.converged;
        traces.push(run.trace);
    }
    let best_params = best_params.expect("at least one restart ran");
    let near_boundary = space.decode(&best_params)?.near_boundary;
    Ok(SearchResult {
        best_params,
        best_defect,
        best_restart,
        traces,
        seed: options.seed,
        converged,
        near_boundary,
    })
}

struct NmRun<T> {
    best_params: Vec<T>,
    best_value: T,
    trace: Vec<T>,
    converged: bool,
}

fn nelder_mead<T: Real>(
    objective: &Objective<'_, T>,
    start: Vec<T>,
    budget: usize,
) -> Result<NmRun<T>, SearchError> {
    let dim = start.len();
    let reflect = T::one();
    let expand = real::<T>(2.0);
    let contract = real::<T>(0.5);
    let shrink = real::<T>(0.5);
    let step = real::<T>(0.25);
    let ftol = real::<T>(1e-14);

    let mut evals = 0usize;
    let eval = |params: &[T], evals: &mut usize| -> Result<T, SearchError> {
        *evals += 1;
        objective.value(params)
    };

    let mut simplex: Vec<Vec<T>> = Vec::with_capacity(dim + 1);
    simplex.push(start.clone());
    for i in 0..dim {
        let mut p = start.clone();
        p[i] += step;
        simplex.push(p);
    }
    let mut values: Vec<T> = Vec::with_capacity(dim + 1);
    for p in &simplex {
        values.push(eval(p, &mut evals)?);
    }

    let mut best_value = T::infinity();
    let mut best_params = simplex[0].clone();
    let update_best = |simplex: &[Vec<T>], values: &[T], best_value: &mut T, best_params: &mut Vec<T>| {
        for (p, &v) in simplex.iter().zip(values) {
            if v < *best_value {
                *best_value = v;
                *best_params = p.clone();
            }
        }
    };
    update_best(&simplex, &values, &mut best_value, &mut best_params);

    let mut trace = vec![best_value];
    let mut converged = false;
    while evals < budget {
        // order the simplex
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite objective"));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        if (values[worst] - values[best]).abs() <= ftol * (T::one() + values[best].abs()) {
            converged = true;
            break;
        }

        let mut centroid = vec![T::zero(); dim];
        for &idx in order.iter().take(dim) {
            for (c, &x) in centroid.iter_mut().zip(&simplex[idx]) {
                *c += x;
            }
        }
        for c in centroid.iter_mut() {
            *c /= real::<T>(dim as f64);
        }

        let blend = |a: &[T], b: &[T], t: T| -> Vec<T> {
            a.iter().zip(b).map(|(&x, &y)| x + t * (x - y)).collect()
        };

        let reflected = blend(&centroid, &simplex[worst], reflect);
        let reflected_value = eval(&reflected, &mut evals)?;
        if reflected_value < values[best] {
            let expanded = blend(&centroid, &simplex[worst], expand);
            let expanded_value = eval(&expanded, &mut evals)?;
            if expanded_value < reflected_value {
                simplex[worst] = expanded;
                values[worst] = expanded_value;
            } else {
                simplex[worst] = reflected;
                values[worst] = reflected_value;
            }
        } else if reflected_value < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = reflected_value;
        } else {
            let contracted = blend(&centroid, &simplex[worst], -contract);
            let contracted_value = eval(&contracted, &mut evals)?;
            if contracted_value < values[worst] {
                simplex[worst] = contracted;
                values[worst] = contracted_value;
            } else {
                // shrink toward the best vertex
                let anchor = simplex[best].clone();
                for &idx in order.iter().skip(1) {
                    let moved: Vec<T> = anchor
                        .iter()
                        .zip(&simplex[idx])
                        .map(|(&b, &x)| b + shrink * (x - b))
                        .collect();
                    values[idx] = eval(&moved, &mut evals)?;
                    simplex[idx] = moved;
                }
            }
        }
        update_best(&simplex, &values, &mut best_value, &mut best_params);
        trace.push(best_value);
    }

    Ok(NmRun {
        best_params,
        best_value,
        trace,
        converged,
    })
}
