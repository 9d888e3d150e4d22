//! The full verification battery: one row per checked property, each with a
//! measured value, a pinned threshold, and a pass flag.
//!
//! Check groups: quadrature moments, monomial seminorm closed forms, the
//! derivative route identity, conformal invariance, rotation isometry
//! certificates and non-rotation witnesses, the pointwise residual, area
//! change of variable, the counting-function inequality chain, fullness,
//! pushforward-measure equality, the factorial obstruction, and the defect
//! search. Every tolerance lives in [`crate::tolerances`].

use crate::analytic_map::{AnalyticMap, DiskAutomorphism, PowerSeries};
use crate::norms::{self, NormKind};
use crate::operators::{
    borel_equality_check, change_of_variable_check, counting_comparison,
    default_basis, factorial_identity_holds, fullness_defect, isometry_defect,
    local_isometry_check, schwarz_pick_residual, BorelMethod, CenteredRegion,
    DiagnosticOptions, WeightedSymbol,
};
use crate::quadrature::WeightedDiskRule;
use crate::scalar::{unit_phase, C};
use crate::search::{minimize, SearchOptions, SearchSpace};
use crate::special::beta;
use crate::tolerances as tol;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

/// How a measured value is compared against its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Pass when measured ≤ threshold.
    AtMost,
    /// Pass when measured > threshold.
    Exceeds,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::AtMost => "<=",
            Comparison::Exceeds => ">",
        }
    }
}

/// One verification row.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: String,
    pub statement: String,
    pub measured: f64,
    pub comparison: Comparison,
    pub threshold: f64,
    pub pass: bool,
    pub seconds: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(
        id: &str,
        statement: &str,
        measured: f64,
        comparison: Comparison,
        threshold: f64,
    ) -> Self {
        let pass = match comparison {
            Comparison::AtMost => measured <= threshold,
            Comparison::Exceeds => measured > threshold,
        } && measured.is_finite();
        Self {
            id: id.into(),
            statement: statement.into(),
            measured,
            comparison,
            threshold,
            pass,
            seconds: 0.0,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }
}

/// Battery configuration; the defaults are the documented reference setup.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Radial nodes for the pinned tensor-rule checks.
    pub radial_nodes: usize,
    /// Angular nodes for the pinned tensor-rule checks.
    pub angular_nodes: usize,
    /// Radial nodes for high-accuracy norm comparisons.
    pub norm_radial_nodes: usize,
    pub mc_samples: usize,
    pub coverage_samples: usize,
    pub seed: u64,
    pub search_restarts: usize,
    pub search_budget: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            radial_nodes: 64,
            angular_nodes: 256,
            norm_radial_nodes: 256,
            mc_samples: 1_000_000,
            coverage_samples: 100_000,
            seed: 7,
            search_restarts: 8,
            search_budget: 250,
        }
    }
}

const P_GRID: [f64; 4] = [1.25, 1.5, 3.0, 5.0];

/// Runs the whole battery; a panic inside any group becomes a failing row
/// rather than aborting the suite.
pub fn run_battery(config: &VerifyConfig) -> Vec<CheckResult> {
    let total_start = Instant::now();
    let groups: Vec<(
        &'static str,
        fn(&VerifyConfig) -> Result<Vec<CheckResult>, String>,
    )> = vec![
        ("quadrature-moments", check_moments),
        ("monomial-seminorms", check_monomial_seminorms),
        ("derivative-route", check_derivative_route),
        ("mobius-invariance", check_mobius_invariance),
        ("rotation-isometry", check_rotation_isometry),
        ("witness-defects", check_witness_defects),
        ("schwarz-pick", check_schwarz_pick),
        ("change-of-variable", check_change_of_variable),
        ("counting-chain", check_counting_chain),
        ("fullness", check_fullness),
        ("measure-equality", check_measure_equality),
        ("factorial-obstruction", check_factorial_obstruction),
        ("search", check_search),
    ];

    let progress = std::env::var_os("BESOV_VERIFY_PROGRESS").is_some();
    let mut rows = Vec::new();
    for (group, check) in groups {
        if progress {
            eprintln!("[verify] {group} ...");
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(config)));
        let seconds = start.elapsed().as_secs_f64();
        if progress {
            eprintln!("[verify] {group} done in {seconds:.2}s");
        }
        match outcome {
            Ok(Ok(mut group_rows)) => {
                for row in &mut group_rows {
                    row.seconds = seconds;
                }
                rows.extend(group_rows);
            }
            Ok(Err(message)) => rows.push(failure_row(group, &message, seconds)),
            Err(panic) => {
                let message = panic_message(&panic);
                rows.push(failure_row(group, &format!("panicked: {message}"), seconds));
            }
        }
    }

    let mut total = CheckResult::new(
        "total-runtime",
        "battery completes within five minutes",
        total_start.elapsed().as_secs_f64(),
        Comparison::AtMost,
        300.0,
    );
    total.seconds = total_start.elapsed().as_secs_f64();
    rows.push(total);
    rows
}

pub fn all_passed(rows: &[CheckResult]) -> bool {
    rows.iter().all(|r| r.pass)
}

fn failure_row(group: &str, message: &str, seconds: f64) -> CheckResult {
    let mut row = CheckResult::new(group, "check aborted", f64::NAN, Comparison::AtMost, 0.0);
    row.pass = false;
    row.seconds = seconds;
    row.detail = message.into();
    row
}

fn panic_message(panic: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = panic.downcast_ref::<&str>() {
        (*s).into()
    } else if let Some(s) = panic.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic payload".into()
    }
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// -- group 1: constant moments of the singular weight --------------------

fn check_moments(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &alpha in &[-0.5, -0.25, 0.0, 1.0, 4.0] {
        let rule = WeightedDiskRule::build(alpha, config.radial_nodes, config.angular_nodes)
            .map_err(err_str)?;
        let value = rule
            .integrate(|_| C::new(1.0f64, 0.0))
            .map_err(err_str)?
            .re;
        let exact = 1.0 / (alpha + 1.0);
        worst = worst.max(((value - exact) / exact).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    Ok(vec![
        CheckResult::new(
            "quadrature-moments",
            "weighted area of the disk matches 1/(alpha+1)",
            worst,
            Comparison::AtMost,
            tol::CHECK_MOMENT_REL,
        ),
        CheckResult::new(
            "quadrature-moments-runtime",
            "moment checks finish within one second",
            elapsed,
            Comparison::AtMost,
            1.0,
        ),
    ])
}

// -- group 2: monomial seminorms against the beta closed form ------------

fn check_monomial_seminorms(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &p in &P_GRID {
        let rule = WeightedDiskRule::build(p - 2.0, config.norm_radial_nodes, 64)
            .map_err(err_str)?;
        for m in 1..=3usize {
            let f = AnalyticMap::<f64>::monomial(m);
            let s = norms::besov_seminorm(&f, p, &rule).map_err(err_str)?;
            let exact = (m as f64).powf(p) * beta((m as f64 - 1.0) * p / 2.0 + 1.0, p - 1.0);
            worst = worst.max(((s.powf(p) - exact) / exact).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Ok(vec![
        CheckResult::new(
            "monomial-seminorms",
            "seminorm of z^m matches m^p B((m-1)p/2+1, p-1)",
            worst,
            Comparison::AtMost,
            tol::CHECK_MONOMIAL_REL,
        ),
        CheckResult::new(
            "monomial-seminorms-runtime",
            "monomial checks finish within five seconds",
            elapsed,
            Comparison::AtMost,
            5.0,
        ),
    ])
}

// -- group 3: seminorm equals Bergman norm of the derivative -------------

fn check_derivative_route(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst = 0.0f64;
    for &p in &P_GRID {
        let rule =
            WeightedDiskRule::build(p - 2.0, config.radial_nodes, 64).map_err(err_str)?;
        for _ in 0..50 {
            let degree = rng.gen_range(1..=6);
            let coeffs: Vec<C<f64>> = (0..=degree)
                .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let f = PowerSeries::new(coeffs).map_err(err_str)?;
            let derivative: AnalyticMap<f64> = f.derivative().into();
            let f: AnalyticMap<f64> = f.into();
            let via_seminorm = norms::besov_seminorm(&f, p, &rule).map_err(err_str)?;
            let via_bergman =
                norms::bergman_norm(&derivative, p, p - 2.0, &rule).map_err(err_str)?;
            let scale = via_seminorm.max(tol::SEMINORM_FLOOR);
            worst = worst.max((via_seminorm - via_bergman).abs() / scale);
        }
    }
    Ok(vec![CheckResult::new(
        "derivative-route",
        "seminorm route agrees with Bergman norm of f'",
        worst,
        Comparison::AtMost,
        tol::CHECK_DERIVATIVE_ROUTE_REL,
    )])
}

// -- group 4: conformal invariance of the seminorm ------------------------

fn check_mobius_invariance(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let basis = default_basis::<f64>();
    let mut worst = 0.0f64;
    let automorphisms: Vec<AnalyticMap<f64>> = (0..10)
        .map(|_| {
            let radius = 0.7 * rng.gen::<f64>().sqrt();
            let angle = rng.gen::<f64>() * std::f64::consts::TAU;
            let phase = rng.gen::<f64>() * std::f64::consts::TAU;
            DiskAutomorphism::new(
                unit_phase(phase),
                C::new(radius * angle.cos(), radius * angle.sin()),
            )
            .map(AnalyticMap::from)
            .expect("centers stay inside the disk")
        })
        .collect();
    for &p in &P_GRID {
        let rule = WeightedDiskRule::build(p - 2.0, config.norm_radial_nodes, 64)
            .map_err(err_str)?;
        for phi in &automorphisms {
            for (_, f) in &basis {
                let reference = norms::besov_seminorm(f, p, &rule).map_err(err_str)?;
                let composed = AnalyticMap::composed(f.clone(), phi.clone());
                let image = norms::besov_seminorm(&composed, p, &rule).map_err(err_str)?;
                worst = worst.max((image - reference).abs() / reference.max(tol::SEMINORM_FLOOR));
            }
        }
    }
    Ok(vec![CheckResult::new(
        "mobius-invariance",
        "seminorm unchanged under automorphism precomposition",
        worst,
        Comparison::AtMost,
        tol::CHECK_MOBIUS_DEV,
    )])
}

// -- group 5: rotations are isometries in both norms ----------------------

fn check_rotation_isometry(_config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let basis = default_basis::<f64>();
    let opts = DiagnosticOptions {
        radial_nodes: 64,
        angular_nodes: 64,
    };
    let mut worst = 0.0f64;
    for k in 0..8 {
        let theta = 0.37 + 0.711 * k as f64;
        let rotation = AnalyticMap::<f64>::rotation(theta);
        for &p in &P_GRID {
            for kind in [NormKind::BesovNorm, NormKind::Equivalent { order: 2 }] {
                let report =
                    isometry_defect(&rotation, p, kind, &basis, opts).map_err(err_str)?;
                worst = worst.max(report.max_defect);
            }
        }
    }
    Ok(vec![CheckResult::new(
        "rotation-isometry",
        "rotations have vanishing defect in both norms",
        worst,
        Comparison::AtMost,
        tol::CHECK_ROTATION_DEFECT,
    )])
}

// -- group 6: non-rotation symbols have measurable defect -----------------

fn check_witness_defects(_config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let basis = default_basis::<f64>();
    let opts = DiagnosticOptions {
        radial_nodes: 64,
        angular_nodes: 64,
    };
    let involution: AnalyticMap<f64> = DiskAutomorphism::involution(C::new(0.5, 0.0))
        .map_err(err_str)?
        .into();
    let witnesses: Vec<(&str, AnalyticMap<f64>)> = vec![
        ("involution(0.5)", involution.clone()),
        ("z^2", AnalyticMap::monomial(2)),
        ("z/2", PowerSeries::from_real(&[0.0, 0.5]).into()),
        (
            "blaschke(0,0.4)",
            crate::analytic_map::BlaschkeProduct::from_zeros(
                0.0,
                vec![C::new(0.0, 0.0), C::new(0.4, 0.0)],
            )
            .map_err(err_str)?
            .into(),
        ),
    ];
    let mut min_defect = f64::INFINITY;
    let mut detail = String::new();
    let mut involution_row_err = 0.0f64;
    for &p in &P_GRID {
        for (name, symbol) in &witnesses {
            let report =
                isometry_defect(symbol, p, NormKind::BesovNorm, &basis, opts).map_err(err_str)?;
            if report.max_defect < min_defect {
                min_defect = report.max_defect;
                detail = format!("weakest witness: {name} at p = {p}");
            }
            if *name == "involution(0.5)" {
                let row = report
                    .rows
                    .iter()
                    .find(|r| r.id == "z")
                    .ok_or("missing basis row for f = z")?;
                involution_row_err = involution_row_err.max((row.defect - 0.5).abs());
            }
        }
    }
    Ok(vec![
        CheckResult::new(
            "witness-defects",
            "non-rotation witnesses exceed the defect floor",
            min_defect,
            Comparison::Exceeds,
            tol::CHECK_WITNESS_DEFECT_MIN,
        )
        .with_detail(detail),
        CheckResult::new(
            "witness-involution-row",
            "involution defect on f = z equals |a| = 0.5",
            involution_row_err,
            Comparison::AtMost,
            tol::CHECK_INVOLUTION_ROW_ABS,
        ),
    ])
}

// -- group 7: pointwise derivative-modulus residual ------------------------

fn check_schwarz_pick(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(2));
    let witnesses: Vec<AnalyticMap<f64>> = vec![
        DiskAutomorphism::involution(C::new(0.5, 0.0))
            .map_err(err_str)?
            .into(),
        AnalyticMap::monomial(2),
        PowerSeries::from_real(&[0.0, 0.5]).into(),
        crate::analytic_map::BlaschkeProduct::from_zeros(
            0.0,
            vec![C::new(0.0, 0.0), C::new(0.4, 0.0)],
        )
        .map_err(err_str)?
        .into(),
        PowerSeries::from_real(&[0.0, 0.5, 0.5]).into(),
    ];
    let mut worst_signed = f64::NEG_INFINITY;
    for symbol in &witnesses {
        let report = schwarz_pick_residual(symbol, 48).map_err(err_str)?;
        worst_signed = worst_signed.max(report.max_residual);
    }

    let mut worst_abs = 0.0f64;
    for k in 0..5 {
        let radius = 0.8 * rng.gen::<f64>().sqrt();
        let angle = rng.gen::<f64>() * std::f64::consts::TAU;
        let phase = rng.gen::<f64>() * std::f64::consts::TAU;
        let phi: AnalyticMap<f64> = DiskAutomorphism::new(
            unit_phase(phase),
            C::new(radius * angle.cos(), radius * angle.sin()),
        )
        .map_err(|e| format!("automorphism {k}: {e}"))?
        .into();
        let report = schwarz_pick_residual(&phi, 48).map_err(err_str)?;
        worst_abs = worst_abs.max(report.max_abs_residual);
    }
    let rotation_report =
        schwarz_pick_residual(&AnalyticMap::<f64>::rotation(1.1), 48).map_err(err_str)?;
    worst_abs = worst_abs.max(rotation_report.max_abs_residual);

    Ok(vec![
        CheckResult::new(
            "schwarz-pick-inequality",
            "residual stays nonpositive grid-wide for all witnesses",
            worst_signed,
            Comparison::AtMost,
            tol::CHECK_SCHWARZ_PICK,
        ),
        CheckResult::new(
            "schwarz-pick-equality",
            "automorphisms reach equality to rounding",
            worst_abs,
            Comparison::AtMost,
            tol::CHECK_SCHWARZ_PICK,
        ),
    ])
}

// -- group 8: area change of variable --------------------------------------

fn check_change_of_variable(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let rule = WeightedDiskRule::build(0.0, config.radial_nodes, config.angular_nodes)
        .map_err(err_str)?;
    let eps = tol::PREIMAGE_BOUNDARY_EPS;

    let square = AnalyticMap::<f64>::monomial(2);
    let primary = change_of_variable_check(&square, |_| 1.0, &rule, eps).map_err(err_str)?;
    let primary_err = ((primary.lhs - 2.0) / 2.0)
        .abs()
        .max(((primary.rhs - 2.0) / 2.0).abs());

    let cube = AnalyticMap::<f64>::monomial(3);
    let mut extra_err = 0.0f64;
    let extra: Vec<(String, CovCheckCase)> = vec![
        ("z^2 against |w|^2".into(), (square.clone(), true)),
        ("z^3 against 1".into(), (cube.clone(), false)),
        ("z^3 against |w|^2".into(), (cube, true)),
    ];
    for (_, (symbol, radial_weight)) in extra {
        let check = if radial_weight {
            change_of_variable_check(&symbol, |w| w.norm_sqr(), &rule, eps)
        } else {
            change_of_variable_check(&symbol, |_| 1.0, &rule, eps)
        }
        .map_err(err_str)?;
        extra_err = extra_err.max(check.gap / check.rhs.abs().max(1e-15));
    }

    Ok(vec![
        CheckResult::new(
            "change-of-variable",
            "substitution and preimage counting agree for z^2",
            primary_err,
            Comparison::AtMost,
            tol::CHECK_COV_PRIMARY_REL,
        ),
        CheckResult::new(
            "change-of-variable-extra",
            "three more polynomial and radial cases agree",
            extra_err,
            Comparison::AtMost,
            tol::CHECK_COV_EXTRA_REL,
        ),
    ])
}

type CovCheckCase = (AnalyticMap<f64>, bool);

// -- group 9: the counting-function inequality chain -----------------------

fn check_counting_chain(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let eps = tol::PREIMAGE_BOUNDARY_EPS;
    let witnesses: Vec<(usize, AnalyticMap<f64>)> = vec![
        (2, AnalyticMap::monomial(2)),
        (
            2,
            crate::analytic_map::BlaschkeProduct::from_zeros(
                0.0,
                vec![C::new(0.0, 0.0), C::new(0.4, 0.0)],
            )
            .map_err(err_str)?
            .into(),
        ),
        (
            3,
            crate::analytic_map::BlaschkeProduct::from_zeros(
                0.0,
                vec![C::new(0.0, 0.0), C::new(0.4, 0.0), C::new(-0.3, 0.0)],
            )
            .map_err(err_str)?
            .into(),
        ),
    ];

    // p < 2: derivative side dominates the counting side
    let p = 1.5f64;
    let rule = WeightedDiskRule::build(p - 2.0, config.norm_radial_nodes, config.angular_nodes)
        .map_err(err_str)?;
    let mut min_margin = f64::INFINITY;
    let mut oracle_err = f64::NAN;
    for (expected_count, symbol) in &witnesses {
        let (lhs, rhs) = counting_comparison(symbol, p, &rule, eps).map_err(err_str)?;
        min_margin = min_margin.min(lhs - rhs);
        if *expected_count == 2 && matches!(symbol, AnalyticMap::Series(_)) {
            // z²: both sides in closed form via the beta function
            let lhs_exact = 2.0f64.powf(p) * beta(p / 2.0 + 1.0, p - 1.0);
            let rhs_exact = 2.0 / (p - 1.0);
            oracle_err = ((lhs - lhs_exact) / lhs_exact)
                .abs()
                .max(((rhs - rhs_exact) / rhs_exact).abs());
        }
    }

    // p > 2: the local comparison reverses near the boundary radius
    let mut max_gap = f64::NEG_INFINITY;
    for (_, symbol) in &witnesses {
        let check = local_isometry_check(symbol, 3.0, 0.999, 128, config.angular_nodes)
            .map_err(err_str)?;
        max_gap = max_gap.max(check.derivative_side - check.image_side);
    }

    Ok(vec![
        CheckResult::new(
            "counting-chain-margin",
            "derivative side exceeds counting side for p = 1.5",
            min_margin,
            Comparison::Exceeds,
            1e-3,
        ),
        CheckResult::new(
            "counting-chain-oracle",
            "z^2 sides match the closed-form beta integrals",
            oracle_err,
            Comparison::AtMost,
            1e-6,
        ),
        CheckResult::new(
            "counting-chain-reversed",
            "derivative side stays below image side at p = 3, r = 0.999",
            max_gap,
            Comparison::AtMost,
            0.0,
        ),
    ])
}

// -- group 10: fullness / omitted area --------------------------------------

fn check_fullness(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let eps = tol::PREIMAGE_BOUNDARY_EPS;
    let full_maps: Vec<AnalyticMap<f64>> = vec![
        AnalyticMap::rotation(0.9),
        crate::analytic_map::BlaschkeProduct::from_zeros(
            0.0,
            vec![C::new(0.0, 0.0), C::new(0.4, 0.0)],
        )
        .map_err(err_str)?
        .into(),
    ];
    let mut worst_full = 0.0f64;
    for symbol in &full_maps {
        let report = fullness_defect(symbol, config.coverage_samples, eps, config.seed)
            .map_err(err_str)?;
        worst_full = worst_full.max(report.omitted_area);
    }

    let half: AnalyticMap<f64> = PowerSeries::from_real(&[0.0, 0.5]).into();
    let report =
        fullness_defect(&half, config.coverage_samples, eps, config.seed).map_err(err_str)?;
    let half_err = (report.omitted_area - 0.75).abs();

    Ok(vec![
        CheckResult::new(
            "fullness-full-maps",
            "rotations and Blaschke products cover the disk",
            worst_full,
            Comparison::AtMost,
            tol::CHECK_FULL_MAP_OMITTED,
        ),
        CheckResult::new(
            "fullness-half-map",
            "z/2 omits three quarters of the area",
            half_err,
            Comparison::AtMost,
            tol::CHECK_HALF_MAP_OMITTED_ABS,
        ),
    ])
}

// -- group 11: pushforward-measure equality for rotations -------------------

fn check_measure_equality(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let p = 1.5f64;
    let alpha = p - 2.0;
    let ws = WeightedSymbol::derivative_weighted(AnalyticMap::<f64>::rotation(0.7))
        .map_err(err_str)?;
    let regions = [
        CenteredRegion::Disk { radius: 0.25 },
        CenteredRegion::Disk { radius: 0.5 },
        CenteredRegion::Annulus {
            inner: 0.3,
            outer: 0.6,
        },
    ];
    let mut worst_sigmas = 0.0f64;
    for (i, region) in regions.iter().enumerate() {
        let check = borel_equality_check(
            &ws,
            p,
            alpha,
            *region,
            BorelMethod::MonteCarlo {
                samples: config.mc_samples,
                seed: config.seed.wrapping_add(100 + i as u64),
            },
        )
        .map_err(err_str)?;
        let sigma = check.std_error.unwrap_or(0.0).max(1e-15);
        worst_sigmas = worst_sigmas.max((check.lhs - check.rhs).abs() / sigma);
    }
    Ok(vec![CheckResult::new(
        "measure-equality",
        "derivative-weighted rotations balance region measures",
        worst_sigmas,
        Comparison::AtMost,
        tol::CHECK_MC_SIGMAS,
    )])
}

// -- group 12: the factorial obstruction -------------------------------------

fn check_factorial_obstruction(_config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let mut wrong = 0usize;
    if !factorial_identity_holds(1) {
        wrong += 1;
    }
    for k in 2..=12 {
        if factorial_identity_holds(k) {
            wrong += 1;
        }
    }
    Ok(vec![CheckResult::new(
        "factorial-obstruction",
        "2(k!)^2 = (2k)! only at k = 1 within 1..=12",
        wrong as f64,
        Comparison::AtMost,
        0.0,
    )])
}

// -- group 13: defect search over origin-fixing families ---------------------

fn check_search(config: &VerifyConfig) -> Result<Vec<CheckResult>, String> {
    let start = Instant::now();
    let basis = default_basis::<f64>();
    let nodes = (48usize, 64usize);

    let rotation_result = minimize(
        SearchSpace::BlaschkeFixingZero { degree: 1 },
        1.5,
        NormKind::BesovNorm,
        &basis,
        SearchOptions {
            restarts: 2,
            seed: config.seed,
            budget: config.search_budget.max(200),
            radial_nodes: nodes.0,
            angular_nodes: nodes.1,
        },
    )
    .map_err(err_str)?;

    let mut separation = f64::INFINITY;
    let mut first_run_defect = None;
    for &p in &[1.5f64, 3.0] {
        let result = minimize(
            SearchSpace::BlaschkeFixingZero { degree: 2 },
            p,
            NormKind::BesovNorm,
            &basis,
            SearchOptions {
                restarts: config.search_restarts,
                seed: config.seed,
                budget: config.search_budget.max(200),
                radial_nodes: nodes.0,
                angular_nodes: nodes.1,
            },
        )
        .map_err(err_str)?;
        separation = separation.min(result.best_defect);
        if p == 1.5 {
            first_run_defect = Some(result.best_defect);
        }
    }

    // bit-exact reproducibility of the seeded search
    let repeat = minimize(
        SearchSpace::BlaschkeFixingZero { degree: 2 },
        1.5,
        NormKind::BesovNorm,
        &basis,
        SearchOptions {
            restarts: config.search_restarts,
            seed: config.seed,
            budget: config.search_budget.max(200),
            radial_nodes: nodes.0,
            angular_nodes: nodes.1,
        },
    )
    .map_err(err_str)?;
    let reproducible = first_run_defect == Some(repeat.best_defect);
    let elapsed = start.elapsed().as_secs_f64();

    Ok(vec![
        CheckResult::new(
            "search-rotation-family",
            "degree-1 family reaches a vanishing defect",
            rotation_result.best_defect,
            Comparison::AtMost,
            tol::CHECK_SEARCH_ROTATION_MAX,
        ),
        CheckResult::new(
            "search-separation",
            "degree-2 family stays above the defect floor",
            separation,
            Comparison::Exceeds,
            tol::CHECK_SEARCH_SEPARATION_MIN,
        ),
        CheckResult::new(
            "search-reproducible",
            "identical seed reproduces the best defect bit-exactly",
            if reproducible { 0.0 } else { 1.0 },
            Comparison::AtMost,
            0.0,
        ),
        CheckResult::new(
            "search-runtime",
            "search checks finish within two minutes",
            elapsed,
            Comparison::AtMost,
            120.0,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons_evaluate_correctly() {
        let row = CheckResult::new("a", "s", 0.5, Comparison::AtMost, 1.0);
        assert!(row.pass);
        let row = CheckResult::new("a", "s", 2.0, Comparison::AtMost, 1.0);
        assert!(!row.pass);
        let row = CheckResult::new("a", "s", 2.0, Comparison::Exceeds, 1.0);
        assert!(row.pass);
        let row = CheckResult::new("a", "s", f64::NAN, Comparison::AtMost, 1.0);
        assert!(!row.pass);
    }

    #[test]
    fn factorial_group_passes() {
        let rows = check_factorial_obstruction(&VerifyConfig::default()).unwrap();
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn moment_group_passes_with_default_nodes() {
        let rows = check_moments(&VerifyConfig::default()).unwrap();
        assert!(rows[0].pass, "measured {}", rows[0].measured);
    }

    #[test]
    fn coarse_quadrature_defeats_norm_checks() {
        // designed sensitivity: K = 4 ruins the monomial comparisons
        let config = VerifyConfig {
            radial_nodes: 4,
            norm_radial_nodes: 4,
            ..Default::default()
        };
        let rows = check_monomial_seminorms(&config).unwrap();
        assert!(!rows[0].pass, "measured {}", rows[0].measured);
    }
}
