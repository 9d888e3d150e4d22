//! Command-line front end: norm evaluation, operator diagnostics, defect
//! search, and the full verification battery.
//!
//! Exit codes: 0 success, 1 failed check or computation, 2 usage error.

mod output;
mod report;

use besov_core::analytic_map::schema::{self, ParsedMap};
use besov_core::analytic_map::AnalyticMap;
use besov_core::norms::NormKind;
use besov_core::operators::{
    borel_equality_check, change_of_variable_check, fullness_defect, isometry_defect,
    local_isometry_check, schwarz_pick_residual, BorelMethod, CenteredRegion,
    DiagnosticOptions, Weight, WeightedSymbol,
};
use besov_core::search::{minimize, SearchOptions, SearchSpace};
use besov_core::tolerances::PREIMAGE_BOUNDARY_EPS;
use besov_core::verify::{all_passed, run_battery, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{emit, OutputTarget};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "besov",
    about = "Disk-norm evaluation and composition-operator diagnostics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Integrability exponent p.
    #[arg(long, global = true)]
    p: Option<f64>,

    /// Radial quadrature nodes.
    #[arg(long, global = true, default_value_t = 64)]
    radial_nodes: usize,

    /// Angular quadrature nodes.
    #[arg(long, global = true, default_value_t = 256)]
    angular_nodes: usize,

    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    mc_samples: usize,

    /// Seed for all randomized estimators.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Emit CSV instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,

    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Besov,
    BesovSemi,
    Bergman,
    Equiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Blaschke,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Mc,
    Quad,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestIntegrand {
    One,
    Abs2,
    Abs4,
}

#[derive(Args)]
struct KindSelector {
    /// Norm kind.
    #[arg(long, value_enum, default_value = "besov")]
    kind: KindArg,

    /// Weight exponent for the Bergman kind.
    #[arg(long)]
    alpha: Option<f64>,

    /// Order for the equivalent kind.
    #[arg(long, default_value_t = 2)]
    n: usize,
}

impl KindSelector {
    fn resolve(&self) -> Result<NormKind<f64>, String> {
        Ok(match self.kind {
            KindArg::Besov => NormKind::BesovNorm,
            KindArg::BesovSemi => NormKind::BesovSeminorm,
            KindArg::Bergman => NormKind::Bergman {
                alpha: self
                    .alpha
                    .ok_or("--alpha is required for the bergman kind")?,
            },
            KindArg::Equiv => NormKind::Equivalent { order: self.n },
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a norm of a map.
    Norm {
        #[arg(long)]
        map: std::path::PathBuf,
        #[command(flatten)]
        kind: KindSelector,
    },
    /// Isometry defect of a composition operator over the test basis.
    Defect {
        #[arg(long)]
        map: std::path::PathBuf,
        #[command(flatten)]
        kind: KindSelector,
        /// Additional basis functions (map files with role "function").
        #[arg(long)]
        basis: Vec<std::path::PathBuf>,
    },
    /// Pointwise derivative-modulus residual field.
    Residual {
        #[arg(long)]
        map: std::path::PathBuf,
        #[arg(long, default_value_t = 48)]
        grid_density: usize,
        /// Include the full residual field in the report.
        #[arg(long)]
        field: bool,
    },
    /// Preimage counts over sampled targets and the omitted-area estimate.
    Coverage {
        #[arg(long)]
        map: std::path::PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = PREIMAGE_BOUNDARY_EPS)]
        eps: f64,
    },
    /// Area change-of-variable identity: substitution vs preimage counting.
    CovCheck {
        #[arg(long)]
        map: std::path::PathBuf,
        /// Radial test integrand g(w).
        #[arg(long, value_enum, default_value = "one")]
        g: TestIntegrand,
        #[arg(long, default_value_t = PREIMAGE_BOUNDARY_EPS)]
        eps: f64,
    },
    /// Pushforward-measure equality over a centered region.
    BorelCheck {
        #[arg(long)]
        map: std::path::PathBuf,
        /// Weight map file; omit to use the symbol's derivative.
        #[arg(long)]
        psi: Option<std::path::PathBuf>,
        #[arg(long)]
        alpha: f64,
        /// Region: "disk:RHO" or "annulus:INNER:OUTER".
        #[arg(long)]
        region: String,
        #[arg(long, value_enum, default_value = "mc")]
        method: MethodArg,
    },
    /// Local two-sided derivative comparison on a centered subdisk.
    LocalCheck {
        #[arg(long)]
        map: std::path::PathBuf,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
    },
    /// Minimize the isometry defect over an origin-fixing family.
    Search {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Blaschke degree or series truncation order.
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        kind: KindSelector,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 400)]
        budget: usize,
    },
    /// Run the full verification battery.
    Verify {
        /// Override the high-accuracy norm node count as well.
        #[arg(long)]
        norm_radial_nodes: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        coverage_samples: usize,
        #[arg(long, default_value_t = 8)]
        search_restarts: usize,
        #[arg(long, default_value_t = 250)]
        search_budget: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Check(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    /// Bad inputs: missing files, schema violations, invalid flag values.
    Usage(String),
    /// A computation failed or a verified property did not hold.
    Check(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn check<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Check(e.to_string())
}

fn load_map(path: &std::path::Path) -> Result<AnalyticMap<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let parsed: ParsedMap<f64> = schema::from_json_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parsed
        .ensure_valid(64)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn require_p(cli: &Cli) -> Result<f64, CliError> {
    let p = cli
        .p
        .ok_or_else(|| CliError::Usage("--p is required for this command".into()))?;
    if !(p > 1.0) {
        return Err(CliError::Usage(format!("p must exceed 1, got {p}")));
    }
    Ok(p)
}

fn parse_region(text: &str) -> Result<CenteredRegion<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad =
        || CliError::Usage(format!("region must be disk:RHO or annulus:INNER:OUTER, got {text}"));
    match parts.as_slice() {
        ["disk", rho] => Ok(CenteredRegion::Disk {
            radius: rho.parse().map_err(|_| bad())?,
        }),
        ["annulus", inner, outer] => Ok(CenteredRegion::Annulus {
            inner: inner.parse().map_err(|_| bad())?,
            outer: outer.parse().map_err(|_| bad())?,
        }),
        _ => Err(bad()),
    }
}

fn output_target(cli: &Cli) -> OutputTarget {
    OutputTarget {
        csv: cli.csv,
        out: cli.out.clone(),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let diag = DiagnosticOptions {
        radial_nodes: cli.radial_nodes,
        angular_nodes: cli.angular_nodes.clamp(16, 256),
    };
    match &cli.command {
        Command::Norm { map, kind } => {
            let p = require_p(cli)?;
            let kind = kind.resolve().map_err(CliError::Usage)?;
            let map = load_map(map)?;
            let rule = besov_core::norms::rule_for(kind, p, cli.radial_nodes, cli.angular_nodes)
                .map_err(usage)?;
            let value = besov_core::norms::evaluate(&map, p, kind, &rule).map_err(check)?;
            let report = report::norm_report(kind, p, value, cli.radial_nodes, cli.angular_nodes);
            emit(&report, &output_target(cli)).map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Defect { map, kind, basis } => {
            let p = require_p(cli)?;
            let kind = kind.resolve().map_err(CliError::Usage)?;
            let symbol = load_map(map)?;
            let mut test_basis = besov_core::operators::default_basis::<f64>();
            for path in basis {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let parsed: ParsedMap<f64> = schema::from_json_str(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                test_basis.push((path.display().to_string(), parsed.map));
            }
            let report = isometry_defect(&symbol, p, kind, &test_basis, diag).map_err(check)?;
            emit(&report::defect_report(&report), &output_target(cli)).map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Residual {
            map,
            grid_density,
            field,
        } => {
            let symbol = load_map(map)?;
            let report = schwarz_pick_residual(&symbol, *grid_density).map_err(check)?;
            emit(
                &report::residual_report(&report, *field),
                &output_target(cli),
            )
            .map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Coverage { map, samples, eps } => {
            let symbol = load_map(map)?;
            let report = fullness_defect(&symbol, *samples, *eps, cli.seed).map_err(check)?;
            emit(&report::coverage_report(&report), &output_target(cli)).map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CovCheck { map, g, eps } => {
            let symbol = load_map(map)?;
            let rule = besov_core::quadrature::WeightedDiskRule::build(
                0.0,
                cli.radial_nodes,
                cli.angular_nodes,
            )
            .map_err(usage)?;
            let (label, g): (&str, fn(num_complex::Complex64) -> f64) = match g {
                TestIntegrand::One => ("1", |_| 1.0),
                TestIntegrand::Abs2 => ("|w|^2", |w| w.norm_sqr()),
                TestIntegrand::Abs4 => ("|w|^4", |w| w.norm_sqr() * w.norm_sqr()),
            };
            let result = change_of_variable_check(&symbol, g, &rule, *eps).map_err(check)?;
            emit(&report::cov_report(label, &result), &output_target(cli)).map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::BorelCheck {
            map,
            psi,
            alpha,
            region,
            method,
        } => {
            let p = require_p(cli)?;
            let symbol = load_map(map)?;
            let region = parse_region(region)?;
            let ws = match psi {
                None => WeightedSymbol::derivative_weighted(symbol).map_err(check)?,
                Some(path) => {
                    let weight = load_map(path)?;
                    WeightedSymbol::new(symbol, Weight::Map(weight)).map_err(check)?
                }
            };
            let method = match method {
                MethodArg::Mc => BorelMethod::MonteCarlo {
                    samples: cli.mc_samples,
                    seed: cli.seed,
                },
                MethodArg::Quad => BorelMethod::Quadrature {
                    radial_nodes: cli.radial_nodes,
                    angular_nodes: cli.angular_nodes,
                },
            };
            let result = borel_equality_check(&ws, p, *alpha, region, method).map_err(check)?;
            emit(
                &report::borel_report(&region, *alpha, p, &result),
                &output_target(cli),
            )
            .map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LocalCheck { map, radius } => {
            let p = require_p(cli)?;
            let symbol = load_map(map)?;
            let result =
                local_isometry_check(&symbol, p, *radius, cli.radial_nodes, cli.angular_nodes)
                    .map_err(check)?;
            emit(
                &report::local_report(p, *radius, &result),
                &output_target(cli),
            )
            .map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            family,
            degree,
            kind,
            restarts,
            budget,
        } => {
            let p = require_p(cli)?;
            let kind = kind.resolve().map_err(CliError::Usage)?;
            if *degree == 0 {
                return Err(CliError::Usage("--degree must be at least 1".into()));
            }
            let space = match family {
                FamilyArg::Blaschke => SearchSpace::BlaschkeFixingZero { degree: *degree },
                FamilyArg::Series => SearchSpace::SeriesFixingZero { order: *degree },
            };
            let basis = besov_core::operators::default_basis::<f64>();
            let result = minimize(
                space,
                p,
                kind,
                &basis,
                SearchOptions {
                    restarts: *restarts,
                    seed: cli.seed,
                    budget: *budget,
                    radial_nodes: cli.radial_nodes.min(64),
                    angular_nodes: 64,
                },
            )
            .map_err(check)?;
            let decoded = space.decode(&result.best_params).map_err(check)?;
            emit(
                &report::search_report(&result, &decoded.map),
                &output_target(cli),
            )
            .map_err(check)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            norm_radial_nodes,
            coverage_samples,
            search_restarts,
            search_budget,
        } => {
            let defaults = VerifyConfig::default();
            let config = VerifyConfig {
                radial_nodes: cli.radial_nodes,
                angular_nodes: cli.angular_nodes,
                // a coarse --radial-nodes override deliberately degrades the
                // norm comparisons as well
                norm_radial_nodes: norm_radial_nodes.unwrap_or(if cli.radial_nodes != 64 {
                    cli.radial_nodes
                } else {
                    defaults.norm_radial_nodes
                }),
                mc_samples: cli.mc_samples,
                coverage_samples: *coverage_samples,
                seed: cli.seed,
                search_restarts: *search_restarts,
                search_budget: *search_budget,
            };
            let rows = run_battery(&config);
            emit(&report::verify_report(&rows), &output_target(cli)).map_err(check)?;
            if all_passed(&rows) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
