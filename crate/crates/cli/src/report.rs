//! Builders turning computed results into emission-ready reports.

use crate::output::Report;
use besov_core::norms::NormKind;
use besov_core::operators::{
    BorelCheck, CenteredRegion, CovCheck, CoverageReport, DefectReport, LocalCheck,
    ResidualReport,
};
use besov_core::search::SearchResult;
use besov_core::verify::CheckResult;
use besov_core::AnalyticMap;
use besov_core::analytic_map::schema::{to_json_value, Role};
use serde_json::{json, Value};

fn kind_fields(kind: NormKind<f64>) -> (String, Option<f64>, Option<usize>) {
    match kind {
        NormKind::BesovSeminorm => ("besov-semi".into(), None, None),
        NormKind::BesovNorm => ("besov".into(), None, None),
        NormKind::Bergman { alpha } => ("bergman".into(), Some(alpha), None),
        NormKind::Equivalent { order } => ("equiv".into(), None, Some(order)),
    }
}

pub fn norm_report(
    kind: NormKind<f64>,
    p: f64,
    value: f64,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Report {
    let (kind_name, alpha, order) = kind_fields(kind);
    let json = json!({
        "kind": kind_name,
        "p": p,
        "alpha": alpha,
        "n": order,
        "value": value,
        "rule_params": {
            "radial_nodes": radial_nodes,
            "angular_nodes": angular_nodes,
        },
    });
    Report {
        json,
        csv_header: vec![
            "kind".into(),
            "p".into(),
            "value".into(),
            "radial_nodes".into(),
            "angular_nodes".into(),
        ],
        csv_rows: vec![vec![
            Value::from(kind_name),
            Value::from(p),
            Value::from(value),
            Value::from(radial_nodes),
            Value::from(angular_nodes),
        ]],
    }
}

pub fn defect_report(report: &DefectReport<f64>) -> Report {
    let rows_json: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "function": r.id,
                "norm": r.norm,
                "composed_norm": r.composed_norm,
                "defect": r.defect,
            })
        })
        .collect();
    let json = json!({
        "p": report.p,
        "kind": report.kind,
        "symbol_at_zero": [report.symbol_at_zero.re, report.symbol_at_zero.im],
        "max_defect": report.max_defect,
        "rows": rows_json,
    });
    Report {
        json,
        csv_header: vec![
            "function".into(),
            "norm".into(),
            "composed_norm".into(),
            "defect".into(),
            "max_defect".into(),
        ],
        csv_rows: report
            .rows
            .iter()
            .map(|r| {
                vec![
                    Value::from(r.id.clone()),
                    Value::from(r.norm),
                    Value::from(r.composed_norm),
                    Value::from(r.defect),
                    Value::from(report.max_defect),
                ]
            })
            .collect(),
    }
}

pub fn residual_report(report: &ResidualReport<f64>, include_field: bool) -> Report {
    let field_json: Option<Vec<Value>> = include_field.then(|| {
        report
            .field
            .iter()
            .map(|(z, r)| json!([z.re, z.im, r]))
            .collect()
    });
    let json = json!({
        "max_residual": report.max_residual,
        "max_abs_residual": report.max_abs_residual,
        "grid_points": report.field.len(),
        "field": field_json,
    });
    let csv_rows = if include_field {
        report
            .field
            .iter()
            .map(|(z, r)| {
                vec![
                    Value::from(z.re),
                    Value::from(z.im),
                    Value::from(*r),
                    Value::from(report.max_residual),
                    Value::from(report.max_abs_residual),
                ]
            })
            .collect()
    } else {
        vec![vec![
            Value::Null,
            Value::Null,
            Value::Null,
            Value::from(report.max_residual),
            Value::from(report.max_abs_residual),
        ]]
    };
    Report {
        json,
        csv_header: vec![
            "re".into(),
            "im".into(),
            "residual".into(),
            "max_residual".into(),
            "max_abs_residual".into(),
        ],
        csv_rows,
    }
}

pub fn coverage_report(report: &CoverageReport<f64>) -> Report {
    let histogram = {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for &(_, n) in &report.samples {
            match counts.iter_mut().find(|(k, _)| *k == n) {
                Some((_, c)) => *c += 1,
                None => counts.push((n, 1)),
            }
        }
        counts.sort_by_key(|&(k, _)| k);
        counts
    };
    let json = json!({
        "samples": report.samples.len(),
        "omitted_area": report.omitted_area,
        "boundary_eps": report.boundary_eps,
        "flagged_samples": report.flagged_samples,
        "count_histogram": histogram
            .iter()
            .map(|&(k, c)| json!({"preimages": k, "samples": c}))
            .collect::<Vec<_>>(),
    });
    Report {
        json,
        csv_header: vec![
            "preimages".into(),
            "samples".into(),
            "omitted_area".into(),
            "flagged_samples".into(),
        ],
        csv_rows: histogram
            .iter()
            .map(|&(k, c)| {
                vec![
                    Value::from(k),
                    Value::from(c),
                    Value::from(report.omitted_area),
                    Value::from(report.flagged_samples),
                ]
            })
            .collect(),
    }
}

pub fn cov_report(g_label: &str, check: &CovCheck<f64>) -> Report {
    let json = json!({
        "g": g_label,
        "lhs": check.lhs,
        "rhs": check.rhs,
        "gap": check.gap,
    });
    Report {
        json,
        csv_header: vec!["g".into(), "lhs".into(), "rhs".into(), "gap".into()],
        csv_rows: vec![vec![
            Value::from(g_label),
            Value::from(check.lhs),
            Value::from(check.rhs),
            Value::from(check.gap),
        ]],
    }
}

pub fn borel_report(
    region: &CenteredRegion<f64>,
    alpha: f64,
    p: f64,
    check: &BorelCheck<f64>,
) -> Report {
    let json = json!({
        "region": region.label(),
        "alpha": alpha,
        "p": p,
        "lhs": check.lhs,
        "rhs": check.rhs,
        "std_error": check.std_error,
        "gap": (check.lhs - check.rhs).abs(),
    });
    Report {
        json,
        csv_header: vec![
            "region".into(),
            "alpha".into(),
            "p".into(),
            "lhs".into(),
            "rhs".into(),
            "std_error".into(),
        ],
        csv_rows: vec![vec![
            Value::from(region.label()),
            Value::from(alpha),
            Value::from(p),
            Value::from(check.lhs),
            Value::from(check.rhs),
            check.std_error.map(Value::from).unwrap_or(Value::Null),
        ]],
    }
}

pub fn local_report(p: f64, radius: f64, check: &LocalCheck<f64>) -> Report {
    let json = json!({
        "p": p,
        "radius": radius,
        "derivative_side": check.derivative_side,
        "image_side": check.image_side,
        "difference": check.derivative_side - check.image_side,
    });
    Report {
        json,
        csv_header: vec![
            "p".into(),
            "radius".into(),
            "derivative_side".into(),
            "image_side".into(),
            "difference".into(),
        ],
        csv_rows: vec![vec![
            Value::from(p),
            Value::from(radius),
            Value::from(check.derivative_side),
            Value::from(check.image_side),
            Value::from(check.derivative_side - check.image_side),
        ]],
    }
}

pub fn search_report(result: &SearchResult<f64>, best_map: &AnalyticMap<f64>) -> Report {
    let json = json!({
        "best_defect": result.best_defect,
        "best_params": result.best_params,
        "best_restart": result.best_restart,
        "seed": result.seed,
        "converged": result.converged,
        "near_boundary": result.near_boundary,
        "best_map": to_json_value(best_map, Role::Symbol),
        "traces": result.traces,
    });
    Report {
        json,
        csv_header: vec![
            "best_defect".into(),
            "best_restart".into(),
            "seed".into(),
            "converged".into(),
            "near_boundary".into(),
        ],
        csv_rows: vec![vec![
            Value::from(result.best_defect),
            Value::from(result.best_restart),
            Value::from(result.seed),
            Value::from(result.converged),
            Value::from(result.near_boundary),
        ]],
    }
}

pub fn verify_report(rows: &[CheckResult]) -> Report {
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "check": r.id,
                "statement": r.statement,
                "measured": r.measured,
                "comparison": r.comparison.symbol(),
                "threshold": r.threshold,
                "pass": r.pass,
                "seconds": r.seconds,
                "detail": r.detail,
            })
        })
        .collect();
    let json = json!({
        "pass": rows.iter().all(|r| r.pass),
        "checks": json_rows,
    });
    Report {
        json,
        csv_header: vec![
            "check".into(),
            "statement".into(),
            "measured".into(),
            "comparison".into(),
            "threshold".into(),
            "pass".into(),
            "seconds".into(),
            "detail".into(),
        ],
        csv_rows: rows
            .iter()
            .map(|r| {
                vec![
                    Value::from(r.id.clone()),
                    Value::from(r.statement.clone()),
                    Value::from(r.measured),
                    Value::from(r.comparison.symbol()),
                    Value::from(r.threshold),
                    Value::from(r.pass),
                    Value::from(r.seconds),
                    Value::from(r.detail.clone()),
                ]
            })
            .collect(),
    }
}
