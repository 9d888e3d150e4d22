//! JSON map-description schema.
//!
//! ```json
//! {"kind": "rotation", "theta": 1.5707963267948966}
//! {"kind": "automorphism", "lambda_theta": 0.0, "a": [0.5, 0.0]}
//! {"kind": "blaschke", "lambda_theta": 0.0, "zeros": [[0,0],[0.4,0]]}
//! {"kind": "series", "coeffs": [[0,0],[1,0]], "role": "function"}
//! {"kind": "compose", "outer": {...}, "inner": {...}}
//! ```
//!
//! Angles are radians. The optional top-level `"role"` distinguishes symbols
//! (must be self-maps) from test functions (need not be); it defaults to
//! `"symbol"`. Parsing is strict: unknown fields are rejected with the JSON
//! path of the offender.

use super::{AnalyticMap, BlaschkeProduct, DiskAutomorphism, MapError, PowerSeries};
use crate::scalar::{real, Real, C};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemaError {
    #[error("{path}: expected a JSON object")]
    NotAnObject { path: String },
    #[error("{path}: missing required field `{field}`")]
    MissingField { path: String, field: &'static str },
    #[error("{path}: unknown field `{field}`")]
    UnknownField { path: String, field: String },
    #[error("{path}: unknown kind `{kind}`")]
    UnknownKind { path: String, kind: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {source}")]
    BadMap { path: String, source: MapError },
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Whether a parsed map plays the role of a composition symbol or of a test
/// function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Role {
    #[default]
    Symbol,
    Function,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Symbol => "symbol",
            Role::Function => "function",
        }
    }
}

/// A map together with its declared role.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedMap<T> {
    pub map: AnalyticMap<T>,
    pub role: Role,
}

impl<T: Real> ParsedMap<T> {
    /// Enforces the self-map contract for symbols; functions pass through.
    pub fn ensure_valid(self, grid_density: usize) -> Result<AnalyticMap<T>, MapError> {
        if self.role == Role::Symbol {
            let report = self.map.validate_self_map(grid_density);
            if !report.is_self_map {
                let w = report.witness.unwrap_or_else(|| C::new(T::zero(), T::zero()));
                return Err(MapError::NotSelfMap {
                    re: w.re.to_f64().unwrap_or(f64::NAN),
                    im: w.im.to_f64().unwrap_or(f64::NAN),
                    modulus: report.max_modulus.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(self.map)
    }
}

pub fn from_json_str<T: Real>(text: &str) -> Result<ParsedMap<T>, SchemaError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
    from_json_value(&value)
}

pub fn from_json_value<T: Real>(value: &Value) -> Result<ParsedMap<T>, SchemaError> {
    let obj = value.as_object().ok_or_else(|| SchemaError::NotAnObject {
        path: "$".into(),
    })?;
    let role = match obj.get("role") {
        None => Role::Symbol,
        Some(Value::String(s)) if s == "symbol" => Role::Symbol,
        Some(Value::String(s)) if s == "function" => Role::Function,
        Some(other) => {
            return Err(SchemaError::Invalid {
                path: "$.role".into(),
                message: format!("expected \"symbol\" or \"function\", got {other}"),
            })
        }
    };
    let map = parse_node(obj, "$", true)?;
    Ok(ParsedMap { map, role })
}

pub fn to_json_value<T: Real>(map: &AnalyticMap<T>, role: Role) -> Value {
    let mut value = node_to_value(map);
    if let Value::Object(obj) = &mut value {
        obj.insert("role".into(), Value::String(role.as_str().into()));
    }
    value
}

fn node_to_value<T: Real>(map: &AnalyticMap<T>) -> Value {
    fn pair<T: Real>(c: C<T>) -> Value {
        json!([c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN)])
    }
    match map {
        AnalyticMap::Automorphism(m) if m.is_rotation() => json!({
            "kind": "rotation",
            "theta": (-m.phase()).arg().to_f64().unwrap_or(f64::NAN),
        }),
        AnalyticMap::Automorphism(m) => json!({
            "kind": "automorphism",
            "lambda_theta": m.phase().arg().to_f64().unwrap_or(f64::NAN),
            "a": pair(m.center()),
        }),
        AnalyticMap::Blaschke(b) => json!({
            "kind": "blaschke",
            "lambda_theta": b.phase().arg().to_f64().unwrap_or(f64::NAN),
            "zeros": b.zeros().iter().map(|&z| pair(z)).collect::<Vec<_>>(),
        }),
        AnalyticMap::Series(s) => json!({
            "kind": "series",
            "coeffs": s.coeffs().iter().map(|&c| pair(c)).collect::<Vec<_>>(),
        }),
        AnalyticMap::Compose { outer, inner } => json!({
            "kind": "compose",
            "outer": node_to_value(outer),
            "inner": node_to_value(inner),
        }),
    }
}

fn parse_node<T: Real>(
    obj: &Map<String, Value>,
    path: &str,
    top_level: bool,
) -> Result<AnalyticMap<T>, SchemaError> {
    let kind = obj
        .get("kind")
        .ok_or_else(|| SchemaError::MissingField {
            path: path.into(),
            field: "kind",
        })?
        .as_str()
        .ok_or_else(|| SchemaError::Invalid {
            path: format!("{path}.kind"),
            message: "kind must be a string".into(),
        })?;

    let allowed: &[&str] = match kind {
        "rotation" => &["kind", "theta"],
        "automorphism" => &["kind", "lambda_theta", "a"],
        "blaschke" => &["kind", "lambda_theta", "zeros"],
        "series" => &["kind", "coeffs"],
        "compose" => &["kind", "outer", "inner"],
        other => {
            return Err(SchemaError::UnknownKind {
                path: path.into(),
                kind: other.into(),
            })
        }
    };
    for key in obj.keys() {
        let is_role = top_level && key == "role";
        if !is_role && !allowed.contains(&key.as_str()) {
            return Err(SchemaError::UnknownField {
                path: path.into(),
                field: key.clone(),
            });
        }
    }

    match kind {
        "rotation" => {
            let theta = get_number(obj, "theta", path)?;
            Ok(AnalyticMap::rotation(real(theta)))
        }
        "automorphism" => {
            let lambda_theta = get_number(obj, "lambda_theta", path)?;
            let a = get_pair::<T>(obj.get("a"), "a", path)?;
            let phase = crate::scalar::unit_phase(real::<T>(lambda_theta));
            DiskAutomorphism::new(phase, a)
                .map(AnalyticMap::from)
                .map_err(|source| SchemaError::BadMap {
                    path: path.into(),
                    source,
                })
        }
        "blaschke" => {
            let lambda_theta = get_number(obj, "lambda_theta", path)?;
            let zeros = get_pair_list::<T>(obj.get("zeros"), "zeros", path)?;
            BlaschkeProduct::from_zeros(real(lambda_theta), zeros)
                .map(AnalyticMap::from)
                .map_err(|source| SchemaError::BadMap {
                    path: path.into(),
                    source,
                })
        }
        "series" => {
            let coeffs = get_pair_list::<T>(obj.get("coeffs"), "coeffs", path)?;
            PowerSeries::new(coeffs)
                .map(AnalyticMap::from)
                .map_err(|source| SchemaError::BadMap {
                    path: path.into(),
                    source,
                })
        }
        "compose" => {
            let outer = get_object(obj, "outer", path)?;
            let inner = get_object(obj, "inner", path)?;
            let outer = parse_node(outer, &format!("{path}.outer"), false)?;
            let inner = parse_node(inner, &format!("{path}.inner"), false)?;
            Ok(AnalyticMap::composed(outer, inner))
        }
        _ => unreachable!("kind checked above"),
    }
}

fn get_number(obj: &Map<String, Value>, field: &'static str, path: &str) -> Result<f64, SchemaError> {
    obj.get(field)
        .ok_or_else(|| SchemaError::MissingField {
            path: path.into(),
            field,
        })?
        .as_f64()
        .ok_or_else(|| SchemaError::Invalid {
            path: format!("{path}.{field}"),
            message: "expected a number".into(),
        })
}

fn get_object<'a>(
    obj: &'a Map<String, Value>,
    field: &'static str,
    path: &str,
) -> Result<&'a Map<String, Value>, SchemaError> {
    obj.get(field)
        .ok_or_else(|| SchemaError::MissingField {
            path: path.into(),
            field,
        })?
        .as_object()
        .ok_or_else(|| SchemaError::NotAnObject {
            path: format!("{path}.{field}"),
        })
}

fn parse_pair<T: Real>(value: &Value, path: &str) -> Result<C<T>, SchemaError> {
    let arr = value.as_array().ok_or_else(|| SchemaError::Invalid {
        path: path.into(),
        message: "expected [re, im]".into(),
    })?;
    if arr.len() != 2 {
        return Err(SchemaError::Invalid {
            path: path.into(),
            message: format!("expected [re, im], got {} entries", arr.len()),
        });
    }
    let re = arr[0].as_f64().ok_or_else(|| SchemaError::Invalid {
        path: format!("{path}[0]"),
        message: "expected a number".into(),
    })?;
    let im = arr[1].as_f64().ok_or_else(|| SchemaError::Invalid {
        path: format!("{path}[1]"),
        message: "expected a number".into(),
    })?;
    Ok(C::new(real(re), real(im)))
}

fn get_pair<T: Real>(
    value: Option<&Value>,
    field: &'static str,
    path: &str,
) -> Result<C<T>, SchemaError> {
    let value = value.ok_or_else(|| SchemaError::MissingField {
        path: path.into(),
        field,
    })?;
    parse_pair(value, &format!("{path}.{field}"))
}

fn get_pair_list<T: Real>(
    value: Option<&Value>,
    field: &'static str,
    path: &str,
) -> Result<Vec<C<T>>, SchemaError> {
    let value = value.ok_or_else(|| SchemaError::MissingField {
        path: path.into(),
        field,
    })?;
    let arr = value.as_array().ok_or_else(|| SchemaError::Invalid {
        path: format!("{path}.{field}"),
        message: "expected an array of [re, im] pairs".into(),
    })?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| parse_pair(v, &format!("{path}.{field}[{i}]")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rotation_example() {
        let parsed =
            from_json_str::<f64>(r#"{"kind":"rotation","theta":1.5707963267948966}"#).unwrap();
        assert_eq!(parsed.role, Role::Symbol);
        let v = parsed.map.value(C::new(0.5, 0.0)).unwrap();
        assert!((v - C::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn parses_blaschke_example() {
        let parsed = from_json_str::<f64>(
            r#"{"kind":"blaschke","lambda_theta":0,"zeros":[[0,0],[0.4,0]]}"#,
        )
        .unwrap();
        match &parsed.map {
            AnalyticMap::Blaschke(b) => {
                assert_eq!(b.degree(), 2);
                assert!(b.fixes_origin());
            }
            other => panic!("expected blaschke, got {other:?}"),
        }
    }

    #[test]
    fn symbol_series_that_is_not_a_self_map_is_rejected() {
        let parsed =
            from_json_str::<f64>(r#"{"kind":"series","coeffs":[[0,0],[2,0]],"role":"symbol"}"#)
                .unwrap();
        let err = parsed.ensure_valid(32).unwrap_err();
        assert!(matches!(err, MapError::NotSelfMap { .. }));
    }

    #[test]
    fn function_role_skips_self_map_validation() {
        let parsed =
            from_json_str::<f64>(r#"{"kind":"series","coeffs":[[0,0],[2,0]],"role":"function"}"#)
                .unwrap();
        assert!(parsed.ensure_valid(32).is_ok());
    }

    #[test]
    fn unknown_fields_are_rejected_with_path() {
        let err = from_json_str::<f64>(r#"{"kind":"rotation","theta":0,"speed":3}"#).unwrap_err();
        assert!(matches!(err, SchemaError::UnknownField { ref field, .. } if field == "speed"));

        let err = from_json_str::<f64>(
            r#"{"kind":"compose","outer":{"kind":"rotation","theta":0,"x":1},
                "inner":{"kind":"rotation","theta":0}}"#,
        )
        .unwrap_err();
        match err {
            SchemaError::UnknownField { path, field } => {
                assert_eq!(path, "$.outer");
                assert_eq!(field, "x");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn nested_role_is_not_allowed() {
        let err = from_json_str::<f64>(
            r#"{"kind":"compose",
                "outer":{"kind":"rotation","theta":0,"role":"function"},
                "inner":{"kind":"rotation","theta":0}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, SchemaError::UnknownField { ref field, .. } if field == "role"));
    }

    #[test]
    fn missing_fields_name_the_path() {
        let err = from_json_str::<f64>(r#"{"kind":"automorphism","a":[0.5,0]}"#).unwrap_err();
        assert!(
            matches!(err, SchemaError::MissingField { field: "lambda_theta", .. }),
            "{err}"
        );
    }

    #[test]
    fn round_trip_preserves_evaluation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let maps: Vec<AnalyticMap<f64>> = vec![
            AnalyticMap::rotation(1.0),
            DiskAutomorphism::new(crate::scalar::unit_phase(0.4), C::new(0.3, -0.2))
                .unwrap()
                .into(),
            BlaschkeProduct::from_zeros(0.2, vec![C::new(0.0, 0.0), C::new(0.4, 0.1)])
                .unwrap()
                .into(),
            PowerSeries::from_real(&[0.0, 0.5, 0.25]).into(),
            AnalyticMap::composed(
                PowerSeries::from_real(&[0.0, 1.0, 0.5]).into(),
                AnalyticMap::rotation(0.7),
            ),
        ];
        for map in &maps {
            let value = to_json_value(map, Role::Function);
            let back = from_json_value::<f64>(&value).unwrap();
            assert_eq!(back.role, Role::Function);
            for _ in 0..20 {
                let r = rng.gen::<f64>().sqrt() * 0.95;
                let t = rng.gen::<f64>() * std::f64::consts::TAU;
                let z = C::new(r * t.cos(), r * t.sin());
                let a = map.value(z).unwrap();
                let b = back.map.value(z).unwrap();
                assert!((a - b).norm() < 1e-14, "{map:?} at {z}: {a} vs {b}");
            }
        }
    }
}
