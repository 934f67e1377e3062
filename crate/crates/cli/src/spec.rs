//! Curve spec documents: explicit branch data or a seeded generator block.

use std::fmt;

use serde::Serialize;
use serde_json::Value;
use trigauss_core::curve::{generate_branch, BranchData, Curve, GeneratorParams};
use trigauss_core::exact::Rational;
use trigauss_core::Error;

/// Environment variable capping generator denominators.
pub const MAX_DENOM_VAR: &str = "TRIGAUSS_MAX_DENOM";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveSpec {
    Explicit { roots: Vec<Rational>, exponents: Vec<u32> },
    Generator(GeneratorParams),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

impl Violation {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Violation {
            code,
            message: message.into(),
        }
    }
}

impl From<&Error> for Violation {
    fn from(e: &Error) -> Self {
        Violation::new(e.code(), e.to_string())
    }
}

/// Every problem found in a spec document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecError {
    pub violations: Vec<Violation>,
}

impl SpecError {
    fn one(code: &'static str, message: impl Into<String>) -> Self {
        SpecError {
            violations: vec![Violation::new(code, message)],
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| format!("[{}] {}", v.code, v.message)).collect();
        write!(f, "invalid curve spec: {}", parts.join("; "))
    }
}

impl std::error::Error for SpecError {}

fn parse_root(v: &Value, idx: usize, out: &mut Vec<Violation>) -> Option<Rational> {
    let parsed = match v {
        Value::String(s) => s.trim().parse::<Rational>().ok(),
        Value::Number(n) => n.as_i64().map(Rational::from),
        _ => None,
    };
    if parsed.is_none() {
        out.push(Violation::new("bad_root", format!("root {} is not a rational: {v}", idx + 1)));
    }
    parsed
}

fn parse_exponent(v: &Value, idx: usize, out: &mut Vec<Violation>) -> Option<u32> {
    let parsed = v.as_u64().and_then(|a| u32::try_from(a).ok());
    if parsed.is_none() {
        out.push(Violation::new(
            "bad_exponent",
            format!("exponent {} is not a non-negative integer: {v}", idx + 1),
        ));
    }
    parsed
}

fn field_usize(obj: &serde_json::Map<String, Value>, key: &str, out: &mut Vec<Violation>) -> Option<u64> {
    match obj.get(key) {
        Some(v) => {
            let n = v.as_u64();
            if n.is_none() {
                out.push(Violation::new("bad_generator", format!("generator.{key} must be a non-negative integer")));
            }
            n
        }
        None => {
            out.push(Violation::new("bad_generator", format!("generator.{key} is missing")));
            None
        }
    }
}

fn parse_generator(v: &Value) -> Result<GeneratorParams, SpecError> {
    let Some(obj) = v.as_object() else {
        return Err(SpecError::one("bad_generator", "generator must be an object"));
    };
    let mut out = Vec::new();
    for key in obj.keys() {
        if !["r1", "r2", "seed", "max_denom"].contains(&key.as_str()) {
            out.push(Violation::new("unknown_field", format!("unknown generator field {key:?}")));
        }
    }
    let r1 = field_usize(obj, "r1", &mut out);
    let r2 = field_usize(obj, "r2", &mut out);
    let seed = field_usize(obj, "seed", &mut out);
    let max_denom = match obj.get("max_denom") {
        Some(v) => match v.as_u64() {
            Some(d) if d >= 1 => Some(d),
            _ => {
                out.push(Violation::new("bad_generator", "generator.max_denom must be a positive integer"));
                None
            }
        },
        None => Some(1),
    };
    match (r1, r2, seed, max_denom) {
        (Some(r1), Some(r2), Some(seed), Some(max_denom)) if out.is_empty() => Ok(GeneratorParams {
            r1: r1 as usize,
            r2: r2 as usize,
            seed,
            max_denom,
        }),
        _ => Err(SpecError { violations: out }),
    }
}

/// Parse and validate a spec document. Explicit branch data is checked against every
/// branch-data invariant at once.
pub fn parse_spec(text: &str) -> Result<CurveSpec, SpecError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| SpecError::one("malformed_json", e.to_string()))?;
    let Some(obj) = doc.as_object() else {
        return Err(SpecError::one("malformed_spec", "spec must be a JSON object"));
    };
    let mut out = Vec::new();
    for key in obj.keys() {
        if !["roots", "exponents", "generator"].contains(&key.as_str()) {
            out.push(Violation::new("unknown_field", format!("unknown field {key:?}")));
        }
    }
    let spec = match (obj.get("roots"), obj.get("generator")) {
        (Some(_), Some(_)) => {
            out.push(Violation::new("ambiguous_spec", "give either roots or generator, not both"));
            None
        }
        (None, None) => {
            out.push(Violation::new("missing_roots", "spec needs roots or a generator block"));
            None
        }
        (None, Some(g)) => {
            if obj.contains_key("exponents") {
                out.push(Violation::new("ambiguous_spec", "exponents are fixed by the generator block"));
            }
            match parse_generator(g) {
                Ok(p) => Some(CurveSpec::Generator(p)),
                Err(e) => {
                    out.extend(e.violations);
                    None
                }
            }
        }
        (Some(r), None) => parse_explicit(r, obj.get("exponents"), &mut out),
    };
    match spec {
        Some(s) if out.is_empty() => {
            s.build().map_err(|e| SpecError {
                violations: vec![Violation::from(&e)],
            })?;
            Ok(s)
        }
        _ => Err(SpecError { violations: out }),
    }
}

fn parse_explicit(roots: &Value, exponents: Option<&Value>, out: &mut Vec<Violation>) -> Option<CurveSpec> {
    let Some(list) = roots.as_array() else {
        out.push(Violation::new("bad_root", "roots must be an array"));
        return None;
    };
    let before = out.len();
    let roots: Vec<Option<Rational>> = list.iter().enumerate().map(|(i, v)| parse_root(v, i, out)).collect();
    let exponents: Vec<Option<u32>> = match exponents {
        None => vec![Some(1); roots.len()],
        Some(Value::Array(a)) => a.iter().enumerate().map(|(i, v)| parse_exponent(v, i, out)).collect(),
        Some(_) => {
            out.push(Violation::new("bad_exponent", "exponents must be an array"));
            return None;
        }
    };
    if out.len() > before {
        return None;
    }
    let roots: Vec<Rational> = roots.into_iter().flatten().collect();
    let exponents: Vec<u32> = exponents.into_iter().flatten().collect();
    let found = BranchData::violations(&roots, &exponents);
    if !found.is_empty() {
        out.extend(found.iter().map(Violation::from));
        return None;
    }
    Some(CurveSpec::Explicit { roots, exponents })
}

impl CurveSpec {
    /// Replaces the generator seed. Explicit specs have no seed.
    pub fn with_seed(self, seed: u64) -> Result<Self, SpecError> {
        match self {
            CurveSpec::Generator(p) => Ok(CurveSpec::Generator(GeneratorParams { seed, ..p })),
            CurveSpec::Explicit { .. } => Err(SpecError::one("seed_without_generator", "--seed applies only to generated curves")),
        }
    }

    /// Applies a denominator cap to a generator that did not set one.
    pub fn with_max_denom(self, max_denom: u64) -> Self {
        match self {
            CurveSpec::Generator(p) if p.max_denom == 1 => CurveSpec::Generator(GeneratorParams { max_denom, ..p }),
            other => other,
        }
    }

    pub fn build(&self) -> Result<Curve, Error> {
        let branch = match self {
            CurveSpec::Explicit { roots, exponents } => BranchData::new(roots.clone(), exponents.clone())?,
            CurveSpec::Generator(p) => generate_branch(p)?,
        };
        Curve::new(branch)
    }
}

/// Reads the denominator cap from the environment, if set.
pub fn max_denom_from_env() -> Result<Option<u64>, SpecError> {
    match std::env::var(MAX_DENOM_VAR) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(d) if d >= 1 => Ok(Some(d)),
            _ => Err(SpecError::one("bad_max_denom", format!("{MAX_DENOM_VAR} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(text: &str) -> Vec<&'static str> {
        parse_spec(text).unwrap_err().violations.iter().map(|v| v.code).collect()
    }

    #[test]
    fn six_roots_genus_four() {
        let s = parse_spec(r#"{"roots":["0","1","-1","2","-2","3"],"exponents":[1,1,1,1,1,1]}"#).unwrap();
        assert_eq!(s.build().unwrap().genus(), 4);
        let s = parse_spec(r#"{"roots":["0","1","-1","5/2","-2","3"]}"#).unwrap();
        assert_eq!(s.build().unwrap().genus(), 4);
    }

    #[test]
    fn duplicate_root() {
        let err = parse_spec(r#"{"roots":["0","0","1","2","3","4"]}"#).unwrap_err();
        assert_eq!(err.violations[0].code, "duplicate_root");
        assert!(err.violations[0].message.contains("duplicate root"));
    }

    #[test]
    fn every_violation_is_listed() {
        let got = codes(r#"{"roots":["1","1","2","3","4"],"exponents":[1,1,1,3,1]}"#);
        assert_eq!(got, ["bad_exponent", "duplicate_root", "first_root_not_zero", "not_cyclic_trigonal"]);
        assert_eq!(codes(r#"{"roots":["0","x"]}"#), ["bad_root"]);
        assert_eq!(codes("[1,2"), ["malformed_json"]);
        assert_eq!(codes(r#"{"roots":["0"],"generator":{"r1":6,"r2":0,"seed":1}}"#), ["ambiguous_spec"]);
        assert_eq!(codes(r#"{"roots":["0","1","2"]}"#), ["genus_too_small"]);
    }

    #[test]
    fn generator_block() {
        let s = parse_spec(r#"{"generator":{"r1":18,"r2":0,"seed":7}}"#).unwrap();
        let c = s.build().unwrap();
        assert_eq!(c.r(), 18);
        assert!(c.branch().roots()[0].is_zero());
        assert_eq!(codes(r#"{"generator":{"r1":10,"r2":8,"seed":1}}"#), ["not_cyclic_trigonal"]);
        assert_eq!(codes(r#"{"generator":{"r1":6,"seed":1}}"#), ["bad_generator"]);
    }

    #[test]
    fn seed_override() {
        let s = parse_spec(r#"{"generator":{"r1":6,"r2":0,"seed":1}}"#).unwrap().with_seed(9).unwrap();
        assert_eq!(s, CurveSpec::Generator(GeneratorParams::new(6, 0, 9)));
        let e = parse_spec(r#"{"roots":["0","1","-1","2","-2","3"]}"#).unwrap();
        assert!(e.with_seed(3).is_err());
    }
}
