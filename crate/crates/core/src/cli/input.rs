use serde_json::Value;

use crate::curve::{Branch, PlaneCurve, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::exactalg::parse::parse_poly_in;
use crate::exactalg::poly::MultiPoly;
use crate::series::TruncSeries;

/// Name of the environment variable overriding the working truncation.
pub const TRUNCATION_ENV: &str = "LEGDEF_TRUNCATION";

/// `--truncation`, else `LEGDEF_TRUNCATION`, else the library default.
pub fn truncation(flag: Option<usize>) -> Result<usize> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(TRUNCATION_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("{TRUNCATION_ENV}={s} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_TRUNCATION),
    }
}

pub fn equation(s: &str) -> Result<MultiPoly> {
    parse_poly_in(s, &["x", "y"])
}

/// `[{"x": "t^3", "y": "t^10"}, ...]`; an optional `"prec"` marks the
/// components as truncated below `t^prec`.
pub fn branches(s: &str) -> Result<Vec<Branch>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("branches JSON: {e}")))?;
    let arr = v.as_array().ok_or_else(|| Error::Parse("branches must be a JSON array".into()))?;
    arr.iter()
        .map(|b| {
            let comp = |name: &str| -> Result<&str> {
                b.get(name)
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse(format!("branch is missing string field `{name}`")))
            };
            let prec = match b.get("prec") {
                None | Some(Value::Null) => None,
                Some(p) => Some(
                    p.as_u64().ok_or_else(|| Error::Parse("`prec` must be a nonnegative integer".into()))? as usize,
                ),
            };
            Branch::new(TruncSeries::parse(comp("x")?, "t", prec)?, TruncSeries::parse(comp("y")?, "t", prec)?)
        })
        .collect()
}

/// A plane curve from an equation, branches, or both.
pub fn curve(eq: Option<&str>, bs: Option<&str>) -> Result<PlaneCurve> {
    match (eq, bs) {
        (Some(e), Some(b)) => PlaneCurve::with_both(equation(e)?, branches(b)?),
        (Some(e), None) => PlaneCurve::from_equation(equation(e)?),
        (None, Some(b)) => PlaneCurve::from_branches(branches(b)?),
        (None, None) => Err(Error::Parse("give --equation or --branches".into())),
    }
}

pub fn name_list(s: &str) -> Vec<String> {
    s.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect()
}
