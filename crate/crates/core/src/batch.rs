//! Sums of conductor contributions over several singular points.
//!
//! Input is a JSON array of points, each
//! `{"polynomial": "...", "vars": [...] | "x,y", "weights"?: [...],
//! "degree"?: r, "residue_field"?: "g(t)"}`. A point with residue field
//! `ℚ[t]/(g)` contributes `Tr(Δχ ⊗ k(p)) = Δχ · Tr⟨1⟩`.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::conductor::{verify, ConductorReport};
use crate::ekl::SingularityInput;
use crate::gw::{transfer, Field, GwElement};
use crate::poly::{parse_rational_function, UniPoly};
use crate::{Error, Result};

/// One parsed point.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchEntry {
    pub input: SingularityInput,
    pub residue_field: Option<(String, UniPoly)>,
}

/// Per-point result.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub report: ConductorReport,
    pub residue_field: Option<String>,
    pub contribution: GwElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchReport {
    pub points: Vec<PointReport>,
    pub sum: GwElement,
}

fn string_list(v: &Value, key: &str) -> Result<Vec<String>> {
    match v {
        Value::String(s) => Ok(s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()),
        Value::Array(items) => items
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::InvalidInput(format!("`{key}` entries must be strings")))
            })
            .collect(),
        _ => Err(Error::InvalidInput(format!("`{key}` must be a list or a comma-separated string"))),
    }
}

fn parse_entry(v: &Value) -> Result<BatchEntry> {
    let obj = v.as_object().ok_or_else(|| Error::InvalidInput("entry must be a JSON object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "polynomial" | "vars" | "weights" | "degree" | "residue_field") {
            return Err(Error::InvalidInput(format!("unknown key `{key}`")));
        }
    }
    let src = obj
        .get("polynomial")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput("`polynomial` (string) is required".into()))?;
    let vars = string_list(obj.get("vars").ok_or_else(|| Error::InvalidInput("`vars` is required".into()))?, "vars")?;
    let weights = match obj.get("weights") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::InvalidInput("`weights` must be positive integers".into())))
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(_) => return Err(Error::InvalidInput("`weights` must be an array".into())),
    };
    let degree = match obj.get("degree") {
        None | Some(Value::Null) => None,
        Some(x) => Some(x.as_u64().ok_or_else(|| Error::InvalidInput("`degree` must be a positive integer".into()))?),
    };
    let input = SingularityInput::from_source(src, &vars, weights, degree)?;
    let residue_field = match obj.get("residue_field") {
        None | Some(Value::Null) => None,
        Some(Value::String(g)) => {
            let (num, den) = parse_rational_function(g, "t")?;
            if den.degree() != Some(0) {
                return Err(Error::InvalidExtension(format!("`{g}` is not a polynomial in t")));
            }
            Some((g.clone(), num))
        }
        Some(_) => return Err(Error::InvalidInput("`residue_field` must be a polynomial in t".into())),
    };
    Ok(BatchEntry { input, residue_field })
}

/// Parses a JSON array of points; the first bad entry aborts with its index.
pub fn parse_batch(v: &Value) -> Result<Vec<BatchEntry>> {
    let items = v.as_array().ok_or_else(|| Error::InvalidInput("batch input must be a JSON array".into()))?;
    items
        .iter()
        .enumerate()
        .map(|(index, item)| parse_entry(item).map_err(|e| Error::BatchEntry { index, source: Box::new(e) }))
        .collect()
}

fn transfer_element(g: &UniPoly, e: &GwElement) -> Result<GwElement> {
    let consts = |side: &[crate::gw::SquareClass]| -> Result<Vec<UniPoly>> {
        side.iter()
            .map(|c| {
                c.as_integer()
                    .map(|a| UniPoly::constant(BigRational::from_integer(a.clone())))
                    .ok_or_else(|| Error::Internal("conductor classes are rational".into()))
            })
            .collect()
    };
    transfer(g, &consts(e.positive())?, &consts(e.negative())?)
}

/// Runs the conductor check for one point and applies the transfer.
pub fn run_entry(entry: &BatchEntry) -> Result<PointReport> {
    let report = verify(&entry.input)?;
    let contribution = match &entry.residue_field {
        Some((_, g)) => transfer_element(g, &report.rhs)?,
        None => report.rhs.clone(),
    };
    Ok(PointReport { report, residue_field: entry.residue_field.as_ref().map(|(s, _)| s.clone()), contribution })
}

/// Adds per-point results given in input order.
pub fn aggregate(results: Vec<Result<PointReport>>) -> Result<BatchReport> {
    let mut points = Vec::with_capacity(results.len());
    let mut sum = GwElement::zero(Field::Rationals);
    for (index, r) in results.into_iter().enumerate() {
        let p = r.map_err(|e| Error::BatchEntry { index, source: Box::new(e) })?;
        sum = sum.try_add(&p.contribution)?;
        points.push(p);
    }
    Ok(BatchReport { points, sum })
}

/// Sequential batch evaluation.
pub fn run_batch(v: &Value) -> Result<BatchReport> {
    let entries = parse_batch(v)?;
    aggregate(entries.iter().map(run_entry).collect())
}

impl BatchReport {
    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                json!({
                    "index": i,
                    "residue_field": p.residue_field,
                    "contribution": p.contribution.simplified().to_json(),
                    "report": p.report.to_json(),
                })
            })
            .collect();
        let sum = self.sum.simplified();
        json!({"points": points, "sum": sum.to_json(), "rank": sum.rank()})
    }
}
