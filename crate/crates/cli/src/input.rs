//! Inline vector syntax and JSON input documents.
//!
//! Documents are objects with exactly one key among `fan`, `polytope`,
//! `grading` and `blowup`. Integers may be JSON numbers or decimal strings;
//! rationals are strings `"p/q"`. Ray indices are 1-based.

use std::path::Path;

use coxkit::{Fan, IntVec, Polytope, RatVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn parse_int(s: &str) -> Result<BigInt, CliError> {
    s.trim().parse().map_err(|_| bad(format!("not an integer: {s:?}")))
}

pub fn parse_rat(s: &str) -> Result<BigRational, CliError> {
    coxkit::num::parse_rat(s).ok_or_else(|| bad(format!("not a rational number: {s:?}")))
}

pub fn parse_ints(s: &str) -> Result<IntVec, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_int).collect()
}

pub fn parse_rats(s: &str) -> Result<RatVec, CliError> {
    s.split(',').map(parse_rat).collect()
}

/// `"1,0;0,1"` as a list of vectors; an empty string is the empty list.
pub fn parse_int_vectors(s: &str) -> Result<Vec<IntVec>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_ints).collect()
}

pub fn parse_rat_vectors(s: &str) -> Result<Vec<RatVec>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_rats).collect()
}

pub fn parse_u64_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| bad(format!("not a nonnegative integer: {x:?}"))))
        .collect()
}

pub fn read_document(path: &Path) -> Result<(String, Value), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let Value::Object(map) = v else {
        return Err(bad("a document must be a JSON object"));
    };
    let mut kinds = map.into_iter().filter(|(k, _)| matches!(k.as_str(), "fan" | "polytope" | "grading" | "blowup"));
    match (kinds.next(), kinds.next()) {
        (Some((k, body)), None) => Ok((k, body)),
        _ => Err(bad("a document needs exactly one of fan, polytope, grading, blowup")),
    }
}

pub fn expect_kind(path: &Path, kind: &str) -> Result<Value, CliError> {
    let (k, body) = read_document(path)?;
    if k != kind {
        return Err(bad(format!("{}: expected a {kind} document, found {k}", path.display())));
    }
    Ok(body)
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, CliError> {
    v.get(name).ok_or_else(|| bad(format!("missing field {name:?}")))
}

pub fn value_int(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::String(s) => parse_int(s),
        Value::Number(n) => parse_int(&n.to_string()),
        _ => Err(bad(format!("expected an integer, found {v}"))),
    }
}

pub fn value_rat(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => parse_rat(&n.to_string()),
        _ => Err(bad(format!("expected a rational, found {v}"))),
    }
}

pub fn value_usize(v: &Value) -> Result<usize, CliError> {
    value_int(v)?.try_into().map_err(|_| bad(format!("expected a small nonnegative integer, found {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn int_vectors(v: &Value, what: &str) -> Result<Vec<IntVec>, CliError> {
    array(v, what)?.iter().map(|row| array(row, what)?.iter().map(value_int).collect()).collect()
}

fn rat_vectors(v: &Value, what: &str) -> Result<Vec<RatVec>, CliError> {
    array(v, what)?.iter().map(|row| array(row, what)?.iter().map(value_rat).collect()).collect()
}

pub fn fan_from_value(v: &Value) -> Result<Fan, CliError> {
    let dim = value_usize(field(v, "lattice_dim")?)?;
    let rays = int_vectors(field(v, "rays")?, "rays")?;
    let cones: Vec<Vec<usize>> = array(field(v, "max_cones")?, "max_cones")?
        .iter()
        .map(|c| {
            array(c, "max_cones")?
                .iter()
                .map(|i| match value_usize(i)? {
                    0 => Err(bad("ray indices are 1-based")),
                    i => Ok(i - 1),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(Fan::new(dim, rays, cones)?)
}

pub fn polytope_from_value(v: &Value) -> Result<Polytope, CliError> {
    let verts = rat_vectors(field(v, "vertices")?, "vertices")?;
    polytope_from_points(&verts)
}

pub fn polytope_from_points(points: &[RatVec]) -> Result<Polytope, CliError> {
    let dim = points.first().map(Vec::len).ok_or_else(|| bad("a polytope needs at least one vertex"))?;
    if dim == 2 {
        Ok(coxkit::convex_hull_2d(points)?)
    } else {
        Ok(Polytope::from_points(points, dim)?)
    }
}

pub struct GradingDoc {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub degrees: Vec<IntVec>,
}

pub fn grading_from_value(v: &Value) -> Result<GradingDoc, CliError> {
    let free_rank = value_usize(field(v, "free_rank")?)?;
    let torsion = match v.get("torsion") {
        Some(t) => array(t, "torsion")?.iter().map(value_int).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    let degrees = int_vectors(field(v, "degrees")?, "degrees")?;
    Ok(GradingDoc {
        free_rank,
        torsion,
        degrees,
    })
}

pub struct BlowupDoc {
    pub weights: Option<Vec<u64>>,
    pub polygon: Option<Vec<RatVec>>,
    pub m: Option<u64>,
    pub k: Option<u64>,
}

pub fn blowup_from_value(v: &Value) -> Result<BlowupDoc, CliError> {
    let small = |x: &Value| -> Result<u64, CliError> {
        value_int(x)?.try_into().map_err(|_| bad(format!("expected a small nonnegative integer, found {x}")))
    };
    Ok(BlowupDoc {
        weights: v
            .get("weights")
            .map(|w| array(w, "weights")?.iter().map(small).collect())
            .transpose()?,
        polygon: v.get("polygon").map(|p| rat_vectors(p, "polygon")).transpose()?,
        m: v.get("m").map(small).transpose()?,
        k: v.get("k").map(small).transpose()?,
    })
}
