use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interp::{forced_vertex_coefficient, InterpolationProblem};
use super::laurent::{falling, order_at_e, LaurentPoly};
use super::ForcedVertexOutcome;
use crate::divisors::intersection_number_nef_surface;
use crate::error::{Error, Result};
use crate::fan::{normal_fan_with_ample, standard_fan, unimodular_equivalence, StandardFan};
use crate::num::{fmt_rat, parse_rat, RatVec};
use crate::polyhedra::{lattice_points, Polytope};

/// Number of multiples `mD` checked by default.
pub const DEFAULT_MULTIPLES: u64 = 5;

/// Conclusion attached to a nef-not-semiample certificate. Only finitely
/// many multiples are checked; the statement for all `m` is cited.
pub const VERDICT: &str = "not a Mori dream space (paper-level conclusion)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    NegativeCurve,
    ForcedVertex,
    NefNotSemiample,
}

/// A self-contained, re-checkable claim. All numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub polygon: Vec<[String; 2]>,
    pub m: String,
    pub k: String,
    pub functional: Option<[String; 2]>,
    pub payload: Payload,
    pub transcript: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    ForcedVertex(ForcedVertexPayload),
    NegativeCurve(NegativeCurvePayload),
    NefNotSemiample(Box<NefPayload>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcedVertexPayload {
    pub translation: [String; 2],
    pub vertex: [String; 2],
    pub vertex_value: String,
    pub points_checked: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegativeCurvePayload {
    /// Terms `[[a, b], c]` of the section `f`.
    pub section: Vec<([String; 2], String)>,
    pub order: String,
    pub h_squared: String,
    pub c_squared: String,
    pub c_dot_e: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NefPayload {
    pub weights: [String; 3],
    pub h_squared: String,
    pub e_squared: String,
    pub d_dot_c: String,
    pub d_dot_e: String,
    pub negative_curve: Certificate,
    pub multiples: Vec<Certificate>,
    pub verdict: String,
}

/// The curve `C` as a section `f` of `H` vanishing to order `w` at `e`, with
/// `C` of class `(1/w) π*H - E`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveData {
    pub f: LaurentPoly,
    pub w: u64,
}

impl CurveData {
    /// `f = x^a y^b (1 - y)^w`.
    pub fn binomial_power(monomial: (i64, i64), w: u64) -> Self {
        CurveData {
            f: LaurentPoly::monomial(monomial.0, monomial.1).mul(&LaurentPoly::binomial(0, 1).pow(w)),
            w,
        }
    }
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn polygon_strings(p: &Polytope) -> Vec<[String; 2]> {
    p.vertices()
        .iter()
        .map(|v| [fmt_rat(&v[0]), fmt_rat(&v[1])])
        .collect()
}

fn fail(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

fn parse_int(x: &str) -> Result<BigInt> {
    x.parse().map_err(|_| fail(format!("`{x}` is not an integer")))
}

fn parse_u64(x: &str) -> Result<u64> {
    x.parse().map_err(|_| fail(format!("`{x}` is not a nonnegative integer")))
}

fn parse_q(x: &str) -> Result<BigRational> {
    parse_rat(x).ok_or_else(|| fail(format!("`{x}` is not a rational number")))
}

fn parse_polygon(v: &[[String; 2]]) -> Result<Polytope> {
    let pts: Vec<RatVec> = v
        .iter()
        .map(|[a, b]| Ok(vec![parse_q(a)?, parse_q(b)?]))
        .collect::<Result<_>>()?;
    Polytope::from_points(&pts, 2)
}

fn twice_area(p: &Polytope) -> Result<BigRational> {
    Ok(p.area_2d()? * BigRational::from_integer(BigInt::from(2)))
}

pub(crate) fn forced_vertex(
    p: &InterpolationProblem,
    translation: &[BigInt],
    vertex: &[BigInt],
    functional: (u64, u64),
    value: &BigInt,
    points: usize,
) -> Certificate {
    let (i, j) = functional;
    Certificate {
        kind: CertificateKind::ForcedVertex,
        polygon: polygon_strings(p.polygon()),
        m: s(p.m()),
        k: s(p.k()),
        functional: Some([s(i), s(j)]),
        payload: Payload::ForcedVertex(ForcedVertexPayload {
            translation: [s(&translation[0]), s(&translation[1])],
            vertex: [s(&vertex[0]), s(&vertex[1])],
            vertex_value: s(value),
            points_checked: s(points),
        }),
        transcript: vec![
            format!(
                "translate {}·Δ by ({}, {})",
                p.m(),
                translation[0],
                translation[1]
            ),
            format!(
                "∂x^{i} ∂y^{j} at (1,1) vanishes on all {} other lattice points",
                points - 1
            ),
            format!("value at vertex ({}, {}) is {} ≠ 0", vertex[0], vertex[1], value),
            format!(
                "every section vanishing to order {} at e has zero coefficient at the vertex",
                p.k()
            ),
        ],
    }
}

impl Certificate {
    /// Re-checks the certificate from its own fields.
    pub fn verify(&self) -> Result<()> {
        let polygon = parse_polygon(&self.polygon)?;
        let m = parse_u64(&self.m)?;
        let k = parse_u64(&self.k)?;
        match (&self.kind, &self.payload) {
            (CertificateKind::ForcedVertex, Payload::ForcedVertex(p)) => {
                verify_forced(&polygon, m, k, self.functional.as_ref(), p)
            }
            (CertificateKind::NegativeCurve, Payload::NegativeCurve(p)) => verify_curve(&polygon, p),
            (CertificateKind::NefNotSemiample, Payload::NefNotSemiample(p)) => {
                verify_nef(&polygon, k, p)
            }
            _ => Err(fail("certificate kind does not match its payload")),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

fn verify_forced(
    polygon: &Polytope,
    m: u64,
    k: u64,
    functional: Option<&[String; 2]>,
    p: &ForcedVertexPayload,
) -> Result<()> {
    let [fi, fj] = functional.ok_or_else(|| fail("missing functional"))?;
    let (i, j) = (parse_u64(fi)?, parse_u64(fj)?);
    if i + j + 1 > k {
        return Err(fail("functional order is not below k"));
    }
    let t = [parse_int(&p.translation[0])?, parse_int(&p.translation[1])?];
    let v = [parse_int(&p.vertex[0])?, parse_int(&p.vertex[1])?];
    let expected = parse_int(&p.vertex_value)?;
    let scaled = polygon
        .scaled(&BigRational::from_integer(BigInt::from(m)))
        .translated(&crate::num::to_rat(&t));
    let v_rat = crate::num::to_rat(&v);
    if !scaled.vertices().contains(&v_rat) {
        return Err(fail("named point is not a vertex"));
    }
    let points = lattice_points(polygon, m)?;
    if s(points.len()) != p.points_checked {
        return Err(fail("lattice point count differs"));
    }
    let small = |x: &BigInt| -> Result<i64> {
        i64::try_from(x).map_err(|_| fail("coordinate exceeds 64 bits"))
    };
    let mut seen_vertex = false;
    for q in &points {
        let a = small(&(&q[0] + &t[0]))?;
        let b = small(&(&q[1] + &t[1]))?;
        let val = falling(a, i) * falling(b, j);
        if BigInt::from(a) == v[0] && BigInt::from(b) == v[1] {
            seen_vertex = true;
            if val != expected || val.is_zero() {
                return Err(fail("functional value at the vertex differs"));
            }
        } else if !val.is_zero() {
            return Err(fail(format!("functional is nonzero at ({a}, {b})")));
        }
    }
    if !seen_vertex {
        return Err(fail("vertex is not a lattice point of the polygon"));
    }
    Ok(())
}

fn parse_section(terms: &[([String; 2], String)]) -> Result<LaurentPoly> {
    let small = |x: &str| -> Result<i64> { x.parse().map_err(|_| fail("exponent exceeds 64 bits")) };
    Ok(LaurentPoly::new(
        terms
            .iter()
            .map(|([a, b], c)| Ok(((small(a)?, small(b)?), parse_q(c)?)))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn verify_curve(polygon: &Polytope, p: &NegativeCurvePayload) -> Result<()> {
    let f = parse_section(&p.section)?;
    for (a, b) in f.support() {
        if !polygon.contains_int(&[BigInt::from(a), BigInt::from(b)]) {
            return Err(fail(format!("monomial ({a}, {b}) lies outside the polygon")));
        }
    }
    let w = parse_u64(&p.order)?;
    if order_at_e(&f)? != w {
        return Err(fail("order of f at e differs from the recorded order"));
    }
    let h2 = parse_q(&p.h_squared)?;
    if h2 != twice_area(polygon)? {
        return Err(fail("H^2 differs from twice the area"));
    }
    let c2 = parse_q(&p.c_squared)?;
    let wq = BigRational::from_integer(BigInt::from(w));
    if c2 != &h2 / (&wq * &wq) - BigRational::one() || !c2.is_negative() {
        return Err(fail("C^2 is not H^2/w^2 - 1 < 0"));
    }
    if p.c_dot_e != "1" {
        return Err(fail("C·E must be 1"));
    }
    Ok(())
}

fn verify_nef(polygon: &Polytope, k: u64, p: &NefPayload) -> Result<()> {
    let weights: Vec<u64> = p.weights.iter().map(|x| parse_u64(x)).collect::<Result<_>>()?;
    check_weighted_fan(polygon, &weights)?;
    p.negative_curve.verify()?;
    let Payload::NegativeCurve(curve) = &p.negative_curve.payload else {
        return Err(fail("negative curve certificate expected"));
    };
    let h2 = parse_q(&p.h_squared)?;
    if h2 != parse_q(&curve.h_squared)? {
        return Err(fail("H^2 differs between certificates"));
    }
    let w = BigRational::from_integer(BigInt::from(parse_u64(&curve.order)?));
    let kq = BigRational::from_integer(BigInt::from(k));
    let dc = parse_q(&p.d_dot_c)?;
    if dc != &h2 / &w - &kq || !dc.is_zero() {
        return Err(fail("D·C = H^2/w - k is not zero"));
    }
    if parse_q(&p.d_dot_e)? != kq || !kq.is_positive() {
        return Err(fail("D·E = k is not positive"));
    }
    if p.e_squared != "-1" {
        return Err(fail("E^2 must be -1"));
    }
    for (idx, c) in p.multiples.iter().enumerate() {
        let mult = idx as u64 + 1;
        if c.kind != CertificateKind::ForcedVertex || c.m != s(mult) || c.k != s(k * mult) {
            return Err(fail(format!("multiple {mult} does not match m·D")));
        }
        if parse_polygon(&c.polygon)? != *polygon {
            return Err(fail("multiple refers to a different polygon"));
        }
        c.verify()?;
    }
    if p.multiples.is_empty() {
        return Err(fail("no multiples certified"));
    }
    Ok(())
}

fn check_weighted_fan(polygon: &Polytope, weights: &[u64]) -> Result<()> {
    let (fan, _) = normal_fan_with_ample(polygon)?;
    let wp = standard_fan(&StandardFan::WeightedProjective(weights.to_vec()))?;
    if unimodular_equivalence(&fan, &wp).is_none() {
        return Err(fail(format!(
            "normal fan of the polygon is not the fan of P({})",
            weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

/// Left and right vertices (lexicographic extremes).
fn extreme_vertices(p: &Polytope) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let verts = p.lattice_vertices().ok_or(Error::NonLatticeVertex)?;
    let left = verts.iter().min().expect("nonempty").clone();
    let right = verts.iter().max().expect("nonempty").clone();
    Ok((left, right))
}

/// Forced-vertex test for `mD`, `D = π*H - kE`: translate `mΔ` so that its
/// right vertex is `(km - 1, 0)` and apply `∂x^{km-2} ∂y` to the left vertex.
pub fn forced_vertex_for_multiple(polygon: &Polytope, k: u64, m: u64) -> Result<ForcedVertexOutcome> {
    let km = k * m;
    if km < 2 {
        return Err(fail("k·m must be at least 2"));
    }
    let (left, right) = extreme_vertices(polygon)?;
    let mb = BigInt::from(m);
    let t = vec![
        BigInt::from(km) - BigInt::one() - &mb * &right[0],
        -(&mb * &right[1]),
    ];
    let vertex = vec![&mb * &left[0] + &t[0], &mb * &left[1] + &t[1]];
    let problem = InterpolationProblem::new(polygon.clone(), m, km)?;
    forced_vertex_coefficient(&problem, &t, &vertex, (km - 2, 1))
}

pub fn blowup_certificate(
    weights: [u64; 3],
    polygon: &Polytope,
    curve: &CurveData,
    k: u64,
) -> Result<Certificate> {
    blowup_certificate_with(weights, polygon, curve, k, DEFAULT_MULTIPLES)
}

/// Certifies that `D = π*H - kE` on `Bl_e P(a,b,c)` is nef and that `mD`
/// has a base point for `m = 1..=m_max`.
pub fn blowup_certificate_with(
    weights: [u64; 3],
    polygon: &Polytope,
    curve: &CurveData,
    k: u64,
    m_max: u64,
) -> Result<Certificate> {
    if m_max == 0 {
        return Err(Error::BadRange("at least one multiple is required".into()));
    }
    let mut transcript = Vec::new();
    let (fan, h) = normal_fan_with_ample(polygon)?;
    for (a, b) in curve.f.support() {
        if !polygon.contains_int(&[BigInt::from(a), BigInt::from(b)]) {
            return Err(fail(format!("f has monomial ({a}, {b}) outside the polygon")));
        }
    }
    transcript.push("f is supported on Δ".to_string());
    let order = order_at_e(&curve.f)?;
    if order != curve.w {
        return Err(fail(format!("order of f at e is {order}, not {}", curve.w)));
    }
    transcript.push(format!("order of f at e is {order}"));
    let h2 = intersection_number_nef_surface(&fan, &h, &h)?;
    let area2 = twice_area(polygon)?;
    if h2 != area2 {
        return Err(fail(format!("H^2 = {h2} but twice the area is {area2}")));
    }
    transcript.push(format!("H^2 = {} = 2·area(Δ)", fmt_rat(&h2)));
    let w = BigRational::from_integer(BigInt::from(curve.w));
    let c2 = &h2 / (&w * &w) - BigRational::one();
    if !c2.is_negative() {
        return Err(fail(format!("C^2 = {} is not negative", fmt_rat(&c2))));
    }
    transcript.push(format!(
        "C = (1/{}) π*H - E has C^2 = {} < 0",
        curve.w,
        fmt_rat(&c2)
    ));
    let kq = BigRational::from_integer(BigInt::from(k));
    let dc = &h2 / &w - &kq;
    if !dc.is_zero() {
        return Err(fail(format!("D·C = H^2/w - k = {} ≠ 0", fmt_rat(&dc))));
    }
    if k == 0 {
        return Err(fail("D·E = k must be positive"));
    }
    transcript.push(format!("D = π*H - {k}E has D·C = 0 and D·E = {k} > 0, so D is nef"));
    check_weighted_fan(polygon, &weights)?;
    transcript.push(format!(
        "normal fan of Δ is the fan of P({},{},{})",
        weights[0], weights[1], weights[2]
    ));
    let mut multiples = Vec::new();
    for m in 1..=m_max {
        match forced_vertex_for_multiple(polygon, k, m)? {
            ForcedVertexOutcome::Certified(c) => multiples.push(*c),
            ForcedVertexOutcome::Refused { reason, .. } => {
                return Err(fail(format!("forced-vertex test for m = {m} refused: {reason}")))
            }
        }
    }
    transcript.push(format!(
        "mD has a base point for m = 1..{m_max}; D is nef but not basepoint free at these multiples"
    ));
    let verdict = VERDICT.to_string();
    transcript.push(format!("{VERDICT}: semiampleness fails for every m by the cited argument"));
    let section: Vec<([String; 2], String)> = curve
        .f
        .terms()
        .map(|((a, b), c)| ([s(a), s(b)], fmt_rat(c)))
        .collect();
    let negative_curve = Certificate {
        kind: CertificateKind::NegativeCurve,
        polygon: polygon_strings(polygon),
        m: "1".into(),
        k: s(curve.w),
        functional: None,
        payload: Payload::NegativeCurve(NegativeCurvePayload {
            section,
            order: s(curve.w),
            h_squared: fmt_rat(&h2),
            c_squared: fmt_rat(&c2),
            c_dot_e: "1".into(),
        }),
        transcript: vec![
            format!("f vanishes to order {} at e", curve.w),
            format!("C^2 = H^2/{}^2 - 1 = {}", curve.w, fmt_rat(&c2)),
        ],
    };
    Ok(Certificate {
        kind: CertificateKind::NefNotSemiample,
        polygon: polygon_strings(polygon),
        m: "1".into(),
        k: s(k),
        functional: None,
        payload: Payload::NefNotSemiample(Box::new(NefPayload {
            weights: [s(weights[0]), s(weights[1]), s(weights[2])],
            h_squared: fmt_rat(&h2),
            e_squared: "-1".into(),
            d_dot_c: fmt_rat(&dc),
            d_dot_e: s(k),
            negative_curve,
            multiples,
            verdict,
        })),
        transcript,
    })
}
