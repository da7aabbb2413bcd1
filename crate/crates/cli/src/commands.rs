use std::path::Path;

use coxkit::blowup::{blowup_certificate_with, CurveData, LaurentPoly, Payload};
use coxkit::linalg::rational_kernel;
use coxkit::num::{fmt_rat, ivec};
use coxkit::{
    class_group, divisor_polytope, effective_cone, enumerate_chambers, fan_predicates, h0,
    hilbert_basis, intersection_number_nef_surface, irrelevant_monomials, is_cox_grading,
    lattice_points, lm_projection, mori_chamber, moving_cone, mukai_predicate,
    normal_fan_with_ample, positivity, section_ring_generators, standard_fan, validate_fan,
    vanishing_matrix, veronese_generators, Chamber, Cone, CoxWitness, Error, Fan, GradingSpec,
    IntMatrix, IntVec, InterpolationProblem, Polytope, StandardFan, ToricDivisor,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::args::{BlowupArgs, Command, FanSource, GradingSource, LmArgs, PlotTarget};
use crate::input::{self, parse_int_vectors, parse_ints, parse_rat_vectors, parse_rats, parse_u64_list};
use crate::{svg, Body, CliError, Ctx};

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn body(result: Value, summary: impl Into<String>) -> Body {
    Body {
        result,
        summary: summary.into(),
        svg: None,
    }
}

fn s<T: ToString>(x: T) -> Value {
    Value::String(x.to_string())
}

fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn vecs_json(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(|v| vec_json(v)).collect())
}

fn rat_vec_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|x| s(fmt_rat(x))).collect())
}

/// Index sets shifted to 1-based.
fn sets_json(sets: &[Vec<usize>]) -> Value {
    Value::Array(
        sets.iter()
            .map(|c| Value::Array(c.iter().map(|i| s(i + 1)).collect()))
            .collect(),
    )
}

fn fmt_vec(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn fmt_vecs(vs: &[IntVec]) -> String {
    vs.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(" ")
}

fn cone_json(c: &Cone) -> Value {
    json!({
        "dim": s(c.dim()),
        "ambient_dim": s(c.ambient_dim()),
        "pointed": c.is_pointed(),
        "rays": vecs_json(c.rays()),
        "lineality": vecs_json(c.lineality()),
        "facets": vecs_json(c.facets()),
        "equations": vecs_json(c.equations()),
    })
}

fn cone_summary(name: &str, c: &Cone) -> String {
    let mut out = format!("{name}: dimension {}, rays {}", c.dim(), fmt_vecs(c.rays()));
    if c.lineality_dim() > 0 {
        out.push_str(&format!(", lineality {}", fmt_vecs(c.lineality())));
    }
    out
}

fn polytope_json(p: &Polytope) -> Value {
    Value::Array(p.vertices().iter().map(|v| rat_vec_json(v)).collect())
}

// ---------------------------------------------------------------- sources

struct FanInput {
    fan: Fan,
    ample: Option<ToricDivisor>,
}

fn parse_standard(name: &str) -> Result<StandardFan, CliError> {
    let name = name.trim().to_ascii_lowercase();
    let num = |t: &str| -> Result<u32, CliError> { t.parse().map_err(|_| bad(format!("unknown standard fan {name:?}"))) };
    if let Some(w) = name.strip_prefix("wp:") {
        return Ok(StandardFan::WeightedProjective(parse_u64_list(w)?));
    }
    if let Some(n) = name.strip_prefix('p') {
        return Ok(StandardFan::ProjectiveSpace(num(n)? as usize));
    }
    if let Some(n) = name.strip_prefix('f') {
        return Ok(StandardFan::Hirzebruch(num(n)?));
    }
    Err(bad(format!("unknown standard fan {name:?}; use pN, fN or wp:a,b,c")))
}

fn from_polytope(p: &Polytope) -> Result<FanInput, CliError> {
    let (fan, h) = normal_fan_with_ample(p)?;
    Ok(FanInput { fan, ample: Some(h) })
}

fn load_fan(src: &FanSource) -> Result<FanInput, CliError> {
    let given = [src.fan.is_some(), src.standard.is_some(), src.polytope.is_some(), src.vertices.is_some()];
    match given.iter().filter(|&&b| b).count() {
        0 => return Err(bad("one of --fan, --standard, --polytope, --vertices is required")),
        1 => {}
        _ => return Err(bad("give only one of --fan, --standard, --polytope, --vertices")),
    }
    if let Some(path) = &src.fan {
        let fan = input::fan_from_value(&input::expect_kind(path, "fan")?)?;
        validate_fan(&fan).map_err(Error::InvalidFan)?;
        return Ok(FanInput { fan, ample: None });
    }
    if let Some(name) = &src.standard {
        let fan = standard_fan(&parse_standard(name)?)?;
        return Ok(FanInput { fan, ample: None });
    }
    if let Some(path) = &src.polytope {
        return from_polytope(&input::polytope_from_value(&input::expect_kind(path, "polytope")?)?);
    }
    let pts = parse_rat_vectors(src.vertices.as_deref().unwrap_or_default())?;
    from_polytope(&input::polytope_from_points(&pts)?)
}

fn parse_divisor(text: &str, fan: &FanInput) -> Result<ToricDivisor, CliError> {
    if text.trim().eq_ignore_ascii_case("h") {
        return fan
            .ample
            .clone()
            .ok_or_else(|| bad("H is only defined for --polytope or --vertices sources"));
    }
    Ok(ToricDivisor::new(parse_ints(text)?))
}

fn load_grading(src: &GradingSource) -> Result<GradingSpec, CliError> {
    match (&src.grading, &src.degrees) {
        (Some(_), Some(_)) => Err(bad("give only one of --grading and --degrees")),
        (Some(path), None) => {
            let doc = input::grading_from_value(&input::expect_kind(path, "grading")?)?;
            Ok(GradingSpec::new(doc.free_rank, doc.torsion, doc.degrees)?)
        }
        (None, Some(cols)) => {
            let degrees = parse_int_vectors(cols)?;
            let k = degrees.first().map(Vec::len).ok_or(Error::EmptyInput)?;
            Ok(GradingSpec::new(k, Vec::new(), degrees)?)
        }
        (None, None) => {
            let f = load_fan(&src.fan)?;
            Ok(GradingSpec::from_class_group(&class_group(&f.fan)?)?)
        }
    }
}

// ---------------------------------------------------------------- dispatch

pub(crate) fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Body, CliError> {
    match cmd {
        Command::Classgroup(src) => classgroup(src),
        Command::CoxGrading(src) => cox_grading(src),
        Command::Sections { src, divisor, m, list } => sections(src, divisor.as_deref(), *m, *list),
        Command::Positivity { src, divisor } => positivity_cmd(src, divisor),
        Command::Eff(src) => {
            let c = effective_cone(&load_grading(src)?);
            Ok(body(cone_json(&c), cone_summary("Eff", &c)))
        }
        Command::Mov(src) => {
            let c = moving_cone(&load_grading(src)?)?;
            Ok(body(cone_json(&c), cone_summary("Mov", &c)))
        }
        Command::Chamber { src, class } => chamber(src, class),
        Command::Chambers(src) => chambers(src),
        Command::IsCoxGrading(src) => cox_test(&load_grading(src)?),
        Command::HilbertBasis { generators, facets, dim } => {
            hilbert(generators.as_deref(), facets.as_deref(), *dim)
        }
        Command::SectionRing { src, divisors } => section_ring(src, divisors),
        Command::Veronese { degrees, cone, lattice } => veronese(degrees, cone, lattice.as_deref()),
        Command::Irrelevant(src) => irrelevant(src),
        Command::IntersectNef { src, d1, d2 } => intersect(src, d1, d2),
        Command::BlowupAnalyze(a) => blowup(a, ctx),
        Command::Mukai { r, n } => {
            let holds = mukai_predicate(*r, *n)?;
            Ok(body(
                json!({"r": s(r), "n": s(n), "holds": holds}),
                format!("1/{r} + 1/{} > 1/2: {holds}", n - r),
            ))
        }
        Command::LmProject(a) => lm(a),
        Command::Plot { target } => plot(target),
    }
}

fn classgroup(src: &FanSource) -> Result<Body, CliError> {
    let f = load_fan(src)?;
    let cl = class_group(&f.fan)?;
    let preds = fan_predicates(&f.fan)?;
    let degrees: Vec<IntVec> = (0..cl.num_variables()).map(|i| cl.degree(i)).collect();
    let mut group = format!("Z^{}", cl.rank());
    for t in cl.torsion() {
        group.push_str(&format!(" + Z/{t}"));
    }
    Ok(body(
        json!({
            "rays": vecs_json(f.fan.rays()),
            "rank": s(cl.rank()),
            "torsion": vec_json(cl.torsion()),
            "degrees": vecs_json(&degrees),
            "complete": preds.complete,
            "simplicial": preds.simplicial,
            "smooth": preds.smooth,
        }),
        format!("Cl(X) = {group}\ndegrees: {}", fmt_vecs(&degrees)),
    ))
}

fn monomial(set: &[usize]) -> String {
    if set.is_empty() {
        "1".into()
    } else {
        set.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("*")
    }
}

fn witness_json(w: &Option<CoxWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(CoxWitness::NotGenerated { dropped }) => {
            json!({"condition": "not_generated", "dropped": s(dropped + 1)})
        }
        Some(CoxWitness::DisjointInteriors { first, second }) => {
            json!({"condition": "disjoint_interiors", "first": s(first + 1), "second": s(second + 1)})
        }
    }
}

fn witness_text(w: &Option<CoxWitness>) -> String {
    match w {
        None => String::new(),
        Some(CoxWitness::NotGenerated { dropped }) => {
            format!(" (the degrees without x{} do not generate the group)", dropped + 1)
        }
        Some(CoxWitness::DisjointInteriors { first, second }) => format!(
            " (dropping x{} and dropping x{} give cones with disjoint interiors)",
            first + 1,
            second + 1
        ),
    }
}

fn cox_test(g: &GradingSpec) -> Result<Body, CliError> {
    let v = is_cox_grading(g);
    Ok(body(
        json!({"is_cox": v.is_cox, "witness": witness_json(&v.witness)}),
        format!("Cox grading: {}{}", v.is_cox, witness_text(&v.witness)),
    ))
}

fn cox_grading(src: &FanSource) -> Result<Body, CliError> {
    let f = load_fan(src)?;
    let cl = class_group(&f.fan)?;
    let g = GradingSpec::from_class_group(&cl)?;
    let verdict = is_cox_grading(&g);
    let irr = irrelevant_monomials(&f.fan);
    let degrees: Vec<IntVec> = (0..cl.num_variables()).map(|i| cl.degree(i)).collect();
    let vars: Vec<String> = (1..=degrees.len()).map(|i| format!("x{i}")).collect();
    let lines: Vec<String> = vars
        .iter()
        .zip(&degrees)
        .map(|(x, d)| format!("deg {x} = {}", fmt_vec(d)))
        .collect();
    Ok(body(
        json!({
            "variables": vars,
            "free_rank": s(cl.rank()),
            "torsion": vec_json(cl.torsion()),
            "degrees": vecs_json(&degrees),
            "irrelevant": sets_json(&irr),
            "is_cox": verdict.is_cox,
            "witness": witness_json(&verdict.witness),
        }),
        format!(
            "C[{}]\n{}\nirrelevant ideal: <{}>\nCox grading: {}{}",
            vars.join(","),
            lines.join("\n"),
            irr.iter().map(|c| monomial(c)).collect::<Vec<_>>().join(", "),
            verdict.is_cox,
            witness_text(&verdict.witness)
        ),
    ))
}

fn sections(src: &FanSource, divisor: Option<&str>, m: u64, list: bool) -> Result<Body, CliError> {
    let f = load_fan(src)?;
    let d = match divisor {
        Some(t) => parse_divisor(t, &f)?,
        None => f.ample.clone().ok_or_else(|| bad("--divisor is required for this source"))?,
    };
    let p = divisor_polytope(&f.fan, &d)?;
    let pts = if p.is_empty() { Vec::new() } else { lattice_points(&p, m)? };
    let mut result = json!({
        "m": s(m),
        "polytope": polytope_json(&p),
        "count": s(pts.len()),
    });
    if list {
        result["points"] = vecs_json(&pts);
    }
    let mut summary = format!("h0(X, {m}D) = {}", pts.len());
    if list {
        summary.push_str(&format!("\n{}", fmt_vecs(&pts)));
    }
    Ok(body(result, summary))
}

fn positivity_cmd(src: &FanSource, divisor: &str) -> Result<Body, CliError> {
    let f = load_fan(src)?;
    let d = parse_divisor(divisor, &f)?;
    let p = positivity(&f.fan, &d)?;
    Ok(body(
        json!({"nef": p.nef, "basepoint_free": p.basepoint_free, "ample": p.ample}),
        format!("nef: {}, basepoint free: {}, ample: {}", p.nef, p.basepoint_free, p.ample),
    ))
}

fn chamber_json(c: &Chamber) -> Value {
    json!({
        "cone": cone_json(&c.cone),
        "supports": sets_json(&c.supports),
        "full_dimensional": c.full_dimensional,
    })
}

fn chamber(src: &GradingSource, class: &str) -> Result<Body, CliError> {
    let g = load_grading(src)?;
    let w = parse_rats(class)?;
    let c = mori_chamber(&g, &w)?;
    Ok(body(
        chamber_json(&c),
        format!(
            "{}\nfull-dimensional: {}\nminimal supports: {}",
            cone_summary("chamber", &c.cone),
            c.full_dimensional,
            c.supports.iter().map(|x| monomial(x)).collect::<Vec<_>>().join(", ")
        ),
    ))
}

fn chambers(src: &GradingSource) -> Result<Body, CliError> {
    let g = load_grading(src)?;
    let list = enumerate_chambers(&g)?;
    let lines: Vec<String> = list
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}: rays {}", i + 1, fmt_vecs(c.cone.rays())))
        .collect();
    Ok(body(
        json!({"count": s(list.len()), "chambers": list.iter().map(chamber_json).collect::<Vec<_>>()}),
        format!("{} chambers\n{}", list.len(), lines.join("\n")),
    ))
}

fn hilbert(generators: Option<&str>, facets: Option<&str>, dim: Option<usize>) -> Result<Body, CliError> {
    let cone = match (generators, facets) {
        (Some(g), None) => {
            let gens = parse_int_vectors(g)?;
            let d = dim.or_else(|| gens.first().map(Vec::len)).ok_or(Error::EmptyInput)?;
            Cone::from_generators(&gens, d)?
        }
        (None, Some(f)) => {
            let normals = parse_int_vectors(f)?;
            let d = dim
                .or_else(|| normals.first().map(Vec::len))
                .ok_or_else(|| bad("--dim is required when there are no facets"))?;
            Cone::from_facets(&normals, &[], d)?
        }
        _ => return Err(bad("give exactly one of --generators and --facets")),
    };
    let basis = hilbert_basis(&cone)?;
    Ok(body(
        json!({"cone": cone_json(&cone), "hilbert_basis": vecs_json(&basis)}),
        format!("Hilbert basis ({}): {}", basis.len(), fmt_vecs(&basis)),
    ))
}

fn section_ring(src: &FanSource, divisors: &str) -> Result<Body, CliError> {
    let f = load_fan(src)?;
    let ds = divisors
        .split(';')
        .map(|t| parse_divisor(t, &f))
        .collect::<Result<Vec<_>, _>>()?;
    let gens = section_ring_generators(&f.fan, &ds)?;
    let lines: Vec<String> = gens
        .iter()
        .map(|g| format!("t = {}, m = {}", fmt_vec(&g.t), fmt_vec(&g.m)))
        .collect();
    Ok(body(
        json!({
            "count": s(gens.len()),
            "generators": gens.iter().map(|g| json!({"t": vec_json(&g.t), "m": vec_json(&g.m)})).collect::<Vec<_>>(),
        }),
        format!("{} generators\n{}", gens.len(), lines.join("\n")),
    ))
}

/// Columns given as `;`-separated vectors, assembled into a matrix.
fn matrix_from_columns(cols: &[IntVec]) -> Result<IntMatrix, CliError> {
    let k = cols.first().map(Vec::len).ok_or(Error::EmptyInput)?;
    let rows: Vec<IntVec> = (0..k)
        .map(|i| {
            cols.iter()
                .map(|c| c.get(i).cloned().ok_or(Error::DimensionMismatch { expected: k, found: c.len() }))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(IntMatrix::from_rows(&rows, cols.len())?)
}

fn veronese(degrees: &str, cone: &str, lattice: Option<&str>) -> Result<Body, CliError> {
    let q = matrix_from_columns(&parse_int_vectors(degrees)?)?;
    let h = Cone::from_generators(&parse_int_vectors(cone)?, q.rows())?;
    let l = lattice
        .map(|t| -> Result<IntMatrix, CliError> { Ok(IntMatrix::from_rows(&parse_int_vectors(t)?, q.rows())?) })
        .transpose()?;
    let gens = veronese_generators(&q, &h, l.as_ref())?;
    Ok(body(
        json!({"generators": vecs_json(&gens)}),
        format!("{} generators: {}", gens.len(), fmt_vecs(&gens)),
    ))
}

fn irrelevant(src: &FanSource) -> Result<Body, CliError> {
    let f = load_fan(src)?;
    let irr = irrelevant_monomials(&f.fan);
    Ok(body(
        json!({"monomials": sets_json(&irr)}),
        format!("B = <{}>", irr.iter().map(|c| monomial(c)).collect::<Vec<_>>().join(", ")),
    ))
}

fn intersect(src: &FanSource, d1: &str, d2: &str) -> Result<Body, CliError> {
    let f = load_fan(src)?;
    let (a, b) = (parse_divisor(d1, &f)?, parse_divisor(d2, &f)?);
    let x = intersection_number_nef_surface(&f.fan, &a, &b)?;
    Ok(body(json!({"intersection": s(fmt_rat(&x))}), format!("D1 · D2 = {}", fmt_rat(&x))))
}

// ---------------------------------------------------------------- blow-ups

/// Built-in data for `Bl_e P(12,13,17)`.
fn builtin_polygon() -> Polytope {
    Polytope::from_i64_points(&[&[11, -26], &[50, 0], &[-1, 34]])
}

const BUILTIN_WEIGHTS: [u64; 3] = [12, 13, 17];
const BUILTIN_K: u64 = 51;
const BUILTIN_CURVE: ((i64, i64), u64) = ((11, -26), 52);

fn weights3(v: &[u64]) -> Result<[u64; 3], CliError> {
    v.try_into().map_err(|_| bad("exactly three weights are required"))
}

/// The unique (up to scale) section of `Δ` vanishing to order `w` at `e`.
fn curve_from_kernel(polygon: &Polytope, w: u64) -> Result<CurveData, CliError> {
    let prob = InterpolationProblem::new(polygon.clone(), 1, w)?;
    let pts = prob.points()?;
    let ker = rational_kernel(&vanishing_matrix(&prob)?);
    if ker.len() != 1 {
        return Err(Error::PreconditionFailed(format!(
            "sections vanishing to order {w} form a space of dimension {}, not 1",
            ker.len()
        ))
        .into());
    }
    let f = LaurentPoly::new(
        pts.iter()
            .zip(&ker[0])
            .filter(|(_, c)| !c.is_zero())
            .map(|(&p, c)| (p, c.clone())),
    );
    Ok(CurveData { f, w })
}

fn blowup(a: &BlowupArgs, ctx: &Ctx) -> Result<Body, CliError> {
    let mut weights = a.weights.as_deref().map(parse_u64_list).transpose()?;
    let mut polygon: Option<Polytope> = None;
    let mut k = a.k;
    let mut m = a.m;
    if let Some(path) = &a.input {
        let (kind, v) = input::read_document(path)?;
        match kind.as_str() {
            "blowup" => {
                let doc = input::blowup_from_value(&v)?;
                weights = weights.or(doc.weights);
                if let Some(p) = doc.polygon {
                    polygon = Some(input::polytope_from_points(&p)?);
                }
                k = k.or(doc.k);
                if let Some(dm) = doc.m {
                    m = dm;
                }
            }
            "polytope" => polygon = Some(input::polytope_from_value(&v)?),
            other => return Err(bad(format!("expected a blowup or polytope document, found {other}"))),
        }
    }
    if let Some(text) = &a.vertices {
        if polygon.is_some() {
            return Err(bad("give the polygon only once"));
        }
        polygon = Some(input::polytope_from_points(&parse_rat_vectors(text)?)?);
    }
    // the built-in curve and k apply whenever the data is the built-in example
    let builtin = weights.as_deref() == Some(&BUILTIN_WEIGHTS[..])
        && polygon.as_ref().map_or(true, |p| p.same_set(&builtin_polygon()));
    let polygon = match polygon {
        Some(p) => p,
        None if builtin => builtin_polygon(),
        None => return Err(bad("a polygon is required (built in only for weights 12,13,17)")),
    };
    if a.h0 {
        let k = k.ok_or_else(|| bad("--k is required"))?;
        let prob = InterpolationProblem::new(polygon.clone(), m, k)?;
        let total = lattice_points(&polygon, m)?.len();
        let dim = h0(&prob, &ctx.mode)?;
        return Ok(body(
            json!({"m": s(m), "k": s(k), "lattice_points": s(total), "h0": s(dim)}),
            format!("h0(mΔ, order {k} at e) = {dim} for m = {m} ({total} monomials)"),
        ));
    }
    let weights = weights3(&weights.ok_or_else(|| bad("--weights is required"))?)?;
    let k = match k {
        Some(k) => k,
        None if builtin => BUILTIN_K,
        None => return Err(bad("--k is required")),
    };
    let curve = match (&a.curve_monomial, a.curve_order) {
        (Some(mono), Some(w)) => {
            let ab = parse_ints(mono)?;
            let small = |x: &BigInt| i64::try_from(x).map_err(|_| bad("monomial exponent out of range"));
            if ab.len() != 2 {
                return Err(bad("--curve-monomial takes two exponents"));
            }
            CurveData::binomial_power((small(&ab[0])?, small(&ab[1])?), w)
        }
        (Some(_), None) => return Err(bad("--curve-monomial needs --curve-order")),
        (None, Some(w)) => curve_from_kernel(&polygon, w)?,
        (None, None) if builtin => CurveData::binomial_power(BUILTIN_CURVE.0, BUILTIN_CURVE.1),
        (None, None) => return Err(bad("--curve-order is required")),
    };
    let cert = blowup_certificate_with(weights, &polygon, &curve, k, a.m_max)?;
    cert.verify()?;
    let Payload::NefNotSemiample(p) = &cert.payload else {
        return Err(Error::PreconditionFailed("unexpected certificate payload".into()).into());
    };
    let Payload::NegativeCurve(nc) = &p.negative_curve.payload else {
        return Err(Error::PreconditionFailed("unexpected curve payload".into()).into());
    };
    let result = serde_json::to_value(&cert).expect("certificates serialize");
    let summary = format!(
        "certificate: nef_not_semiample\nC^2 = {}, D·C = {}, D·E = {}\nbase points of mD certified for m = 1..{}\nverdict: {}",
        nc.c_squared,
        p.d_dot_c,
        p.d_dot_e,
        p.multiples.len(),
        p.verdict
    );
    Ok(body(result, summary))
}

// ---------------------------------------------------------------- LM_n

fn need<'a>(o: &'a Option<String>, name: &str) -> Result<&'a str, CliError> {
    o.as_deref().ok_or_else(|| bad(format!("{name} is required with a custom projection")))
}

fn lm(a: &LmArgs) -> Result<Body, CliError> {
    let custom = a.matrix.is_some() || a.v1.is_some() || a.v2.is_some() || a.v3.is_some();
    let (n, pi, vs, weights) = if custom {
        let rows = parse_int_vectors(need(&a.matrix, "--matrix")?)?;
        let cols = rows.first().map(Vec::len).ok_or(Error::EmptyInput)?;
        let pi = IntMatrix::from_rows(&rows, cols)?;
        let vs = [
            parse_ints(need(&a.v1, "--v1")?)?,
            parse_ints(need(&a.v2, "--v2")?)?,
            parse_ints(need(&a.v3, "--v3")?)?,
        ];
        let w = weights3(&parse_u64_list(need(&a.weights, "--weights")?)?)?;
        (a.n, pi, vs, w)
    } else {
        if a.n != 10 {
            return Err(bad("the built-in projection is for n = 10; pass --matrix and --v1..--v3"));
        }
        let pi = IntMatrix::from_i64_rows(&[&[1, 0, 1, -2, -1, 1, 0], &[0, 1, -1, -3, -2, 2, 1]]);
        let vs = [
            ivec(&[1, 0, 1, 1, 1, 0, 0]),
            ivec(&[0, 0, 0, -1, -1, 0, 0]),
            ivec(&[-1, 0, -1, 0, 0, -1, 0]),
        ];
        let w = match &a.weights {
            Some(t) => weights3(&parse_u64_list(t)?)?,
            None => BUILTIN_WEIGHTS,
        };
        (10, pi, vs, w)
    };
    let r = lm_projection(n, &pi, [&vs[0], &vs[1], &vs[2]], weights)?;
    // The second polygon's normal-fan rays are the default targets.
    let targets = match &a.rays {
        Some(t) => parse_int_vectors(t)?,
        None if !custom => [[0, 1], [-1, 3], [-2, 3], [-3, -1], [-2, -1], [3, -2], [5, -3]]
            .iter()
            .map(|v| ivec(v))
            .collect(),
        None => Vec::new(),
    };
    let contains = r.contains_rays(&targets);
    let rotated = r.contains_rays_rotated(&targets);
    let result = json!({
        "n": s(r.n),
        "ray_count": s(r.ray_count),
        "zero_images": s(r.zero_images),
        "images": r.images.iter().map(|(v, c)| json!({"ray": vec_json(v), "multiplicity": s(c)})).collect::<Vec<_>>(),
        "v_images": vecs_json(&r.v_images),
        "generates": r.generates,
        "literal_relation": r.literal_relation,
        "assignments": r.assignments.iter().map(|w| json!({
            "weights": w.weights.iter().map(s).collect::<Vec<_>>(),
            "signs": w.signs.iter().map(s).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "quotient": r.quotient.map(|q| q.iter().map(s).collect::<Vec<_>>()),
        "targets": vecs_json(&targets),
        "contains_targets": contains,
        "contains_targets_rotated": rotated,
    });
    let mut summary = format!(
        "LM_{}: {} rays, {} distinct images, {} mapped to zero\nimages of v1, v2, v3: {}\ngenerates Z^2: {}",
        r.n,
        r.ray_count,
        r.images.len(),
        r.zero_images,
        fmt_vecs(&r.v_images),
        r.generates
    );
    if let Some(w) = r.assignments.first() {
        summary.push_str(&format!("\nrelation weights {:?} with signs {:?}", w.weights, w.signs));
    }
    if let Some(q) = r.quotient_label() {
        summary.push_str(&format!("\nquotient fan: {q}"));
    }
    if !targets.is_empty() {
        summary.push_str(&format!(
            "\ntarget rays contained: {contains}; after a 90° counterclockwise rotation: {rotated}"
        ));
    }
    Ok(body(result, summary))
}

// ---------------------------------------------------------------- plots

fn emit_svg(svg_text: String, out: Option<&Path>, mut result: Value, summary: String) -> Result<Body, CliError> {
    let svg = match out {
        Some(path) => {
            std::fs::write(path, &svg_text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
            result["written"] = s(path.display());
            None
        }
        None => Some(svg_text),
    };
    let summary = match (&svg, out) {
        (Some(text), _) => text.clone(),
        (None, Some(p)) => format!("{summary}\nwrote {}", p.display()),
        (None, None) => summary,
    };
    Ok(Body { result, summary, svg })
}

fn plot(target: &PlotTarget) -> Result<Body, CliError> {
    match target {
        PlotTarget::Chambers { src, out } => {
            let g = load_grading(src)?;
            let (text, list) = svg::chambers_svg(&g)?;
            let result = json!({
                "chambers": s(list.len()),
                "degrees": vecs_json(&g.free_degrees()),
            });
            emit_svg(text, out.as_deref(), result, format!("{} chambers", list.len()))
        }
        PlotTarget::Polygon { polytope, vertices, highlight, lattice, out } => {
            let p = match (polytope, vertices) {
                (Some(path), None) => input::polytope_from_value(&input::expect_kind(path, "polytope")?)?,
                (None, Some(v)) => input::polytope_from_points(&parse_rat_vectors(v)?)?,
                _ => return Err(bad("give exactly one of --polytope and --vertices")),
            };
            let hl = match highlight {
                Some(t) => parse_int_vectors(t)?,
                None => Vec::new(),
            };
            if hl.iter().any(|v| v.len() != 2) {
                return Err(bad("highlighted points must be 2-dimensional"));
            }
            let pts = if *lattice { lattice_points(&p, 1)? } else { Vec::new() };
            let text = svg::polygon_svg(&p, &pts, &hl)?;
            let inside: Vec<bool> = hl.iter().map(|v| p.contains_int(v)).collect();
            let mut result = json!({
                "vertices": polytope_json(&p),
                "highlight": vecs_json(&hl),
                "highlight_inside": inside,
            });
            if *lattice {
                result["lattice_points"] = s(pts.len());
                result["interior_lattice_points"] = s(p.interior_lattice_points()?.len());
            }
            emit_svg(text, out.as_deref(), result, format!("{} vertices", p.vertices().len()))
        }
    }
}

