//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion,
//! with the wall time against its budget, and exits nonzero on any failure.

mod common;

use std::time::{Duration, Instant};

use coxkit::blowup::{blowup_certificate_with, NefPayload, Payload};
use coxkit::divisors::nef_cone;
use coxkit::linalg::{exact_rank, rank_of};
use coxkit::num::{int, ivec, primitive, rat, rvec};
use coxkit::{
    class_group, convex_hull_2d, enumerate_chambers, h0, intersection_number_nef_surface,
    is_cox_grading, lattice_points, lm_projection, mori_chamber, moving_cone, mukai_predicate,
    normal_fan, normal_fan_with_ample, order_at_e, positivity, standard_fan, unimodular_equivalence,
    Certificate, Cone, CoxWitness, CurveData, GradingSpec, IntMatrix, IntVec, InterpolationProblem,
    LaurentPoly, RankMode, StandardFan,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `G` with `G · ours_i = theirs_i` for all `i`, if one exists in GL(2, Z).
fn gl2_change(ours: &[IntVec], theirs: &[IntVec]) -> Option<IntMatrix> {
    let n = ours.len();
    for a in 0..n {
        for b in a + 1..n {
            let det = &ours[a][0] * &ours[b][1] - &ours[a][1] * &ours[b][0];
            if det.abs() != int(1) {
                continue;
            }
            // G = T · O^{-1} with O = [ours_a ours_b] as columns
            let o_inv = [
                [&ours[b][1] * &det, -&ours[b][0] * &det],
                [-&ours[a][1] * &det, &ours[a][0] * &det],
            ];
            let t = [[&theirs[a][0], &theirs[b][0]], [&theirs[a][1], &theirs[b][1]]];
            let mut g = IntMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    g[(i, j)] = t[i][0] * &o_inv[0][j] + t[i][1] * &o_inv[1][j];
                }
            }
            let unimodular = g.determinant().ok()?.abs() == int(1);
            let all = ours.iter().zip(theirs).all(|(o, t)| g.mul_vec(o) == *t);
            return (unimodular && all).then_some(g);
        }
    }
    None
}

fn reference_hirzebruch(n: i64) -> Vec<IntVec> {
    vec![ivec(&[1, 0]), ivec(&[1, 0]), ivec(&[n, 1]), ivec(&[0, 1])]
}

fn criterion_1() -> Outcome {
    for n in 1..=4 {
        let cl = class_group(&standard_fan(&StandardFan::ProjectiveSpace(n)).map_err(err)?).map_err(err)?;
        ensure(cl.rank() == 1 && cl.torsion().is_empty(), format!("Cl(P^{n}) is not Z"))?;
        ensure(cl.free_degrees().iter().all(|d| *d == ivec(&[1])), format!("P^{n} degrees are not all 1"))?;
    }
    let mut changes = Vec::new();
    for n in 0..=3u32 {
        let cl = class_group(&standard_fan(&StandardFan::Hirzebruch(n)).map_err(err)?).map_err(err)?;
        ensure(cl.rank() == 2 && cl.torsion().is_empty(), format!("Cl(F_{n}) is not Z^2"))?;
        let g = gl2_change(&cl.free_degrees(), &reference_hirzebruch(n as i64))
            .ok_or(format!("F_{n} degrees do not match the reference matrix in GL(2,Z)"))?;
        changes.push(format!("F_{n}: G = [[{}, {}], [{}, {}]]", g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]));
    }
    let wp = standard_fan(&StandardFan::WeightedProjective(vec![12, 13, 17])).map_err(err)?;
    let cl = class_group(&wp).map_err(err)?;
    ensure(
        cl.rank() == 1 && cl.torsion().is_empty() && cl.free_degrees() == vec![ivec(&[12]), ivec(&[13]), ivec(&[17])],
        "P(12,13,17) degrees",
    )?;
    Ok(format!("P^1..P^4 degrees 1; {}; P(12,13,17) degrees 12,13,17", changes.join(", ")))
}

fn criterion_2() -> Outcome {
    for n in 0..=3 {
        let first = GradingSpec::from_i64_columns(&[&[1, 1, n, 0], &[0, 0, 1, 1]]).map_err(err)?;
        ensure(is_cox_grading(&first).is_cox, format!("first grading rejected for n = {n}"))?;
    }
    let second = GradingSpec::from_i64_columns(&[&[1, 1, 1, 0], &[0, 1, 1, 1]]).map_err(err)?;
    let v = is_cox_grading(&second);
    ensure(!v.is_cox, "second grading accepted")?;
    let Some(CoxWitness::DisjointInteriors { first, second }) = v.witness else {
        return Err(format!("unexpected witness {:?}", v.witness));
    };
    Ok(format!(
        "first matrix is a Cox grading (n = 0..3); second rejected, drop-one cones of x{} and x{} have disjoint interiors",
        first + 1,
        second + 1
    ))
}

fn criterion_3() -> Outcome {
    let delta = common::flagship();
    let f = normal_fan(&delta).map_err(err)?;
    let wp = standard_fan(&StandardFan::WeightedProjective(vec![12, 13, 17])).map_err(err)?;
    ensure(unimodular_equivalence(&f, &wp).is_some(), "normal fan is not P(12,13,17)")?;
    let (f, h) = normal_fan_with_ample(&delta).map_err(err)?;
    let h2 = intersection_number_nef_surface(&f, &h, &h).map_err(err)?;
    ensure(h2 == rat(52 * 51, 1), format!("H^2 = {h2}"))?;
    Ok("normal fan ≅ P(12,13,17) fan; H^2 = 2652 = 52·51".into())
}

fn criterion_4() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=3u32 {
        let fan = standard_fan(&StandardFan::Hirzebruch(n)).map_err(err)?;
        let cl = class_group(&fan).map_err(err)?;
        let spec = GradingSpec::from_class_group(&cl).map_err(err)?;
        let g = gl2_change(&cl.free_degrees(), &reference_hirzebruch(n as i64)).ok_or("no GL(2,Z) change")?;
        let moved = GradingSpec::new(2, vec![], cl.free_degrees().iter().map(|d| g.mul_vec(d)).collect())
            .map_err(err)?;
        let oracle = Cone::from_generators(&[ivec(&[1, 0]), ivec(&[n as i64, 1])], 2).map_err(err)?;
        ensure(moving_cone(&moved).map_err(err)? == oracle, format!("Mov(F_{n})"))?;

        let chambers: Vec<_> = enumerate_chambers(&spec).map_err(err)?.into_iter().filter(|c| c.full_dimensional).collect();
        ensure(chambers.len() == 2, format!("F_{n} has {} chambers", chambers.len()))?;
        let nef = nef_cone(&fan).map_err(err)?;
        // any lattice point inside the nef cone is ample
        let ample = nef.interior_lattice_point();
        let ample_div = cl.representative(&ample).map_err(err)?;
        ensure(positivity(&fan, &ample_div).map_err(err)?.ample, "interior nef class is not ample")?;
        let chamber = mori_chamber(&spec, &coxkit::num::to_rat(&ample)).map_err(err)?;
        ensure(chamber.cone == nef, format!("nef chamber of F_{n} differs from the toric nef cone"))?;
        ensure(chambers.iter().any(|c| c.cone == nef), "nef cone is not an enumerated chamber")?;

        for a in 0..=8i64 {
            for b in 0..=8i64 {
                let w = ivec(&[a, b]);
                if !nef.contains(&w) {
                    continue;
                }
                let d = cl.representative(&w).map_err(err)?;
                let ok = (1..=2).any(|m| positivity(&fan, &d.scale(&int(m))).map(|p| p.basepoint_free).unwrap_or(false));
                ensure(ok, format!("class {w:?} on F_{n} is not basepoint free at m ≤ 2"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("Mov = cone((1,0),(n,1)), 2 chambers, nef chamber = nef cone, {checked} nef classes semiample (n = 1..3)"))
}

fn criterion_5() -> Outcome {
    let delta = common::flagship();
    let area = delta.area_2d().map_err(err)?;
    let pick = area + rat(42, 2) + rat(1, 1);
    let p0 = InterpolationProblem::new(delta.clone(), 1, 0).map_err(err)?;
    let n0 = h0(&p0, &RankMode::Modular).map_err(err)?;
    ensure(rat(n0 as i64, 1) == pick && n0 == 1348, format!("h0(Δ,1,0) = {n0}"))?;

    let start = Instant::now();
    let p52 = InterpolationProblem::new(delta.clone(), 1, 52).map_err(err)?;
    let n52 = h0(&p52, &RankMode::Modular).map_err(err)?;
    let modular_time = start.elapsed();
    ensure(n52 == 1, format!("h0(Δ,1,52) = {n52}"))?;
    ensure(modular_time < Duration::from_secs(30), format!("modular rank took {modular_time:?}"))?;

    let f = LaurentPoly::monomial(11, -26).mul(&LaurentPoly::binomial(0, 1).pow(52));
    let points = p52.points().map_err(err)?;
    let coeffs = f.coefficient_vector(&points).ok_or("f is not supported on Δ")?;
    let sys = p52.system().map_err(err)?;
    for r in 0..sys.rows().len() {
        let s: BigInt = (0..points.len())
            .filter(|&c| !coeffs[c].is_zero())
            .map(|c| sys.entry(r, c) * coeffs[c].to_integer())
            .sum();
        ensure(s.is_zero(), format!("f fails condition {:?}", sys.rows()[r]))?;
    }
    ensure(order_at_e(&f).map_err(err)? == 52, "order of f is not 52")?;

    let mut rng = common::rng(5);
    let mut rows: Vec<usize> = (0..sys.rows().len()).collect();
    let mut cols: Vec<usize> = (0..points.len()).collect();
    rows.shuffle(&mut rng);
    cols.shuffle(&mut rng);
    rows.truncate(200);
    cols.truncate(200);
    rows.sort_unstable();
    cols.sort_unstable();
    let sub = sys.submatrix(&rows, &cols);
    let t = Instant::now();
    let modular = rank_of(&sub, &RankMode::Modular).map_err(err)?;
    let sub_modular_time = t.elapsed();
    let t = Instant::now();
    let exact = exact_rank(&sub);
    let exact_time = t.elapsed();
    ensure(modular == exact, format!("submatrix rank: modular {modular}, exact {exact}"))?;
    ensure(exact_time < Duration::from_secs(60), format!("exact submatrix rank took {exact_time:?}"))?;
    Ok(format!(
        "h0(Δ,1,0) = 1348 = Pick; h0(Δ,1,52) = 1 in {:.2?}; f in kernel, ord 52; 200×200 rank {exact} (modular {:.2?}, exact {:.2?})",
        modular_time, sub_modular_time, exact_time
    ))
}

fn criterion_6() -> Outcome {
    let cert = blowup_certificate_with(
        [12, 13, 17],
        &common::flagship(),
        &CurveData::binomial_power((11, -26), 52),
        51,
        5,
    )
    .map_err(err)?;
    cert.verify().map_err(err)?;
    let reparsed = Certificate::from_json(&cert.to_json()).map_err(err)?;
    reparsed.verify().map_err(err)?;
    let Payload::NefNotSemiample(p) = &cert.payload else {
        return Err("wrong payload".into());
    };
    let NefPayload { d_dot_c, d_dot_e, negative_curve, multiples, .. } = p.as_ref();
    let Payload::NegativeCurve(nc) = &negative_curve.payload else {
        return Err("wrong curve payload".into());
    };
    ensure(nc.c_squared == "-1/52", format!("C^2 = {}", nc.c_squared))?;
    ensure(d_dot_c == "0", format!("D·C = {d_dot_c}"))?;
    ensure(d_dot_e == "51", format!("D·E = {d_dot_e}"))?;
    ensure(multiples.len() == 5, "expected five forced-vertex certificates")?;
    for (i, m) in multiples.iter().enumerate() {
        m.verify().map_err(|e| format!("m = {}: {e}", i + 1))?;
        ensure(m.m == (i + 1).to_string(), "multiples out of order")?;
    }
    Ok("C^2 = -1/52, D·C = 0, D·E = 51, forced vertices verified for m = 1..5".into())
}

fn criterion_7() -> Outcome {
    let cols = [[-1, 6], [-4, 5], [-3, 1], [-2, 8], [-6, 0], [-7, 0], [0, 3]];
    let pts: Vec<_> = cols.iter().map(|v| rvec(v)).collect();
    let p = convex_hull_2d(&pts).map_err(err)?;
    ensure(p.vertices().len() == 7, format!("{} hull vertices", p.vertices().len()))?;
    for v in &pts {
        ensure(p.vertices().contains(v), "a column is not a vertex")?;
    }
    let f = normal_fan(&p).map_err(err)?;
    let mut rays = f.rays().to_vec();
    rays.sort();
    let mut expected: Vec<IntVec> = [[0, 1], [-1, 3], [-2, 3], [-3, -1], [-2, -1], [3, -2], [5, -3]]
        .iter()
        .map(|v| primitive(&ivec(v)))
        .collect();
    expected.sort();
    ensure(rays == expected, format!("normal fan rays {rays:?}"))?;
    let prob = InterpolationProblem::new(p.clone(), 1, 7).map_err(err)?;
    let h = h0(&prob, &RankMode::Modular).map_err(err)?;
    ensure(h == 1, format!("h0(Δ',1,7) = {h}"))?;
    let interior = p.interior_lattice_points().map_err(err)?.len();
    ensure(interior == 22, format!("{interior} interior points"))?;
    let genus = interior as i64 - 7 * 6 / 2;
    ensure(genus == 1, format!("genus {genus}"))?;
    let total = lattice_points(&p, 1).map_err(err)?.len();
    Ok(format!("7 vertices, 7 normal rays, h0(Δ',1,7) = 1 of {total}, 22 interior points, genus 22 - 21 = 1"))
}

fn criterion_8() -> Outcome {
    let pi = IntMatrix::from_i64_rows(&[&[1, 0, 1, -2, -1, 1, 0], &[0, 1, -1, -3, -2, 2, 1]]);
    let v1 = ivec(&[1, 0, 1, 1, 1, 0, 0]);
    let v2 = ivec(&[0, 0, 0, -1, -1, 0, 0]);
    let v3 = ivec(&[-1, 0, -1, 0, 0, -1, 0]);
    let r = lm_projection(10, &pi, [&v1, &v2, &v3], [12, 13, 17]).map_err(err)?;
    ensure(r.ray_count == 254, format!("{} rays", r.ray_count))?;
    ensure(r.generates, "images do not generate Z^2")?;
    let a = r.assignments.first().ok_or("no weight assignment found")?;
    ensure(r.quotient_label().as_deref() == Some("P(12,13,17)"), "quotient not identified")?;
    Ok(format!(
        "254 rays, {} distinct images, generates Z^2, weights {:?} with signs {:?}, quotient P(12,13,17)",
        r.images.len(),
        a.weights,
        a.signs
    ))
}

fn criterion_9() -> Outcome {
    ensure(mukai_predicate(3, 8).map_err(err)?, "(3,8)")?;
    ensure(!mukai_predicate(3, 9).map_err(err)?, "(3,9)")?;
    ensure(!mukai_predicate(4, 9).map_err(err)?, "(4,9)")?;
    for k in 3..=100 {
        ensure(mukai_predicate(2, k).map_err(err)?, format!("(2,{k})"))?;
    }
    Ok("(3,8) T, (3,9) F, (4,9) F, (2,k) T for k ≤ 100".into())
}

type Suite = Box<dyn Fn() -> common::Check>;
type Criterion = fn() -> Outcome;

fn criterion_10() -> Outcome {
    let suites: Vec<(&str, Suite)> = vec![
        ("dual∘dual", Box::new(|| common::dual_dual_corpus(21, 100))),
        ("Hilbert basis", Box::new(|| common::hilbert_corpus(22, 30))),
        ("Pick/dilation", Box::new(|| common::pick_corpus(23, 100))),
        ("Δ_mD = mΔ_D", Box::new(|| common::dilation_corpus(35, 30))),
        ("principal class", Box::new(|| common::principal_class_corpus(33, 100))),
        ("chamber partition", Box::new(|| common::chamber_partition_corpus(45, 50))),
        ("λ idempotence", Box::new(|| common::lambda_idempotence_corpus(44, 100))),
    ];
    let mut total = 0;
    for (name, run) in &suites {
        total += run().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites, {total} cases, 0 failures", suites.len()))
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, Criterion)> = vec![
        (1, "class groups and gradings", Duration::from_secs(1), criterion_1),
        (2, "Cox grading criterion", Duration::from_secs(1), criterion_2),
        (3, "polytope/fan roundtrip", Duration::from_secs(1), criterion_3),
        (4, "Hirzebruch chambers", Duration::from_secs(5), criterion_4),
        (5, "flagship interpolation", Duration::from_secs(90), criterion_5),
        (6, "nef-not-semiample certificate", Duration::from_secs(10), criterion_6),
        (7, "second polygon", Duration::from_secs(5), criterion_7),
        (8, "LM projection", Duration::from_secs(1), criterion_8),
        (9, "Mukai table", Duration::from_secs(1), criterion_9),
        (10, "property suites", Duration::from_secs(120), criterion_10),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = took > budget;
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over budget: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {id:>2} {status} [{took:.2?} / {budget:?}] {name}: {detail}");
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
