//! Randomized property corpora shared by the module test files and the
//! acceptance target. Every corpus is driven by a fixed seed so failures
//! reproduce exactly.

#![allow(dead_code)]

use std::collections::HashMap;

use coxkit::blowup::{order_at_e, InterpolationProblem, LaurentPoly};
use coxkit::chambers::{effective_cone, enumerate_chambers, in_relative_interior};
use coxkit::divisors::{class_group, divisor_polytope, intersection_number_nef_surface, positivity};
use coxkit::linalg::{exact_rank, rank_of, ModularSource};
use coxkit::num::{int, primitive, rat};
use coxkit::{
    convex_hull_2d, h0, hermite_normal_form, hilbert_basis, integer_kernel_saturated,
    is_cox_grading, kernel_dimension, lattice_points, mori_chamber, moving_cone, normal_fan_with_ample,
    principal_divisor, semistable_supports, smith_normal_form, standard_fan, validate_fan, Cone, Fan,
    GradingSpec, IntMatrix, IntVec, Polytope, RankMode, RatMatrix, RatVec, StandardFan, ToricDivisor,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<usize, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| int(r.gen_range(-bound..=bound))).collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

fn random_unimodular(r: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..3 * n {
        let a = r.gen_range(0..n);
        let b = (a + r.gen_range(1..n)) % n;
        u.add_row_multiple(a, b, &int(r.gen_range(-3..=3)));
        if r.gen_bool(0.2) {
            u.swap_rows(a, b);
        }
    }
    u
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
}

// ---------------------------------------------------------------- linalg

pub fn smith_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let (rows, cols) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let m = random_matrix(&mut r, rows, cols, 50);
        let s = smith_normal_form(&m);
        let lhs = s.u.mul(&m).unwrap().mul(&s.v).unwrap();
        if lhs != s.d {
            return Err(format!("case {case}: U·M·V ≠ D for {m:?}"));
        }
        if !is_unimodular(&s.u) || !is_unimodular(&s.v) {
            return Err(format!("case {case}: transforms are not unimodular"));
        }
        for i in 0..rows {
            for j in 0..cols {
                if i != j && !s.d[(i, j)].is_zero() {
                    return Err(format!("case {case}: D is not diagonal"));
                }
            }
        }
        let diag = s.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return Err(format!("case {case}: negative invariant factor"));
        }
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            if !ok {
                return Err(format!("case {case}: divisibility chain broken: {diag:?}"));
            }
        }
    }
    Ok(cases)
}

pub fn hermite_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let m = random_matrix(&mut r, rows, cols, 20);
        let (h, u) = hermite_normal_form(&m);
        if u.mul(&m).unwrap() != h || !is_unimodular(&u) {
            return Err(format!("case {case}: U·M ≠ H or U not unimodular"));
        }
        let w = random_unimodular(&mut r, rows);
        let (h2, _) = hermite_normal_form(&w.mul(&m).unwrap());
        if h2 != h {
            return Err(format!("case {case}: HNF changed under a unimodular row change"));
        }
    }
    Ok(cases)
}

pub fn kernel_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let (rows, cols) = (r.gen_range(1..=5), r.gen_range(1..=7));
        let mut m = random_matrix(&mut r, rows, cols, 9);
        if rows > 1 && r.gen_bool(0.5) {
            // force a dependent row
            let k = int(r.gen_range(-3..=3));
            for c in 0..cols {
                let x = &m[(0, c)] * &k;
                m[(rows - 1, c)] = x;
            }
        }
        let k = integer_kernel_saturated(&m);
        if k.rows() != cols - exact_rank(&m) {
            return Err(format!("case {case}: kernel has {} rows", k.rows()));
        }
        for row in k.row_vecs() {
            if m.mul_vec(&row).iter().any(|x| !x.is_zero()) {
                return Err(format!("case {case}: kernel vector not killed"));
            }
        }
        if k.rows() > 0 && !smith_normal_form(&k).invariant_factors().iter().all(One::is_one) {
            return Err(format!("case {case}: kernel is not saturated"));
        }
    }
    Ok(cases)
}

pub fn exact_vs_modular_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let (rows, cols) = (r.gen_range(1..=30), r.gen_range(1..=30));
        let inner = r.gen_range(1..=rows.min(cols));
        let rand_rat = |r: &mut ChaCha8Rng| rat(r.gen_range(-9..=9), r.gen_range(1..=7));
        let b: Vec<BigRational> = (0..rows * inner).map(|_| rand_rat(&mut r)).collect();
        let c: Vec<BigRational> = (0..inner * cols).map(|_| rand_rat(&mut r)).collect();
        let data: Vec<BigRational> = (0..rows)
            .flat_map(|i| {
                let (b, c) = (&b, &c);
                (0..cols).map(move |j| (0..inner).map(|t| &b[i * inner + t] * &c[t * cols + j]).sum())
            })
            .collect();
        let m = RatMatrix::new(rows, cols, data).unwrap();
        let exact = kernel_dimension(&m, &RankMode::Exact).map_err(|e| e.to_string())?;
        let modular = kernel_dimension(&m, &RankMode::Modular).map_err(|e| e.to_string())?;
        if exact != modular {
            return Err(format!("case {case}: exact {exact} ≠ modular {modular}"));
        }
    }
    Ok(cases)
}

// ---------------------------------------------------------------- polyhedra

fn random_vectors(r: &mut ChaCha8Rng, n: usize, dim: usize, bound: i64) -> Vec<IntVec> {
    (0..n)
        .map(|_| loop {
            let v: IntVec = (0..dim).map(|_| int(r.gen_range(-bound..=bound))).collect();
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        })
        .collect()
}

pub fn dual_dual_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let dim = r.gen_range(2..=4);
        let n = r.gen_range(1..=dim + 3);
        let gens = random_vectors(&mut r, n, dim, 5);
        let c = Cone::from_generators(&gens, dim).map_err(|e| e.to_string())?;
        if c.dual().dual() != c {
            return Err(format!("case {case}: dual∘dual differs for {gens:?}"));
        }
        for g in c.generators() {
            if c.facets().iter().any(|f| coxkit::num::dot(f, &g).is_negative()) {
                return Err(format!("case {case}: generator violates a facet"));
            }
        }
    }
    Ok(cases)
}

/// Grading that is positive on `c \ {0}` (pointed cones only).
fn grading(c: &Cone) -> IntVec {
    c.dual().interior_lattice_point()
}

/// Whether `x` is a nonnegative integer combination of `basis`, by descent
/// along a positive grading.
fn generated(x: &IntVec, basis: &[IntVec], c: &Cone, memo: &mut HashMap<IntVec, bool>) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    if let Some(&v) = memo.get(x) {
        return v;
    }
    let mut ok = false;
    for b in basis {
        let y = coxkit::num::sub(x, b);
        if c.contains(&y) && generated(&y, basis, c, memo) {
            ok = true;
            break;
        }
    }
    memo.insert(x.clone(), ok);
    ok
}

fn box_points(dim: usize, radius: i64) -> Vec<IntVec> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: IntVec| {
                (-radius..=radius).map(move |t| {
                    let mut q = p.clone();
                    q.push(int(t));
                    q
                })
            })
            .collect();
    }
    out
}

pub fn hilbert_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let mut done = 0;
    while done < cases {
        let dim = r.gen_range(2..=3);
        let n = r.gen_range(dim..=dim + 2);
        let gens = random_vectors(&mut r, n, dim, 4);
        let c = Cone::from_generators(&gens, dim).map_err(|e| e.to_string())?;
        if !c.is_pointed() || c.is_zero() {
            continue;
        }
        let hb = hilbert_basis(&c).map_err(|e| e.to_string())?;
        let g = grading(&c);
        let limit = if dim == 2 { 20 } else { 12 };
        let mut memo = HashMap::new();
        for p in box_points(dim, limit) {
            let l1: BigInt = p.iter().map(|x| x.abs()).sum();
            if l1 > int(limit) || !c.contains(&p) {
                continue;
            }
            if !generated(&p, &hb, &c, &mut memo) {
                return Err(format!("case {done}: {p:?} not generated by {hb:?}"));
            }
        }
        for (i, h) in hb.iter().enumerate() {
            let others: Vec<IntVec> = hb.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
            if generated(h, &others, &c, &mut HashMap::new()) {
                return Err(format!("case {done}: {h:?} is redundant in {hb:?}"));
            }
            if coxkit::num::dot(&g, h) <= BigInt::zero() {
                return Err(format!("case {done}: {h:?} is not in the cone"));
            }
        }
        done += 1;
    }
    Ok(cases)
}

pub fn random_polygon(r: &mut ChaCha8Rng, bound: i64) -> Polytope {
    loop {
        let n = r.gen_range(3..=7);
        let pts: Vec<RatVec> = (0..n)
            .map(|_| vec![rat(r.gen_range(-bound..=bound), 1), rat(r.gen_range(-bound..=bound), 1)])
            .collect();
        let p = convex_hull_2d(&pts).unwrap();
        if p.is_full_dimensional() {
            return p;
        }
    }
}

fn boundary_points(p: &Polytope) -> BigInt {
    let v = p.lattice_vertices().unwrap();
    (0..v.len())
        .map(|i| {
            let a = &v[i];
            let b = &v[(i + 1) % v.len()];
            (&b[0] - &a[0]).abs().gcd(&(&b[1] - &a[1]).abs())
        })
        .sum()
}

pub fn pick_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let p = random_polygon(&mut r, 6);
        let area = p.area_2d().map_err(|e| e.to_string())?;
        let b = BigRational::from_integer(boundary_points(&p));
        let total = lattice_points(&p, 1).map_err(|e| e.to_string())?.len();
        let two = rat(2, 1);
        if BigRational::from_integer(BigInt::from(total)) != &area + &b / &two + BigRational::one() {
            return Err(format!("case {case}: Pick's theorem fails ({total} points)"));
        }
        let interior = p.interior_lattice_points().map_err(|e| e.to_string())?.len();
        if BigRational::from_integer(BigInt::from(interior)) != &area - &b / &two + BigRational::one() {
            return Err(format!("case {case}: interior count {interior} disagrees with Pick"));
        }
        for m in 2..=3u64 {
            let direct = lattice_points(&p, m).map_err(|e| e.to_string())?;
            let dilated = lattice_points(&p.scaled(&rat(m as i64, 1)), 1).map_err(|e| e.to_string())?;
            if direct != dilated {
                return Err(format!("case {case}: lattice points of {m}P disagree"));
            }
        }
    }
    Ok(cases)
}

// ---------------------------------------------------------------- fans and divisors

pub fn test_fans() -> Vec<(String, Fan)> {
    let mut out = vec![
        ("P2".to_string(), standard_fan(&StandardFan::ProjectiveSpace(2)).unwrap()),
        ("P3".to_string(), standard_fan(&StandardFan::ProjectiveSpace(3)).unwrap()),
        ("P(1,1,2)".to_string(), standard_fan(&StandardFan::WeightedProjective(vec![1, 1, 2])).unwrap()),
        ("P(1,2,3)".to_string(), standard_fan(&StandardFan::WeightedProjective(vec![1, 2, 3])).unwrap()),
        (
            "P(12,13,17)".to_string(),
            standard_fan(&StandardFan::WeightedProjective(vec![12, 13, 17])).unwrap(),
        ),
    ];
    for n in 0..=3 {
        out.push((format!("F{n}"), standard_fan(&StandardFan::Hirzebruch(n)).unwrap()));
    }
    out
}

pub fn surface_fans() -> Vec<(String, Fan)> {
    test_fans().into_iter().filter(|(_, f)| f.lattice_dim() == 2).collect()
}

fn random_divisor(r: &mut ChaCha8Rng, n: usize, bound: i64) -> ToricDivisor {
    ToricDivisor::new((0..n).map(|_| int(r.gen_range(-bound..=bound))).collect())
}

fn random_nef(r: &mut ChaCha8Rng, f: &Fan, bound: i64) -> ToricDivisor {
    loop {
        let d = random_divisor(r, f.rays().len(), bound);
        if positivity(f, &d).unwrap().nef {
            return d;
        }
    }
}

pub fn normal_fan_roundtrip_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let p = random_polygon(&mut r, 6);
        let (f, h) = normal_fan_with_ample(&p).map_err(|e| e.to_string())?;
        validate_fan(&f).map_err(|v| format!("case {case}: {v}"))?;
        let back = divisor_polytope(&f, &h).map_err(|e| e.to_string())?;
        if back != p {
            return Err(format!("case {case}: Δ_H differs from the input polygon"));
        }
        if !positivity(&f, &h).map_err(|e| e.to_string())?.ample {
            return Err(format!("case {case}: H is not ample"));
        }
    }
    Ok(cases)
}

pub fn weighted_projective_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < cases {
        attempts += 1;
        if attempts > 100 * cases {
            return Err("too few well-formed weight vectors".into());
        }
        let n = r.gen_range(3..=4);
        let w: Vec<u64> = (0..n).map(|_| r.gen_range(1..=20)).collect();
        let Ok(f) = standard_fan(&StandardFan::WeightedProjective(w.clone())) else {
            continue;
        };
        let cl = class_group(&f).map_err(|e| e.to_string())?;
        let degs: Vec<BigInt> = cl.free_degrees().into_iter().map(|d| d[0].clone()).collect();
        let expect: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        let negated: Vec<BigInt> = expect.iter().map(|x| -x).collect();
        if cl.rank() != 1 || !cl.torsion().is_empty() || (degs != expect && degs != negated) {
            return Err(format!("P{w:?}: class group rank {} degrees {degs:?}", cl.rank()));
        }
        done += 1;
    }
    Ok(cases)
}

pub fn principal_class_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let fans = test_fans();
    for case in 0..cases {
        let (name, f) = &fans[case % fans.len()];
        let m: IntVec = (0..f.lattice_dim()).map(|_| int(r.gen_range(-20..=20))).collect();
        let d = principal_divisor(f, &m).map_err(|e| e.to_string())?;
        let cl = class_group(f).map_err(|e| e.to_string())?;
        if !cl.is_zero_class(&d).map_err(|e| e.to_string())? {
            return Err(format!("{name}: div(χ^{m:?}) has a nonzero class"));
        }
    }
    Ok(cases)
}

pub fn translation_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let fans = test_fans();
    for case in 0..cases {
        let (name, f) = &fans[case % fans.len()];
        let d = random_divisor(&mut r, f.rays().len(), 4);
        let m: IntVec = (0..f.lattice_dim()).map(|_| int(r.gen_range(-5..=5))).collect();
        let shifted = d.add(&principal_divisor(f, &m).map_err(|e| e.to_string())?);
        let lhs = divisor_polytope(f, &shifted).map_err(|e| e.to_string())?;
        let minus_m: RatVec = m.iter().map(|x| BigRational::from_integer(-x)).collect();
        let rhs = divisor_polytope(f, &d).map_err(|e| e.to_string())?.translated(&minus_m);
        if lhs != rhs {
            return Err(format!("{name}: translation property fails for {d:?}, m = {m:?}"));
        }
    }
    Ok(cases)
}

pub fn dilation_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let fans = test_fans();
    for case in 0..cases {
        let (name, f) = &fans[case % fans.len()];
        let d = random_nef(&mut r, f, 4);
        let base = divisor_polytope(f, &d).map_err(|e| e.to_string())?;
        for m in 1..=5i64 {
            let md = divisor_polytope(f, &d.scale(&int(m))).map_err(|e| e.to_string())?;
            if md != base.scaled(&rat(m, 1)) {
                return Err(format!("{name}: Δ_{{{m}D}} ≠ {m}Δ_D for {d:?}"));
            }
        }
    }
    Ok(cases)
}

pub fn positivity_implication_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let fans: Vec<_> = test_fans();
    for case in 0..cases {
        let (name, f) = &fans[case % fans.len()];
        let d = random_divisor(&mut r, f.rays().len(), 3);
        let p = positivity(f, &d).map_err(|e| e.to_string())?;
        if (p.basepoint_free && !p.nef) || (p.ample && !p.basepoint_free) {
            return Err(format!("{name}: {p:?} for {d:?}"));
        }
    }
    Ok(cases)
}

pub fn bilinearity_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let fans = surface_fans();
    for case in 0..cases {
        let (name, f) = &fans[case % fans.len()];
        let d1 = random_nef(&mut r, f, 3);
        let d2 = random_nef(&mut r, f, 3);
        let e = random_nef(&mut r, f, 3);
        let i = |a: &ToricDivisor, b: &ToricDivisor| intersection_number_nef_surface(f, a, b).map_err(|e| e.to_string());
        if i(&d1.add(&d2), &e)? != i(&d1, &e)? + i(&d2, &e)? {
            return Err(format!("{name}: bilinearity fails for {d1:?}, {d2:?}, {e:?}"));
        }
        if i(&d1, &e)? != i(&e, &d1)? {
            return Err(format!("{name}: intersection is not symmetric"));
        }
    }
    Ok(cases)
}

// ---------------------------------------------------------------- chambers

pub fn random_spec(r: &mut ChaCha8Rng, k: usize, n: usize) -> GradingSpec {
    loop {
        let degrees = random_vectors(r, n, k, 4);
        let g = GradingSpec::new(k, vec![], degrees).unwrap();
        if effective_cone(&g).is_pointed() && effective_cone(&g).is_full_dimensional() {
            return g;
        }
    }
}

fn random_effective_point(r: &mut ChaCha8Rng, g: &GradingSpec) -> RatVec {
    let k = g.free_rank();
    let mut w = vec![BigRational::zero(); k];
    for d in g.free_degrees() {
        let c = rat(r.gen_range(0..=3), r.gen_range(1..=2));
        for (x, y) in w.iter_mut().zip(&d) {
            *x += &c * BigRational::from_integer(y.clone());
        }
    }
    if w.iter().all(Zero::is_zero) {
        w = coxkit::num::to_rat(&g.free_degrees()[0]);
    }
    w
}

pub fn mov_in_eff_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let k = r.gen_range(1..=3);
        let n = r.gen_range(k + 1..=8);
        let g = random_spec(&mut r, k, n);
        let mov = moving_cone(&g).map_err(|e| e.to_string())?;
        if !effective_cone(&g).contains_cone(&mov) {
            return Err(format!("case {case}: Mov ⊄ Eff for {:?}", g.degrees()));
        }
    }
    Ok(cases)
}

pub fn lambda_idempotence_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let k = r.gen_range(1..=3);
        let n = r.gen_range(k + 1..=8);
        let g = random_spec(&mut r, k, n);
        let w = random_effective_point(&mut r, &g);
        let lam = mori_chamber(&g, &w).map_err(|e| format!("case {case}: {e}"))?;
        if !lam.cone.contains_rat(&w) {
            return Err(format!("case {case}: w ∉ λ(w)"));
        }
        let p = lam.cone.relative_interior_point();
        let again = mori_chamber(&g, &p).map_err(|e| e.to_string())?;
        if again.cone != lam.cone {
            return Err(format!("case {case}: λ is not idempotent for {:?} at {w:?}", g.degrees()));
        }
    }
    Ok(cases)
}

/// Two-dimensional chambers, ordered counterclockwise, must tile Eff edge to edge.
pub fn chamber_partition_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let n = r.gen_range(3..=7);
        let g = random_spec(&mut r, 2, n);
        let eff = effective_cone(&g);
        let chambers: Vec<_> = enumerate_chambers(&g)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|c| c.full_dimensional)
            .collect();
        let edges = |c: &Cone| -> (IntVec, IntVec) {
            let rays = c.rays();
            let (a, b) = (rays[0].clone(), rays[1].clone());
            let cross = &a[0] * &b[1] - &a[1] * &b[0];
            if cross.is_positive() {
                (a, b)
            } else {
                (b, a)
            }
        };
        let mut pieces: Vec<(IntVec, IntVec)> = chambers.iter().map(|c| edges(&c.cone)).collect();
        let (start, end) = edges(&eff);
        let mut cur = start;
        let mut used = 0;
        while cur != end {
            let Some(i) = pieces.iter().position(|(a, _)| *a == cur) else {
                return Err(format!("case {case}: gap after ray {cur:?} in {:?}", g.degrees()));
            };
            cur = pieces.remove(i).1;
            used += 1;
        }
        if !pieces.is_empty() || used != chambers.len() {
            return Err(format!("case {case}: chambers overlap for {:?}", g.degrees()));
        }
    }
    Ok(cases)
}

pub fn cox_invariance_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let k = r.gen_range(1..=3);
        let n = r.gen_range(k + 1..=7);
        let g = random_spec(&mut r, k, n);
        let w = random_unimodular(&mut r, k);
        let moved: Vec<IntVec> = g.degrees().iter().map(|d| w.mul_vec(d)).collect();
        let h = GradingSpec::new(k, vec![], moved).map_err(|e| e.to_string())?;
        if is_cox_grading(&g).is_cox != is_cox_grading(&h).is_cox {
            return Err(format!("case {case}: verdict changed under recoordinatization"));
        }
    }
    Ok(cases)
}

/// Semistable supports stay put on the interior of each chamber.
pub fn supports_constant_check(g: &GradingSpec, seed: u64, samples: usize) -> Check {
    let mut r = rng(seed);
    let chambers = enumerate_chambers(g).map_err(|e| e.to_string())?;
    let mut n = 0;
    for c in chambers.iter().filter(|c| c.full_dimensional) {
        let base = semistable_supports(g, &c.cone.relative_interior_point()).map_err(|e| e.to_string())?;
        for _ in 0..samples {
            let mut w = vec![BigRational::zero(); g.free_rank()];
            for ray in c.cone.rays() {
                let t = rat(r.gen_range(1..=9), r.gen_range(1..=4));
                for (x, y) in w.iter_mut().zip(ray) {
                    *x += &t * BigRational::from_integer(y.clone());
                }
            }
            if !in_relative_interior(&c.cone, &w) {
                return Err("sample left the chamber interior".into());
            }
            if semistable_supports(g, &w).map_err(|e| e.to_string())? != base {
                return Err(format!("supports vary inside chamber {}", c.cone));
            }
            n += 1;
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------- blowup

fn random_laurent(r: &mut ChaCha8Rng) -> LaurentPoly {
    let mut f = LaurentPoly::new((0..r.gen_range(1..=4)).map(|_| {
        ((r.gen_range(-3..=3), r.gen_range(-3..=3)), rat(r.gen_range(-5..=5), r.gen_range(1..=3)))
    }));
    if f.is_zero() {
        f = LaurentPoly::one();
    }
    for _ in 0..r.gen_range(0..=2) {
        let (p, q) = loop {
            let (p, q) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
            if (p, q) != (0, 0) {
                break (p, q);
            }
        };
        f = f.mul(&LaurentPoly::binomial(p, q).pow(r.gen_range(1..=3)));
    }
    f
}

pub fn order_additivity_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let f = random_laurent(&mut r);
        let g = random_laurent(&mut r);
        let (of, og) = (order_at_e(&f).map_err(|e| e.to_string())?, order_at_e(&g).map_err(|e| e.to_string())?);
        let ofg = order_at_e(&f.mul(&g)).map_err(|e| e.to_string())?;
        if ofg != of + og {
            return Err(format!("case {case}: ord(fg) = {ofg} ≠ {of} + {og}"));
        }
    }
    Ok(cases)
}

pub fn h0_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let p = random_polygon(&mut r, 3);
        let m = r.gen_range(1..=2);
        let points = lattice_points(&p, m).map_err(|e| e.to_string())?.len();
        let mut prev = usize::MAX;
        for k in 0..=6u64 {
            let prob = InterpolationProblem::new(p.clone(), m, k).map_err(|e| e.to_string())?;
            let h = h0(&prob, &RankMode::Exact).map_err(|e| e.to_string())?;
            if k == 0 && h != points {
                return Err(format!("case {case}: h0(m, 0) = {h} but {points} points"));
            }
            if h > prev {
                return Err(format!("case {case}: h0 increased at k = {k}"));
            }
            let bound = points as i64 - (k * (k + 1) / 2) as i64;
            if (h as i64) < bound {
                return Err(format!("case {case}: h0 = {h} below the expected dimension {bound}"));
            }
            prev = h;
        }
    }
    Ok(cases)
}

pub fn vanishing_rows_corpus(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let p = random_polygon(&mut r, 4);
        let prob = InterpolationProblem::new(p, 1, 5).map_err(|e| e.to_string())?;
        let sys = prob.system().map_err(|e| e.to_string())?;
        for (ri, &(i, j)) in sys.rows().iter().enumerate() {
            for (ci, &(a, _)) in sys.cols().iter().enumerate() {
                let x = sys.entry(ri, ci);
                if (i, j) == (0, 0) && !x.is_one() {
                    return Err(format!("case {case}: row (0,0) is not all ones"));
                }
                if j == 0 && a >= 0 && (a as u64) < i && !x.is_zero() {
                    return Err(format!("case {case}: row ({i},0) nonzero at a = {a}"));
                }
            }
        }
    }
    Ok(cases)
}

pub fn flagship() -> Polytope {
    Polytope::from_i64_points(&[&[11, -26], &[50, 0], &[-1, 34]])
}

/// Rank of the vanishing system with one extra unit row.
struct WithIndicator<'a> {
    sys: &'a coxkit::blowup::VanishingSystem,
    col: usize,
}

impl coxkit::linalg::ModularSource for WithIndicator<'_> {
    fn shape(&self) -> (usize, usize) {
        let (r, c) = self.sys.shape();
        (r + 1, c)
    }

    fn row_mod(&self, r: usize, p: u64, out: &mut [u64]) -> coxkit::Result<()> {
        if r < self.sys.shape().0 {
            return self.sys.row_mod(r, p, out);
        }
        out.iter_mut().for_each(|x| *x = 0);
        out[self.col] = 1;
        Ok(())
    }

    fn denominator_divisible_by(&self, _p: u64) -> bool {
        false
    }

    fn exact_integer_rows(&self) -> IntMatrix {
        let mut e = IntMatrix::zeros(1, self.sys.shape().1);
        e[(0, self.col)] = BigInt::one();
        self.sys.exact_integer_rows().vstack(&e).unwrap()
    }
}

/// For `m = 1` the forced vertex lies in the common zero set of the kernel.
pub fn forced_vertex_kernel_check(polygon: &Polytope, k: u64) -> Check {
    use coxkit::blowup::{forced_vertex_for_multiple, Payload};
    let outcome = forced_vertex_for_multiple(polygon, k, 1).map_err(|e| e.to_string())?;
    let coxkit::ForcedVertexOutcome::Certified(cert) = outcome else {
        return Err("no forced vertex".into());
    };
    let Payload::ForcedVertex(fv) = &cert.payload else {
        return Err("unexpected payload".into());
    };
    let t: RatVec = fv.translation.iter().map(|s| coxkit::num::parse_rat(s).unwrap()).collect();
    let vertex: (i64, i64) = (fv.vertex[0].parse().unwrap(), fv.vertex[1].parse().unwrap());
    let prob = InterpolationProblem::new(polygon.translated(&t), 1, k).map_err(|e| e.to_string())?;
    let sys = prob.system().map_err(|e| e.to_string())?;
    let col = sys.cols().iter().position(|&c| c == vertex).ok_or("vertex is not a column")?;
    let base = rank_of(&sys, &RankMode::Modular).map_err(|e| e.to_string())?;
    let ext = rank_of(&WithIndicator { sys: &sys, col }, &RankMode::Modular).map_err(|e| e.to_string())?;
    if base != ext {
        return Err(format!("indicator row raised the rank from {base} to {ext}"));
    }
    if sys.shape().1 == base {
        return Err("kernel is trivial, nothing was tested".into());
    }
    Ok(1)
}

pub fn primitive_of(v: &[i64]) -> IntVec {
    primitive(&coxkit::num::ivec(v))
}
