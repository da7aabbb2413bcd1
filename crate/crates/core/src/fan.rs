//! Fans as combinatorial toric varieties.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::divisors::ToricDivisor;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel_saturated, smith_normal_form, IntMatrix};
use crate::num::{content, dot, is_zero_vec, primitive, IntVec};
use crate::polyhedra::{Cone, Polytope};

/// Primitive rays and maximal cones given as ray-index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    lattice_dim: usize,
    rays: Vec<IntVec>,
    max_cones: Vec<Vec<usize>>,
}

/// The first invariant a fan fails, naming the offending rays or cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum FanViolation {
    ZeroRay { ray: usize },
    NonPrimitiveRay { ray: usize },
    DuplicateRay { first: usize, second: usize },
    EmptyRaySet { cone: usize },
    RedundantRay { cone: usize, ray: usize },
    NotStronglyConvex { cone: usize },
    OverlapNotAFace { first: usize, second: usize },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroRay { ray } => write!(f, "ray {ray} is zero"),
            Self::NonPrimitiveRay { ray } => write!(f, "ray {ray} is not primitive"),
            Self::DuplicateRay { first, second } => write!(f, "rays {first} and {second} coincide"),
            Self::EmptyRaySet { cone } => write!(f, "cone {cone} has no rays"),
            Self::RedundantRay { cone, ray } => {
                write!(f, "ray {ray} is not an extreme ray of cone {cone}")
            }
            Self::NotStronglyConvex { cone } => write!(f, "cone {cone} is not strongly convex"),
            Self::OverlapNotAFace { first, second } => {
                write!(f, "cones {first} and {second} meet outside a common face")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanPredicates {
    pub complete: bool,
    pub simplicial: bool,
    pub smooth: bool,
}

/// Named constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardFan {
    ProjectiveSpace(usize),
    Hirzebruch(u32),
    WeightedProjective(Vec<u64>),
}

impl Fan {
    /// Checks shapes and indices only; use [`validate_fan`] for the fan axioms.
    /// Cone index sets are sorted and deduplicated.
    pub fn new(lattice_dim: usize, rays: Vec<IntVec>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for r in &rays {
            if r.len() != lattice_dim {
                return Err(Error::DimensionMismatch {
                    expected: lattice_dim,
                    found: r.len(),
                });
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for c in max_cones {
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidInput(format!("ray index {bad} out of range")));
            }
            let set: BTreeSet<usize> = c.into_iter().collect();
            cones.push(set.into_iter().collect());
        }
        Ok(Fan {
            lattice_dim,
            rays,
            max_cones: cones,
        })
    }

    pub fn from_i64(rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Fan> {
        let dim = rays.first().map_or(0, |r| r.len());
        Fan::new(
            dim,
            rays.iter().map(|r| crate::num::ivec(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn lattice_dim(&self) -> usize {
        self.lattice_dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Ray matrix with one row per ray.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays, self.lattice_dim).expect("ray rows")
    }

    /// The cone spanned by the rays with the given indices.
    pub fn cone_of(&self, idx: &[usize]) -> Cone {
        let gens: Vec<IntVec> = idx.iter().map(|&i| self.rays[i].clone()).collect();
        if gens.is_empty() {
            return Cone::zero(self.lattice_dim);
        }
        Cone::from_generators(&gens, self.lattice_dim).expect("fan rays have the lattice dimension")
    }

    pub fn max_cone(&self, i: usize) -> Cone {
        self.cone_of(&self.max_cones[i])
    }

    /// Whether the rays span `N_Q`.
    pub fn rays_span(&self) -> bool {
        self.lattice_dim == 0 || (!self.rays.is_empty() && self.ray_matrix().rank() == self.lattice_dim)
    }

    /// Index of a max cone containing `v`, if any.
    pub fn cone_containing(&self, v: &[BigInt]) -> Option<usize> {
        (0..self.max_cones.len()).find(|&i| self.max_cone(i).contains(v))
    }
}

/// Checks primitivity and distinctness of rays, strong convexity and
/// irredundancy of every maximal cone, and that any two maximal cones meet
/// in a common face.
pub fn validate_fan(f: &Fan) -> std::result::Result<(), FanViolation> {
    for (i, r) in f.rays.iter().enumerate() {
        if is_zero_vec(r) {
            return Err(FanViolation::ZeroRay { ray: i });
        }
        if !content(r).is_one() {
            return Err(FanViolation::NonPrimitiveRay { ray: i });
        }
        if let Some(j) = f.rays[..i].iter().position(|s| s == r) {
            return Err(FanViolation::DuplicateRay { first: j, second: i });
        }
    }
    let cones: Vec<Cone> = (0..f.max_cones.len()).map(|i| f.max_cone(i)).collect();
    for (ci, (idx, c)) in f.max_cones.iter().zip(&cones).enumerate() {
        if idx.is_empty() && f.max_cones.len() > 1 {
            return Err(FanViolation::EmptyRaySet { cone: ci });
        }
        if !c.is_pointed() {
            return Err(FanViolation::NotStronglyConvex { cone: ci });
        }
        if let Some(&r) = idx.iter().find(|&&r| !c.rays().contains(&f.rays[r])) {
            return Err(FanViolation::RedundantRay { cone: ci, ray: r });
        }
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let meet = cones[i].intersect(&cones[j]).expect("same dimension");
            if !cones[i].has_face(&meet) || !cones[j].has_face(&meet) {
                return Err(FanViolation::OverlapNotAFace { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// Ray-index sets of the facets of maximal cone `i`.
fn facet_index_sets(f: &Fan, i: usize) -> Vec<Vec<usize>> {
    let c = f.max_cone(i);
    c.facets()
        .iter()
        .map(|n| {
            f.max_cones[i]
                .iter()
                .copied()
                .filter(|&r| dot(n, &f.rays[r]).is_zero())
                .collect()
        })
        .collect()
}

pub fn fan_predicates(f: &Fan) -> Result<FanPredicates> {
    validate_fan(f).map_err(Error::InvalidFan)?;
    let d = f.lattice_dim;
    let simplicial = f
        .max_cones
        .iter()
        .all(|c| c.is_empty() || f.ray_matrix().select_rows(c).rank() == c.len());
    let smooth = simplicial
        && f.max_cones.iter().all(|c| {
            c.is_empty()
                || smith_normal_form(&f.ray_matrix().select_rows(c))
                    .invariant_factors()
                    .iter()
                    .all(One::is_one)
        });
    // a fan is complete iff all maximal cones are full-dimensional and each
    // of their facets is shared by exactly two of them
    let complete = if d == 0 {
        true
    } else if f.max_cones.iter().any(|c| f.cone_of(c).dim() != d) {
        false
    } else {
        let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for i in 0..f.max_cones.len() {
            for s in facet_index_sets(f, i) {
                *count.entry(s).or_default() += 1;
            }
        }
        count.values().all(|&n| n == 2)
    };
    Ok(FanPredicates {
        complete,
        simplicial,
        smooth,
    })
}

pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    normal_fan_with_ample(p).map(|(f, _)| f)
}

/// Normal fan of a full-dimensional lattice polytope with the divisor
/// `H = sum a_F D_F`, `a_F = -min_{u in P} <u, v_F>`, whose polytope is `P`.
/// In dimension two the rays are sorted counterclockwise by angle from the
/// positive x-axis; otherwise lexicographically.
pub fn normal_fan_with_ample(p: &Polytope) -> Result<(Fan, ToricDivisor)> {
    let d = p.ambient_dim();
    if p.is_empty() || !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let verts = p.lattice_vertices().ok_or(Error::NonLatticeVertex)?;
    let (ineqs, _) = p.halfspaces();
    let mut rays: Vec<IntVec> = ineqs.iter().map(|(a, _)| primitive(a)).collect();
    if d == 2 {
        rays.sort_by(|a, b| angle_cmp(a, b));
    } else {
        rays.sort();
    }
    let coeffs: IntVec = rays
        .iter()
        .map(|v| -verts.iter().map(|u| dot(u, v)).min().expect("nonempty"))
        .collect();
    let max_cones: Vec<Vec<usize>> = verts
        .iter()
        .map(|u| {
            (0..rays.len())
                .filter(|&i| dot(u, &rays[i]) == -&coeffs[i])
                .collect()
        })
        .collect();
    let fan = Fan::new(d, rays, max_cones)?;
    Ok((fan, ToricDivisor::new(coeffs)))
}

/// Counterclockwise angular order on nonzero planar vectors, starting at the
/// positive x-axis.
pub(crate) fn angle_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    let half = |v: &[BigInt]| -> u8 {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        BigInt::zero().cmp(&cross)
    })
}

fn cyclic_cones(n_rays: usize, size: usize) -> Vec<Vec<usize>> {
    (0..n_rays)
        .map(|i| {
            let mut c: Vec<usize> = (0..size).map(|j| (i + j) % n_rays).collect();
            c.sort();
            c
        })
        .collect()
}

pub fn standard_fan(kind: &StandardFan) -> Result<Fan> {
    match kind {
        StandardFan::ProjectiveSpace(n) => {
            if *n == 0 {
                return Err(Error::InvalidInput("projective space needs n >= 1".into()));
            }
            let n = *n;
            let mut rays: Vec<IntVec> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect();
            rays.push(vec![BigInt::from(-1); n]);
            Fan::new(n, rays, cyclic_cones(n + 1, n))
        }
        StandardFan::Hirzebruch(n) => {
            // column order matches the grading [[1, 1, n, 0], [0, 0, 1, 1]]
            let n = i64::from(*n);
            Fan::from_i64(
                &[&[1, 0], &[-1, n], &[0, -1], &[0, 1]],
                &[&[0, 3], &[1, 3], &[1, 2], &[0, 2]],
            )
        }
        StandardFan::WeightedProjective(a) => weighted_projective(a),
    }
}

fn weighted_projective(a: &[u64]) -> Result<Fan> {
    if a.len() < 2 {
        return Err(Error::BadWeights("need at least two weights".into()));
    }
    if a.contains(&0) {
        return Err(Error::BadWeights("weights must be positive".into()));
    }
    let big: IntVec = a.iter().map(|&x| BigInt::from(x)).collect();
    for i in 0..a.len() {
        let rest: IntVec = big.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
        if !content(&rest).is_one() {
            return Err(Error::BadWeights(format!(
                "weights other than position {i} share a common factor"
            )));
        }
    }
    let n = a.len() - 1;
    let row = IntMatrix::from_rows(&[big], n + 1)?;
    let k = integer_kernel_saturated(&row);
    let rays: Vec<IntVec> = (0..=n).map(|i| k.column(i)).collect();
    Fan::new(n, rays, cyclic_cones(n + 1, n))
}

/// A matrix `g` in `GL(d, Z)` with `g * rays(a)` equal to `rays(b)` as sets and
/// mapping maximal cones onto maximal cones, if one exists.
pub fn unimodular_equivalence(a: &Fan, b: &Fan) -> Option<IntMatrix> {
    let d = a.lattice_dim;
    if d != b.lattice_dim || a.rays.len() != b.rays.len() || a.max_cones.len() != b.max_cones.len() {
        return None;
    }
    if d == 0 {
        return Some(IntMatrix::identity(0));
    }
    let basis = independent_subset(&a.rays, d)?;
    let src = IntMatrix::from_rows(
        &basis.iter().map(|&i| a.rays[i].clone()).collect::<Vec<_>>(),
        d,
    )
    .ok()?
    .transpose();
    let src_inv = src.to_rat().inverse()?;
    let target_cones: BTreeSet<Vec<usize>> = b.max_cones.iter().cloned().collect();
    let b_index: BTreeMap<&IntVec, usize> = b.rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut choice = Vec::with_capacity(d);
    search_assignments(b.rays.len(), d, &mut choice, &mut |pick: &[usize]| {
        let dst = IntMatrix::from_rows(
            &pick.iter().map(|&j| b.rays[j].clone()).collect::<Vec<_>>(),
            d,
        )
        .ok()?
        .transpose();
        let g = integral_product(&dst, &src_inv)?;
        if !g.determinant().ok()?.abs().is_one() {
            return None;
        }
        let image: Option<Vec<usize>> = a
            .rays
            .iter()
            .map(|r| b_index.get(&g.mul_vec(r)).copied())
            .collect();
        let image = image?;
        let mapped: BTreeSet<Vec<usize>> = a
            .max_cones
            .iter()
            .map(|c| {
                let mut m: Vec<usize> = c.iter().map(|&i| image[i]).collect();
                m.sort();
                m
            })
            .collect();
        (mapped == target_cones).then_some(g)
    })
}

fn independent_subset(rays: &[IntVec], d: usize) -> Option<Vec<usize>> {
    let mut picked: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let mut trial: Vec<IntVec> = picked.iter().map(|&j| rays[j].clone()).collect();
        trial.push(rays[i].clone());
        if IntMatrix::from_rows(&trial, d).ok()?.rank() == trial.len() {
            picked.push(i);
            if picked.len() == d {
                return Some(picked);
            }
        }
    }
    None
}

fn search_assignments<T>(
    n: usize,
    d: usize,
    choice: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if choice.len() == d {
        return f(choice);
    }
    for j in 0..n {
        if choice.contains(&j) {
            continue;
        }
        choice.push(j);
        let r = search_assignments(n, d, choice, f);
        choice.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

fn integral_product(dst: &IntMatrix, src_inv: &crate::linalg::RatMatrix) -> Option<IntMatrix> {
    let d = dst.rows();
    let mut data = Vec::with_capacity(d * d);
    for r in 0..d {
        for c in 0..d {
            let mut s = BigRational::zero();
            for k in 0..d {
                s += BigRational::from_integer(dst[(r, k)].clone()) * &src_inv[(k, c)];
            }
            if !s.is_integer() {
                return None;
            }
            data.push(s.to_integer());
        }
    }
    IntMatrix::new(d, d, data).ok()
}
