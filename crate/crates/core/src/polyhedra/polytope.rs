use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Cone;
use crate::error::{Error, Result};
use crate::num::{dot, integer_multiple, IntVec, RatVec};

/// Convex hull of finitely many rational points, stored by its vertices.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RatVec>,
}

/// An affine constraint `<normal, x> + offset >= 0` (or `= 0`).
pub type AffineConstraint = (IntVec, BigInt);

impl Polytope {
    pub fn empty(dim: usize) -> Polytope {
        Polytope {
            dim,
            vertices: Vec::new(),
        }
    }

    /// Hull of `points`; redundant points are dropped and vertices sorted
    /// lexicographically.
    pub fn from_points(points: &[RatVec], dim: usize) -> Result<Polytope> {
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        if points.is_empty() {
            return Ok(Self::empty(dim));
        }
        let cone = homogenize(points, dim);
        let mut vertices: Vec<RatVec> = cone.rays().iter().map(|r| dehomogenize(r)).collect();
        vertices.sort();
        Ok(Polytope { dim, vertices })
    }

    pub fn from_int_points(points: &[IntVec], dim: usize) -> Result<Polytope> {
        let pts: Vec<RatVec> = points.iter().map(|p| crate::num::to_rat(p)).collect();
        Self::from_points(&pts, dim)
    }

    pub fn from_i64_points(points: &[&[i64]]) -> Polytope {
        let dim = points.first().map_or(0, |p| p.len());
        let pts: Vec<RatVec> = points.iter().map(|p| crate::num::rvec(p)).collect();
        Self::from_points(&pts, dim).expect("consistent dimensions")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices as integer vectors, if all are lattice points.
    pub fn lattice_vertices(&self) -> Option<Vec<IntVec>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect::<Option<IntVec>>()
            })
            .collect()
    }

    /// The cone over `P x {1}` in dimension `d + 1`.
    pub fn homogenized_cone(&self) -> Option<Cone> {
        (!self.is_empty()).then(|| homogenize(&self.vertices, self.dim))
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.homogenized_cone().map(|c| c.dim() - 1)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.dim)
    }

    /// Facet inequalities and affine equations of the hull.
    pub fn halfspaces(&self) -> (Vec<AffineConstraint>, Vec<AffineConstraint>) {
        let Some(cone) = self.homogenized_cone() else {
            return (Vec::new(), Vec::new());
        };
        let split = |v: &IntVec| (v[..self.dim].to_vec(), v[self.dim].clone());
        let ineqs = cone
            .facets()
            .iter()
            .filter(|f| f[..self.dim].iter().any(|x| !x.is_zero()))
            .map(split)
            .collect();
        let eqs = cone.equations().iter().map(split).collect();
        (ineqs, eqs)
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        if self.is_empty() {
            return false;
        }
        let (ineqs, eqs) = self.halfspaces();
        let val = |(a, b): &AffineConstraint| crate::num::dot_rat(a, p) + BigRational::from_integer(b.clone());
        ineqs.iter().all(|c| !val(c).is_negative()) && eqs.iter().all(|c| val(c).is_zero())
    }

    pub fn contains_int(&self, p: &[BigInt]) -> bool {
        self.contains(&crate::num::to_rat(p))
    }

    pub fn scaled(&self, m: &BigRational) -> Polytope {
        let mut vertices: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * m).collect())
            .collect();
        if m.is_negative() {
            vertices.sort();
        }
        if m.is_zero() {
            vertices.truncate(1);
        }
        Polytope {
            dim: self.dim,
            vertices,
        }
    }

    pub fn translated(&self, t: &[BigRational]) -> Polytope {
        Polytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// Set equality of the vertex sets.
    pub fn same_set(&self, other: &Polytope) -> bool {
        let mut a = self.vertices.clone();
        let mut b = other.vertices.clone();
        a.sort();
        b.sort();
        self.dim == other.dim && a == b
    }

    /// Euclidean area of a two-dimensional polytope (zero if degenerate).
    pub fn area_2d(&self) -> Result<BigRational> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim,
            });
        }
        let hull = convex_hull_2d(&self.vertices)?;
        Ok(shoelace(hull.vertices()).abs() / BigRational::from_integer(BigInt::from(2)))
    }

    /// Number of lattice points in the relative interior (two-dimensional only).
    pub fn interior_lattice_points(&self) -> Result<Vec<IntVec>> {
        let (ineqs, _) = self.halfspaces();
        Ok(lattice_points(self, 1)?
            .into_iter()
            .filter(|p| ineqs.iter().all(|(a, b)| (dot(a, p) + b).is_positive()))
            .collect())
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.same_set(other)
    }
}

fn homogenize(points: &[RatVec], dim: usize) -> Cone {
    let gens: Vec<IntVec> = points
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q.push(BigRational::one());
            let (v, _) = integer_multiple(&q);
            crate::num::primitive(&v)
        })
        .collect();
    Cone::from_generators(&gens, dim + 1).expect("homogenized points are nonzero")
}

fn dehomogenize(r: &[BigInt]) -> RatVec {
    let t = r.last().expect("homogenized ray").clone();
    r[..r.len() - 1]
        .iter()
        .map(|x| BigRational::new(x.clone(), t.clone()))
        .collect()
}

/// Twice the signed area of a closed polygon.
pub(crate) fn shoelace(v: &[RatVec]) -> BigRational {
    let n = v.len();
    let mut s = BigRational::zero();
    for i in 0..n {
        let (p, q) = (&v[i], &v[(i + 1) % n]);
        s += &p[0] * &q[1] - &q[0] * &p[1];
    }
    s
}

fn cross(o: &RatVec, a: &RatVec, b: &RatVec) -> BigRational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counterclockwise irredundant hull of planar points (monotone chain with
/// exact orientation tests), starting from the lexicographically smallest
/// vertex. Collinear input yields a segment, a single point a point.
pub fn convex_hull_2d(points: &[RatVec]) -> Result<Polytope> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    for p in points {
        if p.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.len(),
            });
        }
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Ok(Polytope {
            dim: 2,
            vertices: pts,
        });
    }
    let mut lower: Vec<RatVec> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatVec> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    Ok(Polytope {
        dim: 2,
        vertices: lower,
    })
}

pub const MAX_LATTICE_DIM: usize = 4;

/// Integer points of `m * P`, in lexicographic order.
pub fn lattice_points(p: &Polytope, m: u64) -> Result<Vec<IntVec>> {
    if p.dim > MAX_LATTICE_DIM {
        return Err(Error::DimensionTooLarge {
            found: p.dim,
            max: MAX_LATTICE_DIM,
        });
    }
    if m == 0 {
        return Err(Error::InvalidInput("dilation must be positive".into()));
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let mm = BigRational::from_integer(BigInt::from(m));
    let scaled = p.scaled(&mm);
    if p.dim == 0 {
        return Ok(vec![Vec::new()]);
    }
    // constraints of the projection onto the first j coordinates
    let levels: Vec<(Vec<AffineConstraint>, Vec<AffineConstraint>)> = (1..=p.dim)
        .map(|j| {
            let proj: Vec<RatVec> = scaled.vertices.iter().map(|v| v[..j].to_vec()).collect();
            Polytope::from_points(&proj, j)
                .expect("projection")
                .halfspaces()
        })
        .collect();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(p.dim);
    enumerate(&levels, &mut prefix, &mut out);
    Ok(out)
}

fn enumerate(
    levels: &[(Vec<AffineConstraint>, Vec<AffineConstraint>)],
    prefix: &mut IntVec,
    out: &mut Vec<IntVec>,
) {
    let j = prefix.len();
    if j == levels.len() {
        out.push(prefix.clone());
        return;
    }
    let (ineqs, eqs) = &levels[j];
    let rest = |(a, b): &AffineConstraint, prefix: &IntVec| -> BigInt {
        // -(b + sum_{i<j} a_i x_i)
        -(b + dot(&a[..j], prefix))
    };
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    let mut fixed: Option<BigInt> = None;
    for c in eqs {
        let aj = &c.0[j];
        if aj.is_zero() {
            continue;
        }
        let r = rest(c, prefix);
        if !r.is_multiple_of(aj) {
            return;
        }
        let x = r / aj;
        match &fixed {
            Some(f) if *f != x => return,
            _ => fixed = Some(x),
        }
    }
    for c in ineqs {
        let aj = &c.0[j];
        if aj.is_zero() {
            continue;
        }
        let r = rest(c, prefix);
        if aj.is_positive() {
            let b = r.div_ceil(aj);
            if lo.as_ref().map_or(true, |l| b > *l) {
                lo = Some(b);
            }
        } else {
            let b = r.div_floor(aj);
            if hi.as_ref().map_or(true, |h| b < *h) {
                hi = Some(b);
            }
        }
    }
    let (lo, hi) = match fixed {
        Some(f) => {
            if lo.as_ref().is_some_and(|l| f < *l) || hi.as_ref().is_some_and(|h| f > *h) {
                return;
            }
            (f.clone(), f)
        }
        None => (
            lo.expect("bounded polytope has a lower bound"),
            hi.expect("bounded polytope has an upper bound"),
        ),
    };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        enumerate(levels, prefix, out);
        prefix.pop();
        x += 1;
    }
}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.vertices.partial_cmp(&other.vertices)
    }
}
