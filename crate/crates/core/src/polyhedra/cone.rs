use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::double_description;
use crate::error::{Error, Result};
use crate::linalg::{exact_rank, IntMatrix};
use crate::num::{dot, dot_rat, is_zero_vec, neg, IntVec, RatVec};

/// A rational polyhedral cone in `Q^d`, stored in both representations.
///
/// `rays` are the extreme rays of the cone modulo its lineality space and
/// `lineality` is a saturated lattice basis of that space. `facets` are
/// primitive inward normals of the facets and `equations` a saturated basis
/// of the orthogonal complement of the linear span. All vectors are
/// primitive integer vectors.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// In the relative interior.
    Inside,
    /// In the cone but on some facet.
    Boundary,
    Outside,
}

fn check_dims(vs: &[IntVec], dim: usize) -> Result<()> {
    for v in vs {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(())
}

impl Cone {
    /// The cone generated by `generators`. Zero vectors contribute nothing;
    /// at least one nonzero generator is required.
    pub fn from_generators(generators: &[IntVec], dim: usize) -> Result<Cone> {
        check_dims(generators, dim)?;
        let gens: Vec<IntVec> = generators
            .iter()
            .filter(|g| !is_zero_vec(g))
            .cloned()
            .collect();
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self::from_generators_unchecked(&gens, &[], dim))
    }

    /// The cone `{x : <f, x> >= 0, <e, x> = 0}`. No facets means the whole
    /// space (intersected with the equations).
    pub fn from_facets(facets: &[IntVec], equations: &[IntVec], dim: usize) -> Result<Cone> {
        check_dims(facets, dim)?;
        check_dims(equations, dim)?;
        let prim = double_description(dim, facets, equations);
        Ok(Self::from_generators_unchecked(&prim.rays, &prim.lineality, dim))
    }

    /// The zero cone `{0}`.
    pub fn zero(dim: usize) -> Cone {
        let equations = IntMatrix::identity(dim).row_vecs();
        Cone {
            dim,
            rays: Vec::new(),
            lineality: Vec::new(),
            facets: Vec::new(),
            equations,
        }
    }

    /// The whole space `Q^d`.
    pub fn whole_space(dim: usize) -> Cone {
        Cone {
            dim,
            rays: Vec::new(),
            lineality: IntMatrix::identity(dim).row_vecs(),
            facets: Vec::new(),
            equations: Vec::new(),
        }
    }

    fn from_generators_unchecked(rays: &[IntVec], lineality: &[IntVec], dim: usize) -> Cone {
        // facets of C = extreme rays of the dual cone
        let dual = double_description(dim, rays, lineality);
        let facets = dual.rays;
        let equations = dual.lineality;
        let primal = double_description(dim, &facets, &equations);
        Cone {
            dim,
            rays: primal.rays,
            lineality: primal.lineality,
            facets,
            equations,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// A conic generating set: the rays and both directions of the lineality basis.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.membership(v) != Membership::Outside
    }

    pub fn contains_rat(&self, v: &[BigRational]) -> bool {
        self.equations.iter().all(|e| dot_rat(e, v).is_zero())
            && self.facets.iter().all(|f| !dot_rat(f, v).is_negative())
    }

    pub fn membership(&self, v: &[BigInt]) -> Membership {
        if self.equations.iter().any(|e| !dot(e, v).is_zero()) {
            return Membership::Outside;
        }
        let mut boundary = false;
        for f in &self.facets {
            let s = dot(f, v);
            if s.is_negative() {
                return Membership::Outside;
            }
            if s.is_zero() {
                boundary = true;
            }
        }
        if boundary {
            Membership::Boundary
        } else {
            Membership::Inside
        }
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Set equality.
    pub fn same_set(&self, other: &Cone) -> bool {
        self.dim == other.dim && self.contains_cone(other) && other.contains_cone(self)
    }

    /// Sum of the rays: strictly positive on every facet.
    pub fn relative_interior_point(&self) -> RatVec {
        let mut p = vec![BigInt::zero(); self.dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p.into_iter().map(BigRational::from_integer).collect()
    }

    /// Integer relative interior point (same as above, integral by construction).
    pub fn interior_lattice_point(&self) -> IntVec {
        self.relative_interior_point()
            .into_iter()
            .map(|x| x.to_integer())
            .collect()
    }

    /// The dual cone, recomputed from the facet description.
    pub fn dual(&self) -> Cone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(neg(e));
        }
        if gens.is_empty() {
            return Cone::zero(self.dim);
        }
        Self::from_generators_unchecked(&gens, &[], self.dim)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let facets: Vec<IntVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IntVec> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        Cone::from_facets(&facets, &eqs, self.dim)
    }

    /// Intersection of many cones in one conversion.
    pub fn intersect_all<'a>(cones: impl IntoIterator<Item = &'a Cone>, dim: usize) -> Result<Cone> {
        let mut facets = Vec::new();
        let mut eqs = Vec::new();
        for c in cones {
            if c.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim,
                });
            }
            facets.extend(c.facets.iter().cloned());
            eqs.extend(c.equations.iter().cloned());
        }
        Cone::from_facets(&facets, &eqs, dim)
    }

    /// Rays of `self` lying on the face cut out by `normal`.
    pub fn face_rays(&self, normal: &[BigInt]) -> Vec<IntVec> {
        self.rays
            .iter()
            .filter(|r| dot(normal, r).is_zero())
            .cloned()
            .collect()
    }

    /// The smallest face of `self` containing the point `p` (assumed inside).
    pub fn minimal_face_containing(&self, p: &[BigRational]) -> Cone {
        let tight: Vec<IntVec> = self
            .facets
            .iter()
            .filter(|f| dot_rat(f, p).is_zero())
            .cloned()
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        Cone::from_facets(&self.facets, &eqs, self.dim).expect("dimensions agree")
    }

    /// Whether `face` is a face of `self`.
    pub fn has_face(&self, face: &Cone) -> bool {
        if !self.contains_cone(face) {
            return false;
        }
        let p = face.relative_interior_point();
        self.minimal_face_containing(&p).same_set(face)
    }

    /// Rank of the generators (equals [`Cone::dim`]).
    pub fn generator_rank(&self) -> usize {
        let g = self.generators();
        if g.is_empty() {
            return 0;
        }
        exact_rank(&IntMatrix::from_rows(&g, self.dim).expect("generator rows"))
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.same_set(other)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| crate::num::fmt_vec(r)).collect();
        write!(f, "cone({})", rays.join(", "))?;
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(|r| crate::num::fmt_vec(r)).collect();
            write!(f, " + span({})", lin.join(", "))?;
        }
        Ok(())
    }
}

pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}

pub fn intersect(a: &Cone, b: &Cone) -> Result<Cone> {
    a.intersect(b)
}

pub fn membership(c: &Cone, v: &[BigInt]) -> Result<Membership> {
    if v.len() != c.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: c.ambient_dim(),
            found: v.len(),
        });
    }
    Ok(c.membership(v))
}

pub fn relative_interior_point(c: &Cone) -> RatVec {
    c.relative_interior_point()
}

pub fn is_pointed(c: &Cone) -> bool {
    c.is_pointed()
}
