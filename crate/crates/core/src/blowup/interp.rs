use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::laurent::{falling, falling_mod};
use crate::error::{Error, Result};
use crate::linalg::{nullity_of, IntMatrix, ModularSource, RankMode, RatMatrix};
use crate::num::IntVec;
use crate::polyhedra::{lattice_points, Polytope};

/// Sections of `m·π*H - k·E` modelled as Laurent polynomials supported on
/// `mΔ` vanishing to order `k` at `e = (1, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationProblem {
    polygon: Polytope,
    m: u64,
    k: u64,
}

impl InterpolationProblem {
    pub fn new(polygon: Polytope, m: u64, k: u64) -> Result<Self> {
        if polygon.ambient_dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: polygon.ambient_dim(),
            });
        }
        if !polygon.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        if m == 0 {
            return Err(Error::InvalidInput("dilation must be at least 1".into()));
        }
        Ok(InterpolationProblem { polygon, m, k })
    }

    pub fn polygon(&self) -> &Polytope {
        &self.polygon
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Lattice points of `mΔ` in lexicographic order (the columns).
    pub fn points(&self) -> Result<Vec<(i64, i64)>> {
        lattice_points(&self.polygon, self.m)?
            .iter()
            .map(|p| small_pair(p))
            .collect()
    }

    /// Functionals `(i, j)` with `i + j < k` in lexicographic order (the rows).
    pub fn functionals(&self) -> Vec<(u64, u64)> {
        let k = self.k;
        (0..k)
            .flat_map(|i| (0..k - i).map(move |j| (i, j)))
            .collect()
    }

    pub fn system(&self) -> Result<VanishingSystem> {
        Ok(VanishingSystem {
            rows: self.functionals(),
            cols: self.points()?,
        })
    }
}

pub(crate) fn small_pair(p: &[BigInt]) -> Result<(i64, i64)> {
    let conv = |x: &BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::InvalidInput("lattice point exceeds 64 bits".into()))
    };
    Ok((conv(&p[0])?, conv(&p[1])?))
}

/// The vanishing conditions without materialising the matrix: entry
/// `(i, j) x (a, b)` is `a^{↓i} b^{↓j}`.
#[derive(Clone, Debug)]
pub struct VanishingSystem {
    rows: Vec<(u64, u64)>,
    cols: Vec<(i64, i64)>,
}

impl VanishingSystem {
    pub fn new(rows: Vec<(u64, u64)>, cols: Vec<(i64, i64)>) -> Self {
        VanishingSystem { rows, cols }
    }

    pub fn rows(&self) -> &[(u64, u64)] {
        &self.rows
    }

    pub fn cols(&self) -> &[(i64, i64)] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> BigInt {
        let (i, j) = self.rows[r];
        let (a, b) = self.cols[c];
        falling(a, i) * falling(b, j)
    }

    /// Exact integer submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let data: Vec<BigInt> = rows
            .par_iter()
            .flat_map_iter(|&r| cols.iter().map(move |&c| self.entry(r, c)))
            .collect();
        IntMatrix::new(rows.len(), cols.len(), data).expect("shape")
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows.len()).collect();
        let cols: Vec<usize> = (0..self.cols.len()).collect();
        self.submatrix(&rows, &cols)
    }
}

impl ModularSource for VanishingSystem {
    fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    fn row_mod(&self, r: usize, p: u64, out: &mut [u64]) -> Result<()> {
        let (i, j) = self.rows[r];
        for (o, &(a, b)) in out.iter_mut().zip(&self.cols) {
            let x = falling_mod(a, i, p);
            *o = if x == 0 {
                0
            } else {
                ((x as u128 * falling_mod(b, j, p) as u128) % p as u128) as u64
            };
        }
        Ok(())
    }

    fn denominator_divisible_by(&self, _p: u64) -> bool {
        false
    }

    fn exact_integer_rows(&self) -> IntMatrix {
        self.to_int_matrix()
    }
}

/// Rows `(i, j)`, `i + j < k`, columns the lattice points of `mΔ`.
pub fn vanishing_matrix(p: &InterpolationProblem) -> Result<RatMatrix> {
    Ok(p.system()?.to_int_matrix().to_rat())
}

/// Dimension of the space of sections: the nullity of the vanishing system.
pub fn h0(p: &InterpolationProblem, mode: &RankMode) -> Result<usize> {
    nullity_of(&p.system()?, mode)
}

/// Result of the forced-coefficient test.
#[derive(Clone, Debug, PartialEq)]
pub enum ForcedVertexOutcome {
    Certified(Box<super::Certificate>),
    Refused {
        reason: String,
        /// Points other than the vertex where the functional is nonzero.
        offending: Vec<IntVec>,
    },
}

impl ForcedVertexOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, Self::Certified(_))
    }
}

/// Tests whether the functional `(i, j)` vanishes on every lattice point of
/// `mΔ + translation` except `vertex`, and not at `vertex`. If so every
/// section vanishing to order `k` has zero coefficient at `vertex`.
/// Translating by a monomial does not change the order at `e`.
pub fn forced_vertex_coefficient(
    p: &InterpolationProblem,
    translation: &[BigInt],
    vertex: &[BigInt],
    functional: (u64, u64),
) -> Result<ForcedVertexOutcome> {
    let (i, j) = functional;
    if i + j + 1 > p.k {
        return Err(Error::FunctionalOrderTooHigh {
            order: i + j,
            limit: p.k as i64 - 1,
        });
    }
    if translation.len() != 2 || vertex.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: translation.len().min(vertex.len()),
        });
    }
    let (tx, ty) = small_pair(translation)?;
    let target = small_pair(vertex)?;
    let points: Vec<(i64, i64)> = p
        .points()?
        .into_iter()
        .map(|(a, b)| (a + tx, b + ty))
        .collect();
    let translated = p
        .polygon
        .scaled(&BigRational::from_integer(BigInt::from(p.m)))
        .translated(&crate::num::to_rat(translation));
    let is_vertex = translated
        .vertices()
        .iter()
        .any(|v| v[0] == BigRational::from_integer(vertex[0].clone()) && v[1] == BigRational::from_integer(vertex[1].clone()));
    if !is_vertex {
        return Ok(ForcedVertexOutcome::Refused {
            reason: "the named point is not a vertex of the translated polygon".into(),
            offending: Vec::new(),
        });
    }
    let values: Vec<((i64, i64), BigInt)> = points
        .par_iter()
        .map(|&(a, b)| ((a, b), falling(a, i) * falling(b, j)))
        .collect();
    let offending: Vec<IntVec> = values
        .iter()
        .filter(|(pt, v)| *pt != target && !v.is_zero())
        .map(|((a, b), _)| vec![BigInt::from(*a), BigInt::from(*b)])
        .collect();
    let at_vertex = values
        .iter()
        .find(|(pt, _)| *pt == target)
        .map(|(_, v)| v.clone())
        .unwrap_or_default();
    if !offending.is_empty() {
        return Ok(ForcedVertexOutcome::Refused {
            reason: format!("functional is nonzero at {} other points", offending.len()),
            offending,
        });
    }
    if at_vertex.is_zero() {
        return Ok(ForcedVertexOutcome::Refused {
            reason: "functional vanishes at the vertex".into(),
            offending,
        });
    }
    Ok(ForcedVertexOutcome::Certified(Box::new(super::certificate::forced_vertex(
        p,
        translation,
        vertex,
        functional,
        &at_vertex,
        points.len(),
    ))))
}
