use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::Cone;
use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, saturate_rows, IntMatrix};
use crate::num::{dot, primitive, IntVec};

/// Largest simplicial-piece index we are willing to enumerate.
pub const MAX_SIMPLEX_DETERMINANT: u64 = 1_000_000;

/// The Hilbert basis of `C ∩ Z^d` for a pointed cone, sorted lexicographically.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<IntVec>> {
    let d = c.ambient_dim();
    hilbert_basis_in_lattice(c, &IntMatrix::identity(d))
}

/// The Hilbert basis of `C ∩ L` where `L` is the lattice spanned by the
/// (linearly independent) rows of `lattice`.
pub fn hilbert_basis_in_lattice(c: &Cone, lattice: &IntMatrix) -> Result<Vec<IntVec>> {
    if lattice.cols() != c.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: c.ambient_dim(),
            found: lattice.cols(),
        });
    }
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    if lattice.rank() != lattice.rows() {
        return Err(Error::InvalidInput("lattice rows must be independent".into()));
    }
    if c.is_zero() || lattice.rows() == 0 {
        return Ok(Vec::new());
    }
    // pull back to lattice coordinates, then restrict to the span of the cone
    let pulled = pullback(c, lattice);
    if pulled.is_zero() {
        return Ok(Vec::new());
    }
    let span = saturate_rows(&IntMatrix::from_rows(pulled.rays(), lattice.rows())?);
    let basis = span.mul(lattice)?;
    let full = pullback(c, &basis);
    debug_assert!(full.is_full_dimensional());
    let local = hilbert_full(&full)?;
    let mut out: Vec<IntVec> = local
        .iter()
        .map(|y| basis.transpose().mul_vec(y))
        .collect();
    out.sort();
    Ok(out)
}

/// `{y : y * B in C}` for a basis matrix `B` with rows in the ambient space.
fn pullback(c: &Cone, b: &IntMatrix) -> Cone {
    let k = b.rows();
    let map = |v: &IntVec| -> Option<IntVec> {
        let w = b.mul_vec(v);
        (!w.iter().all(Zero::is_zero)).then(|| primitive(&w))
    };
    let facets: Vec<IntVec> = c.facets().iter().filter_map(map).collect();
    let eqs: Vec<IntVec> = c.equations().iter().filter_map(map).collect();
    Cone::from_facets(&facets, &eqs, k).expect("pullback dimensions")
}

/// Hilbert basis of a full-dimensional pointed cone in `Z^k`.
fn hilbert_full(c: &Cone) -> Result<Vec<IntVec>> {
    let k = c.ambient_dim();
    let rays = c.rays().to_vec();
    let simplices = triangulate(&rays, &(0..rays.len()).collect::<Vec<_>>());
    let pieces = simplices
        .par_iter()
        .map(|s| {
            let g: Vec<IntVec> = s.iter().map(|&i| rays[i].clone()).collect();
            parallelepiped_points(&g, k)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut candidates: BTreeSet<IntVec> = rays.iter().cloned().collect();
    for p in pieces {
        candidates.extend(p);
    }
    // grade by a strictly positive functional so only lower elements can divide
    let grade = c.dual().interior_lattice_point();
    let mut graded: Vec<(BigInt, IntVec)> = candidates
        .into_iter()
        .map(|v| (dot(&grade, &v), v))
        .collect();
    graded.sort();
    let keep: Vec<bool> = graded
        .par_iter()
        .map(|(h, x)| {
            !graded
                .iter()
                .take_while(|(g, _)| g < h)
                .any(|(_, y)| c.contains(&crate::num::sub(x, y)))
        })
        .collect();
    Ok(graded
        .into_iter()
        .zip(keep)
        .filter_map(|((_, v), k)| k.then_some(v))
        .collect())
}

/// Pulling triangulation of the cone spanned by `rays[idx]`; returns index
/// sets of simplicial cones covering it.
fn triangulate(rays: &[IntVec], idx: &[usize]) -> Vec<Vec<usize>> {
    let dim = rays[0].len();
    let gens: Vec<IntVec> = idx.iter().map(|&i| rays[i].clone()).collect();
    let cone = Cone::from_generators(&gens, dim).expect("nonzero rays");
    let extreme: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&i| cone.rays().contains(&rays[i]))
        .collect();
    if extreme.len() == cone.dim() {
        return vec![extreme];
    }
    let apex = extreme[0];
    let mut out = Vec::new();
    for f in cone.facets() {
        if dot(f, &rays[apex]).is_zero() {
            continue;
        }
        let face: Vec<usize> = extreme
            .iter()
            .copied()
            .filter(|&i| dot(f, &rays[i]).is_zero())
            .collect();
        for mut s in triangulate(rays, &face) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the
/// rows of `g` (a basis of `Q^k`).
fn parallelepiped_points(g: &[IntVec], k: usize) -> Result<Vec<IntVec>> {
    let gm = IntMatrix::from_rows(g, k)?;
    let det = gm.determinant()?;
    let n = det.abs();
    if n > BigInt::from(MAX_SIMPLEX_DETERMINANT) {
        return Err(Error::DeterminantTooLarge(n.to_string()));
    }
    if n.is_one() {
        return Ok(Vec::new());
    }
    // adj = det * G^{-1}, so x * adj = det * (coordinates of x in basis g)
    let inv = gm.to_rat().inverse().expect("nonsingular simplex");
    let sign = if det.is_negative() { -BigInt::one() } else { BigInt::one() };
    let adj: Vec<IntVec> = (0..k)
        .map(|r| {
            (0..k)
                .map(|c| (&inv[(r, c)] * BigRational::from_integer(n.clone())).to_integer() * &sign)
                .collect()
        })
        .collect();
    // coset representatives of Z^k / (row lattice of G) from its HNF diagonal
    let (h, _) = hermite_normal_form(&gm);
    let bounds: Vec<BigInt> = (0..k).map(|i| h[(i, i)].clone()).collect();
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); k];
    let mut coeffs = vec![BigInt::zero(); k];
    loop {
        // advance odometer on x, maintaining coeffs = x * adj
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            x[i] += 1;
            for (c, a) in coeffs.iter_mut().zip(&adj[i]) {
                *c += a;
            }
            if x[i] < bounds[i] {
                break;
            }
            for (c, a) in coeffs.iter_mut().zip(&adj[i]) {
                *c -= a * &x[i];
            }
            x[i] = BigInt::zero();
            i += 1;
        }
        let mut p = vec![BigInt::zero(); k];
        for (c, gi) in coeffs.iter().zip(g) {
            let r = c.mod_floor(&n);
            if r.is_zero() {
                continue;
            }
            for (pj, gij) in p.iter_mut().zip(gi) {
                *pj += &r * gij;
            }
        }
        let p: IntVec = p.into_iter().map(|v| v / &n).collect();
        out.push(p);
    }
}
