//! Torus-invariant divisors on a fan: class groups, polytopes, positivity
//! and section rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{fan_predicates, Fan};
use crate::linalg::{
    drop_zero_rows, hermite_normal_form, integer_kernel_saturated, smith_normal_form, IntMatrix,
};
use crate::num::{dot, dot_rat, primitive, to_rat, IntVec, RatVec};
use crate::polyhedra::{hilbert_basis, hilbert_basis_in_lattice, Cone, Polytope};

/// `D = sum a_i D_i`, one coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToricDivisor {
    coefficients: IntVec,
}

impl ToricDivisor {
    pub fn new(coefficients: IntVec) -> Self {
        ToricDivisor { coefficients }
    }

    pub fn from_i64(a: &[i64]) -> Self {
        Self::new(crate::num::ivec(a))
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![BigInt::zero(); n])
    }

    /// The prime divisor `D_i` among `n` rays.
    pub fn prime(n: usize, i: usize) -> Self {
        let mut a = vec![BigInt::zero(); n];
        a[i] = BigInt::one();
        Self::new(a)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ToricDivisor) -> ToricDivisor {
        Self::new(crate::num::add(&self.coefficients, &other.coefficients))
    }

    pub fn scale(&self, k: &BigInt) -> ToricDivisor {
        Self::new(crate::num::scale(&self.coefficients, k))
    }
}

/// `Cl = Z^rank ⊕ ⊕ Z/t_j` with the class of each prime divisor.
///
/// Row `i` of `degree_map` is `deg(x_i) = [D_i]`: the free coordinates come
/// first, then one coordinate per torsion factor reduced into `[0, t_j)`.
/// The free basis is normalised so that the free degree columns are in
/// Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    rank: usize,
    torsion: Vec<BigInt>,
    degree_map: IntMatrix,
}

impl ClassGroup {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn degree_map(&self) -> &IntMatrix {
        &self.degree_map
    }

    pub fn num_variables(&self) -> usize {
        self.degree_map.rows()
    }

    pub fn degree(&self, i: usize) -> IntVec {
        self.degree_map.row(i).to_vec()
    }

    /// Free parts of all degrees.
    pub fn free_degrees(&self) -> Vec<IntVec> {
        (0..self.num_variables())
            .map(|i| self.degree_map.row(i)[..self.rank].to_vec())
            .collect()
    }

    pub fn class_of(&self, d: &ToricDivisor) -> Result<IntVec> {
        if d.len() != self.num_variables() {
            return Err(Error::DimensionMismatch {
                expected: self.num_variables(),
                found: d.len(),
            });
        }
        let mut c = vec![BigInt::zero(); self.degree_map.cols()];
        for (i, a) in d.coefficients().iter().enumerate() {
            for (x, y) in c.iter_mut().zip(self.degree_map.row(i)) {
                *x += a * y;
            }
        }
        for (j, t) in self.torsion.iter().enumerate() {
            let k = self.rank + j;
            c[k] = c[k].mod_floor(t);
        }
        Ok(c)
    }

    pub fn is_zero_class(&self, d: &ToricDivisor) -> Result<bool> {
        Ok(self.class_of(d)?.iter().all(Zero::is_zero))
    }

    /// Some torus-invariant divisor whose class is `class`.
    pub fn representative(&self, class: &[BigInt]) -> Result<ToricDivisor> {
        let cols = self.degree_map.cols();
        if class.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: class.len(),
            });
        }
        // solve [Q^T | diag(0, torsion)] x = class over Z
        let r = self.num_variables();
        let nt = self.torsion.len();
        let mut a = IntMatrix::zeros(cols, r + nt);
        for i in 0..r {
            for k in 0..cols {
                a[(k, i)] = self.degree_map[(i, k)].clone();
            }
        }
        for (j, t) in self.torsion.iter().enumerate() {
            a[(self.rank + j, r + j)] = t.clone();
        }
        let s = smith_normal_form(&a);
        let b = s.u.mul_vec(class);
        let diag = s.diagonal();
        let mut y = vec![BigInt::zero(); r + nt];
        for (k, bk) in b.iter().enumerate() {
            let dk = diag.get(k).cloned().unwrap_or_else(BigInt::zero);
            if dk.is_zero() {
                if !bk.is_zero() {
                    return Err(Error::InvalidInput("class is not in the image".into()));
                }
            } else if !bk.is_multiple_of(&dk) {
                return Err(Error::InvalidInput("class is not in the image".into()));
            } else {
                y[k] = bk / &dk;
            }
        }
        let x = s.v.mul_vec(&y);
        Ok(ToricDivisor::new(x[..r].to_vec()))
    }
}

/// The class group as the cokernel of `M -> Z^r, m -> (<m, v_i>)_i`.
pub fn class_group(f: &Fan) -> Result<ClassGroup> {
    if !f.rays_span() {
        return Err(Error::RaysDoNotSpan);
    }
    let r = f.rays().len();
    let d = f.lattice_dim();
    let s = smith_normal_form(&f.ray_matrix());
    // U R V = D, so [e_i] = U e_i in Z^r / im D
    let diag = s.diagonal();
    let torsion_rows: Vec<usize> = (0..d).filter(|&i| diag[i] > BigInt::one()).collect();
    let free_rows: Vec<usize> = (d..r).collect();
    let w = s.u.select_rows(&free_rows);
    let (w, _) = hermite_normal_form(&w);
    let rank = free_rows.len();
    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| diag[i].clone()).collect();
    let cols = rank + torsion.len();
    let mut data = Vec::with_capacity(r * cols);
    for i in 0..r {
        for k in 0..rank {
            data.push(w[(k, i)].clone());
        }
        for (j, &t) in torsion_rows.iter().enumerate() {
            data.push(s.u[(t, i)].mod_floor(&torsion[j]));
        }
    }
    Ok(ClassGroup {
        rank,
        torsion,
        degree_map: IntMatrix::new(r, cols, data)?,
    })
}

/// `div(chi^m) = sum <m, v_i> D_i`.
pub fn principal_divisor(f: &Fan, m: &[BigInt]) -> Result<ToricDivisor> {
    if m.len() != f.lattice_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.lattice_dim(),
            found: m.len(),
        });
    }
    Ok(ToricDivisor::new(f.rays().iter().map(|v| dot(m, v)).collect()))
}

fn check_divisor(f: &Fan, d: &ToricDivisor) -> Result<()> {
    if d.len() != f.rays().len() {
        return Err(Error::DimensionMismatch {
            expected: f.rays().len(),
            found: d.len(),
        });
    }
    Ok(())
}

fn require_complete(f: &Fan) -> Result<crate::fan::FanPredicates> {
    let p = fan_predicates(f)?;
    if !p.complete {
        return Err(Error::NotComplete);
    }
    Ok(p)
}

/// `Δ_D = {m : <m, v_i> >= -a_i}` for a complete fan; possibly empty.
pub fn divisor_polytope(f: &Fan, d: &ToricDivisor) -> Result<Polytope> {
    check_divisor(f, d)?;
    require_complete(f)?;
    Ok(polytope_of(f, d))
}

fn polytope_of(f: &Fan, d: &ToricDivisor) -> Polytope {
    let dim = f.lattice_dim();
    // homogenise: <m, v_i> + t a_i >= 0, t >= 0
    let mut facets: Vec<IntVec> = f
        .rays()
        .iter()
        .zip(d.coefficients())
        .map(|(v, a)| {
            let mut row = v.clone();
            row.push(a.clone());
            row
        })
        .collect();
    let mut height = vec![BigInt::zero(); dim + 1];
    height[dim] = BigInt::one();
    facets.push(height);
    let cone = Cone::from_facets(&facets, &[], dim + 1).expect("dimensions agree");
    let verts: Vec<RatVec> = cone
        .rays()
        .iter()
        .filter(|r| r[dim].is_positive())
        .map(|r| {
            r[..dim]
                .iter()
                .map(|x| BigRational::new(x.clone(), r[dim].clone()))
                .collect()
        })
        .collect();
    Polytope::from_points(&verts, dim).expect("dimensions agree")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positivity {
    pub basepoint_free: bool,
    pub nef: bool,
    pub ample: bool,
}

/// The unique `m_σ` with `<m_σ, v_i> = -a_i` on the rays of each maximal
/// cone of a complete simplicial fan.
pub fn cartier_data(f: &Fan, d: &ToricDivisor) -> Result<Vec<RatVec>> {
    check_divisor(f, d)?;
    let p = require_complete(f)?;
    if !p.simplicial {
        return Err(Error::NotSimplicial);
    }
    Ok(f.max_cones()
        .iter()
        .map(|c| {
            let vs = f.ray_matrix().select_rows(c).to_rat();
            let rhs: RatVec = c.iter().map(|&i| BigRational::from_integer(-&d.coefficients()[i])).collect();
            let inv = vs.inverse().expect("full-dimensional simplicial cone");
            inv.mul_vec(&rhs)
        })
        .collect())
}

/// Positivity of `D` on a complete simplicial fan via the local data `m_σ`.
/// Ample is reported only for Cartier divisors (integral `m_σ`), so that
/// ample implies basepoint free. Strictness of `<m_σ, v_j> > -a_j` off `σ`
/// is equivalent to `Δ_D` having this fan as its normal fan.
pub fn positivity(f: &Fan, d: &ToricDivisor) -> Result<Positivity> {
    let ms = cartier_data(f, d)?;
    let a = d.coefficients();
    let mut nef = true;
    let mut strict = true;
    for (c, m) in f.max_cones().iter().zip(&ms) {
        for (j, v) in f.rays().iter().enumerate() {
            if c.contains(&j) {
                continue;
            }
            let val = dot_rat(v, m) + BigRational::from_integer(a[j].clone());
            if val.is_negative() {
                nef = false;
            }
            if !val.is_positive() {
                strict = false;
            }
        }
    }
    let integral = ms.iter().all(|m| m.iter().all(|x| x.is_integer()));
    let basepoint_free = nef && integral;
    Ok(Positivity {
        basepoint_free,
        nef,
        ample: basepoint_free && strict,
    })
}

/// The nef cone in `Cl_Q` (free part), from the local data `m_σ` as linear
/// functions of the coefficients.
pub fn nef_cone(f: &Fan) -> Result<Cone> {
    let cl = class_group(f)?;
    let p = require_complete(f)?;
    if !p.simplicial {
        return Err(Error::NotSimplicial);
    }
    let r = f.rays().len();
    // m_σ(a) = -V_σ^{-1} a_σ; constraint <m_σ(a), v_j> + a_j >= 0
    let mut ineqs: Vec<IntVec> = Vec::new();
    for c in f.max_cones() {
        let inv = f.ray_matrix().select_rows(c).to_rat().inverse().expect("simplicial");
        for (j, v) in f.rays().iter().enumerate() {
            if c.contains(&j) {
                continue;
            }
            let mut row = vec![BigRational::zero(); r];
            row[j] = BigRational::one();
            // <v, -inv a_σ> = -sum_k (v^T inv)_k a_{σ_k}
            for (k, &ck) in c.iter().enumerate() {
                let coeff: BigRational = (0..v.len())
                    .map(|l| BigRational::from_integer(v[l].clone()) * &inv[(l, k)])
                    .fold(BigRational::zero(), |s, t| s + t);
                row[ck] -= coeff;
            }
            ineqs.push(crate::num::clear_denominators(&row));
        }
    }
    let ineqs: Vec<IntVec> = ineqs.into_iter().filter(|v| !crate::num::is_zero_vec(v)).collect();
    let coeff_cone = Cone::from_facets(&ineqs, &[], r)?;
    let free = cl.free_degrees();
    let image: Vec<IntVec> = coeff_cone
        .generators()
        .iter()
        .map(|a| {
            (0..cl.rank())
                .map(|k| a.iter().zip(&free).map(|(ai, w)| ai * &w[k]).sum())
                .collect()
        })
        .collect();
    let nonzero: Vec<IntVec> = image.into_iter().filter(|v: &IntVec| !crate::num::is_zero_vec(v)).collect();
    if nonzero.is_empty() {
        return Ok(Cone::zero(cl.rank()));
    }
    Cone::from_generators(&nonzero, cl.rank())
}

/// `D1 · D2` on a complete toric surface for nef divisors, as the mixed area
/// `area(Δ_{D1+D2}) - area(Δ_{D1}) - area(Δ_{D2})`.
pub fn intersection_number_nef_surface(
    f: &Fan,
    d1: &ToricDivisor,
    d2: &ToricDivisor,
) -> Result<BigRational> {
    if f.lattice_dim() != 2 {
        return Err(Error::NotSurface);
    }
    check_divisor(f, d1)?;
    check_divisor(f, d2)?;
    require_complete(f)?;
    for d in [d1, d2] {
        if !positivity(f, d)?.nef {
            return Err(Error::NotNef);
        }
    }
    let area = |d: &ToricDivisor| -> Result<BigRational> {
        let p = polytope_of(f, d);
        if p.is_empty() {
            Ok(BigRational::zero())
        } else {
            p.area_2d()
        }
    };
    Ok(area(&d1.add(d2))? - area(d1)? - area(d2)?)
}

/// For each maximal cone the indices of the rays outside it; the monomials
/// `prod_{i in set} x_i` generate the irrelevant ideal.
pub fn irrelevant_monomials(f: &Fan) -> Vec<Vec<usize>> {
    let r = f.rays().len();
    f.max_cones()
        .iter()
        .map(|c| (0..r).filter(|i| !c.contains(i)).collect())
        .collect()
}

/// A generator of a multisection ring: lattice point `m` in degree `t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SectionGenerator {
    pub t: IntVec,
    pub m: IntVec,
}

pub const MAX_SECTION_RING_DIM: usize = 4;

/// Minimal generators of `R(X; D_1, ..., D_s)` as the Hilbert basis of
/// `{(m, t) : t >= 0, <m, v_i> + sum_j t_j a_{ji} >= 0}`, sorted by `(t, m)`.
pub fn section_ring_generators(f: &Fan, divisors: &[ToricDivisor]) -> Result<Vec<SectionGenerator>> {
    let d = f.lattice_dim();
    let s = divisors.len();
    if d + s > MAX_SECTION_RING_DIM {
        return Err(Error::DimensionTooLarge {
            found: d + s,
            max: MAX_SECTION_RING_DIM,
        });
    }
    for dv in divisors {
        check_divisor(f, dv)?;
    }
    let mut facets: Vec<IntVec> = Vec::new();
    for (i, v) in f.rays().iter().enumerate() {
        let mut row = v.clone();
        row.extend(divisors.iter().map(|dv| dv.coefficients()[i].clone()));
        facets.push(row);
    }
    for j in 0..s {
        let mut row = vec![BigInt::zero(); d + s];
        row[d + j] = BigInt::one();
        facets.push(row);
    }
    let facets: Vec<IntVec> = facets.into_iter().filter(|v| !crate::num::is_zero_vec(v)).collect();
    let cone = Cone::from_facets(&facets, &[], d + s)?;
    let mut out: Vec<SectionGenerator> = hilbert_basis(&cone)?
        .into_iter()
        .map(|v| SectionGenerator {
            m: v[..d].to_vec(),
            t: v[d..].to_vec(),
        })
        .collect();
    out.sort();
    Ok(out)
}

pub const MAX_VERONESE_VARIABLES: usize = 4;

/// Exponent vectors generating `Q^{-1}(H) ∩ Z^r_{>=0}`, optionally with the
/// degree further restricted to the sublattice spanned by the rows of
/// `lattice`. Sorted lexicographically.
pub fn veronese_generators(q: &IntMatrix, h: &Cone, lattice: Option<&IntMatrix>) -> Result<Vec<IntVec>> {
    let (k, r) = (q.rows(), q.cols());
    if h.ambient_dim() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: h.ambient_dim(),
        });
    }
    if r > MAX_VERONESE_VARIABLES {
        return Err(Error::DimensionTooLarge {
            found: r,
            max: MAX_VERONESE_VARIABLES,
        });
    }
    let qt = q.transpose();
    let pull = |v: &IntVec| -> Option<IntVec> {
        let w = qt.mul_vec(v);
        (!crate::num::is_zero_vec(&w)).then(|| primitive(&w))
    };
    let mut facets: Vec<IntVec> = (0..r)
        .map(|i| (0..r).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    facets.extend(h.facets().iter().filter_map(pull));
    let eqs: Vec<IntVec> = h.equations().iter().filter_map(pull).collect();
    let cone = Cone::from_facets(&facets, &eqs, r)?;
    match lattice {
        None => hilbert_basis(&cone),
        Some(l) => {
            if l.cols() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: l.cols(),
                });
            }
            let pre = preimage_lattice(q, l)?;
            hilbert_basis_in_lattice(&cone, &pre)
        }
    }
}

/// Basis (rows) of `{x in Z^r : Q x in L}` where `L` is spanned by the rows of `l`.
fn preimage_lattice(q: &IntMatrix, l: &IntMatrix) -> Result<IntMatrix> {
    let (k, r) = (q.rows(), q.cols());
    let s = l.rows();
    // kernel of [Q | -L^T] projected to the first r coordinates
    let mut data = Vec::with_capacity(k * (r + s));
    for i in 0..k {
        data.extend(q.row(i).iter().cloned());
        data.extend((0..s).map(|j| -&l[(j, i)]));
    }
    let big = IntMatrix::new(k, r + s, data)?;
    let ker = integer_kernel_saturated(&big);
    let proj = ker.select_cols(&(0..r).collect::<Vec<_>>());
    Ok(drop_zero_rows(&hermite_normal_form(&proj).0))
}

/// Integral point helper used by property checks: `Δ_{D + div(chi^m)} = Δ_D - m`.
pub fn translate_polytope(p: &Polytope, m: &[BigInt]) -> Polytope {
    let shift: RatVec = to_rat(m).into_iter().map(|x| -x).collect();
    p.translated(&shift)
}
