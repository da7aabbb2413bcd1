//! Effective and moving cones, Mori chambers and the Cox-ring test for
//! graded polynomial rings.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divisors::ClassGroup;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel_saturated, smith_normal_form, IntMatrix};
use crate::num::{dot, dot_rat, is_zero_vec, IntVec, RatVec};
use crate::polyhedra::Cone;

/// A grading of `C[x_1, ..., x_r]` by `A = Z^k ⊕ ⊕ Z/t_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingSpec {
    free_rank: usize,
    torsion: Vec<BigInt>,
    degrees: Vec<IntVec>,
}

impl GradingSpec {
    /// Degrees have `free_rank + torsion.len()` entries; torsion parts are
    /// reduced into `[0, t_j)`.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>, degrees: Vec<IntVec>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyInput);
        }
        if torsion.iter().any(|t| t <= &BigInt::one()) {
            return Err(Error::InvalidInput("torsion invariants must exceed 1".into()));
        }
        let width = free_rank + torsion.len();
        let mut degrees = degrees;
        for d in &mut degrees {
            if d.len() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    found: d.len(),
                });
            }
            for (j, t) in torsion.iter().enumerate() {
                d[free_rank + j] = d[free_rank + j].mod_floor(t);
            }
        }
        Ok(GradingSpec {
            free_rank,
            torsion,
            degrees,
        })
    }

    /// Free grading whose degrees are the columns of `m`.
    pub fn from_columns(m: &IntMatrix) -> Result<Self> {
        Self::new(m.rows(), Vec::new(), (0..m.cols()).map(|c| m.column(c)).collect())
    }

    pub fn from_i64_columns(rows: &[&[i64]]) -> Result<Self> {
        Self::from_columns(&IntMatrix::from_i64_rows(rows))
    }

    pub fn from_class_group(cl: &ClassGroup) -> Result<Self> {
        let degrees = (0..cl.num_variables()).map(|i| cl.degree(i)).collect();
        Self::new(cl.rank(), cl.torsion().to_vec(), degrees)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn degrees(&self) -> &[IntVec] {
        &self.degrees
    }

    pub fn num_variables(&self) -> usize {
        self.degrees.len()
    }

    /// Images of the degrees in `A_Q`.
    pub fn free_degrees(&self) -> Vec<IntVec> {
        self.degrees
            .iter()
            .map(|d| d[..self.free_rank].to_vec())
            .collect()
    }

    /// `cone(w_i : i in I)` in `A_Q`.
    pub fn cone_of(&self, idx: &[usize]) -> Cone {
        let gens: Vec<IntVec> = idx
            .iter()
            .map(|&i| self.degrees[i][..self.free_rank].to_vec())
            .filter(|v| !is_zero_vec(v))
            .collect();
        if gens.is_empty() {
            return Cone::zero(self.free_rank);
        }
        Cone::from_generators(&gens, self.free_rank).expect("degree dimensions")
    }

    fn all_but(&self, i: usize) -> Vec<usize> {
        (0..self.num_variables()).filter(|&j| j != i).collect()
    }
}

/// `λ(w)` together with the inclusion-minimal index sets `I` with `w ∈ C_I`.
/// Every `I` with `w ∈ C_I` contains one of them, and since `C_J ⊆ C_I` for
/// `J ⊆ I` the minimal sets already cut out `λ(w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chamber {
    pub cone: Cone,
    pub supports: Vec<Vec<usize>>,
    pub full_dimensional: bool,
}

pub fn effective_cone(g: &GradingSpec) -> Cone {
    g.cone_of(&(0..g.num_variables()).collect::<Vec<_>>())
}

/// `Mov = ∩_i cone(w_j : j != i)`.
pub fn moving_cone(g: &GradingSpec) -> Result<Cone> {
    let r = g.num_variables();
    if r < 2 {
        return Err(Error::TooFewGenerators);
    }
    let cones: Vec<Cone> = (0..r).map(|i| g.cone_of(&g.all_but(i))).collect();
    Cone::intersect_all(&cones, g.free_rank)
}

fn check_class(g: &GradingSpec, w: &[num_rational::BigRational]) -> Result<()> {
    if w.len() != g.free_rank {
        return Err(Error::DimensionMismatch {
            expected: g.free_rank,
            found: w.len(),
        });
    }
    if !effective_cone(g).contains_rat(w) {
        return Err(Error::NotEffective);
    }
    Ok(())
}

/// Inclusion-minimal `I` with `w ∈ C_I`, sorted. These are linearly
/// independent sets of at most `k` nonzero degrees.
pub fn semistable_supports(g: &GradingSpec, w: &[num_rational::BigRational]) -> Result<Vec<Vec<usize>>> {
    check_class(g, w)?;
    Ok(minimal_supports(g, w))
}

fn minimal_supports(g: &GradingSpec, w: &[num_rational::BigRational]) -> Vec<Vec<usize>> {
    let k = g.free_rank;
    if w.iter().all(Zero::is_zero) {
        return vec![Vec::new()];
    }
    let free = g.free_degrees();
    let nonzero: Vec<usize> = (0..free.len()).filter(|&i| !is_zero_vec(&free[i])).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 1..=k {
        let mut subset = Vec::with_capacity(size);
        subsets(&nonzero, size, 0, &mut subset, &mut |s| {
            if found.iter().any(|f| f.iter().all(|x| s.contains(x))) {
                return;
            }
            let rows: Vec<IntVec> = s.iter().map(|&i| free[i].clone()).collect();
            if IntMatrix::from_rows(&rows, k).expect("rows").rank() != size {
                return;
            }
            if g.cone_of(s).contains_rat(w) {
                found.push(s.to_vec());
            }
        });
    }
    found.sort();
    found
}

fn subsets(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        subsets(items, size, i + 1, cur, f);
        cur.pop();
    }
}

/// `λ(w) = ∩_{w ∈ C_I} C_I`. Classes on walls give lower-dimensional chambers.
pub fn mori_chamber(g: &GradingSpec, w: &[num_rational::BigRational]) -> Result<Chamber> {
    check_class(g, w)?;
    let supports = minimal_supports(g, w);
    let cones: Vec<Cone> = supports.iter().map(|s| g.cone_of(s)).collect();
    let cone = Cone::intersect_all(&cones, g.free_rank)?;
    let full_dimensional = cone.is_full_dimensional();
    Ok(Chamber {
        cone,
        supports,
        full_dimensional,
    })
}

pub const MAX_CHAMBER_RANK: usize = 3;

/// Full-dimensional Mori chambers covering the effective cone, ordered by
/// their (sorted) ray lists. Empty when the effective cone is not
/// full-dimensional.
pub fn enumerate_chambers(g: &GradingSpec) -> Result<Vec<Chamber>> {
    let k = g.free_rank;
    if k > MAX_CHAMBER_RANK {
        return Err(Error::RankTooLarge {
            found: k,
            max: MAX_CHAMBER_RANK,
        });
    }
    let eff = effective_cone(g);
    if k == 0 || !eff.is_full_dimensional() {
        return Ok(Vec::new());
    }
    let mut cells = vec![eff];
    for h in arrangement(g) {
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            if splits(&c, &h) {
                let opp = crate::num::neg(&h);
                next.push(c.intersect(&Cone::from_facets(std::slice::from_ref(&h), &[], k)?)?);
                next.push(c.intersect(&Cone::from_facets(&[opp], &[], k)?)?);
            } else {
                next.push(c);
            }
        }
        cells = next;
    }
    let chambers: Vec<Chamber> = cells
        .par_iter()
        .map(|c| {
            let w = c.relative_interior_point();
            mori_chamber(g, &w)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Chamber> = Vec::new();
    for ch in chambers {
        if !out.iter().any(|o| o.cone == ch.cone) {
            out.push(ch);
        }
    }
    out.sort_by(|a, b| a.cone.rays().cmp(b.cone.rays()));
    Ok(out)
}

/// Primitive normals of the hyperplanes spanned by `k - 1` independent
/// degrees, deduplicated up to sign.
fn arrangement(g: &GradingSpec) -> Vec<IntVec> {
    let k = g.free_rank;
    let free = g.free_degrees();
    let idx: Vec<usize> = (0..free.len()).filter(|&i| !is_zero_vec(&free[i])).collect();
    let mut normals: BTreeSet<IntVec> = BTreeSet::new();
    let mut cur = Vec::new();
    subsets(&idx, k - 1, 0, &mut cur, &mut |s| {
        let rows: Vec<IntVec> = s.iter().map(|&i| free[i].clone()).collect();
        let m = IntMatrix::from_rows(&rows, k).expect("rows");
        let ker = integer_kernel_saturated(&m);
        if ker.rows() == 1 {
            let mut n = ker.row(0).to_vec();
            if n.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                n = crate::num::neg(&n);
            }
            normals.insert(n);
        }
    });
    normals.into_iter().collect()
}

/// Whether the hyperplane `h^⊥` meets the interior of the full-dimensional cone `c`.
fn splits(c: &Cone, h: &[BigInt]) -> bool {
    let vals: Vec<BigInt> = c.rays().iter().map(|r| dot(h, r)).collect();
    let lin = c.lineality().iter().any(|l| !dot(h, l).is_zero());
    lin || (vals.iter().any(Signed::is_positive) && vals.iter().any(Signed::is_negative))
}

/// Which condition of the Cox-ring criterion fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum CoxWitness {
    /// The degrees other than `dropped` do not generate the grading group.
    NotGenerated { dropped: usize },
    /// The interiors of the two drop-one cones are disjoint.
    DisjointInteriors { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxVerdict {
    pub is_cox: bool,
    pub witness: Option<CoxWitness>,
}

/// The two conditions: any `r - 1` degrees generate `A`, and the interiors
/// of any two drop-one cones meet.
pub fn is_cox_grading(g: &GradingSpec) -> CoxVerdict {
    let r = g.num_variables();
    let fail = |w| CoxVerdict {
        is_cox: false,
        witness: Some(w),
    };
    for i in 0..r {
        if !generates(g, &g.all_but(i)) {
            return fail(CoxWitness::NotGenerated { dropped: i });
        }
    }
    let cones: Vec<Cone> = (0..r).map(|i| g.cone_of(&g.all_but(i))).collect();
    for i in 0..r {
        for j in i..r {
            let meet = cones[i].intersect(&cones[j]).expect("same rank");
            if !meet.is_full_dimensional() {
                return fail(CoxWitness::DisjointInteriors { first: i, second: j });
            }
        }
    }
    CoxVerdict {
        is_cox: true,
        witness: None,
    }
}

/// Whether the degrees indexed by `idx` generate `A`: together with the
/// torsion relations they must generate `Z^{k+t}`.
fn generates(g: &GradingSpec, idx: &[usize]) -> bool {
    let width = g.free_rank + g.torsion.len();
    if width == 0 {
        return true;
    }
    let mut cols: Vec<IntVec> = idx.iter().map(|&i| g.degrees[i].clone()).collect();
    for (j, t) in g.torsion.iter().enumerate() {
        let mut v = vec![BigInt::zero(); width];
        v[g.free_rank + j] = t.clone();
        cols.push(v);
    }
    if cols.is_empty() {
        return false;
    }
    let m = IntMatrix::from_rows(&cols, width).expect("columns");
    let inv = smith_normal_form(&m).invariant_factors();
    inv.len() == width && inv.iter().all(One::is_one)
}

/// Whether `w` lies in the relative interior of `c` (used by property checks).
pub fn in_relative_interior(c: &Cone, w: &RatVec) -> bool {
    c.contains_rat(w) && c.facets().iter().all(|f| dot_rat(f, w).is_positive())
}
