//! Double description for `{x : <a, x> >= 0 (a in ineqs), <e, x> = 0 (e in eqs)}`.
//!
//! Constraints are inserted one at a time. Lineality directions are resolved
//! first; otherwise rays are split by sign and adjacent positive/negative
//! pairs, detected by the rank of their common tight constraints, are
//! combined into new rays.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{exact_rank, saturate_rows, IntMatrix};
use crate::num::{dot, is_zero_vec, primitive, IntVec};

#[derive(Clone, Debug)]
struct Ray {
    v: IntVec,
    tight: Vec<usize>,
}

pub(crate) struct DdOutput {
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> IntVec {
    // a*x - b*y
    let v: IntVec = x.iter().zip(y).map(|(p, q)| a * p - b * q).collect();
    primitive(&v)
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn double_description(dim: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> DdOutput {
    let mut lineality: Vec<IntVec> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<IntVec> = Vec::new();

    let constraints = eqs
        .iter()
        .map(|e| (e, true))
        .chain(ineqs.iter().map(|a| (a, false)));

    for (a, is_eq) in constraints {
        debug_assert_eq!(a.len(), dim);
        if is_zero_vec(a) {
            continue;
        }
        let idx = processed.len();
        processed.push(a.clone());

        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                let s = dot(a, l);
                if !s.is_zero() {
                    *l = combine(&s0, l, &s, &l0);
                }
            }
            for r in rays.iter_mut() {
                let s = dot(a, &r.v);
                if !s.is_zero() {
                    r.v = combine(&s0, &r.v, &s, &l0);
                }
                r.tight.push(idx);
            }
            if !is_eq {
                rays.push(Ray {
                    v: l0,
                    tight: (0..idx).collect(),
                });
            }
            continue;
        }

        let free_dim = dim - lineality.len();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for r in rays.drain(..) {
            let s = dot(a, &r.v);
            if s.is_zero() {
                let mut r = r;
                r.tight.push(idx);
                next.push(r);
            } else if s.is_positive() {
                pos.push((r, s));
            } else {
                neg.push((r, -s));
            }
        }
        for (p, sp) in &pos {
            for (n, sn) in &neg {
                let common = sorted_intersection(&p.tight, &n.tight);
                if free_dim < 2 || common.len() + 2 < free_dim {
                    continue;
                }
                let rows: Vec<IntVec> = common.iter().map(|&i| processed[i].clone()).collect();
                let m = IntMatrix::from_rows(&rows, dim).expect("constraint rows");
                if exact_rank(&m) != free_dim - 2 {
                    continue;
                }
                // sp * n + sn * p lies on the hyperplane
                let v: IntVec = n
                    .v
                    .iter()
                    .zip(&p.v)
                    .map(|(x, y)| sp * x + sn * y)
                    .collect();
                let mut tight = common;
                tight.push(idx);
                next.push(Ray {
                    v: primitive(&v),
                    tight,
                });
            }
        }
        if !is_eq {
            next.extend(pos.into_iter().map(|(r, _)| r));
        }
        rays = next;
    }

    let lineality = if lineality.is_empty() {
        lineality
    } else {
        let m = IntMatrix::from_rows(&lineality, dim).expect("lineality rows");
        saturate_rows(&m).row_vecs()
    };
    let mut rays: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    rays.sort();
    rays.dedup();
    DdOutput { rays, lineality }
}
