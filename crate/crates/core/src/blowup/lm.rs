use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{standard_fan, unimodular_equivalence, Fan, StandardFan};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::num::{fmt_vec, is_zero_vec, neg, primitive, IntVec};

/// `1/r + 1/(n - r) > 1/2`, for `n > r >= 2`.
pub fn mukai_predicate(r: u64, n: u64) -> Result<bool> {
    if r < 2 || n <= r {
        return Err(Error::BadRange(format!("need n > r >= 2, got r = {r}, n = {n}")));
    }
    let lhs = BigRational::new(BigInt::one(), BigInt::from(r))
        + BigRational::new(BigInt::one(), BigInt::from(n - r));
    Ok(lhs > BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// Weights attached to `v1, v2, v3` and signs with
/// `s1 w1 π(v1) + s2 w2 π(v2) + s3 w3 π(v3) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightAssignment {
    pub weights: [u64; 3],
    pub signs: [i8; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmReport {
    pub n: usize,
    pub ray_count: usize,
    /// Distinct primitive images with multiplicities, sorted.
    pub images: Vec<(IntVec, usize)>,
    /// Rays mapped to zero.
    pub zero_images: usize,
    pub v_images: [IntVec; 3],
    pub generates: bool,
    /// Whether `a v1 ± b v2 ± c v3 ∈ ker π` with the weights in the given order.
    pub literal_relation: bool,
    pub assignments: Vec<WeightAssignment>,
    /// Weights of the weighted projective plane whose fan has the rays
    /// `s_i π(v_i)`, when identified.
    pub quotient: Option<[u64; 3]>,
}

impl LmReport {
    fn image_set_contains(&self, v: &[BigInt]) -> bool {
        let p = primitive(v);
        self.images.iter().any(|(u, _)| *u == p)
    }

    /// Whether every vector of `rays` is (up to scaling) an image ray.
    pub fn contains_rays(&self, rays: &[IntVec]) -> bool {
        rays.iter().all(|r| self.image_set_contains(r))
    }

    /// Same after rotating `rays` by 90 degrees counterclockwise.
    pub fn contains_rays_rotated(&self, rays: &[IntVec]) -> bool {
        rays.iter()
            .all(|r| self.image_set_contains(&[-r[1].clone(), r[0].clone()]))
    }

    pub fn quotient_label(&self) -> Option<String> {
        self.quotient
            .map(|w| format!("P({},{},{})", w[0], w[1], w[2]))
    }
}

/// Rays of the Losev-Manin fan in `Z^{n-3}`: nonzero `v` with `v` or `-v`
/// in `{0,1}^{n-3}`.
pub fn lm_rays(n: usize) -> Result<Vec<IntVec>> {
    if n < 4 {
        return Err(Error::BadRange(format!("LM_n needs n >= 4, got {n}")));
    }
    let d = n - 3;
    if d >= 24 {
        return Err(Error::BadRange(format!("n = {n} is too large to enumerate")));
    }
    let mut out = Vec::with_capacity(2 * ((1usize << d) - 1));
    for mask in 1u32..(1u32 << d) {
        let v: IntVec = (0..d).map(|i| BigInt::from((mask >> i) & 1)).collect();
        out.push(neg(&v));
        out.push(v);
    }
    Ok(out)
}

pub fn lm_projection(
    n: usize,
    pi: &IntMatrix,
    v: [&IntVec; 3],
    weights: [u64; 3],
) -> Result<LmReport> {
    let rays = lm_rays(n)?;
    let d = n - 3;
    if pi.rows() != 2 || pi.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: pi.cols(),
        });
    }
    for x in v {
        if x.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: x.len(),
            });
        }
    }
    let snf = smith_normal_form(pi).invariant_factors();
    if snf.len() != 2 || !snf.iter().all(One::is_one) {
        return Err(Error::NotSurjective);
    }
    let mut counts: BTreeMap<IntVec, usize> = BTreeMap::new();
    let mut zero_images = 0;
    for r in &rays {
        let img = pi.mul_vec(r);
        if is_zero_vec(&img) {
            zero_images += 1;
        } else {
            *counts.entry(primitive(&img)).or_default() += 1;
        }
    }
    let v_images = [pi.mul_vec(v[0]), pi.mul_vec(v[1]), pi.mul_vec(v[2])];
    let vm = IntMatrix::from_rows(&v_images, 2)?;
    let gens = smith_normal_form(&vm).invariant_factors();
    let generates = gens.len() == 2 && gens.iter().all(One::is_one);

    let combo = |w: [u64; 3], s: [i8; 3]| -> bool {
        (0..2).all(|c| {
            (0..3)
                .map(|i| BigInt::from(w[i]) * BigInt::from(s[i]) * &v_images[i][c])
                .sum::<BigInt>()
                .is_zero()
        })
    };
    let signs: Vec<[i8; 3]> = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]].to_vec();
    let literal_relation = signs.iter().any(|&s| combo(weights, s));
    let mut assignments = Vec::new();
    for perm in permutations3() {
        let w = [weights[perm[0]], weights[perm[1]], weights[perm[2]]];
        for &s in &signs {
            let a = WeightAssignment { weights: w, signs: s };
            if combo(w, s) && !assignments.contains(&a) {
                assignments.push(a);
            }
        }
    }
    let quotient = assignments.iter().find_map(|a| identify_quotient(&v_images, a));
    Ok(LmReport {
        n,
        ray_count: rays.len(),
        images: counts.into_iter().collect(),
        zero_images,
        v_images,
        generates,
        literal_relation,
        assignments,
        quotient,
    })
}

fn permutations3() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// The fan with rays `s_i π(v_i)` is that of `P(w)` if the rays are
/// primitive and the fans are lattice-isomorphic.
fn identify_quotient(images: &[IntVec; 3], a: &WeightAssignment) -> Option<[u64; 3]> {
    let rays: Vec<IntVec> = images
        .iter()
        .zip(a.signs)
        .map(|(v, s)| if s < 0 { neg(v) } else { v.clone() })
        .collect();
    if rays.iter().any(|r| primitive(r) != *r) {
        return None;
    }
    let fan = Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).ok()?;
    crate::fan::validate_fan(&fan).ok()?;
    let wp = standard_fan(&StandardFan::WeightedProjective(a.weights.to_vec())).ok()?;
    unimodular_equivalence(&fan, &wp)?;
    let mut w = a.weights;
    w.sort_unstable();
    Some(w)
}

impl std::fmt::Display for LmReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "LM_{}: {} rays, {} distinct primitive images", self.n, self.ray_count, self.images.len())?;
        for (i, img) in self.v_images.iter().enumerate() {
            writeln!(f, "π(v{}) = {}", i + 1, fmt_vec(img))?;
        }
        writeln!(f, "images of v1, v2, v3 generate Z^2: {}", self.generates)?;
        for a in &self.assignments {
            writeln!(
                f,
                "relation: {}·π(v1) {} {}·π(v2) {} {}·π(v3) = 0",
                a.weights[0],
                if a.signs[1] > 0 { "+" } else { "-" },
                a.weights[1],
                if a.signs[2] > 0 { "+" } else { "-" },
                a.weights[2]
            )?;
        }
        match self.quotient_label() {
            Some(q) => write!(f, "quotient: {q}"),
            None => write!(f, "quotient: not identified"),
        }
    }
}
