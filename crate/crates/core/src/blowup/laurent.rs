use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in `x, y` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl LaurentPoly {
    /// Sums coefficients of repeated exponents and drops zeros.
    pub fn new(terms: impl IntoIterator<Item = ((i64, i64), BigRational)>) -> Self {
        let mut out = LaurentPoly::default();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(a: i64, b: i64) -> Self {
        Self::new([((a, b), BigRational::one())])
    }

    /// `1 - x^p y^q`.
    pub fn binomial(p: i64, q: i64) -> Self {
        Self::new([((0, 0), BigRational::one()), ((p, q), -BigRational::one())])
    }

    fn add_term(&mut self, e: (i64, i64), c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: i64, b: i64) -> BigRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for ((a, b), c) in &self.terms {
            for ((p, q), d) in &other.terms {
                out.add_term((a + p, b + q), c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        out
    }

    /// `∂_x^i ∂_y^j f` at `(1, 1)`.
    pub fn functional(&self, i: u64, j: u64) -> BigRational {
        self.terms
            .iter()
            .map(|((a, b), c)| c * BigRational::from_integer(falling(*a, i) * falling(*b, j)))
            .fold(BigRational::zero(), |s, t| s + t)
    }

    /// Coefficients listed against `points`; `None` if the support is not
    /// contained in `points`.
    pub fn coefficient_vector(&self, points: &[(i64, i64)]) -> Option<Vec<BigRational>> {
        if self.terms.keys().any(|e| !points.contains(e)) {
            return None;
        }
        Some(points.iter().map(|&(a, b)| self.coefficient(a, b)).collect())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{}*x^{}*y^{}", crate::num::fmt_rat(c), a, b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `a (a - 1) ... (a - i + 1)`; the empty product is 1.
pub fn falling(a: i64, i: u64) -> BigInt {
    let mut out = BigInt::one();
    for t in 0..i {
        let f = a - t as i64;
        if f == 0 {
            return BigInt::zero();
        }
        out *= f;
    }
    out
}

/// Falling factorial reduced mod `p`.
pub(crate) fn falling_mod(a: i64, i: u64, p: u64) -> u64 {
    let mut out: u64 = 1;
    for t in 0..i {
        let f = (a - t as i64).rem_euclid(p as i64) as u64;
        if f == 0 {
            return 0;
        }
        out = ((out as u128 * f as u128) % p as u128) as u64;
    }
    out
}

/// The smallest `i + j` with `∂_x^i ∂_y^j f (1, 1) != 0`.
pub fn order_at_e(f: &LaurentPoly) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let terms: Vec<(i64, i64, BigRational)> = f.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())).collect();
    // ff[t][i] = a_t^{↓i}, grown as the order increases
    let mut fa: Vec<Vec<BigInt>> = terms.iter().map(|_| vec![BigInt::one()]).collect();
    let mut fb: Vec<Vec<BigInt>> = terms.iter().map(|_| vec![BigInt::one()]).collect();
    let mut s: u64 = 0;
    loop {
        for (t, (a, b, _)) in terms.iter().enumerate() {
            while fa[t].len() as u64 <= s {
                let i = fa[t].len() as i64 - 1;
                let next = fa[t].last().expect("nonempty") * (a - i);
                fa[t].push(next);
                let next = fb[t].last().expect("nonempty") * (b - i);
                fb[t].push(next);
            }
        }
        for i in 0..=s {
            let j = s - i;
            let v = terms
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (t, (_, _, c))| {
                    acc + c * BigRational::from_integer(&fa[t][i as usize] * &fb[t][j as usize])
                });
            if !v.is_zero() {
                return Ok(s);
            }
        }
        s += 1;
    }
}
