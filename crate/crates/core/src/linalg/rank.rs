use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Modular primes must exceed this bound.
pub const PRIME_FLOOR: u64 = 1 << 20;
const PRIME_CEILING: u64 = 1 << 31;
const PARALLEL_ROWS: usize = 64;

/// How a rank (and hence a kernel dimension) is computed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum RankMode {
    /// Fraction-free elimination over the integers.
    Exact,
    /// The first three primes above 2^20 not dividing any denominator.
    #[default]
    Modular,
    /// An explicit prime list (at least three distinct primes above 2^20).
    ModularWith(Vec<u64>),
}

/// A matrix that can be reduced modulo a prime and, when needed, produced
/// exactly with integer rows of the same rank.
pub trait ModularSource: Sync {
    fn shape(&self) -> (usize, usize);
    /// Fills `out` with row `r` reduced mod `p`.
    fn row_mod(&self, r: usize, p: u64, out: &mut [u64]) -> Result<()>;
    /// Whether `p` divides some denominator.
    fn denominator_divisible_by(&self, p: u64) -> bool;
    /// An integer matrix with the same row space.
    fn exact_integer_rows(&self) -> IntMatrix;
}

impl ModularSource for RatMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    fn row_mod(&self, r: usize, p: u64, out: &mut [u64]) -> Result<()> {
        let pb = BigInt::from(p);
        for (x, o) in self.row(r).iter().zip(out.iter_mut()) {
            let d = reduce(x.denom(), &pb);
            if d == 0 {
                return Err(Error::PrimeDividesDenominator(p));
            }
            let n = reduce(x.numer(), &pb);
            *o = mul_mod(n, inv_mod(d, p), p);
        }
        Ok(())
    }

    fn denominator_divisible_by(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        self.entries().iter().any(|x| reduce(x.denom(), &pb) == 0)
    }

    fn exact_integer_rows(&self) -> IntMatrix {
        self.integer_rows()
    }
}

impl ModularSource for IntMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    fn row_mod(&self, r: usize, p: u64, out: &mut [u64]) -> Result<()> {
        let pb = BigInt::from(p);
        for (x, o) in self.row(r).iter().zip(out.iter_mut()) {
            *o = reduce(x, &pb);
        }
        Ok(())
    }

    fn denominator_divisible_by(&self, _p: u64) -> bool {
        false
    }

    fn exact_integer_rows(&self) -> IntMatrix {
        self.clone()
    }
}

fn reduce(x: &BigInt, p: &BigInt) -> u64 {
    x.mod_floor(p).to_u64().expect("residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Barrett reduction for inputs below 2^62.
#[derive(Clone, Copy)]
struct Barrett {
    p: u64,
    m: u64,
}

impl Barrett {
    fn new(p: u64) -> Self {
        Barrett {
            p,
            m: (u64::MAX / p),
        }
    }

    #[inline(always)]
    fn reduce(self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }
}

fn eliminate_mod(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> usize {
    let red = Barrett::new(p);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if pr != rank {
            for j in 0..cols {
                a.swap(pr * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for j in c..cols {
            let x = &mut a[rank * cols + j];
            *x = red.reduce(*x * inv);
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot = &head[rank * cols..];
        let update = |row: &mut [u64]| {
            let f = row[c];
            if f == 0 {
                return;
            }
            let nf = p - f;
            for j in c..cols {
                row[j] = red.reduce(row[j] + nf * pivot[j]);
            }
        };
        if rows - rank > PARALLEL_ROWS {
            tail.par_chunks_mut(cols).for_each(update);
        } else {
            tail.chunks_mut(cols).for_each(update);
        }
        rank += 1;
    }
    rank
}

/// Rank of `src` modulo a single prime.
pub fn modular_rank<S: ModularSource + ?Sized>(src: &S, p: u64) -> Result<usize> {
    let (rows, cols) = src.shape();
    if rows == 0 || cols == 0 {
        return Ok(0);
    }
    let mut a = vec![0u64; rows * cols];
    a.par_chunks_mut(cols)
        .enumerate()
        .try_for_each(|(r, out)| src.row_mod(r, p, out))?;
    Ok(eliminate_mod(a, rows, cols, p))
}

/// First three primes above 2^20 that divide no denominator of `src`.
pub fn default_primes<S: ModularSource + ?Sized>(src: &S) -> Vec<u64> {
    let mut out = Vec::with_capacity(3);
    let mut p = PRIME_FLOOR + 1;
    while out.len() < 3 {
        if is_prime(p) && !src.denominator_divisible_by(p) {
            out.push(p);
        }
        p += 1;
    }
    out
}

fn validate_primes<S: ModularSource + ?Sized>(src: &S, primes: &[u64]) -> Result<()> {
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < 3 {
        return Err(Error::InvalidPrimes(
            "at least three distinct primes are required".into(),
        ));
    }
    for &p in primes {
        if p <= PRIME_FLOOR || p >= PRIME_CEILING || !is_prime(p) {
            return Err(Error::InvalidPrimes(format!(
                "{p} is not a prime in (2^20, 2^31)"
            )));
        }
        if src.denominator_divisible_by(p) {
            return Err(Error::PrimeDividesDenominator(p));
        }
    }
    Ok(())
}

/// Rank under the requested mode. Modular ranks are accepted only when every
/// prime agrees; otherwise the exact rank is computed.
pub fn rank_of<S: ModularSource + ?Sized>(src: &S, mode: &RankMode) -> Result<usize> {
    let primes = match mode {
        RankMode::Exact => return Ok(exact_rank(&src.exact_integer_rows())),
        RankMode::Modular => default_primes(src),
        RankMode::ModularWith(ps) => {
            validate_primes(src, ps)?;
            ps.clone()
        }
    };
    let ranks: Vec<usize> = primes
        .par_iter()
        .map(|&p| modular_rank(src, p))
        .collect::<Result<_>>()?;
    if ranks.windows(2).all(|w| w[0] == w[1]) {
        Ok(ranks[0])
    } else {
        Ok(exact_rank(&src.exact_integer_rows()))
    }
}

pub fn nullity_of<S: ModularSource + ?Sized>(src: &S, mode: &RankMode) -> Result<usize> {
    Ok(src.shape().1 - rank_of(src, mode)?)
}

/// Dimension of the rational kernel `{x : m x = 0}`.
pub fn kernel_dimension(m: &RatMatrix, mode: &RankMode) -> Result<usize> {
    nullity_of(m, mode)
}

fn primitive_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| crate::num::primitive(m.row(r)))
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn exact_rank(m: &IntMatrix) -> usize {
    let mut a = primitive_rows(m);
    let rows = a.len();
    let cols = m.cols();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        // smallest nonzero pivot keeps the intermediate minors small
        let Some(pr) = (rank..rows)
            .filter(|&r| !a[r][c].is_zero())
            .min_by_key(|&r| a[r][c].bits())
        else {
            continue;
        };
        a.swap(rank, pr);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let piv = pivot_row[c].clone();
        let update = |row: &mut Vec<BigInt>| {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut x = &row[j] * &piv;
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    x -= &f * &pivot_row[j];
                }
                row[j] = if prev.is_one() { x } else { x / &prev };
            }
        };
        if tail.len() > 8 {
            tail.par_iter_mut().for_each(update);
        } else {
            tail.iter_mut().for_each(update);
        }
        prev = piv;
        rank += 1;
    }
    rank
}

pub(crate) fn bareiss_determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.row_vecs();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(pr) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pr != k {
            a.swap(k, pr);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = x / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
