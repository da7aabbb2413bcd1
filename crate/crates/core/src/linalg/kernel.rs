use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{hermite_normal_form, smith_normal_form, IntMatrix, RatMatrix};

/// Basis (as rows) of the saturated lattice `{x in Z^cols : m x = 0}`,
/// in Hermite normal form.
pub fn integer_kernel_saturated(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let rank = s.rank();
    let cols = m.cols();
    let basis: Vec<Vec<BigInt>> = (rank..cols).map(|c| s.v.column(c)).collect();
    let k = IntMatrix::from_rows(&basis, cols).expect("kernel rows");
    drop_zero_rows(&hermite_normal_form(&k).0)
}

/// Basis (as rows) of `span(rows) ∩ Z^n`, in Hermite normal form.
pub fn saturate_rows(m: &IntMatrix) -> IntMatrix {
    // span(rows) ∩ Z^n = kernel of a basis of its orthogonal complement
    let perp = integer_kernel_saturated(m);
    integer_kernel_saturated(&perp)
}

pub(crate) fn drop_zero_rows(m: &IntMatrix) -> IntMatrix {
    let keep: Vec<usize> = (0..m.rows())
        .filter(|&r| m.row(r).iter().any(|x| !x.is_zero()))
        .collect();
    m.select_rows(&keep)
}

/// Solves `a x = b` over the rationals, returning one solution if consistent.
pub fn solve_rational(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let (rows, cols) = (a.rows(), a.cols());
    assert_eq!(b.len(), rows);
    // augmented row reduction
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut v = a.row(r).to_vec();
            v.push(b[r].clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        let Some(p) = (pr..rows).find(|&r| !aug[r][c].is_zero()) else {
            continue;
        };
        aug.swap(pr, p);
        let piv = aug[pr][c].clone();
        for x in aug[pr].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..rows {
            if r == pr || aug[r][c].is_zero() {
                continue;
            }
            let f = aug[r][c].clone();
            let src = aug[pr].clone();
            for (x, y) in aug[r].iter_mut().zip(src.iter()) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    if aug[pr..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the rational kernel `{x : a x = 0}`, one vector per free column,
/// each normalised to have a 1 in its free column.
pub fn rational_kernel(a: &RatMatrix) -> Vec<Vec<BigRational>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<BigRational>> = (0..rows).map(|r| a.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let piv = m[pr][c].clone();
        for x in m[pr].iter_mut() {
            *x = &*x / &piv;
        }
        let src = m[pr].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&src) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::from_integer(BigInt::from(1));
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ivec;

    fn in_lattice(basis: &IntMatrix, v: &[BigInt]) -> bool {
        let a = basis.transpose().to_rat();
        let b: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        match solve_rational(&a, &b) {
            Some(x) => x.iter().all(|c| c.is_integer()),
            None => false,
        }
    }

    fn assert_saturated(basis: &IntMatrix) {
        let s = smith_normal_form(basis);
        assert!(s.invariant_factors().iter().all(|d| d == &BigInt::from(1)));
    }

    #[test]
    fn kernel_of_weight_row() {
        let m = IntMatrix::from_i64_rows(&[&[12, 13, 17]]);
        let k = integer_kernel_saturated(&m);
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            assert!(m.mul_vec(k.row(r)).iter().all(Zero::is_zero));
        }
        assert_saturated(&k);
        assert!(in_lattice(&k, &ivec(&[13, -12, 0])));
        assert!(in_lattice(&k, &ivec(&[17, 0, -12])));
        // the two obvious relations span an index-12 sublattice; saturating
        // them gives back the same kernel
        let obvious = IntMatrix::from_i64_rows(&[&[13, -12, 0], &[17, 0, -12]]);
        assert_eq!(saturate_rows(&obvious), k);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(integer_kernel_saturated(&IntMatrix::identity(4)).rows(), 0);
    }

    #[test]
    fn kernel_of_projection_contains_weighted_relation() {
        let pi = IntMatrix::from_i64_rows(&[
            &[1, 0, 1, -2, -1, 1, 0],
            &[0, 1, -1, -3, -2, 2, 1],
        ]);
        let k = integer_kernel_saturated(&pi);
        assert_eq!(k.rows(), 5);
        assert_saturated(&k);
        let v1 = ivec(&[1, 0, 1, 1, 1, 0, 0]);
        let v2 = ivec(&[0, 0, 0, -1, -1, 0, 0]);
        let v3 = ivec(&[-1, 0, -1, 0, 0, -1, 0]);
        let combo: Vec<BigInt> = (0..7)
            .map(|i| &v1[i] * 12 + &v2[i] * 17 + &v3[i] * 13)
            .collect();
        assert!(pi.mul_vec(&combo).iter().all(Zero::is_zero));
        assert!(in_lattice(&k, &combo));
    }

    #[test]
    fn solve_inconsistent() {
        let a = IntMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]).to_rat();
        let b = vec![BigRational::from_integer(1.into()), BigRational::from_integer(3.into())];
        assert!(solve_rational(&a, &b).is_none());
    }
}
