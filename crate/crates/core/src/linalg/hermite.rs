use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form: returns `(h, u)` with `u * m = h`, `u`
/// unimodular, `h` in row echelon form with positive pivots and every entry
/// above a pivot reduced into `[0, pivot)`. Zero rows come last.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;

    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclid on column c among rows pivot_row..
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if h[(r, c)].is_zero() {
                    continue;
                }
                if best.map_or(true, |b| h[(r, c)].abs() < h[(b, c)].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if h[(r, c)].is_zero() {
                    continue;
                }
                let q = -h[(r, c)].div_floor(&h[(pivot_row, c)]);
                h.add_row_multiple(r, pivot_row, &q);
                u.add_row_multiple(r, pivot_row, &q);
                if !h[(r, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, c)].is_zero() {
            continue;
        }
        if h[(pivot_row, c)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let p = h[(pivot_row, c)].clone();
        for r in 0..pivot_row {
            let q: BigInt = -h[(r, c)].div_floor(&p);
            h.add_row_multiple(r, pivot_row, &q);
            u.add_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}
