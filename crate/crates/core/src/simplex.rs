//! Exact phase-one simplex over `BigRational` with Bland's anti-cycling rule.
//!
//! Only feasibility is needed by the solvers: every query has the shape
//! "find `x >= 0` with `A x = b`", and the answer is a basic feasible
//! solution, so at most `rank(A)` of its entries are nonzero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::IntMatrix;

/// Basic feasible solution of `{A x = b, x >= 0}`, or `None` if infeasible.
pub fn feasible_point(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "rhs length must match row count");
    let (m, n) = (a.rows(), a.cols());
    let width = n + m + 1;
    let rhs = width - 1;

    // Rows 0..m are constraints, row m is the phase-one reduced-cost row.
    let mut t: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); width]; m + 1];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            let v = BigRational::from_integer(a[(i, j)].clone());
            t[i][j] = if flip { -v } else { v };
        }
        t[i][n + i] = BigRational::from_integer(BigInt::from(1));
        t[i][rhs] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    for j in (0..n).chain(std::iter::once(rhs)) {
        let s: BigRational = (0..m).map(|i| t[i][j].clone()).sum();
        t[m][j] = -s;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, p) in r.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
}

/// Integer right-hand side convenience wrapper.
pub fn feasible_point_int(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let b: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
    feasible_point(a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;

    fn check(a: &IntMatrix, b: &[i64], x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for i in 0..a.rows() {
            let lhs: BigRational = (0..a.cols())
                .map(|j| BigRational::from_integer(a[(i, j)].clone()) * &x[j])
                .sum();
            assert_eq!(lhs, BigRational::from_integer(BigInt::from(b[i])));
        }
    }

    #[test]
    fn finds_basic_solution() {
        let a = IntMatrix::from_rows(&[&[1, 0, -1], &[0, 1, -1]]);
        let x = feasible_point_int(&a, &int_vector(&[-1, -1])).unwrap();
        check(&a, &[-1, -1], &x);
        assert_eq!(x.iter().filter(|v| !v.is_zero()).count(), 1);
    }

    #[test]
    fn detects_infeasibility() {
        let a = IntMatrix::identity(2);
        assert!(feasible_point_int(&a, &int_vector(&[1, -1])).is_none());
        let a = IntMatrix::from_rows(&[&[1, 1]]);
        assert!(feasible_point_int(&a, &int_vector(&[-3])).is_none());
    }

    #[test]
    fn rational_solution() {
        let a = IntMatrix::from_rows(&[&[3, -5]]);
        let x = feasible_point_int(&a, &int_vector(&[2])).unwrap();
        check(&a, &[2], &x);
    }

    #[test]
    fn degenerate_rows() {
        // second row duplicates the first; one artificial stays basic at zero
        let a = IntMatrix::from_rows(&[&[1, 2, 3], &[1, 2, 3]]);
        let x = feasible_point_int(&a, &int_vector(&[6, 6])).unwrap();
        check(&a, &[6, 6], &x);
        assert!(feasible_point_int(&a, &int_vector(&[6, 5])).is_none());
    }
}
