//! Exact integer linear algebra.
//!
//! Everything here works over [`BigInt`] (or [`BigRational`] where an
//! inverse is needed), so no operation can overflow. The column Hermite
//! normal form is the workhorse: lattice membership, lattice equality and the
//! gcd of maximal minors are all read off it.
//!
//! HNF convention: `A * U == H` with `U` unimodular, `H` in column echelon
//! form, every pivot positive, and every entry to the left of a pivot reduced
//! into `[0, pivot)`. With that convention the nonzero columns of `H` are a
//! canonical basis of the lattice spanned by the columns of `A`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntVector = Vec<BigInt>;

/// Builds an [`IntVector`] from anything convertible to `BigInt`.
pub fn int_vector<T: Into<BigInt> + Copy>(values: &[T]) -> IntVector {
    values.iter().map(|&v| v.into()).collect()
}

/// Number of nonzero entries.
pub fn support_size(x: &[BigInt]) -> usize {
    x.iter().filter(|v| !v.is_zero()).count()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds a matrix from row-major data; `data.len()` must be `rows * cols`.
    pub fn from_data(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Convenience constructor for literals. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[&[T]]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(m * n);
        for row in rows {
            assert_eq!(row.len(), n, "ragged matrix literal");
            data.extend(row.iter().map(|&v| v.into()));
        }
        IntMatrix {
            rows: m,
            cols: n,
            data,
        }
    }

    /// A single-row matrix.
    pub fn row_vector(entries: &[BigInt]) -> Self {
        IntMatrix {
            rows: 1,
            cols: entries.len(),
            data: entries.to_vec(),
        }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn column_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    /// Submatrix made of the given (0-based) columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<IntVector> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (ia, ib) = (i * self.cols + a, i * self.cols + b);
            self.data.swap(ia, ib);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (ia, ib) = (a * self.cols + j, b * self.cols + j);
            self.data.swap(ia, ib);
        }
    }

    fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// `col[target] -= factor * col[source]`
    fn sub_column_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let d = factor * &self[(i, source)];
            self[(i, target)] -= d;
        }
    }

    /// `row[target] -= factor * row[source]`
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let d = factor * &self[(source, j)];
            self[(target, j)] -= d;
        }
    }

    /// Replaces columns `(k, j)` by `(s*c_k + t*c_j, u*c_k + v*c_j)`.
    fn combine_columns(
        &mut self,
        k: usize,
        j: usize,
        s: &BigInt,
        t: &BigInt,
        u: &BigInt,
        v: &BigInt,
    ) {
        for i in 0..self.rows {
            let x = std::mem::take(&mut self[(i, k)]);
            let y = std::mem::take(&mut self[(i, j)]);
            self[(i, k)] = s * &x + t * &y;
            self[(i, j)] = u * &x + v * &y;
        }
    }

    /// Text form used by the CLI: a `rows cols` header, then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", line.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Fraction-free (Bareiss) forward elimination on a copy of `a`.
/// Returns `(rank, signed last pivot)`; for a square full-rank input the
/// second component is the determinant.
fn bareiss(a: &IntMatrix) -> (usize, BigInt) {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&p| !m[(p, c)].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap_rows(p, r);
            negate = !negate;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[(i, j)] * &m[(r, c)] - &m[(i, c)] * &m[(r, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, c)] = BigInt::zero();
        }
        prev = m[(r, c)].clone();
        r += 1;
    }
    if negate {
        prev = -prev;
    }
    (r, prev)
}

/// Exact determinant by Bareiss elimination.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(BigInt::one());
    }
    let (rank, last) = bareiss(m);
    Ok(if rank == m.rows { last } else { BigInt::zero() })
}

pub fn rank(m: &IntMatrix) -> usize {
    bareiss(m).0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

impl HnfResult {
    /// The nonzero columns of `H`: a canonical basis of the column lattice.
    pub fn basis(&self) -> IntMatrix {
        let cols: Vec<usize> = (0..self.rank).collect();
        self.h.select_columns(&cols)
    }

    /// Row index of each pivot, in column order.
    pub fn pivot_rows(&self) -> Vec<usize> {
        (0..self.rank)
            .map(|j| {
                (0..self.h.rows)
                    .find(|&i| !self.h[(i, j)].is_zero())
                    .expect("pivot column is nonzero")
            })
            .collect()
    }
}

/// Column-style Hermite normal form with unimodular transform.
pub fn hnf_columns(a: &IntMatrix) -> HnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, k)].is_zero() {
                h.swap_columns(k, j);
                u.swap_columns(k, j);
                continue;
            }
            let eg = h[(i, k)].extended_gcd(&h[(i, j)]);
            let p = &h[(i, k)] / &eg.gcd;
            let q = &h[(i, j)] / &eg.gcd;
            let neg_q = -q;
            h.combine_columns(k, j, &eg.x, &eg.y, &neg_q, &p);
            u.combine_columns(k, j, &eg.x, &eg.y, &neg_q, &p);
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_column(k);
            u.negate_column(k);
        }
        let pivot = h[(i, k)].clone();
        for j in 0..k {
            let f = h[(i, j)].div_floor(&pivot);
            if !f.is_zero() {
                h.sub_column_multiple(j, k, &f);
                u.sub_column_multiple(j, k, &f);
            }
        }
        k += 1;
    }
    HnfResult { h, u, rank: k }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form `D = U * M * V` of a nonsingular square matrix.
pub fn snf(m: &IntMatrix) -> Result<SnfResult> {
    if det_exact(m)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = m.rows;
    let mut d = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (pi, pj) = best.ok_or(Error::SingularMatrix)?;
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_columns(t, pj);
            v.swap_columns(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = &d[(i, t)] / &pivot;
                if !q.is_zero() {
                    d.sub_row_multiple(i, t, &q);
                    u.sub_row_multiple(i, t, &q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = &d[(t, j)] / &pivot;
                if !q.is_zero() {
                    d.sub_column_multiple(j, t, &q);
                    v.sub_column_multiple(j, t, &q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Ok(SnfResult { d, u, v })
}

/// gcd of all maximal minors of a full-row-rank matrix, read off the HNF.
pub fn gcd_maximal_minors(a: &IntMatrix) -> Result<BigInt> {
    let hnf = hnf_columns(a);
    if hnf.rank < a.rows {
        return Err(Error::RankDeficient {
            rank: hnf.rank,
            rows: a.rows,
        });
    }
    Ok(det_exact(&hnf.basis())?.abs())
}

/// Solves `H z = b` against an HNF by forward substitution. `None` when some
/// pivot fails to divide its residual or a pivot-free row leaves a residual.
fn hnf_forward_solve(hnf: &HnfResult, b: &[BigInt]) -> Option<IntVector> {
    let h = &hnf.h;
    let mut z: IntVector = vec![BigInt::zero(); h.cols];
    let mut k = 0;
    for i in 0..h.rows {
        let mut residual = b[i].clone();
        for (j, zj) in z.iter().enumerate().take(k) {
            residual -= &h[(i, j)] * zj;
        }
        if k < hnf.rank && !h[(i, k)].is_zero() {
            let (q, r) = residual.div_rem(&h[(i, k)]);
            if !r.is_zero() {
                return None;
            }
            z[k] = q;
            k += 1;
        } else if !residual.is_zero() {
            return None;
        }
    }
    Some(z)
}

/// An integer `x` with `A x = b`, or `None` when `b` is outside the lattice.
pub fn lattice_member(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntVector>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let hnf = hnf_columns(a);
    Ok(hnf_forward_solve(&hnf, b).map(|z| {
        hnf.u
            .mul_vec(&z)
            .expect("U is square of size cols(A)")
    }))
}

/// Canonical basis of the column lattice (the nonzero part of the HNF).
pub fn lattice_fingerprint(a: &IntMatrix) -> IntMatrix {
    hnf_columns(a).basis()
}

pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows == b.rows && lattice_fingerprint(a) == lattice_fingerprint(b)
}

/// Exact solution `X` of `M X = A` over the rationals.
pub fn solve_rational(m: &IntMatrix, a: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    if !m.is_square() || m.rows != a.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: a.rows,
        });
    }
    let n = m.rows;
    let width = n + a.cols;
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .chain(a.row(i))
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&p| !aug[p][c].is_zero()).ok_or(Error::SingularMatrix)?;
        aug.swap(p, c);
        let inv = aug[c][c].recip();
        for v in aug[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == c || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            for j in c..width {
                let d = &f * &aug[c][j];
                aug[i][j] -= d;
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `M^{-1} A`, which must be integral.
pub fn left_divide_integral(m: &IntMatrix, a: &IntMatrix) -> Result<IntMatrix> {
    let x = solve_rational(m, a)?;
    let mut out = IntMatrix::zeros(a.rows, a.cols);
    for (i, row) in x.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            if !v.is_integer() {
                return Err(Error::Internal(format!(
                    "M^-1 A has non-integral entry {v} at ({i}, {j})"
                )));
            }
            out[(i, j)] = v.to_integer();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn check_hnf_shape(a: &IntMatrix, r: &HnfResult) {
        assert_eq!(a.mul(&r.u).unwrap(), r.h);
        assert_eq!(det_exact(&r.u).unwrap().abs(), BigInt::one());
        for j in r.rank..r.h.cols {
            assert!(r.h.column_is_zero(j));
        }
        for (j, &pi) in r.pivot_rows().iter().enumerate() {
            let p = &r.h[(pi, j)];
            assert!(p.is_positive());
            for jj in 0..j {
                let e = &r.h[(pi, jj)];
                assert!(!e.is_negative() && e < p);
            }
        }
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det_exact(&IntMatrix::from_rows(&[&[6]])).unwrap(), bi(6));
        assert_eq!(det_exact(&IntMatrix::identity(3)).unwrap(), bi(1));
        let m = IntMatrix::from_rows(&[&[6, 10], &[0, 2]]);
        assert_eq!(det_exact(&m).unwrap(), bi(12));
        let swap = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_exact(&swap).unwrap(), bi(-1));
        let singular = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert!(det_exact(&singular).unwrap().is_zero());
        assert!(det_exact(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(2);
        let r = hnf_columns(&id);
        assert_eq!(r.h, id);
        assert_eq!(r.u, id);

        let a = IntMatrix::from_rows(&[&[6, 10, 15]]);
        let r = hnf_columns(&a);
        assert_eq!(r.h, IntMatrix::from_rows(&[&[1, 0, 0]]));
        assert_eq!(r.rank, 1);
        check_hnf_shape(&a, &r);

        let a = IntMatrix::from_rows(&[&[2, 0, 4], &[0, 2, 2]]);
        let r = hnf_columns(&a);
        check_hnf_shape(&a, &r);
        assert_eq!(r.rank, 2);
        assert_eq!(det_exact(&r.basis()).unwrap().abs(), bi(4));
    }

    #[test]
    fn hnf_zero_and_wide_inputs() {
        let z = IntMatrix::zeros(2, 3);
        let r = hnf_columns(&z);
        assert_eq!(r.rank, 0);
        check_hnf_shape(&z, &r);

        let a = IntMatrix::from_rows(&[&[0, 0, 3], &[-4, 6, 1], &[2, 2, 2]]);
        let r = hnf_columns(&a);
        check_hnf_shape(&a, &r);
    }

    #[test]
    fn snf_examples() {
        let r = snf(&IntMatrix::diagonal(&[bi(2), bi(3)])).unwrap();
        assert_eq!(r.diagonal(), vec![bi(1), bi(6)]);
        let r = snf(&IntMatrix::identity(3)).unwrap();
        assert_eq!(r.d, IntMatrix::identity(3));
        let m = IntMatrix::diagonal(&[bi(6), bi(2)]);
        let r = snf(&m).unwrap();
        assert_eq!(r.diagonal(), vec![bi(2), bi(6)]);
        assert_eq!(r.u.mul(&m).unwrap().mul(&r.v).unwrap(), r.d);
    }

    #[test]
    fn snf_rejects_singular() {
        let m = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(snf(&m), Err(Error::SingularMatrix));
    }

    #[test]
    fn gcd_minors_examples() {
        let a = IntMatrix::from_rows(&[&[2, 0, 4], &[0, 2, 2]]);
        assert_eq!(gcd_maximal_minors(&a).unwrap(), bi(4));
        let a = IntMatrix::from_rows(&[&[6, 10, 15]]);
        assert_eq!(gcd_maximal_minors(&a).unwrap(), bi(1));
        assert_eq!(gcd_maximal_minors(&IntMatrix::identity(4)).unwrap(), bi(1));
        let a = IntMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(
            gcd_maximal_minors(&a),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        );
    }

    #[test]
    fn membership_examples() {
        let a = IntMatrix::from_rows(&[&[6, 10, 15]]);
        let x = lattice_member(&a, &[bi(1)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![bi(1)]);

        let a = IntMatrix::from_rows(&[&[4, 6]]);
        assert_eq!(lattice_member(&a, &[bi(3)]).unwrap(), None);

        let id = IntMatrix::identity(3);
        let b = int_vector(&[5, -7, 0]);
        assert_eq!(lattice_member(&id, &b).unwrap(), Some(b));

        assert!(matches!(
            lattice_member(&id, &[bi(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn membership_in_rank_deficient_lattice() {
        let a = IntMatrix::from_rows(&[&[2, 4], &[3, 6]]);
        assert!(lattice_member(&a, &int_vector(&[2, 3])).unwrap().is_some());
        assert!(lattice_member(&a, &int_vector(&[2, 4])).unwrap().is_none());
    }

    #[test]
    fn equality_examples() {
        let a = IntMatrix::from_rows(&[&[6, 10, 15]]);
        let b = IntMatrix::from_rows(&[&[6, 10, 15, 30]]);
        assert!(lattice_equal(&a, &b));
        assert!(!lattice_equal(
            &IntMatrix::from_rows(&[&[2]]),
            &IntMatrix::from_rows(&[&[4]])
        ));
        assert!(lattice_equal(&a, &a));
    }

    #[test]
    fn integral_left_division() {
        let m = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let a = IntMatrix::from_rows(&[&[4, 2], &[3, 9]]);
        let x = left_divide_integral(&m, &a).unwrap();
        assert_eq!(x, IntMatrix::from_rows(&[&[2, 1], &[1, 3]]));
        let bad = IntMatrix::from_rows(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            left_divide_integral(&m, &bad),
            Err(Error::Internal(_))
        ));
    }
}
