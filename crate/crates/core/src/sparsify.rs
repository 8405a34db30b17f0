//! Lattice sparsification: given `A` and a nonsingular column basis `τ`,
//! find `γ ⊇ τ` with `L(A_γ) = L(A)` and `|γ| <= m + Ω_m(|det A_τ| / gcd(A))`.
//!
//! The algorithm first changes coordinates by the inverse of an HNF basis of
//! `L(A)` (so the lattice becomes `Z^m`), then greedily discards every
//! non-basis column that is already generated by the remaining columns. The
//! images of the surviving columns form a non-redundant generating set of
//! `Z^m / L(A_τ)`, whose size is bounded by the number of primary cyclic
//! summands of that group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::index_set::{combinations, IndexSet};
use crate::linalg::{
    det_exact, gcd_maximal_minors, hnf_columns, lattice_equal, lattice_member,
    left_divide_integral, IntMatrix,
};
use crate::number_theory::factorize;

/// Default column cap for [`verify_tightness`].
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsifyCertificate {
    pub tau: IndexSet,
    pub gamma: IndexSet,
    /// `m + Ω_m(delta)`.
    pub bound: u32,
    /// `|det A_τ| / gcd(A)`.
    pub delta: BigInt,
    pub gcd: BigInt,
    /// `L(A_γ) == L(A)`, checked against HNF fingerprints of the original matrix.
    pub lattice_fingerprint_match: bool,
    /// Membership tests performed by the non-redundancy scan.
    pub diophantine_solves: usize,
}

impl SparsifyCertificate {
    pub fn is_valid(&self) -> bool {
        self.tau.is_subset_of(&self.gamma)
            && self.gamma.len() <= self.bound as usize
            && self.lattice_fingerprint_match
    }
}

/// Parameters of a basis `τ` of `A`: `(|det A_τ|, gcd(A), delta)`.
pub(crate) fn basis_data(a: &IntMatrix, tau: &IndexSet) -> Result<(BigInt, BigInt, BigInt)> {
    let m = a.rows();
    if a.cols() < m {
        return Err(Error::RankDeficient {
            rank: a.cols(),
            rows: m,
        });
    }
    if tau.len() != m {
        return Err(Error::InvalidIndexSet(format!(
            "basis has {} indices, expected {m}",
            tau.len()
        )));
    }
    tau.check_within(a.cols())?;
    let det_tau = det_exact(&a.select_columns(&tau.positions()))?.abs();
    if det_tau.is_zero() {
        return Err(Error::SingularBasis);
    }
    let gcd = gcd_maximal_minors(a)?;
    let (delta, rem) = det_tau.div_rem(&gcd);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "gcd(A) = {gcd} does not divide |det A_tau| = {det_tau}"
        )));
    }
    Ok((det_tau, gcd, delta))
}

/// `m + Ω_m(delta)`.
pub fn lattice_bound(m: usize, delta: &BigInt) -> Result<u32> {
    let cap = u32::try_from(m).map_err(|_| Error::InvalidArgument("m too large".into()))?;
    Ok(cap + factorize(delta)?.omega_truncated(cap))
}

/// First nonsingular `m`-subset of columns in lexicographic order.
pub fn first_nonsingular_basis(a: &IntMatrix) -> Result<IndexSet> {
    let m = a.rows();
    combinations(a.cols(), m)
        .into_iter()
        .find(|cols| {
            det_exact(&a.select_columns(cols))
                .map(|d| !d.is_zero())
                .unwrap_or(false)
        })
        .map(IndexSet::from_positions)
        .ok_or(Error::RankDeficient {
            rank: crate::linalg::rank(a),
            rows: m,
        })
}

pub fn sparsify(a: &IntMatrix, tau: &IndexSet) -> Result<SparsifyCertificate> {
    let m = a.rows();
    let (_, gcd, delta) = basis_data(a, tau)?;

    // Coordinates in an HNF basis of L(A): the lattice becomes Z^m.
    let basis = hnf_columns(a).basis();
    let reduced = left_divide_integral(&basis, a)?;

    let tau_pos = tau.positions();
    let mut kept: Vec<usize> = (0..a.cols()).filter(|j| !tau_pos.contains(j)).collect();
    let mut solves = 0;
    // Scan from the last column down. A column that survives stays
    // non-redundant after later removals (its complement only shrinks), so
    // one pass yields the same set as rescanning after every removal.
    for idx in (0..kept.len()).rev() {
        let j = kept[idx];
        let others: Vec<usize> = tau_pos
            .iter()
            .copied()
            .chain(kept.iter().copied().filter(|&k| k != j))
            .collect();
        solves += 1;
        let redundant = lattice_member(&reduced.select_columns(&others), &reduced.column(j))?.is_some();
        if redundant {
            kept.remove(idx);
        }
    }

    let gamma = IndexSet::from_positions(tau_pos.iter().copied().chain(kept));
    let lattice_fingerprint_match = lattice_equal(a, &a.select_columns(&gamma.positions()));
    Ok(SparsifyCertificate {
        tau: tau.clone(),
        gamma,
        bound: lattice_bound(m, &delta)?,
        delta,
        gcd,
        lattice_fingerprint_match,
        diophantine_solves: solves,
    })
}

/// A matrix `[B | G]` on which the sparsification bound is attained: `B` is
/// diagonal with determinant `delta`, and the columns of `G` generate each
/// primary cyclic summand of `Z^m / L(B)` exactly once.
pub fn worst_case_instance(m: usize, delta: &BigInt) -> Result<IntMatrix> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if delta < &BigInt::from(2) {
        return Err(Error::InvalidDelta(delta.clone()));
    }
    let mut diag = vec![BigInt::one(); m];
    for (p, s) in factorize(delta)?.factors() {
        let s = *s as usize;
        if s < m {
            for d in diag.iter_mut().take(s) {
                *d *= p;
            }
        } else {
            for d in diag.iter_mut() {
                *d *= p;
            }
            diag[0] *= num_traits::pow(p.clone(), s - m);
        }
    }

    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..m {
        let mut col = vec![BigInt::zero(); m];
        col[i] = diag[i].clone();
        columns.push(col);
    }
    for (i, d) in diag.iter().enumerate() {
        for (p, e) in factorize(d)?.factors() {
            let mut col = vec![BigInt::zero(); m];
            col[i] = d / num_traits::pow(p.clone(), *e as usize);
            columns.push(col);
        }
    }
    IntMatrix::from_columns(m, &columns)
}

/// Smallest `|γ|` over all `γ ⊇ τ` with `L(A_γ) = L(A)`, by exhaustive search.
pub fn minimal_generating_superset(
    a: &IntMatrix,
    tau: &IndexSet,
    cap: usize,
) -> Result<IndexSet> {
    if a.cols() > cap {
        return Err(Error::TooLargeForExhaustive { n: a.cols(), cap });
    }
    basis_data(a, tau)?;
    let tau_pos = tau.positions();
    let rest: Vec<usize> = (0..a.cols()).filter(|j| !tau_pos.contains(j)).collect();
    let target = hnf_columns(a).basis();
    for size in 0..=rest.len() {
        for pick in combinations(rest.len(), size) {
            let cols: Vec<usize> = tau_pos
                .iter()
                .copied()
                .chain(pick.iter().map(|&p| rest[p]))
                .collect();
            if hnf_columns(&a.select_columns(&cols)).basis() == target {
                return Ok(IndexSet::from_positions(cols));
            }
        }
    }
    Err(Error::Internal("the full column set always generates L(A)".into()))
}

/// True iff the smallest generating `γ ⊇ τ` has exactly `m + Ω_m(delta)`
/// columns, i.e. the sparsification bound holds with equality on `A`.
pub fn verify_tightness(a: &IntMatrix, tau: &IndexSet) -> Result<bool> {
    verify_tightness_with_cap(a, tau, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn verify_tightness_with_cap(a: &IntMatrix, tau: &IndexSet, cap: usize) -> Result<bool> {
    let best = minimal_generating_superset(a, tau, cap)?;
    let (_, _, delta) = basis_data(a, tau)?;
    let bound = lattice_bound(a.rows(), &delta)?;
    Ok(best.len().to_u32() == Some(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn three_coprime_columns_need_all() {
        let a = IntMatrix::from_rows(&[&[6, 10, 15]]);
        let c = sparsify(&a, &set(&[1])).unwrap();
        assert_eq!(c.gamma, set(&[1, 2, 3]));
        assert_eq!(c.bound, 3);
        assert_eq!(c.delta, bi(6));
        assert!(c.is_valid());
    }

    #[test]
    fn scan_drops_redundant_columns() {
        // Column 4 is redundant given {4,6,9}; column 3 is needed since
        // gcd(4,6) = 2; column 2 is redundant given {4,9}.
        let a = IntMatrix::from_rows(&[&[4, 6, 9, 15]]);
        let c = sparsify(&a, &set(&[1])).unwrap();
        assert_eq!(c.gamma, set(&[1, 3]));
        assert_eq!(c.bound, 2);
        assert!(c.is_valid());
        assert!(c.diophantine_solves <= 3);
    }

    #[test]
    fn identity_needs_nothing() {
        let a = IntMatrix::identity(3);
        let c = sparsify(&a, &set(&[1, 2, 3])).unwrap();
        assert_eq!(c.gamma, set(&[1, 2, 3]));
        assert_eq!(c.bound, 3);
        assert_eq!(c.diophantine_solves, 0);
    }

    #[test]
    fn nontrivial_gcd_is_divided_out() {
        let a = IntMatrix::from_rows(&[&[2, 0, 4, 2], &[0, 2, 2, 0]]);
        let c = sparsify(&a, &set(&[1, 2])).unwrap();
        assert_eq!(c.gcd, bi(4));
        assert_eq!(c.delta, bi(1));
        assert!(c.is_valid());
    }

    #[test]
    fn errors() {
        let a = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(sparsify(&a, &set(&[1, 2])), Err(Error::SingularBasis));
        let a = IntMatrix::from_rows(&[&[1, 2, 3]]);
        assert!(matches!(
            sparsify(&a, &set(&[1, 2])),
            Err(Error::InvalidIndexSet(_))
        ));
        assert!(matches!(
            sparsify(&a, &set(&[4])),
            Err(Error::InvalidIndexSet(_))
        ));
        let wide = IntMatrix::from_rows(&[&[1], &[2]]);
        assert!(matches!(
            sparsify(&wide, &set(&[1])),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn worst_case_examples() {
        assert_eq!(
            worst_case_instance(1, &bi(6)).unwrap(),
            IntMatrix::from_rows(&[&[6, 3, 2]])
        );
        assert_eq!(
            worst_case_instance(2, &bi(12)).unwrap(),
            IntMatrix::from_rows(&[&[6, 0, 3, 2, 0], &[0, 2, 0, 0, 1]])
        );
        assert_eq!(
            worst_case_instance(1, &bi(2)).unwrap(),
            IntMatrix::from_rows(&[&[2, 1]])
        );
        assert_eq!(
            worst_case_instance(1, &bi(1)),
            Err(Error::InvalidDelta(bi(1)))
        );
        assert!(worst_case_instance(0, &bi(4)).is_err());
    }

    #[test]
    fn worst_case_high_multiplicity() {
        // 2^5 over m = 2: each diagonal gets one 2, the surplus goes to the first.
        let a = worst_case_instance(2, &bi(32)).unwrap();
        assert_eq!(a.select_columns(&[0, 1]), IntMatrix::diagonal(&int_vector(&[16, 2])));
        assert_eq!(a.cols(), 2 + 2);
    }

    #[test]
    fn tightness_examples() {
        let a = worst_case_instance(2, &bi(12)).unwrap();
        assert!(verify_tightness(&a, &set(&[1, 2])).unwrap());

        // Exhaustive search: {1} alone spans 4Z; {1,3} = (4, 9) spans Z, so
        // the minimum is 2 = 1 + Ω_1(4).
        let a = IntMatrix::from_rows(&[&[4, 6, 9, 15]]);
        assert_eq!(
            minimal_generating_superset(&a, &set(&[1]), 14).unwrap(),
            set(&[1, 3])
        );
        assert!(verify_tightness(&a, &set(&[1])).unwrap());

        assert!(verify_tightness(&IntMatrix::identity(2), &set(&[1, 2])).unwrap());

        // (6 10 15 1): the unit column alone suffices, far below the bound 3.
        let a = IntMatrix::from_rows(&[&[6, 10, 15, 1]]);
        assert!(!verify_tightness(&a, &set(&[1])).unwrap());
    }

    #[test]
    fn tightness_respects_cap() {
        let a = IntMatrix::from_rows(&[&[1, 1, 1, 1]]);
        assert_eq!(
            verify_tightness_with_cap(&a, &set(&[1]), 3),
            Err(Error::TooLargeForExhaustive { n: 4, cap: 3 })
        );
    }
}
