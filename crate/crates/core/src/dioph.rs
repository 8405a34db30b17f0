//! Sparse integer solutions of `A x = b`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::{lattice_member, support_size, IntMatrix, IntVector};
use crate::sparsify::{sparsify, SparsifyCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionReport {
    pub x: IntVector,
    pub support_size: usize,
    pub bound: u32,
    pub bound_name: &'static str,
}

impl SolutionReport {
    pub(crate) fn new(x: IntVector, bound: u32, bound_name: &'static str) -> Self {
        SolutionReport {
            support_size: support_size(&x),
            x,
            bound,
            bound_name,
        }
    }

    pub fn within_bound(&self) -> bool {
        self.support_size <= self.bound as usize
    }
}

pub const LATTICE_BOUND_NAME: &str = "m + Omega_m(|det A_tau| / gcd(A))";

/// Like [`solve_sparse_lattice`], also returning the sparsification certificate.
pub fn solve_sparse_lattice_certified(
    a: &IntMatrix,
    b: &[BigInt],
    tau: &IndexSet,
) -> Result<(SparsifyCertificate, Option<SolutionReport>)> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let cert = sparsify(a, tau)?;
    if !cert.lattice_fingerprint_match {
        return Err(Error::Internal(format!(
            "sparsified columns {} do not generate L(A)",
            cert.gamma
        )));
    }
    let cols = cert.gamma.positions();
    let Some(y) = lattice_member(&a.select_columns(&cols), b)? else {
        return Ok((cert, None));
    };
    let mut x = vec![BigInt::zero(); a.cols()];
    for (&j, v) in cols.iter().zip(y) {
        x[j] = v;
    }
    let report = SolutionReport::new(x, cert.bound, LATTICE_BOUND_NAME);
    Ok((cert, Some(report)))
}

/// An integer solution of `A x = b` supported on the sparsified column set,
/// or `None` when `b` is not in `L(A)`.
pub fn solve_sparse_lattice(
    a: &IntMatrix,
    b: &[BigInt],
    tau: &IndexSet,
) -> Result<Option<SolutionReport>> {
    Ok(solve_sparse_lattice_certified(a, b, tau)?.1)
}
