//! Brute-force ground truth for small instances.
//!
//! Nothing here shares code paths with the solvers it is used to check:
//! determinants are Laplace expansions, minimum supports come from
//! table-filling or subset enumeration, never from HNF or simplex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::index_set::combinations;
use crate::linalg::IntMatrix;

pub const DEFAULT_COORD_CAP: u64 = 50;

/// Cofactor (Laplace) expansion along the first row.
pub fn det_cofactor(m: &IntMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    match n {
        0 => BigInt::one(),
        1 => m[(0, 0)].clone(),
        2 => &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)],
        _ => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let mut data = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for k in (0..n).filter(|&k| k != j) {
                        data.push(m[(i, k)].clone());
                    }
                }
                let minor = IntMatrix::from_data(n - 1, n - 1, data).expect("square minor");
                let term = &m[(0, j)] * det_cofactor(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// gcd of all `m × m` minors, enumerated explicitly (0 if all vanish).
pub fn gcd_of_minors(a: &IntMatrix) -> BigInt {
    combinations(a.cols(), a.rows())
        .into_iter()
        .map(|cols| det_cofactor(&a.select_columns(&cols)))
        .fold(BigInt::zero(), |g, d| g.gcd(&d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinSupport {
    /// Smallest support found, if any.
    pub min_support: Option<usize>,
    /// Whether the search covered every candidate it needed to: then
    /// `Some(k)` is the true minimum and `None` proves infeasibility.
    pub complete: bool,
}

const INF: u32 = u32::MAX;

/// `table[v]` = fewest distinct items of the positive vector `a` summing to
/// `v` with repetition, or `INF`. Items are folded in one at a time;
/// `with_item[v]` tracks the best value that uses the newest item.
pub fn knapsack_min_support_table(a: &[u64], b_max: usize) -> Vec<u32> {
    let mut best = vec![INF; b_max + 1];
    best[0] = 0;
    for &ai in a {
        let Ok(ai) = usize::try_from(ai) else { continue };
        if ai == 0 || ai > b_max {
            continue;
        }
        let mut with_item = vec![INF; b_max + 1];
        for v in ai..=b_max {
            let fresh = best[v - ai].saturating_add(1);
            let again = with_item[v - ai];
            with_item[v] = fresh.min(again);
        }
        for v in 0..=b_max {
            best[v] = best[v].min(with_item[v]);
        }
    }
    best
}

fn reachable_table(a: &[u64], b_max: usize) -> Vec<bool> {
    let mut reach = vec![false; b_max + 1];
    reach[0] = true;
    for v in 1..=b_max {
        reach[v] = a.iter().any(|&ai| ai as usize <= v && reach[v - ai as usize]);
    }
    reach
}

/// Exact minimum support of `a·x = b, x >= 0` by trying subsets in order of
/// size. `S` works iff `a_S·y = b - Σ_S a_i` has `y >= 0`: for a mixed-sign
/// `S` that is divisibility by `gcd(a_S)`, for a one-signed `S` it is a
/// reachability table.
pub fn min_support_by_subsets(a: &[BigInt], b: &BigInt) -> Result<Option<usize>> {
    if b.is_zero() {
        return Ok(Some(0));
    }
    let nz: Vec<usize> = (0..a.len()).filter(|&i| !a[i].is_zero()).collect();
    for size in 1..=nz.len() {
        for pick in combinations(nz.len(), size) {
            let s: Vec<&BigInt> = pick.iter().map(|&p| &a[nz[p]]).collect();
            let has_pos = s.iter().any(|v| v.is_positive());
            let has_neg = s.iter().any(|v| v.is_negative());
            if has_pos && has_neg {
                let g = s.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
                if b.is_multiple_of(&g) {
                    return Ok(Some(size));
                }
                continue;
            }
            let sign = if has_pos { BigInt::one() } else { -BigInt::one() };
            let rest: BigInt = (b - s.iter().copied().sum::<BigInt>()) * &sign;
            if rest.is_negative() {
                continue;
            }
            let rest = rest
                .to_usize()
                .ok_or_else(|| Error::InvalidArgument(format!("{b} too large to enumerate")))?;
            let items: Vec<u64> = s
                .iter()
                .map(|v| v.abs().to_u64().unwrap_or(u64::MAX))
                .collect();
            if reachable_table(&items, rest)[rest] {
                return Ok(Some(size));
            }
        }
    }
    Ok(None)
}

fn single_row_min_support(a: &[BigInt], b: &BigInt) -> Result<MinSupport> {
    let nonzero: Vec<&BigInt> = a.iter().filter(|v| !v.is_zero()).collect();
    let all_pos = nonzero.iter().all(|v| v.is_positive());
    let all_neg = nonzero.iter().all(|v| v.is_negative());
    let min_support = if all_pos || all_neg {
        let target = if all_neg { -b } else { b.clone() };
        if target.is_negative() {
            None
        } else {
            let t = target
                .to_usize()
                .ok_or_else(|| Error::InvalidArgument(format!("{b} too large to enumerate")))?;
            let items: Vec<u64> = nonzero
                .iter()
                .map(|v| v.abs().to_u64().unwrap_or(u64::MAX))
                .collect();
            let table = knapsack_min_support_table(&items, t);
            (table[t] != INF).then_some(table[t] as usize)
        }
    } else {
        min_support_by_subsets(a, b)?
    };
    Ok(MinSupport {
        min_support,
        complete: true,
    })
}

/// Searches one support `S` (all entries >= 1). Independent columns are
/// solved for exactly; the remaining free coordinates range over `1..=cap`.
/// Returns `(found, exhaustive)`.
fn search_support(a: &IntMatrix, b: &[BigInt], support: &[usize], cap: u64) -> (bool, bool) {
    let m = a.rows();
    let sub = a.select_columns(support);

    // Greedy pivot columns / rows via exact rational elimination.
    let mut pivots: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    for (p, &_j) in support.iter().enumerate() {
        let mut col: Vec<BigRational> = (0..m)
            .map(|i| BigRational::from_integer(sub[(i, p)].clone()))
            .collect();
        for (e, &piv_row) in echelon.iter().zip(&row_leads(&echelon)) {
            if col[piv_row].is_zero() {
                continue;
            }
            let f = &col[piv_row] / &e[piv_row];
            for i in 0..m {
                let d = &f * &e[i];
                col[i] -= d;
            }
        }
        if col.iter().any(|v| !v.is_zero()) {
            echelon.push(col);
            pivots.push(p);
        }
    }
    let lead_rows = row_leads(&echelon);
    let free: Vec<usize> = (0..support.len()).filter(|p| !pivots.contains(p)).collect();
    let r = pivots.len();

    // Square system on (lead_rows × pivots), inverted once.
    let square: Vec<Vec<BigRational>> = lead_rows
        .iter()
        .map(|&i| {
            pivots
                .iter()
                .map(|&p| BigRational::from_integer(sub[(i, p)].clone()))
                .collect()
        })
        .collect();
    let inv = invert(&square);

    let mut assignment = vec![1u64; free.len()];
    loop {
        let mut rhs: Vec<BigInt> = b.to_vec();
        for (&p, &val) in free.iter().zip(&assignment) {
            for (i, r) in rhs.iter_mut().enumerate() {
                *r -= &sub[(i, p)] * BigInt::from(val);
            }
        }
        let xp: Vec<BigRational> = (0..r)
            .map(|k| {
                lead_rows
                    .iter()
                    .enumerate()
                    .map(|(l, &i)| &inv[k][l] * BigRational::from_integer(rhs[i].clone()))
                    .sum()
            })
            .collect();
        if xp.iter().all(|v| v.is_integer() && v >= &BigRational::one()) {
            let ok = (0..m).all(|i| {
                let lhs: BigRational = pivots
                    .iter()
                    .zip(&xp)
                    .map(|(&p, v)| BigRational::from_integer(sub[(i, p)].clone()) * v)
                    .sum();
                lhs == BigRational::from_integer(rhs[i].clone())
            });
            if ok {
                return (true, free.is_empty());
            }
        }
        // next assignment in 1..=cap
        let mut k = 0;
        loop {
            if k == assignment.len() {
                return (false, free.is_empty());
            }
            if assignment[k] < cap {
                assignment[k] += 1;
                break;
            }
            assignment[k] = 1;
            k += 1;
        }
    }
}

fn row_leads(echelon: &[Vec<BigRational>]) -> Vec<usize> {
    echelon
        .iter()
        .map(|c| c.iter().position(|v| !v.is_zero()).expect("nonzero column"))
        .collect()
}

fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&p| !aug[p][c].is_zero()).expect("nonsingular");
        aug.swap(p, c);
        let inv = aug[c][c].recip();
        for v in aug[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..2 * n {
                    let d = &f * &aug[c][j];
                    aug[i][j] -= d;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Smallest support of a nonnegative integer solution of `A x = b`.
///
/// One equation is solved exactly. For `m >= 2`, supports of size
/// `1..=k_max` are scanned and coordinates not fixed by a linear solve range
/// over `1..=coord_cap`; `complete` reports whether that search was exhaustive.
pub fn min_support_exact(
    a: &IntMatrix,
    b: &[BigInt],
    k_max: usize,
    coord_cap: u64,
) -> Result<MinSupport> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    if b.iter().all(|v| v.is_zero()) {
        return Ok(MinSupport {
            min_support: Some(0),
            complete: true,
        });
    }
    if a.rows() == 1 {
        return single_row_min_support(a.row(0), &b[0]);
    }
    let n = a.cols();
    let mut complete = true;
    for size in 1..=k_max.min(n) {
        for support in combinations(n, size) {
            let (found, exhaustive) = search_support(a, b, &support, coord_cap);
            if found {
                return Ok(MinSupport {
                    min_support: Some(size),
                    complete,
                });
            }
            complete &= exhaustive;
        }
    }
    Ok(MinSupport {
        min_support: None,
        complete: complete && k_max >= n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IcrScan {
    /// `max` of the minimum support over scanned semigroup elements: a lower
    /// bound on the integer Carathéodory rank.
    pub lower_bound: usize,
    /// Smallest `b` attaining it.
    pub attained_at: u64,
}

/// Scans `b ∈ [0, b_max] ∩ Sg(a)` for positive `a`.
pub fn icr_scan(a: &[BigInt], b_max: u64) -> Result<IcrScan> {
    if a.is_empty() || a.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidArgument("icr scan needs positive entries".into()));
    }
    let b_max = usize::try_from(b_max)
        .map_err(|_| Error::InvalidArgument("b_max too large".into()))?;
    let items: Vec<u64> = a.iter().map(|v| v.to_u64().unwrap_or(u64::MAX)).collect();
    let table = knapsack_min_support_table(&items, b_max);
    let mut scan = IcrScan {
        lower_bound: 0,
        attained_at: 0,
    };
    for (b, &s) in table.iter().enumerate() {
        if s != INF && s as usize > scan.lower_bound {
            scan = IcrScan {
                lower_bound: s as usize,
                attained_at: b as u64,
            };
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cofactor_det() {
        let m = IntMatrix::from_rows(&[&[6, 10], &[0, 2]]);
        assert_eq!(det_cofactor(&m), bi(12));
        let m = IntMatrix::from_rows(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(-6-20) + 1(-2-0) = -54
        assert_eq!(det_cofactor(&m), bi(-54));
    }

    #[test]
    fn minor_gcd() {
        let a = IntMatrix::from_rows(&[&[2, 0, 4], &[0, 2, 2]]);
        assert_eq!(gcd_of_minors(&a), bi(4));
        assert_eq!(gcd_of_minors(&IntMatrix::from_rows(&[&[6, 10, 15]])), bi(1));
    }

    #[test]
    fn min_support_examples() {
        let a = IntMatrix::from_rows(&[&[6, 10, 15]]);
        let r = min_support_exact(&a, &[bi(30)], 3, DEFAULT_COORD_CAP).unwrap();
        assert_eq!(r, MinSupport { min_support: Some(1), complete: true });

        let a = IntMatrix::from_rows(&[&[2, 3]]);
        let r = min_support_exact(&a, &[bi(5)], 2, DEFAULT_COORD_CAP).unwrap();
        assert_eq!(r.min_support, Some(2));
        let r = min_support_exact(&a, &[bi(1)], 2, DEFAULT_COORD_CAP).unwrap();
        assert_eq!(r, MinSupport { min_support: None, complete: true });

        let id = IntMatrix::identity(2);
        let r = min_support_exact(&id, &[bi(0), bi(0)], 2, DEFAULT_COORD_CAP).unwrap();
        assert_eq!(r.min_support, Some(0));
    }

    #[test]
    fn min_support_multi_row() {
        let a = IntMatrix::from_rows(&[&[1, 0, -1], &[0, 1, -1]]);
        let r = min_support_exact(&a, &int_vector(&[-2, -2]), 3, 10).unwrap();
        assert_eq!(r.min_support, Some(1));
        assert!(r.complete);

        let id = IntMatrix::identity(2);
        let r = min_support_exact(&id, &int_vector(&[3, 4]), 2, 10).unwrap();
        assert_eq!(r, MinSupport { min_support: Some(2), complete: true });
        let r = min_support_exact(&id, &int_vector(&[-1, 4]), 2, 10).unwrap();
        assert_eq!(r, MinSupport { min_support: None, complete: true });

        // x1 + x2 = 2 and x3 = 1 with a redundant free column: capped search
        let a = IntMatrix::from_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        let r = min_support_exact(&a, &int_vector(&[-1, 1]), 3, 5).unwrap();
        assert_eq!(r, MinSupport { min_support: None, complete: false });
    }

    #[test]
    fn single_row_mixed_signs() {
        let a = int_vector(&[6, 10, -15]);
        assert_eq!(min_support_by_subsets(&a, &bi(1)).unwrap(), Some(3));
        assert_eq!(min_support_by_subsets(&a, &bi(-5)).unwrap(), Some(2));
        assert_eq!(min_support_by_subsets(&int_vector(&[4, -6]), &bi(3)).unwrap(), None);
    }

    #[test]
    fn icr_examples() {
        assert_eq!(icr_scan(&int_vector(&[2, 3]), 40).unwrap().lower_bound, 2);
        assert_eq!(icr_scan(&int_vector(&[1]), 25).unwrap().lower_bound, 1);
        let s = icr_scan(&int_vector(&[6, 10, 15]), 60).unwrap();
        assert_eq!(s.lower_bound, 3);
        assert_eq!(s.attained_at, 31);
        assert!(icr_scan(&int_vector(&[2, -3]), 10).is_err());
    }
}
