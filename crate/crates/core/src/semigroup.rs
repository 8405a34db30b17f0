//! Nonnegative integer solutions of `A x = b`.
//!
//! Three regimes are handled constructively:
//!
//! * columns that positively span `R^m`: a sparse lattice solution is pushed
//!   into the nonnegative orthant along a strictly positive kernel vector
//!   supported on `γ ∪ β`, where `β` is a Carathéodory basis for `-Σ_{τ} a_i`;
//! * one equation with coefficients of both signs: the above with `m = 1`,
//!   tried for every singleton basis;
//! * one equation with positive coefficients: a feasible point from dynamic
//!   programming is thinned by repeatedly adding multiples of `{-1,0,1}`
//!   kernel vectors found by pigeonhole on residues.
//!
//! [`sparsity_bounds`] evaluates the closed-form bounds for reporting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dioph::{solve_sparse_lattice_certified, SolutionReport};
use crate::error::{Error, Result};
use crate::index_set::{combinations, IndexSet};
use crate::linalg::{det_exact, dot, gcd_maximal_minors, rank, IntMatrix, IntVector};
use crate::number_theory::{floor_log2, floor_log2_sqrt_ratio, omega};
use crate::simplex::{feasible_point, feasible_point_int};
use crate::sparsify::{basis_data, first_nonsingular_basis, lattice_bound};

pub const DEFAULT_B_CAP: u64 = 10_000_000;

pub const SPANNING_BOUND_NAME: &str = "2m + Omega_m(|det A_tau| / gcd(A))";
pub const MIXED_BOUND_NAME: &str = "2 + min_i omega(|a_i| / gcd(a))";
pub const POSITIVE_BOUND_NAME: &str = "1 + floor(log2(min_i a_i / gcd(a)))";

/// `y` with `y_1 >= 0`, `y_i ∈ {-1, 0, 1}` otherwise, `y != 0`, `a·y = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelVector {
    pub y: IntVector,
}

/// `λ ≥ 1` (entrywise) with `A λ = 0`, when one exists.
fn strictly_positive_kernel(a: &IntMatrix) -> Option<Vec<BigRational>> {
    let ones = vec![BigInt::one(); a.cols()];
    let rhs: IntVector = a.mul_vec(&ones).ok()?.into_iter().map(|v| -v).collect();
    let shift = feasible_point_int(a, &rhs)?;
    Some(shift.into_iter().map(|v| v + BigRational::one()).collect())
}

/// Whether the columns of `A` positively span `R^m`.
pub fn positively_spans(a: &IntMatrix) -> bool {
    rank(a) == a.rows() && strictly_positive_kernel(a).is_some()
}

/// A basic feasible solution of `{A λ = v, λ >= 0}`: at most `m` columns
/// `β` with nonnegative coefficients reproducing `v`.
pub fn caratheodory_cone_rep(
    a: &IntMatrix,
    v: &[BigRational],
) -> Result<(IndexSet, Vec<BigRational>)> {
    if v.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: v.len(),
        });
    }
    let lambda = feasible_point(a, v).ok_or(Error::NotInCone)?;
    let (pos, coeffs): (Vec<usize>, Vec<BigRational>) = lambda
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .unzip();
    Ok((IndexSet::from_positions(pos), coeffs))
}

fn lcm_of_denominators(values: &[BigRational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Nonnegative solution when the columns positively span `R^m`, with
/// support at most `2m + Ω_m(|det A_τ| / gcd(A))`; `None` iff `b ∉ L(A)`.
pub fn solve_semigroup_posspan(
    a: &IntMatrix,
    b: &[BigInt],
    tau: &IndexSet,
) -> Result<Option<SolutionReport>> {
    if !positively_spans(a) {
        return Err(Error::NotPositivelySpanning);
    }
    let m = a.rows();
    let (cert, lattice) = solve_sparse_lattice_certified(a, b, tau)?;
    let Some(lattice) = lattice else {
        return Ok(None);
    };
    let bound = m as u32 + cert.bound;
    let mut x = lattice.x;
    if x.iter().all(|v| !v.is_negative()) {
        return Ok(Some(SolutionReport::new(x, bound, SPANNING_BOUND_NAME)));
    }

    // v = -Σ_{i∈τ} a_i lies in the cone; support a positive kernel vector on β ∪ γ.
    let tau_pos = tau.positions();
    let v: Vec<BigRational> = (0..m)
        .map(|i| {
            let s: BigInt = tau_pos.iter().map(|&j| &a[(i, j)]).sum();
            BigRational::from_integer(-s)
        })
        .collect();
    let (beta, _) = caratheodory_cone_rep(a, &v)?;
    let support = beta.union(&cert.gamma).positions();
    let lambda = strictly_positive_kernel(&a.select_columns(&support))
        .ok_or_else(|| Error::Internal("β ∪ γ does not positively span".into()))?;
    let scale = lcm_of_denominators(&lambda);
    let mut kernel = vec![BigInt::zero(); a.cols()];
    for (&j, l) in support.iter().zip(&lambda) {
        kernel[j] = (l * BigRational::from_integer(scale.clone())).to_integer();
    }

    // Smallest N making x + N·kernel nonnegative; negative entries of x lie in γ.
    let mut n = BigInt::zero();
    for (xi, ki) in x.iter().zip(&kernel) {
        if xi.is_negative() {
            if !ki.is_positive() {
                return Err(Error::Internal("negative entry outside kernel support".into()));
            }
            n = n.max(Integer::div_ceil(&(-xi), ki));
        }
    }
    for (xi, ki) in x.iter_mut().zip(&kernel) {
        *xi += &n * ki;
    }
    if a.mul_vec(&x)? != b {
        return Err(Error::Internal("shifted solution violates A x = b".into()));
    }
    Ok(Some(SolutionReport::new(x, bound, SPANNING_BOUND_NAME)))
}

/// `gcd` of a vector (nonnegative; zero for the zero vector).
pub fn gcd_vector(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// `2 + min_i ω(|a_i| / gcd(a))`.
pub fn mixed_knapsack_bound(a: &[BigInt]) -> Result<u32> {
    let g = gcd_vector(a);
    let mut best: Option<u32> = None;
    for ai in a {
        let w = omega(&(ai.abs() / &g))?;
        best = Some(best.map_or(w, |b| b.min(w)));
    }
    best.map(|w| w + 2).ok_or(Error::NoSignMix)
}

/// Nonnegative solution of `a·x = b` for `a` with both signs and no zeros.
pub fn solve_knapsack_mixed(a: &[BigInt], b: &BigInt) -> Result<Option<SolutionReport>> {
    if a.iter().any(|v| v.is_zero())
        || !a.iter().any(|v| v.is_positive())
        || !a.iter().any(|v| v.is_negative())
    {
        return Err(Error::NoSignMix);
    }
    let g = gcd_vector(a);
    if !b.is_multiple_of(&g) {
        return Ok(None);
    }
    let row = IntMatrix::row_vector(a);
    let rhs = [b.clone()];
    let mut best: Option<(usize, u32, SolutionReport)> = None;
    for (i, ai) in a.iter().enumerate() {
        let tau = IndexSet::from_positions([i]);
        let Some(report) = solve_semigroup_posspan(&row, &rhs, &tau)? else {
            return Err(Error::Internal("b divisible by gcd but not in L(a)".into()));
        };
        let w = omega(&(ai.abs() / &g))?;
        let better = match &best {
            None => true,
            Some((s, bw, _)) => (report.support_size, w) < (*s, *bw),
        };
        if better {
            best = Some((report.support_size, w, report));
        }
    }
    let (_, _, report) = best.expect("a is nonempty");
    let bound = mixed_knapsack_bound(a)?;
    Ok(Some(SolutionReport::new(report.x, bound, MIXED_BOUND_NAME)))
}

/// Nonzero `y` with `y_1 ≥ 0`, `y_i ∈ {-1,0,1}` (i ≥ 2) and `a·y = 0`, for
/// positive `a` with `len(a) > 1 + log₂(a_1)`.
///
/// Among the `a_1 + 1` vectors `ε ∈ {0,1}^{t-1}` encoding `0..=a_1` in binary,
/// two share the residue of `Σ ε_i a_i` modulo `a_1`; their difference fixes
/// `y_2..y_t`, and `y_1` absorbs the remaining multiple of `a_1`.
pub fn kernel_vector_pigeonhole(a: &[BigInt]) -> Result<KernelVector> {
    let Some(first) = a.first() else {
        return Err(Error::HypothesisViolated("empty vector".into()));
    };
    if a.iter().any(|v| !v.is_positive()) {
        return Err(Error::HypothesisViolated("entries must be positive".into()));
    }
    let t = a.len();
    // t > 1 + log₂(a_1)  ⇔  a_1 < 2^(t-1)  ⇔  bits(a_1) <= t - 1
    if first.bits() > (t - 1) as u64 {
        return Err(Error::HypothesisViolated(format!(
            "{t} entries do not exceed 1 + log2({first})"
        )));
    }
    let modulus = first
        .to_u64()
        .ok_or_else(|| Error::HypothesisViolated(format!("{first} too large to enumerate")))?;
    let residues: Vec<u64> = a[1..]
        .iter()
        .map(|v| (v % first).to_u64().expect("residue below modulus"))
        .collect();
    let residue_of = |k: u64| -> u64 {
        let mut r: u128 = 0;
        for (bit, &ri) in residues.iter().enumerate() {
            if bit < 64 && (k >> bit) & 1 == 1 {
                r += ri as u128;
            }
        }
        (r % modulus as u128) as u64
    };

    let mut first_seen: Vec<Option<u64>> = vec![None; modulus as usize];
    let (early, late) = (0..=modulus)
        .find_map(|k| {
            let slot = &mut first_seen[residue_of(k) as usize];
            match *slot {
                Some(e) => Some((e, k)),
                None => {
                    *slot = Some(k);
                    None
                }
            }
        })
        .expect("pigeonhole: a_1 + 1 vectors, a_1 residues");

    let bit = |k: u64, i: usize| -> i64 { if i < 64 { ((k >> i) & 1) as i64 } else { 0 } };
    let mut y: IntVector = Vec::with_capacity(t);
    y.push(BigInt::zero());
    for i in 0..t - 1 {
        y.push(BigInt::from(bit(early, i) - bit(late, i)));
    }
    let tail = dot(&a[1..], &y[1..]);
    let (q, r) = (-tail).div_rem(first);
    debug_assert!(r.is_zero());
    y[0] = q;
    if y[0].is_negative() {
        for v in y.iter_mut() {
            *v = -std::mem::take(v);
        }
    }
    Ok(KernelVector { y })
}

fn check_positive_knapsack(a: &[BigInt]) -> Result<()> {
    if a.is_empty() || a.iter().any(|v| !v.is_positive()) {
        return Err(Error::InfeasibleInput(
            "knapsack coefficients must be positive".into(),
        ));
    }
    Ok(())
}

/// `1 + ⌊log₂(min_i a_i / gcd(a))⌋` for positive `a`.
pub fn positive_knapsack_bound(a: &[BigInt]) -> Result<u32> {
    check_positive_knapsack(a)?;
    let g = gcd_vector(a);
    let min = a.iter().min().expect("nonempty");
    Ok(1 + floor_log2(&(min / &g))? as u32)
}

/// The support reduction, returning every intermediate point (first entry is
/// `x0`, last is the result).
pub fn reduce_knapsack_support_steps(a: &[BigInt], x0: &[BigInt]) -> Result<Vec<IntVector>> {
    check_positive_knapsack(a)?;
    if a.len() != x0.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: x0.len(),
        });
    }
    if x0.iter().any(|v| v.is_negative()) {
        return Err(Error::InfeasibleInput("x0 has negative entries".into()));
    }
    let g = gcd_vector(a);
    let scaled: Vec<BigInt> = a.iter().map(|v| v / &g).collect();
    let pivot = (0..a.len())
        .min_by(|&i, &j| scaled[i].cmp(&scaled[j]).then(i.cmp(&j)))
        .expect("nonempty");
    let pivot_bits = scaled[pivot].bits();

    let mut x = x0.to_vec();
    let mut steps = vec![x.clone()];
    loop {
        let active: Vec<usize> = (0..a.len())
            .filter(|&j| j != pivot && !x[j].is_zero())
            .collect();
        // Stop once #active <= log₂(a_pivot), i.e. a_pivot >= 2^#active.
        if pivot_bits > active.len() as u64 {
            break;
        }
        let sub: Vec<BigInt> = std::iter::once(scaled[pivot].clone())
            .chain(active.iter().map(|&j| scaled[j].clone()))
            .collect();
        let KernelVector { y } = kernel_vector_pigeonhole(&sub)?;
        let k = active
            .iter()
            .zip(&y[1..])
            .filter(|(_, yj)| yj.is_negative())
            .map(|(&j, _)| x[j].clone())
            .min()
            .ok_or_else(|| Error::Internal("kernel vector has no -1 entry".into()))?;
        x[pivot] += &k * &y[0];
        for (&j, yj) in active.iter().zip(&y[1..]) {
            x[j] += &k * yj;
        }
        steps.push(x.clone());
    }
    Ok(steps)
}

/// Thins a feasible `x0 >= 0` of `a·x = b` (a > 0) down to at most
/// `1 + ⌊log₂(min a / gcd a)⌋` nonzeros without changing `a·x`.
pub fn reduce_knapsack_support(a: &[BigInt], x0: &[BigInt]) -> Result<SolutionReport> {
    let steps = reduce_knapsack_support_steps(a, x0)?;
    let x = steps.into_iter().last().expect("at least x0");
    Ok(SolutionReport::new(
        x,
        positive_knapsack_bound(a)?,
        POSITIVE_BOUND_NAME,
    ))
}

/// Some `x >= 0` with `a·x = b` found by unbounded-knapsack reachability over
/// `0..=b`, or `None` if `b ∉ Sg(a)`. Assumes `gcd(a) = 1` and positive `a`.
fn knapsack_feasible_point(a: &[u64], b: u64) -> Option<Vec<u64>> {
    const UNREACHED: u32 = u32::MAX;
    let b = b as usize;
    let mut last_item = vec![UNREACHED; b + 1];
    last_item[0] = a.len() as u32;
    for v in 1..=b {
        for (i, &ai) in a.iter().enumerate() {
            let ai = ai as usize;
            if ai <= v && last_item[v - ai] != UNREACHED {
                last_item[v] = i as u32;
                break;
            }
        }
    }
    if last_item[b] == UNREACHED {
        return None;
    }
    let mut x = vec![0u64; a.len()];
    let mut v = b;
    while v > 0 {
        let i = last_item[v] as usize;
        x[i] += 1;
        v -= a[i] as usize;
    }
    Some(x)
}

/// Sparse nonnegative solution of `a·x = b` for positive `a`.
pub fn solve_knapsack_positive(
    a: &[BigInt],
    b: &BigInt,
    b_cap: u64,
) -> Result<Option<SolutionReport>> {
    check_positive_knapsack(a)?;
    if b.is_negative() {
        return Ok(None);
    }
    let g = gcd_vector(a);
    if !b.is_multiple_of(&g) {
        return Ok(None);
    }
    let scaled_b = b / &g;
    let target = scaled_b
        .to_u64()
        .filter(|&v| v <= b_cap)
        .ok_or(Error::CapExceeded {
            value: scaled_b.clone(),
            cap: b_cap,
        })?;
    // Entries above the target can never be used.
    let scaled: Vec<u64> = a
        .iter()
        .map(|v| (v / &g).to_u64().unwrap_or(u64::MAX))
        .collect();
    let Some(x0) = knapsack_feasible_point(&scaled, target) else {
        return Ok(None);
    };
    let x0: IntVector = x0.into_iter().map(BigInt::from).collect();
    reduce_knapsack_support(a, &x0).map(Some)
}

/// Pointed-cone bound `m + ⌊log₂(q(A) / gcd(A))⌋`, reported without a
/// matching construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedConeBound {
    /// 1-based column spanning an extreme ray.
    pub extreme_ray: usize,
    /// `q(A)^2 = Σ_{I ∋ ray} det(A_I)^2`.
    pub q_squared: BigInt,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub gcd: BigInt,
    pub tau: IndexSet,
    pub delta: BigInt,
    /// `det(A Aᵀ)`.
    pub gram_determinant: BigInt,
    /// `m + ⌊log₂(√det(A Aᵀ) / gcd(A))⌋`, valid for every `b ∈ Sg(A)`.
    pub gram_bound: u64,
    /// `m + Ω_m(delta)`: lattice sparsification.
    pub lattice_bound: u32,
    /// `2m + Ω_m(delta)`: positively spanning columns.
    pub spanning_bound: u32,
    pub pointed_cone: Option<PointedConeBound>,
    /// `1 + ⌊log₂(min |a_i| / gcd)⌋` for a single equation of one sign.
    pub knapsack_bound: Option<u32>,
}

fn is_positive_multiple(col: &[BigInt], of: &[BigInt]) -> bool {
    let Some(p) = of.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    if col[p].is_zero() || col[p].is_negative() != of[p].is_negative() {
        return false;
    }
    col.iter()
        .zip(of)
        .all(|(c, o)| c * &of[p] == o * &col[p])
}

/// Whether the cone of `A` is pointed: no nonzero `λ >= 0` with `A λ = 0`.
pub fn cone_is_pointed(a: &IntMatrix) -> bool {
    let mut rows: Vec<IntVector> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    rows.push(vec![BigInt::one(); a.cols()]);
    let data: Vec<BigInt> = rows.into_iter().flatten().collect();
    let aug = IntMatrix::from_data(a.rows() + 1, a.cols(), data).expect("consistent shape");
    let mut rhs = vec![BigInt::zero(); a.rows()];
    rhs.push(BigInt::one());
    feasible_point_int(&aug, &rhs).is_none()
}

/// Whether column `k` (0-based) spans an extreme ray of a pointed cone.
pub fn spans_extreme_ray(a: &IntMatrix, k: usize) -> bool {
    let ak = a.column(k);
    if ak.iter().all(|v| v.is_zero()) {
        return false;
    }
    let others: Vec<usize> = (0..a.cols())
        .filter(|&j| j != k && !is_positive_multiple(&a.column(j), &ak))
        .collect();
    others.is_empty() || feasible_point_int(&a.select_columns(&others), &ak).is_none()
}

/// Nonzero columns, full rank, pointed cone.
pub fn pointed_cone_conditions(a: &IntMatrix) -> bool {
    (0..a.cols()).all(|j| !a.column_is_zero(j)) && rank(a) == a.rows() && cone_is_pointed(a)
}

fn pointed_cone_bound(
    a: &IntMatrix,
    gcd: &BigInt,
    ray: Option<usize>,
) -> Result<Option<PointedConeBound>> {
    if !pointed_cone_conditions(a) {
        return Ok(None);
    }
    let ray = match ray {
        Some(r) => {
            if r == 0 || r > a.cols() {
                return Err(Error::InvalidIndexSet(format!("extreme ray {r} out of range")));
            }
            if !spans_extreme_ray(a, r - 1) {
                return Ok(None);
            }
            r - 1
        }
        None => match (0..a.cols()).find(|&k| spans_extreme_ray(a, k)) {
            Some(k) => k,
            None => return Ok(None),
        },
    };
    let (m, n) = (a.rows(), a.cols());
    let mut q_squared = BigInt::zero();
    for rest in combinations(n - 1, m - 1) {
        let mut cols: Vec<usize> = rest
            .into_iter()
            .map(|j| if j >= ray { j + 1 } else { j })
            .collect();
        cols.push(ray);
        let d = det_exact(&a.select_columns(&cols))?;
        q_squared += &d * &d;
    }
    let bound = m as u64 + floor_log2_sqrt_ratio(&q_squared, gcd)?;
    Ok(Some(PointedConeBound {
        extreme_ray: ray + 1,
        q_squared,
        bound,
    }))
}

pub fn sparsity_bounds(a: &IntMatrix, tau: Option<&IndexSet>) -> Result<BoundsReport> {
    sparsity_bounds_with_ray(a, tau, None)
}

/// All closed-form bounds for `A`. `tau` defaults to the first nonsingular
/// basis; `ray` (1-based) designates the extreme-ray column for the
/// pointed-cone bound, defaulting to the first column that qualifies.
pub fn sparsity_bounds_with_ray(
    a: &IntMatrix,
    tau: Option<&IndexSet>,
    ray: Option<usize>,
) -> Result<BoundsReport> {
    let m = a.rows();
    let gcd = gcd_maximal_minors(a)?;
    let tau = match tau {
        Some(t) => t.clone(),
        None => first_nonsingular_basis(a)?,
    };
    let (_, _, delta) = basis_data(a, &tau)?;
    let lattice = lattice_bound(m, &delta)?;
    let gram_determinant = det_exact(&a.mul(&a.transpose())?)?;
    let gram_bound = m as u64 + floor_log2_sqrt_ratio(&gram_determinant, &gcd)?;

    let knapsack_bound = if m == 1 {
        let row = a.row(0);
        if row.iter().all(|v| v.is_positive()) || row.iter().all(|v| v.is_negative()) {
            let abs: Vec<BigInt> = row.iter().map(|v| v.abs()).collect();
            Some(positive_knapsack_bound(&abs)?)
        } else {
            None
        }
    } else {
        None
    };

    Ok(BoundsReport {
        pointed_cone: pointed_cone_bound(a, &gcd, ray)?,
        gcd,
        tau,
        delta,
        gram_determinant,
        gram_bound,
        lattice_bound: lattice,
        spanning_bound: lattice + m as u32,
        knapsack_bound,
    })
}
