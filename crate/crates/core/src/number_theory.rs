//! Factorization and the prime-counting functions built on it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Witnesses 2..=37 make Miller-Rabin exact below this bound (> 2^64).
const DETERMINISTIC_MR_BOUND: &str = "318665857834031151167461";
const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const RANDOM_MR_ROUNDS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Total Pollard-rho iterations allowed before giving up.
    pub rho_iteration_cap: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            rho_iteration_cap: 5_000_000,
        }
    }
}

/// Prime factorization: `(prime, multiplicity)` pairs, primes increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> BigInt {
        self.factors
            .iter()
            .map(|(p, s)| num_traits::pow(p.clone(), *s as usize))
            .product()
    }

    /// Sum of multiplicities, each capped at `m`.
    pub fn omega_truncated(&self, m: u32) -> u32 {
        self.factors.iter().map(|&(_, s)| s.min(m)).sum()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, s)| s).sum()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, s)| match s {
                1 => p.to_string(),
                _ => format!("{p}^{s}"),
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

pub fn factorize(z: &BigInt) -> Result<Factorization> {
    factorize_with(z, &FactorConfig::default())
}

pub fn factorize_with(z: &BigInt, config: &FactorConfig) -> Result<Factorization> {
    if !z.is_positive() {
        return Err(Error::NonPositive(z.clone()));
    }
    let mut primes: Vec<BigInt> = Vec::new();
    let mut rest = z.clone();

    let mut d: u64 = 2;
    while d <= TRIAL_DIVISION_LIMIT {
        let dd = BigInt::from(d);
        if &dd * &dd > rest {
            break;
        }
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            primes.push(dd.clone());
        }
        d += if d == 2 { 1 } else { 2 };
    }

    if !rest.is_one() {
        let mut budget = config.rho_iteration_cap;
        split_cofactor(&rest, &mut budget, &mut primes)
            .map_err(|_| Error::FactorizationTimeout(z.clone()))?;
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, s)) if *q == p => *s += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { factors })
}

struct OutOfBudget;

fn split_cofactor(
    n: &BigInt,
    budget: &mut u64,
    out: &mut Vec<BigInt>,
) -> std::result::Result<(), OutOfBudget> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return Ok(());
    }
    let f = pollard_brent(n, budget).ok_or(OutOfBudget)?;
    split_cofactor(&f, budget, out)?;
    split_cofactor(&(n / &f), budget, out)
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the
/// composite `n`, or `None` once `budget` iterations are spent.
fn pollard_brent(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let step = |x: &BigInt, c: &BigInt| (x * x + c) % n;
    const BATCH: u64 = 128;
    let mut c = BigInt::one();
    loop {
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y, &c);
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = BATCH.min(r - k);
                for _ in 0..lim {
                    y = step(&y, &c);
                    q = (q * (&x - &y).abs()) % n;
                }
                *budget = budget.checked_sub(lim)?;
                g = q.gcd(n);
                k += lim;
            }
            r *= 2;
        }
        if &g == n {
            // Batch overshot: retrace one step at a time.
            loop {
                ys = step(&ys, &c);
                *budget = budget.checked_sub(1)?;
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        c += 1;
    }
}

/// Miller-Rabin. Exact for `n` below ~3.2e23; above that, 40 extra rounds
/// with pseudo-random bases from a fixed seed keep the answer reproducible.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let witness = |a: &BigInt| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return false;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };

    if SMALL_PRIMES.iter().any(|&p| witness(&BigInt::from(p))) {
        return false;
    }
    let bound: BigInt = DETERMINISTIC_MR_BOUND.parse().expect("valid literal");
    if n < &bound {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let span = n - BigInt::from(3);
    (0..RANDOM_MR_ROUNDS).all(|_| {
        let a = BigInt::from(rng.gen::<u64>()) % &span + 2;
        !witness(&a)
    })
}

/// `Ω_m(z)`: multiplicities in the factorization of `z`, each capped at `m`.
pub fn omega_truncated(z: &BigInt, m: u32) -> Result<u32> {
    Ok(factorize(z)?.omega_truncated(m))
}

pub fn omega(z: &BigInt) -> Result<u32> {
    omega_truncated(z, 1)
}

pub fn big_omega(z: &BigInt) -> Result<u32> {
    Ok(factorize(z)?.big_omega())
}

/// Number of primary cyclic summands of `Z/d_1 ⊕ ... ⊕ Z/d_k`.
pub fn kappa_from_cyclic_orders(orders: &[BigInt]) -> Result<u32> {
    orders.iter().map(omega).sum()
}

/// `⌊log₂ z⌋` for `z ≥ 1`.
pub fn floor_log2(z: &BigInt) -> Result<u64> {
    if !z.is_positive() {
        return Err(Error::NonPositive(z.clone()));
    }
    Ok(z.bits() - 1)
}

/// Largest `k` with `4^k * g^2 <= value`, i.e. `⌊log₂(√value / g)⌋`.
/// Requires `value >= g^2 >= 1`.
pub fn floor_log2_sqrt_ratio(value: &BigInt, g: &BigInt) -> Result<u64> {
    let g2 = g * g;
    if !g.is_positive() || value < &g2 {
        return Err(Error::Internal(format!(
            "sqrt({value}) / {g} is below 1"
        )));
    }
    let ratio = value / &g2;
    // ⌊log₄(value / g²)⌋ equals ⌊log₄ ⌊value / g²⌋⌋.
    Ok((ratio.bits() - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn fac(pairs: &[(i64, u32)]) -> Vec<(BigInt, u32)> {
        pairs.iter().map(|&(p, s)| (bi(p), s)).collect()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(&bi(1)).unwrap().is_empty());
        assert_eq!(factorize(&bi(12)).unwrap().factors(), fac(&[(2, 2), (3, 1)]));
        assert_eq!(
            factorize(&bi(360)).unwrap().factors(),
            fac(&[(2, 3), (3, 2), (5, 1)])
        );
        assert_eq!(factorize(&bi(360)).unwrap().to_string(), "2^3 * 3^2 * 5");
        assert_eq!(factorize(&bi(1)).unwrap().to_string(), "1");
    }

    #[test]
    fn factorize_rejects_nonpositive() {
        assert_eq!(factorize(&bi(0)), Err(Error::NonPositive(bi(0))));
        assert_eq!(factorize(&bi(-4)), Err(Error::NonPositive(bi(-4))));
    }

    #[test]
    fn factorize_beyond_trial_division() {
        // 1000003 and 1000033 are both prime and above the trial-division limit.
        let p = bi(1_000_003);
        let q = bi(1_000_033);
        let f = factorize(&(&p * &q * &q)).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 2)]);

        let m31: BigInt = (BigInt::one() << 31) - 1;
        let m89: BigInt = (BigInt::one() << 89) - 1;
        let f = factorize(&(&m31 * &m89)).unwrap();
        assert_eq!(f.factors(), &[(m31, 1), (m89, 1)]);
    }

    #[test]
    fn rho_gives_up_when_budget_is_zero() {
        let n = bi(1_000_003) * bi(1_000_033);
        let cfg = FactorConfig {
            rho_iteration_cap: 0,
        };
        assert_eq!(
            factorize_with(&n, &cfg),
            Err(Error::FactorizationTimeout(n))
        );
    }

    #[test]
    fn primality() {
        assert!(!is_probable_prime(&bi(1)));
        assert!(is_probable_prime(&bi(2)));
        assert!(is_probable_prime(&bi(1_000_003)));
        assert!(!is_probable_prime(&bi(561)));
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_probable_prime(&bi(3_215_031_751)));
        let m127: BigInt = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * bi(3))));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_truncated(&bi(12), 1).unwrap(), 2);
        assert_eq!(omega_truncated(&bi(12), 2).unwrap(), 3);
        assert_eq!(omega_truncated(&bi(1), 5).unwrap(), 0);
        assert_eq!(omega_truncated(&bi(360), 2).unwrap(), 5);
        assert_eq!(big_omega(&bi(360)).unwrap(), 6);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_from_cyclic_orders(&[bi(1), bi(1)]).unwrap(), 0);
        assert_eq!(kappa_from_cyclic_orders(&[bi(6), bi(2)]).unwrap(), 3);
        assert_eq!(kappa_from_cyclic_orders(&[bi(12)]).unwrap(), 2);
    }

    #[test]
    fn log_helpers() {
        assert_eq!(floor_log2(&bi(1)).unwrap(), 0);
        assert_eq!(floor_log2(&bi(3)).unwrap(), 1);
        assert_eq!(floor_log2(&bi(4)).unwrap(), 2);
        // sqrt(83) ≈ 9.11 → 3
        assert_eq!(floor_log2_sqrt_ratio(&bi(83), &bi(1)).unwrap(), 3);
        // sqrt(361) = 19 → 4
        assert_eq!(floor_log2_sqrt_ratio(&bi(361), &bi(1)).unwrap(), 4);
        // sqrt(64)/2 = 4 → 2; sqrt(63)/2 < 4 → 1
        assert_eq!(floor_log2_sqrt_ratio(&bi(64), &bi(2)).unwrap(), 2);
        assert_eq!(floor_log2_sqrt_ratio(&bi(63), &bi(2)).unwrap(), 1);
    }
}
