//! Big-integer helpers shared by the identity and growth machinery.
//!
//! The folds here are the hot path: every identity check reduces to prefix
//! lcms and row-wise lcm/gcd folds over terms whose sizes differ by orders of
//! magnitude. `gcd` therefore rebalances with a Euclidean step before handing
//! over to the library's binary gcd, and both folds short-circuit on the
//! divisibility that the theory makes the common case.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// gcd that stays fast when the operands are wildly unbalanced.
///
/// Binary gcd costs O(bits(max)^2) even when one side is tiny, so a prefix
/// lcm against a fresh term would otherwise dominate the whole scan. One
/// remainder step makes both sides the size of the smaller operand.
pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if big.bits() - small.bits() > 64 {
        let r = big % small;
        if r.is_zero() {
            return small.clone();
        }
        return r.gcd(small);
    }
    big.gcd(small)
}

/// lcm(a, b) = a / gcd * b, computed with the rebalancing gcd.
pub fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() || b.is_zero() {
        return BigUint::zero();
    }
    let g = gcd(a, b);
    a / &g * b
}

/// Least common multiple of a non-empty list of positive values.
pub fn lcm_fold(values: &[BigUint]) -> Result<BigUint> {
    if values.is_empty() {
        return Err(Error::Usage("lcm of an empty list".into()));
    }
    Ok(lcm_iter(values))
}

/// Greatest common divisor of a non-empty list of positive values.
pub fn gcd_fold(values: &[BigUint]) -> Result<BigUint> {
    if values.is_empty() {
        return Err(Error::Usage("gcd of an empty list".into()));
    }
    Ok(gcd_iter(values))
}

/// Fold lcm over an iterator; empty input yields 1.
///
/// The accumulator is usually already a multiple of the next term, so a
/// single remainder test skips most gcd work.
pub(crate) fn lcm_iter<'a, I>(terms: I) -> BigUint
where
    I: IntoIterator<Item = &'a BigUint>,
{
    let mut acc = BigUint::one();
    for t in terms {
        if t.is_zero() {
            return BigUint::zero();
        }
        if !(&acc % t).is_zero() {
            acc = lcm(&acc, t);
        }
    }
    acc
}

/// Fold gcd over an iterator; empty input yields 0.
///
/// Once the accumulator has shrunk to the true gcd it divides every later
/// term, so the remainder test skips the remaining gcds.
pub(crate) fn gcd_iter<'a, I>(terms: I) -> BigUint
where
    I: IntoIterator<Item = &'a BigUint>,
{
    let mut acc = BigUint::zero();
    for t in terms {
        if acc.is_one() {
            return acc;
        }
        if acc.is_zero() {
            acc = t.clone();
        } else if !(t % &acc).is_zero() {
            acc = gcd(&acc, t);
        }
    }
    acc
}

/// Division that the caller's theory promises to be exact.
/// A nonzero remainder is reported, not truncated.
pub fn exact_div(numerator: &BigUint, denominator: &BigUint) -> Result<BigUint> {
    if denominator.is_zero() {
        return Err(Error::Usage("division by zero".into()));
    }
    let (q, r) = numerator.div_rem(denominator);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::IntegralityViolation {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
        })
    }
}

/// Möbius function values on 1..=limit.
#[derive(Debug, Clone)]
pub struct MobiusTable {
    mu: Vec<i8>,
}

impl MobiusTable {
    pub fn limit(&self) -> usize {
        self.mu.len() - 1
    }

    /// mu(d) for 1 <= d <= limit.
    pub fn mu(&self, d: usize) -> i8 {
        assert!(d >= 1 && d <= self.limit(), "mu({d}) outside sieve range");
        self.mu[d]
    }
}

/// Linear sieve for the Möbius function up to `limit`.
pub fn mobius_sieve(limit: usize) -> Result<MobiusTable> {
    if limit == 0 {
        return Err(Error::Usage("Möbius sieve limit must be positive".into()));
    }
    let mut mu = vec![0i8; limit + 1];
    mu[1] = 1;
    let mut primes: Vec<usize> = Vec::new();
    let mut is_composite = vec![false; limit + 1];
    for i in 2..=limit {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            is_composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    Ok(MobiusTable { mu })
}

/// Divisors of n in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    assert!(n > 0, "divisors of 0 are undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Natural log of a positive big integer.
///
/// Takes the top 64 bits as a mantissa; the discarded tail perturbs the
/// result by less than 2^-52, far inside f64 rounding for the ratios built
/// on top of this.
pub fn ln_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of 0");
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let mantissa = (x >> shift).to_u64().expect("64-bit mantissa") as f64;
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}
