//! Exact comparison of integers against powers of the dominant root.
//!
//! Everything here is integer arithmetic in the ring of elements
//! (x + y*sqrt(Delta))/2. No floating point: the growth bounds are decided
//! by squaring out the single square root, with explicit sign analysis so
//! absolute values never round.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::LucasParams;

/// Exact value (x + y*sqrt(Delta))/2 with Delta > 0.
///
/// Powers of (P + sqrt(Delta))/2 stay on the half-integer lattice: x and y
/// share parity when Delta is odd and are both even when Delta is even, so
/// ring products halve exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticHalfInt {
    x: BigInt,
    y: BigInt,
    delta: BigInt,
}

impl QuadraticHalfInt {
    pub fn new(x: BigInt, y: BigInt, delta: BigInt) -> Result<Self> {
        if delta.sign() != num_bigint::Sign::Plus {
            return Err(Error::UnsupportedParameters(
                "quadratic values need a positive discriminant".into(),
            ));
        }
        Ok(QuadraticHalfInt { x, y, delta })
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    /// Multiplicative identity: (2 + 0*sqrt(Delta))/2.
    fn one(delta: BigInt) -> Self {
        QuadraticHalfInt {
            x: BigInt::from(2),
            y: BigInt::zero(),
            delta,
        }
    }

    /// (x - y*sqrt(Delta))/2, the algebraic conjugate.
    pub fn conjugate(&self) -> Self {
        QuadraticHalfInt {
            x: self.x.clone(),
            y: -&self.y,
            delta: self.delta.clone(),
        }
    }

    /// x^2 - y^2*Delta: four times the field norm. For alpha_power outputs
    /// this equals 4*Q^m exactly.
    pub fn norm4(&self) -> BigInt {
        &self.x * &self.x - &self.y * &self.y * &self.delta
    }

    /// Ring product. Panics if the halves are inexact, which cannot happen
    /// for products of root powers (parity argument above).
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.delta, other.delta);
        let xx = &self.x * &other.x + &self.y * &other.y * &self.delta;
        let xy = &self.x * &other.y + &self.y * &other.x;
        assert!(
            xx.is_even() && xy.is_even(),
            "product left the half-integer lattice"
        );
        QuadraticHalfInt {
            x: xx >> 1,
            y: xy >> 1,
            delta: self.delta.clone(),
        }
    }

    /// Sign of the real value x + y*sqrt(Delta).
    fn value_sign(&self) -> Ordering {
        use num_bigint::Sign::*;
        match (self.x.sign(), self.y.sign()) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus | NoSign, Plus | NoSign) => Ordering::Greater,
            (Minus | NoSign, Minus | NoSign) => Ordering::Less,
            // x > 0 > y: sign decided by x^2 vs y^2*Delta
            (Plus, Minus) => {
                let xs = &self.x * &self.x;
                let ys = &self.y * &self.y * &self.delta;
                xs.cmp(&ys)
            }
            // x < 0 < y
            (Minus, Plus) => {
                let xs = &self.x * &self.x;
                let ys = &self.y * &self.y * &self.delta;
                ys.cmp(&xs)
            }
        }
    }

    /// Ordering of |self| against the non-negative integer t, exactly.
    ///
    /// Reduces to one squaring: with (a, b) the sign-normalized numerator
    /// (value a + b*sqrt(Delta) >= 0) and D = 2t - a, the comparison is
    /// b*sqrt(Delta) vs D, settled by comparing b^2*Delta with D^2 once the
    /// signs disambiguate.
    pub fn cmp_abs_int(&self, t: &BigUint) -> Ordering {
        let (a, b) = match self.value_sign() {
            Ordering::Less => (-&self.x, -&self.y),
            _ => (self.x.clone(), self.y.clone()),
        };
        let d = BigInt::from(t.clone() << 1) - &a;
        if b.is_zero() {
            // |self| - t has the sign of a - 2t = -D
            return match d.sign() {
                num_bigint::Sign::Minus => Ordering::Greater,
                num_bigint::Sign::NoSign => Ordering::Equal,
                num_bigint::Sign::Plus => Ordering::Less,
            };
        }
        let bsq = &b * &b * &self.delta;
        if b.is_positive() {
            if !d.is_positive() {
                return Ordering::Greater;
            }
            bsq.cmp(&(&d * &d))
        } else {
            if !d.is_negative() {
                return Ordering::Less;
            }
            (&d * &d).cmp(&bsq)
        }
    }
}

/// Companion values V_0..V_M: V_0 = 2, V_1 = P, same recurrence as U.
pub fn companion_terms(p: i64, q: i64, m_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(BigInt::from(2));
    if m_max == 0 {
        return out;
    }
    out.push(BigInt::from(p));
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    for m in 2..=m_max {
        let next = &p * &out[m - 1] - &q * &out[m - 2];
        out.push(next);
    }
    out
}

/// ((P + sqrt(Delta))/2)^m = (V_m + U_m*sqrt(Delta))/2, by binary powering.
///
/// For P < 0 this is the power of the smaller root; magnitude comparisons
/// conjugate first (|alpha|^m = |conjugate value| there).
pub fn alpha_power(params: &LucasParams, m: u64) -> Result<QuadraticHalfInt> {
    params.require_positive_delta()?;
    let delta = BigInt::from(params.delta);
    let mut acc = QuadraticHalfInt::one(delta.clone());
    let mut base = QuadraticHalfInt {
        x: BigInt::from(params.p),
        y: BigInt::one(),
        delta,
    };
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "GE")]
    Ge,
    #[serde(rename = "LE")]
    Le,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
}

/// Rational exponent p/q with q > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exponent {
    pub p: i64,
    pub q: u32,
}

/// Outcome of deciding left >= |alpha|^(p/q) or left <= |alpha|^(p/q).
#[derive(Debug, Clone, Serialize)]
pub struct BoundComparison {
    #[serde(serialize_with = "crate::report::nat_string")]
    pub left: BigUint,
    pub exponent: Exponent,
    pub relation: Relation,
    pub verdict: Verdict,
}

impl BoundComparison {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Decide left vs |alpha|^(p/q) exactly, alpha the dominant root.
///
/// The fractional power is cleared by raising left to the q-th power;
/// p < 0 needs no ring work beyond the left = 1 case because
/// |alpha| >= 1 forces left^q >= 1 >= |alpha|^p.
pub fn compare_pow(
    params: &LucasParams,
    left: &BigUint,
    p: i64,
    q: u32,
    relation: Relation,
) -> Result<BoundComparison> {
    params.require_positive_delta()?;
    if q == 0 {
        return Err(Error::Usage("exponent denominator must be positive".into()));
    }
    if left.is_zero() {
        return Err(Error::Usage("compared value must be positive".into()));
    }
    let ordering = if p >= 0 {
        let w = oriented_power(params, p as u64)?;
        // ordering of left^q against |alpha|^p
        w.cmp_abs_int(&left.pow(q)).reverse()
    } else if !left.is_one() {
        // left^q >= 2 > 1 >= |alpha|^p
        Ordering::Greater
    } else {
        // 1 vs |alpha|^p  <=>  |alpha|^|p| vs 1
        let w = oriented_power(params, p.unsigned_abs())?;
        w.cmp_abs_int(&BigUint::one())
    };
    let verdict = match relation {
        Relation::Ge => {
            if ordering == Ordering::Less {
                Verdict::Violated
            } else {
                Verdict::Holds
            }
        }
        Relation::Le => {
            if ordering == Ordering::Greater {
                Verdict::Violated
            } else {
                Verdict::Holds
            }
        }
    };
    Ok(BoundComparison {
        left: left.clone(),
        exponent: Exponent { p, q },
        relation,
        verdict,
    })
}

/// Power of the +sqrt branch, conjugated when P < 0 so that the value's
/// magnitude is |alpha|^m for the dominant root alpha.
fn oriented_power(params: &LucasParams, m: u64) -> Result<QuadraticHalfInt> {
    let w = alpha_power(params, m)?;
    Ok(if params.p < 0 { w.conjugate() } else { w })
}
