//! Strong-divisibility verdicts and the two factor sequences.
//!
//! A prefix a_1..a_N is consistent with a strong divisibility sequence when
//! gcd(a_n, a_m) = a_{gcd(n,m)} for every pair; Nowicki's criterion replaces
//! the quadratic pair scan with a product test over the lcm-increment
//! sequence c_n. The Kimberling factors u_n invert a_n = prod_{d|n} u_d by
//! Möbius inversion. On a genuine strong divisibility prefix all three views
//! agree; the checkers report the first place they do not.

use num_bigint::BigUint;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{self, MobiusTable};
use crate::report::Status;
use crate::sequences::TermTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorSource {
    Kimberling,
    Nowicki,
}

/// Derived sequence u_1..u_N (Kimberling) or c_1..c_N (Nowicki).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSequence {
    source: FactorSource,
    factors: Vec<BigUint>,
}

impl FactorSequence {
    pub fn source(&self) -> FactorSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// u_d (or c_d), 1-based.
    pub fn factor(&self, d: usize) -> &BigUint {
        assert!(
            d >= 1 && d <= self.factors.len(),
            "factor index {d} out of range"
        );
        &self.factors[d - 1]
    }

    pub fn factors(&self) -> &[BigUint] {
        &self.factors
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    PairwiseGcd,
    NowickiProduct,
}

/// First violation found: for the pairwise check (n, m) with
/// expected = a_{gcd(n,m)} and actual = gcd(a_n, a_m); for the product
/// check m is absent, expected = prod_{d|n} c_d and actual = a_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdsCounterexample {
    pub n: usize,
    pub m: Option<usize>,
    pub expected: BigUint,
    pub actual: BigUint,
}

impl Serialize for SdsCounterexample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SdsCounterexample", 3 + usize::from(self.m.is_some()))?;
        st.serialize_field("n", &self.n)?;
        if let Some(m) = self.m {
            st.serialize_field("m", &m)?;
        }
        st.serialize_field("expected", &self.expected.to_string())?;
        st.serialize_field("actual", &self.actual.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SdsVerdict {
    pub status: Status,
    pub method: CheckMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<SdsCounterexample>,
}

/// Exhaustive pair scan: gcd(a_n, a_m) = a_{gcd(n,m)} for 1 <= n < m <= N.
/// The scan order makes a reported counterexample the lexicographically
/// smallest violating pair.
pub fn check_pairwise(table: &TermTable) -> SdsVerdict {
    for n in 1..table.len() {
        for m in (n + 1)..=table.len() {
            let actual = numeric::gcd(table.term(n), table.term(m));
            let expected = table.term(num_integer::Integer::gcd(&n, &m));
            if &actual != expected {
                return SdsVerdict {
                    status: Status::Fail,
                    method: CheckMethod::PairwiseGcd,
                    counterexample: Some(SdsCounterexample {
                        n,
                        m: Some(m),
                        expected: expected.clone(),
                        actual,
                    }),
                };
            }
        }
    }
    SdsVerdict {
        status: Status::Pass,
        method: CheckMethod::PairwiseGcd,
        counterexample: None,
    }
}

/// c_1 = a_1; c_n = lcm(a_1..a_n)/lcm(a_1..a_{n-1}), always exact.
pub fn nowicki_c(table: &TermTable) -> FactorSequence {
    let mut factors = Vec::with_capacity(table.len());
    factors.push(table.term(1).clone());
    for n in 2..=table.len() {
        let c = numeric::exact_div(table.prefix_lcm(n), table.prefix_lcm(n - 1))
            .expect("prefix lcms divide by construction");
        factors.push(c);
    }
    FactorSequence {
        source: FactorSource::Nowicki,
        factors,
    }
}

/// Nowicki's criterion: a_n = prod_{d|n} c_d for every n <= N.
pub fn check_nowicki(table: &TermTable) -> SdsVerdict {
    let c = nowicki_c(table);
    for n in 1..=table.len() {
        let mut expected = BigUint::one();
        for d in numeric::divisors(n) {
            expected *= c.factor(d);
        }
        if &expected != table.term(n) {
            return SdsVerdict {
                status: Status::Fail,
                method: CheckMethod::NowickiProduct,
                counterexample: Some(SdsCounterexample {
                    n,
                    m: None,
                    expected,
                    actual: table.term(n).clone(),
                }),
            };
        }
    }
    SdsVerdict {
        status: Status::Pass,
        method: CheckMethod::NowickiProduct,
        counterexample: None,
    }
}

/// Möbius inversion u_n = prod_{d|n} a_d^{mu(n/d)}, realized as two
/// products and one exact division so a failed division doubles as a
/// non-divisibility detector.
pub fn kimberling_u(table: &TermTable, mu: &MobiusTable) -> Result<FactorSequence> {
    if mu.limit() < table.len() {
        return Err(Error::Usage(format!(
            "Möbius sieve covers {} but the table has {} terms",
            mu.limit(),
            table.len()
        )));
    }
    let mut factors = Vec::with_capacity(table.len());
    for n in 1..=table.len() {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for d in numeric::divisors(n) {
            match mu.mu(n / d) {
                1 => num *= table.term(d),
                -1 => den *= table.term(d),
                _ => {}
            }
        }
        factors.push(numeric::exact_div(&num, &den)?);
    }
    Ok(FactorSequence {
        source: FactorSource::Kimberling,
        factors,
    })
}

/// prod_{d|n} factors[d], the reconstruction side of the factorization.
pub fn reconstruct(factors: &FactorSequence, n: usize) -> Result<BigUint> {
    if n == 0 || n > factors.len() {
        return Err(Error::Usage(format!(
            "reconstruct index {n} outside 1..={}",
            factors.len()
        )));
    }
    let mut out = BigUint::one();
    for d in numeric::divisors(n) {
        out *= factors.factor(d);
    }
    Ok(out)
}
