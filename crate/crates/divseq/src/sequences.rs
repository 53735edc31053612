//! Sequence specifications and exact term generation.
//!
//! Lucas terms are stored as |U_n|: the absolute-value sequence is the one
//! with the strong divisibility property, and keeping every table entry
//! positive lets the lcm machinery stay unsigned. Public indices are
//! 1-based; U_0 = 0 exists only inside the recurrence.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric;
use crate::report::{Mismatch, Report};

/// Declarative description of a positive-integer sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    /// U(P,Q): U_0=0, U_1=1, U_{n+2} = P U_{n+1} - Q U_n, stored as |U_n|.
    Lucas { p: i64, q: i64 },
    /// a_n = n.
    Naturals,
    /// a_n = q^n - 1 for a fixed integer q >= 2.
    QSequence { q: i64 },
    /// Explicitly given positive terms.
    Explicit(Vec<BigUint>),
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Lucas { p, q } => write!(f, "lucas:P={p},Q={q}"),
            SequenceSpec::Naturals => write!(f, "naturals"),
            SequenceSpec::QSequence { q } => write!(f, "q:{q}"),
            SequenceSpec::Explicit(terms) => {
                write!(f, "explicit:")?;
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_i64_strict(s: &str, what: &str) -> Result<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidSpec(format!(
            "{what}: expected an integer, got {s:?}"
        )));
    }
    s.parse::<i64>()
        .map_err(|_| Error::InvalidSpec(format!("{what}: integer out of range: {s}")))
}

fn parse_nat_strict(s: &str, what: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidSpec(format!(
            "{what}: expected a non-negative integer, got {s:?}"
        )));
    }
    Ok(BigUint::parse_bytes(s.as_bytes(), 10).expect("digits already validated"))
}

impl FromStr for SequenceSpec {
    type Err = Error;

    /// Grammar: `lucas:P=<int>,Q=<int>` | `naturals` | `q:<int>` |
    /// `explicit:<comma-separated ints>`. Exact match, no whitespace,
    /// no trailing garbage.
    fn from_str(s: &str) -> Result<Self> {
        if s == "naturals" {
            return Ok(SequenceSpec::Naturals);
        }
        if let Some(rest) = s.strip_prefix("lucas:") {
            let rest = rest.strip_prefix("P=").ok_or_else(|| {
                Error::InvalidSpec(format!("lucas spec must read lucas:P=<int>,Q=<int>, got {s:?}"))
            })?;
            let (p_str, rest) = rest.split_once(',').ok_or_else(|| {
                Error::InvalidSpec(format!("lucas spec must read lucas:P=<int>,Q=<int>, got {s:?}"))
            })?;
            let q_str = rest.strip_prefix("Q=").ok_or_else(|| {
                Error::InvalidSpec(format!("lucas spec must read lucas:P=<int>,Q=<int>, got {s:?}"))
            })?;
            let p = parse_i64_strict(p_str, "lucas P")?;
            let q = parse_i64_strict(q_str, "lucas Q")?;
            if p == 0 || q == 0 {
                return Err(Error::InvalidSpec("lucas P and Q must be nonzero".into()));
            }
            return Ok(SequenceSpec::Lucas { p, q });
        }
        if let Some(rest) = s.strip_prefix("q:") {
            let q = parse_i64_strict(rest, "q")?;
            if q < 2 {
                return Err(Error::InvalidSpec(format!("q must be at least 2, got {q}")));
            }
            return Ok(SequenceSpec::QSequence { q });
        }
        if let Some(rest) = s.strip_prefix("explicit:") {
            let mut terms = Vec::new();
            for piece in rest.split(',') {
                let t = parse_nat_strict(piece, "explicit term")?;
                if t.is_zero() {
                    return Err(Error::InvalidSpec("explicit terms must be positive".into()));
                }
                terms.push(t);
            }
            if terms.is_empty() {
                return Err(Error::InvalidSpec("explicit list must be non-empty".into()));
            }
            return Ok(SequenceSpec::Explicit(terms));
        }
        Err(Error::InvalidSpec(format!(
            "unrecognized sequence spec {s:?} (expected lucas:P=..,Q=.. | naturals | q:.. | explicit:..)"
        )))
    }
}

/// Recurrence parameters with their derived discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LucasParams {
    pub p: i64,
    pub q: i64,
    /// P^2 - 4Q, exact.
    pub delta: i128,
    /// gcd(|P|, |Q|) = 1; several theorems require it.
    pub coprime: bool,
}

impl LucasParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::UnsupportedParameters(
                "P and Q must be nonzero".into(),
            ));
        }
        let delta = (p as i128) * (p as i128) - 4 * (q as i128);
        let coprime = p.unsigned_abs().gcd(&q.unsigned_abs()) == 1;
        Ok(LucasParams {
            p,
            q,
            delta,
            coprime,
        })
    }

    pub fn require_positive_delta(&self) -> Result<()> {
        if self.delta > 0 {
            Ok(())
        } else {
            Err(Error::UnsupportedParameters(format!(
                "discriminant must be positive, got {} for (P,Q)=({},{})",
                self.delta, self.p, self.q
            )))
        }
    }

    /// |alpha| for the dominant root alpha of X^2 - PX + Q.
    /// Both roots are (P +- sqrt(Delta))/2, so the larger magnitude is
    /// (|P| + sqrt(Delta))/2.
    pub fn abs_alpha(&self) -> Result<f64> {
        self.require_positive_delta()?;
        Ok(((self.p.unsigned_abs() as f64) + (self.delta as f64).sqrt()) / 2.0)
    }
}

impl Serialize for LucasParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LucasParams", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("delta", &self.delta.to_string())?;
        st.serialize_field("coprime", &self.coprime)?;
        st.end()
    }
}

/// Cached prefix a_1..a_N with running lcm values.
#[derive(Debug, Clone)]
pub struct TermTable {
    spec: SequenceSpec,
    terms: Vec<BigUint>,
    prefix_lcm: Vec<BigUint>,
}

impl TermTable {
    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// a_n, 1-based.
    pub fn term(&self, n: usize) -> &BigUint {
        assert!(n >= 1 && n <= self.terms.len(), "term index {n} out of range");
        &self.terms[n - 1]
    }

    /// lcm(a_1..a_n), 1-based.
    pub fn prefix_lcm(&self, n: usize) -> &BigUint {
        assert!(
            n >= 1 && n <= self.prefix_lcm.len(),
            "prefix lcm index {n} out of range"
        );
        &self.prefix_lcm[n - 1]
    }

    /// All terms, slice index i holding a_{i+1}.
    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    /// Recurrence parameters when the spec is a Lucas one.
    pub fn lucas_params(&self) -> Option<LucasParams> {
        match self.spec {
            SequenceSpec::Lucas { p, q } => LucasParams::new(p, q).ok(),
            _ => None,
        }
    }
}

/// Materialize the first `n_terms` terms of `spec` with running lcms.
pub fn generate(spec: &SequenceSpec, n_terms: usize) -> Result<TermTable> {
    if n_terms == 0 {
        return Err(Error::Usage("table length must be at least 1".into()));
    }
    let terms = match spec {
        SequenceSpec::Lucas { p, q } => {
            let p = BigInt::from(*p);
            let q = BigInt::from(*q);
            let mut prev = BigInt::zero();
            let mut cur = BigInt::one();
            let mut out = Vec::with_capacity(n_terms);
            for index in 1..=n_terms {
                if cur.is_zero() {
                    return Err(Error::DegenerateSequence { index });
                }
                out.push(cur.magnitude().clone());
                let next = &p * &cur - &q * &prev;
                prev = std::mem::replace(&mut cur, next);
            }
            out
        }
        SequenceSpec::Naturals => (1..=n_terms).map(BigUint::from).collect(),
        SequenceSpec::QSequence { q } => {
            let q = BigUint::from(*q as u64);
            let mut power = BigUint::one();
            let mut out = Vec::with_capacity(n_terms);
            for _ in 0..n_terms {
                power *= &q;
                out.push(&power - 1u32);
            }
            out
        }
        SequenceSpec::Explicit(list) => {
            if n_terms > list.len() {
                return Err(Error::Usage(format!(
                    "explicit spec provides {} terms, {} requested",
                    list.len(),
                    n_terms
                )));
            }
            if let Some(i) = list.iter().position(|t| t.is_zero()) {
                return Err(Error::InvalidSpec(format!(
                    "explicit term at position {} is zero",
                    i + 1
                )));
            }
            list[..n_terms].to_vec()
        }
    };

    let mut prefix_lcm = Vec::with_capacity(n_terms);
    let mut acc = BigUint::one();
    for t in &terms {
        if !(&acc % t).is_zero() {
            acc = numeric::lcm(&acc, t);
        }
        prefix_lcm.push(acc.clone());
    }
    Ok(TermTable {
        spec: spec.clone(),
        terms,
        prefix_lcm,
    })
}

/// Cross-check the recurrence terms against the closed form.
///
/// alpha^n computed by binary powering in the ring Z[(1+sqrt(Delta))/2]
/// equals (V_n + U_n sqrt(Delta))/2, so its components must reproduce the
/// companion recurrence V and the stored |U_n| independently of the
/// linear path that built the table.
pub fn binet_check(params: &LucasParams, table: &TermTable) -> Result<Report> {
    params.require_positive_delta()?;
    let p = BigInt::from(params.p);
    let q = BigInt::from(params.q);
    let mut v_prev = BigInt::from(2);
    let mut v_cur = p.clone();
    let mut counterexample = None;
    for n in 1..=table.len() {
        let w = crate::quadratic::alpha_power(params, n as u64)?;
        let u_ring = w.y().magnitude();
        if u_ring != table.term(n) {
            counterexample = Some(Mismatch {
                n,
                k: None,
                l: None,
                lhs: u_ring.clone(),
                rhs: table.term(n).clone(),
            });
            break;
        }
        if *w.x() != v_cur {
            counterexample = Some(Mismatch {
                n,
                k: None,
                l: None,
                lhs: w.x().magnitude().clone(),
                rhs: v_cur.magnitude().clone(),
            });
            break;
        }
        let v_next = &p * &v_cur - &q * &v_prev;
        v_prev = std::mem::replace(&mut v_cur, v_next);
    }
    Ok(Report::new("binet", (1, table.len()), counterexample))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> SequenceSpec {
        s.parse().unwrap()
    }

    fn terms_u64(table: &TermTable) -> Vec<u64> {
        table
            .terms()
            .iter()
            .map(|t| u64::try_from(t).unwrap())
            .collect()
    }

    #[test]
    fn grammar_accepts_canonical_forms() {
        assert_eq!(parse("naturals"), SequenceSpec::Naturals);
        assert_eq!(parse("lucas:P=1,Q=-1"), SequenceSpec::Lucas { p: 1, q: -1 });
        assert_eq!(parse("lucas:P=-3,Q=2"), SequenceSpec::Lucas { p: -3, q: 2 });
        assert_eq!(parse("q:2"), SequenceSpec::QSequence { q: 2 });
        assert_eq!(
            parse("explicit:1,2,2,2,1,4"),
            SequenceSpec::Explicit(vec![
                1u32.into(),
                2u32.into(),
                2u32.into(),
                2u32.into(),
                1u32.into(),
                4u32.into()
            ])
        );
    }

    #[test]
    fn grammar_rejects_malformed_specs() {
        for bad in [
            "",
            "naturalsx",
            " naturals",
            "lucas:P=1",
            "lucas:P=1,Q=",
            "lucas:P=1,Q=-1x",
            "lucas:P=1,Q=-1,R=2",
            "lucas:P=0,Q=1",
            "lucas:P=1,Q=0",
            "lucas:P=+1,Q=-1",
            "q:1",
            "q:-2",
            "q:2x",
            "q:",
            "explicit:",
            "explicit:1,,2",
            "explicit:1,0,2",
            "explicit:1,-2",
            "explicit:1, 2",
            "fibonacci",
        ] {
            assert!(
                bad.parse::<SequenceSpec>().is_err(),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "naturals",
            "lucas:P=1,Q=-1",
            "lucas:P=-3,Q=2",
            "q:5",
            "explicit:1,2,3",
        ] {
            assert_eq!(parse(s).to_string(), s);
        }
    }

    #[test]
    fn generate_known_lucas_prefixes() {
        let fib = generate(&parse("lucas:P=1,Q=-1"), 10).unwrap();
        assert_eq!(terms_u64(&fib), [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
        let nat_like = generate(&parse("lucas:P=2,Q=1"), 5).unwrap();
        assert_eq!(terms_u64(&nat_like), [1, 2, 3, 4, 5]);
        let mersenne = generate(&parse("lucas:P=3,Q=2"), 4).unwrap();
        assert_eq!(terms_u64(&mersenne), [1, 3, 7, 15]);
        let jacobsthal = generate(&parse("lucas:P=1,Q=-2"), 5).unwrap();
        assert_eq!(terms_u64(&jacobsthal), [1, 1, 3, 5, 11]);
        // negative P: |U(-3,2)| is 2^n - 1 as well
        let neg = generate(&parse("lucas:P=-3,Q=2"), 5).unwrap();
        assert_eq!(terms_u64(&neg), [1, 3, 7, 15, 31]);
    }

    #[test]
    fn generate_builtin_and_explicit() {
        let nat = generate(&SequenceSpec::Naturals, 8).unwrap();
        assert_eq!(terms_u64(&nat), [1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(*nat.prefix_lcm(8), BigUint::from(840u32));
        let q2 = generate(&parse("q:2"), 5).unwrap();
        assert_eq!(terms_u64(&q2), [1, 3, 7, 15, 31]);
        let ex = generate(&parse("explicit:1,2,2,2,1,4"), 6).unwrap();
        assert_eq!(terms_u64(&ex), [1, 2, 2, 2, 1, 4]);
        assert_eq!(
            ex.prefix_lcm
                .iter()
                .map(|x| u64::try_from(x).unwrap())
                .collect::<Vec<_>>(),
            [1, 2, 2, 2, 2, 4]
        );
        assert!(matches!(
            generate(&parse("explicit:1,2"), 5),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn zero_term_is_degenerate() {
        // U(1,1): 1, 1, 0, ...
        let err = generate(&parse("lucas:P=1,Q=1"), 5).unwrap_err();
        assert_eq!(err, Error::DegenerateSequence { index: 3 });
        assert!(generate(&parse("lucas:P=1,Q=1"), 2).is_ok());
    }

    #[test]
    fn prefix_lcm_matches_direct_fold() {
        for spec in ["lucas:P=1,Q=-1", "naturals", "q:3"] {
            let table = generate(&parse(spec), 30).unwrap();
            for n in 1..=30 {
                let direct = numeric::lcm_fold(&table.terms()[..n]).unwrap();
                assert_eq!(&direct, table.prefix_lcm(n), "{spec} at n={n}");
            }
        }
    }

    #[test]
    fn q_sequence_is_scaled_lucas() {
        // q^n - 1 = (q-1) * U(q+1, q)_n
        for q in [2i64, 3, 5] {
            let qseq = generate(&SequenceSpec::QSequence { q }, 50).unwrap();
            let lucas = generate(&SequenceSpec::Lucas { p: q + 1, q }, 50).unwrap();
            let scale = BigUint::from((q - 1) as u64);
            for n in 1..=50 {
                assert_eq!(*qseq.term(n), lucas.term(n) * &scale, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn lucas_params_derived_fields() {
        let fib = LucasParams::new(1, -1).unwrap();
        assert_eq!(fib.delta, 5);
        assert!(fib.coprime);
        let ns = LucasParams::new(2, 1).unwrap();
        assert_eq!(ns.delta, 0);
        assert!(ns.require_positive_delta().is_err());
        let non_coprime = LucasParams::new(6, 3).unwrap();
        assert!(!non_coprime.coprime);
        assert!(LucasParams::new(0, 1).is_err());
        let phi = LucasParams::new(1, -1).unwrap().abs_alpha().unwrap();
        assert!((phi - 1.618033988749895).abs() < 1e-12);
        let neg = LucasParams::new(-3, 2).unwrap().abs_alpha().unwrap();
        assert!((neg - 2.0).abs() < 1e-12);
    }

    #[test]
    fn binet_agrees_with_recurrence() {
        let fib = generate(&parse("lucas:P=1,Q=-1"), 20).unwrap();
        let params = fib.lucas_params().unwrap();
        assert!(binet_check(&params, &fib).unwrap().status.is_pass());

        let jac = generate(&parse("lucas:P=1,Q=-2"), 10).unwrap();
        assert!(binet_check(&jac.lucas_params().unwrap(), &jac)
            .unwrap()
            .status
            .is_pass());

        let neg = generate(&parse("lucas:P=-3,Q=2"), 15).unwrap();
        assert!(binet_check(&neg.lucas_params().unwrap(), &neg)
            .unwrap()
            .status
            .is_pass());

        // Delta = 0 is outside the closed form's domain
        let ns = generate(&parse("lucas:P=2,Q=1"), 5).unwrap();
        assert!(matches!(
            binet_check(&ns.lucas_params().unwrap(), &ns),
            Err(Error::UnsupportedParameters(_))
        ));
    }
}
