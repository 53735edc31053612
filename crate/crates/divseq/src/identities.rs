//! The three lcm identities, checked exactly.
//!
//! For a strong divisibility sequence a:
//!   row-lcm:    lcm{binom(n,0)..binom(n,n)} = lcm(a_1..a_{n+1}) / a_{n+1}
//!   weighted:   lcm(a_1..a_n) = lcm{a_k binom(n,k), k = 1..n}
//!   gcd form:   lcm(a_1..a_n) = gcd{binom(n,k) lcm(a_1..a_k), ceil(n/2) <= k <= n}
//!
//! Each verifier walks rows with the incremental step
//! binom(n,k+1) = binom(n,k) * a_{n-k} / a_{k+1}, so a whole row costs one
//! multiplication and one exact division per entry; the folds short-circuit
//! through the numeric module's divisibility fast paths.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric;
use crate::report::{Mismatch, Status};
use crate::sequences::TermTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityKind {
    Theorem1,
    Corollary2,
    Corollary3,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    #[serde(rename = "check")]
    pub identity: IdentityKind,
    /// Inclusive range of n covered.
    pub range: (usize, usize),
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Mismatch>,
}

impl IdentityReport {
    fn new(identity: IdentityKind, range: (usize, usize), counterexample: Option<Mismatch>) -> Self {
        IdentityReport {
            identity,
            range,
            status: Status::from_pass(counterexample.is_none()),
            counterexample,
        }
    }
}

/// One row of binomials binom(n, 0..=n), built incrementally.
fn binom_row(table: &TermTable, n: usize) -> Result<Vec<BigUint>> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(BigUint::one());
    for k in 0..n {
        let next = numeric::exact_div(&(&row[k] * table.term(n - k)), table.term(k + 1))?;
        row.push(next);
    }
    Ok(row)
}

/// Both sides of the row-lcm identity at a single n (0-based row index;
/// the right side consumes a_{n+1}, so the table must extend to n+1).
pub fn theorem1_sides(table: &TermTable, n: usize) -> Result<(BigUint, BigUint)> {
    if n + 1 > table.len() {
        return Err(Error::Usage(format!(
            "row {n} needs table length {} but only {} terms exist",
            n + 1,
            table.len()
        )));
    }
    let row = binom_row(table, n)?;
    let lhs = numeric::lcm_iter(row.iter());
    let rhs = numeric::exact_div(table.prefix_lcm(n + 1), table.term(n + 1))?;
    Ok((lhs, rhs))
}

/// Row-lcm identity for every n in 0..=n_max-1.
pub fn verify_theorem1(table: &TermTable, n_max: usize) -> Result<IdentityReport> {
    if n_max == 0 || n_max > table.len() {
        return Err(Error::Usage(format!(
            "verification range {n_max} outside 1..={}",
            table.len()
        )));
    }
    let mut counterexample = None;
    for n in 0..n_max {
        let (lhs, rhs) = theorem1_sides(table, n)?;
        if lhs != rhs {
            counterexample = Some(Mismatch {
                n,
                k: None,
                l: None,
                lhs,
                rhs,
            });
            break;
        }
    }
    Ok(IdentityReport::new(
        IdentityKind::Theorem1,
        (0, n_max - 1),
        counterexample,
    ))
}

/// Weighted-row identity: lcm(a_1..a_n) = lcm{a_k binom(n,k)} for n in 1..=n_max.
pub fn verify_cor2(table: &TermTable, n_max: usize) -> Result<IdentityReport> {
    if n_max == 0 || n_max > table.len() {
        return Err(Error::Usage(format!(
            "verification range {n_max} outside 1..={}",
            table.len()
        )));
    }
    let mut counterexample = None;
    for n in 1..=n_max {
        let row = binom_row(table, n)?;
        let mut rhs = BigUint::one();
        for (k, b) in row.iter().enumerate().skip(1) {
            let term = table.term(k) * b;
            if !(&rhs % &term).is_zero() {
                rhs = numeric::lcm(&rhs, &term);
            }
        }
        let lhs = table.prefix_lcm(n);
        if lhs != &rhs {
            counterexample = Some(Mismatch {
                n,
                k: None,
                l: None,
                lhs: lhs.clone(),
                rhs,
            });
            break;
        }
    }
    Ok(IdentityReport::new(
        IdentityKind::Corollary2,
        (1, n_max),
        counterexample,
    ))
}

/// gcd form: lcm(a_1..a_n) = gcd{binom(n,k) lcm(a_1..a_k),
/// ceil(n/2) <= k <= n} for n in 1..=n_max.
pub fn verify_cor3(table: &TermTable, n_max: usize) -> Result<IdentityReport> {
    if n_max == 0 || n_max > table.len() {
        return Err(Error::Usage(format!(
            "verification range {n_max} outside 1..={}",
            table.len()
        )));
    }
    let mut counterexample = None;
    for n in 1..=n_max {
        let row = binom_row(table, n)?;
        let k_lo = n.div_ceil(2);
        let mut rhs: Option<BigUint> = None;
        for (k, b) in row.iter().enumerate().skip(k_lo) {
            let term = b * table.prefix_lcm(k);
            rhs = Some(match rhs {
                None => term,
                Some(acc) => {
                    if (&term % &acc).is_zero() {
                        acc
                    } else {
                        numeric::gcd(&acc, &term)
                    }
                }
            });
        }
        let rhs = rhs.expect("k range is never empty");
        let lhs = table.prefix_lcm(n);
        if lhs != &rhs {
            counterexample = Some(Mismatch {
                n,
                k: None,
                l: None,
                lhs: lhs.clone(),
                rhs,
            });
            break;
        }
    }
    Ok(IdentityReport::new(
        IdentityKind::Corollary3,
        (1, n_max),
        counterexample,
    ))
}
