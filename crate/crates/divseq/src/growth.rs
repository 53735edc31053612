//! Exponential growth bounds for terms and prefix lcms, decided exactly,
//! plus the floating ratio scan toward the 3/pi^2 limit.
//!
//! Every inequality is an instance of L >= |alpha|^(p/q) or <= with integer
//! p and q in {1, 3, 4}; all verdicts route through the quadratic module.
//! Floating point appears only in the scan rows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::ln_big;
use crate::quadratic::{compare_pow, BoundComparison, Relation};
use crate::report::Status;
use crate::sequences::{generate, LucasParams, SequenceSpec, TermTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundLabel {
    TermLower,
    TermUpper,
    LcmLower,
    LcmUpper,
}

/// One decided inequality, tagged with the index it came from.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub n: usize,
    pub label: BoundLabel,
    #[serde(flatten)]
    pub comparison: BoundComparison,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: usize,
    pub label: BoundLabel,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundSuite {
    pub params: LucasParams,
    pub n_max: usize,
    pub checks: Vec<BoundCheck>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Violation>,
}

impl BoundSuite {
    fn from_checks(params: LucasParams, n_max: usize, checks: Vec<BoundCheck>) -> Self {
        let first_violation = checks
            .iter()
            .find(|c| !c.comparison.holds())
            .map(|c| Violation {
                n: c.n,
                label: c.label,
            });
        BoundSuite {
            params,
            n_max,
            status: Status::from_pass(first_violation.is_none()),
            checks,
            first_violation,
        }
    }
}

/// Per-term exponent pair (lower, upper), refined by the signs of P and Q:
/// Q > 0 tightens the lower exponent to n-1; P > 0 with Q < 0 tightens the
/// upper to n-1; other sign patterns keep the generic (n-2, n).
fn term_exponents(params: &LucasParams, n: i64) -> (i64, i64) {
    if params.q > 0 {
        (n - 1, n)
    } else if params.p > 0 {
        (n - 2, n - 1)
    } else {
        (n - 2, n)
    }
}

fn require_coprime(params: &LucasParams) -> Result<()> {
    if params.coprime {
        Ok(())
    } else {
        Err(Error::UnsupportedParameters(format!(
            "growth bounds need coprime parameters, got (P,Q)=({},{})",
            params.p, params.q
        )))
    }
}

/// |alpha|^(lower) <= |U_n| <= |alpha|^(upper) for every table index.
pub fn check_term_bounds(params: &LucasParams, table: &TermTable) -> Result<BoundSuite> {
    params.require_positive_delta()?;
    require_coprime(params)?;
    let mut checks = Vec::with_capacity(2 * table.len());
    for n in 1..=table.len() {
        let (lo, hi) = term_exponents(params, n as i64);
        checks.push(BoundCheck {
            n,
            label: BoundLabel::TermLower,
            comparison: compare_pow(params, table.term(n), lo, 1, Relation::Ge)?,
        });
        checks.push(BoundCheck {
            n,
            label: BoundLabel::TermUpper,
            comparison: compare_pow(params, table.term(n), hi, 1, Relation::Le)?,
        });
    }
    Ok(BoundSuite::from_checks(*params, table.len(), checks))
}

/// |alpha|^((n^2-2n-4)/4) <= lcm(U_1..U_n) <= |alpha|^((n^2+7n-8)/3)
/// for every table index.
pub fn check_theorem4(params: &LucasParams, table: &TermTable) -> Result<BoundSuite> {
    params.require_positive_delta()?;
    require_coprime(params)?;
    let mut checks = Vec::with_capacity(2 * table.len());
    for n in 1..=table.len() {
        let ni = n as i64;
        let left = table.prefix_lcm(n);
        checks.push(BoundCheck {
            n,
            label: BoundLabel::LcmLower,
            comparison: compare_pow(params, left, ni * ni - 2 * ni - 4, 4, Relation::Ge)?,
        });
        checks.push(BoundCheck {
            n,
            label: BoundLabel::LcmUpper,
            comparison: compare_pow(params, left, ni * ni + 7 * ni - 8, 3, Relation::Le)?,
        });
    }
    Ok(BoundSuite::from_checks(*params, table.len(), checks))
}

/// Fibonacci-only sharpening:
/// Phi^((n^2-9)/4) <= lcm(F_1..F_n) <= Phi^((n^2+4n)/3) for n <= n_max.
pub fn check_fibonacci_refined(n_max: usize) -> Result<BoundSuite> {
    if n_max == 0 {
        return Err(Error::Usage("bound range must be at least 1".into()));
    }
    let params = LucasParams::new(1, -1).expect("Fibonacci parameters are valid");
    let table = generate(&SequenceSpec::Lucas { p: 1, q: -1 }, n_max)?;
    let mut checks = Vec::with_capacity(2 * n_max);
    for n in 1..=n_max {
        let ni = n as i64;
        let left = table.prefix_lcm(n);
        checks.push(BoundCheck {
            n,
            label: BoundLabel::LcmLower,
            comparison: compare_pow(&params, left, ni * ni - 9, 4, Relation::Ge)?,
        });
        checks.push(BoundCheck {
            n,
            label: BoundLabel::LcmUpper,
            comparison: compare_pow(&params, left, ni * ni + 4 * ni, 3, Relation::Le)?,
        });
    }
    Ok(BoundSuite::from_checks(params, n_max, checks))
}

/// One sampled point of the normalized lcm growth curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub log_lcm: f64,
    /// log lcm(U_1..U_n) / (n^2 ln|alpha|); tends to 3/pi^2 for Fibonacci.
    pub ratio: f64,
}

/// Sample log lcm(U_1..U_n)/(n^2 ln|alpha|) at n = step, 2*step, ..., <= n_max.
///
/// The prefix lcm is exact; only the final logarithms are floating point
/// (relative error well under 1e-12 via the top-64-bit mantissa).
pub fn ratio_scan(params: &LucasParams, n_max: usize, step: usize) -> Result<Vec<RatioRow>> {
    params.require_positive_delta()?;
    if step == 0 {
        return Err(Error::Usage("scan step must be at least 1".into()));
    }
    if n_max == 0 {
        return Err(Error::Usage("scan range must be at least 1".into()));
    }
    let table = generate(
        &SequenceSpec::Lucas {
            p: params.p,
            q: params.q,
        },
        n_max,
    )?;
    let ln_alpha = params.abs_alpha()?.ln();
    let mut rows = Vec::new();
    let mut n = step;
    while n <= n_max {
        let log_lcm = ln_big(table.prefix_lcm(n));
        let ratio = log_lcm / ((n * n) as f64 * ln_alpha);
        rows.push(RatioRow { n, log_lcm, ratio });
        n += step;
    }
    Ok(rows)
}
