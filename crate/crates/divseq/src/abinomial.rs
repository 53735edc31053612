//! Generalized binomial coefficients over a positive sequence.
//!
//! binom(n,k)_a = (a_n ... a_{n-k+1}) / (a_1 ... a_k), an integer whenever
//! the sequence is a strong divisibility sequence. Two independent
//! computations are provided: the defining ratio, and the product of
//! Kimberling factors u_d over the d whose floor sums drop. Their agreement
//! is the machine check of the product formula.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::report::{Mismatch, Report};
use crate::sds::FactorSequence;
use crate::sequences::TermTable;

/// The defining ratio, computed as two products and one exact division.
/// binom(n,0) = 1 by empty products.
pub fn binom_ratio(table: &TermTable, n: usize, k: usize) -> Result<BigUint> {
    if k > n || n > table.len() {
        return Err(Error::Usage(format!(
            "binomial index ({n},{k}) outside 0 <= k <= n <= {}",
            table.len()
        )));
    }
    let mut num = BigUint::one();
    for i in (n - k + 1)..=n {
        num *= table.term(i);
    }
    let mut den = BigUint::one();
    for i in 1..=k {
        den *= table.term(i);
    }
    crate::numeric::exact_div(&num, &den)
}

/// True when d contributes to binom(n,k): the floor sum drops, i.e.
/// floor(k/d) + floor((n-k)/d) < floor(n/d).
pub fn floor_drop(n: usize, k: usize, d: usize) -> bool {
    debug_assert!(d >= 1 && k <= n);
    k / d + (n - k) / d < n / d
}

/// Product form: prod u_d over all d <= n with a floor drop.
pub fn binom_product(factors: &FactorSequence, n: usize, k: usize) -> Result<BigUint> {
    if k > n || n > factors.len() {
        return Err(Error::Usage(format!(
            "binomial index ({n},{k}) outside 0 <= k <= n <= {}",
            factors.len()
        )));
    }
    let mut out = BigUint::one();
    for d in 1..=n {
        if floor_drop(n, k, d) {
            out *= factors.factor(d);
        }
    }
    Ok(out)
}

/// Smallest k in 0..=n with a floor drop at d, if any.
/// A witness exists exactly when d does not divide n+1.
pub fn guo_witness(n: usize, d: usize) -> Option<usize> {
    assert!(d >= 1 && d <= n, "guo_witness needs 1 <= d <= n");
    (0..=n).find(|&k| floor_drop(n, k, d))
}

/// Exhaustive check of the three structural identities over the table:
/// symmetry binom(n,k) = binom(n,n-k); the absorption rule
/// a_k binom(n+1,k) = a_{n+1} binom(n,k-1); and the subset-of-subset rule
/// binom(n,k) binom(k,l) = binom(n,l) binom(n-l,k-l).
///
/// A full triangle is materialized once (row-incremental, one
/// multiplication and one exact division per entry) so the O(N^3) third
/// identity runs on lookups.
pub fn verify_basic_identities(table: &TermTable, n_max: usize) -> Result<Report> {
    if n_max == 0 || n_max > table.len() {
        return Err(Error::Usage(format!(
            "identity range {n_max} outside 1..={}",
            table.len()
        )));
    }
    let tri = triangle(table, n_max)?;

    // symmetry
    for n in 0..=n_max {
        for k in 0..=(n / 2) {
            if tri[n][k] != tri[n][n - k] {
                return Ok(fail_report("symmetry", n, k, None, &tri[n][k], &tri[n][n - k], n_max));
            }
        }
    }

    // absorption: a_k binom(n+1,k) = a_{n+1} binom(n,k-1), for n+1 <= n_max
    for n in 0..n_max {
        for k in 1..=(n + 1) {
            let lhs = table.term(k) * &tri[n + 1][k];
            let rhs = table.term(n + 1) * &tri[n][k - 1];
            if lhs != rhs {
                return Ok(fail_report("absorption", n + 1, k, None, &lhs, &rhs, n_max));
            }
        }
    }

    // subset-of-subset
    for n in 0..=n_max {
        for k in 0..=n {
            for l in 0..=k {
                let lhs = &tri[n][k] * &tri[k][l];
                let rhs = &tri[n][l] * &tri[n - l][k - l];
                if lhs != rhs {
                    return Ok(fail_report("subset-of-subset", n, k, Some(l), &lhs, &rhs, n_max));
                }
            }
        }
    }

    Ok(Report::new("basic_identities", (1, n_max), None))
}

fn fail_report(
    which: &str,
    n: usize,
    k: usize,
    l: Option<usize>,
    lhs: &BigUint,
    rhs: &BigUint,
    n_max: usize,
) -> Report {
    let mut report = Report::new(
        "basic_identities",
        (1, n_max),
        Some(Mismatch {
            n,
            k: Some(k),
            l,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        }),
    );
    report.check = format!("basic_identities/{which}");
    report
}

/// All binom(n,k) for 0 <= k <= n <= n_max, row by row:
/// binom(n,k+1) = binom(n,k) * a_{n-k} / a_{k+1}.
fn triangle(table: &TermTable, n_max: usize) -> Result<Vec<Vec<BigUint>>> {
    let mut tri = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigUint::one());
        for k in 0..n {
            let next = crate::numeric::exact_div(&(&row[k] * table.term(n - k)), table.term(k + 1))?;
            row.push(next);
        }
        tri.push(row);
    }
    Ok(tri)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::mobius_sieve;
    use crate::sds::{kimberling_u, nowicki_c};
    use crate::sequences::{generate, SequenceSpec};

    fn table(spec: &str, n: usize) -> TermTable {
        generate(&spec.parse::<SequenceSpec>().unwrap(), n).unwrap()
    }

    #[test]
    fn ratio_known_values() {
        let fib = table("lucas:P=1,Q=-1", 10);
        assert_eq!(binom_ratio(&fib, 5, 2).unwrap(), 15u32.into());
        assert_eq!(binom_ratio(&fib, 9, 0).unwrap(), 1u32.into());
        let nat = table("naturals", 10);
        assert_eq!(binom_ratio(&nat, 4, 2).unwrap(), 6u32.into());
        assert!(matches!(
            binom_ratio(&nat, 11, 2),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            binom_ratio(&nat, 4, 5),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn ratio_detects_non_divisibility() {
        let t = table("explicit:2,3", 2);
        assert!(matches!(
            binom_ratio(&t, 2, 1),
            Err(Error::IntegralityViolation { .. })
        ));
    }

    #[test]
    fn product_form_known_values() {
        let mu = mobius_sieve(10).unwrap();
        let fib_u = kimberling_u(&table("lucas:P=1,Q=-1", 10), &mu).unwrap();
        // qualifying d for (5,2) are 4 and 5: u_4 * u_5 = 3 * 5
        assert_eq!(binom_product(&fib_u, 5, 2).unwrap(), 15u32.into());
        assert_eq!(binom_product(&fib_u, 7, 7).unwrap(), 1u32.into());
        let nat_u = kimberling_u(&table("naturals", 10), &mu).unwrap();
        assert_eq!(binom_product(&nat_u, 6, 3).unwrap(), 20u32.into());
    }

    #[test]
    fn product_matches_ratio_on_sds_tables() {
        let n_max = 40;
        let mu = mobius_sieve(n_max).unwrap();
        for spec in ["lucas:P=1,Q=-1", "naturals", "q:2", "q:3", "lucas:P=1,Q=-2"] {
            let t = table(spec, n_max);
            let u = kimberling_u(&t, &mu).unwrap();
            for n in 0..=n_max {
                for k in 0..=n {
                    assert_eq!(
                        binom_product(&u, n, k).unwrap(),
                        binom_ratio(&t, n, k).unwrap(),
                        "{spec} ({n},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn product_accepts_nowicki_factors_on_sds_tables() {
        let t = table("lucas:P=1,Q=-1", 20);
        let c = nowicki_c(&t);
        for n in 0..=20 {
            for k in 0..=n {
                assert_eq!(
                    binom_product(&c, n, k).unwrap(),
                    binom_ratio(&t, n, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn floor_gap_is_zero_or_one() {
        for n in 1..=60usize {
            for k in 0..=n {
                for d in 1..=n {
                    let gap = n / d - k / d - (n - k) / d;
                    assert!(gap <= 1, "gap {gap} at n={n} k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn guo_witness_examples() {
        assert_eq!(guo_witness(5, 4), Some(2));
        assert_eq!(guo_witness(5, 3), None);
        for n in 1..=40 {
            assert_eq!(guo_witness(n, 1), None, "d=1 always divides n+1");
        }
    }

    #[test]
    fn guo_witness_iff_not_dividing_successor() {
        for n in 1..=60usize {
            for d in 1..=n {
                let witness = guo_witness(n, d);
                assert_eq!(
                    witness.is_some(),
                    (n + 1) % d != 0,
                    "n={n} d={d} witness={witness:?}"
                );
                if let Some(k) = witness {
                    assert!(floor_drop(n, k, d));
                    assert!((0..k).all(|j| !floor_drop(n, j, d)), "not smallest at n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn basic_identities_hold_on_corpus() {
        for (spec, n_max) in [
            ("lucas:P=1,Q=-1", 30),
            ("naturals", 30),
            ("q:3", 20),
            ("lucas:P=-3,Q=2", 20),
        ] {
            let t = table(spec, n_max);
            let report = verify_basic_identities(&t, n_max).unwrap();
            assert!(report.status.is_pass(), "{spec}: {report:?}");
        }
    }

    #[test]
    fn basic_identities_hold_even_off_sds() {
        // the three identities cancel telescopically for any positive
        // sequence whose binomials stay integral
        let t = table("explicit:1,2,2,2,1,4", 6);
        let report = verify_basic_identities(&t, 6).unwrap();
        assert!(report.status.is_pass());
    }

    #[test]
    fn basic_identities_surface_integrality_failures() {
        let t = table("explicit:2,3,7", 3);
        assert!(matches!(
            verify_basic_identities(&t, 3),
            Err(Error::IntegralityViolation { .. })
        ));
    }
}
