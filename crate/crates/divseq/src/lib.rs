//! Exact verification of lcm identities and growth bounds for strong
//! divisibility sequences.
//!
//! A strong divisibility sequence satisfies gcd(a_n, a_m) = a_{gcd(n,m)};
//! Fibonacci, the natural numbers, q^n - 1 and every nondegenerate Lucas
//! sequence U(P,Q) are instances. For such sequences the generalized
//! binomials binom(n,k)_a = (a_n ... a_{n-k+1})/(a_k ... a_1) are integers,
//! and prefix lcms satisfy identities such as
//!
//! lcm(binom(n,0)_a, ..., binom(n,n)_a) = lcm(a_1, ..., a_{n+1}) / a_{n+1}
//!
//! together with two corollaries that rebuild lcm(a_1..a_n) from weighted
//! binomials (by lcm) or from binomial-lcm products (by gcd). Everything
//! here checks those statements with exact integer arithmetic, including
//! the exponential growth bounds for Lucas terms and their prefix lcms,
//! which are decided in the ring Z[(1+sqrt(D))/2] rather than in floating
//! point.
//!
//! Module map:
//! - [`numeric`]: gcd/lcm folds, exact division, Möbius sieve.
//! - [`sequences`]: sequence specs, term tables, prefix lcms, Binet checks.
//! - [`quadratic`]: exact half-integer arithmetic in Q(sqrt(D)) and the
//!   power comparisons all bound verdicts go through.
//! - [`sds`]: strong divisibility checkers (pairwise and Nowicki) and the
//!   Kimberling/Nowicki factor sequences.
//! - [`abinomial`]: generalized binomials, their factorization over the
//!   Kimberling factors, and the basic binomial identities.
//! - [`identities`]: the lcm identities above, verified over index ranges.
//! - [`growth`]: per-term and prefix-lcm growth bounds, ratio scans.
//! - [`report`], [`error`]: shared verdict and error types.
//! - [`cli`]: the command-line engine behind the `divseq` binary.

pub mod abinomial;
pub mod cli;
pub mod error;
pub mod growth;
pub mod identities;
pub mod numeric;
pub mod quadratic;
pub mod report;
pub mod sds;
pub mod sequences;
