//! Machine-readable verdicts shared by the checkers and the CLI.
//!
//! Every big integer serializes as a decimal string: the values routinely
//! exceed any fixed-width JSON number and must survive round-trips byte-exact.

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Serialize a BigUint as its decimal string.
pub fn nat_string<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// First index tuple where two exactly-computed sides disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl Serialize for Mismatch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let extra = usize::from(self.k.is_some()) + usize::from(self.l.is_some());
        let mut st = s.serialize_struct("Mismatch", 3 + extra)?;
        st.serialize_field("n", &self.n)?;
        if let Some(k) = self.k {
            st.serialize_field("k", &k)?;
        }
        if let Some(l) = self.l {
            st.serialize_field("l", &l)?;
        }
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        st.end()
    }
}

/// Generic check verdict: what was checked, over which index range,
/// and the first disagreement if any.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    /// Inclusive index range covered, e.g. (1, N) or (0, N-1).
    pub range: (usize, usize),
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Mismatch>,
}

impl Report {
    pub fn new(check: &str, range: (usize, usize), counterexample: Option<Mismatch>) -> Self {
        Report {
            check: check.to_string(),
            range,
            status: Status::from_pass(counterexample.is_none()),
            counterexample,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_serializes_big_values_as_strings() {
        let report = Report::new(
            "demo",
            (1, 10),
            Some(Mismatch {
                n: 3,
                k: None,
                l: None,
                lhs: BigUint::from(2u32).pow(100),
                rhs: BigUint::from(1u32),
            }),
        );
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["counterexample"]["n"], 3);
        assert_eq!(
            json["counterexample"]["lhs"],
            "1267650600228229401496703205376"
        );
        assert!(json["counterexample"].get("k").is_none());
    }

    #[test]
    fn passing_report_omits_counterexample() {
        let report = Report::new("demo", (1, 5), None);
        assert!(report.status.is_pass());
        let json = serde_json::to_string(&report).unwrap();
        assert!(!json.contains("counterexample"));
    }
}
