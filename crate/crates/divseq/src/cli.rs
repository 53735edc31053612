//! Command-line engine: configuration, execution, rendering, exit codes.
//!
//! `execute` is pure and returns the exact payload bytes; `run` does the IO.
//! Identical configs therefore produce byte-identical stdout, and `--stamp`
//! metadata goes to stderr only.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::abinomial::verify_basic_identities;
use crate::error::{Error, Result};
use crate::growth::{check_term_bounds, check_theorem4, ratio_scan, BoundLabel, BoundSuite};
use crate::identities::{verify_cor2, verify_cor3, verify_theorem1};
use crate::numeric::mobius_sieve;
use crate::report::Status;
use crate::sds::{check_nowicki, check_pairwise, kimberling_u, nowicki_c, reconstruct, CheckMethod};
use crate::sequences::{generate, LucasParams, SequenceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    CheckSds,
    Factorize,
    Verify,
    Bounds,
    Ratio,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::CheckSds => "check-sds",
            Command::Factorize => "factorize",
            Command::Verify => "verify",
            Command::Bounds => "bounds",
            Command::Ratio => "ratio",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdentityChoice {
    Theorem1,
    Cor2,
    Cor3,
    Basic,
    #[default]
    All,
}

impl FromStr for IdentityChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem1" => Ok(IdentityChoice::Theorem1),
            "cor2" => Ok(IdentityChoice::Cor2),
            "cor3" => Ok(IdentityChoice::Cor3),
            "basic" => Ok(IdentityChoice::Basic),
            "all" => Ok(IdentityChoice::All),
            other => Err(Error::Usage(format!(
                "unknown identity {other:?} (expected theorem1 | cor2 | cor3 | basic | all)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Usage(format!(
                "unknown output format {other:?} (expected json | csv | text)"
            ))),
        }
    }
}

/// Fully resolved invocation. `identity` only matters for `verify`,
/// `step` only for `ratio`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub sequence: SequenceSpec,
    pub n_max: usize,
    pub identity: IdentityChoice,
    pub step: usize,
    pub output: OutputFormat,
    pub out_path: Option<PathBuf>,
    pub stamp: bool,
}

/// Range default when `--n` is omitted: an explicit list means itself,
/// everything else gets a 100-term prefix.
pub fn default_n(spec: &SequenceSpec) -> usize {
    match spec {
        SequenceSpec::Explicit(terms) => terms.len(),
        _ => 100,
    }
}

/// Canonical JSON payload; field set is stable across commands.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub sequence: String,
    pub n_max: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub checks: Vec<Value>,
}

#[derive(Debug)]
pub struct Rendered {
    pub payload: String,
    pub status: Status,
}

struct Body {
    status: Status,
    counterexample: Option<Value>,
    checks: Vec<Value>,
    lines: Vec<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize infallibly")
}

/// Plain decimal with 12 significant digits, no locale, no exponent.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

fn method_name(m: CheckMethod) -> &'static str {
    match m {
        CheckMethod::PairwiseGcd => "pairwise_gcd",
        CheckMethod::NowickiProduct => "nowicki_product",
    }
}

fn status_word(s: Status) -> &'static str {
    if s.is_pass() {
        "pass"
    } else {
        "fail"
    }
}

fn lucas_params(config: &RunConfig) -> Result<LucasParams> {
    match config.sequence {
        SequenceSpec::Lucas { p, q } => LucasParams::new(p, q),
        _ => Err(Error::Usage(format!(
            "{} requires a lucas:P=<int>,Q=<int> sequence, got {}",
            config.command, config.sequence
        ))),
    }
}

fn check_sds_body(config: &RunConfig) -> Result<Body> {
    let table = generate(&config.sequence, config.n_max)?;
    let verdicts = [check_pairwise(&table), check_nowicki(&table)];
    let counterexample = verdicts
        .iter()
        .find_map(|v| v.counterexample.as_ref().map(to_value));
    let lines = verdicts
        .iter()
        .map(|v| format!("{}: {}", method_name(v.method), status_word(v.status)))
        .collect();
    Ok(Body {
        status: Status::from_pass(verdicts.iter().all(|v| v.status.is_pass())),
        counterexample,
        checks: verdicts.iter().map(to_value).collect(),
        lines,
    })
}

fn preview(factors: &[num_bigint::BigUint]) -> String {
    let shown: Vec<String> = factors.iter().take(8).map(|x| x.to_string()).collect();
    let tail = if factors.len() > 8 { ",..." } else { "" };
    format!("{}{tail}", shown.join(","))
}

fn factorize_body(config: &RunConfig) -> Result<Body> {
    let table = generate(&config.sequence, config.n_max)?;
    let mu = mobius_sieve(config.n_max)?;
    let u = kimberling_u(&table, &mu)?;
    let c = nowicki_c(&table);

    let mut agreement = None;
    for d in 1..=table.len() {
        if u.factor(d) != c.factor(d) {
            agreement = Some(json!({
                "n": d,
                "lhs": u.factor(d).to_string(),
                "rhs": c.factor(d).to_string(),
            }));
            break;
        }
    }
    let mut reconstruction = None;
    for n in 1..=table.len() {
        let prod = reconstruct(&c, n).expect("index in range");
        if prod != *table.term(n) {
            reconstruction = Some(json!({
                "n": n,
                "lhs": prod.to_string(),
                "rhs": table.term(n).to_string(),
            }));
            break;
        }
    }

    let strings = |f: &crate::sds::FactorSequence| -> Vec<String> {
        f.factors().iter().map(|x| x.to_string()).collect()
    };
    let agreement_status = Status::from_pass(agreement.is_none());
    let reconstruction_status = Status::from_pass(reconstruction.is_none());
    let lines = vec![
        format!("kimberling: {}", preview(u.factors())),
        format!("nowicki: {}", preview(c.factors())),
        format!("agreement: {}", status_word(agreement_status)),
        format!("reconstruction: {}", status_word(reconstruction_status)),
    ];
    Ok(Body {
        status: Status::from_pass(agreement.is_none() && reconstruction.is_none()),
        counterexample: agreement.or(reconstruction),
        checks: vec![
            json!({"label": "kimberling", "factors": strings(&u)}),
            json!({"label": "nowicki", "factors": strings(&c)}),
            json!({"label": "agreement", "status": agreement_status}),
            json!({"label": "reconstruction", "status": reconstruction_status}),
        ],
        lines,
    })
}

fn verify_body(config: &RunConfig) -> Result<Body> {
    let table = generate(&config.sequence, config.n_max)?;
    let n = config.n_max;
    let mut checks = Vec::new();
    let mut lines = Vec::new();
    let mut counterexample = None;
    let mut all_pass = true;

    let chosen = |c: IdentityChoice| {
        config.identity == c || config.identity == IdentityChoice::All
    };
    let mut push = |name: &str, range: (usize, usize), status: Status, report: Value| {
        lines.push(format!("{name} [{}..{}]: {}", range.0, range.1, status_word(status)));
        if !status.is_pass() {
            all_pass = false;
            if counterexample.is_none() {
                counterexample = report.get("counterexample").cloned();
            }
        }
        checks.push(report);
    };

    if chosen(IdentityChoice::Theorem1) {
        let r = verify_theorem1(&table, n)?;
        push("theorem1", r.range, r.status, to_value(&r));
    }
    if chosen(IdentityChoice::Cor2) {
        let r = verify_cor2(&table, n)?;
        push("corollary2", r.range, r.status, to_value(&r));
    }
    if chosen(IdentityChoice::Cor3) {
        let r = verify_cor3(&table, n)?;
        push("corollary3", r.range, r.status, to_value(&r));
    }
    if chosen(IdentityChoice::Basic) {
        let r = verify_basic_identities(&table, n)?;
        push("basic_identities", r.range, r.status, to_value(&r));
    }

    Ok(Body {
        status: Status::from_pass(all_pass),
        counterexample,
        checks,
        lines,
    })
}

/// One summary entry per bound label; the full per-n comparison lists stay
/// internal (they repeat the same verdict hundreds of times).
fn label_summary(suite: &BoundSuite, label: BoundLabel) -> (Value, Option<Value>) {
    let first = suite
        .checks
        .iter()
        .find(|c| c.label == label && !c.comparison.holds());
    let status = Status::from_pass(first.is_none());
    let mut entry = json!({"label": label, "status": status});
    if let Some(check) = first {
        entry["first_violation"] = json!(check.n);
    }
    (entry, first.map(to_value))
}

fn bounds_body(config: &RunConfig) -> Result<Body> {
    let params = lucas_params(config)?;
    params.require_positive_delta()?;
    let table = generate(&config.sequence, config.n_max)?;
    let term_suite = check_term_bounds(&params, &table)?;
    let lcm_suite = check_theorem4(&params, &table)?;

    let mut checks = Vec::new();
    let mut lines = Vec::new();
    let mut counterexample = None;
    let mut all_pass = true;
    for (suite, label) in [
        (&term_suite, BoundLabel::TermLower),
        (&term_suite, BoundLabel::TermUpper),
        (&lcm_suite, BoundLabel::LcmLower),
        (&lcm_suite, BoundLabel::LcmUpper),
    ] {
        let (entry, first) = label_summary(suite, label);
        lines.push(format!(
            "{}: {}",
            entry["label"].as_str().expect("label is a string"),
            entry["status"].as_str().expect("status is a string"),
        ));
        if let Some(v) = first {
            all_pass = false;
            if counterexample.is_none() {
                counterexample = Some(v);
            }
        }
        checks.push(entry);
    }
    Ok(Body {
        status: Status::from_pass(all_pass),
        counterexample,
        checks,
        lines,
    })
}

fn ratio_body(config: &RunConfig) -> Result<Body> {
    let params = lucas_params(config)?;
    let rows = ratio_scan(&params, config.n_max, config.step)?;
    let lines = rows
        .iter()
        .map(|r| format!("n={} log_lcm={} ratio={}", r.n, sig12(r.log_lcm), sig12(r.ratio)))
        .collect();
    Ok(Body {
        status: Status::Pass,
        counterexample: None,
        checks: rows.iter().map(to_value).collect(),
        lines,
    })
}

fn ratio_csv(config: &RunConfig) -> Result<String> {
    let params = lucas_params(config)?;
    let rows = ratio_scan(&params, config.n_max, config.step)?;
    let mut out = String::from("n,log_lcm,ratio\n");
    for r in &rows {
        out.push_str(&format!("{},{},{}\n", r.n, sig12(r.log_lcm), sig12(r.ratio)));
    }
    Ok(out)
}

fn render_text(envelope: &Envelope, lines: &[String]) -> String {
    let mut out = format!(
        "command: {}\nsequence: {}\nn_max: {}\nstatus: {}\n",
        envelope.command,
        envelope.sequence,
        envelope.n_max,
        status_word(envelope.status),
    );
    for line in lines {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    if let Some(ce) = &envelope.counterexample {
        out.push_str(&format!("counterexample: {ce}\n"));
    }
    out
}

/// Run the configured pipeline and render the payload without touching
/// stdout/stderr or the filesystem.
pub fn execute(config: &RunConfig) -> Result<Rendered> {
    if config.output == OutputFormat::Csv && config.command != Command::Ratio {
        return Err(Error::Usage(format!(
            "csv output is only defined for ratio, not {}",
            config.command
        )));
    }
    if config.output == OutputFormat::Csv {
        return Ok(Rendered {
            payload: ratio_csv(config)?,
            status: Status::Pass,
        });
    }
    let body = match config.command {
        Command::CheckSds => check_sds_body(config)?,
        Command::Factorize => factorize_body(config)?,
        Command::Verify => verify_body(config)?,
        Command::Bounds => bounds_body(config)?,
        Command::Ratio => ratio_body(config)?,
    };
    let envelope = Envelope {
        command: config.command.to_string(),
        sequence: config.sequence.to_string(),
        n_max: config.n_max,
        status: body.status,
        counterexample: body.counterexample,
        checks: body.checks,
    };
    let payload = match config.output {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(&envelope).expect("envelope serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(&envelope, &body.lines),
        OutputFormat::Csv => unreachable!("csv handled above"),
    };
    Ok(Rendered {
        payload,
        status: body.status,
    })
}

/// One-line machine-readable diagnostic on stderr.
pub fn diagnostic(err: &Error) {
    let line = json!({
        "error": err.kind(),
        "message": err.to_string(),
        "exit": err.exit_code(),
    });
    eprintln!("{line}");
}

fn stamp_line(config: &RunConfig) -> String {
    let unix_time = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({
        "stamp": {
            "tool": "divseq",
            "version": env!("CARGO_PKG_VERSION"),
            "command": config.command.to_string(),
            "unix_time": unix_time,
        }
    })
    .to_string()
}

/// Execute and perform IO: payload to stdout or `--out`, diagnostics and
/// stamp to stderr. Returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    if config.stamp {
        eprintln!("{}", stamp_line(config));
    }
    match execute(config) {
        Ok(rendered) => {
            if let Some(path) = &config.out_path {
                if let Err(e) = fs::write(path, &rendered.payload) {
                    let err = Error::Usage(format!("cannot write {}: {e}", path.display()));
                    diagnostic(&err);
                    return err.exit_code();
                }
            } else {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                let _ = lock.write_all(rendered.payload.as_bytes());
                let _ = lock.flush();
            }
            if rendered.status.is_pass() {
                0
            } else {
                1
            }
        }
        Err(err) => {
            diagnostic(&err);
            err.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(command: Command, sequence: &str) -> RunConfig {
        let spec: SequenceSpec = sequence.parse().unwrap();
        let n_max = default_n(&spec);
        RunConfig {
            command,
            sequence: spec,
            n_max,
            identity: IdentityChoice::All,
            step: 10,
            output: OutputFormat::Json,
            out_path: None,
            stamp: false,
        }
    }

    fn envelope_of(rendered: &Rendered) -> Value {
        serde_json::from_str(rendered.payload.trim_end()).unwrap()
    }

    #[test]
    fn choice_parsing() {
        assert_eq!("all".parse::<IdentityChoice>().unwrap(), IdentityChoice::All);
        assert_eq!("cor3".parse::<IdentityChoice>().unwrap(), IdentityChoice::Cor3);
        assert!("thm1".parse::<IdentityChoice>().is_err());
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn default_range_per_spec() {
        assert_eq!(default_n(&"naturals".parse().unwrap()), 100);
        assert_eq!(default_n(&"lucas:P=1,Q=-1".parse().unwrap()), 100);
        assert_eq!(default_n(&"explicit:1,2,2,2,1,4".parse().unwrap()), 6);
    }

    #[test]
    fn sig12_formats_plain_decimals() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(0.303957), "0.303957000000");
        let ln = 2042040f64.ln();
        let s = sig12(ln);
        assert!(s.starts_with("14.52945"), "{s}");
        assert_eq!(s.chars().filter(|c| c.is_ascii_digit()).count(), 12);
        assert_eq!(sig12(1316348.5), "1316348.50000");
    }

    #[test]
    fn check_sds_envelope_pass() {
        let mut cfg = config(Command::CheckSds, "lucas:P=1,Q=-1");
        cfg.n_max = 30;
        let rendered = execute(&cfg).unwrap();
        assert!(rendered.status.is_pass());
        let v = envelope_of(&rendered);
        assert_eq!(v["command"], "check-sds");
        assert_eq!(v["sequence"], "lucas:P=1,Q=-1");
        assert_eq!(v["n_max"], 30);
        assert_eq!(v["status"], "pass");
        assert!(v.get("counterexample").is_none());
        assert_eq!(v["checks"].as_array().unwrap().len(), 2);
        assert_eq!(v["checks"][0]["method"], "pairwise_gcd");
        assert_eq!(v["checks"][1]["method"], "nowicki_product");
    }

    #[test]
    fn check_sds_envelope_counterexample() {
        let cfg = config(Command::CheckSds, "explicit:1,2,2,2,1,4");
        let rendered = execute(&cfg).unwrap();
        assert!(!rendered.status.is_pass());
        let v = envelope_of(&rendered);
        assert_eq!(v["status"], "fail");
        assert_eq!(v["counterexample"]["n"], 2);
        assert_eq!(v["counterexample"]["m"], 3);
        assert_eq!(v["counterexample"]["expected"], "1");
        assert_eq!(v["counterexample"]["actual"], "2");
    }

    #[test]
    fn verify_all_runs_four_checks() {
        let mut cfg = config(Command::Verify, "naturals");
        cfg.n_max = 12;
        let rendered = execute(&cfg).unwrap();
        assert!(rendered.status.is_pass());
        let v = envelope_of(&rendered);
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 4);
        assert_eq!(checks[0]["check"], "theorem1");
        assert_eq!(checks[1]["check"], "corollary2");
        assert_eq!(checks[2]["check"], "corollary3");
        assert_eq!(checks[3]["check"], "basic_identities");
    }

    #[test]
    fn verify_single_identity_and_failure() {
        let mut cfg = config(Command::Verify, "explicit:1,2,2,2,1,4");
        cfg.identity = IdentityChoice::Theorem1;
        let rendered = execute(&cfg).unwrap();
        assert!(!rendered.status.is_pass());
        let v = envelope_of(&rendered);
        assert_eq!(v["checks"].as_array().unwrap().len(), 1);
        assert_eq!(v["counterexample"]["n"], 2);
    }

    #[test]
    fn factorize_reports_disagreement() {
        let cfg = config(Command::Factorize, "explicit:1,2,2,2,1,4");
        let rendered = execute(&cfg).unwrap();
        assert!(!rendered.status.is_pass());
        let v = envelope_of(&rendered);
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks[0]["label"], "kimberling");
        assert_eq!(
            checks[0]["factors"],
            json!(["1", "2", "2", "1", "1", "1"])
        );
        assert_eq!(checks[1]["factors"], json!(["1", "2", "1", "1", "1", "2"]));
        assert_eq!(checks[2], json!({"label": "agreement", "status": "fail"}));
        assert_eq!(checks[3], json!({"label": "reconstruction", "status": "fail"}));
        assert_eq!(v["counterexample"], json!({"n": 3, "lhs": "2", "rhs": "1"}));
    }

    #[test]
    fn factorize_passes_on_fibonacci() {
        let mut cfg = config(Command::Factorize, "lucas:P=1,Q=-1");
        cfg.n_max = 24;
        let rendered = execute(&cfg).unwrap();
        assert!(rendered.status.is_pass());
        let v = envelope_of(&rendered);
        assert_eq!(v["checks"][2]["status"], "pass");
        assert_eq!(v["checks"][3]["status"], "pass");
    }

    #[test]
    fn bounds_summarizes_four_labels() {
        let mut cfg = config(Command::Bounds, "lucas:P=1,Q=-1");
        cfg.n_max = 20;
        let rendered = execute(&cfg).unwrap();
        assert!(rendered.status.is_pass());
        let v = envelope_of(&rendered);
        let labels: Vec<&str> = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["label"].as_str().unwrap())
            .collect();
        assert_eq!(labels, ["term_lower", "term_upper", "lcm_lower", "lcm_upper"]);
        assert!(v["checks"][0].get("first_violation").is_none());
    }

    #[test]
    fn bounds_rejects_non_lucas_and_bad_params() {
        let cfg = config(Command::Bounds, "naturals");
        assert!(matches!(execute(&cfg), Err(Error::Usage(_))));
        let cfg = config(Command::Bounds, "lucas:P=2,Q=1");
        assert!(matches!(
            execute(&cfg),
            Err(Error::UnsupportedParameters(_))
        ));
        let cfg = config(Command::Bounds, "lucas:P=6,Q=3");
        assert!(matches!(
            execute(&cfg),
            Err(Error::UnsupportedParameters(_))
        ));
    }

    #[test]
    fn ratio_json_and_csv_agree() {
        let mut cfg = config(Command::Ratio, "lucas:P=1,Q=-1");
        cfg.n_max = 10;
        cfg.step = 10;
        let rendered = execute(&cfg).unwrap();
        let v = envelope_of(&rendered);
        assert_eq!(v["status"], "pass");
        assert_eq!(v["checks"][0]["n"], 10);
        let ratio = v["checks"][0]["ratio"].as_f64().unwrap();
        assert!((ratio - 0.3019).abs() < 1e-3);

        cfg.output = OutputFormat::Csv;
        let csv = execute(&cfg).unwrap();
        let mut lines = csv.payload.lines();
        assert_eq!(lines.next(), Some("n,log_lcm,ratio"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("10,14.52945"), "{row}");
        assert!(lines.next().is_none());
        assert!(csv.payload.ends_with('\n'));
    }

    #[test]
    fn csv_is_ratio_only() {
        let mut cfg = config(Command::Verify, "naturals");
        cfg.output = OutputFormat::Csv;
        assert!(matches!(execute(&cfg), Err(Error::Usage(_))));
    }

    #[test]
    fn text_mode_summarizes() {
        let mut cfg = config(Command::CheckSds, "lucas:P=1,Q=-1");
        cfg.n_max = 10;
        cfg.output = OutputFormat::Text;
        let rendered = execute(&cfg).unwrap();
        assert_eq!(
            rendered.payload,
            "command: check-sds\nsequence: lucas:P=1,Q=-1\nn_max: 10\nstatus: pass\n  pairwise_gcd: pass\n  nowicki_product: pass\n"
        );
    }

    #[test]
    fn identical_configs_render_identical_bytes() {
        let mut cfg = config(Command::Verify, "lucas:P=1,Q=-2");
        cfg.n_max = 20;
        let a = execute(&cfg).unwrap();
        let b = execute(&cfg).unwrap();
        assert_eq!(a.payload, b.payload);
    }

    #[test]
    fn degenerate_sequence_surfaces_exit_three_error() {
        let mut cfg = config(Command::CheckSds, "lucas:P=1,Q=1");
        cfg.n_max = 12;
        let err = execute(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(matches!(err, Error::DegenerateSequence { index: 3 }));
    }
}
