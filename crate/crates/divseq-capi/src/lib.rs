//! C interface over the divseq crate: opaque term-table handles plus
//! JSON- and CSV-rendering entry points mirroring the CLI commands.
//!
//! Conventions: every fallible call returns a [`DivseqStatus`]; strings
//! handed to the caller are heap-allocated, NUL-terminated, and must be
//! released with [`divseq_string_free`]; `n_terms = 0` selects the same
//! default length as the CLI. No call unwinds across the boundary.
//!
//! Safety contract, uniform across all entry points: pointer arguments
//! must be null or valid for their stated use (NUL-terminated strings,
//! writable out-slots, handles from this library not yet freed); null is
//! reported as a status, never dereferenced.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use divseq::cli::{self, Command, IdentityChoice, OutputFormat, RunConfig};
use divseq::error::Error;
use divseq::sequences::{generate, SequenceSpec, TermTable};

/// Outcome of a call. `Ok`/`Fail` both mean the computation ran; `Fail`
/// marks a verified property violation, mirroring CLI exit codes 0 and 1.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivseqStatus {
    Ok = 0,
    Fail = 1,
    Usage = 2,
    Degenerate = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Opaque sequence table handle.
pub struct DivseqTable {
    inner: TermTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let stored = CString::new(msg.replace('\0', " ")).expect("NUL stripped");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of_error(e: &Error) -> DivseqStatus {
    set_error(&e.to_string());
    match e.exit_code() {
        3 => DivseqStatus::Degenerate,
        _ => DivseqStatus::Usage,
    }
}

fn guarded(f: impl FnOnce() -> DivseqStatus) -> DivseqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            DivseqStatus::Panic
        }
    }
}

fn parse_spec(spec: *const c_char) -> Result<SequenceSpec, DivseqStatus> {
    if spec.is_null() {
        set_error("sequence spec pointer is null");
        return Err(DivseqStatus::NullPointer);
    }
    let text = unsafe { CStr::from_ptr(spec) }.to_str().map_err(|_| {
        set_error("sequence spec is not valid UTF-8");
        DivseqStatus::Usage
    })?;
    text.parse::<SequenceSpec>().map_err(|e| status_of_error(&e))
}

fn write_string(out: *mut *mut c_char, payload: String) -> Result<(), DivseqStatus> {
    let c = CString::new(payload).map_err(|_| {
        set_error("payload contained an interior NUL");
        DivseqStatus::Panic
    })?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn run_command(
    command: Command,
    spec: *const c_char,
    n_terms: usize,
    identity: IdentityChoice,
    step: usize,
    output: OutputFormat,
    out: *mut *mut c_char,
) -> DivseqStatus {
    guarded(|| {
        clear_error();
        if out.is_null() {
            set_error("output pointer is null");
            return DivseqStatus::NullPointer;
        }
        let sequence = match parse_spec(spec) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let n_max = if n_terms == 0 { cli::default_n(&sequence) } else { n_terms };
        let config = RunConfig {
            command,
            sequence,
            n_max,
            identity,
            step,
            output,
            out_path: None,
            stamp: false,
        };
        match cli::execute(&config) {
            Ok(rendered) => {
                let pass = rendered.status.is_pass();
                match write_string(out, rendered.payload) {
                    Ok(()) if pass => DivseqStatus::Ok,
                    Ok(()) => DivseqStatus::Fail,
                    Err(status) => status,
                }
            }
            Err(e) => status_of_error(&e),
        }
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn divseq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or null if the
/// last call succeeded. Caller frees with `divseq_string_free`.
#[no_mangle]
pub extern "C" fn divseq_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn divseq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Build a term table from a sequence spec such as `lucas:P=1,Q=-1`,
/// `naturals`, `q:2`, or `explicit:1,2,3`. On success stores a handle in
/// `*out`; release it with `divseq_table_free`.
#[no_mangle]
pub unsafe extern "C" fn divseq_table_new(
    spec: *const c_char,
    n_terms: usize,
    out: *mut *mut DivseqTable,
) -> DivseqStatus {
    guarded(|| {
        clear_error();
        if out.is_null() {
            set_error("output pointer is null");
            return DivseqStatus::NullPointer;
        }
        let sequence = match parse_spec(spec) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let n = if n_terms == 0 { cli::default_n(&sequence) } else { n_terms };
        match generate(&sequence, n) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(DivseqTable { inner })) };
                DivseqStatus::Ok
            }
            Err(e) => status_of_error(&e),
        }
    })
}

/// Release a table handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn divseq_table_free(table: *mut DivseqTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Number of terms held, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn divseq_table_len(table: *const DivseqTable) -> usize {
    if table.is_null() {
        return 0;
    }
    unsafe { &*table }.inner.len()
}

/// Decimal rendering of the 1-based term a_n into `*out`.
#[no_mangle]
pub unsafe extern "C" fn divseq_table_term(
    table: *const DivseqTable,
    n: usize,
    out: *mut *mut c_char,
) -> DivseqStatus {
    guarded(|| {
        clear_error();
        if table.is_null() || out.is_null() {
            set_error("null pointer argument");
            return DivseqStatus::NullPointer;
        }
        let inner = &unsafe { &*table }.inner;
        if n < 1 || n > inner.len() {
            set_error(&format!("term index {n} outside 1..={}", inner.len()));
            return DivseqStatus::Usage;
        }
        match write_string(out, inner.term(n).to_string()) {
            Ok(()) => DivseqStatus::Ok,
            Err(status) => status,
        }
    })
}

/// Decimal rendering of lcm(a_1..a_n) into `*out`.
#[no_mangle]
pub unsafe extern "C" fn divseq_table_prefix_lcm(
    table: *const DivseqTable,
    n: usize,
    out: *mut *mut c_char,
) -> DivseqStatus {
    guarded(|| {
        clear_error();
        if table.is_null() || out.is_null() {
            set_error("null pointer argument");
            return DivseqStatus::NullPointer;
        }
        let inner = &unsafe { &*table }.inner;
        if n < 1 || n > inner.len() {
            set_error(&format!("prefix index {n} outside 1..={}", inner.len()));
            return DivseqStatus::Usage;
        }
        match write_string(out, inner.prefix_lcm(n).to_string()) {
            Ok(()) => DivseqStatus::Ok,
            Err(status) => status,
        }
    })
}

/// Strong-divisibility check; JSON envelope into `*out_json`.
/// `Ok` means the property held, `Fail` that a counterexample was found.
#[no_mangle]
pub unsafe extern "C" fn divseq_check_sds(
    spec: *const c_char,
    n_terms: usize,
    out_json: *mut *mut c_char,
) -> DivseqStatus {
    run_command(
        Command::CheckSds,
        spec,
        n_terms,
        IdentityChoice::All,
        10,
        OutputFormat::Json,
        out_json,
    )
}

/// Kimberling and quotient factorizations with agreement and
/// reconstruction checks; JSON envelope into `*out_json`.
#[no_mangle]
pub unsafe extern "C" fn divseq_factorize(
    spec: *const c_char,
    n_terms: usize,
    out_json: *mut *mut c_char,
) -> DivseqStatus {
    run_command(
        Command::Factorize,
        spec,
        n_terms,
        IdentityChoice::All,
        10,
        OutputFormat::Json,
        out_json,
    )
}

/// Verify lcm identities. `identity` selects one of `theorem1`, `cor2`,
/// `cor3`, `basic`, `all`; null means `all`. JSON envelope into `*out_json`.
#[no_mangle]
pub unsafe extern "C" fn divseq_verify(
    spec: *const c_char,
    n_terms: usize,
    identity: *const c_char,
    out_json: *mut *mut c_char,
) -> DivseqStatus {
    let choice = if identity.is_null() {
        IdentityChoice::All
    } else {
        let text = match unsafe { CStr::from_ptr(identity) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("identity name is not valid UTF-8");
                return DivseqStatus::Usage;
            }
        };
        match text.parse::<IdentityChoice>() {
            Ok(c) => c,
            Err(e) => return status_of_error(&e),
        }
    };
    run_command(Command::Verify, spec, n_terms, choice, 10, OutputFormat::Json, out_json)
}

/// Growth-bound suite for a Lucas spec; JSON envelope into `*out_json`.
#[no_mangle]
pub unsafe extern "C" fn divseq_bounds(
    spec: *const c_char,
    n_terms: usize,
    out_json: *mut *mut c_char,
) -> DivseqStatus {
    run_command(
        Command::Bounds,
        spec,
        n_terms,
        IdentityChoice::All,
        10,
        OutputFormat::Json,
        out_json,
    )
}

/// Prefix-lcm ratio scan rendered as CSV (`n,log_lcm,ratio`) into
/// `*out_csv`, sampling every `step` indices.
#[no_mangle]
pub unsafe extern "C" fn divseq_ratio_csv(
    spec: *const c_char,
    n_terms: usize,
    step: usize,
    out_csv: *mut *mut c_char,
) -> DivseqStatus {
    run_command(
        Command::Ratio,
        spec,
        n_terms,
        IdentityChoice::All,
        step,
        OutputFormat::Csv,
        out_csv,
    )
}
