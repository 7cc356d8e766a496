//! C interface. Scenarios and outcomes are opaque handles; every fallible
//! call returns a [`PcStatus`] and records a message retrievable with
//! [`pc_last_error`]. Strings returned through out-parameters must be
//! released with [`pc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plainchart::cli::{builtin_example, parse_poly, run_scenario, Outcome, Scenario};
use plainchart::{Error, MonomialOrder, PolyRing};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InputError = 3,
    VerificationFailed = 4,
    BudgetExceeded = 5,
    Panic = 6,
}

/// Opaque parsed scenario.
pub struct PcScenario(Scenario);

/// Opaque result of running a scenario.
pub struct PcOutcome(Outcome);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: PcStatus, msg: impl Into<String>) -> PcStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> PcStatus {
    let status = match e {
        Error::BudgetExceeded { .. } => PcStatus::BudgetExceeded,
        _ => PcStatus::InputError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> PcStatus) -> PcStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(PcStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PcStatus> {
    if s.is_null() {
        return Err(fail(PcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(PcStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> PcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            PcStatus::Ok
        }
        Err(_) => fail(PcStatus::InputError, "output contains a NUL byte"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(PcStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// Parses a JSON scenario into `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_scenario_from_json(
    json: *const c_char,
    out: *mut *mut PcScenario,
) -> PcStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(json));
        match Scenario::from_json(text) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(PcScenario(s)));
                PcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Loads a built-in scenario by name into `*out`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_scenario_example(
    name: *const c_char,
    out: *mut *mut PcScenario,
) -> PcStatus {
    guard(|| {
        non_null!(out);
        let name = try_status!(read_str(name));
        match builtin_example(name) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(PcScenario(s)));
                PcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Overrides the seed used by sampled projections.
///
/// # Safety
/// `scenario` must come from this library and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn pc_scenario_set_seed(scenario: *mut PcScenario, seed: u64) -> PcStatus {
    guard(|| {
        non_null!(scenario);
        (*scenario).0.options.seed = seed;
        PcStatus::Ok
    })
}

/// Overrides the Gröbner pair-reduction budget.
///
/// # Safety
/// `scenario` must come from this library and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn pc_scenario_set_budget(
    scenario: *mut PcScenario,
    budget: usize,
) -> PcStatus {
    guard(|| {
        non_null!(scenario);
        (*scenario).0.options.budget = budget;
        PcStatus::Ok
    })
}

/// # Safety
/// `scenario` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pc_scenario_free(scenario: *mut PcScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Runs a scenario. An outcome is stored in `*out` whenever the run
/// completes, including when a check fails; the status then reports
/// `VerificationFailed` or `BudgetExceeded`.
///
/// # Safety
/// `scenario` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_scenario_run(
    scenario: *const PcScenario,
    out: *mut *mut PcOutcome,
) -> PcStatus {
    guard(|| {
        non_null!(scenario, out);
        *out = ptr::null_mut();
        match run_scenario(&(*scenario).0) {
            Ok(o) => {
                let status = if o.passed {
                    PcStatus::Ok
                } else if o.budget_exceeded {
                    fail(
                        PcStatus::BudgetExceeded,
                        "budget exceeded during verification",
                    )
                } else {
                    fail(PcStatus::VerificationFailed, "verification failed")
                };
                *out = Box::into_raw(Box::new(PcOutcome(o)));
                status
            }
            Err(e) => from_error(e),
        }
    })
}

/// 1 if every check passed, 0 otherwise (including a null handle).
///
/// # Safety
/// `outcome` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pc_outcome_passed(outcome: *const PcOutcome) -> i32 {
    (!outcome.is_null() && (*outcome).0.passed) as i32
}

/// Writes the outcome as pretty JSON into `*out`.
///
/// # Safety
/// `outcome` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_outcome_to_json(
    outcome: *const PcOutcome,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        non_null!(outcome, out);
        match (*outcome).0.to_json() {
            Ok(s) => write_string(out, s),
            Err(e) => from_error(e),
        }
    })
}

/// Writes the human-readable report into `*out`.
///
/// # Safety
/// `outcome` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_outcome_to_text(
    outcome: *const PcOutcome,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        non_null!(outcome, out);
        write_string(out, (*outcome).0.to_text())
    })
}

/// # Safety
/// `outcome` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pc_outcome_free(outcome: *mut PcOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}

/// Parses `text` over the comma-separated variables `vars` (grevlex) and
/// writes its canonical form into `*out`.
///
/// # Safety
/// `vars` and `text` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_polynomial_canonicalize(
    vars: *const c_char,
    text: *const c_char,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        non_null!(out);
        let vars = try_status!(read_str(vars));
        let text = try_status!(read_str(text));
        let names: Vec<&str> = vars
            .split(',')
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .collect();
        let result =
            PolyRing::new(&names, MonomialOrder::Grevlex).and_then(|ring| parse_poly(text, &ring));
        match result {
            Ok(p) => write_string(out, p.to_canonical_string()),
            Err(e) => from_error(e),
        }
    })
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library or null.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
