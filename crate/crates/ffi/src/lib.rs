//! C ABI for the rota-baxter crate.
//!
//! Series and operators cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free` function. Strings returned
//! through `char **` out-parameters are released with [`rb_string_free`].
//! Every fallible call returns an [`RbStatus`]; on failure a description is
//! available from [`rb_last_error_message`] on the same thread.
//!
//! Panics never cross the boundary: they are reported as `RB_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rota_baxter::identities::{run_check, run_suite, Params, SuiteManifest};
use rota_baxter::solvers::{closed_solve, picard_solve};
use rota_baxter::{
    EquationForm, EquationSpec, Error, OperatorKind, OperatorSpec, RingDescriptor, TruncatedSeries,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Usage = 4,
    Domain = 5,
    RingMismatch = 6,
    CapMismatch = 7,
    Config = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbMethod {
    Picard = 0,
    Closed = 1,
}

/// Truncated power series over ℚ or a matrix ring.
pub struct RbSeries(TruncatedSeries);

/// A Rota-Baxter operator with its parameter.
pub struct RbOperator(OperatorSpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(RbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::RingMismatch { .. } => RbStatus::RingMismatch,
            Error::CapMismatch { .. } => RbStatus::CapMismatch,
            Error::Domain(_) => RbStatus::Domain,
            Error::Usage(_) => RbStatus::Usage,
            Error::Config(_) => RbStatus::Config,
            Error::Parse(_) => RbStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(RbStatus::NullPointer, format!("{name} is null"))
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> RbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            RbStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal panic: {message}"));
            RbStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(RbStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, name).map(Some)
    }
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(RbStatus::Parse, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn ring(dim: u32) -> Result<RingDescriptor, Failure> {
    Ok(RingDescriptor::with_dim(dim as usize)?)
}

/// Description of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn rb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses comma-separated coefficients; `dim` 1 is the scalar ring.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_series_parse(
    text: *const c_char,
    dim: u32,
    cap: u32,
    out: *mut *mut RbSeries,
) -> RbStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let s = TruncatedSeries::parse(text, ring(dim)?, cap as usize)?;
        write_out(out, RbSeries(s), "out")
    })
}

/// Parses a JSON array of coefficients.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_series_parse_json(
    json: *const c_char,
    dim: u32,
    cap: u32,
    out: *mut *mut RbSeries,
) -> RbStatus {
    guard(|| {
        let json = str_arg(json, "json")?;
        let s = TruncatedSeries::from_json(json, ring(dim)?, cap as usize)?;
        write_out(out, RbSeries(s), "out")
    })
}

/// # Safety
/// `series` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_series_to_text(
    series: *const RbSeries,
    out: *mut *mut c_char,
) -> RbStatus {
    guard(|| write_string(out, ref_arg(series, "series")?.0.to_string()))
}

/// # Safety
/// `series` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_series_to_json(
    series: *const RbSeries,
    out: *mut *mut c_char,
) -> RbStatus {
    guard(|| write_string(out, ref_arg(series, "series")?.0.to_json()))
}

/// Truncation order of the series, or 0 for a null handle.
///
/// # Safety
/// `series` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn rb_series_cap(series: *const RbSeries) -> u32 {
    series.as_ref().map_or(0, |s| s.0.cap() as u32)
}

/// # Safety
/// `a` and `b` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_series_mul(
    a: *const RbSeries,
    b: *const RbSeries,
    out: *mut *mut RbSeries,
) -> RbStatus {
    guard(|| {
        let p = ref_arg(a, "a")?.0.checked_mul(&ref_arg(b, "b")?.0)?;
        write_out(out, RbSeries(p), "out")
    })
}

/// # Safety
/// `a` and `b` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_series_add(
    a: *const RbSeries,
    b: *const RbSeries,
    out: *mut *mut RbSeries,
) -> RbStatus {
    guard(|| {
        let s = ref_arg(a, "a")?.0.checked_add(&ref_arg(b, "b")?.0)?;
        write_out(out, RbSeries(s), "out")
    })
}

/// # Safety
/// `series` must be null or come from this library, and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rb_series_free(series: *mut RbSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// `kind` is `qint`, `qscale` or `antider`; `q` is a rational such as
/// `"1/2"`, required for the q-operators and ignored (may be null) otherwise.
///
/// # Safety
/// `kind` must be a nul-terminated string, `q` null or nul-terminated, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_operator_new(
    kind: *const c_char,
    q: *const c_char,
    out: *mut *mut RbOperator,
) -> RbStatus {
    guard(|| {
        let kind: OperatorKind = str_arg(kind, "kind")?.parse()?;
        let q = match (kind.needs_q(), opt_str_arg(q, "q")?) {
            (true, Some(text)) => Some(text.parse()?),
            (true, None) => return Err(null("q")),
            (false, _) => None,
        };
        write_out(out, RbOperator(OperatorSpec::new(kind, q)?), "out")
    })
}

/// # Safety
/// `op` must be null or come from this library, and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rb_operator_free(op: *mut RbOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// # Safety
/// `op` and `x` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_operator_apply(
    op: *const RbOperator,
    x: *const RbSeries,
    out: *mut *mut RbSeries,
) -> RbStatus {
    guard(|| {
        let y = ref_arg(op, "op")?.0.apply(&ref_arg(x, "x")?.0)?;
        write_out(out, RbSeries(y), "out")
    })
}

/// Applies `x ↦ −λx − P(x)`.
///
/// # Safety
/// `op` and `x` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_operator_apply_tilde(
    op: *const RbOperator,
    x: *const RbSeries,
    out: *mut *mut RbSeries,
) -> RbStatus {
    guard(|| {
        let y = ref_arg(op, "op")?.0.tilde_apply(&ref_arg(x, "x")?.0)?;
        write_out(out, RbSeries(y), "out")
    })
}

/// Solves `homogeneous`, `inhom-left` or `inhom-right`; `a0` must be null
/// for the homogeneous equation and non-null otherwise.
///
/// # Safety
/// `equation` must be a nul-terminated string; `op`, `a1` and a non-null
/// `a0` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_solve(
    equation: *const c_char,
    op: *const RbOperator,
    a0: *const RbSeries,
    a1: *const RbSeries,
    method: RbMethod,
    out: *mut *mut RbSeries,
) -> RbStatus {
    guard(|| {
        let form: EquationForm = str_arg(equation, "equation")?.parse()?;
        let a0 = a0.as_ref().map(|s| s.0.clone());
        let eq = EquationSpec::new(
            form,
            ref_arg(op, "op")?.0.clone(),
            a0,
            ref_arg(a1, "a1")?.0.clone(),
        )?;
        let b = match method {
            RbMethod::Picard => picard_solve(&eq)?,
            RbMethod::Closed => closed_solve(&eq)?,
        };
        write_out(out, RbSeries(b), "out")
    })
}

/// Runs one identity check. `params_json` is null or a JSON object of
/// string values such as `{"q": "1/2", "order": "12"}`. The report is
/// written as a JSON object with keys `identity_id`, `params`, `status`,
/// `first_mismatch` and `elapsed_ms`.
///
/// # Safety
/// `identity_id` must be nul-terminated, `params_json` null or
/// nul-terminated, and `report_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_verify(
    identity_id: *const c_char,
    params_json: *const c_char,
    report_json: *mut *mut c_char,
) -> RbStatus {
    guard(|| {
        let id = str_arg(identity_id, "identity_id")?;
        let params: Params = match opt_str_arg(params_json, "params_json")? {
            Some(text) => serde_json::from_str(text)
                .map_err(|e| Failure(RbStatus::Parse, format!("params_json: {e}")))?,
            None => Params::new(),
        };
        let report = run_check(id, &params)?;
        write_string(
            report_json,
            serde_json::to_string(&report).expect("report serializes"),
        )
    })
}

/// Runs the bundled manifest. Writes the JSON array of reports and whether
/// every status matched its expectation.
///
/// # Safety
/// `reports_json` and `all_expected` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rb_run_default_suite(
    reports_json: *mut *mut c_char,
    all_expected: *mut bool,
) -> RbStatus {
    guard(|| {
        if all_expected.is_null() {
            return Err(null("all_expected"));
        }
        let outcome = run_suite(&SuiteManifest::default_manifest())?;
        write_string(
            reports_json,
            serde_json::to_string(&outcome.reports).expect("reports serialize"),
        )?;
        *all_expected = outcome.success();
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn rb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
