//! C ABI for `wcover`.
//!
//! Objects cross the boundary as opaque pointers created by `*_new`/`*_from_*`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`WcStatus`]; on failure, [`wc_last_error`] describes the most
//! recent error on the calling thread. Strings returned through `out`
//! parameters are owned by the caller and must be released with
//! [`wc_string_free`]. Sets are passed as bit patterns: element `i` (1-based)
//! is bit `i - 1`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;
use wcover::completion::{completion_feasible, Completion};
use wcover::io::{
    coefficients_to_json, instance_from_json, instance_to_json, log_from_json, oracle_from_spec,
    parse_oracle_spec, set_value, table_from_json, table_to_json, InstanceJson, LogJson, TableJson,
};
use wcover::rational::{format_rational, parse_rational};
use wcover::reconstruct::{recover, test_coverage, TestVerdict};
use wcover::subset::DEFAULT_MAX_DENSE;
use wcover::wtransform::{forward, verdict_from_coefficients, w_distance, CoverageVerdict};
use wcover::{adversarial::FStarParams, CountingOracle, CoverageInstance, DenseSetFunction, Error, SubsetMask};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    ResourceLimit = 4,
    Panic = 5,
}

/// A full table of values.
pub struct WcFunction(DenseSetFunction);

/// A weighted set system.
pub struct WcInstance(CoverageInstance);

/// A value oracle that counts its queries.
pub struct WcOracle(CountingOracle);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: WcStatus, msg: String) -> WcStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> WcStatus {
    let status = match e {
        Error::GroundSetTooLarge { m, .. } if m > 0 => WcStatus::ResourceLimit,
        _ => WcStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), WcStatus>) -> WcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(WcStatus::Panic, "internal panic".into()),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, WcStatus> {
    if p.is_null() {
        return Err(fail(WcStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(WcStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, WcStatus> {
    p.as_ref()
        .ok_or_else(|| fail(WcStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), WcStatus> {
    if out.is_null() {
        return Err(fail(WcStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), WcStatus> {
    let c = CString::new(s).map_err(|_| fail(WcStatus::InvalidInput, "output contains a nul byte".into()))?;
    write_out(out, c.into_raw())
}

fn ok<T>(r: wcover::Result<T>) -> Result<T, WcStatus> {
    r.map_err(from_error)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, WcStatus> {
    serde_json::from_str(text).map_err(|e| fail(WcStatus::InvalidInput, e.to_string()))
}

fn mask(bits: u64, m: usize) -> Result<SubsetMask, WcStatus> {
    ok(SubsetMask::new(bits, m))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a table file (`{"m", "values"}`) into a function handle.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_function_from_json(json: *const c_char, out: *mut *mut WcFunction) -> WcStatus {
    guard(|| {
        let j: TableJson = parse_json(read_str(json)?)?;
        let f = ok(table_from_json(&j, DEFAULT_MAX_DENSE))?;
        write_out(out, Box::into_raw(Box::new(WcFunction(f))))
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wc_function_free(f: *mut WcFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_function_ground_size(f: *const WcFunction, out: *mut usize) -> WcStatus {
    guard(|| write_out(out, deref(f)?.0.m()))
}

/// Writes whether every W-coefficient is nonnegative.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_function_is_coverage(f: *const WcFunction, out: *mut bool) -> WcStatus {
    guard(|| {
        let w = ok(forward(&deref(f)?.0))?;
        write_out(out, verdict_from_coefficients(&w).is_coverage())
    })
}

/// Fraction of negative W-coefficients as a `"p/q"` string.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_function_w_distance(f: *const WcFunction, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let w = ok(forward(&deref(f)?.0))?;
        write_string(out, format_rational(&w_distance(&w)))
    })
}

/// JSON report with the coefficients, verdict and W-distance.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_function_transform_json(f: *const WcFunction, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let w = ok(forward(&deref(f)?.0))?;
        let verdict = match verdict_from_coefficients(&w) {
            CoverageVerdict::Coverage(inst) => json!({"verdict": "coverage", "support": instance_to_json(&inst)}),
            CoverageVerdict::NotCoverage { set, value } => {
                json!({"verdict": "not-coverage", "witness": set_value(set, &value)})
            }
        };
        let report = json!({
            "m": w.m(),
            "result": verdict,
            "w_distance": format_rational(&w_distance(&w)),
            "coefficients": coefficients_to_json(&w).coefficients,
        });
        write_string(out, report.to_string())
    })
}

/// Parses an instance file (`{"m", "elements"}`).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_instance_from_json(json: *const c_char, out: *mut *mut WcInstance) -> WcStatus {
    guard(|| {
        let j: InstanceJson = parse_json(read_str(json)?)?;
        let inst = ok(instance_from_json(&j))?;
        write_out(out, Box::into_raw(Box::new(WcInstance(inst))))
    })
}

/// # Safety
/// `inst` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wc_instance_free(inst: *mut WcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Weight of the elements covered by the set `bits`, as a string.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_instance_eval(inst: *const WcInstance, bits: u64, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let inst = &deref(inst)?.0;
        let v = ok(wcover::instance::eval_instance(inst, mask(bits, inst.m())?))?;
        write_string(out, format_rational(&v))
    })
}

/// Tabulates an instance into a function handle.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_instance_to_function(inst: *const WcInstance, out: *mut *mut WcFunction) -> WcStatus {
    guard(|| {
        let f = ok(DenseSetFunction::tabulate(&deref(inst)?.0))?;
        write_out(out, Box::into_raw(Box::new(WcFunction(f))))
    })
}

/// Oracle from a spec, instance or table JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_oracle_from_json(json: *const c_char, out: *mut *mut WcOracle) -> WcStatus {
    guard(|| {
        let spec = ok(parse_oracle_spec(read_str(json)?))?;
        let o = ok(oracle_from_spec(&spec))?;
        write_out(out, Box::into_raw(Box::new(WcOracle(o))))
    })
}

/// Oracle for the hard function `f*`. `n` is a rational string, or null for
/// the default `(2^m)! + 1`.
///
/// # Safety
/// `n` must be null or a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_oracle_fstar(m: usize, k: usize, n: *const c_char, out: *mut *mut WcOracle) -> WcStatus {
    guard(|| {
        let params = if n.is_null() {
            ok(FStarParams::new(m, k))?
        } else {
            ok(FStarParams::with_n(m, k, ok(parse_rational(read_str(n)?))?))?
        };
        write_out(out, Box::into_raw(Box::new(WcOracle(CountingOracle::new(params)))))
    })
}

/// # Safety
/// `o` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wc_oracle_free(o: *mut WcOracle) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Queries the oracle once.
///
/// # Safety
/// `o` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_oracle_eval(o: *const WcOracle, bits: u64, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let o = &deref(o)?.0;
        let v = ok(o.eval(mask(bits, o.m())?))?;
        write_string(out, format_rational(&v))
    })
}

/// Number of queries answered so far.
///
/// # Safety
/// `o` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_oracle_queries(o: *const WcOracle, out: *mut u64) -> WcStatus {
    guard(|| write_out(out, deref(o)?.0.queries()))
}

/// Recovers an instance with support at most `n`. Writes the instance JSON
/// on success; a non-coverage oracle fails with `InvalidInput` and the
/// reason in [`wc_last_error`].
///
/// # Safety
/// `o` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_oracle_recover(o: *const WcOracle, n: usize, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let r = ok(recover(&deref(o)?.0, n))?;
        let report = json!({
            "instance": instance_to_json(&r.instance),
            "queries": r.queries_used,
            "levels": r.levels,
        });
        write_string(out, report.to_string())
    })
}

/// Runs the tester with `ε` given as a rational string; writes `true` for
/// accept.
///
/// # Safety
/// `o` must be a live handle, `epsilon` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn wc_oracle_test(
    o: *const WcOracle,
    n: usize,
    epsilon: *const c_char,
    seed: u64,
    out: *mut bool,
) -> WcStatus {
    guard(|| {
        let eps = ok(parse_rational(read_str(epsilon)?))?;
        let t = ok(test_coverage(&deref(o)?.0, n, &eps, seed))?;
        write_out(out, t.verdict == TestVerdict::Yes)
    })
}

/// Decides whether a log (`{"m", "entries"}`) extends to a coverage
/// function. Writes `{"feasible", "completion", "witness"}`.
///
/// # Safety
/// `log_json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_complete_json(log_json: *const c_char, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let j: LogJson = parse_json(read_str(log_json)?)?;
        let log = ok(log_from_json(&j))?;
        let report = match ok(completion_feasible(&log))? {
            Completion::Feasible(f) => json!({
                "feasible": true,
                "completion": table_to_json(&f),
                "witness": null,
            }),
            Completion::Infeasible(w) => {
                let alpha: Vec<_> = w.alpha.iter().map(|(s, a)| set_value(*s, a)).collect();
                json!({"feasible": false, "completion": null, "witness": {"alpha": alpha}})
            }
        };
        write_string(out, report.to_string())
    })
}
