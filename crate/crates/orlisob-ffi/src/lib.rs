//! C ABI for the embedding toolkit. Young functions travel as JSON
//! strings and live behind opaque handles; numeric results come back
//! through out-parameters; every function returns an error code. The
//! matching declarations are in `include/orlisob.h`.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CStr, CString};
use std::ptr;

use orlisob::error::Error;
use orlisob::regime::classify_growth;
use orlisob::seminorm::{fractional_seminorm, gagliardo_modular, ModularConfig};
use orlisob::space::SpaceParams;
use orlisob::targets::{orlicz_lorentz_target, orlicz_target};
use orlisob::functions::{luxemburg_norm, Domain, SampledFunction};
use orlisob::young::YoungFunction;

/// Error codes returned by every fallible entry point.
pub const ORLISOB_OK: c_int = 0;
pub const ORLISOB_ERR_NULL_ARGUMENT: c_int = 1;
pub const ORLISOB_ERR_INVALID_UTF8: c_int = 2;
pub const ORLISOB_ERR_DOMAIN: c_int = 3;
pub const ORLISOB_ERR_PRECONDITION: c_int = 4;
pub const ORLISOB_ERR_INVALID_YOUNG: c_int = 5;
pub const ORLISOB_ERR_CLASSIFICATION: c_int = 6;
pub const ORLISOB_ERR_OTHER: c_int = 7;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_for(e: &Error) -> c_int {
    match e {
        Error::Domain(_) => ORLISOB_ERR_DOMAIN,
        Error::Precondition(_) => ORLISOB_ERR_PRECONDITION,
        Error::InvalidYoung(_) => ORLISOB_ERR_INVALID_YOUNG,
        Error::Classification(_) | Error::Borderline(_) => ORLISOB_ERR_CLASSIFICATION,
        _ => ORLISOB_ERR_OTHER,
    }
}

fn fail(e: Error) -> c_int {
    let code = code_for(&e);
    set_error(e.to_string());
    code
}

/// Opaque handle to a Young function.
pub struct OrlisobYoung(YoungFunction);

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, c_int> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(ORLISOB_ERR_NULL_ARGUMENT);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        ORLISOB_ERR_INVALID_UTF8
    })
}

fn young_ref<'a>(h: *const OrlisobYoung) -> Result<&'a YoungFunction, c_int> {
    if h.is_null() {
        set_error("null Young-function handle".into());
        return Err(ORLISOB_ERR_NULL_ARGUMENT);
    }
    Ok(unsafe { &(*h).0 })
}

fn space(n: u32, s: c_double) -> Result<SpaceParams, c_int> {
    SpaceParams::new(n, s).map_err(|e| fail(e))
}

/// Returns the message for the most recent error on this thread, or NULL.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn orlisob_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.as_ptr(),
        None => ptr::null(),
    })
}

/// Parses a Young function from JSON. On success writes a handle the
/// caller must free with `orlisob_young_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_young_parse_json(
    json: *const c_char,
    out: *mut *mut OrlisobYoung,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(c) => return c,
    };
    match YoungFunction::from_json(text) {
        Ok(y) => {
            *out = Box::into_raw(Box::new(OrlisobYoung(y)));
            ORLISOB_OK
        }
        Err(e) => fail(e),
    }
}

/// Frees a Young-function handle. NULL is ignored.
///
/// # Safety
/// `h` must be a handle from this library that was not freed before.
#[no_mangle]
pub unsafe extern "C" fn orlisob_young_free(h: *mut OrlisobYoung) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Serializes a Young function back to JSON. The returned string must be
/// released with `orlisob_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_young_to_json(
    h: *const OrlisobYoung,
    out: *mut *mut c_char,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    match CString::new(y.to_json()) {
        Ok(c) => {
            *out = c.into_raw();
            ORLISOB_OK
        }
        Err(_) => {
            set_error("serialized JSON contained a NUL byte".into());
            ORLISOB_ERR_OTHER
        }
    }
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must originate from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn orlisob_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluates A(t). Infinite values are reported as +inf.
///
/// # Safety
/// `h` must be a live handle; `out` valid for a double write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_young_eval(
    h: *const OrlisobYoung,
    t: c_double,
    out: *mut c_double,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    match y.eval(t) {
        Ok(v) => {
            *out = if v.is_finite() { v.value() } else { f64::INFINITY };
            ORLISOB_OK
        }
        Err(e) => fail(e),
    }
}

/// Computes the convex conjugate, returning a new handle.
///
/// # Safety
/// `h` must be a live handle; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_young_conjugate(
    h: *const OrlisobYoung,
    out: *mut *mut OrlisobYoung,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    match y.conjugate() {
        Ok(c) => {
            *out = Box::into_raw(Box::new(OrlisobYoung(c)));
            ORLISOB_OK
        }
        Err(e) => fail(e),
    }
}

/// Growth classification: writes the regime report as JSON (release with
/// `orlisob_string_free`).
///
/// # Safety
/// `h` must be a live handle; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_classify(
    h: *const OrlisobYoung,
    n: u32,
    s: c_double,
    out: *mut *mut c_char,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    let p = match space(n, s) {
        Ok(p) => p,
        Err(c) => return c,
    };
    match classify_growth(y, &p) {
        Ok(r) => match serde_json::to_string_pretty(&r) {
            Ok(text) => match CString::new(text) {
                Ok(c) => {
                    *out = c.into_raw();
                    ORLISOB_OK
                }
                Err(_) => {
                    set_error("serialized JSON contained a NUL byte".into());
                    ORLISOB_ERR_OTHER
                }
            },
            Err(e) => {
                set_error(e.to_string());
                ORLISOB_ERR_OTHER
            }
        },
        Err(e) => fail(e),
    }
}

/// Builds the optimal Orlicz target A_{n/s} as a new handle.
///
/// # Safety
/// `h` must be a live handle; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_target_orlicz(
    h: *const OrlisobYoung,
    n: u32,
    s: c_double,
    out: *mut *mut OrlisobYoung,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    let p = match space(n, s) {
        Ok(p) => p,
        Err(c) => return c,
    };
    match orlicz_target(y, &p) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(OrlisobYoung(t)));
            ORLISOB_OK
        }
        Err(e) => fail(e),
    }
}

/// Builds the rearrangement-invariant target building block Â as a new
/// handle.
///
/// # Safety
/// `h` must be a live handle; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_target_ri(
    h: *const OrlisobYoung,
    n: u32,
    s: c_double,
    out: *mut *mut OrlisobYoung,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    let p = match space(n, s) {
        Ok(p) => p,
        Err(c) => return c,
    };
    match orlicz_lorentz_target(y, &p) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(OrlisobYoung(t)));
            ORLISOB_OK
        }
        Err(e) => fail(e),
    }
}

unsafe fn build_samples(
    xs: *const c_double,
    m_edges: usize,
    vs: *const c_double,
) -> Result<SampledFunction, c_int> {
    if xs.is_null() || vs.is_null() || m_edges < 2 {
        set_error("samples need at least two edges and non-null arrays".into());
        return Err(ORLISOB_ERR_NULL_ARGUMENT);
    }
    let edges = std::slice::from_raw_parts(xs, m_edges).to_vec();
    let values = std::slice::from_raw_parts(vs, m_edges - 1).to_vec();
    SampledFunction::new(Domain::Grid1D, edges, values).map_err(|e| fail(e))
}

/// Luxemburg norm of a piecewise-constant sample: `xs` holds `m_edges`
/// cell edges, `vs` the `m_edges - 1` cell values. Infinite norms are
/// reported as +inf.
///
/// # Safety
/// `h` must be a live handle; array pointers must cover the stated
/// lengths; `out` valid for a double write.
#[no_mangle]
pub unsafe extern "C" fn orlisob_luxemburg_norm(
    h: *const OrlisobYoung,
    xs: *const c_double,
    m_edges: usize,
    vs: *const c_double,
    out: *mut c_double,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    let u = match build_samples(xs, m_edges, vs) {
        Ok(u) => u,
        Err(c) => return c,
    };
    let v = luxemburg_norm(y, &u);
    *out = if v.is_finite() { v.value() } else { f64::INFINITY };
    ORLISOB_OK
}

/// Gagliardo modular at unit scale and the fractional seminorm of a
/// piecewise-constant sample (layout as in `orlisob_luxemburg_norm`).
///
/// # Safety
/// Same contracts as `orlisob_luxemburg_norm`; both out-pointers must be
/// valid for double writes.
#[no_mangle]
pub unsafe extern "C" fn orlisob_seminorm(
    h: *const OrlisobYoung,
    n: u32,
    s: c_double,
    xs: *const c_double,
    m_edges: usize,
    vs: *const c_double,
    out_modular: *mut c_double,
    out_seminorm: *mut c_double,
) -> c_int {
    if out_modular.is_null() || out_seminorm.is_null() {
        set_error("null output pointer".into());
        return ORLISOB_ERR_NULL_ARGUMENT;
    }
    let y = match young_ref(h) {
        Ok(y) => y,
        Err(c) => return c,
    };
    let p = match space(n, s) {
        Ok(p) => p,
        Err(c) => return c,
    };
    let u = match build_samples(xs, m_edges, vs) {
        Ok(u) => u,
        Err(c) => return c,
    };
    let cfg = ModularConfig::default();
    let modular = match gagliardo_modular(&u, p.frac_part(), y, 1.0, &cfg) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let seminorm = match fractional_seminorm(&u, &p, y, &cfg) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    *out_modular = if modular.is_finite() { modular.value() } else { f64::INFINITY };
    *out_seminorm = if seminorm.is_finite() { seminorm.value() } else { f64::INFINITY };
    ORLISOB_OK
}
