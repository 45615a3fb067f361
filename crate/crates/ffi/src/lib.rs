//! C ABI over the `pommiez` library.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PzStatus`]; on failure the message is kept per thread and can be read
//! with [`pz_last_error_message`]. Output pointers are written only on
//! success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pommiez::cli::parse_expr;
use pommiez::cyclicity::{classify, ClassifyOptions};
use pommiez::duality::duhamel;
use pommiez::funcspace::ExpPoly;
use pommiez::leontiev::omega;
use pommiez::operators::{pommiez_exact_on_line, OperatorContext};
use pommiez::scalar::BigComplex;
use pommiez::Error;

/// Exponential-polynomial with Gaussian-rational coefficients.
pub struct PzExpPoly(ExpPoly);

/// Operator context built from `g0`.
pub struct PzContext(OperatorContext);

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PzStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    SyntaxError = 3,
    NonlinearExponent = 4,
    InvalidG0 = 5,
    ExponentMismatch = 6,
    NotExact = 7,
    PreconditionViolated = 8,
    ZeroFunction = 9,
    DomainError = 10,
    Panic = 11,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> PzStatus {
    let status = match e {
        Error::Syntax { .. } => PzStatus::SyntaxError,
        Error::NonlinearExponent(_) => PzStatus::NonlinearExponent,
        Error::InvalidG0(_) => PzStatus::InvalidG0,
        Error::ExponentMismatch { .. } => PzStatus::ExponentMismatch,
        Error::NotExact(_) => PzStatus::NotExact,
        Error::PreconditionViolated(_) => PzStatus::PreconditionViolated,
        Error::ZeroFunction(_) => PzStatus::ZeroFunction,
        _ => PzStatus::DomainError,
    };
    set_error(format!("{}: {e}", e.kind()));
    status
}

fn guard(body: impl FnOnce() -> Result<(), PzStatus>) -> PzStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PzStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            PzStatus::Panic
        }
    }
}

fn null(what: &str) -> PzStatus {
    set_error(format!("null pointer for {what}"));
    PzStatus::NullArgument
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, PzStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn as_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, PzStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        PzStatus::InvalidUtf8
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), PzStatus> {
    if out.is_null() {
        return Err(null("output"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), PzStatus> {
    if out.is_null() {
        return Err(null("output"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse an expression such as `(1+2*z)*exp(3*z) + z^2`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pz_exppoly_parse(text: *const c_char, out: *mut *mut PzExpPoly) -> PzStatus {
    guard(|| {
        let e = parse_expr(as_str(text, "text")?).map_err(fail)?;
        put(out, PzExpPoly(e))
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pz_exppoly_free(p: *mut PzExpPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical re-parseable rendering; release with [`pz_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_exppoly_to_string(p: *const PzExpPoly, out: *mut *mut c_char) -> PzStatus {
    guard(|| put_string(out, as_ref(p, "exppoly")?.0.to_string()))
}

/// # Safety
/// `s` must come from this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_exppoly_derivative(p: *const PzExpPoly, out: *mut *mut PzExpPoly) -> PzStatus {
    guard(|| put(out, PzExpPoly(as_ref(p, "exppoly")?.0.derivative())))
}

/// Value at `re + i·im`, computed with `prec` bits and rounded to doubles.
///
/// # Safety
/// `p` must be a live handle; `out_re` and `out_im` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_exppoly_eval(
    p: *const PzExpPoly,
    re: f64,
    im: f64,
    prec: u32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PzStatus {
    guard(|| {
        let f = as_ref(p, "exppoly")?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("output"));
        }
        let prec = prec.max(pommiez::scalar::MIN_PRECISION);
        let (a, b) = f.0.to_big(prec).eval_big(&BigComplex::from_f64(re, im, prec)).to_f64();
        *out_re = a;
        *out_im = b;
        Ok(())
    })
}

/// Context for `g0`; fails with `INVALID_G0` unless `g0(0) = 1`.
///
/// # Safety
/// `g0` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_context_new(g0: *const PzExpPoly, out: *mut *mut PzContext) -> PzStatus {
    guard(|| {
        let ctx = OperatorContext::new(as_ref(g0, "g0")?.0.clone()).map_err(fail)?;
        put(out, PzContext(ctx))
    })
}

/// # Safety
/// `ctx` must come from this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pz_context_free(ctx: *mut PzContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Closed form of `D f` when `g0` and `f` share one exponent.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_pommiez_exact_on_line(
    ctx: *const PzContext,
    f: *const PzExpPoly,
    out: *mut *mut PzExpPoly,
) -> PzStatus {
    guard(|| {
        let r = pommiez_exact_on_line(&as_ref(ctx, "context")?.0, &as_ref(f, "f")?.0).map_err(fail)?;
        put(out, PzExpPoly(r))
    })
}

/// Cyclicity verdict as a JSON document; release with [`pz_string_free`].
/// A non-positive `search_radius` selects the default.
///
/// # Safety
/// Handles must be live and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_classify_json(
    g0: *const PzExpPoly,
    f: *const PzExpPoly,
    search_radius: f64,
    out_json: *mut *mut c_char,
) -> PzStatus {
    guard(|| {
        let mut opts = ClassifyOptions::default();
        if search_radius > 0.0 {
            opts.search_radius = search_radius;
        }
        let v = classify(&as_ref(f, "f")?.0, &as_ref(g0, "g0")?.0, &opts).map_err(fail)?;
        put_string(out_json, v.to_json().to_string())
    })
}

/// Duhamel product `v * w`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_duhamel(v: *const PzExpPoly, w: *const PzExpPoly, out: *mut *mut PzExpPoly) -> PzStatus {
    guard(|| put(out, PzExpPoly(duhamel(&as_ref(v, "v")?.0, &as_ref(w, "w")?.0))))
}

/// `ω_f(z, x)` at `z = re + i·im` with `prec` bits.
///
/// # Safety
/// Handles must be live; `out_re` and `out_im` writable.
#[no_mangle]
pub unsafe extern "C" fn pz_omega(
    f: *const PzExpPoly,
    x: *const PzExpPoly,
    re: f64,
    im: f64,
    prec: u32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PzStatus {
    guard(|| {
        let (f, x) = (as_ref(f, "f")?, as_ref(x, "x")?);
        if out_re.is_null() || out_im.is_null() {
            return Err(null("output"));
        }
        let prec = prec.max(pommiez::scalar::MIN_PRECISION);
        let v = omega(&f.0, &x.0, &BigComplex::from_f64(re, im, prec)).map_err(fail)?;
        let (a, b) = v.to_f64();
        *out_re = a;
        *out_im = b;
        Ok(())
    })
}
