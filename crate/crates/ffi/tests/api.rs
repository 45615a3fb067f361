use std::ffi::{CStr, CString};
use std::ptr;

use pommiez_ffi::*;

fn parse(text: &str) -> *mut PzExpPoly {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pz_exppoly_parse(c.as_ptr(), &mut out) }, PzStatus::Ok);
    out
}

fn render(p: *const PzExpPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pz_exppoly_to_string(p, &mut s) }, PzStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pz_string_free(s) };
    text
}

fn last_error() -> String {
    let p = pz_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn parse_print_derive() {
    let f = parse("(1+2*z)*exp(3*z) + z^2");
    assert_eq!(render(f), "z^2 + (1 + 2*z)*exp(3*z)");
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { pz_exppoly_derivative(f, &mut d) }, PzStatus::Ok);
    assert_eq!(render(d), "2*z + (5 + 6*z)*exp(3*z)");
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { pz_exppoly_eval(f, 0.0, 0.0, 128, &mut re, &mut im) }, PzStatus::Ok);
    assert_eq!((re, im), (1.0, 0.0));
    unsafe {
        pz_exppoly_free(d);
        pz_exppoly_free(f);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("exp(z^2)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pz_exppoly_parse(bad.as_ptr(), &mut out) }, PzStatus::NonlinearExponent);
    assert!(out.is_null());
    assert!(last_error().starts_with("NonlinearExponent"));
    let bad = CString::new("1 + ").unwrap();
    assert_eq!(unsafe { pz_exppoly_parse(bad.as_ptr(), &mut out) }, PzStatus::SyntaxError);
    assert_eq!(unsafe { pz_exppoly_parse(ptr::null(), &mut out) }, PzStatus::NullArgument);
    let two = parse("2");
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { pz_context_new(two, &mut ctx) }, PzStatus::InvalidG0);
    assert!(ctx.is_null());
    unsafe {
        pz_exppoly_free(two);
        pz_exppoly_free(ptr::null_mut());
        pz_context_free(ptr::null_mut());
        pz_string_free(ptr::null_mut());
    }
}

#[test]
fn operators_through_handles() {
    let g0 = parse("exp(z)");
    let f = parse("z*exp(z)");
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { pz_context_new(g0, &mut ctx) }, PzStatus::Ok);
    let mut df = ptr::null_mut();
    assert_eq!(unsafe { pz_pommiez_exact_on_line(ctx, f, &mut df) }, PzStatus::Ok);
    assert_eq!(render(df), "exp(z)");
    let other = parse("exp(2*z)");
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { pz_pommiez_exact_on_line(ctx, other, &mut bad) }, PzStatus::ExponentMismatch);

    let (v, w) = (parse("exp(z)"), parse("exp(-z)"));
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pz_duhamel(v, w, &mut p) }, PzStatus::Ok);
    assert_eq!(render(p), "1/2*exp(-z) + 1/2*exp(z)");

    let one = parse("1");
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { pz_omega(v, one, 0.5, 0.0, 128, &mut re, &mut im) }, PzStatus::Ok);
    assert!((re - (0.5f64.exp() - 1.0) / 0.5).abs() < 1e-14 && im.abs() < 1e-14);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { pz_classify_json(one, v, 0.0, &mut json) }, PzStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["verdict"], "Cyclic");
    unsafe {
        pz_string_free(json);
        for h in [g0, f, df, other, v, w, p, one] {
            pz_exppoly_free(h);
        }
        pz_context_free(ctx);
    }
}

#[test]
fn error_message_is_per_thread() {
    let bad = CString::new("exp(z^2)").unwrap();
    let mut out = ptr::null_mut();
    unsafe { pz_exppoly_parse(bad.as_ptr(), &mut out) };
    std::thread::spawn(|| assert!(pz_last_error_message().is_null())).join().unwrap();
    assert!(!pz_last_error_message().is_null());
    assert_eq!(unsafe { CStr::from_ptr(pz_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
