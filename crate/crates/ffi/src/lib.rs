//! C ABI over `hypercore`.
//!
//! Conventions:
//! - every fallible function returns an [`HcStatus`]; results go through out-pointers;
//! - on error, [`hc_last_error_code`] and [`hc_last_error_message`] describe it (per thread);
//! - strings returned through out-pointers are owned by the caller and released with [`hc_string_free`];
//! - handles are released with their matching `_free` function; passing NULL to a `_free` function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypercore::bases::{Basis, BasisKind};
use hypercore::classify::{self, Verdict};
use hypercore::decompose::decompose;
use hypercore::laguerre::sweep_identity;
use hypercore::peetre::{apply_op, compose_ops, peetre_expand, DiffOp};
use hypercore::rational::parse_rational;
use hypercore::{Error, Poly, SeqSpec};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    /// The call succeeded and the verdict it computed is FAIL.
    VerdictFail = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    SeqSpec = 10,
    PolyParse = 11,
    RationalParse = 12,
    OrderOverflow = 13,
    NonPolynomial = 14,
    ZeroPolynomial = 15,
    InvalidArgument = 16,
    UnsupportedBasis = 17,
    SequenceValue = 18,
    Corpus = 19,
    UnknownExample = 20,
    Json = 21,
    Panic = 99,
}

/// Opaque sequence specification.
pub struct HcSeqSpec(SeqSpec);

/// Opaque differential operator.
pub struct HcDiffOp(DiffOp);

struct LastError {
    code: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(code: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = Some(LastError {
            code: clean(code),
            message: clean(message),
        })
    });
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::SeqSpec { .. } => HcStatus::SeqSpec,
        Error::PolyParse { .. } => HcStatus::PolyParse,
        Error::RationalParse(_) => HcStatus::RationalParse,
        Error::OrderOverflow(_) => HcStatus::OrderOverflow,
        Error::NonPolynomial(_) => HcStatus::NonPolynomial,
        Error::ZeroPolynomial => HcStatus::ZeroPolynomial,
        Error::InvalidArgument(_) => HcStatus::InvalidArgument,
        Error::UnsupportedBasis(_) => HcStatus::UnsupportedBasis,
        Error::SequenceValue(_) => HcStatus::SequenceValue,
        Error::NonHyperbolicCorpus { .. } => HcStatus::Corpus,
        Error::UnknownExample(_) => HcStatus::UnknownExample,
        Error::Json(_) => HcStatus::Json,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(Error::from(e))
    }
}

fn guard(f: impl FnOnce() -> Result<HcStatus, Failure>) -> HcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.code(), &e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error("E_NULL_POINTER", &format!("`{what}` is NULL"));
            HcStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error("E_UTF8", &format!("`{what}` is not valid UTF-8"));
            HcStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("E_PANIC", "internal error");
            HcStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn opt_text<'a>(p: *const c_char, what: &'static str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::Lib(Error::InvalidArgument(e.to_string())))?;
    put(out, c.into_raw(), "out")
}

fn verdict_status(v: &Verdict) -> HcStatus {
    if v.is_fail() {
        HcStatus::VerdictFail
    } else {
        HcStatus::Ok
    }
}

/// Diagnostic code of the last failed call on this thread (`E_SEQSPEC`, ...), or NULL.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error_code() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.code.as_ptr()))
}

/// Human-readable message of the last failed call on this thread, or NULL.
#[no_mangle]
pub extern "C" fn hc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.message.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a sequence spec such as `poly:n^2+n+1`, `altpoly:n`, `geom:1/2`,
/// `list:2,3,4` or `pow:5/2@1e12`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_seqspec_parse(spec: *const c_char, out: *mut *mut HcSeqSpec) -> HcStatus {
    guard(|| {
        let s: SeqSpec = text(spec, "spec")?.parse()?;
        put(out, Box::into_raw(Box::new(HcSeqSpec(s))), "out")?;
        Ok(HcStatus::Ok)
    })
}

/// Writes `gamma_n` as a canonical rational string.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_seqspec_eval(s: *const HcSeqSpec, n: usize, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let v = handle(s, "seq")?.0.eval(n)?;
        put_string(out, hypercore::rational::to_canonical(&v))?;
        Ok(HcStatus::Ok)
    })
}

/// # Safety
/// `s` must be NULL or a handle from [`hc_seqspec_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_seqspec_free(s: *mut HcSeqSpec) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Reads an operator from its JSON encoding `{"order": K, "terms": {...}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_diffop_from_json(json: *const c_char, out: *mut *mut HcDiffOp) -> HcStatus {
    guard(|| {
        let op: DiffOp = serde_json::from_str(text(json, "json")?)?;
        put(out, Box::into_raw(Box::new(HcDiffOp(op))), "out")?;
        Ok(HcStatus::Ok)
    })
}

/// Writes the JSON encoding of an operator.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_diffop_to_json(op: *const HcDiffOp, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let json = serde_json::to_string(&handle(op, "op")?.0)?;
        put_string(out, json)?;
        Ok(HcStatus::Ok)
    })
}

/// Truncation order `K` of an operator, or 0 for NULL.
///
/// # Safety
/// `op` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_diffop_order(op: *const HcDiffOp) -> usize {
    op.as_ref().map_or(0, |o| o.0.order())
}

/// # Safety
/// `op` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_diffop_free(op: *mut HcDiffOp) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Peetre expansion of `T[B_n] = gamma_n B_n` to order `order`.
/// `basis` is `monomial`, `hermite`, `laguerre` or `legendre`; `shift` is NULL
/// or a rational string such as `-3` or `1/2`.
///
/// # Safety
/// String arguments must be NUL-terminated (or NULL for `shift`); `seq` must be
/// a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_peetre_expand(
    basis: *const c_char,
    shift: *const c_char,
    seq: *const HcSeqSpec,
    order: usize,
    out: *mut *mut HcDiffOp,
) -> HcStatus {
    guard(|| {
        let kind: BasisKind = text(basis, "basis")?.parse()?;
        let b = match opt_text(shift, "shift")? {
            Some(t) => Basis::shifted(kind, parse_rational(t)?),
            None => Basis::new(kind),
        };
        let op = peetre_expand(&b, &handle(seq, "seq")?.0, order)?;
        put(out, Box::into_raw(Box::new(HcDiffOp(op))), "out")?;
        Ok(HcStatus::Ok)
    })
}

/// `a ∘ b`, truncated to the smaller order.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_compose(a: *const HcDiffOp, b: *const HcDiffOp, out: *mut *mut HcDiffOp) -> HcStatus {
    guard(|| {
        let op = compose_ops(&handle(a, "a")?.0, &handle(b, "b")?.0);
        put(out, Box::into_raw(Box::new(HcDiffOp(op))), "out")?;
        Ok(HcStatus::Ok)
    })
}

/// Applies `op` to a polynomial given as text (`"x^2 - 1"`) and writes the
/// image in the same notation.
///
/// # Safety
/// `op` must be a live handle; `poly` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_apply(op: *const HcDiffOp, poly: *const c_char, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let p = Poly::parse(text(poly, "poly")?, 'x')?;
        let image = apply_op(&handle(op, "op")?.0, &p)?;
        put_string(out, image.to_string())?;
        Ok(HcStatus::Ok)
    })
}

/// Writes the `T_n` decomposition of `op` as JSON `{"order": K, "entries": {"n": [...]}}`.
///
/// # Safety
/// `op` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_decompose_json(op: *const HcDiffOp, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let d = decompose(&handle(op, "op")?.0);
        put_string(out, serde_json::to_string(&d)?)?;
        Ok(HcStatus::Ok)
    })
}

/// Classifies a sequence. `kind` is `classical`, `hermite` or `laguerre`;
/// `order` is ignored for `laguerre`. Writes the verdict as JSON and returns
/// [`HcStatus::VerdictFail`] when the verdict is FAIL.
///
/// # Safety
/// `kind` NUL-terminated; `seq` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_classify(
    kind: *const c_char,
    seq: *const HcSeqSpec,
    order: usize,
    out: *mut *mut c_char,
) -> HcStatus {
    guard(|| {
        let s = &handle(seq, "seq")?.0;
        let v = match text(kind, "kind")? {
            "classical" => classify::classical_ms_check(s, order)?,
            "hermite" => classify::hermite_ms_check(s, order)?,
            "laguerre" => classify::laguerre_ms_check(s)?,
            other => return Err(Error::InvalidArgument(format!("unknown classification `{other}`")).into()),
        };
        put_string(out, serde_json::to_string(&v)?)?;
        Ok(verdict_status(&v))
    })
}

/// Hyperbolicity test for `Q2 D^2 + Q1 D + Q0` with polynomial arguments as
/// text. Writes the verdict as JSON and returns [`HcStatus::VerdictFail`] on FAIL.
///
/// # Safety
/// Polynomial arguments NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_quad_check(
    q2: *const c_char,
    q1: *const c_char,
    q0: *const c_char,
    out: *mut *mut c_char,
) -> HcStatus {
    guard(|| {
        let q2 = Poly::parse(text(q2, "q2")?, 'x')?;
        let q1 = Poly::parse(text(q1, "q1")?, 'x')?;
        let q0 = Poly::parse(text(q0, "q0")?, 'x')?;
        let v = classify::quad_op_hp_check(&q2, &q1, &q0)?;
        put_string(out, serde_json::to_string(&v)?)?;
        Ok(verdict_status(&v))
    })
}

/// Searches the standard corpus for a hyperbolic input whose image under `op`
/// is not hyperbolic. Writes the verdict as JSON.
///
/// # Safety
/// `op` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_falsify(op: *const HcDiffOp, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let v = classify::hp_falsify(&handle(op, "op")?.0, &classify::standard_corpus())?;
        put_string(out, serde_json::to_string(&v)?)?;
        Ok(verdict_status(&v))
    })
}

/// Sweeps a named identity (`horrible` or `vandermonde`) over `0..=max` in each
/// argument, writing the number of cases and of failures.
///
/// # Safety
/// `name` NUL-terminated; `cases` and `failures` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_identity_sweep(
    name: *const c_char,
    max: i64,
    cases: *mut usize,
    failures: *mut usize,
) -> HcStatus {
    guard(|| {
        let r = sweep_identity(text(name, "name")?, max)?;
        put(cases, r.cases, "cases")?;
        put(failures, r.failures.len(), "failures")?;
        Ok(HcStatus::Ok)
    })
}

/// Recomputes a worked example by id and writes its report as JSON; returns
/// [`HcStatus::VerdictFail`] if any check disagrees.
///
/// # Safety
/// `id` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_verify_example(id: *const c_char, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let r = hypercore::fixtures::verify_example(text(id, "id")?)?;
        put_string(out, serde_json::to_string(&r)?)?;
        Ok(if r.passed { HcStatus::Ok } else { HcStatus::VerdictFail })
    })
}
