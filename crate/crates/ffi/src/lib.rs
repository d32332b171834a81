//! C ABI for qflag. Every function returns a [`QflagStatus`]; on failure the
//! message is available from [`qflag_last_error`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`qflag_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use qflag::canonical::DualCanonical;
use qflag::error::Error;
use qflag::pbw::PbwBasis;
use qflag::qea::Uq;
use qflag::rootdata::{CartanDatum, ReducedWord};

/// Result codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QflagStatus {
    Ok = 0,
    /// A check ran and reported violations.
    Violations = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    InvalidArgument = 4,
    Syntax = 5,
    DivisionByZero = 6,
    OutOfRange = 7,
    NotReduced = 8,
    /// An algebraic precondition failed, e.g. a result outside `U_q(n)`.
    Algebra = 9,
    Panic = 10,
}

/// A dual canonical basis for one reduced word of `w_0`, with its caches.
pub struct QflagBasis {
    inner: Arc<DualCanonical>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(QflagStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidArgument(_) | Error::DatumMismatch | Error::NotASink(_) => QflagStatus::InvalidArgument,
            Error::Syntax { .. } | Error::UnknownAtom { .. } | Error::NonIntegerExponent(_) => QflagStatus::Syntax,
            Error::DivisionByZero | Error::PoleAtZero => QflagStatus::DivisionByZero,
            Error::IndexOutOfRange(_) => QflagStatus::OutOfRange,
            Error::NotReduced(_) => QflagStatus::NotReduced,
            _ => QflagStatus::Algebra,
        };
        Failure(code, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<QflagStatus, Failure>) -> QflagStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            set_error("");
            s
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            set_error(&format!("panic: {}", msg.unwrap_or_default()));
            QflagStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(QflagStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(QflagStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null())
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn basis_ref<'a>(b: *const QflagBasis) -> Result<&'a DualCanonical, Failure> {
    b.as_ref().map(|b| &*b.inner).ok_or_else(null)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(QflagStatus::Algebra, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// The message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn qflag_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qflag_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the basis for Cartan type `label` (e.g. "A3") and a reduced word of
/// `w_0` given as `word_len` letters. With `word_len == 0` the default longest
/// word is used.
///
/// # Safety
/// `label` must be a NUL-terminated string, `word` must point to `word_len`
/// values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflag_basis_new(
    label: *const c_char,
    word: *const usize,
    word_len: usize,
    out: *mut *mut QflagBasis,
) -> QflagStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let d = CartanDatum::from_label(text(label)?)?;
        let w = slice(word, word_len)?;
        let w = if w.is_empty() { d.longest_word() } else { ReducedWord::new(&d, w.to_vec())? };
        if !w.is_longest(&d) {
            return Err(Failure(QflagStatus::InvalidArgument, format!("{w} is not a reduced word of w_0")));
        }
        let pbw = PbwBasis::new(Arc::new(Uq::new(d)), w)?;
        *out = Box::into_raw(Box::new(QflagBasis { inner: Arc::new(DualCanonical::new(Arc::new(pbw))) }));
        Ok(QflagStatus::Ok)
    })
}

/// Releases a basis. Null is ignored.
///
/// # Safety
/// `b` must come from [`qflag_basis_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qflag_basis_free(b: *mut QflagBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Writes the rank and the word length `N` (the number of positive roots).
///
/// # Safety
/// `b` must be a live basis; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflag_basis_dims(b: *const QflagBasis, rank: *mut usize, length: *mut usize) -> QflagStatus {
    guard(|| {
        let b = basis_ref(b)?;
        if rank.is_null() || length.is_null() {
            return Err(null());
        }
        *rank = b.uq().rank();
        *length = b.pbw().word().len();
        Ok(QflagStatus::Ok)
    })
}

/// Writes the PBW datum `n_k` of the `k`-th flag minor, `1 <= k <= N`, into
/// `datum`, which must hold `N` entries.
///
/// # Safety
/// `b` must be a live basis and `datum` must point to `N` writable values.
#[no_mangle]
pub unsafe extern "C" fn qflag_basis_flag_minor(b: *const QflagBasis, k: usize, datum: *mut i64) -> QflagStatus {
    guard(|| {
        let b = basis_ref(b)?;
        if datum.is_null() {
            return Err(null());
        }
        let (n, _) = b.flag_minor(k)?;
        std::slice::from_raw_parts_mut(datum, n.len()).copy_from_slice(&n);
        Ok(QflagStatus::Ok)
    })
}

/// Renders the dual canonical element `B(m)*` as an expression in the `E_i`.
///
/// # Safety
/// `b` must be a live basis, `datum` must point to `len` values and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qflag_basis_element(
    b: *const QflagBasis,
    datum: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> QflagStatus {
    guard(|| {
        let b = basis_ref(b)?;
        if out.is_null() {
            return Err(null());
        }
        let m = slice(datum, len)?;
        if m.len() != b.pbw().word().len() || m.iter().any(|&x| x < 0) {
            return Err(Failure(QflagStatus::InvalidArgument, "datum must have N non-negative entries".into()));
        }
        put_string(out, b.element_expr(m)?.render('E'))?;
        Ok(QflagStatus::Ok)
    })
}

/// Expands an expression such as "E1*E2 - q^-1*E2*E1" in the PBW basis, or the
/// dual PBW basis when `dual` is set, as a JSON object mapping data to
/// coefficients.
///
/// # Safety
/// `b` must be a live basis, `expr` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qflag_basis_coordinates(
    b: *const QflagBasis,
    expr: *const c_char,
    dual: bool,
    out: *mut *mut c_char,
) -> QflagStatus {
    guard(|| {
        let b = basis_ref(b)?;
        if out.is_null() {
            return Err(null());
        }
        let x = qflag::cli::parse_expr(b.uq().datum(), text(expr)?)?;
        let e = if dual { b.pbw().dual_pbw_coordinates(&x)? } else { b.pbw().pbw_coordinates(&x)? };
        let map: serde_json::Map<String, serde_json::Value> = e
            .iter()
            .map(|(m, c)| (serde_json::to_string(m).expect("serializable"), c.to_string().into()))
            .collect();
        put_string(out, serde_json::Value::Object(map).to_string())?;
        Ok(QflagStatus::Ok)
    })
}

/// Runs a command-line invocation in memory, e.g. `{"check", "prop41", "--type",
/// "A2", "--orientation", "2>1"}`, and returns its rendered output. Returns
/// `Violations` when a check found violations; the output is written either way.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflag_run(argv: *const *const c_char, argc: usize, out: *mut *mut c_char) -> QflagStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let args = slice(argv, argc)?.iter().map(|&a| text(a)).collect::<Result<Vec<_>, _>>()?;
        let (s, violations) = qflag::cli::run_to_string(args)?;
        put_string(out, s)?;
        Ok(if violations { QflagStatus::Violations } else { QflagStatus::Ok })
    })
}
