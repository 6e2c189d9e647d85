//! C ABI over the `semicomm` library.
//!
//! Matrices cross the boundary as opaque `SemicommMatrix` handles owned by
//! the caller and released with `semicomm_matrix_free`. Strings returned
//! through `char **` out-parameters are heap allocated by this library and
//! released with `semicomm_string_free`. Every function returns a
//! `SemicommStatus`; on failure `semicomm_last_error_message` describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use semicomm::algebra::algebra_dim;
use semicomm::constructions::{
    catalan_idempotent_pair, gerstenhaber_witness, idempotent_pair_3x3, idempotent_pair_7x7,
    random_semicommuting_pair, Family,
};
use semicomm::io::{matrix_from_value, matrix_to_value, parse_json};
use semicomm::order::{commutator_sign, is_ideal_irreducible, refined_bound, SignClass};
use semicomm::verifier::{check, Instance, Outcome, TheoremId};
use semicomm::{Error, Matrix, Rational};

/// Result code of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemicommStatus {
    Ok = 0,
    NullPointer = 1,
    Shape = 2,
    Domain = 3,
    Parse = 4,
    Usage = 5,
    Generation = 6,
    Io = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemicommSignClass {
    Positive = 0,
    Negative = 1,
    Zero = 2,
    Mixed = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemicommOutcome {
    Holds = 0,
    NotApplicable = 1,
    Violated = 2,
}

/// Opaque exact rational matrix.
pub struct SemicommMatrix(Matrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SemicommStatus {
    match e {
        Error::Shape(_) => SemicommStatus::Shape,
        Error::Domain(_) => SemicommStatus::Domain,
        Error::Parse(_) => SemicommStatus::Parse,
        Error::Usage(_) => SemicommStatus::Usage,
        Error::Generation(_) => SemicommStatus::Generation,
        Error::Io(_) => SemicommStatus::Io,
    }
}

/// Internal failure carrying a status code and message.
struct Failure(SemicommStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SemicommStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SemicommStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            SemicommStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SemicommStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SemicommStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn matrix_arg<'a>(p: *const SemicommMatrix, what: &str) -> Result<&'a Matrix, Failure> {
    p.as_ref().map(|m| &m.0).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn require_out<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        Err(null(what))
    } else {
        Ok(())
    }
}

fn boxed(m: Matrix) -> *mut SemicommMatrix {
    Box::into_raw(Box::new(SemicommMatrix(m)))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON text has no interior NUL").into_raw()
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn semicomm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn semicomm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn semicomm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle obtained from this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn semicomm_matrix_free(m: *mut SemicommMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses a matrix from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_matrix_from_json(json: *const c_char, out: *mut *mut SemicommMatrix) -> SemicommStatus {
    guard(|| {
        require_out(out, "out")?;
        let text = str_arg(json, "json")?;
        let m = matrix_from_value(&parse_json(text)?, "$")?;
        write_out(out, boxed(m), "out")
    })
}

/// Builds a matrix from `rows * cols` integers in row-major order.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_matrix_from_ints(
    rows: usize,
    cols: usize,
    entries: *const i64,
    out: *mut *mut SemicommMatrix,
) -> SemicommStatus {
    guard(|| {
        require_out(out, "out")?;
        let len = rows.checked_mul(cols).ok_or_else(|| Failure(SemicommStatus::Shape, "size overflow".into()))?;
        if entries.is_null() && len > 0 {
            return Err(null("entries"));
        }
        let values = if len == 0 { &[][..] } else { std::slice::from_raw_parts(entries, len) };
        let m = Matrix::new(rows, cols, values.iter().map(|&v| Rational::from_int(v)).collect())?;
        write_out(out, boxed(m), "out")
    })
}

/// Serializes a matrix to JSON; free the result with `semicomm_string_free`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_matrix_to_json(m: *const SemicommMatrix, out: *mut *mut c_char) -> SemicommStatus {
    guard(|| {
        require_out(out, "out")?;
        let m = matrix_arg(m, "matrix")?;
        write_out(out, c_string(matrix_to_value(m).to_string()), "out")
    })
}

/// Row and column counts of a matrix.
///
/// # Safety
/// `m` must be a live handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_matrix_shape(
    m: *const SemicommMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> SemicommStatus {
    guard(|| {
        let m = matrix_arg(m, "matrix")?;
        write_out(rows, m.rows(), "rows")?;
        write_out(cols, m.cols(), "cols")
    })
}

/// Dimension of the unital algebra generated by `count` matrices.
///
/// # Safety
/// `generators` must point to `count` live handles (it may be null when
/// `count` is zero); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_algebra_dim(
    generators: *const *const SemicommMatrix,
    count: usize,
    out: *mut usize,
) -> SemicommStatus {
    guard(|| {
        if generators.is_null() && count > 0 {
            return Err(null("generators"));
        }
        let handles = if count == 0 { &[][..] } else { std::slice::from_raw_parts(generators, count) };
        let gens = handles
            .iter()
            .enumerate()
            .map(|(i, &h)| matrix_arg(h, &format!("generator {i}")).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        write_out(out, algebra_dim(&gens)?, "out")
    })
}

/// Sign class of the commutator `AB − BA`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_commutator_sign(
    a: *const SemicommMatrix,
    b: *const SemicommMatrix,
    out: *mut SemicommSignClass,
) -> SemicommStatus {
    guard(|| {
        let sign = commutator_sign(matrix_arg(a, "a")?, matrix_arg(b, "b")?)?;
        let c = match sign {
            SignClass::Positive => SemicommSignClass::Positive,
            SignClass::Negative => SemicommSignClass::Negative,
            SignClass::Zero => SemicommSignClass::Zero,
            SignClass::Mixed => SemicommSignClass::Mixed,
        };
        write_out(out, c, "out")
    })
}

/// Whether a positive square matrix is ideal-irreducible.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_is_ideal_irreducible(m: *const SemicommMatrix, out: *mut bool) -> SemicommStatus {
    guard(|| write_out(out, is_ideal_irreducible(matrix_arg(m, "matrix")?)?, "out"))
}

/// Dimension bound from the invariant-ideal chain of `A + B`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_refined_bound(
    a: *const SemicommMatrix,
    b: *const SemicommMatrix,
    out: *mut usize,
) -> SemicommStatus {
    guard(|| write_out(out, refined_bound(matrix_arg(a, "a")?, matrix_arg(b, "b")?)?, "out"))
}

/// Builds a named pair: `"gerstenhaber"` and `"catalan"` use `n`;
/// `"idem7"` and `"idem3"` ignore it; `"random:<family>"` uses `n` and `seed`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `a` and `b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_construct_pair(
    name: *const c_char,
    n: usize,
    seed: u64,
    a: *mut *mut SemicommMatrix,
    b: *mut *mut SemicommMatrix,
) -> SemicommStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        if a.is_null() || b.is_null() {
            return Err(null("output handle"));
        }
        let (x, y) = match name {
            "gerstenhaber" => gerstenhaber_witness(n)?,
            "catalan" => {
                let p = catalan_idempotent_pair(n)?;
                (p.e, p.f)
            }
            "idem7" => {
                let p = idempotent_pair_7x7();
                (p.e, p.f)
            }
            "idem3" => {
                let p = idempotent_pair_3x3();
                (p.e, p.f)
            }
            other => match other.strip_prefix("random:") {
                Some(family) => random_semicommuting_pair(n, family.parse::<Family>()?, seed)?,
                None => return Err(Error::Usage(format!("unknown construction {other:?}")).into()),
            },
        };
        write_out(a, boxed(x), "a")?;
        write_out(b, boxed(y), "b")
    })
}

/// Checks one theorem predicate on an instance given as JSON. When
/// `report_json` is non-null it receives the full report, to be released
/// with `semicomm_string_free`.
///
/// # Safety
/// `theorem` and `instance_json` must be NUL-terminated strings; `outcome`
/// must be writable; `report_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn semicomm_verify(
    theorem: *const c_char,
    instance_json: *const c_char,
    outcome: *mut SemicommOutcome,
    report_json: *mut *mut c_char,
) -> SemicommStatus {
    guard(|| {
        let id: TheoremId = str_arg(theorem, "theorem")?.parse()?;
        let instance = Instance::from_value(&parse_json(str_arg(instance_json, "instance_json")?)?)?;
        let report = check(id, &instance)?;
        let o = match report.outcome {
            Outcome::Holds => SemicommOutcome::Holds,
            Outcome::NotApplicable => SemicommOutcome::NotApplicable,
            Outcome::Violated => SemicommOutcome::Violated,
        };
        write_out(outcome, o, "outcome")?;
        if !report_json.is_null() {
            let text = serde_json::to_string(&report).expect("reports serialize");
            report_json.write(c_string(text));
        }
        Ok(())
    })
}
