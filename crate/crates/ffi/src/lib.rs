//! C ABI over `cyclomat`.
//!
//! Objects are opaque handles created by a `*_new` function and released with
//! the matching `*_free`. Every fallible call returns a [`CyclomatStatus`];
//! on failure a message is available from [`cyclomat_last_error_message`]
//! until the next failing call on the same thread.
//!
//! Array getters copy into a caller buffer of `len` elements and fail with
//! `BufferTooSmall` if it is short; query the size first.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclomat::gauss::{spectrum, SpectralData};
use cyclomat::trigmat::{
    build_matrix, explicit_inverse, is_invertible, ExplicitInverse, Kind, TrigMatrix,
};
use cyclomat::verify::{sweep, CheckKind, Summary, Tolerances};
use cyclomat::Error;

pub const CYCLOMAT_ABI_VERSION: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclomatStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad modulus, bad kind, or an empty range.
    InvalidArgument = 2,
    /// The requested matrix has no inverse.
    Singular = 3,
    BufferTooSmall = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Values accepted wherever a `kind` argument is taken.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclomatKind {
    Sine = 0,
    Cosine = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CyclomatSummary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// The sine or cosine matrix for one modulus.
pub struct CyclomatMatrix {
    inner: TrigMatrix,
}

/// An explicit inverse together with its exact coefficient tables.
pub struct CyclomatInverse {
    inner: ExplicitInverse,
}

/// Eigenvalues of a sine or cosine matrix, in character order.
pub struct CyclomatSpectrum {
    inner: SpectralData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: CyclomatStatus, msg: impl Into<String>) -> CyclomatStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> CyclomatStatus {
    let status = match e {
        Error::Singular { .. } | Error::SingularToPrecision { .. } => CyclomatStatus::Singular,
        Error::ZeroArgument
        | Error::ModulusTooSmall { .. }
        | Error::NotCoprime { .. }
        | Error::NotDivisor { .. }
        | Error::Hypothesis { .. }
        | Error::NotSquare { .. } => CyclomatStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> CyclomatStatus) -> CyclomatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let what = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(CyclomatStatus::Internal, format!("internal error: {what}"))
        }
    }
}

fn kind_of(kind: u32) -> Result<Kind, CyclomatStatus> {
    match kind {
        0 => Ok(Kind::Sine),
        1 => Ok(Kind::Cosine),
        other => Err(fail(
            CyclomatStatus::InvalidArgument,
            format!("unknown kind {other} (0 = sine, 1 = cosine)"),
        )),
    }
}

/// Boxes `value` and hands ownership to the caller through `out`.
unsafe fn emit<T>(out: *mut *mut T, value: T) -> CyclomatStatus {
    *out = Box::into_raw(Box::new(value));
    CyclomatStatus::Ok
}

unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, len: usize) -> CyclomatStatus {
    if buf.is_null() {
        return fail(CyclomatStatus::NullPointer, "output buffer is null");
    }
    if len < src.len() {
        return fail(
            CyclomatStatus::BufferTooSmall,
            format!("buffer holds {len} elements, need {}", src.len()),
        );
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    CyclomatStatus::Ok
}

macro_rules! deref {
    ($p:expr) => {
        match $p.as_ref() {
            Some(r) => r,
            None => return fail(CyclomatStatus::NullPointer, "null handle"),
        }
    };
}

/// Message for the last failure on this thread, or null if none. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn cyclomat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn cyclomat_abi_version() -> u32 {
    CYCLOMAT_ABI_VERSION
}

/// `*out` = whether the `kind` matrix for `n` is invertible.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_is_invertible(
    n: u64,
    kind: u32,
    out: *mut bool,
) -> CyclomatStatus {
    guard(|| {
        if out.is_null() {
            return fail(CyclomatStatus::NullPointer, "out is null");
        }
        let kind = match kind_of(kind) {
            Ok(k) => k,
            Err(s) => return s,
        };
        match is_invertible(n, kind) {
            Ok(b) => {
                *out = b;
                CyclomatStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_matrix_new(
    n: u64,
    kind: u32,
    out: *mut *mut CyclomatMatrix,
) -> CyclomatStatus {
    guard(|| {
        if out.is_null() {
            return fail(CyclomatStatus::NullPointer, "out is null");
        }
        let kind = match kind_of(kind) {
            Ok(k) => k,
            Err(s) => return s,
        };
        match build_matrix(n, kind) {
            Ok(m) => emit(out, CyclomatMatrix { inner: m }),
            Err(e) => from_error(e),
        }
    })
}

/// Side length of the matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_matrix_dim(m: *const CyclomatMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.dim())
}

/// Row-major entries, `dim * dim` doubles.
///
/// # Safety
/// `m` must be null or a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_matrix_values(
    m: *const CyclomatMatrix,
    buf: *mut f64,
    len: usize,
) -> CyclomatStatus {
    guard(|| {
        let m = deref!(m);
        copy_out(m.inner.values().as_slice(), buf, len)
    })
}

/// The symbolic tag of one entry: `value = sign · 2sin(2π·index/n)` (or cos).
///
/// # Safety
/// `m` must be null or a live handle; the out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_matrix_entry(
    m: *const CyclomatMatrix,
    row: usize,
    col: usize,
    sign: *mut i8,
    index: *mut u64,
    value: *mut f64,
) -> CyclomatStatus {
    guard(|| {
        let m = deref!(m);
        if sign.is_null() || index.is_null() || value.is_null() {
            return fail(CyclomatStatus::NullPointer, "output pointer is null");
        }
        let d = m.inner.dim();
        if row >= d || col >= d {
            return fail(
                CyclomatStatus::InvalidArgument,
                format!("({row}, {col}) outside a {d}x{d} matrix"),
            );
        }
        let e = m.inner.entry(row, col);
        *sign = e.sign.as_i64() as i8;
        *index = e.index;
        *value = e.value;
        CyclomatStatus::Ok
    })
}

/// The representatives `R` labelling rows and columns, `dim` values.
///
/// # Safety
/// `m` must be null or a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_matrix_representatives(
    m: *const CyclomatMatrix,
    buf: *mut u64,
    len: usize,
) -> CyclomatStatus {
    guard(|| {
        let m = deref!(m);
        copy_out(m.inner.representatives().members(), buf, len)
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_matrix_free(m: *mut CyclomatMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Fails with `Singular` when the matrix has no inverse; the message names
/// the offending square divisor.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_inverse_new(
    n: u64,
    kind: u32,
    out: *mut *mut CyclomatInverse,
) -> CyclomatStatus {
    guard(|| {
        if out.is_null() {
            return fail(CyclomatStatus::NullPointer, "out is null");
        }
        let kind = match kind_of(kind) {
            Ok(k) => k,
            Err(s) => return s,
        };
        match explicit_inverse(n, kind) {
            Ok(inv) => emit(out, CyclomatInverse { inner: inv }),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inv` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_inverse_dim(inv: *const CyclomatInverse) -> usize {
    inv.as_ref().map_or(0, |i| i.inner.dim())
}

/// Row-major entries of the inverse, `dim * dim` doubles.
///
/// # Safety
/// `inv` must be null or a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_inverse_values(
    inv: *const CyclomatInverse,
    buf: *mut f64,
    len: usize,
) -> CyclomatStatus {
    guard(|| {
        let inv = deref!(inv);
        copy_out(inv.inner.values().as_slice(), buf, len)
    })
}

/// Common denominator of the coefficient tables (equal to `n`), or 0 for a
/// null handle.
///
/// # Safety
/// `inv` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_inverse_denominator(inv: *const CyclomatInverse) -> u64 {
    inv.as_ref()
        .map_or(0, |i| i.inner.coefficients().denominator())
}

/// Integer numerators, `dim * dim` values: row `i` expands the hatted
/// element for the `i`-th representative over the plain ones.
///
/// # Safety
/// `inv` must be null or a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_inverse_numerators(
    inv: *const CyclomatInverse,
    buf: *mut i64,
    len: usize,
) -> CyclomatStatus {
    guard(|| {
        let inv = deref!(inv);
        let flat: Vec<i64> = inv.inner.coefficients().rows().concat();
        copy_out(&flat, buf, len)
    })
}

/// # Safety
/// `inv` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_inverse_free(inv: *mut CyclomatInverse) {
    if !inv.is_null() {
        drop(Box::from_raw(inv));
    }
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_spectrum_new(
    n: u64,
    kind: u32,
    out: *mut *mut CyclomatSpectrum,
) -> CyclomatStatus {
    guard(|| {
        if out.is_null() {
            return fail(CyclomatStatus::NullPointer, "out is null");
        }
        let kind = match kind_of(kind) {
            Ok(k) => k,
            Err(s) => return s,
        };
        match spectrum(n, kind) {
            Ok(s) => emit(out, CyclomatSpectrum { inner: s }),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_spectrum_len(s: *const CyclomatSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.inner.pairs.len())
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_spectrum_zero_count(s: *const CyclomatSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.inner.zero_count())
}

/// Real and imaginary parts into two buffers of `len` doubles each.
///
/// # Safety
/// `s` must be null or a live handle; `re` and `im` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_spectrum_eigenvalues(
    s: *const CyclomatSpectrum,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> CyclomatStatus {
    guard(|| {
        let s = deref!(s);
        let ev = s.inner.eigenvalues();
        let (a, b): (Vec<f64>, Vec<f64>) = ev.iter().map(|z| (z.re, z.im)).unzip();
        match copy_out(&a, re, len) {
            CyclomatStatus::Ok => copy_out(&b, im, len),
            other => other,
        }
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_spectrum_free(s: *mut CyclomatSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs every check with default tolerances for `n_min..=n_max`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_verify(
    n_min: u64,
    n_max: u64,
    out: *mut CyclomatSummary,
) -> CyclomatStatus {
    guard(|| {
        if out.is_null() {
            return fail(CyclomatStatus::NullPointer, "out is null");
        }
        if n_min > n_max {
            return fail(
                CyclomatStatus::InvalidArgument,
                format!("empty range {n_min}..={n_max}"),
            );
        }
        match sweep(n_min, n_max, &CheckKind::ALL, &Tolerances::default()) {
            Ok(reports) => {
                let s = Summary::of(&reports);
                *out = CyclomatSummary {
                    passed: s.passed,
                    failed: s.failed,
                    skipped: s.skipped,
                };
                CyclomatStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
