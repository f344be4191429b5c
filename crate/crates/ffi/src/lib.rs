//! C ABI over `fwcone`.
//!
//! Every function returns an [`FwStatus`]. On failure a message is kept per thread and
//! can be read with [`fw_last_error_message`]. Matrices and certificates are opaque and
//! must be released with their `_free` function. Strings returned by the library are
//! released with [`fw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fwcone::dualcone::{dual_membership, DualCertificate};
use fwcone::factorwidth::{fw_membership, search_certificate, MembershipStatus, SolverOptions};
use fwcone::families::pna_threshold;
use fwcone::symcore::io::format_rational;
use fwcone::symcore::{min_eigenvalue, Scalar, SymMatrix};
use fwcone::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FwStatus {
    FwOk = 0,
    FwNullPointer = 1,
    FwInvalidArgument = 2,
    FwDimensionMismatch = 3,
    FwNotSymmetric = 4,
    FwNonConvergence = 5,
    FwInternal = 6,
    FwPanic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FwVerdict {
    FwMember = 0,
    FwNonMember = 1,
    FwInconclusive = 2,
}

/// Symmetric real matrix.
pub struct FwMatrix(SymMatrix<f64>);

/// Verified separating certificate `B` with `<B, A> < 0`.
pub struct FwCertificate(DualCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FwStatus {
    match e {
        Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } => FwStatus::FwDimensionMismatch,
        Error::Asymmetric { .. } => FwStatus::FwNotSymmetric,
        Error::NonConvergence { .. } => FwStatus::FwNonConvergence,
        Error::FixtureCorrupt(_) | Error::Io(_) | Error::Json(_) => FwStatus::FwInternal,
        _ => FwStatus::FwInvalidArgument,
    }
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), (FwStatus, String)>) -> FwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FwStatus::FwOk,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside fwcone".into());
            FwStatus::FwPanic
        }
    }
}

fn lib_err(e: Error) -> (FwStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (FwStatus, String) {
    (FwStatus::FwNullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or valid for reads.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (FwStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Last error message on this thread, or null. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn fw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds an `n×n` matrix from `n*n` row-major entries. Rejects asymmetric input.
///
/// # Safety
/// `data` must point to `n*n` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_matrix_new(data: *const f64, n: usize, out: *mut *mut FwMatrix) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if data.is_null() {
            return Err(null("data"));
        }
        if n == 0 {
            return Err((FwStatus::FwInvalidArgument, "n must be positive".into()));
        }
        let len = n.checked_mul(n).ok_or((FwStatus::FwInvalidArgument, "n too large".into()))?;
        let flat = std::slice::from_raw_parts(data, len);
        let rows: Vec<Vec<f64>> = flat.chunks(n).map(<[f64]>::to_vec).collect();
        let m = SymMatrix::from_rows(&rows).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(FwMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or come from [`fw_matrix_new`], and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fw_matrix_free(m: *mut FwMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of `m`, or 0 for null.
///
/// # Safety
/// `m` must be null or a live matrix.
#[no_mangle]
pub unsafe extern "C" fn fw_matrix_dim(m: *const FwMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

/// Smallest eigenvalue of `m`.
///
/// # Safety
/// `m` must be a live matrix and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fw_min_eigenvalue(m: *const FwMatrix, out: *mut f64) -> FwStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = min_eigenvalue(&m.0);
        Ok(())
    })
}

/// Decides `m ∈ FW_k^n`. `max_iter == 0` uses the default budget.
///
/// On a non-member verdict and non-null `cert_out`, the certificate is stored there;
/// otherwise `*cert_out` is set to null.
///
/// # Safety
/// `m` must be a live matrix, `verdict` writable, `cert_out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fw_check_membership(
    m: *const FwMatrix,
    k: usize,
    max_iter: usize,
    verdict: *mut FwVerdict,
    cert_out: *mut *mut FwCertificate,
) -> FwStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        if !cert_out.is_null() {
            *cert_out = ptr::null_mut();
        }
        let mut opts = SolverOptions::default();
        if max_iter > 0 {
            opts.max_iter = max_iter;
        }
        let v = fw_membership(&m.0, k, &opts).map_err(lib_err)?;
        *verdict = match v.status {
            MembershipStatus::Member => FwVerdict::FwMember,
            MembershipStatus::NonMember => FwVerdict::FwNonMember,
            MembershipStatus::Inconclusive => FwVerdict::FwInconclusive,
        };
        if let (Some(c), false) = (v.certificate, cert_out.is_null()) {
            *cert_out = Box::into_raw(Box::new(FwCertificate(c)));
        }
        Ok(())
    })
}

/// Checks every `k×k` principal submatrix for psd-ness at relative tolerance `tol`.
///
/// # Safety
/// `m` must be a live matrix; `is_member` writable; `worst_margin` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fw_check_dual(
    m: *const FwMatrix,
    k: usize,
    tol: f64,
    is_member: *mut bool,
    worst_margin: *mut f64,
) -> FwStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        if is_member.is_null() {
            return Err(null("is_member"));
        }
        if !(tol >= 0.0) {
            return Err((FwStatus::FwInvalidArgument, "tol must be nonnegative".into()));
        }
        let r = dual_membership(&m.0, k, tol).map_err(lib_err)?;
        *is_member = r.is_member;
        if !worst_margin.is_null() {
            *worst_margin = r.worst_margin;
        }
        Ok(())
    })
}

/// Searches for a separating certificate. `*out` is null when none was found.
///
/// # Safety
/// `m` must be a live matrix and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fw_certify(m: *const FwMatrix, k: usize, out: *mut *mut FwCertificate) -> FwStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let found = match search_certificate(&m.0, k).map_err(lib_err)? {
            Some((_, c)) => Some(c),
            None => fw_membership(&m.0, k, &SolverOptions::default()).map_err(lib_err)?.certificate,
        };
        if let Some(c) = found {
            *out = Box::into_raw(Box::new(FwCertificate(c)));
        }
        Ok(())
    })
}

/// `<B, A>` for the target the certificate was built against.
///
/// # Safety
/// `c` must be null or a live certificate.
#[no_mangle]
pub unsafe extern "C" fn fw_certificate_value(c: *const FwCertificate) -> f64 {
    c.as_ref().map_or(f64::NAN, |c| c.0.value)
}

/// Copies `B` row-major into `buf`, which must hold `n*n` doubles (`len` of them).
///
/// # Safety
/// `c` must be a live certificate and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn fw_certificate_matrix(c: *const FwCertificate, buf: *mut f64, len: usize) -> FwStatus {
    guard(|| {
        let c = borrow(c, "certificate")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let n = c.0.b.n();
        if len < n * n {
            return Err((FwStatus::FwDimensionMismatch, format!("buffer holds {len}, need {}", n * n)));
        }
        let out = std::slice::from_raw_parts_mut(buf, n * n);
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = *c.0.b.get(i, j);
            }
        }
        Ok(())
    })
}

/// Certificate as JSON. Release with [`fw_string_free`].
///
/// # Safety
/// `c` must be a live certificate and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fw_certificate_json(c: *const FwCertificate, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        let c = borrow(c, "certificate")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = serde_json::to_string(&c.0.to_json()).map_err(|e| (FwStatus::FwInternal, e.to_string()))?;
        *out = CString::new(text).map_err(|e| (FwStatus::FwInternal, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a certificate returned by this library, not freed twice.
#[no_mangle]
pub unsafe extern "C" fn fw_certificate_free(c: *mut FwCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Threshold `(n-1)/(k-1)` for the uniform family. `text`, if non-null, receives the
/// exact value as a string such as "3/2"; release it with [`fw_string_free`].
///
/// # Safety
/// `value` must be writable; `text` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fw_pna_threshold(n: usize, k: usize, value: *mut f64, text: *mut *mut c_char) -> FwStatus {
    guard(|| {
        if value.is_null() {
            return Err(null("value"));
        }
        let t = pna_threshold(n, k).map_err(lib_err)?;
        *value = t.to_f64();
        if !text.is_null() {
            *text = CString::new(format_rational(&t)).map_err(|e| (FwStatus::FwInternal, e.to_string()))?.into_raw();
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not freed twice.
#[no_mangle]
pub unsafe extern "C" fn fw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
