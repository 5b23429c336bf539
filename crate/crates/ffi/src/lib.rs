//! C ABI over `biphoton-core`.
//!
//! States live behind the opaque `BqState` handle. Every fallible call
//! returns a `BqStatus`; on failure `bq_last_error` holds a message for the
//! calling thread. Complex arrays are interleaved `re, im` doubles, matrices
//! row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use biphoton_core::density::{
    frequency_state, polarization_state, BasisTag, DensityMatrix,
};
use biphoton_core::linalg::CMatrix;
use biphoton_core::measures::{closed_forms, wootters_concurrence};
use biphoton_core::report::correlation_report;
use biphoton_core::state::ququart_state;
use biphoton_core::two_qubit::two_qubit_measures;
use biphoton_core::{Error, QuquartCoeffs};
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BqStatus {
    Ok = 0,
    NullPointer = 1,
    Normalization = 2,
    Dimension = 3,
    Convergence = 4,
    Domain = 5,
    InvalidArgument = 6,
    Panic = 7,
}

/// Coefficient basis accepted by `bq_state_new`.
pub const BQ_BASIS_NATURAL: u32 = 0;
pub const BQ_BASIS_MIXED: u32 = 1;

/// Mixed state selector: trace out frequency (polarization state) or
/// polarization (frequency state).
pub const BQ_POLARIZATION: u32 = 0;
pub const BQ_FREQUENCY: u32 = 1;

/// Opaque ququart state.
pub struct BqState {
    coeffs: QuquartCoeffs,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BqReport {
    pub k: f64,
    pub c: f64,
    pub s_full: f64,
    pub s_reduced: f64,
    pub mutual_info: f64,
    /// Nonzero when `s_rel` and `c_cl` are defined.
    pub has_s_rel: i32,
    pub s_rel: f64,
    pub c_cl: f64,
    pub stokes: [f64; 3],
    pub p: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BqClosedForms {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub k_pol: f64,
    pub c_pol: f64,
    pub p: f64,
    pub spectrum: [f64; 4],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BqTwoQubit {
    pub c_2qb: f64,
    pub k_2qb: f64,
    pub p_2qb: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> BqStatus {
    match e {
        Error::Normalization { .. } => BqStatus::Normalization,
        Error::Dimension { .. } => BqStatus::Dimension,
        Error::Convergence { .. } => BqStatus::Convergence,
        Error::Domain(_) | Error::NonFinite => BqStatus::Domain,
        Error::Config(_) => BqStatus::InvalidArgument,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), (BqStatus, String)>) -> BqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BqStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BqStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (BqStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (BqStatus, String) {
    (BqStatus::NullPointer, format!("{what} is null"))
}

unsafe fn state_ref<'a>(s: *const BqState) -> Result<&'a BqState, (BqStatus, String)> {
    s.as_ref().ok_or_else(|| null("state"))
}

fn write_complex(out: *mut f64, values: &[Complex64]) {
    for (i, z) in values.iter().enumerate() {
        // SAFETY: callers check `out` and document the required length.
        unsafe {
            *out.add(2 * i) = z.re;
            *out.add(2 * i + 1) = z.im;
        }
    }
}

fn mixed_state(s: &BqState, which: u32) -> Result<DensityMatrix, (BqStatus, String)> {
    match which {
        BQ_POLARIZATION => Ok(polarization_state(&s.coeffs)),
        BQ_FREQUENCY => Ok(frequency_state(&s.coeffs)),
        _ => Err((BqStatus::InvalidArgument, format!("unknown selector {which}"))),
    }
}

/// Creates a state from 4 complex coefficients (8 doubles). `basis` is
/// `BQ_BASIS_NATURAL` for `(C1, C2, C3, C4)` or `BQ_BASIS_MIXED` for
/// `(C1, B+, C4, B-)`. With `auto_normalize` zero the squared norm must be
/// within 1e-6 of one.
///
/// # Safety
/// `coeffs` must point to 8 doubles and `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bq_state_new(
    coeffs: *const f64,
    basis: u32,
    auto_normalize: i32,
    out: *mut *mut BqState,
) -> BqStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let x = std::slice::from_raw_parts(coeffs, 8);
        let c: [Complex64; 4] = std::array::from_fn(|i| Complex64::new(x[2 * i], x[2 * i + 1]));
        let natural = match basis {
            BQ_BASIS_NATURAL => c,
            BQ_BASIS_MIXED => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                [c[0], (c[1] + c[3]) * h, (c[1] - c[3]) * h, c[2]]
            }
            _ => return Err((BqStatus::InvalidArgument, format!("unknown basis {basis}"))),
        };
        let q = if auto_normalize != 0 {
            QuquartCoeffs::normalizing(natural)
        } else {
            QuquartCoeffs::from_array(natural)
        }
        .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BqState { coeffs: q }));
        Ok(())
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `state` must come from `bq_state_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bq_state_free(state: *mut BqState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Normalized natural-basis coefficients `(C1..C4)`, 8 doubles.
///
/// # Safety
/// `out` must have room for 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn bq_state_coefficients(state: *const BqState, out: *mut f64) -> BqStatus {
    guard(|| {
        let s = state_ref(state)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_complex(out, &s.coeffs.as_array());
        Ok(())
    })
}

/// The 16 two-photon amplitudes indexed `4 m1 + m2`, `m = 2 pol + freq`
/// (`H = 0`, high frequency `= 0`): 32 doubles.
///
/// # Safety
/// `out` must have room for 32 doubles.
#[no_mangle]
pub unsafe extern "C" fn bq_state_amplitudes(state: *const BqState, out: *mut f64) -> BqStatus {
    guard(|| {
        let s = state_ref(state)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_complex(out, ququart_state(&s.coeffs).amplitudes());
        Ok(())
    })
}

/// 4x4 mixed-state matrix in the natural product basis: 32 doubles.
///
/// # Safety
/// `out` must have room for 32 doubles.
#[no_mangle]
pub unsafe extern "C" fn bq_state_density(state: *const BqState, which: u32, out: *mut f64) -> BqStatus {
    guard(|| {
        let s = state_ref(state)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_complex(out, mixed_state(s, which)?.matrix().as_slice());
        Ok(())
    })
}

/// # Safety
/// `out` must point to a writable `BqReport`.
#[no_mangle]
pub unsafe extern "C" fn bq_state_report(state: *const BqState, which: u32, out: *mut BqReport) -> BqStatus {
    guard(|| {
        let s = state_ref(state)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let r = correlation_report(&mixed_state(s, which)?).map_err(lib_err)?;
        *out = BqReport {
            k: r.k,
            c: r.c,
            s_full: r.s_full,
            s_reduced: r.s_reduced,
            mutual_info: r.mutual_info,
            has_s_rel: i32::from(r.s_rel.is_some()),
            s_rel: r.s_rel.unwrap_or(f64::NAN),
            c_cl: r.c_cl.unwrap_or(f64::NAN),
            stokes: [r.stokes.xi1, r.stokes.xi2, r.stokes.xi3],
            p: r.p,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must point to a writable `BqClosedForms`.
#[no_mangle]
pub unsafe extern "C" fn bq_state_closed_forms(state: *const BqState, out: *mut BqClosedForms) -> BqStatus {
    guard(|| {
        let s = state_ref(state)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let cf = closed_forms(&s.coeffs).map_err(lib_err)?;
        *out = BqClosedForms {
            lambda_plus: cf.lambda_pm[0],
            lambda_minus: cf.lambda_pm[1],
            k_pol: cf.k_pol,
            c_pol: cf.c_pol,
            p: cf.p,
            spectrum: cf.spectrum_full,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must point to a writable `BqTwoQubit`.
#[no_mangle]
pub unsafe extern "C" fn bq_state_two_qubit(state: *const BqState, out: *mut BqTwoQubit) -> BqStatus {
    guard(|| {
        let s = state_ref(state)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let m = two_qubit_measures(&s.coeffs);
        *out = BqTwoQubit {
            c_2qb: m.c_2qb,
            k_2qb: m.k_2qb,
            p_2qb: m.p_2qb,
        };
        Ok(())
    })
}

/// Wootters concurrence of an arbitrary two-qubit density matrix given as
/// 32 doubles (row-major, interleaved). The matrix is validated first.
///
/// # Safety
/// `rho` must point to 32 doubles and `out` to a writable double.
#[no_mangle]
pub unsafe extern "C" fn bq_wootters_concurrence(rho: *const f64, out: *mut f64) -> BqStatus {
    guard(|| {
        if rho.is_null() {
            return Err(null("rho"));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let x = std::slice::from_raw_parts(rho, 32);
        let m = CMatrix::from_row_major((0..16).map(|i| Complex64::new(x[2 * i], x[2 * i + 1])).collect());
        let dm = DensityMatrix::new(m, BasisTag::Natural).map_err(lib_err)?;
        *out = wootters_concurrence(&dm).map_err(lib_err)?;
        Ok(())
    })
}

/// Copies the calling thread's last error message, NUL terminated and
/// truncated to `len` bytes. Returns the full message length plus one, so
/// a zero `len` queries the needed size.
///
/// # Safety
/// `buf` must have room for `len` bytes, or be null with `len == 0`.
#[no_mangle]
pub unsafe extern "C" fn bq_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bq_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}
