//! C ABI over the core library: opaque handles, status codes, and a JSON
//! scenario runner, so other languages can bind without touching Rust.
//!
//! Conventions:
//!
//! - States and operators are opaque heap objects; every `*_new`-style
//!   constructor writes a handle through an out-pointer and the caller
//!   frees it with the matching `*_free`.
//! - Every fallible function returns an [`AqsStatus`]; on failure
//!   [`aqs_last_error`] yields a message valid until the next call on the
//!   same thread.
//! - Complex data crosses the boundary as separate re/im arrays of `f64`,
//!   row-major for matrices.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use aqs_core::analysis::{pearson, t_scores};
use aqs_core::cli::{run, ScenarioConfig};
use aqs_core::creativity::{c_value, robertson_gap};
use aqs_core::error::AqsError;
use aqs_core::hilbert::{fidelity, C64, SemanticState};
use aqs_core::operators::{FockContext, LinearOperator};

/// Status codes mirroring the core error variants.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AqsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ZeroNorm = 3,
    NonFinite = 4,
    DimMismatch = 5,
    NotHermitian = 6,
    ModeOutOfRange = 7,
    PortfolioTooSmall = 8,
    StateAnnihilated = 9,
    ConstantVector = 10,
    TooFewPoints = 11,
    ScoreOutOfRange = 12,
    RuntimeError = 13,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(error: &AqsError) -> AqsStatus {
    match error {
        AqsError::ZeroNorm { .. } => AqsStatus::ZeroNorm,
        AqsError::NonFinite { .. } => AqsStatus::NonFinite,
        AqsError::DimMismatch { .. } => AqsStatus::DimMismatch,
        AqsError::NotHermitian { .. } => AqsStatus::NotHermitian,
        AqsError::ModeOutOfRange { .. } => AqsStatus::ModeOutOfRange,
        AqsError::PortfolioTooSmall { .. } => AqsStatus::PortfolioTooSmall,
        AqsError::StateAnnihilated { .. } => AqsStatus::StateAnnihilated,
        AqsError::ConstantVector => AqsStatus::ConstantVector,
        AqsError::TooFewPoints { .. } => AqsStatus::TooFewPoints,
        AqsError::ScoreOutOfRange { .. } => AqsStatus::ScoreOutOfRange,
        AqsError::InvalidField { .. } => AqsStatus::InvalidArgument,
    }
}

fn fail(error: AqsError) -> AqsStatus {
    let status = status_of(&error);
    set_error(&error.to_string());
    status
}

/// Runs the body, translating panics into `RuntimeError` instead of
/// unwinding across the boundary.
fn guard(body: impl FnOnce() -> AqsStatus) -> AqsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            AqsStatus::RuntimeError
        }
    }
}

macro_rules! require {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => {
                set_error(concat!("null pointer: ", stringify!($ptr)));
                return AqsStatus::NullPointer;
            }
        }
    };
}

macro_rules! require_out {
    ($ptr:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(r) => r,
            None => {
                set_error(concat!("null out-pointer: ", stringify!($ptr)));
                return AqsStatus::NullPointer;
            }
        }
    };
}

/// Opaque unit-norm state handle.
pub struct AqsState(SemanticState);

/// Opaque dense-operator handle.
pub struct AqsOperator(LinearOperator);

/// Message for the most recent failure on this thread, or NULL. Valid
/// until the next call on the same thread.
#[no_mangle]
pub extern "C" fn aqs_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

unsafe fn complex_slice(re: *const f64, im: *const f64, len: usize) -> Option<Vec<C64>> {
    if re.is_null() || im.is_null() {
        return None;
    }
    let re = std::slice::from_raw_parts(re, len);
    let im = std::slice::from_raw_parts(im, len);
    Some(re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect())
}

/// Creates a state from `dim` (re, im) amplitude pairs, normalizing.
///
/// # Safety
/// `re` and `im` must point to `dim` readable doubles; `out` must be a
/// valid out-pointer. The returned handle must be freed with
/// [`aqs_state_free`].
#[no_mangle]
pub unsafe extern "C" fn aqs_state_new(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut AqsState,
) -> AqsStatus {
    guard(|| {
        let out = require_out!(out);
        let Some(raw) = (unsafe { complex_slice(re, im, dim) }) else {
            set_error("null amplitude array");
            return AqsStatus::NullPointer;
        };
        match SemanticState::from_amplitudes(&raw) {
            Ok(state) => {
                *out = Box::into_raw(Box::new(AqsState(state)));
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Creates the computational basis state |index⟩ in `dim` dimensions.
///
/// # Safety
/// `out` must be a valid out-pointer; free the handle with
/// [`aqs_state_free`].
#[no_mangle]
pub unsafe extern "C" fn aqs_state_basis(
    dim: usize,
    index: usize,
    out: *mut *mut AqsState,
) -> AqsStatus {
    guard(|| {
        let out = require_out!(out);
        match SemanticState::basis(dim, index) {
            Ok(state) => {
                *out = Box::into_raw(Box::new(AqsState(state)));
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees a state handle (NULL is a no-op).
///
/// # Safety
/// `state` must be a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aqs_state_free(state: *mut AqsState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Dimension of a state, or 0 for NULL.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aqs_state_dim(state: *const AqsState) -> usize {
    unsafe { state.as_ref() }.map_or(0, |s| s.0.dim())
}

/// Copies the amplitudes into caller buffers of length `aqs_state_dim`.
///
/// # Safety
/// `re_out` and `im_out` must point to `aqs_state_dim(state)` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn aqs_state_amplitudes(
    state: *const AqsState,
    re_out: *mut f64,
    im_out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let state = require!(state);
        if re_out.is_null() || im_out.is_null() {
            set_error("null output array");
            return AqsStatus::NullPointer;
        }
        let amplitudes = state.0.amplitudes();
        let re = unsafe { std::slice::from_raw_parts_mut(re_out, amplitudes.len()) };
        let im = unsafe { std::slice::from_raw_parts_mut(im_out, amplitudes.len()) };
        for (i, z) in amplitudes.iter().enumerate() {
            re[i] = z.re;
            im[i] = z.im;
        }
        AqsStatus::Ok
    })
}

/// |⟨a|b⟩| into `out`.
///
/// # Safety
/// `a`, `b` must be live state handles; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn aqs_state_fidelity(
    a: *const AqsState,
    b: *const AqsState,
    out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let a = require!(a);
        let b = require!(b);
        let out = require_out!(out);
        match fidelity(&a.0, &b.0) {
            Ok(f) => {
                *out = f;
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Creates a dense operator from row-major `dim × dim` (re, im) entries.
///
/// # Safety
/// `re` and `im` must point to `dim*dim` readable doubles; free the handle
/// with [`aqs_operator_free`].
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_new(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut AqsOperator,
) -> AqsStatus {
    guard(|| {
        let out = require_out!(out);
        if dim == 0 {
            set_error("dim must be ≥ 1");
            return AqsStatus::InvalidArgument;
        }
        let Some(entries) = (unsafe { complex_slice(re, im, dim * dim) }) else {
            set_error("null entry array");
            return AqsStatus::NullPointer;
        };
        match LinearOperator::from_fn(dim, |i, j| entries[i * dim + j]) {
            Ok(op) => {
                *out = Box::into_raw(Box::new(AqsOperator(op)));
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees an operator handle (NULL is a no-op).
///
/// # Safety
/// `op` must be a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_free(op: *mut AqsOperator) {
    if !op.is_null() {
        drop(unsafe { Box::from_raw(op) });
    }
}

/// Dimension of an operator, or 0 for NULL.
///
/// # Safety
/// `op` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_dim(op: *const AqsOperator) -> usize {
    unsafe { op.as_ref() }.map_or(0, |o| o.0.dim())
}

/// Copies the entries into row-major caller buffers of length `dim*dim`.
///
/// # Safety
/// `re_out`, `im_out` must point to `dim*dim` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_entries(
    op: *const AqsOperator,
    re_out: *mut f64,
    im_out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let op = require!(op);
        if re_out.is_null() || im_out.is_null() {
            set_error("null output array");
            return AqsStatus::NullPointer;
        }
        let dim = op.0.dim();
        let re = unsafe { std::slice::from_raw_parts_mut(re_out, dim * dim) };
        let im = unsafe { std::slice::from_raw_parts_mut(im_out, dim * dim) };
        for i in 0..dim {
            for j in 0..dim {
                let z = op.0.entry(i, j);
                re[i * dim + j] = z.re;
                im[i * dim + j] = z.im;
            }
        }
        AqsStatus::Ok
    })
}

fn wrap_operator(
    out: *mut *mut AqsOperator,
    result: Result<LinearOperator, AqsError>,
) -> AqsStatus {
    let out = require_out!(out);
    match result {
        Ok(op) => {
            *out = Box::into_raw(Box::new(AqsOperator(op)));
            AqsStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Matrix product a·b (apply b first on kets).
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_compose(
    a: *const AqsOperator,
    b: *const AqsOperator,
    out: *mut *mut AqsOperator,
) -> AqsStatus {
    guard(|| {
        let a = require!(a);
        let b = require!(b);
        wrap_operator(out, a.0.compose(&b.0))
    })
}

/// Commutator [a, b] = a·b − b·a.
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_commutator(
    a: *const AqsOperator,
    b: *const AqsOperator,
    out: *mut *mut AqsOperator,
) -> AqsStatus {
    guard(|| {
        let a = require!(a);
        let b = require!(b);
        wrap_operator(out, a.0.commutator(&b.0))
    })
}

/// Conjugate transpose.
///
/// # Safety
/// `op` must be a live handle; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_adjoint(
    op: *const AqsOperator,
    out: *mut *mut AqsOperator,
) -> AqsStatus {
    guard(|| {
        let op = require!(op);
        wrap_operator(out, Ok(op.0.adjoint()))
    })
}

/// Unnormalized image A|ψ⟩ into caller buffers plus its norm.
///
/// # Safety
/// Buffers must hold `aqs_state_dim`-many doubles; `norm_out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_apply(
    op: *const AqsOperator,
    state: *const AqsState,
    raw_re: *mut f64,
    raw_im: *mut f64,
    norm_out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let op = require!(op);
        let state = require!(state);
        let norm_out = require_out!(norm_out);
        if raw_re.is_null() || raw_im.is_null() {
            set_error("null output array");
            return AqsStatus::NullPointer;
        }
        match op.0.apply(&state.0) {
            Ok((raw, norm)) => {
                let re = unsafe { std::slice::from_raw_parts_mut(raw_re, raw.len()) };
                let im = unsafe { std::slice::from_raw_parts_mut(raw_im, raw.len()) };
                for (i, z) in raw.iter().enumerate() {
                    re[i] = z.re;
                    im[i] = z.im;
                }
                *norm_out = norm;
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// ⟨ψ|A|ψ⟩ into (re_out, im_out).
///
/// # Safety
/// Handles must be live; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_expectation(
    op: *const AqsOperator,
    state: *const AqsState,
    re_out: *mut f64,
    im_out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let op = require!(op);
        let state = require!(state);
        let re_out = require_out!(re_out);
        let im_out = require_out!(im_out);
        match op.0.expectation(&state.0) {
            Ok(z) => {
                *re_out = z.re;
                *im_out = z.im;
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Standard deviation of a Hermitian operator at a state.
///
/// # Safety
/// Handles must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_std_dev(
    op: *const AqsOperator,
    state: *const AqsState,
    out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let op = require!(op);
        let state = require!(state);
        let out = require_out!(out);
        match op.0.std_dev(&state.0) {
            Ok(v) => {
                *out = v;
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Writes 1 into `out` iff the operator is Hermitian within `tol`.
///
/// # Safety
/// `op` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn aqs_operator_is_hermitian(
    op: *const AqsOperator,
    tol: f64,
    out: *mut c_int,
) -> AqsStatus {
    guard(|| {
        let op = require!(op);
        let out = require_out!(out);
        *out = c_int::from(op.0.is_hermitian(tol));
        AqsStatus::Ok
    })
}

/// Dimension (cutoff+1)^modes of a truncated Fock space.
///
/// # Safety
/// `out` must be a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn aqs_fock_dim(modes: usize, cutoff: usize, out: *mut usize) -> AqsStatus {
    guard(|| {
        let out = require_out!(out);
        match FockContext::new(modes, cutoff) {
            Ok(ctx) => {
                *out = ctx.dim();
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

fn fock_operator(
    modes: usize,
    cutoff: usize,
    out: *mut *mut AqsOperator,
    f: impl FnOnce(&FockContext) -> Result<LinearOperator, AqsError>,
) -> AqsStatus {
    match FockContext::new(modes, cutoff) {
        Ok(ctx) => wrap_operator(out, f(&ctx)),
        Err(e) => fail(e),
    }
}

/// Annihilation operator for one mode (zero-indexed) of a truncated Fock
/// space.
///
/// # Safety
/// `out` must be a valid out-pointer; free with [`aqs_operator_free`].
#[no_mangle]
pub unsafe extern "C" fn aqs_fock_annihilation(
    modes: usize,
    cutoff: usize,
    mode: usize,
    out: *mut *mut AqsOperator,
) -> AqsStatus {
    guard(|| fock_operator(modes, cutoff, out, |ctx| ctx.annihilation(mode)))
}

/// Creation operator (adjoint of annihilation; zero at the cutoff).
///
/// # Safety
/// `out` must be a valid out-pointer; free with [`aqs_operator_free`].
#[no_mangle]
pub unsafe extern "C" fn aqs_fock_creation(
    modes: usize,
    cutoff: usize,
    mode: usize,
    out: *mut *mut AqsOperator,
) -> AqsStatus {
    guard(|| fock_operator(modes, cutoff, out, |ctx| ctx.creation(mode)))
}

/// Number operator a†a for one mode.
///
/// # Safety
/// `out` must be a valid out-pointer; free with [`aqs_operator_free`].
#[no_mangle]
pub unsafe extern "C" fn aqs_fock_number(
    modes: usize,
    cutoff: usize,
    mode: usize,
    out: *mut *mut AqsOperator,
) -> AqsStatus {
    guard(|| fock_operator(modes, cutoff, out, |ctx| ctx.number(mode)))
}

/// Basis state for an occupation tuple of length `modes`.
///
/// # Safety
/// `occupation` must point to `modes` readable values; free the handle
/// with [`aqs_state_free`].
#[no_mangle]
pub unsafe extern "C" fn aqs_fock_basis_state(
    modes: usize,
    cutoff: usize,
    occupation: *const usize,
    out: *mut *mut AqsState,
) -> AqsStatus {
    guard(|| {
        let out = require_out!(out);
        if occupation.is_null() {
            set_error("null occupation array");
            return AqsStatus::NullPointer;
        }
        let occ = unsafe { std::slice::from_raw_parts(occupation, modes) };
        let result = FockContext::new(modes, cutoff).and_then(|ctx| ctx.basis_state(occ));
        match result {
            Ok(state) => {
                *out = Box::into_raw(Box::new(AqsState(state)));
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// C = |⟨ψ|[A,B]|ψ⟩| into `out`.
///
/// # Safety
/// Handles must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn aqs_c_value(
    a: *const AqsOperator,
    b: *const AqsOperator,
    state: *const AqsState,
    out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let a = require!(a);
        let b = require!(b);
        let state = require!(state);
        let out = require_out!(out);
        match c_value(&a.0, &b.0, &state.0) {
            Ok(v) => {
                *out = v;
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// σ_A·σ_B − C/2 for Hermitian operators into `out`.
///
/// # Safety
/// Handles must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn aqs_robertson_gap(
    a: *const AqsOperator,
    b: *const AqsOperator,
    state: *const AqsState,
    out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let a = require!(a);
        let b = require!(b);
        let state = require!(state);
        let out = require_out!(out);
        match robertson_gap(&a.0, &b.0, &state.0) {
            Ok(v) => {
                *out = v;
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Pearson correlation of two length-`len` vectors.
///
/// # Safety
/// `u`, `v` must point to `len` readable doubles; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn aqs_pearson(
    u: *const f64,
    v: *const f64,
    len: usize,
    out: *mut f64,
) -> AqsStatus {
    guard(|| {
        let out = require_out!(out);
        if u.is_null() || v.is_null() {
            set_error("null input array");
            return AqsStatus::NullPointer;
        }
        let u = unsafe { std::slice::from_raw_parts(u, len) };
        let v = unsafe { std::slice::from_raw_parts(v, len) };
        match pearson(u, v) {
            Ok(r) => {
                *out = r;
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// T-scores (mean 50, population std 10) of `len` values into `out`.
///
/// # Safety
/// `values` and `out` must point to `len` doubles (readable/writable).
#[no_mangle]
pub unsafe extern "C" fn aqs_t_scores(
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> AqsStatus {
    guard(|| {
        if values.is_null() || out.is_null() {
            set_error("null array");
            return AqsStatus::NullPointer;
        }
        let values = unsafe { std::slice::from_raw_parts(values, len) };
        match t_scores(values) {
            Ok(t) => {
                let out = unsafe { std::slice::from_raw_parts_mut(out, len) };
                out.copy_from_slice(&t);
                AqsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Runs a full experiment from a scenario-config JSON string, writing
/// artifacts exactly like the `aqslab` binary. Returns the CLI exit
/// semantics: 0 success, 1 validation error, 2 runtime error (and -1 for
/// null/invalid UTF-8 input).
///
/// # Safety
/// `config_json` must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn aqs_run_scenario_json(config_json: *const c_char) -> c_int {
    clear_error();
    let result = catch_unwind(AssertUnwindSafe(|| {
        if config_json.is_null() {
            set_error("null config string");
            return -1;
        }
        let Ok(content) = (unsafe { CStr::from_ptr(config_json) }).to_str() else {
            set_error("config string is not valid UTF-8");
            return -1;
        };
        let config = match ScenarioConfig::from_json(content) {
            Ok(config) => config,
            Err(e) => {
                set_error(&e.to_string());
                return 1;
            }
        };
        match run(&config) {
            Ok(_) => 0,
            Err(e) => {
                set_error(&e.to_string());
                e.exit_code()
            }
        }
    }));
    match result {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            2
        }
    }
}
