//! C ABI for the online recognizer: build or load a hypothesis bank, then
//! feed timestamped position observations and read back the posterior.
//!
//! Handles are opaque; every function returns a status code and writes
//! results through out-pointers. Banks are reference-counted internally,
//! so a bank may be freed while sessions created from it are still alive.

use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

use goalrec::experiment::bank_from_json;
use goalrec::quintic::{TimedState, Trajectory, STANDARD_DT_S};
use goalrec::recognizer::{
    euclid_continuous, HypothesisBank, Observation, RecognizerError, Session,
};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Utf8 = 3,
    Parse = 4,
    OutOfOrderObservation = 5,
    BufferTooSmall = 6,
}

struct BankBuilderInner {
    goals: Vec<String>,
    trajectories: Vec<Vec<Trajectory>>,
    dt: f64,
}

/// Opaque incremental bank builder.
pub struct GrBankBuilder(BankBuilderInner);

/// Opaque immutable hypothesis bank.
pub struct GrBank(Arc<HypothesisBank<Trajectory>>);

type ContinuousDist = fn(&TimedState, &TimedState) -> f64;

/// Opaque recognition session over one observation stream.
pub struct GrSession(
    Session<Arc<HypothesisBank<Trajectory>>, Trajectory, TimedState, ContinuousDist>,
);

/// Creates a bank builder. Free with [`gr_bank_builder_free`] or consume
/// with [`gr_bank_builder_finish`].
#[no_mangle]
pub extern "C" fn gr_bank_builder_new(dt: f64) -> *mut GrBankBuilder {
    let dt = if dt > 0.0 { dt } else { STANDARD_DT_S };
    Box::into_raw(Box::new(GrBankBuilder(BankBuilderInner {
        goals: Vec::new(),
        trajectories: Vec::new(),
        dt,
    })))
}

/// Appends one trajectory (xs/ys sample arrays of length `len`, one sample
/// per `dt`) to `goal_label`, creating the goal on first use.
///
/// # Safety
/// `builder` must come from [`gr_bank_builder_new`] and not be freed;
/// `goal_label` must be a valid NUL-terminated string; `xs` and `ys` must
/// point to at least `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn gr_bank_builder_add_trajectory(
    builder: *mut GrBankBuilder,
    goal_label: *const c_char,
    xs: *const f64,
    ys: *const f64,
    len: usize,
) -> GrStatus {
    if builder.is_null() || goal_label.is_null() || xs.is_null() || ys.is_null() {
        return GrStatus::NullPointer;
    }
    if len == 0 {
        return GrStatus::InvalidArgument;
    }
    let label = match CStr::from_ptr(goal_label).to_str() {
        Ok(s) => s.to_string(),
        Err(_) => return GrStatus::Utf8,
    };
    let inner = &mut (*builder).0;
    let xs = std::slice::from_raw_parts(xs, len);
    let ys = std::slice::from_raw_parts(ys, len);
    let samples: Vec<TimedState> = xs
        .iter()
        .zip(ys)
        .enumerate()
        .map(|(t, (&x, &y))| TimedState { x, y, vx: 0.0, vy: 0.0, t })
        .collect();
    let trajectory = Trajectory { samples, dt: inner.dt };
    match inner.goals.iter().position(|g| g == &label) {
        Some(i) => inner.trajectories[i].push(trajectory),
        None => {
            inner.goals.push(label);
            inner.trajectories.push(vec![trajectory]);
        }
    }
    GrStatus::Ok
}

/// Consumes the builder into an immutable bank with uniform priors.
///
/// # Safety
/// `builder` must come from [`gr_bank_builder_new`] and must not be used
/// again after this call; `out_bank` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gr_bank_builder_finish(
    builder: *mut GrBankBuilder,
    out_bank: *mut *mut GrBank,
) -> GrStatus {
    if builder.is_null() || out_bank.is_null() {
        return GrStatus::NullPointer;
    }
    let inner = Box::from_raw(builder).0;
    match HypothesisBank::new(inner.goals, inner.trajectories) {
        Ok(bank) => {
            *out_bank = Box::into_raw(Box::new(GrBank(Arc::new(bank))));
            GrStatus::Ok
        }
        Err(_) => GrStatus::InvalidArgument,
    }
}

/// Drops an unfinished builder.
///
/// # Safety
/// `builder` must come from [`gr_bank_builder_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gr_bank_builder_free(builder: *mut GrBankBuilder) {
    if !builder.is_null() {
        drop(Box::from_raw(builder));
    }
}

/// Loads a bank from the JSON bank-file format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out_bank` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gr_bank_from_json(
    json: *const c_char,
    out_bank: *mut *mut GrBank,
) -> GrStatus {
    if json.is_null() || out_bank.is_null() {
        return GrStatus::NullPointer;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(s) => s,
        Err(_) => return GrStatus::Utf8,
    };
    match bank_from_json(text) {
        Ok(bank) => {
            *out_bank = Box::into_raw(Box::new(GrBank(Arc::new(bank))));
            GrStatus::Ok
        }
        Err(_) => GrStatus::Parse,
    }
}

/// Number of goal hypotheses in the bank.
///
/// # Safety
/// `bank` must come from a bank constructor and not be freed.
#[no_mangle]
pub unsafe extern "C" fn gr_bank_goal_count(bank: *const GrBank) -> usize {
    if bank.is_null() {
        return 0;
    }
    (*bank).0.goal_count()
}

/// Returns goal label `index` as a fresh string (free with
/// [`gr_string_free`]), or NULL when out of range.
///
/// # Safety
/// `bank` must come from a bank constructor and not be freed.
#[no_mangle]
pub unsafe extern "C" fn gr_bank_goal_label(bank: *const GrBank, index: usize) -> *mut c_char {
    if bank.is_null() {
        return std::ptr::null_mut();
    }
    match (*bank).0.goals().get(index) {
        Some(label) => CString::new(label.as_str())
            .map(CString::into_raw)
            .unwrap_or(std::ptr::null_mut()),
        None => std::ptr::null_mut(),
    }
}

/// # Safety
/// `bank` must come from a bank constructor and not be freed twice.
/// Sessions created from it stay valid.
#[no_mangle]
pub unsafe extern "C" fn gr_bank_free(bank: *mut GrBank) {
    if !bank.is_null() {
        drop(Box::from_raw(bank));
    }
}

/// Opens a recognition session over the bank.
///
/// # Safety
/// `bank` must come from a bank constructor and not be freed.
#[no_mangle]
pub unsafe extern "C" fn gr_session_new(bank: *const GrBank) -> *mut GrSession {
    if bank.is_null() {
        return std::ptr::null_mut();
    }
    let bank = Arc::clone(&(*bank).0);
    Box::into_raw(Box::new(GrSession(Session::new(
        bank,
        euclid_continuous as ContinuousDist,
    ))))
}

/// Folds one position observation at discrete timestamp `t` and writes the
/// posterior into `probs_out` (capacity `probs_capacity`, needs one slot
/// per goal). `argmax_out` (optional) receives the winning goal index.
///
/// # Safety
/// `session` must come from [`gr_session_new`]; `probs_out` must point to
/// at least `probs_capacity` writable doubles; `argmax_out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn gr_session_update(
    session: *mut GrSession,
    t: u64,
    x: f64,
    y: f64,
    probs_out: *mut f64,
    probs_capacity: usize,
    argmax_out: *mut usize,
) -> GrStatus {
    if session.is_null() || probs_out.is_null() {
        return GrStatus::NullPointer;
    }
    let session = &mut (*session).0;
    if probs_capacity < session.bank().goal_count() {
        return GrStatus::BufferTooSmall;
    }
    let obs = Observation::new(
        TimedState { x, y, vx: 0.0, vy: 0.0, t: t as usize },
        t as usize,
    );
    let posterior = match session.update(&obs) {
        Ok(p) => p,
        Err(RecognizerError::OutOfOrder { .. }) => return GrStatus::OutOfOrderObservation,
        Err(_) => return GrStatus::InvalidArgument,
    };
    std::ptr::copy_nonoverlapping(
        posterior.probabilities.as_ptr(),
        probs_out,
        posterior.probabilities.len(),
    );
    if !argmax_out.is_null() {
        *argmax_out = posterior.argmax;
    }
    GrStatus::Ok
}

/// Observations folded so far.
///
/// # Safety
/// `session` must come from [`gr_session_new`] and not be freed.
#[no_mangle]
pub unsafe extern "C" fn gr_session_observation_count(session: *const GrSession) -> u64 {
    if session.is_null() {
        return 0;
    }
    (*session).0.observation_count() as u64
}

/// # Safety
/// `session` must come from [`gr_session_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gr_session_free(session: *mut GrSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Frees strings returned by this library.
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn gr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
