//! C ABI over `lgi-core`.
//!
//! Every fallible function returns an [`LgiStatus`]; on failure a message is
//! available from [`lgi_last_error`] on the same thread. Handles are opaque
//! and must be released with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use lgi_core::ensemble::{thermal_epsilon, ThermalParams};
use lgi_core::linalg::{ComplexMatrix, C64};
use lgi_core::macrorealist::{enumerate_k, invasive_k, TelegraphModel};
use lgi_core::protocols::{
    correlator_separate, inrm_correlator, invasiveness_demo, k_statistic, sweep_k_with,
    CorrelatorSet, Engine, PerturbationReport, ProtocolConfig,
};
use lgi_core::quantum::{DensityMatrix, Observable};
use lgi_core::Error;

pub const LGI_ENGINE_SEPARATE: u32 = 0;
pub const LGI_ENGINE_SIMULTANEOUS: u32 = 1;
pub const LGI_ENGINE_INRM: u32 = 2;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LgiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    InvalidState = 4,
    Unsupported = 5,
    Panic = 99,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LgiCorrelators {
    pub c12: f64,
    pub c23: f64,
    pub c13: f64,
    pub k: f64,
}

impl From<CorrelatorSet> for LgiCorrelators {
    fn from(c: CorrelatorSet) -> Self {
        Self {
            c12: c.c12(),
            c23: c.c23(),
            c13: c.c13(),
            k: c.k(),
        }
    }
}

/// Bloch vectors of one input after free evolution (`before`) and after the
/// ancilla-coupled run (`after`).
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LgiPerturbation {
    pub before: [f64; 3],
    pub after: [f64; 3],
    pub displacement: [f64; 3],
}

impl From<&PerturbationReport> for LgiPerturbation {
    fn from(r: &PerturbationReport) -> Self {
        Self {
            before: r.bloch_before,
            after: r.bloch_after,
            displacement: r.displacement,
        }
    }
}

/// Opaque protocol configuration: θ, initial state and observable.
pub struct LgiConfig(ProtocolConfig);

/// Opaque result of a θ sweep.
pub struct LgiSweep(Vec<(f64, LgiCorrelators)>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> LgiStatus {
    match e {
        Error::DimensionMismatch { .. }
        | Error::NotSquare { .. }
        | Error::EntryCount { .. }
        | Error::UnsupportedRegister(_) => LgiStatus::DimensionMismatch,
        Error::NotHermitian { .. }
        | Error::TraceNotOne { .. }
        | Error::NotPositive { .. }
        | Error::NotUnitary { .. }
        | Error::NotDichotomic { .. }
        | Error::NotTraceless { .. }
        | Error::NotNormalized { .. }
        | Error::ImaginaryExpectation { .. } => LgiStatus::InvalidState,
        Error::ObservableNotSigmaZ => LgiStatus::Unsupported,
        _ => LgiStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F>(f: F) -> LgiStatus
where
    F: FnOnce() -> Result<(), LgiError> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_last_error("");
            LgiStatus::Ok
        }
        Ok(Err(LgiError(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside lgi");
            LgiStatus::Panic
        }
    }
}

struct LgiError(LgiStatus, String);

impl From<Error> for LgiError {
    fn from(e: Error) -> Self {
        LgiError(status_of(&e), e.to_string())
    }
}

fn null(name: &str) -> LgiError {
    LgiError(LgiStatus::NullPointer, format!("{name} is NULL"))
}

fn engine_from(code: u32) -> Result<Engine, LgiError> {
    match code {
        LGI_ENGINE_SEPARATE => Ok(Engine::Separate),
        LGI_ENGINE_SIMULTANEOUS => Ok(Engine::Simultaneous),
        LGI_ENGINE_INRM => Ok(Engine::Inrm),
        _ => Err(LgiError(LgiStatus::InvalidArgument, format!("unknown engine {code}"))),
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn lgi_status_message(status: LgiStatus) -> *const c_char {
    let s: &'static CStr = match status {
        LgiStatus::Ok => c"ok",
        LgiStatus::NullPointer => c"null pointer argument",
        LgiStatus::InvalidArgument => c"invalid argument",
        LgiStatus::DimensionMismatch => c"dimension mismatch",
        LgiStatus::InvalidState => c"matrix violates a state or observable invariant",
        LgiStatus::Unsupported => c"operation not supported for this configuration",
        LgiStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the most recent failure on this thread; empty after a success.
/// Valid until the next lgi call on the same thread.
#[no_mangle]
pub extern "C" fn lgi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a configuration with initial state I/2 and observable σz.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn lgi_config_new(theta: f64, out: *mut *mut LgiConfig) -> LgiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let handle = Box::new(LgiConfig(ProtocolConfig::new(theta)));
        *out = Box::into_raw(handle);
        Ok(())
    })
}

/// # Safety
/// `config` must be NULL or a handle from [`lgi_config_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lgi_config_free(config: *mut LgiConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lgi_config_set_theta(config: *mut LgiConfig, theta: f64) -> LgiStatus {
    guard(|| {
        let cfg = config.as_mut().ok_or_else(|| null("config"))?;
        cfg.0 = cfg.0.clone().with_theta(theta);
        Ok(())
    })
}

/// Sets the initial state from a 2x2 matrix in row-major order, given as
/// separate real and imaginary arrays of 4 entries each.
///
/// # Safety
/// `config` must be a live handle; `re` and `im` must each point to 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn lgi_config_set_initial_state(
    config: *mut LgiConfig,
    re: *const f64,
    im: *const f64,
) -> LgiStatus {
    guard(|| {
        let cfg = config.as_mut().ok_or_else(|| null("config"))?;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let re = std::slice::from_raw_parts(re, 4);
        let im = std::slice::from_raw_parts(im, 4);
        let entries: Vec<C64> = re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect();
        let rho = DensityMatrix::new(ComplexMatrix::from_row_major(2, 2, &entries)?)?;
        cfg.0 = cfg.0.clone().with_initial_state(rho)?;
        Ok(())
    })
}

/// Sets the observable to 2|ψ⟩⟨ψ| − I for |ψ⟩ = a|0⟩ + b|1⟩ (normalized).
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lgi_config_set_observable(
    config: *mut LgiConfig,
    a_re: f64,
    a_im: f64,
    b_re: f64,
    b_im: f64,
) -> LgiStatus {
    guard(|| {
        let cfg = config.as_mut().ok_or_else(|| null("config"))?;
        let obs = Observable::from_state(&[C64::new(a_re, a_im), C64::new(b_re, b_im)])?;
        cfg.0 = cfg.0.clone().with_observable(obs)?;
        Ok(())
    })
}

/// Single correlator C_km for the separate-run or INRM engine. The
/// single-run engine only yields all three at once; use [`lgi_k_statistic`].
///
/// # Safety
/// `config` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lgi_correlator(
    config: *const LgiConfig,
    engine: u32,
    k: u32,
    m: u32,
    out: *mut f64,
) -> LgiStatus {
    guard(|| {
        let cfg = config.as_ref().ok_or_else(|| null("config"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let (k, m) = (k as usize, m as usize);
        *out = match engine_from(engine)? {
            Engine::Separate => correlator_separate(&cfg.0, k, m)?,
            Engine::Inrm => inrm_correlator(&cfg.0, k, m)?,
            Engine::Simultaneous => {
                let c = k_statistic(&cfg.0, Engine::Simultaneous)?;
                c.get(k, m).ok_or(Error::InvalidTimePair { k, m })?
            }
        };
        Ok(())
    })
}

/// # Safety
/// `config` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lgi_k_statistic(
    config: *const LgiConfig,
    engine: u32,
    out: *mut LgiCorrelators,
) -> LgiStatus {
    guard(|| {
        let cfg = config.as_ref().ok_or_else(|| null("config"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = k_statistic(&cfg.0, engine_from(engine)?)?.into();
        Ok(())
    })
}

/// Sweeps θ over `grid` using `config` (or the default I/2, σz configuration
/// when `config` is NULL).
///
/// # Safety
/// `grid` must point to `len` doubles; `config` must be NULL or a live handle;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lgi_sweep_new(
    config: *const LgiConfig,
    grid: *const f64,
    len: usize,
    engine: u32,
    out: *mut *mut LgiSweep,
) -> LgiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if grid.is_null() && len > 0 {
            return Err(null("grid"));
        }
        let grid: &[f64] = if len == 0 { &[] } else { std::slice::from_raw_parts(grid, len) };
        let template = config.as_ref().map(|c| c.0.clone()).unwrap_or_default();
        let rows = sweep_k_with(&template, grid, engine_from(engine)?)?
            .into_iter()
            .map(|(t, c)| (t, c.into()))
            .collect();
        *out = Box::into_raw(Box::new(LgiSweep(rows)));
        Ok(())
    })
}

/// Number of rows in a sweep; 0 for NULL.
///
/// # Safety
/// `sweep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lgi_sweep_len(sweep: *const LgiSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `sweep` must be a live handle; `theta` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lgi_sweep_get(
    sweep: *const LgiSweep,
    index: usize,
    theta: *mut f64,
    out: *mut LgiCorrelators,
) -> LgiStatus {
    guard(|| {
        let s = sweep.as_ref().ok_or_else(|| null("sweep"))?;
        let theta = theta.as_mut().ok_or_else(|| null("theta"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let (t, c) = s.0.get(index).ok_or_else(|| {
            LgiError(
                LgiStatus::InvalidArgument,
                format!("index {index} out of range for {} rows", s.0.len()),
            )
        })?;
        *theta = *t;
        *out = *c;
        Ok(())
    })
}

/// # Safety
/// `sweep` must be NULL or a handle from [`lgi_sweep_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lgi_sweep_free(sweep: *mut LgiSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// Writes reports for |0⟩, |1⟩ and I/2 (in that order) into `out[0..3]`.
///
/// # Safety
/// `out` must point to 3 writable `LgiPerturbation` values.
#[no_mangle]
pub unsafe extern "C" fn lgi_invasiveness(theta: f64, out: *mut LgiPerturbation) -> LgiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let demo = invasiveness_demo(theta)?;
        let out = std::slice::from_raw_parts_mut(out, 3);
        for (slot, report) in out.iter_mut().zip(demo.reports()) {
            *slot = report.into();
        }
        Ok(())
    })
}

/// Exact correlators of the classical telegraph model. `invasive_kick` = 0
/// gives the non-invasive bound-respecting model.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lgi_macrorealist_k(
    p_flip: f64,
    initial_prob_up: f64,
    invasive_kick: f64,
    out: *mut LgiCorrelators,
) -> LgiStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let model = TelegraphModel::new(p_flip, initial_prob_up, invasive_kick)?;
        let c = if invasive_kick > 0.0 {
            invasive_k(&model)?
        } else {
            enumerate_k(&model)?
        };
        *out = c.into();
        Ok(())
    })
}

/// Thermal polarization ε = (1 − α)/(1 + α), α = exp(−μB/kT).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lgi_thermal_epsilon(
    magnetic_moment: f64,
    field: f64,
    temperature: f64,
    out: *mut f64,
) -> LgiStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = thermal_epsilon(&ThermalParams::new(magnetic_moment, field, temperature)?);
        Ok(())
    })
}
