//! C ABI over `weaknet`.
//!
//! Every object crosses the boundary as an opaque heap handle that must be
//! released with its matching `*_free` function. Functions return a
//! [`WnStatus`]; on failure a message is available from [`wn_last_error`]
//! on the same thread. Strings returned to the caller are NUL-terminated,
//! owned by the caller, and released with [`wn_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weaknet::calculus::NetSelectError;
use weaknet::engine::{self, Progress};
use weaknet::{text, validate_system, EngineConfig, EngineError, InteractionSystem, RunResult, RunStatus};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidSystem = 4,
    UnknownNet = 5,
    InvalidArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnMode {
    Needed = 0,
    Full = 1,
}

/// Outcome of a run. Values match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnRunStatus {
    Normal = 0,
    StepLimit = 2,
    Stuck = 3,
}

/// Outcome of a single engine step.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnProgress {
    Idle = 0,
    Processed = 1,
    StepLimit = 2,
    Stuck = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WnStats {
    pub interactions: u64,
    pub indirections: u64,
    pub delegations: u64,
    pub steps: u64,
    pub loops_removed: u64,
    pub cyclic_equations: u64,
    pub observable_terminals: u64,
    pub max_ops_per_step: u64,
}

impl From<&weaknet::Stats> for WnStats {
    fn from(s: &weaknet::Stats) -> Self {
        WnStats {
            interactions: s.interactions,
            indirections: s.indirections,
            delegations: s.delegations,
            steps: s.steps,
            loops_removed: s.loops_removed,
            cyclic_equations: s.cyclic_equations,
            observable_terminals: s.observable_terminals,
            max_ops_per_step: s.max_ops_per_step,
        }
    }
}

/// Run options. Obtain defaults from [`wn_run_options_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct WnRunOptions {
    pub mode: WnMode,
    /// Negative for no bound.
    pub max_steps: i64,
    pub use_shuffle_seed: bool,
    pub shuffle_seed: u64,
    pub strict_rules: bool,
    pub trace: bool,
}

impl WnRunOptions {
    fn to_config(self) -> EngineConfig {
        EngineConfig {
            mode: match self.mode {
                WnMode::Needed => engine::Mode::Needed,
                WnMode::Full => engine::Mode::Full,
            },
            max_steps: u64::try_from(self.max_steps).ok(),
            shuffle_seed: self.use_shuffle_seed.then_some(self.shuffle_seed),
            strict_rules: self.strict_rules,
            trace: self.trace,
            audit: false,
        }
    }
}

/// A parsed interaction system.
pub struct WnSystem(InteractionSystem);

/// A completed run: status, counters, residual configuration and trace.
pub struct WnResult(RunResult);

/// A loaded net that can be stepped one queue entry at a time.
pub struct WnEngine {
    engine: weaknet::Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: WnStatus, msg: impl Into<String>) -> WnStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> WnStatus) -> WnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(WnStatus::Panic, "internal panic"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, WnStatus> {
    if p.is_null() {
        return Err(fail(WnStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(WnStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn read_opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, WnStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p).map(Some)
    }
}

fn engine_error(e: EngineError) -> WnStatus {
    let status = match &e {
        EngineError::Net(NetSelectError::Unknown(_)) => WnStatus::UnknownNet,
        EngineError::Net(_) => WnStatus::InvalidArgument,
        EngineError::Invalid(_) => WnStatus::InvalidSystem,
        EngineError::StuckPair { .. } => WnStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Message describing the last failure on this thread. Valid until the
/// next call into this library from the same thread. Never null.
#[no_mangle]
pub extern "C" fn wn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn wn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.inet` source text. Does not validate; see [`wn_system_validate`].
#[no_mangle]
pub unsafe extern "C" fn wn_system_parse(src: *const c_char, out: *mut *mut WnSystem) -> WnStatus {
    guard(|| {
        if out.is_null() {
            return fail(WnStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let src = match read_str(src) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match text::parse(src) {
            Ok(sys) => {
                *out = Box::into_raw(Box::new(WnSystem(sys)));
                WnStatus::Ok
            }
            Err(e) => fail(WnStatus::ParseError, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn wn_system_free(sys: *mut WnSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Validates a system. Returns `Ok` when there are no diagnostics and
/// `InvalidSystem` otherwise. When `diagnostics` is non-null it receives a
/// newline-separated list (possibly empty) owned by the caller.
#[no_mangle]
pub unsafe extern "C" fn wn_system_validate(
    sys: *const WnSystem,
    diagnostics: *mut *mut c_char,
) -> WnStatus {
    guard(|| {
        let Some(sys) = sys.as_ref() else {
            return fail(WnStatus::NullArgument, "null system");
        };
        let diags = validate_system(&sys.0);
        if !diagnostics.is_null() {
            let text: String = diags.iter().map(|d| format!("{d}\n")).collect();
            *diagnostics = into_c_string(text);
        }
        if diags.is_empty() {
            WnStatus::Ok
        } else {
            fail(WnStatus::InvalidSystem, diags[0].to_string())
        }
    })
}

/// Number of nets declared in the system.
#[no_mangle]
pub unsafe extern "C" fn wn_system_net_count(sys: *const WnSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.nets.len())
}

#[no_mangle]
pub extern "C" fn wn_run_options_default() -> WnRunOptions {
    WnRunOptions {
        mode: WnMode::Needed,
        max_steps: -1,
        use_shuffle_seed: false,
        shuffle_seed: 0,
        strict_rules: false,
        trace: false,
    }
}

/// Loads and reduces a net. `net_name` may be null when the system has
/// exactly one net; `options` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn wn_run(
    sys: *const WnSystem,
    net_name: *const c_char,
    options: *const WnRunOptions,
    out: *mut *mut WnResult,
) -> WnStatus {
    guard(|| {
        if out.is_null() {
            return fail(WnStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(sys) = sys.as_ref() else {
            return fail(WnStatus::NullArgument, "null system");
        };
        let name = match read_opt_str(net_name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        let opts = options.as_ref().copied().unwrap_or_else(|| wn_run_options_default());
        match engine::run(&sys.0, name, opts.to_config()) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(WnResult(r)));
                WnStatus::Ok
            }
            Err(e) => engine_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn wn_result_free(res: *mut WnResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Run status; `Normal` for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wn_result_status(res: *const WnResult) -> WnRunStatus {
    match res.as_ref().map(|r| &r.0.status) {
        Some(RunStatus::StepLimit) => WnRunStatus::StepLimit,
        Some(RunStatus::Stuck { .. }) => WnRunStatus::Stuck,
        _ => WnRunStatus::Normal,
    }
}

#[no_mangle]
pub unsafe extern "C" fn wn_result_stats(res: *const WnResult, out: *mut WnStats) -> WnStatus {
    let (Some(res), false) = (res.as_ref(), out.is_null()) else {
        return fail(WnStatus::NullArgument, "null argument");
    };
    *out = WnStats::from(&res.0.stats);
    WnStatus::Ok
}

/// Residual configuration in `.inet` equation syntax, one per line.
#[no_mangle]
pub unsafe extern "C" fn wn_result_residual(res: *const WnResult, canon: bool) -> *mut c_char {
    match res.as_ref() {
        Some(r) => into_c_string(text::print_config(&r.0.residual, canon)),
        None => ptr::null_mut(),
    }
}

/// The JSON stats record for the run.
#[no_mangle]
pub unsafe extern "C" fn wn_result_stats_json(res: *const WnResult) -> *mut c_char {
    match res.as_ref() {
        Some(r) => into_c_string(text::stats_json(&r.0)),
        None => ptr::null_mut(),
    }
}

/// `STEP\tKIND\tDETAIL` lines; empty unless the run was traced.
#[no_mangle]
pub unsafe extern "C" fn wn_result_trace(res: *const WnResult) -> *mut c_char {
    match res.as_ref() {
        Some(r) => into_c_string(r.0.trace.iter().map(|e| format!("{e}\n")).collect()),
        None => ptr::null_mut(),
    }
}

/// Loads a net for stepwise reduction.
#[no_mangle]
pub unsafe extern "C" fn wn_engine_load(
    sys: *const WnSystem,
    net_name: *const c_char,
    options: *const WnRunOptions,
    out: *mut *mut WnEngine,
) -> WnStatus {
    guard(|| {
        if out.is_null() {
            return fail(WnStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(sys) = sys.as_ref() else {
            return fail(WnStatus::NullArgument, "null system");
        };
        let name = match read_opt_str(net_name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        let opts = options.as_ref().copied().unwrap_or_else(|| wn_run_options_default());
        match weaknet::Engine::load(&sys.0, name, opts.to_config()) {
            Ok(engine) => {
                *out = Box::into_raw(Box::new(WnEngine { engine }));
                WnStatus::Ok
            }
            Err(e) => engine_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn wn_engine_free(engine: *mut WnEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Processes one queue entry and reports what happened in `progress`.
#[no_mangle]
pub unsafe extern "C" fn wn_engine_step(engine: *mut WnEngine, progress: *mut WnProgress) -> WnStatus {
    guard(|| {
        let (Some(e), false) = (engine.as_mut(), progress.is_null()) else {
            return fail(WnStatus::NullArgument, "null argument");
        };
        *progress = match e.engine.step() {
            Ok(Progress::Idle) => WnProgress::Idle,
            Ok(Progress::Processed) => WnProgress::Processed,
            Ok(Progress::StepLimit) => WnProgress::StepLimit,
            Err(EngineError::StuckPair { left, right }) => {
                set_error(format!("no rule for needed pair {left} >< {right}"));
                WnProgress::Stuck
            }
            Err(other) => return engine_error(other),
        };
        WnStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn wn_engine_stats(engine: *const WnEngine, out: *mut WnStats) -> WnStatus {
    let (Some(e), false) = (engine.as_ref(), out.is_null()) else {
        return fail(WnStatus::NullArgument, "null argument");
    };
    *out = WnStats::from(e.engine.stats());
    WnStatus::Ok
}

/// Current configuration of a stepping engine.
#[no_mangle]
pub unsafe extern "C" fn wn_engine_readback(engine: *const WnEngine, canon: bool) -> *mut c_char {
    match engine.as_ref() {
        Some(e) => into_c_string(text::print_config(&e.engine.readback(), canon)),
        None => ptr::null_mut(),
    }
}

/// Number of entries waiting in the engine's needed queue.
#[no_mangle]
pub unsafe extern "C" fn wn_engine_queue_len(engine: *const WnEngine) -> usize {
    engine.as_ref().map_or(0, |e| e.engine.queue().len())
}
