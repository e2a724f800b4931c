//! C ABI over `cs_intercept`.
//!
//! Objects cross the boundary as opaque handles created by `csi_*_new` /
//! `csi_solve*` / `csi_sample` and released by the matching `csi_*_free`.
//! Every fallible call returns a [`CsiStatus`]; on failure a description is
//! available from [`csi_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cs_intercept::format::trajectory_csv;
use cs_intercept::scenario_file::{AngleUnit, ScenarioFile};
use cs_intercept::{
    sample, solve_forced, solve_with, InterceptSolution, Pose, Scenario, SolveReport, SolverOptions, Trajectory,
    TurnDirection,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsiStatus {
    Ok = 0,
    InvalidInput = 1,
    NullPointer = 2,
    /// The scenario is valid but has no intercept.
    Infeasible = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsiBranch {
    Left = 0,
    Right = 1,
}

impl From<TurnDirection> for CsiBranch {
    fn from(d: TurnDirection) -> Self {
        match d {
            TurnDirection::Left => CsiBranch::Left,
            TurnDirection::Right => CsiBranch::Right,
        }
    }
}

impl From<CsiBranch> for TurnDirection {
    fn from(b: CsiBranch) -> Self {
        match b {
            CsiBranch::Left => TurnDirection::Left,
            CsiBranch::Right => TurnDirection::Right,
        }
    }
}

/// One intercept path. `lengths` are ξ1..ξ4: left arc, right arc, pursuer
/// straight, target straight. `durations` are the time spent on each, so
/// `durations[3] == total_time`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsiSolution {
    pub branch: CsiBranch,
    pub turn_angle: f64,
    pub lengths: [f64; 4],
    pub durations: [f64; 4],
    pub total_length: f64,
    pub total_time: f64,
    pub intercept_x: f64,
    pub intercept_y: f64,
}

impl From<&InterceptSolution> for CsiSolution {
    fn from(s: &InterceptSolution) -> Self {
        Self {
            branch: s.branch.into(),
            turn_angle: s.turn_angle,
            lengths: s.lengths.as_array(),
            durations: s.durations,
            total_length: s.total_length,
            total_time: s.total_time,
            intercept_x: s.intercept_point.x,
            intercept_y: s.intercept_point.y,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsiSample {
    pub time: f64,
    pub x: f64,
    pub y: f64,
}

/// Opaque scenario handle.
pub struct CsiScenario(Scenario);

/// Opaque solve result; holds every candidate of the searched branches.
pub struct CsiReport(SolveReport);

/// Opaque sampled trajectory.
pub struct CsiTrajectory(Trajectory);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `body` with panics and errors mapped to status codes.
fn guard(body: impl FnOnce() -> Result<CsiStatus, (CsiStatus, String)>) -> CsiStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CsiStatus::Internal
        }
    }
}

fn from_core(e: cs_intercept::Error) -> (CsiStatus, String) {
    let status = match e {
        cs_intercept::Error::InvalidInput(_) => CsiStatus::InvalidInput,
        cs_intercept::Error::InternalConsistency(_) => CsiStatus::Internal,
    };
    (status, e.to_string())
}

fn null(name: &str) -> (CsiStatus, String) {
    (CsiStatus::NullPointer, format!("{name} is null"))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, (CsiStatus, String)> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next `csi_*` call on the same thread.
#[no_mangle]
pub extern "C" fn csi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn csi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a scenario from raw values; headings in radians.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn csi_scenario_new(
    pursuer_x: f64,
    pursuer_y: f64,
    pursuer_heading: f64,
    pursuer_speed: f64,
    turn_radius: f64,
    target_x: f64,
    target_y: f64,
    target_heading: f64,
    target_speed: f64,
    out: *mut *mut CsiScenario,
) -> CsiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let scenario = Scenario::from_parts(
            Pose::new(pursuer_x, pursuer_y, pursuer_heading),
            pursuer_speed,
            turn_radius,
            Pose::new(target_x, target_y, target_heading),
            target_speed,
        )
        .map_err(from_core)?;
        emit(out, CsiScenario(scenario));
        Ok(CsiStatus::Ok)
    })
}

/// Parses a scenario document (same schema as the CLI input).
///
/// # Safety
/// `json` must be a NUL-terminated UTF-8 string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csi_scenario_from_json(
    json: *const c_char,
    degrees: bool,
    out: *mut *mut CsiScenario,
) -> CsiStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (CsiStatus::InvalidInput, format!("scenario is not UTF-8: {e}")))?;
        let unit = if degrees {
            AngleUnit::Degrees
        } else {
            AngleUnit::Radians
        };
        let file = ScenarioFile::parse(text, unit).map_err(|e| (CsiStatus::InvalidInput, e.to_string()))?;
        let scenario = file.scenario().map_err(from_core)?;
        emit(out, CsiScenario(scenario));
        Ok(CsiStatus::Ok)
    })
}

/// # Safety
/// `scenario` must be NULL or a handle from `csi_scenario_*`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn csi_scenario_free(scenario: *mut CsiScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Searches both turn directions. Returns `Ok` with a report even when no
/// intercept exists; query it with `csi_report_best`.
///
/// # Safety
/// `scenario` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csi_solve(scenario: *const CsiScenario, out: *mut *mut CsiReport) -> CsiStatus {
    guard(|| {
        let s = deref(scenario, "scenario")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = solve_with(&s.0, &SolverOptions::default()).map_err(from_core)?;
        emit(out, CsiReport(report));
        Ok(CsiStatus::Ok)
    })
}

/// Like `csi_solve` but restricted to one initial turn direction.
///
/// # Safety
/// `scenario` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csi_solve_forced(
    scenario: *const CsiScenario,
    branch: CsiBranch,
    out: *mut *mut CsiReport,
) -> CsiStatus {
    guard(|| {
        let s = deref(scenario, "scenario")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = solve_forced(&s.0, branch.into(), &SolverOptions::default()).map_err(from_core)?;
        emit(out, CsiReport(report));
        Ok(CsiStatus::Ok)
    })
}

/// Copies the shortest intercept into `out`, or returns `Infeasible`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csi_report_best(report: *const CsiReport, out: *mut CsiSolution) -> CsiStatus {
    guard(|| {
        let r = deref(report, "report")?;
        if out.is_null() {
            return Err(null("out"));
        }
        match &r.0.best {
            Some(best) => {
                *out = best.into();
                Ok(CsiStatus::Ok)
            }
            None => Err((CsiStatus::Infeasible, "no intercept exists".into())),
        }
    })
}

/// Number of intercepts found across the searched branches; 0 for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csi_report_candidate_count(report: *const CsiReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.candidates().count())
}

/// Copies candidate `index` (left branch first, then by turn angle).
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csi_report_candidate(
    report: *const CsiReport,
    index: usize,
    out: *mut CsiSolution,
) -> CsiStatus {
    guard(|| {
        let r = deref(report, "report")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c =
            r.0.candidates()
                .nth(index)
                .ok_or_else(|| (CsiStatus::InvalidInput, format!("candidate index {index} out of range")))?;
        *out = c.into();
        Ok(CsiStatus::Ok)
    })
}

/// # Safety
/// `report` must be NULL or a handle from `csi_solve*`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn csi_report_free(report: *mut CsiReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Samples the best intercept of `report`. Returns `Infeasible` when the
/// report has none.
///
/// # Safety
/// `scenario` and `report` must be live handles, the report produced from
/// that scenario; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csi_sample(
    scenario: *const CsiScenario,
    report: *const CsiReport,
    arc_samples: usize,
    line_samples: usize,
    out: *mut *mut CsiTrajectory,
) -> CsiStatus {
    guard(|| {
        let s = deref(scenario, "scenario")?;
        let r = deref(report, "report")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let best =
            r.0.best
                .as_ref()
                .ok_or((CsiStatus::Infeasible, "no intercept exists".into()))?;
        let trajectory = sample(best, &s.0, arc_samples, line_samples).map_err(from_core)?;
        emit(out, CsiTrajectory(trajectory));
        Ok(CsiStatus::Ok)
    })
}

/// # Safety
/// `trajectory` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csi_trajectory_pursuer_len(trajectory: *const CsiTrajectory) -> usize {
    trajectory.as_ref().map_or(0, |t| t.0.pursuer_samples.len())
}

/// # Safety
/// `trajectory` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csi_trajectory_target_len(trajectory: *const CsiTrajectory) -> usize {
    trajectory.as_ref().map_or(0, |t| t.0.target_samples.len())
}

unsafe fn copy_samples(
    trajectory: *const CsiTrajectory,
    pick: impl Fn(&Trajectory) -> &[cs_intercept::trajectory::Sample],
    buffer: *mut CsiSample,
    capacity: usize,
    written: *mut usize,
) -> CsiStatus {
    guard(|| {
        let t = deref(trajectory, "trajectory")?;
        let samples = pick(&t.0);
        if samples.len() > capacity {
            return Err((
                CsiStatus::InvalidInput,
                format!("buffer holds {capacity} samples, {} needed", samples.len()),
            ));
        }
        if buffer.is_null() && !samples.is_empty() {
            return Err(null("buffer"));
        }
        for (i, s) in samples.iter().enumerate() {
            *buffer.add(i) = CsiSample {
                time: s.time,
                x: s.point.x,
                y: s.point.y,
            };
        }
        if !written.is_null() {
            *written = samples.len();
        }
        Ok(CsiStatus::Ok)
    })
}

/// Copies the pursuer samples into `buffer` (room for `capacity` entries).
///
/// # Safety
/// `buffer` must point to `capacity` writable `CsiSample`s; `written` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn csi_trajectory_pursuer(
    trajectory: *const CsiTrajectory,
    buffer: *mut CsiSample,
    capacity: usize,
    written: *mut usize,
) -> CsiStatus {
    copy_samples(trajectory, |t| &t.pursuer_samples, buffer, capacity, written)
}

/// Copies the target samples into `buffer` (room for `capacity` entries).
///
/// # Safety
/// `buffer` must point to `capacity` writable `CsiSample`s; `written` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn csi_trajectory_target(
    trajectory: *const CsiTrajectory,
    buffer: *mut CsiSample,
    capacity: usize,
    written: *mut usize,
) -> CsiStatus {
    copy_samples(trajectory, |t| &t.target_samples, buffer, capacity, written)
}

/// CSV rendering (`actor,time,x,y`) as a new string; release it with
/// `csi_string_free`. Returns NULL for a NULL handle.
///
/// # Safety
/// `trajectory` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csi_trajectory_csv(trajectory: *const CsiTrajectory) -> *mut c_char {
    match trajectory.as_ref() {
        Some(t) => CString::new(trajectory_csv(&t.0)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `trajectory` must be NULL or a handle from `csi_sample`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn csi_trajectory_free(trajectory: *mut CsiTrajectory) {
    if !trajectory.is_null() {
        drop(Box::from_raw(trajectory));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn csi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
