//! C interface to `normsurf`.
//!
//! Triangulations are opaque handles. Reports come back as JSON strings
//! owned by the library; release them with [`ns_string_free`]. Every call
//! returns an [`NsStatus`]; on failure [`ns_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use normsurf::boundary::{boundary_complex, meridional_bound};
use normsurf::pipeline::{meridian_slots, run_pipeline, slots_to_word, BoundaryBudget, PipelineConfig};
use normsurf::tri::{parse_input, validate, IdealTriangulation};
use normsurf::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Input text or gluing table rejected.
    Parse = 3,
    /// Arguments or triangulation unsuitable for the request.
    InvalidInput = 4,
    /// A computation failed, for instance on overflow.
    Computation = 5,
    Panic = 6,
}

/// A parsed triangulation with its meridian marking.
pub struct NsTriangulation {
    tri: IdealTriangulation,
    meridian: Vec<String>,
}

/// Pipeline settings. `boundary_budget < 0` selects the automatic budget;
/// zero `interior_cap`, `coord_cap` or `threads` selects the default.
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct NsPipelineConfig {
    pub chi_budget: u64,
    pub boundary_budget: i64,
    pub depth: u32,
    pub flat_budget: u32,
    pub interior_cap: u32,
    pub coord_cap: i64,
    pub surface_count_factor: u64,
    pub threads: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NsStatus {
    match e {
        Error::Stage { source, .. } => status_of(source),
        Error::Syntax(_)
        | Error::DanglingFace { .. }
        | Error::FaceGluedTwice { .. }
        | Error::BadPermutation { .. }
        | Error::InconsistentGluing { .. } => NsStatus::Parse,
        Error::Overflow(_) | Error::TruncatedBasis => NsStatus::Computation,
        _ => NsStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (NsStatus, String)>) -> NsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NsStatus::Panic
        }
    }
}

fn lib(e: Error) -> (NsStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (NsStatus, String)> {
    if p.is_null() {
        return Err((NsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (NsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), (NsStatus, String)> {
    let text = serde_json::to_string(value).map_err(|e| (NsStatus::Computation, e.to_string()))?;
    *out = CString::new(text).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

fn check_out<T>(out: *mut *mut T) -> Result<(), (NsStatus, String)> {
    if out.is_null() {
        return Err((NsStatus::NullArgument, "output pointer is null".into()));
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on this thread.
#[no_mangle]
pub extern "C" fn ns_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a triangulation file in the JSON format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_triangulation_parse(text: *const c_char, out: *mut *mut NsTriangulation) -> NsStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let text = read_str(text, "text")?;
        let p = parse_input(text).map_err(lib)?;
        *out = Box::into_raw(Box::new(NsTriangulation {
            tri: p.triangulation,
            meridian: p.meridian,
        }));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from [`ns_triangulation_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ns_triangulation_free(t: *mut NsTriangulation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of tetrahedra, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ns_triangulation_tet_count(t: *const NsTriangulation) -> usize {
    t.as_ref().map_or(0, |t| t.tri.tet_count())
}

/// Validation report as JSON.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_validate(t: *const NsTriangulation, out: *mut *mut c_char) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let t = t.as_ref().ok_or((NsStatus::NullArgument, "triangulation is null".into()))?;
        write_json(out, &validate(&t.tri))
    })
}

/// Meridional bound of the marked meridian as JSON.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_meridian_bound(t: *const NsTriangulation, out: *mut *mut c_char) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let t = t.as_ref().ok_or((NsStatus::NullArgument, "triangulation is null".into()))?;
        if t.meridian.is_empty() {
            return Err(lib(Error::MissingMeridian));
        }
        let slots = meridian_slots(&t.tri, &t.meridian).map_err(lib)?;
        let torus = boundary_complex(&t.tri).map_err(lib)?;
        let mb = meridional_bound(&torus, &slots_to_word(&slots)).map_err(lib)?;
        write_json(out, &mb)
    })
}

#[no_mangle]
pub extern "C" fn ns_pipeline_config_default() -> NsPipelineConfig {
    let d = PipelineConfig::default();
    NsPipelineConfig {
        chi_budget: d.chi_budget,
        boundary_budget: 0,
        depth: d.depth as u32,
        flat_budget: d.flat_budget as u32,
        interior_cap: 0,
        coord_cap: 0,
        surface_count_factor: d.surface_count_factor,
        threads: 0,
    }
}

fn to_config(c: &NsPipelineConfig) -> PipelineConfig {
    let d = PipelineConfig::default();
    PipelineConfig {
        chi_budget: c.chi_budget,
        boundary_budget: if c.boundary_budget < 0 {
            BoundaryBudget::Auto
        } else {
            BoundaryBudget::Fixed(c.boundary_budget as u64)
        },
        depth: c.depth as usize,
        flat_budget: c.flat_budget as usize,
        interior_cap: (c.interior_cap > 0).then_some(c.interior_cap),
        coord_cap: if c.coord_cap > 0 { Some(c.coord_cap) } else { d.coord_cap },
        surface_count_factor: c.surface_count_factor,
        threads: (c.threads > 0).then_some(c.threads as usize),
    }
}

/// Runs the full search on a triangulation file and returns the candidate
/// report as JSON. A report with flags is still `Ok`; inspect its `flags`.
///
/// # Safety
/// `text` must be a nul-terminated string, `config` null or readable, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ns_run_pipeline(
    text: *const c_char,
    config: *const NsPipelineConfig,
    out: *mut *mut c_char,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(text, "text")?;
        let config = config.as_ref().copied().unwrap_or_else(|| ns_pipeline_config_default());
        let report = run_pipeline(text, &to_config(&config)).map_err(lib)?;
        write_json(out, &report)
    })
}
