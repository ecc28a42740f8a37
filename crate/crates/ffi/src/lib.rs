//! C ABI over `planesing`.
//!
//! Objects are opaque handles created by `ps_*_from_*` or computing calls and
//! released with the matching `ps_*_free`. Every fallible call returns a
//! [`PsStatus`]; on failure `ps_last_error_message` describes the cause for
//! the calling thread. Strings returned through `char **` must be released
//! with `ps_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use planesing::conslaw::{self, ConsLawProblem, FirstSingularitySearch};
use planesing::export::to_json;
use planesing::locus::BoxDomain;
use planesing::{catalog, classify, ClassificationReport, PlaneMapGerm, PolyMap, SingularityClass, ToleranceConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotFound = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsClass {
    Immersion = 0,
    Fold = 1,
    Cusp = 2,
    Lips = 3,
    Beaks = 4,
    Swallowtail = 5,
    CorankTwo = 6,
    Degenerate = 7,
    Unrecognized = 8,
}

impl From<SingularityClass> for PsClass {
    fn from(c: SingularityClass) -> Self {
        match c {
            SingularityClass::Immersion => PsClass::Immersion,
            SingularityClass::Fold => PsClass::Fold,
            SingularityClass::Cusp => PsClass::Cusp,
            SingularityClass::Lips => PsClass::Lips,
            SingularityClass::Beaks => PsClass::Beaks,
            SingularityClass::Swallowtail => PsClass::Swallowtail,
            SingularityClass::CorankTwo => PsClass::CorankTwo,
            SingularityClass::Degenerate => PsClass::Degenerate,
            SingularityClass::Unrecognized => PsClass::Unrecognized,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsSearchStatus {
    Found = 0,
    NoSingularity = 1,
    BoundaryMinimum = 2,
    SolverFailed = 3,
}

/// A map germ at a base point.
pub struct PsGerm(PlaneMapGerm);
/// A classification report.
pub struct PsReport(ClassificationReport);
/// A scalar conservation law with initial data.
pub struct PsProblem(ConsLawProblem);
/// Outcome of a first-singularity search.
pub struct PsFirstSingularity(FirstSingularitySearch);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(PsStatus, String);

impl From<planesing::Error> for Fail {
    fn from(e: planesing::Error) -> Self {
        Fail(PsStatus::InvalidInput, e.to_string())
    }
}

/// Runs `f`, recording failures and catching panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PsStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            PsStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(PsStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(PsStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).map_err(|_| Fail(PsStatus::InvalidInput, "interior NUL".into()))?.into_raw();
    Ok(())
}

fn tolerances(zero_rel: f64) -> Result<ToleranceConfig, Fail> {
    let mut tol = ToleranceConfig::default();
    if zero_rel > 0.0 {
        tol.zero_rel = zero_rel;
    }
    tol.validate()?;
    Ok(tol)
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next `ps_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ps_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Germ at `(u1, u2)` of a map given as a JSON pair of polynomial specs.
#[no_mangle]
pub unsafe extern "C" fn ps_germ_from_json(json: *const c_char, u1: f64, u2: f64, out: *mut *mut PsGerm) -> PsStatus {
    guard(|| {
        let map: PolyMap =
            serde_json::from_str(read_str(json)?).map_err(|e| Fail(PsStatus::InvalidInput, e.to_string()))?;
        put(out, PsGerm(PlaneMapGerm::from_polys(map.components(), [u1, u2])?))
    })
}

/// Germ at `(u1, u2)` of a built-in normal form such as `"lips"`.
#[no_mangle]
pub unsafe extern "C" fn ps_germ_from_builtin(
    name: *const c_char,
    u1: f64,
    u2: f64,
    out: *mut *mut PsGerm,
) -> PsStatus {
    guard(|| {
        let name = read_str(name)?;
        let map =
            catalog::normal_form(name).ok_or_else(|| Fail(PsStatus::NotFound, format!("unknown builtin '{name}'")))?;
        put(out, PsGerm(PlaneMapGerm::from_polys(map.components(), [u1, u2])?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_germ_free(germ: *mut PsGerm) {
    if !germ.is_null() {
        drop(Box::from_raw(germ));
    }
}

/// Classifies `germ`. A non-positive `zero_rel` selects the default.
#[no_mangle]
pub unsafe extern "C" fn ps_classify(germ: *const PsGerm, zero_rel: f64, out: *mut *mut PsReport) -> PsStatus {
    guard(|| {
        let germ = deref(germ)?;
        let tol = tolerances(zero_rel)?;
        put(out, PsReport(classify(&germ.0, &tol)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_report_class(report: *const PsReport, out: *mut PsClass) -> PsStatus {
    guard(|| {
        let r = deref(report)?;
        if out.is_null() {
            return Err(null());
        }
        *out = r.0.class.into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_report_json(report: *const PsReport, out: *mut *mut c_char) -> PsStatus {
    guard(|| put_string(out, to_json(&deref(report)?.0)))
}

#[no_mangle]
pub unsafe extern "C" fn ps_report_free(report: *mut PsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Problem from JSON `{"f1": .., "f2": .., "phi": ..}`.
#[no_mangle]
pub unsafe extern "C" fn ps_problem_from_json(json: *const c_char, out: *mut *mut PsProblem) -> PsStatus {
    guard(|| {
        let prob: ConsLawProblem =
            serde_json::from_str(read_str(json)?).map_err(|e| Fail(PsStatus::InvalidInput, e.to_string()))?;
        put(out, PsProblem(prob))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_problem_from_builtin(name: *const c_char, out: *mut *mut PsProblem) -> PsStatus {
    guard(|| {
        let name = read_str(name)?;
        let prob =
            catalog::problem(name).ok_or_else(|| Fail(PsStatus::NotFound, format!("unknown problem '{name}'")))?;
        put(out, PsProblem(prob))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_problem_free(problem: *mut PsProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Searches the box `[lo1, hi1] × [lo2, hi2]` sampled on `n1 × n2` nodes.
#[no_mangle]
pub unsafe extern "C" fn ps_first_singularity(
    problem: *const PsProblem,
    lo1: f64,
    lo2: f64,
    hi1: f64,
    hi2: f64,
    n1: usize,
    n2: usize,
    zero_rel: f64,
    out: *mut *mut PsFirstSingularity,
) -> PsStatus {
    guard(|| {
        let prob = deref(problem)?;
        let domain = BoxDomain::new([lo1, lo2], [hi1, hi2], [n1, n2])?;
        let tol = tolerances(zero_rel)?;
        put(out, PsFirstSingularity(conslaw::first_singularity(&prob.0, &domain, &tol)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_first_singularity_status(
    search: *const PsFirstSingularity,
    out: *mut PsSearchStatus,
) -> PsStatus {
    guard(|| {
        let s = deref(search)?;
        if out.is_null() {
            return Err(null());
        }
        *out = match s.0 {
            FirstSingularitySearch::Found(_) => PsSearchStatus::Found,
            FirstSingularitySearch::NoSingularity => PsSearchStatus::NoSingularity,
            FirstSingularitySearch::BoundaryMinimum { .. } => PsSearchStatus::BoundaryMinimum,
            FirstSingularitySearch::SolverFailed { .. } => PsSearchStatus::SolverFailed,
        };
        Ok(())
    })
}

/// Location `u_star[2]`, time and class of a found singularity; `NotFound`
/// for other outcomes. Any output pointer may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ps_first_singularity_point(
    search: *const PsFirstSingularity,
    u_star: *mut f64,
    t_star: *mut f64,
    class: *mut PsClass,
) -> PsStatus {
    guard(|| {
        let FirstSingularitySearch::Found(fs) = &deref(search)?.0 else {
            return Err(Fail(PsStatus::NotFound, "no singularity was found".into()));
        };
        if !u_star.is_null() {
            *u_star = fs.u_star[0];
            *u_star.add(1) = fs.u_star[1];
        }
        if !t_star.is_null() {
            *t_star = fs.t_star;
        }
        if !class.is_null() {
            *class = fs.report.class.into();
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_first_singularity_json(
    search: *const PsFirstSingularity,
    out: *mut *mut c_char,
) -> PsStatus {
    guard(|| put_string(out, to_json(&deref(search)?.0)))
}

#[no_mangle]
pub unsafe extern "C" fn ps_first_singularity_free(search: *mut PsFirstSingularity) {
    if !search.is_null() {
        drop(Box::from_raw(search));
    }
}

unsafe fn write_xi(out: *mut f64, xi: [f64; 3]) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    for (k, v) in xi.into_iter().enumerate() {
        *out.add(k) = v;
    }
    Ok(())
}

/// Writes `(Ξ₁, Ξ₂, Ξ₃)` at `(u1, u2)` from the closed-form expressions.
#[no_mangle]
pub unsafe extern "C" fn ps_xi_closed_form(problem: *const PsProblem, u1: f64, u2: f64, out: *mut f64) -> PsStatus {
    guard(|| write_xi(out, conslaw::xi_closed_form(&deref(problem)?.0, [u1, u2]).as_array()))
}

/// Writes `(Ξ₁, Ξ₂, Ξ₃)` at `(u1, u2)` by differentiating `trace C` with jets.
#[no_mangle]
pub unsafe extern "C" fn ps_xi_autodiff(problem: *const PsProblem, u1: f64, u2: f64, out: *mut f64) -> PsStatus {
    guard(|| write_xi(out, conslaw::xi_autodiff(&deref(problem)?.0, [u1, u2]).as_array()))
}
