//! C ABI for `supremal`.
//!
//! Objects cross the boundary as opaque pointers created by `*_new`/`*_from_*`
//! functions and released by the matching `*_free`. Every fallible call
//! returns a [`SupremalStatus`]; on failure the message is available from
//! [`supremal_last_error`] on the same thread. Extended reals map to doubles,
//! with the sentinels as `±INFINITY`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use supremal::conditions::{check_cartesian_submaximality, check_separate_submaximality};
use supremal::functional::evaluate_h;
use supremal::lab::crosscheck_theorem;
use supremal::supremand::{AnySupremand, Density};
use supremal::{
    CheckReport, Error, ExtReal, GridSupremand, Interval, StepFunction, SumPolicy, TripleGrid,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupremalStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    ParseError = 4,
    IoError = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// How sums outside the domain are treated by the triple checks.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupremalSumPolicy {
    SkipUndefined = 0,
    RequireInDomain = 1,
}

/// Opaque piecewise constant function.
pub struct SupremalStepFunction(StepFunction);

/// Opaque supremand (analytic or tabulated).
pub struct SupremalSupremand(AnySupremand);

/// Value of the energy and the first pair of jump indices attaining it.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupremalEnergy {
    pub value: f64,
    pub has_pair: bool,
    pub s: usize,
    pub t: usize,
}

/// Outcome of a condition check. `witness_args` holds `witness_len` values.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupremalCheckReport {
    pub passed: bool,
    pub tuples_checked: usize,
    pub tuples_skipped: usize,
    pub has_witness: bool,
    pub witness_len: usize,
    pub witness_args: [f64; 4],
    pub witness_lhs: f64,
    pub witness_rhs: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupremalCrossCheck {
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub both_failed: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SupremalStatus {
    match e {
        Error::Parse { .. } | Error::Expression(_) => SupremalStatus::ParseError,
        Error::Io(_) => SupremalStatus::IoError,
        Error::OutOfDomain { .. } | Error::NotInAlphabet(_) | Error::NotANumber { .. } => {
            SupremalStatus::DomainError
        }
        _ => SupremalStatus::InvalidArgument,
    }
}

enum Fail {
    Core(Error),
    Null(&'static str),
    Small(usize),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SupremalStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SupremalStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            SupremalStatus::NullPointer
        }
        Ok(Err(Fail::Small(need))) => {
            set_error(format!("buffer too small: {need} elements needed"));
            SupremalStatus::BufferTooSmall
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SupremalStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Fail::Null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn string(p: *const c_char, what: &'static str) -> Result<String, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_string)
        .map_err(|_| Fail::Core(Error::InvalidParameter(format!("{what} is not UTF-8"))))
}

fn ext(v: f64) -> Result<ExtReal, Fail> {
    ExtReal::from_f64(v).ok_or_else(|| Fail::Core(Error::InvalidParameter("NaN".into())))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn supremal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `breaks` holds `n_breaks` doubles, `values` holds `n_values`; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_step_new(
    a: f64,
    b: f64,
    breaks: *const f64,
    n_breaks: usize,
    values: *const f64,
    n_values: usize,
    out_fn: *mut *mut SupremalStepFunction,
) -> SupremalStatus {
    guard(|| {
        let dst = out(out_fn, "out")?;
        let iv = Interval::new(a, b)?;
        let u = StepFunction::new(
            iv,
            slice(breaks, n_breaks, "breaks")?,
            slice(values, n_values, "values")?,
        )?;
        *dst = boxed(SupremalStepFunction(u));
        Ok(())
    })
}

/// Parses the `interval`/`piece`/`break` text record.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_step_parse(
    text: *const c_char,
    out_fn: *mut *mut SupremalStepFunction,
) -> SupremalStatus {
    guard(|| {
        let dst = out(out_fn, "out")?;
        let u: StepFunction = string(text, "text")?.parse()?;
        *dst = boxed(SupremalStepFunction(u));
        Ok(())
    })
}

/// # Safety
/// `u` was returned by this library and is not used afterwards. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn supremal_step_free(u: *mut SupremalStepFunction) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// # Safety
/// `u` is a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn supremal_step_jump_count(u: *const SupremalStepFunction) -> usize {
    u.as_ref().map_or(0, |u| u.0.jump_count())
}

/// Copies the jumps into `buf`. `written` receives the jump count, also on
/// `BufferTooSmall`.
///
/// # Safety
/// `buf` has room for `cap` doubles; `written` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_step_jumps(
    u: *const SupremalStepFunction,
    buf: *mut f64,
    cap: usize,
    written: *mut usize,
) -> SupremalStatus {
    guard(|| {
        let u = as_ref(u, "function")?;
        let written = out(written, "written")?;
        let profile = u.0.jump_profile();
        let jumps = profile.jumps();
        *written = jumps.len();
        if jumps.len() > cap {
            return Err(Fail::Small(jumps.len()));
        }
        if !jumps.is_empty() {
            if buf.is_null() {
                return Err(Fail::Null("buf"));
            }
            ptr::copy_nonoverlapping(jumps.as_ptr(), buf, jumps.len());
        }
        Ok(())
    })
}

/// # Safety
/// `u`, `v` are live handles; `dist` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_l1_distance(
    u: *const SupremalStepFunction,
    v: *const SupremalStepFunction,
    dist: *mut f64,
) -> SupremalStatus {
    guard(|| {
        let d = as_ref(u, "u")?.0.l1_distance(&as_ref(v, "v")?.0)?;
        *out(dist, "dist")? = d;
        Ok(())
    })
}

/// Builds a supremand from a `<name>[:param]` spec. The declared infimum is
/// used only when `has_declared_inf` is set.
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_supremand_from_spec(
    spec: *const c_char,
    has_declared_inf: bool,
    declared_inf: f64,
    out_h: *mut *mut SupremalSupremand,
) -> SupremalStatus {
    guard(|| {
        let dst = out(out_h, "out")?;
        let inf = if has_declared_inf {
            Some(ext(declared_inf)?)
        } else {
            None
        };
        let h = AnySupremand::from_spec(&string(spec, "spec")?, inf)?;
        *dst = boxed(SupremalSupremand(h));
        Ok(())
    })
}

/// Tabulated supremand; `table` is the `n × n` matrix in row-major order.
///
/// # Safety
/// `alphabet` holds `n` doubles and `table` holds `n * n`; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_supremand_from_grid(
    alphabet: *const f64,
    n: usize,
    table: *const f64,
    out_h: *mut *mut SupremalSupremand,
) -> SupremalStatus {
    guard(|| {
        let dst = out(out_h, "out")?;
        let alphabet = slice(alphabet, n, "alphabet")?;
        let cells = slice(
            table,
            n.checked_mul(n).ok_or(Fail::Small(usize::MAX))?,
            "table",
        )?;
        let rows = cells
            .chunks(n.max(1))
            .map(|r| r.iter().map(|&v| ext(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let g = GridSupremand::new(alphabet.to_vec(), rows)?;
        *dst = boxed(SupremalSupremand(AnySupremand::Grid(g)));
        Ok(())
    })
}

/// New handle holding the symmetric-diagonal hull of `h`.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_supremand_hull(
    h: *const SupremalSupremand,
    out_h: *mut *mut SupremalSupremand,
) -> SupremalStatus {
    guard(|| {
        let hull = as_ref(h, "h")?.0.hull();
        *out(out_h, "out")? = boxed(SupremalSupremand(hull));
        Ok(())
    })
}

/// # Safety
/// `h` was returned by this library and is not used afterwards. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn supremal_supremand_free(h: *mut SupremalSupremand) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` is a live handle; `value` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_supremand_eval(
    h: *const SupremalSupremand,
    x: f64,
    y: f64,
    value: *mut f64,
) -> SupremalStatus {
    guard(|| {
        let v = as_ref(h, "h")?.0.eval(x, y)?;
        *out(value, "value")? = v.to_f64();
        Ok(())
    })
}

/// # Safety
/// `u`, `h` are live handles; `energy` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_evaluate_h(
    u: *const SupremalStepFunction,
    h: *const SupremalSupremand,
    energy: *mut SupremalEnergy,
) -> SupremalStatus {
    guard(|| {
        let e = evaluate_h(&as_ref(u, "u")?.0, &as_ref(h, "h")?.0)?;
        let (s, t) = e.attaining_pair.unwrap_or((0, 0));
        *out(energy, "energy")? = SupremalEnergy {
            value: e.value.to_f64(),
            has_pair: e.attaining_pair.is_some(),
            s,
            t,
        };
        Ok(())
    })
}

fn to_c(r: &CheckReport) -> SupremalCheckReport {
    let mut c = SupremalCheckReport {
        passed: r.passed(),
        tuples_checked: r.tuples_checked(),
        tuples_skipped: r.tuples_skipped(),
        has_witness: false,
        witness_len: 0,
        witness_args: [0.0; 4],
        witness_lhs: 0.0,
        witness_rhs: 0.0,
    };
    if let Some(w) = r.witness() {
        let n = w.arguments.len().min(4);
        c.has_witness = true;
        c.witness_len = n;
        c.witness_args[..n].copy_from_slice(&w.arguments[..n]);
        c.witness_lhs = w.lhs.to_f64();
        c.witness_rhs = w.rhs.to_f64();
    }
    c
}

type Checker = fn(&dyn Density, &TripleGrid, f64) -> supremal::Result<CheckReport>;

unsafe fn triple_check(
    check: Checker,
    h: *const SupremalSupremand,
    points: *const f64,
    n: usize,
    policy: SupremalSumPolicy,
    tol: f64,
    report: *mut SupremalCheckReport,
) -> SupremalStatus {
    guard(|| {
        let h = as_ref(h, "h")?;
        let policy = match policy {
            SupremalSumPolicy::SkipUndefined => SumPolicy::SkipUndefined,
            SupremalSumPolicy::RequireInDomain => SumPolicy::RequireInDomain,
        };
        let grid = TripleGrid::new(slice(points, n, "points")?.to_vec(), policy)?;
        let r = check(&h.0, &grid, tol)?;
        *out(report, "report")? = to_c(&r);
        Ok(())
    })
}

/// Cartesian submaximality on all triples of `points`. A violation is
/// reported through `report.passed`, not the status.
///
/// # Safety
/// `h` is a live handle; `points` holds `n` doubles; `report` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_check_cartesian(
    h: *const SupremalSupremand,
    points: *const f64,
    n: usize,
    policy: SupremalSumPolicy,
    tol: f64,
    report: *mut SupremalCheckReport,
) -> SupremalStatus {
    triple_check(
        |h, g, t| check_cartesian_submaximality(h, g, t),
        h,
        points,
        n,
        policy,
        tol,
        report,
    )
}

/// Separate submaximality on all triples of `points`.
///
/// # Safety
/// As for [`supremal_check_cartesian`].
#[no_mangle]
pub unsafe extern "C" fn supremal_check_separate(
    h: *const SupremalSupremand,
    points: *const f64,
    n: usize,
    policy: SupremalSumPolicy,
    tol: f64,
    report: *mut SupremalCheckReport,
) -> SupremalStatus {
    triple_check(
        |h, g, t| check_separate_submaximality(h, g, t),
        h,
        points,
        n,
        policy,
        tol,
        report,
    )
}

/// Predicate versus brute-force oracle on seeded random tables.
///
/// # Safety
/// `alphabet` holds `n` doubles; `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn supremal_crosscheck(
    seed: u64,
    instances: usize,
    alphabet: *const f64,
    n: usize,
    levels: usize,
    result: *mut SupremalCrossCheck,
) -> SupremalStatus {
    guard(|| {
        let r = crosscheck_theorem(seed, instances, slice(alphabet, n, "alphabet")?, levels)?;
        *out(result, "result")? = SupremalCrossCheck {
            instances: r.instances,
            agreements: r.agreements,
            disagreements: r.disagreements.len(),
            both_failed: r.both_failed,
        };
        Ok(())
    })
}
