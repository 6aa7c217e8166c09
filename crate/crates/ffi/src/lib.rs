//! C ABI for `codim-lab`.
//!
//! Every fallible function returns a [`CodimStatus`]; on failure the message
//! is available from [`codim_last_error`] on the same thread. Algebras are
//! opaque [`CodimAlgebra`] handles released with [`codim_algebra_free`];
//! strings returned by the library are released with [`codim_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use codim_lab::algebra::{AlgebraSpec, GradingSpec};
use codim_lab::asym::{self, Real};
use codim_lab::cli::{self, Cli, RunConfig};
use codim_lab::codim::{self, Budget};
use codim_lab::words;
use codim_lab::Error;

/// Result of a call. The nonzero values of invalid input and exhausted
/// budgets match the exit codes of the `codim-lab` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodimStatus {
    Ok = 0,
    InvalidInput = 2,
    BudgetExceeded = 3,
    NullPointer = 4,
    /// A value does not fit the output type; use the string entry point.
    Overflow = 5,
    Panic = 6,
}

/// Resource limits; `time_budget_seconds ≤ 0` means unlimited.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CodimBudget {
    pub max_columns: u64,
    pub scan_budget: u64,
    pub time_budget_seconds: f64,
}

/// An algebra `A(m, w)`.
pub struct CodimAlgebra {
    spec: AlgebraSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Status(CodimStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn fail(status: CodimStatus, message: impl Into<String>) -> Failure {
    Failure::Status(status, message.into())
}

/// Runs `f`, converting errors and panics into a status and a message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CodimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CodimStatus::Ok
        }
        Ok(Err(Failure::Status(s, m))) => {
            set_last_error(&m);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            if e.is_budget() {
                CodimStatus::BudgetExceeded
            } else {
                CodimStatus::InvalidInput
            }
        }
        Err(_) => {
            set_last_error("internal panic");
            CodimStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(CodimStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CodimStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn budget_arg(p: *const CodimBudget) -> Result<Budget, Failure> {
    if p.is_null() {
        return Ok(Budget::default());
    }
    let b = *p;
    if b.max_columns == 0 || b.scan_budget == 0 {
        return Err(fail(CodimStatus::InvalidInput, "budgets must be positive"));
    }
    Ok(Budget {
        max_columns: b.max_columns as u128,
        scan_budget: usize::try_from(b.scan_budget).unwrap_or(usize::MAX),
        time_budget_seconds: (b.time_budget_seconds > 0.0).then_some(b.time_budget_seconds),
        ..Budget::default()
    })
}

unsafe fn algebra_arg<'a>(p: *const CodimAlgebra) -> Result<&'a AlgebraSpec, Failure> {
    p.as_ref()
        .map(|a| &a.spec)
        .ok_or_else(|| fail(CodimStatus::NullPointer, "algebra is null"))
}

unsafe fn grading_arg(p: *const c_char) -> Result<GradingSpec, Failure> {
    Ok(str_arg(p, "grading")?.parse()?)
}

unsafe fn write_u64(out: *mut u64, v: u128) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(CodimStatus::NullPointer, "output pointer is null"));
    }
    *out = u64::try_from(v).map_err(|_| fail(CodimStatus::Overflow, format!("{v} does not fit in 64 bits")))?;
    Ok(())
}

unsafe fn write_f64(out: *mut f64, v: f64) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(CodimStatus::NullPointer, "output pointer is null"));
    }
    *out = v;
    Ok(())
}

/// The library version, a static string.
#[no_mangle]
pub extern "C" fn codim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn codim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The default budget: 5·10⁶ columns, 10⁵ scanned positions, no time limit.
#[no_mangle]
pub extern "C" fn codim_budget_default() -> CodimBudget {
    let b = Budget::default();
    CodimBudget {
        max_columns: b.max_columns as u64,
        scan_budget: b.scan_budget as u64,
        time_budget_seconds: 0.0,
    }
}

/// Creates `A(m, w)` from a word specification such as `"fib"` or
/// `"periodic:0"`.
///
/// # Safety
/// `word_spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn codim_algebra_new(
    m: u32,
    word_spec: *const c_char,
    out: *mut *mut CodimAlgebra,
) -> CodimStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(CodimStatus::NullPointer, "output pointer is null"));
        }
        let word = cli::parse_word_spec(str_arg(word_spec, "word specification")?)?;
        let spec = AlgebraSpec::new(m, word)?;
        *out = Box::into_raw(Box::new(CodimAlgebra { spec }));
        Ok(())
    })
}

/// Releases an algebra; null is ignored.
///
/// # Safety
/// `algebra` must come from [`codim_algebra_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn codim_algebra_free(algebra: *mut CodimAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// `c_n(A)`, or `c_n(A#)` when `unital`. A null `budget` means the default.
///
/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn codim_codim(
    algebra: *const CodimAlgebra,
    n: u32,
    unital: bool,
    budget: *const CodimBudget,
    out: *mut u64,
) -> CodimStatus {
    guard(|| {
        let r = codim::codim(algebra_arg(algebra)?, n as usize, unital, &budget_arg(budget)?)?;
        write_u64(out, r.value)
    })
}

/// `c_n^gr(A)` under a grading string such as `"001"`.
///
/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn codim_graded_codim(
    algebra: *const CodimAlgebra,
    grading: *const c_char,
    n: u32,
    unital: bool,
    budget: *const CodimBudget,
    out: *mut u64,
) -> CodimStatus {
    guard(|| {
        let spec = algebra_arg(algebra)?;
        let r = codim::graded_codim(spec, grading_arg(grading)?, n as usize, unital, &budget_arg(budget)?)?;
        write_u64(out, r.value)
    })
}

/// `c_{k,nk}(A)`: `k` even and `nk` odd variables.
///
/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn codim_partial_codim(
    algebra: *const CodimAlgebra,
    grading: *const c_char,
    k: u32,
    nk: u32,
    unital: bool,
    budget: *const CodimBudget,
    out: *mut u64,
) -> CodimStatus {
    guard(|| {
        let spec = algebra_arg(algebra)?;
        let g = grading_arg(grading)?;
        let r = codim::partial_graded_codim(spec, g, k as usize, nk as usize, unital, &budget_arg(budget)?)?;
        write_u64(out, r.value)
    })
}

/// Dimension of the degree-`(k, nk)` part of the relatively free graded
/// algebra in `d0` even and `d1` odd generators.
///
/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn codim_relfree_dim(
    algebra: *const CodimAlgebra,
    grading: *const c_char,
    d0: u32,
    d1: u32,
    k: u32,
    nk: u32,
    unital: bool,
    budget: *const CodimBudget,
    out: *mut u64,
) -> CodimStatus {
    guard(|| {
        let spec = algebra_arg(algebra)?;
        let g = grading_arg(grading)?;
        let r = codim::relfree_dim(
            spec,
            g,
            d0 as usize,
            d1 as usize,
            k as usize,
            nk as usize,
            unital,
            &budget_arg(budget)?,
        )?;
        write_u64(out, r.value)
    })
}

/// `β = 1/(m + α)` of the algebra.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn codim_beta(algebra: *const CodimAlgebra, out: *mut f64) -> CodimStatus {
    guard(|| write_f64(out, asym::beta_of(algebra_arg(algebra)?).to_f64()))
}

/// `Φ(x, 1 − x)` for `x ∈ [0, 1]`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn codim_phi2(x: f64, out: *mut f64) -> CodimStatus {
    guard(|| {
        if !(0.0..=1.0).contains(&x) {
            return Err(fail(CodimStatus::InvalidInput, format!("x = {x} is outside [0, 1]")));
        }
        write_f64(out, asym::phi2(&Real::from_f64(x))?.to_f64())
    })
}

/// Factor complexity `Comp(n)` of a word specification.
///
/// # Safety
/// `word_spec` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn codim_complexity(
    word_spec: *const c_char,
    n: u32,
    scan_budget: u64,
    out: *mut u64,
) -> CodimStatus {
    guard(|| {
        let ws = cli::parse_word_spec(str_arg(word_spec, "word specification")?)?;
        let budget = usize::try_from(scan_budget).unwrap_or(usize::MAX);
        write_u64(out, words::complexity(&ws, n as usize, budget)? as u128)
    })
}

/// Runs a command-line invocation (without the program name), e.g.
/// `{"codim", "--n", "3"}`, and returns its rendered report. The result must
/// be released with [`codim_string_free`]. `--output` is ignored.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn codim_run(argc: usize, argv: *const *const c_char, out: *mut *mut c_char) -> CodimStatus {
    guard(|| {
        if out.is_null() || (argc > 0 && argv.is_null()) {
            return Err(fail(CodimStatus::NullPointer, "argv or output pointer is null"));
        }
        let mut args = vec![cli::TOOL.to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argument")?.to_string());
        }
        let parsed =
            <Cli as clap::Parser>::try_parse_from(args).map_err(|e| fail(CodimStatus::InvalidInput, e.to_string()))?;
        let config = RunConfig::resolve(&parsed.command)?;
        let text = cli::run(&config)?.render()?;
        *out = CString::new(text)
            .map_err(|_| fail(CodimStatus::InvalidInput, "report contains NUL"))?
            .into_raw();
        Ok(())
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn codim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_values_match_exit_codes() {
        assert_eq!(CodimStatus::InvalidInput as i32, cli::EXIT_INVALID);
        assert_eq!(CodimStatus::BudgetExceeded as i32, cli::EXIT_BUDGET);
    }

    #[test]
    fn errors_are_recorded_per_thread() {
        let mut out = 0u64;
        let s = unsafe { codim_complexity(c"periodic:".as_ptr(), 3, 1000, &mut out) };
        assert_eq!(s, CodimStatus::InvalidInput);
        let msg = unsafe { CStr::from_ptr(codim_last_error()) }
            .to_str()
            .unwrap()
            .to_owned();
        assert!(msg.contains("position 9"), "{msg}");
        std::thread::spawn(|| {
            assert_eq!(unsafe { CStr::from_ptr(codim_last_error()) }.to_bytes(), b"");
        })
        .join()
        .unwrap();
    }
}
