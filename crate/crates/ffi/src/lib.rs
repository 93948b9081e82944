//! C ABI over `mlmkit`.
//!
//! Every fallible call returns an [`MlmStatus`] and writes its result through
//! an out-pointer. On failure, [`mlm_last_error`] describes the problem for
//! the calling thread. Handles and strings returned by the library are owned
//! by the caller and released with the matching `*_free` function. Integers
//! cross the boundary as decimal strings since they are unbounded.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mlmkit::text::{self, PolyInput};
use mlmkit::{
    count_perfect_matchings, eval_circuit, eval_pisigmapi, exact_max_mlm, greedy_max_mlm,
    permanent, Error, EvalBudget, MultilinearTable,
};
use num_bigint::BigInt;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlmStatus {
    Ok = 0,
    Validation = 1,
    Shape = 2,
    Syntax = 3,
    /// A table-size, work or search cap was hit.
    Resource = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
    /// Internal failure; the library state is unaffected.
    Panic = 7,
}

/// A parsed clause list or circuit.
pub struct MlmPoly(PolyInput);

/// Multilinear monomials of a polynomial with their coefficients.
pub struct MlmTable(MultilinearTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(MlmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Shape(_) => MlmStatus::Shape,
            Error::Validation(_) => MlmStatus::Validation,
            Error::Syntax { .. } => MlmStatus::Syntax,
            Error::Resource(_) => MlmStatus::Resource,
        };
        Fail(status, e.to_string())
    }
}

fn set_last_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MlmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            MlmStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(_) => {
            set_last_error(Some("internal panic".into()));
            MlmStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(MlmStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `s` is null or a valid nul-terminated string.
unsafe fn input_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(MlmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live value of type `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or writable.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `out` is null or writable.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(MlmStatus::Validation, "output contains nul".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn budget(max_entries: usize, max_work: u64) -> EvalBudget {
    let default = EvalBudget::default();
    EvalBudget {
        max_table_entries: if max_entries == 0 { default.max_table_entries } else { max_entries },
        max_total_work: if max_work == 0 { default.max_total_work } else { max_work },
    }
}

/// Message for the last failed call on this thread, or null after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mlm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a clause list or a circuit (detected from the text).
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_poly_parse(text: *const c_char, out: *mut *mut MlmPoly) -> MlmStatus {
    guard(|| {
        let parsed = text::parse_input(input_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(MlmPoly(parsed))))
    })
}

/// # Safety
/// `p` is null or a handle from [`mlm_poly_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlm_poly_free(p: *mut MlmPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `p` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlm_poly_num_vars(p: *const MlmPoly) -> usize {
    match p.as_ref() {
        Some(MlmPoly(PolyInput::Poly(f))) => f.num_vars(),
        Some(MlmPoly(PolyInput::Circuit(c))) => c.num_vars(),
        None => 0,
    }
}

/// # Safety
/// `p` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlm_poly_is_circuit(p: *const MlmPoly) -> bool {
    matches!(p.as_ref(), Some(MlmPoly(PolyInput::Circuit(_))))
}

/// Canonical text of the polynomial or circuit.
///
/// # Safety
/// `p` is a live handle; `out` is writable. Free the string with
/// [`mlm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mlm_poly_format(p: *const MlmPoly, out: *mut *mut c_char) -> MlmStatus {
    guard(|| {
        let s = match &handle(p, "poly")?.0 {
            PolyInput::Poly(f) => text::format_poly(f),
            PolyInput::Circuit(c) => text::format_circuit(c),
        };
        write_string(out, s)
    })
}

/// Computes the multilinear table. A zero limit selects the default.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_poly_evaluate(
    p: *const MlmPoly,
    max_table_entries: usize,
    max_total_work: u64,
    out: *mut *mut MlmTable,
) -> MlmStatus {
    guard(|| {
        let b = budget(max_table_entries, max_total_work);
        let table = match &handle(p, "poly")?.0 {
            PolyInput::Poly(f) => eval_pisigmapi(f, &b)?,
            PolyInput::Circuit(c) => eval_circuit(c, &b)?,
        };
        write_out(out, Box::into_raw(Box::new(MlmTable(table))))
    })
}

/// Longest multilinear monomial from disjoint terms of distinct clauses,
/// greedy or exhaustive. Writes its length and its variables as `x1,x3`.
///
/// # Safety
/// `p` is a live handle; the out-pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_poly_max_mlm(
    p: *const MlmPoly,
    exact: bool,
    out_length: *mut usize,
    out_vars: *mut *mut c_char,
) -> MlmStatus {
    guard(|| {
        let PolyInput::Poly(f) = &handle(p, "poly")?.0 else {
            return Err(Fail(MlmStatus::Shape, "needs a clause list, not a circuit".into()));
        };
        let sel = if exact {
            exact_max_mlm(f, mlmkit::maxmlm::EXACT_SEARCH_LIMIT)?
        } else {
            greedy_max_mlm(f)
        };
        write_out(out_length, sel.length())?;
        write_string(out_vars, sel.varset.to_string())
    })
}

/// # Safety
/// `t` is null or a handle from [`mlm_poly_evaluate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlm_table_free(t: *mut MlmTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of monomials with a non-zero coefficient, or 0 for null.
///
/// # Safety
/// `t` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlm_table_len(t: *const MlmTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// Coefficient of a monomial written like `x1*x3` (`1` for the constant).
///
/// # Safety
/// `t` is a live handle, `monomial` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_table_coefficient(
    t: *const MlmTable,
    monomial: *const c_char,
    out: *mut *mut c_char,
) -> MlmStatus {
    guard(|| {
        let t = handle(t, "table")?;
        let pi = text::parse_monomial(input_str(monomial, "monomial")?)?;
        write_string(out, t.0.coefficient(&pi).to_string())
    })
}

/// Sum of all coefficients.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_table_sum(t: *const MlmTable, out: *mut *mut c_char) -> MlmStatus {
    guard(|| write_string(out, handle(t, "table")?.0.sum().to_string()))
}

/// One `<vars> <coefficient>` line per monomial, in canonical order.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_table_format(t: *const MlmTable, out: *mut *mut c_char) -> MlmStatus {
    guard(|| write_string(out, text::format_table(&handle(t, "table")?.0)))
}

/// Permanent of a matrix given as CSV rows of signed integers.
///
/// # Safety
/// `csv` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_permanent(csv: *const c_char, out: *mut *mut c_char) -> MlmStatus {
    guard(|| {
        let a = text::parse_matrix(input_str(csv, "csv")?)?;
        let v: BigInt = permanent(&a, &EvalBudget::default())?;
        write_string(out, v.to_string())
    })
}

/// Perfect matchings of a bipartite graph in `bigraph <t>` / `e i j` form.
///
/// # Safety
/// `graph` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlm_count_perfect_matchings(
    graph: *const c_char,
    out: *mut *mut c_char,
) -> MlmStatus {
    guard(|| {
        let g = text::parse_bigraph(input_str(graph, "graph")?)?;
        write_string(out, count_perfect_matchings(&g, &EvalBudget::default())?.to_string())
    })
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
