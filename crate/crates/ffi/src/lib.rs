//! C ABI for `nichols-zn`.
//!
//! Every fallible call returns an [`NzStatus`]; on failure a message is kept
//! per thread and can be copied out with [`nz_last_error_message`]. Matrices
//! are opaque [`NzMatrix`] handles owned by the caller and released with
//! [`nz_matrix_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use nichols_zn::braiding::{gdd_of, BraidingMatrix, Gdd};
use nichols_zn::classify::{self, weyl_reflect, CaseLabel};
use nichols_zn::modarith::{legendre, solve_quadratic, QuadCongruence};
use nichols_zn::nichols::rank3_dimension;
use nichols_zn::realize::{realize_matrix, Budget};
use nichols_zn::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NzStatus {
    Ok = 0,
    InvalidInput = 1,
    BudgetExceeded = 2,
    Unsupported = 3,
    BufferTooSmall = 4,
    NullPointer = 5,
    Internal = 6,
}

/// Opaque braiding matrix.
pub struct NzMatrix(BraidingMatrix);

/// Outcome of a classification. `m` and `m2` are 0 when absent.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NzVerdict {
    /// Index into the label list; see [`nz_label_name`].
    pub label: u32,
    pub m: u64,
    pub m2: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: NzStatus, msg: impl Into<String>) -> NzStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> NzStatus {
    let status = match e {
        Error::BudgetExceeded(_) => NzStatus::BudgetExceeded,
        Error::UnsupportedModulus { .. } => NzStatus::Unsupported,
        _ => NzStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> NzStatus) -> NzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(NzStatus::Internal, "internal panic"),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(NzStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

fn labels() -> Vec<CaseLabel> {
    CaseLabel::all().collect()
}

/// Number of labels; valid indices are `0..nz_label_count()`.
#[no_mangle]
pub extern "C" fn nz_label_count() -> u32 {
    labels().len() as u32
}

/// Static, NUL-terminated display name of a label, or null when out of range.
#[no_mangle]
pub extern "C" fn nz_label_name(label: u32) -> *const c_char {
    static NAMES: OnceLock<Vec<CString>> = OnceLock::new();
    let names = NAMES.get_or_init(|| CaseLabel::all().map(|l| CString::new(l.name()).expect("no NUL")).collect());
    names.get(label as usize).map_or(ptr::null(), |s| s.as_ptr())
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `cap - 1` bytes) and returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn nz_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds a matrix from `rank * rank` row-major exponents; negative values
/// are reduced mod `n`, values `>= n` are rejected.
///
/// # Safety
/// `exponents` must point to `rank * rank` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nz_matrix_new(n: u64, rank: usize, exponents: *const i64, out: *mut *mut NzMatrix) -> NzStatus {
    non_null!(exponents, out);
    guard(|| {
        if rank == 0 {
            return fail(NzStatus::InvalidInput, "rank must be at least 1");
        }
        let Some(len) = rank.checked_mul(rank) else {
            return fail(NzStatus::InvalidInput, "rank too large");
        };
        let flat = std::slice::from_raw_parts(exponents, len);
        let rows: Vec<Vec<i64>> = flat.chunks(rank).map(<[i64]>::to_vec).collect();
        match BraidingMatrix::from_rows(n, &rows) {
            Ok(b) => {
                *out = Box::into_raw(Box::new(NzMatrix(b)));
                NzStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a matrix; null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nz_matrix_free(m: *mut NzMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nz_matrix_rank(m: *const NzMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rank())
}

/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nz_matrix_modulus(m: *const NzMatrix) -> u64 {
    m.as_ref().map_or(0, |m| m.0.modulus())
}

/// Entry `(i, j)`, 0-based.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nz_matrix_get(m: *const NzMatrix, i: usize, j: usize, out: *mut u64) -> NzStatus {
    non_null!(m, out);
    let b = &(*m).0;
    if i >= b.rank() || j >= b.rank() {
        return fail(NzStatus::InvalidInput, format!("index ({i}, {j}) out of range"));
    }
    *out = b.get(i, j);
    NzStatus::Ok
}

/// Searches for `x`, `y` with `x_i·y_j ≡ a_ij`. On success `*found` says
/// whether a witness exists; if so it is written to `x` and `y`, each of
/// length `rank`.
///
/// # Safety
/// `m` must be a live handle; `x`, `y` must hold `rank` values; `found` writable.
#[no_mangle]
pub unsafe extern "C" fn nz_realize(m: *const NzMatrix, x: *mut u64, y: *mut u64, found: *mut bool) -> NzStatus {
    non_null!(m, x, y, found);
    guard(|| match realize_matrix(&(*m).0, Budget::from_env()) {
        Ok(Some(w)) => {
            ptr::copy_nonoverlapping(w.x.as_ptr(), x, w.x.len());
            ptr::copy_nonoverlapping(w.y.as_ptr(), y, w.y.len());
            *found = true;
            NzStatus::Ok
        }
        Ok(None) => {
            *found = false;
            NzStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Classifies the matrix's diagram (any rank).
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nz_classify(m: *const NzMatrix, out: *mut NzVerdict) -> NzStatus {
    non_null!(m, out);
    guard(|| classify_gdd(&gdd_of(&(*m).0), out))
}

/// Classifies the rank-two diagram with vertex exponents `d1`, `d2` and edge `e` over ℤₙ.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nz_classify_rank2(n: u64, d1: i64, d2: i64, e: i64, out: *mut NzVerdict) -> NzStatus {
    non_null!(out);
    guard(|| match Gdd::new(n, &[d1, d2], &[((0, 1), e)]) {
        Ok(g) => classify_gdd(&g, out),
        Err(err) => from_error(err),
    })
}

unsafe fn classify_gdd(g: &Gdd, out: *mut NzVerdict) -> NzStatus {
    match classify::classify(g, Budget::from_env()) {
        Ok(v) => {
            let label = labels().iter().position(|&l| l == v.label).expect("known label") as u32;
            *out = NzVerdict { label, m: v.m.unwrap_or(0), m2: v.m2.unwrap_or(0) };
            NzStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Reflection at `vertex` (0-based) into a new handle.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nz_weyl_reflect(m: *const NzMatrix, vertex: usize, out: *mut *mut NzMatrix) -> NzStatus {
    non_null!(m, out);
    guard(|| match weyl_reflect(&(*m).0, vertex) {
        Ok(b) => {
            *out = Box::into_raw(Box::new(NzMatrix(b)));
            NzStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Solutions of `a·x² + b·x + c ≡ 0 (mod m)` in increasing order. `*len` is
/// always set to the number of solutions; `BufferTooSmall` is returned when
/// it exceeds `cap`, with nothing written.
///
/// # Safety
/// `out` must hold `cap` values (may be null when `cap` is 0); `len` writable.
#[no_mangle]
pub unsafe extern "C" fn nz_solve_quadratic(a: i64, b: i64, c: i64, m: u64, out: *mut u64, cap: usize, len: *mut usize) -> NzStatus {
    non_null!(len);
    if m == 0 {
        return from_error(Error::ZeroModulus);
    }
    guard(|| match solve_quadratic(&QuadCongruence::new(a, b, c, m)) {
        Ok(s) => {
            *len = s.len();
            if s.len() > cap {
                return fail(NzStatus::BufferTooSmall, format!("{} solutions, buffer holds {cap}", s.len()));
            }
            if !s.is_empty() {
                if out.is_null() {
                    return fail(NzStatus::NullPointer, "out is null");
                }
                ptr::copy_nonoverlapping(s.residues().as_ptr(), out, s.len());
            }
            NzStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nz_legendre(a: i64, p: u64, out: *mut i8) -> NzStatus {
    non_null!(out);
    guard(|| match legendre(a, p) {
        Ok(l) => {
            *out = l;
            NzStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Dimension of rank-three class `class` (1, 2 or 3); pass 0 for an absent
/// `m` or `m2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nz_rank3_dimension(class: u32, m: u64, m2: u64, out: *mut u64) -> NzStatus {
    non_null!(out);
    let label = match class {
        1 => CaseLabel::Rank3I,
        2 => CaseLabel::Rank3II,
        3 => CaseLabel::Rank3III,
        _ => return fail(NzStatus::InvalidInput, format!("class must be 1, 2 or 3, got {class}")),
    };
    let nz = |v: u64| (v != 0).then_some(v);
    guard(|| match rank3_dimension(label, nz(m), nz(m2)) {
        Ok(d) => match u64::try_from(d) {
            Ok(d) => {
                *out = d;
                NzStatus::Ok
            }
            Err(_) => fail(NzStatus::Unsupported, format!("dimension {d} does not fit in 64 bits")),
        },
        Err(e) => from_error(e),
    })
}
