//! C ABI for the `monocomp` library.
//!
//! Colorings and decompositions are opaque heap handles created by the
//! `monocomp_*` constructors and released with the matching `_free`
//! function. Every fallible call returns a [`MonocompStatus`]; on failure a
//! description is available from [`monocomp_last_error`] on the same thread.
//! Panics never cross the boundary and are reported as
//! `MONOCOMP_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use monocomp::bounds::{min_fractional_cover, z_lower_bound, BoundQuery};
use monocomp::coloring::EdgeColoring;
use monocomp::components::{decompose, ComponentDecomposition};
use monocomp::constructions::{blow_up, gyarfas_coloring, two_color_extremal};
use monocomp::search::{exact_m, random_coloring, SearchConfig, SearchError, Symmetry};
use monocomp::structure::detect_gyarfas_grid;
use monocomp::{best_provable_bound, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonocompStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    BudgetExceeded = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonocompSymmetry {
    None = 0,
    Vertex = 1,
    VertexColor = 2,
}

/// Opaque coloring handle.
pub struct MonocompColoring {
    inner: EdgeColoring,
}

/// Opaque decomposition handle.
pub struct MonocompDecomposition {
    inner: ComponentDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
}

fn fail(status: MonocompStatus, message: impl std::fmt::Display) -> MonocompStatus {
    set_error(message.to_string());
    status
}

/// Runs `body`, converting panics into `MONOCOMP_STATUS_INTERNAL`.
fn guard(body: impl FnOnce() -> MonocompStatus) -> MonocompStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == MonocompStatus::Ok {
                set_error("");
            }
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_owned());
            fail(MonocompStatus::Internal, message)
        }
    }
}

/// Copies `text` plus a NUL terminator into `buf` if it fits. `needed`
/// receives the full size including the terminator.
unsafe fn copy_string(text: &str, buf: *mut c_char, capacity: usize, needed: *mut usize) -> bool {
    let size = text.len() + 1;
    if !needed.is_null() {
        *needed = size;
    }
    if buf.is_null() || capacity < size {
        return false;
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf as *mut u8, text.len());
    *buf.add(text.len()) = 0;
    true
}

unsafe fn write_string(text: &str, buf: *mut c_char, capacity: usize, needed: *mut usize) -> MonocompStatus {
    if copy_string(text, buf, capacity, needed) {
        MonocompStatus::Ok
    } else {
        fail(
            MonocompStatus::BufferTooSmall,
            format!("buffer of {capacity} bytes, {} needed", text.len() + 1),
        )
    }
}

fn boxed_coloring(coloring: EdgeColoring, out: *mut *mut MonocompColoring) -> MonocompStatus {
    unsafe { *out = Box::into_raw(Box::new(MonocompColoring { inner: coloring })) };
    MonocompStatus::Ok
}

fn rational(num: i64, den: i64) -> Option<Rational> {
    (den != 0).then(|| Rational::new(BigInt::from(num), BigInt::from(den)))
}

fn split_rational(q: &Rational, num: *mut i64, den: *mut i64) -> MonocompStatus {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => {
            unsafe {
                *num = n;
                *den = d;
            }
            MonocompStatus::Ok
        }
        _ => fail(MonocompStatus::Overflow, format!("{q} does not fit in 64 bits")),
    }
}

/// Writes a description of the last failure on this thread into `buf`.
/// Does not itself change the stored description.
///
/// # Safety
/// `buf` must be null or valid for `capacity` bytes; `needed` must be null or
/// valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_last_error(buf: *mut c_char, capacity: usize, needed: *mut usize) -> MonocompStatus {
    let text = LAST_ERROR.with(|e| e.borrow().clone());
    if copy_string(&text, buf, capacity, needed) {
        MonocompStatus::Ok
    } else {
        MonocompStatus::BufferTooSmall
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn monocomp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses the coloring text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_parse(text: *const c_char, out: *mut *mut MonocompColoring) -> MonocompStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(MonocompStatus::ParseError, "input is not UTF-8");
        };
        match EdgeColoring::parse(text) {
            Ok(c) => boxed_coloring(c, out),
            Err(e) => fail(MonocompStatus::ParseError, e),
        }
    })
}

/// Builds a coloring from `C(n,2)` colors in lexicographic pair order.
///
/// # Safety
/// `colors` must be valid for `len` bytes; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_from_colors(
    n: usize,
    r: usize,
    colors: *const u8,
    len: usize,
    out: *mut *mut MonocompColoring,
) -> MonocompStatus {
    guard(|| {
        if out.is_null() || (colors.is_null() && len > 0) {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(colors, len) };
        match EdgeColoring::new(n, r, slice.to_vec()) {
            Ok(c) => boxed_coloring(c, out),
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// The affine-plane coloring of `K_{(r-1)^2}` with `r` colors.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_gyarfas(r: usize, out: *mut *mut MonocompColoring) -> MonocompStatus {
    guard(|| {
        if out.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        match gyarfas_coloring(r) {
            Ok(c) => boxed_coloring(c, out),
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// # Safety
/// `base` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_blow_up(
    base: *const MonocompColoring,
    k: usize,
    out: *mut *mut MonocompColoring,
) -> MonocompStatus {
    guard(|| {
        if base.is_null() || out.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        match blow_up(&(*base).inner, k) {
            Ok(c) => boxed_coloring(c, out),
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_two_color_extremal(n: usize, out: *mut *mut MonocompColoring) -> MonocompStatus {
    guard(|| {
        if out.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        match two_color_extremal(n) {
            Ok(c) => boxed_coloring(c, out),
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_random(
    n: usize,
    r: usize,
    seed: u64,
    out: *mut *mut MonocompColoring,
) -> MonocompStatus {
    guard(|| {
        if out.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        match random_coloring(n, r, seed) {
            Ok(c) => boxed_coloring(c, out),
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `coloring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_n(coloring: *const MonocompColoring) -> usize {
    coloring.as_ref().map_or(0, |c| c.inner.n())
}

/// Color count, or 0 for a null handle.
///
/// # Safety
/// `coloring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_r(coloring: *const MonocompColoring) -> usize {
    coloring.as_ref().map_or(0, |c| c.inner.r())
}

/// # Safety
/// `coloring` must be a live handle; `color` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_color(
    coloring: *const MonocompColoring,
    u: usize,
    v: usize,
    color: *mut usize,
) -> MonocompStatus {
    guard(|| {
        let (Some(c), false) = (coloring.as_ref(), color.is_null()) else {
            return fail(MonocompStatus::NullPointer, "null argument");
        };
        let n = c.inner.n();
        if u == v || u >= n || v >= n {
            return fail(MonocompStatus::InvalidArgument, format!("no edge ({u}, {v}) in K_{n}"));
        }
        *color = c.inner.color(u, v);
        MonocompStatus::Ok
    })
}

/// Serializes to the text format. Call with a null `buf` to learn the size.
///
/// # Safety
/// `coloring` must be a live handle; `buf` must be null or valid for
/// `capacity` bytes; `needed` must be null or valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_to_text(
    coloring: *const MonocompColoring,
    buf: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> MonocompStatus {
    guard(|| match coloring.as_ref() {
        Some(c) => write_string(&c.inner.to_text(), buf, capacity, needed),
        None => fail(MonocompStatus::NullPointer, "null argument"),
    })
}

/// # Safety
/// `coloring` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn monocomp_coloring_free(coloring: *mut MonocompColoring) {
    if !coloring.is_null() {
        drop(Box::from_raw(coloring));
    }
}

/// # Safety
/// `coloring` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_decompose(
    coloring: *const MonocompColoring,
    out: *mut *mut MonocompDecomposition,
) -> MonocompStatus {
    guard(|| {
        let (Some(c), false) = (coloring.as_ref(), out.is_null()) else {
            return fail(MonocompStatus::NullPointer, "null argument");
        };
        *out = Box::into_raw(Box::new(MonocompDecomposition {
            inner: decompose(&c.inner),
        }));
        MonocompStatus::Ok
    })
}

/// Number of components, or 0 for a null handle.
///
/// # Safety
/// `decomp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn monocomp_decomposition_len(decomp: *const MonocompDecomposition) -> usize {
    decomp.as_ref().map_or(0, |d| d.inner.len())
}

/// Color, vertex count and edge count of component `index`.
///
/// # Safety
/// `decomp` must be a live handle; output pointers must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_decomposition_component(
    decomp: *const MonocompDecomposition,
    index: usize,
    color: *mut usize,
    vertices: *mut usize,
    edges: *mut u64,
) -> MonocompStatus {
    guard(|| {
        let Some(d) = decomp.as_ref() else {
            return fail(MonocompStatus::NullPointer, "null argument");
        };
        if color.is_null() || vertices.is_null() || edges.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        if index >= d.inner.len() {
            return fail(
                MonocompStatus::InvalidArgument,
                format!("component {index} of {}", d.inner.len()),
            );
        }
        let c = d.inner.component(index);
        *color = c.color;
        *vertices = c.len();
        *edges = c.edge_count;
        MonocompStatus::Ok
    })
}

/// `max_C |E(C)| / C(n,2)` as a reduced fraction.
///
/// # Safety
/// `decomp` must be a live handle; `num` and `den` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_decomposition_max_edge_fraction(
    decomp: *const MonocompDecomposition,
    num: *mut i64,
    den: *mut i64,
) -> MonocompStatus {
    guard(|| {
        let (Some(d), false) = (decomp.as_ref(), num.is_null() || den.is_null()) else {
            return fail(MonocompStatus::NullPointer, "null argument");
        };
        match d.inner.max_edge_fraction() {
            Ok(q) => split_rational(&q, num, den),
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// Minimum total weight of a fractional cover at level `gamma_num/gamma_den`.
///
/// # Safety
/// `decomp` must be a live handle; `num` and `den` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_min_fractional_cover(
    decomp: *const MonocompDecomposition,
    gamma_num: i64,
    gamma_den: i64,
    num: *mut i64,
    den: *mut i64,
) -> MonocompStatus {
    guard(|| {
        let (Some(d), false) = (decomp.as_ref(), num.is_null() || den.is_null()) else {
            return fail(MonocompStatus::NullPointer, "null argument");
        };
        let Some(gamma) = rational(gamma_num, gamma_den) else {
            return fail(MonocompStatus::InvalidArgument, "zero denominator");
        };
        match min_fractional_cover(&d.inner, &gamma) {
            Ok(lp) => split_rational(&lp.optimum, num, den),
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// Best lower bound on `max_edge_fraction` from the cover sweep, as a
/// double, with the level where it is attained.
///
/// # Safety
/// `decomp` must be a live handle; output pointers must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_best_bound(
    decomp: *const MonocompDecomposition,
    z: *mut f64,
    gamma_num: *mut i64,
    gamma_den: *mut i64,
) -> MonocompStatus {
    guard(|| {
        let Some(d) = decomp.as_ref() else {
            return fail(MonocompStatus::NullPointer, "null argument");
        };
        if z.is_null() || gamma_num.is_null() || gamma_den.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        match best_provable_bound(&d.inner) {
            Ok(best) => {
                *z = best.z.to_f64();
                split_rational(&best.gamma, gamma_num, gamma_den)
            }
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// Sets `found` to 1 when the 4-coloring has the 3x3 cell structure of the
/// affine-plane coloring of `K_9`, else 0.
///
/// # Safety
/// `decomp` must be a live handle; `found` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_detect_grid(decomp: *const MonocompDecomposition, found: *mut i32) -> MonocompStatus {
    guard(|| {
        let (Some(d), false) = (decomp.as_ref(), found.is_null()) else {
            return fail(MonocompStatus::NullPointer, "null argument");
        };
        match detect_gyarfas_grid(&d.inner) {
            Ok(grid) => {
                *found = i32::from(grid.is_some());
                MonocompStatus::Ok
            }
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}

/// # Safety
/// `decomp` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn monocomp_decomposition_free(decomp: *mut MonocompDecomposition) {
    if !decomp.is_null() {
        drop(Box::from_raw(decomp));
    }
}

/// Closed-form lower bound at `(r, gamma, x)`: the decimal value goes to
/// `value`, and the exact form `a + b*sqrt(d)` to `buf` when it is non-null.
///
/// # Safety
/// `value` must be valid for writing; `buf` must be null or valid for
/// `capacity` bytes; `needed` must be null or valid for writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_z_lower_bound(
    r: usize,
    gamma_num: i64,
    gamma_den: i64,
    x_num: i64,
    x_den: i64,
    value: *mut f64,
    buf: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> MonocompStatus {
    guard(|| {
        if value.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        let (Some(gamma), Some(x)) = (rational(gamma_num, gamma_den), rational(x_num, x_den)) else {
            return fail(MonocompStatus::InvalidArgument, "zero denominator");
        };
        let z = match BoundQuery::new(r, gamma, x).and_then(|q| z_lower_bound(&q)) {
            Ok(z) => z,
            Err(e) => return fail(MonocompStatus::InvalidArgument, e),
        };
        *value = z.to_f64();
        if buf.is_null() && needed.is_null() {
            return MonocompStatus::Ok;
        }
        write_string(&z.to_string(), buf, capacity, needed)
    })
}

/// Exhaustive search for the minimum over colorings of the largest
/// component. `witness` may be null; otherwise it receives a new handle.
///
/// # Safety
/// `value` must be valid for writing; `witness` must be null or valid for
/// writing.
#[no_mangle]
pub unsafe extern "C" fn monocomp_exact_m(
    n: usize,
    r: usize,
    symmetry: MonocompSymmetry,
    budget_nodes: u64,
    value: *mut u64,
    witness: *mut *mut MonocompColoring,
) -> MonocompStatus {
    guard(|| {
        if value.is_null() {
            return fail(MonocompStatus::NullPointer, "null argument");
        }
        let mut config = SearchConfig::new(n, r).with_symmetry(match symmetry {
            MonocompSymmetry::None => Symmetry::None,
            MonocompSymmetry::Vertex => Symmetry::Vertex,
            MonocompSymmetry::VertexColor => Symmetry::VertexColor,
        });
        config.budget_nodes = budget_nodes;
        match exact_m(&config) {
            Ok(result) => {
                *value = result.value;
                if !witness.is_null() {
                    *witness = Box::into_raw(Box::new(MonocompColoring { inner: result.witness }));
                }
                MonocompStatus::Ok
            }
            Err(e @ (SearchError::BudgetExceeded { .. } | SearchError::NodeLimit { .. })) => {
                fail(MonocompStatus::BudgetExceeded, e)
            }
            Err(e) => fail(MonocompStatus::InvalidArgument, e),
        }
    })
}
