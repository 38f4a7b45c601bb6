//! C ABI for camcoh.
//!
//! Every object crosses the boundary as an opaque pointer that must be
//! released with the matching `*_free` function. Every fallible call returns a
//! [`CamcohStatus`]; on failure a description is available from
//! [`camcoh_last_error`] until the next failing call on the same thread.
//! Panics never cross the boundary: they are reported as
//! `CAMCOH_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use camcoh::complex::{ComplexBuilder, ComplexError, FilteredComplex};
use camcoh::diagram::{diagram_equal, DiagramPoint, PersistenceDiagram};
use camcoh::engine::{compute_persistence, EngineError, EngineOptions};
use camcoh::field::{FieldError, FieldSpec};
use camcoh::io::{read_filtration, BuildError};
use camcoh::oracle;
use camcoh::rips::{build_rips, PointCloud};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CamcohStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The modulus is not a prime that fits in 32 bits.
    InvalidField = 3,
    /// Not a valid filtered complex: missing face, decreasing values, NaN.
    InvalidComplex = 4,
    ParseError = 5,
    IoError = 6,
    OutOfRange = 7,
    /// An engine invariant failed. Please report it.
    Internal = 8,
    Panic = 9,
}

/// Engine configuration. Use [`camcoh_options_default`] for the recommended
/// settings.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CamcohOptions {
    pub lazy: bool,
    pub reorder: bool,
    pub emit_zero_length: bool,
}

/// One diagram point. `death` is `+inf` for essential classes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CamcohPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

/// Peak sizes and operation count of one engine run.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CamcohStats {
    pub field_ops: u64,
    pub matrix_nonzeros_peak: usize,
    pub g_max_total: usize,
    pub s_max_total: usize,
}

/// Mutable set of simplices, validated by [`camcoh_builder_finalize`].
pub struct CamcohBuilder {
    inner: ComplexBuilder,
}

/// Validated filtered complex.
pub struct CamcohComplex {
    inner: FilteredComplex,
}

/// Persistence diagram with its points in (dim, birth, death) order.
pub struct CamcohDiagram {
    points: Vec<DiagramPoint>,
    inner: PersistenceDiagram,
}

struct Failure(CamcohStatus, String);

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure(CamcohStatus::InvalidField, e.to_string())
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure(CamcohStatus::InvalidComplex, e.to_string())
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        let status = match &e {
            BuildError::Parse { .. } => CamcohStatus::ParseError,
            BuildError::Io(_) => CamcohStatus::IoError,
            BuildError::Complex(_) => CamcohStatus::InvalidComplex,
            BuildError::DimensionMismatch { .. } | BuildError::InvalidParameter(_) => {
                CamcohStatus::InvalidArgument
            }
        };
        Failure(status, e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure(CamcohStatus::Internal, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn null(what: &str) -> Failure {
    Failure(CamcohStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CamcohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CamcohStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            CamcohStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn into_diagram(d: PersistenceDiagram) -> CamcohDiagram {
    CamcohDiagram { points: d.points(), inner: d }
}

/// Message of the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn camcoh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static, NUL-terminated version string.
#[no_mangle]
pub extern "C" fn camcoh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Lazy evaluation and reordering on, zero-length pairs suppressed.
#[no_mangle]
pub extern "C" fn camcoh_options_default() -> CamcohOptions {
    let d = EngineOptions::default();
    CamcohOptions { lazy: d.lazy, reorder: d.reorder, emit_zero_length: d.emit_zero_length }
}

/// New empty builder. Free with [`camcoh_builder_free`].
#[no_mangle]
pub extern "C" fn camcoh_builder_new() -> *mut CamcohBuilder {
    Box::into_raw(Box::new(CamcohBuilder { inner: ComplexBuilder::new() }))
}

/// # Safety
/// `builder` is null or came from [`camcoh_builder_new`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn camcoh_builder_free(builder: *mut CamcohBuilder) {
    if !builder.is_null() {
        drop(Box::from_raw(builder));
    }
}

/// Adds the simplex spanned by `vertices[0..n]` at `value`. Re-inserting a
/// simplex keeps the smaller value.
///
/// # Safety
/// `builder` is a live builder; `vertices` points to `n` readable values.
#[no_mangle]
pub unsafe extern "C" fn camcoh_builder_insert(
    builder: *mut CamcohBuilder,
    vertices: *const u32,
    n: usize,
    value: f64,
) -> CamcohStatus {
    guard(|| {
        let b = builder.as_mut().ok_or_else(|| null("builder"))?;
        if vertices.is_null() {
            return Err(null("vertices"));
        }
        let verts = std::slice::from_raw_parts(vertices, n);
        b.inner.insert_simplex(verts, value)?;
        Ok(())
    })
}

/// Adds every missing face, valued at the minimum over its cofaces.
///
/// # Safety
/// `builder` is a live builder.
#[no_mangle]
pub unsafe extern "C" fn camcoh_builder_close(builder: *mut CamcohBuilder) -> CamcohStatus {
    guard(|| {
        let b = builder.as_mut().ok_or_else(|| null("builder"))?;
        b.inner = std::mem::take(&mut b.inner).close();
        Ok(())
    })
}

/// Validates the builder contents into a new complex. The builder is left
/// unchanged and still has to be freed.
///
/// # Safety
/// `builder` is a live builder; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn camcoh_builder_finalize(
    builder: *const CamcohBuilder,
    out: *mut *mut CamcohComplex,
) -> CamcohStatus {
    guard(|| {
        let b = builder.as_ref().ok_or_else(|| null("builder"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = b.inner.clone().finalize()?;
        write_out(out, CamcohComplex { inner });
        Ok(())
    })
}

/// Reads a filtration file: one simplex per line, `value v0 v1 ...`.
///
/// # Safety
/// `path` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn camcoh_complex_from_filtration_file(
    path: *const c_char,
    out: *mut *mut CamcohComplex,
) -> CamcohStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|e| Failure(CamcohStatus::InvalidArgument, format!("path is not UTF-8: {e}")))?;
        let inner = read_filtration(path)?;
        write_out(out, CamcohComplex { inner });
        Ok(())
    })
}

/// Rips complex of `n_points` points stored row-major in `coords`
/// (`n_points * ambient_dim` values), up to diameter `rho_max` and dimension
/// `max_dim`.
///
/// # Safety
/// `coords` points to `n_points * ambient_dim` readable values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn camcoh_complex_from_points(
    coords: *const f64,
    n_points: usize,
    ambient_dim: usize,
    rho_max: f64,
    max_dim: usize,
    out: *mut *mut CamcohComplex,
) -> CamcohStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null("coords"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let total = n_points
            .checked_mul(ambient_dim)
            .ok_or_else(|| Failure(CamcohStatus::InvalidArgument, "point buffer too large".into()))?;
        let flat = std::slice::from_raw_parts(coords, total);
        let points = if ambient_dim == 0 {
            vec![Vec::new(); n_points]
        } else {
            flat.chunks(ambient_dim).map(<[f64]>::to_vec).collect()
        };
        let pc = PointCloud::new(points)?;
        let inner = build_rips(&pc, rho_max, max_dim)?;
        write_out(out, CamcohComplex { inner });
        Ok(())
    })
}

/// Number of simplices; 0 for a null handle.
///
/// # Safety
/// `complex` is null or a live complex.
#[no_mangle]
pub unsafe extern "C" fn camcoh_complex_len(complex: *const CamcohComplex) -> usize {
    complex.as_ref().map_or(0, |c| c.inner.len())
}

/// # Safety
/// `complex` is null or a live complex that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn camcoh_complex_free(complex: *mut CamcohComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Persistence diagram over the prime field of characteristic `p`.
/// `options` and `stats` may be null; a null `options` means the defaults.
///
/// # Safety
/// `complex` is a live complex; `options` is null or readable; `out` is
/// writable; `stats` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn camcoh_compute(
    complex: *const CamcohComplex,
    p: u64,
    options: *const CamcohOptions,
    out: *mut *mut CamcohDiagram,
    stats: *mut CamcohStats,
) -> CamcohStatus {
    guard(|| {
        let c = complex.as_ref().ok_or_else(|| null("complex"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let o = options.as_ref().copied().unwrap_or_else(|| camcoh_options_default());
        let field = FieldSpec::new(p)?;
        let opts = EngineOptions {
            lazy: o.lazy,
            reorder: o.reorder,
            emit_zero_length: o.emit_zero_length,
            record_stats: !stats.is_null(),
            check_invariants: false,
        };
        let (d, s) = compute_persistence(&c.inner, field, opts)?;
        if let Some(st) = stats.as_mut() {
            *st = CamcohStats {
                field_ops: s.field_ops,
                matrix_nonzeros_peak: s.matrix_nonzeros_peak,
                g_max_total: s.g_max_total,
                s_max_total: s.s_max_total,
            };
        }
        write_out(out, into_diagram(d));
        Ok(())
    })
}

/// Diagram computed by plain boundary-matrix reduction, for cross-checking.
///
/// # Safety
/// `complex` is a live complex; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn camcoh_oracle(
    complex: *const CamcohComplex,
    p: u64,
    emit_zero_length: bool,
    out: *mut *mut CamcohDiagram,
) -> CamcohStatus {
    guard(|| {
        let c = complex.as_ref().ok_or_else(|| null("complex"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let field = FieldSpec::new(p)?;
        write_out(out, into_diagram(oracle::reduce_with(&c.inner, &field, emit_zero_length)));
        Ok(())
    })
}

/// Number of points; 0 for a null handle.
///
/// # Safety
/// `diagram` is null or a live diagram.
#[no_mangle]
pub unsafe extern "C" fn camcoh_diagram_len(diagram: *const CamcohDiagram) -> usize {
    diagram.as_ref().map_or(0, |d| d.points.len())
}

/// The `index`-th point in (dim, birth, death) order.
///
/// # Safety
/// `diagram` is a live diagram; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn camcoh_diagram_get(
    diagram: *const CamcohDiagram,
    index: usize,
    out: *mut CamcohPoint,
) -> CamcohStatus {
    guard(|| {
        let d = diagram.as_ref().ok_or_else(|| null("diagram"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let p = d.points.get(index).ok_or_else(|| {
            Failure(CamcohStatus::OutOfRange, format!("index {index} of {} points", d.points.len()))
        })?;
        *out = CamcohPoint { dim: p.dim, birth: p.birth, death: p.death };
        Ok(())
    })
}

/// Multiset equality of the points of two diagrams.
///
/// # Safety
/// `a` and `b` are live diagrams; `equal` is writable.
#[no_mangle]
pub unsafe extern "C" fn camcoh_diagram_equal(
    a: *const CamcohDiagram,
    b: *const CamcohDiagram,
    equal: *mut bool,
) -> CamcohStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        let equal = equal.as_mut().ok_or_else(|| null("equal"))?;
        *equal = diagram_equal(&a.inner, &b.inner);
        Ok(())
    })
}

/// # Safety
/// `diagram` is null or a live diagram that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn camcoh_diagram_free(diagram: *mut CamcohDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(camcoh_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn panics_become_status_codes() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, CamcohStatus::Panic);
        assert!(last_error().contains("boom"));
    }

    #[test]
    fn errors_map_to_status_codes() {
        let s = guard(|| Err(FieldSpec::new(4).unwrap_err().into()));
        assert_eq!(s, CamcohStatus::InvalidField);
        assert!(last_error().contains("CompositeModulus"));
        let s = guard(|| Err(BuildError::InvalidParameter("x".into()).into()));
        assert_eq!(s, CamcohStatus::InvalidArgument);
        assert_eq!(guard(|| Ok(())), CamcohStatus::Ok);
    }

    #[test]
    fn version_is_terminated() {
        let v = unsafe { CStr::from_ptr(camcoh_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
