//! C ABI over `mph-core`.
//!
//! Objects cross the boundary as opaque heap handles released with the
//! matching `*_free` function. Every call returns an [`MphStatus`]; on failure
//! [`mph_last_error`] describes the error for the calling thread. Output
//! pointers are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;
use std::slice;

use mph_core::complex::{load_pair_any, ParameterPoint, SimplicialComplex, SizePair};
use mph_core::distance::multidim_distance;
use mph_core::foliation::{make_admissible, pair_through, slice_grid, GridSpec};
use mph_core::persistence::{multidim_rank, slice_diagrams};
use mph_core::shapes::{self, Measuring, ShapeKind, ShapeSpec};
use mph_core::{bottleneck, Error, MeasuringFunction, PersistenceDiagram, PrimeField};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MphStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Io = 3,
    InvalidArgument = 4,
    Panic = 5,
}

/// A complex with a vector-valued function on its vertices.
pub struct MphSizePair {
    inner: SizePair,
}

/// A persistence diagram of one degree.
pub struct MphDiagram {
    inner: PersistenceDiagram,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(MphStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Json(_) => MphStatus::Parse,
            Error::Io(_) => MphStatus::Io,
            _ => MphStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MphStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure> + UnwindSafe) -> MphStatus {
    match catch_unwind(body) {
        Ok(Ok(())) => MphStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            MphStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MphStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn field(p: u32) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(u64::from(p))?)
}

fn boxed_pair(out: *mut *mut MphSizePair, inner: SizePair) -> Result<(), Failure> {
    // SAFETY: checked non-null by `write_out`.
    unsafe { write_out(out, Box::into_raw(Box::new(MphSizePair { inner })), "out") }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mph_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a size pair in the text or JSON file format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mph_size_pair_from_text(text: *const c_char, out: *mut *mut MphSizePair) -> MphStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        boxed_pair(out, load_pair_any(text)?)
    })
}

/// Reads a size pair file.
///
/// # Safety
/// `path` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mph_size_pair_load(path: *const c_char, out: *mut *mut MphSizePair) -> MphStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let text = std::fs::read_to_string(path).map_err(Error::from)?;
        boxed_pair(out, load_pair_any(&text)?)
    })
}

/// Builds a size pair from raw arrays: `values` holds `vertex_count * n`
/// row-major function values; simplex `i` is
/// `simplex_vertices[offsets[i] .. offsets[i + 1]]` (`offsets` has
/// `simplex_count + 1` entries). Missing faces are added.
///
/// # Safety
/// Every pointer must reference the stated number of elements.
#[no_mangle]
pub unsafe extern "C" fn mph_size_pair_from_arrays(
    vertex_count: usize,
    n: usize,
    values: *const f64,
    simplex_vertices: *const usize,
    offsets: *const usize,
    simplex_count: usize,
    out: *mut *mut MphSizePair,
) -> MphStatus {
    guard(|| {
        let values = slice_arg(values, vertex_count.saturating_mul(n), "values")?;
        let offsets = if simplex_count == 0 {
            &[][..]
        } else {
            slice_arg(offsets, simplex_count + 1, "offsets")?
        };
        let total = offsets.last().copied().unwrap_or(0);
        let vertices = slice_arg(simplex_vertices, total, "simplex_vertices")?;
        let mut simplices = Vec::with_capacity(simplex_count);
        for w in offsets.windows(2) {
            if w[0] > w[1] || w[1] > total {
                return Err(Failure(MphStatus::InvalidArgument, "offsets must be non-decreasing".into()));
            }
            simplices.push(vertices[w[0]..w[1]].to_vec());
        }
        let complex = SimplicialComplex::new(vertex_count, simplices)?;
        let function = MeasuringFunction::from_flat(n, values.to_vec())?;
        boxed_pair(out, SizePair::new(complex, function)?)
    })
}

/// Generates a reference shape. `resolution == 0` selects the default;
/// `measuring` may be null for the shape's default function.
///
/// # Safety
/// `shape` (and `measuring` if non-null) must be nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_size_pair_from_shape(
    shape: *const c_char,
    resolution: usize,
    measuring: *const c_char,
    out: *mut *mut MphSizePair,
) -> MphStatus {
    guard(|| {
        let kind: ShapeKind = str_arg(shape, "shape")?.parse()?;
        let measuring: Measuring = if measuring.is_null() {
            match kind {
                ShapeKind::CubeBoundary | ShapeKind::Sphere => Measuring::AbsUv,
                ShapeKind::Ellipse => Measuring::EllipsePhi,
                ShapeKind::Torus => Measuring::ZNegZ,
            }
        } else {
            str_arg(measuring, "measuring")?.parse()?
        };
        let resolution = if resolution == 0 { kind.default_resolution() } else { resolution };
        boxed_pair(out, shapes::size_pair(&ShapeSpec::new(kind, resolution), &measuring)?)
    })
}

/// # Safety
/// `pair` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mph_size_pair_free(pair: *mut MphSizePair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Number of function components.
///
/// # Safety
/// `pair` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_size_pair_dimension(pair: *const MphSizePair, out: *mut usize) -> MphStatus {
    guard(|| write_out(out, ref_arg(pair, "pair")?.inner.dimension(), "out"))
}

/// # Safety
/// `pair` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_size_pair_vertex_count(pair: *const MphSizePair, out: *mut usize) -> MphStatus {
    guard(|| write_out(out, ref_arg(pair, "pair")?.inner.complex.vertex_count(), "out"))
}

/// Degree-`degree` diagram of the leaf `(l, b)` (normalized and projected as
/// needed) over Z/`field`.
///
/// # Safety
/// `l` and `b` must hold `n` values; `pair` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_slice_diagram(
    pair: *const MphSizePair,
    l: *const f64,
    b: *const f64,
    n: usize,
    degree: usize,
    field_p: u32,
    out: *mut *mut MphDiagram,
) -> MphStatus {
    guard(|| {
        let pair = ref_arg(pair, "pair")?;
        let leaf = make_admissible(slice_arg(l, n, "l")?, slice_arg(b, n, "b")?)?;
        let diagrams = slice_diagrams(&pair.inner, &leaf, degree, field(field_p)?)?;
        let inner = diagrams
            .get(degree)
            .cloned()
            .unwrap_or_else(|| PersistenceDiagram::empty(degree));
        write_out(out, Box::into_raw(Box::new(MphDiagram { inner })), "out")
    })
}

/// Builds a diagram from `count` (birth, death) pairs; `INFINITY` deaths are essential.
///
/// # Safety
/// `births` and `deaths` must hold `count` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_diagram_from_pairs(
    degree: usize,
    births: *const f64,
    deaths: *const f64,
    count: usize,
    out: *mut *mut MphDiagram,
) -> MphStatus {
    guard(|| {
        let births = slice_arg(births, count, "births")?;
        let deaths = slice_arg(deaths, count, "deaths")?;
        if births.iter().chain(deaths).any(|x| x.is_nan()) || births.iter().any(|x| x.is_infinite()) {
            return Err(Failure(MphStatus::InvalidArgument, "births must be finite and deaths not NaN".into()));
        }
        let inner = PersistenceDiagram::from_pairs(degree, births.iter().copied().zip(deaths.iter().copied()));
        write_out(out, Box::into_raw(Box::new(MphDiagram { inner })), "out")
    })
}

/// # Safety
/// `diagram` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mph_diagram_free(diagram: *mut MphDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// Number of distinct points (multiplicities are reported per point).
///
/// # Safety
/// `diagram` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_diagram_len(diagram: *const MphDiagram, out: *mut usize) -> MphStatus {
    guard(|| write_out(out, ref_arg(diagram, "diagram")?.inner.points().len(), "out"))
}

/// # Safety
/// `diagram` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_diagram_degree(diagram: *const MphDiagram, out: *mut usize) -> MphStatus {
    guard(|| write_out(out, ref_arg(diagram, "diagram")?.inner.degree, "out"))
}

/// Point `index` in birth-then-death order; essential points have `death = INFINITY`.
///
/// # Safety
/// `diagram` live; output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn mph_diagram_point(
    diagram: *const MphDiagram,
    index: usize,
    birth: *mut f64,
    death: *mut f64,
    multiplicity: *mut usize,
) -> MphStatus {
    guard(|| {
        let points = ref_arg(diagram, "diagram")?.inner.points();
        let p = points.get(index).ok_or_else(|| {
            Failure(
                MphStatus::InvalidArgument,
                format!("point index {index} out of range for {} points", points.len()),
            )
        })?;
        write_out(birth, p.birth, "birth")?;
        write_out(death, p.death, "death")?;
        write_out(multiplicity, p.mult, "multiplicity")
    })
}

/// Matching distance between two diagrams of the same degree.
///
/// # Safety
/// Both handles live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_bottleneck(a: *const MphDiagram, b: *const MphDiagram, out: *mut f64) -> MphStatus {
    guard(|| {
        let d = bottleneck(&ref_arg(a, "a")?.inner, &ref_arg(b, "b")?.inner)?;
        write_out(out, d, "out")
    })
}

/// Rank of `H_degree(f <= u) -> H_degree(f <= v)` computed on the leaf through `(u, v)`.
///
/// # Safety
/// `u` and `v` must hold `n` values; `pair` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_multidim_rank(
    pair: *const MphSizePair,
    u: *const f64,
    v: *const f64,
    n: usize,
    degree: usize,
    field_p: u32,
    out: *mut usize,
) -> MphStatus {
    guard(|| {
        let pair = ref_arg(pair, "pair")?;
        let p = ParameterPoint::new(slice_arg(u, n, "u")?.to_vec(), slice_arg(v, n, "v")?.to_vec())?;
        let rank = multidim_rank(&pair.inner.complex, &pair.inner.function, &p, degree, field(field_p)?)?;
        write_out(out, rank, "out")
    })
}

/// Sampled lower bound of the multidimensional matching distance in one
/// degree. A negative or NaN `offset_radius` selects the default radius.
///
/// # Safety
/// Both handles live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_multidist(
    x: *const MphSizePair,
    y: *const MphSizePair,
    degree: usize,
    directions: usize,
    offsets: usize,
    offset_radius: f64,
    field_p: u32,
    out: *mut f64,
) -> MphStatus {
    guard(|| {
        let (x, y) = (&ref_arg(x, "x")?.inner, &ref_arg(y, "y")?.inner);
        let mut spec = GridSpec::default_for(&[&x.function, &y.function]);
        spec.directions = directions;
        spec.offsets = offsets;
        if offset_radius >= 0.0 {
            spec.offset_radius = offset_radius;
        }
        let pairs = slice_grid(x.dimension(), &spec)?;
        let estimate = multidim_distance(x, y, degree, &pairs, field(field_p)?)?;
        write_out(out, estimate.lower_bound, "out")
    })
}

/// The admissible pair `(l, b)` and coordinates `s < t` of the leaf through `(u, v)`.
///
/// # Safety
/// `u`, `v`, `l_out`, `b_out` must hold `n` values; `s_out`, `t_out` writable.
#[no_mangle]
pub unsafe extern "C" fn mph_pair_through(
    u: *const f64,
    v: *const f64,
    n: usize,
    l_out: *mut f64,
    b_out: *mut f64,
    s_out: *mut f64,
    t_out: *mut f64,
) -> MphStatus {
    guard(|| {
        let p = ParameterPoint::new(slice_arg(u, n, "u")?.to_vec(), slice_arg(v, n, "v")?.to_vec())?;
        if l_out.is_null() || b_out.is_null() {
            return Err(null("l_out/b_out"));
        }
        let slice = pair_through(&p);
        ptr::copy_nonoverlapping(slice.pair.direction().as_ptr(), l_out, n);
        ptr::copy_nonoverlapping(slice.pair.offset().as_ptr(), b_out, n);
        write_out(s_out, slice.s, "s_out")?;
        write_out(t_out, slice.t, "t_out")
    })
}
