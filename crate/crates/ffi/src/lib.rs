//! C ABI over `causalnet`.
//!
//! Every function returns a [`CnStatus`]. On failure the message is kept per
//! thread and can be fetched with [`cn_last_error`]. Objects are opaque
//! handles released with their `*_free` function; strings handed out are
//! released with [`cn_string_free`].
//!
//! Complex matrices are passed row-major with real and imaginary parts
//! interleaved, `2·d·d` doubles per matrix.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use causalnet::algebra::{algebra_closure, c, Matrix, MatrixAlgebra, DEFAULT_MAX_DIM};
use causalnet::cli::{run_checks, RunConfig};
use causalnet::geometry::{Region, Window};
use causalnet::net_verifier::{build_net, replay_lpc_proof, CylinderSpec, LocalNet};
use causalnet::protocols::BrickWallCircuit;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationFailed = 3,
    Panic = 4,
}

pub struct CnRegion {
    inner: Region,
}

pub struct CnAlgebra {
    inner: MatrixAlgebra,
}

pub struct CnNet {
    inner: LocalNet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg.into()));
}

struct Fail(CnStatus, String);

impl Fail {
    fn null(what: &str) -> Self {
        Fail(CnStatus::NullPointer, format!("{what} is null"))
    }

    fn invalid(e: impl std::fmt::Display) -> Self {
        Fail(CnStatus::InvalidArgument, e.to_string())
    }

    fn compute(e: impl std::fmt::Display) -> Self {
        Fail(CnStatus::ComputationFailed, e.to_string())
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CnStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CnStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CnStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::invalid(format!("{what} is not UTF-8")))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail::compute("string contains a NUL byte"))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or NULL. Free with
/// `cn_string_free`.
#[no_mangle]
pub extern "C" fn cn_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => CString::new(msg.replace('\0', " "))
            .map(CString::into_raw)
            .unwrap_or(std::ptr::null_mut()),
        None => std::ptr::null_mut(),
    })
}

#[no_mangle]
pub unsafe extern "C" fn cn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static version string; do not free.
#[no_mangle]
pub extern "C" fn cn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---- regions ----

/// Cylinder `{|x| < a, |t| < tau}` on the window `[-t_max, t_max] × [-x_max, x_max]`
/// with cell size `h`.
#[no_mangle]
pub unsafe extern "C" fn cn_region_cylinder(
    t_max: f64,
    x_max: f64,
    h: f64,
    a: f64,
    tau: f64,
    out: *mut *mut CnRegion,
) -> CnStatus {
    guard(|| {
        let w = Window::new(t_max, x_max, h).map_err(Fail::invalid)?;
        let r = Region::cylinder(w, a, tau).map_err(Fail::invalid)?;
        write_out(out, boxed(CnRegion { inner: r }), "out")
    })
}

/// Diamond `|t - t0| + |x - x0| < radius` on the window.
#[no_mangle]
pub unsafe extern "C" fn cn_region_diamond(
    t_max: f64,
    x_max: f64,
    h: f64,
    t0: f64,
    x0: f64,
    radius: f64,
    out: *mut *mut CnRegion,
) -> CnStatus {
    guard(|| {
        let w = Window::new(t_max, x_max, h).map_err(Fail::invalid)?;
        let r = Region::diamond(w, t0, x0, radius).map_err(Fail::invalid)?;
        write_out(out, boxed(CnRegion { inner: r }), "out")
    })
}

unsafe fn region_op(
    r: *const CnRegion,
    out: *mut *mut CnRegion,
    f: impl FnOnce(&Region) -> Region,
) -> CnStatus {
    guard(|| {
        let r = deref(r, "region")?;
        write_out(out, boxed(CnRegion { inner: f(&r.inner) }), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cn_region_complement(r: *const CnRegion, out: *mut *mut CnRegion) -> CnStatus {
    region_op(r, out, Region::causal_complement)
}

#[no_mangle]
pub unsafe extern "C" fn cn_region_double_complement(
    r: *const CnRegion,
    out: *mut *mut CnRegion,
) -> CnStatus {
    region_op(r, out, Region::double_complement)
}

#[no_mangle]
pub unsafe extern "C" fn cn_region_domain_of_dependence(
    r: *const CnRegion,
    out: *mut *mut CnRegion,
) -> CnStatus {
    region_op(r, out, Region::domain_of_dependence)
}

/// Number of cells.
#[no_mangle]
pub unsafe extern "C" fn cn_region_len(r: *const CnRegion, out: *mut usize) -> CnStatus {
    guard(|| write_out(out, deref(r, "region")?.inner.len(), "out"))
}

/// Whether the cell containing `(t, x)` belongs to the region. Points outside
/// the window are an invalid argument.
#[no_mangle]
pub unsafe extern "C" fn cn_region_contains_point(
    r: *const CnRegion,
    t: f64,
    x: f64,
    out: *mut bool,
) -> CnStatus {
    guard(|| {
        let r = &deref(r, "region")?.inner;
        let (row, col) = r
            .window()
            .cell_of(t, x)
            .ok_or_else(|| Fail::invalid(format!("({t}, {x}) is outside the window")))?;
        write_out(out, r.contains(row, col), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cn_region_is_subset(
    a: *const CnRegion,
    b: *const CnRegion,
    out: *mut bool,
) -> CnStatus {
    guard(|| {
        let (a, b) = (deref(a, "first region")?, deref(b, "second region")?);
        if a.inner.window() != b.inner.window() {
            return Err(Fail::invalid("regions live on different windows"));
        }
        write_out(out, a.inner.is_subset(&b.inner), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cn_region_free(r: *mut CnRegion) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

// ---- algebras ----

/// Smallest unital *-algebra containing `count` matrices of size `d × d`,
/// `d` at most 64.
#[no_mangle]
pub unsafe extern "C" fn cn_algebra_from_generators(
    d: usize,
    data: *const f64,
    count: usize,
    out: *mut *mut CnAlgebra,
) -> CnStatus {
    guard(|| {
        if d == 0 || d > DEFAULT_MAX_DIM {
            return Err(Fail::invalid(format!("dimension {d} outside 1..={DEFAULT_MAX_DIM}")));
        }
        if data.is_null() && count > 0 {
            return Err(Fail::null("data"));
        }
        let len = d
            .checked_mul(d)
            .and_then(|x| x.checked_mul(2 * count))
            .ok_or_else(|| Fail::invalid("size overflow"))?;
        let raw: &[f64] = if count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(data, len)
        };
        let gens: Vec<Matrix> = raw
            .chunks_exact(2 * d * d)
            .map(|m| Matrix::from_fn(d, d, |i, j| c(m[2 * (i * d + j)], m[2 * (i * d + j) + 1])))
            .collect();
        let alg = algebra_closure(d, &gens, DEFAULT_MAX_DIM).map_err(Fail::invalid)?;
        write_out(out, boxed(CnAlgebra { inner: alg }), "out")
    })
}

/// Full matrix algebra `M_d`.
#[no_mangle]
pub unsafe extern "C" fn cn_algebra_full(d: usize, out: *mut *mut CnAlgebra) -> CnStatus {
    guard(|| {
        if d == 0 {
            return Err(Fail::invalid("dimension must be positive"));
        }
        write_out(out, boxed(CnAlgebra { inner: MatrixAlgebra::full(d) }), "out")
    })
}

/// `M_m ⊗ I_n` when `left`, else `I_m ⊗ M_n`.
#[no_mangle]
pub unsafe extern "C" fn cn_algebra_tensor_factor(
    m: usize,
    n: usize,
    left: bool,
    out: *mut *mut CnAlgebra,
) -> CnStatus {
    guard(|| {
        if m == 0 || n == 0 {
            return Err(Fail::invalid("factor sizes must be positive"));
        }
        let alg = MatrixAlgebra::tensor_factor(m, n, left);
        write_out(out, boxed(CnAlgebra { inner: alg }), "out")
    })
}

/// Dimension as a vector space.
#[no_mangle]
pub unsafe extern "C" fn cn_algebra_dimension(a: *const CnAlgebra, out: *mut usize) -> CnStatus {
    guard(|| write_out(out, deref(a, "algebra")?.inner.dimension(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cn_algebra_is_factor(a: *const CnAlgebra, out: *mut bool) -> CnStatus {
    guard(|| write_out(out, deref(a, "algebra")?.inner.is_factor(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cn_algebra_commutant(
    a: *const CnAlgebra,
    out: *mut *mut CnAlgebra,
) -> CnStatus {
    guard(|| {
        let comm = deref(a, "algebra")?.inner.commutant();
        write_out(out, boxed(CnAlgebra { inner: comm }), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cn_algebra_center(a: *const CnAlgebra, out: *mut *mut CnAlgebra) -> CnStatus {
    guard(|| {
        let z = deref(a, "algebra")?.inner.center();
        write_out(out, boxed(CnAlgebra { inner: z }), "out")
    })
}

/// Equality as subspaces of `M_d`.
#[no_mangle]
pub unsafe extern "C" fn cn_algebra_same_as(
    a: *const CnAlgebra,
    b: *const CnAlgebra,
    out: *mut bool,
) -> CnStatus {
    guard(|| {
        let (a, b) = (deref(a, "first algebra")?, deref(b, "second algebra")?);
        if a.inner.dim() != b.inner.dim() {
            return Err(Fail::invalid("algebras act on different spaces"));
        }
        write_out(out, a.inner.same_as(&b.inner), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cn_algebra_free(a: *mut CnAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

// ---- circuit nets ----

/// Net over a Haar-random brick-wall circuit.
#[no_mangle]
pub unsafe extern "C" fn cn_net_new(
    n_qubits: usize,
    depth: usize,
    seed: u64,
    out: *mut *mut CnNet,
) -> CnStatus {
    guard(|| {
        let circ = BrickWallCircuit::haar(n_qubits, depth, seed).map_err(Fail::invalid)?;
        let net = build_net(circ).map_err(Fail::invalid)?;
        write_out(out, boxed(CnNet { inner: net }), "out")
    })
}

/// Algebra of the region given as `count` pairs `(layer, site)` laid out flat.
#[no_mangle]
pub unsafe extern "C" fn cn_net_region_algebra(
    net: *const CnNet,
    cells: *const usize,
    count: usize,
    out: *mut *mut CnAlgebra,
) -> CnStatus {
    guard(|| {
        let net = &deref(net, "net")?.inner;
        if cells.is_null() && count > 0 {
            return Err(Fail::null("cells"));
        }
        let flat: &[usize] = if count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(cells, 2 * count)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let region = net.region(&pairs).map_err(Fail::invalid)?;
        let alg = net.algebra(&region).map_err(Fail::compute)?;
        write_out(out, boxed(CnAlgebra { inner: MatrixAlgebra::clone(&alg) }), "out")
    })
}

/// Replays the cylinder-to-diamond argument on the given block and writes the
/// JSON report to `json_out` (free with `cn_string_free`). `lpc_out`, if not
/// NULL, receives whether `A(C) = A(C'')`.
#[no_mangle]
pub unsafe extern "C" fn cn_net_replay_proof(
    net: *const CnNet,
    first_layer: usize,
    layers: usize,
    first_site: usize,
    sites: usize,
    json_out: *mut *mut c_char,
    lpc_out: *mut bool,
) -> CnStatus {
    guard(|| {
        let net = &deref(net, "net")?.inner;
        let cyl = CylinderSpec {
            first_layer,
            layers,
            first_site,
            sites,
        };
        let rep = replay_lpc_proof(net, cyl).map_err(Fail::invalid)?;
        let json = serde_json::to_string(&rep).map_err(Fail::compute)?;
        if !lpc_out.is_null() {
            lpc_out.write(rep.lpc_holds);
        }
        write_out(json_out, c_string(json)?, "json_out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cn_net_free(n: *mut CnNet) {
    if !n.is_null() {
        drop(Box::from_raw(n));
    }
}

// ---- suites ----

/// Runs the verification suites configured by `config` (the `key=value`
/// format of the `verify --config` file; may be empty or NULL for defaults)
/// without writing files. The report JSON goes to `json_out` (free with
/// `cn_string_free`) and the exit code the CLI would return to `exit_code`.
#[no_mangle]
pub unsafe extern "C" fn cn_run_checks(
    config: *const c_char,
    json_out: *mut *mut c_char,
    exit_code: *mut i32,
) -> CnStatus {
    guard(|| {
        let mut cfg = RunConfig::default();
        if !config.is_null() {
            cfg.apply_str(read_str(config, "config")?).map_err(Fail::invalid)?;
        }
        let outcome = run_checks(&cfg).map_err(Fail::invalid)?;
        if json_out.is_null() || exit_code.is_null() {
            return Err(Fail::null("output pointer"));
        }
        exit_code.write(outcome.exit_code());
        json_out.write(c_string(outcome.report.to_json())?);
        Ok(())
    })
}
