//! C ABI over `kepler-core`.
//!
//! Every function returns a [`KeplerStatus`]; results come back through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`kepler_last_error_message`]. Trajectories are opaque handles owned by
//! the caller and released with [`kepler_trajectory_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kepler_core::conserved::{angular_momentum, drift_report, energy, focal_point_t, lrl_vector};
use kepler_core::dynamics::{default_dt, integrate, measure_period};
use kepler_core::euclid::{ellipse_geometry, reflect_in_tangent};
use kepler_core::hodograph::{predicted_center, predicted_radius};
use kepler_core::io::write_trajectory_csv;
use kepler_core::newton::{newton_report, CenteredEllipse};
use kepler_core::{KeplerError, KeplerSystem, Method, OrbitState, Trajectory, Vec3};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeplerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    SingularPosition = 3,
    DegenerateOrbit = 4,
    NotBound = 5,
    InsufficientCoverage = 6,
    CollinearPoints = 7,
    ParallelLines = 8,
    DegenerateConfiguration = 9,
    IndexOutOfRange = 10,
    Io = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeplerMethod {
    Rk4 = 0,
    Verlet = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KeplerVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<Vec3> for KeplerVec3 {
    fn from(v: Vec3) -> Self {
        KeplerVec3 {
            x: v.x,
            y: v.y,
            z: v.z,
        }
    }
}

impl From<KeplerVec3> for Vec3 {
    fn from(v: KeplerVec3) -> Self {
        Vec3::new(v.x, v.y, v.z)
    }
}

/// Orbital ellipse of a bound state. The first focus is the origin.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KeplerEllipse {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub eccentricity: f64,
    pub period: f64,
    pub energy: f64,
    pub angular_momentum: f64,
    pub lrl_norm: f64,
    pub second_focus: KeplerVec3,
    pub center: KeplerVec3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KeplerDrift {
    pub max_rel_dh: f64,
    pub max_rel_dl: f64,
    pub max_rel_dk: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KeplerNewtonSummary {
    pub e_distance_residual: f64,
    pub lemma_de_ef: f64,
    pub lemma_fr_br: f64,
    pub areal_center_residual: f64,
    pub areal_focus_residual: f64,
    pub ratio_residual: f64,
    pub inverse_square_spread: f64,
    pub mean_q: f64,
}

/// Opaque integrated trajectory.
pub struct KeplerTrajectory {
    inner: Trajectory,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(KeplerStatus, String);

impl From<KeplerError> for Failure {
    fn from(e: KeplerError) -> Self {
        let status = match e {
            KeplerError::SingularPosition { .. } => KeplerStatus::SingularPosition,
            KeplerError::DegenerateOrbit(_) => KeplerStatus::DegenerateOrbit,
            KeplerError::NotBound { .. } => KeplerStatus::NotBound,
            KeplerError::InsufficientCoverage { .. } => KeplerStatus::InsufficientCoverage,
            KeplerError::CollinearPoints => KeplerStatus::CollinearPoints,
            KeplerError::ParallelLines => KeplerStatus::ParallelLines,
            KeplerError::DegenerateConfiguration(_) => KeplerStatus::DegenerateConfiguration,
            KeplerError::InvalidInput(_) => KeplerStatus::InvalidInput,
        };
        Failure(status, format!("{}: {e}", e.kind()))
    }
}

fn null(name: &str) -> Failure {
    Failure(KeplerStatus::NullPointer, format!("{name} is null"))
}

/// Runs `f`, records any failure and converts panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KeplerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            KeplerStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            KeplerStatus::Panic
        }
    }
}

/// Writes `value` through `out`, rejecting null.
unsafe fn put<T>(out: *mut T, name: &str, value: T) -> Result<(), Failure> {
    // SAFETY: caller guarantees `out` is either null or valid for writes
    match unsafe { out.as_mut() } {
        Some(slot) => {
            *slot = value;
            Ok(())
        }
        None => Err(null(name)),
    }
}

unsafe fn traj_ref<'a>(traj: *const KeplerTrajectory) -> Result<&'a Trajectory, Failure> {
    // SAFETY: caller passes a handle from kepler_integrate or null
    unsafe { traj.as_ref() }
        .map(|t| &t.inner)
        .ok_or_else(|| null("trajectory"))
}

fn system(m: f64, k: f64) -> Result<KeplerSystem, Failure> {
    Ok(KeplerSystem::new(m, k)?)
}

fn state(r: KeplerVec3, v: KeplerVec3) -> Result<OrbitState, Failure> {
    Ok(OrbitState::new(r.into(), v.into())?)
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn kepler_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: buf is valid for len bytes and n < len
            unsafe {
                std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn kepler_status_name(status: KeplerStatus) -> *const c_char {
    let name: &'static CStr = match status {
        KeplerStatus::Ok => c"Ok",
        KeplerStatus::NullPointer => c"NullPointer",
        KeplerStatus::InvalidInput => c"InvalidInput",
        KeplerStatus::SingularPosition => c"SingularPosition",
        KeplerStatus::DegenerateOrbit => c"DegenerateOrbit",
        KeplerStatus::NotBound => c"NotBound",
        KeplerStatus::InsufficientCoverage => c"InsufficientCoverage",
        KeplerStatus::CollinearPoints => c"CollinearPoints",
        KeplerStatus::ParallelLines => c"ParallelLines",
        KeplerStatus::DegenerateConfiguration => c"DegenerateConfiguration",
        KeplerStatus::IndexOutOfRange => c"IndexOutOfRange",
        KeplerStatus::Io => c"Io",
        KeplerStatus::Panic => c"Panic",
    };
    name.as_ptr()
}

/// Integrates `n_steps` fixed steps from `(r0, v0)`. A `dt` of zero picks
/// the default step. On success `*out` owns a new handle.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_integrate(
    m: f64,
    k: f64,
    r0: KeplerVec3,
    v0: KeplerVec3,
    dt: f64,
    n_steps: usize,
    method: KeplerMethod,
    out: *mut *mut KeplerTrajectory,
) -> KeplerStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let sys = system(m, k)?;
        let s0 = state(r0, v0)?;
        let dt = if dt == 0.0 {
            default_dt(&sys, &s0)?
        } else {
            dt
        };
        let method = match method {
            KeplerMethod::Rk4 => Method::Rk4,
            KeplerMethod::Verlet => Method::Verlet,
        };
        let inner = integrate(&sys, &s0, dt, n_steps, method)?;
        let handle = Box::into_raw(Box::new(KeplerTrajectory { inner }));
        // SAFETY: checked non-null above
        unsafe { put(out, "out", handle) }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `traj` must be null or a handle from [`kepler_integrate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kepler_trajectory_free(traj: *mut KeplerTrajectory) {
    if !traj.is_null() {
        // SAFETY: handle came from Box::into_raw in kepler_integrate
        drop(unsafe { Box::from_raw(traj) });
    }
}

/// Number of samples, 0 for null.
///
/// # Safety
/// `traj` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kepler_trajectory_len(traj: *const KeplerTrajectory) -> usize {
    // SAFETY: forwarded caller contract
    unsafe { traj.as_ref() }.map_or(0, |t| t.inner.len())
}

/// Time, position and velocity of sample `index`. Any of the out pointers
/// may be null.
///
/// # Safety
/// `traj` must be null or a live handle; non-null outs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_trajectory_sample(
    traj: *const KeplerTrajectory,
    index: usize,
    t: *mut f64,
    r: *mut KeplerVec3,
    v: *mut KeplerVec3,
) -> KeplerStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let traj = unsafe { traj_ref(traj) }?;
        let sample = traj.samples.get(index).ok_or_else(|| {
            Failure(
                KeplerStatus::IndexOutOfRange,
                format!("index {index} out of range for {} samples", traj.len()),
            )
        })?;
        // SAFETY: each out is null or valid for writes
        unsafe {
            if let Some(t) = t.as_mut() {
                *t = sample.t;
            }
            if let Some(r) = r.as_mut() {
                *r = sample.state.r.into();
            }
            if let Some(v) = v.as_mut() {
                *v = sample.state.v.into();
            }
        }
        Ok(())
    })
}

/// Period from the accumulated angle; needs one full revolution.
///
/// # Safety
/// `traj` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_trajectory_measure_period(
    traj: *const KeplerTrajectory,
    out: *mut f64,
) -> KeplerStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let period = measure_period(unsafe { traj_ref(traj) }?)?;
        unsafe { put(out, "out", period) }
    })
}

/// Largest relative drift of H, L and K over the trajectory.
///
/// # Safety
/// `traj` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_trajectory_drift(
    traj: *const KeplerTrajectory,
    out: *mut KeplerDrift,
) -> KeplerStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let d = drift_report(unsafe { traj_ref(traj) }?)?;
        let drift = KeplerDrift {
            max_rel_dh: d.max_rel_dh,
            max_rel_dl: d.max_rel_dl,
            max_rel_dk: d.max_rel_dk,
        };
        unsafe { put(out, "out", drift) }
    })
}

/// Writes the trajectory CSV (`t,rx,ry,rz,vx,vy,vz`) to a UTF-8 path.
///
/// # Safety
/// `traj` must be null or a live handle; `path` null or a NUL-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn kepler_trajectory_write_csv(
    traj: *const KeplerTrajectory,
    path: *const c_char,
) -> KeplerStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let traj = unsafe { traj_ref(traj) }?;
        if path.is_null() {
            return Err(null("path"));
        }
        // SAFETY: non-null and NUL-terminated per contract
        let path = unsafe { CStr::from_ptr(path) }
            .to_str()
            .map_err(|_| Failure(KeplerStatus::InvalidInput, "path is not UTF-8".into()))?;
        let io_err = |e: std::io::Error| Failure(KeplerStatus::Io, format!("{path}: {e}"));
        let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
        write_trajectory_csv(&mut w, traj).map_err(io_err)?;
        w.flush().map_err(io_err)
    })
}

/// `H = m v²/2 - k/r`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_energy(
    m: f64,
    k: f64,
    r: KeplerVec3,
    v: KeplerVec3,
    out: *mut f64,
) -> KeplerStatus {
    guard(|| {
        let h = energy(&system(m, k)?, &state(r, v)?)?;
        unsafe { put(out, "out", h) }
    })
}

/// `L = r × m v`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_angular_momentum(
    m: f64,
    r: KeplerVec3,
    v: KeplerVec3,
    out: *mut KeplerVec3,
) -> KeplerStatus {
    guard(|| {
        system(m, 1.0)?;
        let l = angular_momentum(&state(r, v)?, m);
        unsafe { put(out, "out", l.into()) }
    })
}

/// `K = p × L - k m r/|r|`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_lrl_vector(
    m: f64,
    k: f64,
    r: KeplerVec3,
    v: KeplerVec3,
    out: *mut KeplerVec3,
) -> KeplerStatus {
    guard(|| {
        let kv = lrl_vector(&system(m, k)?, &state(r, v)?)?;
        unsafe { put(out, "out", kv.into()) }
    })
}

/// Second focus `K/(mH)`; `NotBound` for `H ≥ 0`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_focal_point(
    m: f64,
    k: f64,
    r: KeplerVec3,
    v: KeplerVec3,
    out: *mut KeplerVec3,
) -> KeplerStatus {
    guard(|| {
        let t = focal_point_t(&system(m, k)?, &state(r, v)?)?;
        unsafe { put(out, "out", t.into()) }
    })
}

/// Reflection of the projection `s` in the tangent line at `r`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_reflect_in_tangent(
    m: f64,
    k: f64,
    r: KeplerVec3,
    v: KeplerVec3,
    out: *mut KeplerVec3,
) -> KeplerStatus {
    guard(|| {
        let t = reflect_in_tangent(&system(m, k)?, &state(r, v)?)?;
        unsafe { put(out, "out", t.into()) }
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_ellipse_geometry(
    m: f64,
    k: f64,
    r: KeplerVec3,
    v: KeplerVec3,
    out: *mut KeplerEllipse,
) -> KeplerStatus {
    guard(|| {
        let g = ellipse_geometry(&system(m, k)?, &state(r, v)?)?;
        let e = KeplerEllipse {
            a: g.a,
            b: g.b,
            c: g.c,
            eccentricity: g.eccentricity,
            period: g.period,
            energy: g.energy,
            angular_momentum: g.angular_momentum,
            lrl_norm: g.lrl_norm,
            second_focus: g.focus2.into(),
            center: g.center.into(),
        };
        unsafe { put(out, "out", e) }
    })
}

/// Hodograph circle: center `iK/(mL)` and radius `k/L`.
///
/// # Safety
/// `center` and `radius` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_hodograph_circle(
    m: f64,
    k: f64,
    r: KeplerVec3,
    v: KeplerVec3,
    center: *mut KeplerVec3,
    radius: *mut f64,
) -> KeplerStatus {
    guard(|| {
        let (sys, s) = (system(m, k)?, state(r, v)?);
        let c = predicted_center(&sys, &s)?;
        let rad = predicted_radius(&sys, &s)?;
        if center.is_null() || radius.is_null() {
            return Err(null(if center.is_null() { "center" } else { "radius" }));
        }
        unsafe {
            put(center, "center", c.into())?;
            put(radius, "radius", rad)
        }
    })
}

/// Two-center check on the planar ellipse with semi-axes `a ≥ b`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kepler_newton_check(
    a: f64,
    b: f64,
    n_samples: usize,
    out: *mut KeplerNewtonSummary,
) -> KeplerStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ell = CenteredEllipse::planar(a, b)?;
        let r = newton_report(&ell, n_samples)?;
        let summary = KeplerNewtonSummary {
            e_distance_residual: r.e_distance_residual,
            lemma_de_ef: r.lemma_de_ef,
            lemma_fr_br: r.lemma_fr_br,
            areal_center_residual: r.areal_center_residual,
            areal_focus_residual: r.areal_focus_residual,
            ratio_residual: r.ratio_residual,
            inverse_square_spread: r.inverse_square.spread,
            mean_q: r.inverse_square.mean_q,
        };
        unsafe { put(out, "out", summary) }
    })
}
