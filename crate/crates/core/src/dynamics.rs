//! Equation of motion `m a = -k r / r³` and fixed-step integrators.
//!
//! Integrated trajectories are the numerical oracle for every geometric
//! statement checked elsewhere in the crate: the conserved quantities, the
//! second focus, the hodograph and the period are all compared against what
//! the integrator actually produces.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::error::{KeplerError, Result};
use crate::vector::{signed_angle, Vec3};

/// Steps per estimated period used by [`default_dt`].
pub const STEPS_PER_PERIOD: f64 = 1e4;

/// Integration stops if `|r|` falls below this fraction of the bounding
/// radius `-k/H`.
pub const CLOSE_APPROACH_FRACTION: f64 = 1e-9;

/// Particle mass `m` and attractive coupling constant `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeplerSystem {
    m: f64,
    k: f64,
}

impl KeplerSystem {
    pub fn new(m: f64, k: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(KeplerError::InvalidInput(format!(
                "mass must be > 0, got m = {m}"
            )));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(KeplerError::InvalidInput(format!(
                "coupling constant must be > 0, got k = {k}"
            )));
        }
        Ok(Self { m, k })
    }

    /// `m = k = 1`.
    pub fn unit() -> Self {
        Self { m: 1.0, k: 1.0 }
    }

    #[inline]
    pub fn m(&self) -> f64 {
        self.m
    }

    #[inline]
    pub fn k(&self) -> f64 {
        self.k
    }

    /// `k/m`, the gravitational parameter per unit mass.
    #[inline]
    pub fn mu(&self) -> f64 {
        self.k / self.m
    }
}

/// Phase-space point. Momentum `p = m v` is derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitState {
    pub r: Vec3,
    pub v: Vec3,
}

impl OrbitState {
    /// Validating constructor: finite components and `|r| > 0`.
    pub fn new(r: Vec3, v: Vec3) -> Result<Self> {
        if !r.is_finite() || !v.is_finite() {
            return Err(KeplerError::InvalidInput(format!(
                "state must be finite, got r = {r}, v = {v}"
            )));
        }
        if r.norm() == 0.0 {
            return Err(KeplerError::SingularPosition {
                radius: 0.0,
                step: None,
            });
        }
        Ok(Self { r, v })
    }

    pub fn momentum(&self, sys: &KeplerSystem) -> Vec3 {
        self.v * sys.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Rk4,
    Verlet,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rk4 => "rk4",
            Method::Verlet => "verlet",
        })
    }
}

impl FromStr for Method {
    type Err = KeplerError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rk4" => Ok(Method::Rk4),
            "verlet" => Ok(Method::Verlet),
            other => Err(KeplerError::InvalidInput(format!(
                "unknown integrator '{other}' (expected rk4 or verlet)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: OrbitState,
}

/// Uniformly spaced samples `t_i = i * dt` of one integrated orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub system: KeplerSystem,
    pub dt: f64,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn initial(&self) -> &OrbitState {
        &self.samples[0].state
    }

    pub fn states(&self) -> impl Iterator<Item = &OrbitState> + '_ {
        self.samples.iter().map(|s| &s.state)
    }
}

fn checked_radius(r: Vec3) -> Result<f64> {
    let radius = r.norm();
    if radius == 0.0 || !radius.is_finite() {
        return Err(KeplerError::SingularPosition { radius, step: None });
    }
    Ok(radius)
}

/// `-(k/m) r / |r|³`.
pub fn acceleration(sys: &KeplerSystem, r: Vec3) -> Result<Vec3> {
    let radius = checked_radius(r)?;
    Ok(r * (-sys.mu() / (radius * radius * radius)))
}

fn check_step(dt: f64) -> Result<()> {
    if !dt.is_finite() || dt == 0.0 {
        return Err(KeplerError::InvalidInput(format!(
            "step must be finite and nonzero, got {dt}"
        )));
    }
    Ok(())
}

/// One classical fourth-order Runge-Kutta step of `ṙ = v, v̇ = a(r)`.
///
/// Negative `dt` integrates backwards.
pub fn step_rk4(sys: &KeplerSystem, state: &OrbitState, dt: f64) -> Result<OrbitState> {
    check_step(dt)?;
    let OrbitState { r, v } = *state;
    let half = 0.5 * dt;

    let k1r = v;
    let k1v = acceleration(sys, r)?;
    let k2r = v + k1v * half;
    let k2v = acceleration(sys, r + k1r * half)?;
    let k3r = v + k2v * half;
    let k3v = acceleration(sys, r + k2r * half)?;
    let k4r = v + k3v * dt;
    let k4v = acceleration(sys, r + k3r * dt)?;

    let sixth = dt / 6.0;
    Ok(OrbitState {
        r: r + (k1r + k2r * 2.0 + k3r * 2.0 + k4r) * sixth,
        v: v + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * sixth,
    })
}

/// One velocity-Verlet (kick-drift-kick) step. Symplectic and time
/// reversible: a step with `-dt` undoes a step with `dt`.
pub fn step_verlet(sys: &KeplerSystem, state: &OrbitState, dt: f64) -> Result<OrbitState> {
    check_step(dt)?;
    let a0 = acceleration(sys, state.r)?;
    let v_half = state.v + a0 * (0.5 * dt);
    let r1 = state.r + v_half * dt;
    let a1 = acceleration(sys, r1)?;
    Ok(OrbitState {
        r: r1,
        v: v_half + a1 * (0.5 * dt),
    })
}

pub fn step(sys: &KeplerSystem, state: &OrbitState, dt: f64, method: Method) -> Result<OrbitState> {
    match method {
        Method::Rk4 => step_rk4(sys, state, dt),
        Method::Verlet => step_verlet(sys, state, dt),
    }
}

fn energy_of(sys: &KeplerSystem, state: &OrbitState) -> f64 {
    0.5 * sys.m * state.v.norm_squared() - sys.k / state.r.norm()
}

/// Integrates `n_steps` fixed steps, returning `n_steps + 1` samples.
///
/// Aborts with `SingularPosition` (carrying the failing step index) if a
/// stage hits the origin or the orbit comes closer than
/// [`CLOSE_APPROACH_FRACTION`] of its bounding radius.
pub fn integrate(
    sys: &KeplerSystem,
    state0: &OrbitState,
    dt: f64,
    n_steps: usize,
    method: Method,
) -> Result<Trajectory> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(KeplerError::InvalidInput(format!(
            "dt must be > 0, got {dt}"
        )));
    }
    if n_steps == 0 {
        return Err(KeplerError::InvalidInput("n_steps must be >= 1".into()));
    }
    let state0 = OrbitState::new(state0.r, state0.v)?;
    let h = energy_of(sys, &state0);
    // unbound orbits have no -k/H; fall back to the starting radius
    let floor = if h < 0.0 {
        CLOSE_APPROACH_FRACTION * (-sys.k / h)
    } else {
        CLOSE_APPROACH_FRACTION * state0.r.norm()
    };

    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(Sample {
        t: 0.0,
        state: state0,
    });
    let mut current = state0;
    for i in 1..=n_steps {
        let previous = current;
        current = step(sys, &current, dt, method).map_err(|e| e.at_step(i))?;
        let radius = chord_distance_to_origin(previous.r, current.r);
        if !(radius >= floor) || !current.v.is_finite() {
            return Err(KeplerError::SingularPosition {
                radius,
                step: Some(i),
            });
        }
        samples.push(Sample {
            t: i as f64 * dt,
            state: current,
        });
    }
    Ok(Trajectory {
        system: *sys,
        dt,
        samples,
    })
}

/// Distance from the origin to the segment `[p, q]`. A step can jump over
/// the singularity, so the guard looks at the whole chord, not just the
/// endpoints.
fn chord_distance_to_origin(p: Vec3, q: Vec3) -> f64 {
    let d = q - p;
    let len_sq = d.norm_squared();
    if len_sq == 0.0 {
        return p.norm();
    }
    let u = (-p.dot(d) / len_sq).clamp(0.0, 1.0);
    (p + d * u).norm()
}

/// Third law: `T = 2π sqrt(m a³ / k)`.
pub fn analytic_period(sys: &KeplerSystem, a: f64) -> f64 {
    debug_assert!(a > 0.0, "semi-major axis must be positive");
    TAU * (sys.m * a * a * a / sys.k).sqrt()
}

/// Semi-major axis `-k/(2H)` of a bound state.
pub fn semi_major_axis(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    checked_radius(state.r)?;
    let h = energy_of(sys, state);
    if h >= 0.0 {
        return Err(KeplerError::NotBound { energy: h });
    }
    Ok(-sys.k / (2.0 * h))
}

/// Steps per periapsis time scale `sqrt(m r_p³ / k)` used by [`default_dt`].
pub const STEPS_PER_PERIAPSIS_TIME: f64 = 200.0;

/// Default step: the estimated period divided by [`STEPS_PER_PERIOD`],
/// capped at [`STEPS_PER_PERIAPSIS_TIME`] steps per periapsis time scale.
/// The cap only binds above eccentricity ≈ 0.75.
///
/// For unbound states the period is replaced by the circular period at the
/// starting radius.
pub fn default_dt(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    let a = match semi_major_axis(sys, state) {
        Ok(a) => a,
        Err(KeplerError::NotBound { .. }) => {
            return Ok(analytic_period(sys, state.r.norm()) / STEPS_PER_PERIOD)
        }
        Err(e) => return Err(e),
    };
    let by_period = analytic_period(sys, a) / STEPS_PER_PERIOD;
    // r_p = L²/(m k (1 + e)) stays accurate where a(1 - e) cancels
    let p = state.momentum(sys);
    let l_sq = state.r.cross(p).norm_squared();
    let lrl = p.cross(state.r.cross(p)) - state.r * (sys.k * sys.m / state.r.norm());
    let ecc = lrl.norm() / (sys.m * sys.k);
    let r_p = l_sq / (sys.m * sys.k * (1.0 + ecc));
    if r_p == 0.0 {
        return Ok(by_period);
    }
    let by_periapsis = (sys.m * r_p.powi(3) / sys.k).sqrt() / STEPS_PER_PERIAPSIS_TIME;
    Ok(by_period.min(by_periapsis))
}

/// Counterclockwise angle swept about the initial angular momentum,
/// accumulated without wrapping. Entry `i` is the angle at sample `i`.
pub fn accumulated_angle(traj: &Trajectory) -> Result<Vec<f64>> {
    let first = traj
        .samples
        .first()
        .ok_or_else(|| KeplerError::InvalidInput("empty trajectory".into()))?
        .state;
    let axis = first
        .r
        .cross(first.v)
        .normalized()
        .ok_or_else(|| KeplerError::DegenerateOrbit("radial motion sweeps no angle".into()))?;
    let mut out = Vec::with_capacity(traj.len());
    let mut theta = 0.0;
    out.push(theta);
    for pair in traj.samples.windows(2) {
        theta += signed_angle(pair[0].state.r, pair[1].state.r, axis);
        out.push(theta);
    }
    Ok(out)
}

/// Time for the position angle to advance by 2π, linearly interpolated on
/// the step where the crossing happens.
pub fn measure_period(traj: &Trajectory) -> Result<f64> {
    let first = traj
        .samples
        .first()
        .ok_or_else(|| KeplerError::InvalidInput("empty trajectory".into()))?
        .state;
    checked_radius(first.r)?;
    let h = energy_of(&traj.system, &first);
    if h >= 0.0 {
        return Err(KeplerError::NotBound { energy: h });
    }
    let theta = accumulated_angle(traj)?;
    for i in 1..theta.len() {
        if theta[i] >= TAU {
            let (t0, t1) = (traj.samples[i - 1].t, traj.samples[i].t);
            let frac = (TAU - theta[i - 1]) / (theta[i] - theta[i - 1]);
            return Ok(t0 + frac * (t1 - t0));
        }
    }
    Err(KeplerError::InsufficientCoverage {
        swept: theta.last().copied().unwrap_or(0.0),
    })
}
