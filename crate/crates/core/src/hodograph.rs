//! Velocity-space picture of the Kepler orbit.
//!
//! The hodograph (the curve traced by `v`) is the circle with center
//! `iK/(mL)` and radius `k/L`, where `i` is the quarter turn about `L/|L|`.
//! Reparametrized by the position angle, `dv/dθ = -k r̂ / L`, so the velocity
//! runs around that circle at constant speed `k/L`. Turning the hodograph
//! clockwise by a right angle and shifting by `-K/(mL)` gives a circle
//! centered at the origin, from which the tangency property and the scaling
//! `λ = -L/H` onto the orbit follow.
//!
//! The operator `i` is always taken about the instantaneous `L/|L|`, so
//! clockwise orbits need no special casing.

use nalgebra::{Matrix3, Vector3};

use crate::conserved::{angular_momentum, energy, lrl_vector};
use crate::dynamics::{accumulated_angle, KeplerSystem, OrbitState, Trajectory};
use crate::error::{KeplerError, Result};
use crate::vector::{quarter_turn, quarter_turn_inverse, PlaneFrame, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HodographFit {
    pub center: Vec3,
    pub radius: f64,
    /// `max ||v - center| - radius|` over the fitted points.
    pub max_residual: f64,
}

/// Orbit-wide constants the checks below compare against: the initial
/// `K`, `|L|` and the unit normal `L/|L|`.
#[derive(Debug, Clone, Copy)]
struct Invariants {
    lrl: Vec3,
    l: f64,
    axis: Vec3,
}

impl Invariants {
    fn of(sys: &KeplerSystem, state: &OrbitState) -> Result<Self> {
        let l_vec = angular_momentum(state, sys.m());
        let l = l_vec.norm();
        if l == 0.0 {
            return Err(KeplerError::DegenerateOrbit(
                "radial motion (L = 0) has no hodograph circle".into(),
            ));
        }
        Ok(Self {
            lrl: lrl_vector(sys, state)?,
            l,
            axis: l_vec / l,
        })
    }

    fn radius(&self, sys: &KeplerSystem) -> f64 {
        sys.k() / self.l
    }
}

fn first_state(traj: &Trajectory) -> Result<OrbitState> {
    traj.samples
        .first()
        .map(|s| s.state)
        .ok_or_else(|| KeplerError::InvalidInput("empty trajectory".into()))
}

fn require_bound(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    let h = energy(sys, state)?;
    if h >= 0.0 {
        return Err(KeplerError::NotBound { energy: h });
    }
    Ok(h)
}

/// Predicted hodograph center `iK/(mL)`.
pub fn predicted_center(sys: &KeplerSystem, state: &OrbitState) -> Result<Vec3> {
    let inv = Invariants::of(sys, state)?;
    Ok(quarter_turn(inv.lrl, inv.axis)? / (sys.m() * inv.l))
}

/// Predicted hodograph radius `k/L`.
pub fn predicted_radius(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    Ok(Invariants::of(sys, state)?.radius(sys))
}

/// Algebraic (Kåsa) circle fit in the frame plane followed by one
/// Gauss-Newton step on the geometric residual.
pub fn fit_circle(points: &[Vec3], frame: &PlaneFrame) -> Result<HodographFit> {
    if points.len() < 3 {
        return Err(KeplerError::CollinearPoints);
    }
    let coords: Vec<(f64, f64)> = points.iter().map(|&p| frame.coords(p)).collect();
    let n = coords.len() as f64;
    let (mx, my) = coords
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(x, y)| (sx + x / n, sy + y / n));
    let scale = (coords
        .iter()
        .map(|&(x, y)| (x - mx).powi(2) + (y - my).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    if !(scale > 0.0) {
        return Err(KeplerError::CollinearPoints);
    }
    let local: Vec<(f64, f64)> = coords
        .iter()
        .map(|&(x, y)| ((x - mx) / scale, (y - my) / scale))
        .collect();

    // x² + y² + D x + E y + F = 0
    let mut normal = Matrix3::<f64>::zeros();
    let mut rhs = Vector3::<f64>::zeros();
    for &(x, y) in &local {
        let row = Vector3::new(x, y, 1.0);
        normal += row * row.transpose();
        rhs -= row * (x * x + y * y);
    }
    // with centered, unit-RMS data the normal matrix is O(n); a collinear set
    // leaves it rank deficient
    if normal.determinant().abs() <= 1e-12 * n * n * n {
        return Err(KeplerError::CollinearPoints);
    }
    let sol = normal
        .lu()
        .solve(&rhs)
        .ok_or(KeplerError::CollinearPoints)?;
    let (mut cx, mut cy) = (-0.5 * sol[0], -0.5 * sol[1]);
    let r_sq = cx * cx + cy * cy - sol[2];
    if !(r_sq > 0.0) {
        return Err(KeplerError::CollinearPoints);
    }
    let mut radius = r_sq.sqrt();

    let mut jtj = Matrix3::<f64>::zeros();
    let mut jtr = Vector3::<f64>::zeros();
    for &(x, y) in &local {
        let d = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
        if d == 0.0 {
            continue;
        }
        let j = Vector3::new(-(x - cx) / d, -(y - cy) / d, -1.0);
        jtj += j * j.transpose();
        jtr += j * (d - radius);
    }
    if let Some(delta) = jtj.lu().solve(&(-jtr)) {
        cx += delta[0];
        cy += delta[1];
        radius += delta[2];
    }

    let center = frame.point(mx + cx * scale, my + cy * scale);
    let radius = radius * scale;
    let max_residual = points
        .iter()
        .map(|&p| ((p - center).norm() - radius).abs())
        .fold(0.0, f64::max);
    Ok(HodographFit {
        center,
        radius,
        max_residual,
    })
}

/// `max ||v - iK₀/(mL₀)| - k/L₀| / (k/L₀)` over the trajectory, with the
/// constants taken from the first sample.
pub fn membership_residual(traj: &Trajectory) -> Result<f64> {
    let sys = &traj.system;
    let s0 = first_state(traj)?;
    let center = predicted_center(sys, &s0)?;
    let radius = predicted_radius(sys, &s0)?;
    Ok(traj
        .states()
        .map(|s| ((s.v - center).norm() - radius).abs() / radius)
        .fold(0.0, f64::max))
}

/// Central-difference `dv/dθ` against `-k r̂ / L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularDerivativeCheck {
    /// `max |Δv/Δθ + k r̂/L| / (k/L)` over interior samples.
    pub residual: f64,
    /// `max ||Δv/Δθ| - k/L| / (k/L)`.
    pub speed_residual: f64,
}

pub fn angular_derivative_check(traj: &Trajectory) -> Result<AngularDerivativeCheck> {
    let sys = &traj.system;
    if traj.len() < 3 {
        return Err(KeplerError::InvalidInput(
            "dv/dθ check needs at least 3 samples".into(),
        ));
    }
    let s0 = first_state(traj)?;
    require_bound(sys, &s0)?;
    let inv = Invariants::of(sys, &s0)?;
    let speed = inv.radius(sys);
    let theta = accumulated_angle(traj)?;

    let mut out = AngularDerivativeCheck {
        residual: 0.0,
        speed_residual: 0.0,
    };
    for i in 1..traj.len() - 1 {
        let prev = &traj.samples[i - 1].state;
        let next = &traj.samples[i + 1].state;
        let here = &traj.samples[i].state;
        let dv = (next.v - prev.v) / (theta[i + 1] - theta[i - 1]);
        let expected = here.r * (-sys.k() / (here.r.norm() * inv.l));
        out.residual = out.residual.max((dv - expected).norm() / speed);
        out.speed_residual = out.speed_residual.max((dv.norm() - speed).abs() / speed);
    }
    Ok(out)
}

/// Residual of `dv/dθ = -k r/(r L)`; second order in the sampling step.
pub fn dv_dtheta_residual(traj: &Trajectory) -> Result<f64> {
    angular_derivative_check(traj).map(|c| c.residual)
}

/// Turns each velocity clockwise by a right angle and shifts it by
/// `-K/(mL)`; the image should be the circle of radius `k/L` about the
/// origin. Also checks `k r̂/L + K/(mL) = -i v` sample by sample. Returns the
/// larger of the two relative residuals.
pub fn construct_d_residual(traj: &Trajectory) -> Result<f64> {
    let sys = &traj.system;
    let s0 = first_state(traj)?;
    require_bound(sys, &s0)?;
    let inv = Invariants::of(sys, &s0)?;
    let radius = inv.radius(sys);
    let shift = inv.lrl / (sys.m() * inv.l);

    let mut worst: f64 = 0.0;
    for s in traj.states() {
        let turned = quarter_turn_inverse(s.v, inv.axis)?;
        let mapped = turned - shift;
        worst = worst.max((mapped.norm() - radius).abs() / radius);
        let lhs = s.r * (sys.k() / (s.r.norm() * inv.l)) + shift;
        worst = worst.max((lhs - turned).norm() / radius);
    }
    Ok(worst)
}

/// `max |v̂ · d̂|` where `d̂` points from `-K/(mL)` to `k r̂/L`: the orbit
/// tangent is perpendicular to that chord of the shifted circle.
pub fn tangency_residual(traj: &Trajectory) -> Result<f64> {
    let sys = &traj.system;
    let s0 = first_state(traj)?;
    require_bound(sys, &s0)?;
    let inv = Invariants::of(sys, &s0)?;
    let base = -inv.lrl / (sys.m() * inv.l);

    let mut worst: f64 = 0.0;
    for s in traj.states() {
        let tip = s.r * (sys.k() / (s.r.norm() * inv.l));
        let (Some(v_hat), Some(d_hat)) = (s.v.normalized(), (tip - base).normalized()) else {
            return Err(KeplerError::DegenerateOrbit("zero tangent or chord".into()));
        };
        worst = worst.max(v_hat.dot(d_hat).abs());
    }
    Ok(worst)
}

/// Checks `-λK/(mL) = K/(mH)` and `λ k/L = -k/H` for `λ = -L/H`; returns
/// the larger relative discrepancy (both measured against `-k/H`).
pub fn scaling_lambda_check(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    let h = require_bound(sys, state)?;
    let inv = Invariants::of(sys, state)?;
    let lambda = -inv.l / h;
    let major = -sys.k() / h;
    let scaled_focus = -inv.lrl * (lambda / (sys.m() * inv.l));
    let focus = inv.lrl / (sys.m() * h);
    let focus_err = (scaled_focus - focus).norm() / major;
    let axis_err = (lambda * sys.k() / inv.l - major).abs() / major;
    Ok(focus_err.max(axis_err))
}

/// `λ = -L/H`.
pub fn scaling_lambda(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    let h = require_bound(sys, state)?;
    Ok(-Invariants::of(sys, state)?.l / h)
}
