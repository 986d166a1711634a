//! Energy `H`, angular momentum `L`, Laplace-Runge-Lenz vector `K` and the
//! conserved second focus `t = K/(mH)`.

use crate::dynamics::{KeplerSystem, OrbitState, Trajectory};
use crate::error::{KeplerError, Result};
use crate::vector::Vec3;

fn radius(r: Vec3) -> Result<f64> {
    let n = r.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(KeplerError::SingularPosition {
            radius: n,
            step: None,
        });
    }
    Ok(n)
}

/// `H = m|v|²/2 - k/|r|`.
pub fn energy(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    let r = radius(state.r)?;
    Ok(0.5 * sys.m() * state.v.norm_squared() - sys.k() / r)
}

/// `L = r × (m v)`.
pub fn angular_momentum(state: &OrbitState, m: f64) -> Vec3 {
    state.r.cross(state.v * m)
}

/// `K = p × L - k m r/|r|`.
pub fn lrl_vector(sys: &KeplerSystem, state: &OrbitState) -> Result<Vec3> {
    let r = radius(state.r)?;
    let p = state.v * sys.m();
    let l = state.r.cross(p);
    Ok(p.cross(l) - state.r * (sys.k() * sys.m() / r))
}

/// Second focus `t = K/(mH)`; only defined for bound states.
pub fn focal_point_t(sys: &KeplerSystem, state: &OrbitState) -> Result<Vec3> {
    let h = energy(sys, state)?;
    if h >= 0.0 {
        return Err(KeplerError::NotBound { energy: h });
    }
    Ok(lrl_vector(sys, state)? / (sys.m() * h))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedSet {
    pub energy: f64,
    pub angular_momentum: Vec3,
    pub lrl: Vec3,
    /// Present iff `energy < 0`.
    pub focal_point: Option<Vec3>,
}

impl ConservedSet {
    pub fn of(sys: &KeplerSystem, state: &OrbitState) -> Result<Self> {
        let energy = energy(sys, state)?;
        let lrl = lrl_vector(sys, state)?;
        Ok(Self {
            energy,
            angular_momentum: angular_momentum(state, sys.m()),
            lrl,
            focal_point: (energy < 0.0).then(|| lrl / (sys.m() * energy)),
        })
    }

    /// Relative defect of `K² = 2mHL² + m²k²`.
    pub fn parameter_identity_residual(&self, sys: &KeplerSystem) -> f64 {
        let (m, k) = (sys.m(), sys.k());
        let rhs = 2.0 * m * self.energy * self.angular_momentum.norm_squared() + m * m * k * k;
        (self.lrl.norm_squared() - rhs).abs() / (m * m * k * k).max(self.lrl.norm_squared())
    }

    /// `|K·L| / (|K||L|)`, zero when either vanishes.
    pub fn in_plane_residual(&self) -> f64 {
        let denom = self.lrl.norm() * self.angular_momentum.norm();
        if denom == 0.0 {
            0.0
        } else {
            self.lrl.dot(self.angular_momentum).abs() / denom
        }
    }
}

/// Maximum relative drift of each conserved quantity along a trajectory.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DriftReport {
    pub max_rel_dh: f64,
    pub max_rel_dl: f64,
    pub max_rel_dk: f64,
    /// Per-sample `(dH, dL, dK)` relative drifts.
    pub series: Vec<[f64; 3]>,
}

/// Drift of `Q ∈ {H, L, K}` measured as `|Q(t) - Q(0)| / max(|Q(0)|, k m)`.
pub fn drift_report(traj: &Trajectory) -> Result<DriftReport> {
    let sys = &traj.system;
    let first = traj
        .samples
        .first()
        .ok_or_else(|| KeplerError::InvalidInput("empty trajectory".into()))?;
    let q0 = ConservedSet::of(sys, &first.state)?;
    let floor = sys.k() * sys.m();
    let scale_h = q0.energy.abs().max(floor);
    let scale_l = q0.angular_momentum.norm().max(floor);
    let scale_k = q0.lrl.norm().max(floor);

    let mut report = DriftReport {
        series: Vec::with_capacity(traj.len()),
        ..Default::default()
    };
    for sample in &traj.samples {
        let q = ConservedSet::of(sys, &sample.state)?;
        let d = [
            (q.energy - q0.energy).abs() / scale_h,
            (q.angular_momentum - q0.angular_momentum).norm() / scale_l,
            (q.lrl - q0.lrl).norm() / scale_k,
        ];
        report.max_rel_dh = report.max_rel_dh.max(d[0]);
        report.max_rel_dl = report.max_rel_dl.max(d[1]);
        report.max_rel_dk = report.max_rel_dk.max(d[2]);
        report.series.push(d);
    }
    Ok(report)
}
