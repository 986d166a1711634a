//! Two-center areal-speed comparison on an ellipse.
//!
//! A point runs around an ellipse twice: once in time `t` with constant
//! areal speed about the center `c` (harmonic motion, `r'' = c - r`), once in
//! time `s` with the same areal speed about an interior point `d`. With `e`
//! the intersection of the line through `c` parallel to the tangent and the
//! line through `r` and `d`,
//!
//! ```text
//! |d²r/ds²| : |d²r/dt²| = |r - e|³ : |r - c| |r - d|²
//! ```
//!
//! When `d` is a focus, `|r - e| = a` at every point, so `|d²r/ds²| |r - d|²`
//! is constant: motion with constant areal speed about a focus is driven by
//! an inverse-square attraction toward that focus.
//!
//! Accelerations in `s` are computed by central differences on a uniform
//! `s`-grid. The grid comes from tabulating `s(t)` with Simpson's rule and
//! inverting it by monotone cubic Hermite interpolation.

use std::f64::consts::TAU;

use crate::error::{KeplerError, Result};
use crate::vector::{PlaneFrame, Vec3};

/// Minimum number of nodes for the `s(t)` table.
pub const MIN_SAMPLES: usize = 16;
/// Interior points must stay this fraction of `a` away from the ellipse.
pub const INTERIOR_MARGIN: f64 = 1e-9;

const PARALLEL_TOL: f64 = 1e-12;

/// Ellipse `P(t) = center + u_axis cos t + w_axis sin t` with `|u_axis| = a`
/// and `|w_axis| = b`, `a >= b > 0`, traversed counterclockwise about
/// `u_axis × w_axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredEllipse {
    pub center: Vec3,
    pub u_axis: Vec3,
    pub w_axis: Vec3,
    /// Focus on the `-u_axis` side.
    pub focus_d: Vec3,
    /// Focus on the `+u_axis` side.
    pub focus_b: Vec3,
}

impl CenteredEllipse {
    pub fn new(center: Vec3, u_axis: Vec3, w_axis: Vec3) -> Result<Self> {
        if !(center.is_finite() && u_axis.is_finite() && w_axis.is_finite()) {
            return Err(KeplerError::InvalidInput(
                "ellipse data must be finite".into(),
            ));
        }
        let (a, b) = (u_axis.norm(), w_axis.norm());
        if !(b > 0.0) || a < b {
            return Err(KeplerError::InvalidInput(format!(
                "need a >= b > 0, got a = {a}, b = {b}"
            )));
        }
        if u_axis.dot(w_axis).abs() > 1e-12 * a * b {
            return Err(KeplerError::InvalidInput(
                "ellipse axes must be orthogonal".into(),
            ));
        }
        let cf = (a * a - b * b).sqrt();
        let u_hat = u_axis / a;
        Ok(Self {
            center,
            u_axis,
            w_axis,
            focus_d: center - u_hat * cf,
            focus_b: center + u_hat * cf,
        })
    }

    /// Ellipse centered at the origin with axes along x and y.
    pub fn planar(a: f64, b: f64) -> Result<Self> {
        Self::new(Vec3::ZERO, Vec3::new(a, 0.0, 0.0), Vec3::new(0.0, b, 0.0))
    }

    pub fn a(&self) -> f64 {
        self.u_axis.norm()
    }

    pub fn b(&self) -> f64 {
        self.w_axis.norm()
    }

    /// Center-to-focus distance `sqrt(a² - b²)`.
    pub fn focal_distance(&self) -> f64 {
        self.focus_d.distance(self.center)
    }

    pub fn eccentricity(&self) -> f64 {
        self.focal_distance() / self.a()
    }

    pub fn frame(&self) -> PlaneFrame {
        let u = self.u_axis / self.a();
        let w = self.w_axis / self.b();
        PlaneFrame {
            u,
            w,
            axis: u.cross(w),
        }
    }

    /// `dP/dt`.
    pub fn velocity(&self, t: f64) -> Vec3 {
        self.w_axis * t.cos() - self.u_axis * t.sin()
    }

    /// Whether `p` lies in the plane, at least `INTERIOR_MARGIN · a` inside.
    pub fn contains(&self, p: Vec3) -> bool {
        let rel = p - self.center;
        let (a, b) = (self.a(), self.b());
        let frame = self.frame();
        if rel.dot(frame.axis).abs() > INTERIOR_MARGIN * a {
            return false;
        }
        let (x, y) = frame.coords(rel);
        // scaled radius of the ellipse through p, compared with 1 - margin
        let level = ((x / a).powi(2) + (y / b).powi(2)).sqrt();
        level < 1.0 - INTERIOR_MARGIN
    }
}

/// Harmonic motion `P(t) = c + u cos t + w sin t`, for which `P'' = c - P`.
pub fn harmonic_position(ell: &CenteredEllipse, t: f64) -> Vec3 {
    ell.center + ell.u_axis * t.cos() + ell.w_axis * t.sin()
}

/// Intersection of `p1 + λ dir1` with `p2 + μ dir2`, both in `frame`'s plane.
fn intersect(frame: &PlaneFrame, p1: Vec3, dir1: Vec3, p2: Vec3, dir2: Vec3) -> Result<Vec3> {
    let (a1, a2) = frame.coords(dir1);
    let (b1, b2) = frame.coords(dir2);
    let det = a1 * b2 - a2 * b1;
    let scale = (a1.hypot(a2)) * (b1.hypot(b2));
    if !(det.abs() > PARALLEL_TOL * scale) {
        return Err(KeplerError::ParallelLines);
    }
    // λ dir1 - μ dir2 = p2 - p1
    let (q1, q2) = frame.coords(p2 - p1);
    let lambda = (q1 * b2 - q2 * b1) / det;
    Ok(p1 + dir1 * lambda)
}

fn line_through_r(ell: &CenteredEllipse, d: Vec3, t: f64) -> Result<(Vec3, Vec3)> {
    let r = harmonic_position(ell, t);
    let chord = r - d;
    if chord.norm() <= PARALLEL_TOL * ell.a() {
        return Err(KeplerError::DegenerateConfiguration(
            "r coincides with d".into(),
        ));
    }
    Ok((r, chord))
}

fn construct_e_about(ell: &CenteredEllipse, d: Vec3, t: f64) -> Result<Vec3> {
    let (_, chord) = line_through_r(ell, d, t)?;
    intersect(&ell.frame(), ell.center, ell.velocity(t), d, chord)
}

/// `e`: where the line through the center parallel to the tangent at `P(t)`
/// meets the line through `P(t)` and `focus_d`.
pub fn construct_e(ell: &CenteredEllipse, t: f64) -> Result<Vec3> {
    construct_e_about(ell, ell.focus_d, t)
}

/// `f`: where the line through `focus_b` parallel to the tangent at `P(t)`
/// meets the line through `focus_d` and `P(t)`.
pub fn construct_f(ell: &CenteredEllipse, t: f64) -> Result<Vec3> {
    let (_, chord) = line_through_r(ell, ell.focus_d, t)?;
    intersect(
        &ell.frame(),
        ell.focus_b,
        ell.velocity(t),
        ell.focus_d,
        chord,
    )
}

/// `|r - e|³ / (|r - c| |r - d|²)`.
pub fn ratio_formula(r: Vec3, c: Vec3, d: Vec3, e_point: Vec3) -> Result<f64> {
    let (re, rc, rd) = (r.distance(e_point), r.distance(c), r.distance(d));
    if re == 0.0 || rc == 0.0 || rd == 0.0 {
        return Err(KeplerError::DegenerateConfiguration(
            "r coincides with c, d or e".into(),
        ));
    }
    Ok(re.powi(3) / (rc * rd * rd))
}

/// `s(t)` tabulated at uniform `t`-nodes for equal areal speed about `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualArealTable {
    pub ellipse: CenteredEllipse,
    pub d: Vec3,
    /// `t_i = 2π i / n`, `i = 0..=n`.
    pub t: Vec<f64>,
    /// `s(t_i)`, with `s(0) = 0`.
    pub s: Vec<f64>,
    /// `ds/dt = |r - d| / |r - e|` at each node.
    pub ds_dt: Vec<f64>,
}

impl EqualArealTable {
    /// Length of one revolution in `s`.
    pub fn period(&self) -> f64 {
        *self.s.last().expect("nonempty table")
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.t.len() - 1
    }

    /// `t(s)` by cubic Hermite interpolation of the inverse table, with
    /// slopes limited so the interpolant stays monotone.
    pub fn t_of_s(&self, s: f64) -> f64 {
        let period = self.period();
        let turns = (s / period).floor();
        let local = s - turns * period;
        let i = match self.s.partition_point(|&x| x <= local) {
            0 => 0,
            p => (p - 1).min(self.intervals() - 1),
        };
        let (s0, s1) = (self.s[i], self.s[i + 1]);
        let (t0, t1) = (self.t[i], self.t[i + 1]);
        let hs = s1 - s0;
        let secant = (t1 - t0) / hs;
        let (mut m0, mut m1) = (1.0 / self.ds_dt[i], 1.0 / self.ds_dt[i + 1]);
        // Fritsch-Carlson: keep (m0, m1)/secant inside the radius-3 disc
        let (alpha, beta) = (m0 / secant, m1 / secant);
        let norm = alpha.hypot(beta);
        if norm > 3.0 {
            m0 = 3.0 * alpha / norm * secant;
            m1 = 3.0 * beta / norm * secant;
        }
        let x = (local - s0) / hs;
        let (x2, x3) = (x * x, x * x * x);
        let h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
        let h10 = x3 - 2.0 * x2 + x;
        let h01 = -2.0 * x3 + 3.0 * x2;
        let h11 = x3 - x2;
        turns * TAU + h00 * t0 + h10 * hs * m0 + h01 * t1 + h11 * hs * m1
    }

    /// `|(r - d) × dr/ds| / 2` at each node, by the chain rule.
    pub fn areal_speeds_about_d(&self) -> Vec<f64> {
        self.t
            .iter()
            .zip(&self.ds_dt)
            .map(|(&t, &g)| {
                let r = harmonic_position(&self.ellipse, t);
                0.5 * (r - self.d).cross(self.ellipse.velocity(t) / g).norm()
            })
            .collect()
    }
}

fn ds_dt(ell: &CenteredEllipse, d: Vec3, t: f64) -> Result<f64> {
    let r = harmonic_position(ell, t);
    let e = construct_e_about(ell, d, t)?;
    Ok(r.distance(d) / r.distance(e))
}

/// Tabulates `s(t)` over one revolution by integrating
/// `ds/dt = |r - d| / |r - e|` with Simpson's rule on `n_samples` intervals.
pub fn reparametrize_equal_areal(
    ell: &CenteredEllipse,
    d: Vec3,
    n_samples: usize,
) -> Result<EqualArealTable> {
    if n_samples < MIN_SAMPLES {
        return Err(KeplerError::InvalidInput(format!(
            "need at least {MIN_SAMPLES} samples, got {n_samples}"
        )));
    }
    if !ell.contains(d) {
        return Err(KeplerError::InvalidInput(format!(
            "point {d} is not strictly inside the ellipse"
        )));
    }
    let h = TAU / n_samples as f64;
    let mut t = Vec::with_capacity(n_samples + 1);
    let mut s = Vec::with_capacity(n_samples + 1);
    let mut g = Vec::with_capacity(n_samples + 1);
    t.push(0.0);
    s.push(0.0);
    g.push(ds_dt(ell, d, 0.0)?);
    for i in 0..n_samples {
        let t0 = i as f64 * h;
        let t1 = (i + 1) as f64 * h;
        let mid = ds_dt(ell, d, t0 + 0.5 * h)?;
        let end = ds_dt(ell, d, t1)?;
        let next = s[i] + h / 6.0 * (g[i] + 4.0 * mid + end);
        t.push(t1);
        s.push(next);
        g.push(end);
    }
    Ok(EqualArealTable {
        ellipse: *ell,
        d,
        t,
        s,
        ds_dt: g,
    })
}

/// One point of the uniform `s`-grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoCenterSample {
    pub t: f64,
    pub s: f64,
    pub r: Vec3,
    pub e_point: Vec3,
    pub f_point: Vec3,
    pub ratio_formula: f64,
    pub ratio_numeric: f64,
    /// `|d²r/ds²| |r - d|²`.
    pub q: f64,
    /// Angle between `d²r/ds²` and `d - r`.
    pub direction_error: f64,
}

fn second_difference(prev: Vec3, here: Vec3, next: Vec3, h: f64) -> Vec3 {
    (next - here * 2.0 + prev) / (h * h)
}

/// Samples the motion about `focus_d` on a uniform `s`-grid of `n_samples`
/// points and evaluates both sides of the ratio theorem at each.
pub fn two_center_samples(ell: &CenteredEllipse, n_samples: usize) -> Result<Vec<TwoCenterSample>> {
    let d = ell.focus_d;
    let table = reparametrize_equal_areal(ell, d, n_samples)?;
    let hs = table.period() / n_samples as f64;
    let ht = TAU / n_samples as f64;
    let t_grid: Vec<f64> = (0..n_samples)
        .map(|j| table.t_of_s(j as f64 * hs))
        .collect();
    let r_grid: Vec<Vec3> = t_grid.iter().map(|&t| harmonic_position(ell, t)).collect();

    (0..n_samples)
        .map(|j| {
            let prev = r_grid[(j + n_samples - 1) % n_samples];
            let next = r_grid[(j + 1) % n_samples];
            let (t, r) = (t_grid[j], r_grid[j]);
            let acc_s = second_difference(prev, r, next, hs);
            let acc_t = second_difference(
                harmonic_position(ell, t - ht),
                r,
                harmonic_position(ell, t + ht),
                ht,
            );
            let e_point = construct_e(ell, t)?;
            let f_point = construct_f(ell, t)?;
            let toward = d - r;
            let direction_error = acc_s.cross(toward).norm().atan2(acc_s.dot(toward));
            Ok(TwoCenterSample {
                t,
                s: j as f64 * hs,
                r,
                e_point,
                f_point,
                ratio_formula: ratio_formula(r, ell.center, d, e_point)?,
                ratio_numeric: acc_s.norm() / acc_t.norm(),
                q: acc_s.norm() * toward.norm_squared(),
                direction_error,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSquareCheck {
    /// `(max Q - min Q) / mean Q` for `Q = |d²r/ds²| |r - d|²`.
    pub spread: f64,
    pub mean_q: f64,
    /// Largest angle between `d²r/ds²` and `d - r`.
    pub max_direction_error: f64,
}

fn inverse_square_of(samples: &[TwoCenterSample]) -> InverseSquareCheck {
    let (mut lo, mut hi, mut sum, mut angle) = (f64::INFINITY, 0.0f64, 0.0, 0.0f64);
    for s in samples {
        lo = lo.min(s.q);
        hi = hi.max(s.q);
        sum += s.q;
        angle = angle.max(s.direction_error);
    }
    let mean_q = sum / samples.len() as f64;
    InverseSquareCheck {
        spread: (hi - lo) / mean_q,
        mean_q,
        max_direction_error: angle,
    }
}

/// Constancy of `|d²r/ds²| |r - d|²` for constant-areal-speed motion about
/// the focus `d`; the spread shrinks at second order in the grid step.
pub fn verify_inverse_square(
    ell: &CenteredEllipse,
    n_samples: usize,
) -> Result<InverseSquareCheck> {
    Ok(inverse_square_of(&two_center_samples(ell, n_samples)?))
}

/// `max |ratio_numeric / ratio_formula - 1|` over the uniform `s`-grid.
pub fn ratio_theorem_residual(ell: &CenteredEllipse, n_samples: usize) -> Result<f64> {
    Ok(ratio_residual_of(&two_center_samples(ell, n_samples)?))
}

fn ratio_residual_of(samples: &[TwoCenterSample]) -> f64 {
    samples
        .iter()
        .map(|s| (s.ratio_numeric / s.ratio_formula - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Everything the two-center check measures, for one ellipse and grid size.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport {
    pub samples: Vec<TwoCenterSample>,
    /// `max ||e - r| - a| / a`.
    pub e_distance_residual: f64,
    /// `max ||d - e| - |e - f|| / a`.
    pub lemma_de_ef: f64,
    /// `max ||f - r| - |b - r|| / a`.
    pub lemma_fr_br: f64,
    /// Relative deviation of the areal speed about `c` (in `t`) from `ab/2`.
    pub areal_center_residual: f64,
    /// Relative deviation of the areal speed about `d` (in `s`) from `ab/2`.
    pub areal_focus_residual: f64,
    pub ratio_residual: f64,
    pub inverse_square: InverseSquareCheck,
}

pub fn newton_report(ell: &CenteredEllipse, n_samples: usize) -> Result<NewtonReport> {
    let samples = two_center_samples(ell, n_samples)?;
    let a = ell.a();
    let target = 0.5 * a * ell.b();

    let mut report = NewtonReport {
        samples: Vec::new(),
        e_distance_residual: 0.0,
        lemma_de_ef: 0.0,
        lemma_fr_br: 0.0,
        areal_center_residual: 0.0,
        areal_focus_residual: 0.0,
        ratio_residual: ratio_residual_of(&samples),
        inverse_square: inverse_square_of(&samples),
    };
    for s in &samples {
        let (d, b, e, f) = (ell.focus_d, ell.focus_b, s.e_point, s.f_point);
        report.e_distance_residual = report
            .e_distance_residual
            .max((e.distance(s.r) - a).abs() / a);
        report.lemma_de_ef = report
            .lemma_de_ef
            .max((d.distance(e) - e.distance(f)).abs() / a);
        report.lemma_fr_br = report
            .lemma_fr_br
            .max((f.distance(s.r) - b.distance(s.r)).abs() / a);
        let areal_c = 0.5 * (s.r - ell.center).cross(ell.velocity(s.t)).norm();
        report.areal_center_residual = report
            .areal_center_residual
            .max((areal_c - target).abs() / target);
    }
    let table = reparametrize_equal_areal(ell, ell.focus_d, n_samples)?;
    report.areal_focus_residual = table
        .areal_speeds_about_d()
        .into_iter()
        .map(|v| (v - target).abs() / target)
        .fold(0.0, f64::max);
    report.samples = samples;
    Ok(report)
}
