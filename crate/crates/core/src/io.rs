//! Flat-file outputs: CSV tables and the plain-text geometry report.
//!
//! All CSV numbers are written in scientific notation with 17 significant
//! digits, rows end in `\n`.

use std::io::{self, Write};

use crate::conserved::{focal_point_t, ConservedSet};
use crate::dynamics::{accumulated_angle, Trajectory};
use crate::error::Result;
use crate::euclid::{gardener_residual, polar_conic_residual, EllipseGeometry};
use crate::newton::{CenteredEllipse, TwoCenterSample};

pub const TRAJECTORY_HEADER: &str = "t,rx,ry,rz,vx,vy,vz";
pub const CONSERVED_HEADER: &str = "t,H,Lx,Ly,Lz,Kx,Ky,Kz";
pub const RESIDUALS_HEADER: &str = "t,gardener,polar_conic,t_drift";
pub const HODOGRAPH_HEADER: &str = "theta,vx,vy,vz";
pub const NEWTON_HEADER: &str = "t,s,rx,ry,ratio_formula,ratio_numeric,Q";

/// 17 significant digits, round-trips every `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_row<W: Write>(out: &mut W, values: &[f64]) -> io::Result<()> {
    let mut line = String::with_capacity(values.len() * 24);
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&fmt_num(*v));
    }
    line.push('\n');
    out.write_all(line.as_bytes())
}

fn header<W: Write>(out: &mut W, h: &str) -> io::Result<()> {
    out.write_all(h.as_bytes())?;
    out.write_all(b"\n")
}

pub fn write_trajectory_csv<W: Write>(out: &mut W, traj: &Trajectory) -> io::Result<()> {
    header(out, TRAJECTORY_HEADER)?;
    for s in &traj.samples {
        let (r, v) = (s.state.r, s.state.v);
        write_row(out, &[s.t, r.x, r.y, r.z, v.x, v.y, v.z])?;
    }
    Ok(())
}

/// Conserved quantities per sample. Errors only on singular samples, which
/// an integrated trajectory never contains.
pub fn write_conserved_csv<W: Write>(out: &mut W, traj: &Trajectory) -> Result<io::Result<()>> {
    let mut rows = Vec::with_capacity(traj.len());
    for s in &traj.samples {
        let q = ConservedSet::of(&traj.system, &s.state)?;
        let (l, k) = (q.angular_momentum, q.lrl);
        rows.push([s.t, q.energy, l.x, l.y, l.z, k.x, k.y, k.z]);
    }
    Ok((|| {
        header(out, CONSERVED_HEADER)?;
        rows.iter().try_for_each(|row| write_row(out, row))
    })())
}

/// Per-sample gardener residual, polar-conic residual and distance of the
/// reflected focus from its initial position.
pub fn write_residuals_csv<W: Write>(out: &mut W, traj: &Trajectory) -> Result<io::Result<()>> {
    let sys = &traj.system;
    let t0 = focal_point_t(sys, traj.initial())?;
    let mut rows = Vec::with_capacity(traj.len());
    for s in &traj.samples {
        let gardener = gardener_residual(sys, &s.state)?;
        let polar = polar_conic_residual(sys, &s.state)?;
        let drift = crate::euclid::reflect_in_tangent(sys, &s.state)?.distance(t0);
        rows.push([s.t, gardener, polar, drift]);
    }
    Ok((|| {
        header(out, RESIDUALS_HEADER)?;
        rows.iter().try_for_each(|row| write_row(out, row))
    })())
}

/// Velocities keyed by the accumulated position angle.
pub fn write_hodograph_csv<W: Write>(out: &mut W, traj: &Trajectory) -> Result<io::Result<()>> {
    let theta = accumulated_angle(traj)?;
    Ok((|| {
        header(out, HODOGRAPH_HEADER)?;
        for (s, th) in traj.samples.iter().zip(theta) {
            let v = s.state.v;
            write_row(out, &[th, v.x, v.y, v.z])?;
        }
        Ok(())
    })())
}

/// `rx, ry` are coordinates of `r - center` along the ellipse axes.
pub fn write_newton_csv<W: Write>(
    out: &mut W,
    ell: &CenteredEllipse,
    samples: &[TwoCenterSample],
) -> io::Result<()> {
    header(out, NEWTON_HEADER)?;
    let frame = ell.frame();
    for s in samples {
        let (x, y) = frame.coords(s.r - ell.center);
        write_row(
            out,
            &[s.t, s.s, x, y, s.ratio_formula, s.ratio_numeric, s.q],
        )?;
    }
    Ok(())
}

/// `key=value` block: a, b, c, e, T, H, L, K (= |K|) and t (second focus).
/// Values use the shortest representation that round-trips.
pub fn geometry_report(geom: &EllipseGeometry) -> String {
    let t = geom.focus2;
    let mut s = String::new();
    for (key, value) in [
        ("a", geom.a),
        ("b", geom.b),
        ("c", geom.c),
        ("e", geom.eccentricity),
        ("T", geom.period),
        ("H", geom.energy),
        ("L", geom.angular_momentum),
        ("K", geom.lrl_norm),
    ] {
        s.push_str(&format!("{key}={value:?}\n"));
    }
    // + 0.0 turns -0.0 into 0.0
    s.push_str(&format!(
        "t={:?},{:?},{:?}\n",
        t.x + 0.0,
        t.y + 0.0,
        t.z + 0.0
    ));
    s
}
