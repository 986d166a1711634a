//! Static two-panel figure: the orbit with its circle C and foci on the
//! left, the hodograph with circle D on the right.

use std::fmt::Write as _;

use crate::conserved::{angular_momentum, energy, lrl_vector};
use crate::dynamics::Trajectory;
use crate::error::{KeplerError, Result};
use crate::hodograph::predicted_center;
use crate::vector::{plane_frame, PlaneFrame};

const WIDTH: f64 = 1000.0;
const HEIGHT: f64 = 500.0;
const PANEL: f64 = 440.0;
const MAX_POLYLINE_POINTS: usize = 2000;

const ORBIT_STROKE: &str = "#1f4e9c";
const CIRCLE_STROKE: &str = "#c0392b";
const HODOGRAPH_STROKE: &str = "#2e7d32";

/// Maps plane coordinates into one square panel, y up.
struct Panel {
    x0: f64,
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Panel {
    fn fit(x0: f64, bounds: [f64; 4]) -> Self {
        let [xmin, xmax, ymin, ymax] = bounds;
        let span = (xmax - xmin).max(ymax - ymin).max(f64::MIN_POSITIVE);
        Panel {
            x0,
            cx: 0.5 * (xmin + xmax),
            cy: 0.5 * (ymin + ymax),
            scale: PANEL / span,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.x0 + 0.5 * WIDTH / 2.0 + (x - self.cx) * self.scale,
            0.5 * HEIGHT - (y - self.cy) * self.scale,
        )
    }
}

fn grow(bounds: &mut [f64; 4], (x, y): (f64, f64)) {
    bounds[0] = bounds[0].min(x);
    bounds[1] = bounds[1].max(x);
    bounds[2] = bounds[2].min(y);
    bounds[3] = bounds[3].max(y);
}

fn grow_circle(bounds: &mut [f64; 4], (x, y): (f64, f64), radius: f64) {
    grow(bounds, (x - radius, y - radius));
    grow(bounds, (x + radius, y + radius));
}

const EMPTY: [f64; 4] = [
    f64::INFINITY,
    f64::NEG_INFINITY,
    f64::INFINITY,
    f64::NEG_INFINITY,
];

fn polyline(out: &mut String, panel: &Panel, pts: &[(f64, f64)], stroke: &str) {
    let stride = pts.len().div_ceil(MAX_POLYLINE_POINTS).max(1);
    let mut path = String::new();
    for (i, &p) in pts.iter().enumerate() {
        if i % stride == 0 || i + 1 == pts.len() {
            let (x, y) = panel.map(p);
            let _ = write!(path, "{x:.3},{y:.3} ");
        }
    }
    let _ = writeln!(
        out,
        r#"  <polyline points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#,
        path.trim_end()
    );
}

fn circle(out: &mut String, panel: &Panel, center: (f64, f64), radius: f64, stroke: &str) {
    let (x, y) = panel.map(center);
    let _ = writeln!(
        out,
        r#"  <circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="none" stroke="{stroke}" stroke-width="1" stroke-dasharray="6 4"/>"#,
        radius * panel.scale
    );
}

fn point(out: &mut String, panel: &Panel, p: (f64, f64), label: &str) {
    let (x, y) = panel.map(p);
    let _ = writeln!(
        out,
        r#"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"  <text x="{:.3}" y="{:.3}" font-size="14">{label}</text>"#,
        x + 6.0,
        y - 6.0
    );
}

fn label(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(
        out,
        r#"  <text x="{x:.1}" y="{y:.1}" font-size="16">{text}</text>"#
    );
}

/// Renders the figure for a bound trajectory. Positions and velocities are
/// projected onto the plane orthogonal to the initial angular momentum.
pub fn render(traj: &Trajectory) -> Result<String> {
    if traj.is_empty() {
        return Err(KeplerError::InvalidInput("empty trajectory".into()));
    }
    let sys = &traj.system;
    let s0 = traj.initial();
    let h = energy(sys, s0)?;
    if h >= 0.0 {
        return Err(KeplerError::NotBound { energy: h });
    }
    let l = angular_momentum(s0, sys.m());
    let frame: PlaneFrame = plane_frame(l)?;
    let major = -sys.k() / h;
    let t_focus = frame.coords(lrl_vector(sys, s0)? / (sys.m() * h));
    let hod_center = frame.coords(predicted_center(sys, s0)?);
    let hod_radius = sys.k() / l.norm();

    let orbit: Vec<(f64, f64)> = traj.states().map(|s| frame.coords(s.r)).collect();
    let hodo: Vec<(f64, f64)> = traj.states().map(|s| frame.coords(s.v)).collect();

    let mut left = EMPTY;
    grow_circle(&mut left, (0.0, 0.0), major);
    orbit.iter().for_each(|&p| grow(&mut left, p));
    let mut right = EMPTY;
    grow_circle(&mut right, hod_center, hod_radius);
    grow_circle(&mut right, (0.0, 0.0), hod_radius);
    hodo.iter().for_each(|&p| grow(&mut right, p));

    let lp = Panel::fit(0.0, left);
    let rp = Panel::fit(WIDTH / 2.0, right);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r##"  <line x1="{0}" y1="0" x2="{0}" y2="{HEIGHT}" stroke="#bbbbbb"/>"##,
        WIDTH / 2.0
    );

    label(&mut out, 12.0, 22.0, "position: orbit E, circle C");
    circle(&mut out, &lp, (0.0, 0.0), major, CIRCLE_STROKE);
    polyline(&mut out, &lp, &orbit, ORBIT_STROKE);
    point(&mut out, &lp, (0.0, 0.0), "O");
    point(&mut out, &lp, t_focus, "t");

    label(
        &mut out,
        WIDTH / 2.0 + 12.0,
        22.0,
        "velocity: hodograph H, circle D",
    );
    circle(&mut out, &rp, (0.0, 0.0), hod_radius, CIRCLE_STROKE);
    polyline(&mut out, &rp, &hodo, HODOGRAPH_STROKE);
    point(&mut out, &rp, (0.0, 0.0), "0");
    point(&mut out, &rp, hod_center, "iK/mL");

    out.push_str("</svg>\n");
    Ok(out)
}
