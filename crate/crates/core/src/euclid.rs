//! The reflection construction of the second focus.
//!
//! For a bound state the position `r` is projected radially onto the circle
//! of radius `-k/H` (the boundary of the region the motion can reach),
//! giving `s`. Reflecting `s` in the tangent line of the orbit at `r` lands
//! on the point `t = K/(mH)`, which is therefore conserved. Since
//! `|t - r| + |r| = |s - r| + |r| = |s| = -k/H`, the orbit is the ellipse
//! with foci `0` and `t` and major axis `-k/H`.
//!
//! Everything here is evaluated pointwise from a single state. The
//! functions refuse radial motion (`L = 0`), which has no tangent/normal
//! pair, and unbound motion (`H >= 0`), which has no circle to project on.

use rayon::prelude::*;

use crate::conserved::{angular_momentum, energy, lrl_vector};
use crate::dynamics::{
    analytic_period, default_dt, integrate, measure_period, semi_major_axis, KeplerSystem, Method,
    OrbitState,
};
use crate::error::{KeplerError, Result};
use crate::vector::Vec3;

/// `|K|` below this multiple of `k m` counts as a circular orbit.
pub const CIRCULAR_LRL_FRACTION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line3 {
    pub point: Vec3,
    /// Unit vector.
    pub direction: Vec3,
}

impl Line3 {
    pub fn new(point: Vec3, direction: Vec3) -> Result<Self> {
        let direction = direction
            .normalized()
            .ok_or_else(|| KeplerError::DegenerateOrbit("line with zero direction".into()))?;
        Ok(Self { point, direction })
    }

    /// Mirror image of `q` in this line.
    pub fn reflect(&self, q: Vec3) -> Vec3 {
        let rel = q - self.point;
        let along = self.direction * rel.dot(self.direction);
        self.point + along * 2.0 - rel
    }
}

/// Energy and `|L|` of a state the constructions can work with.
fn bound_planar(sys: &KeplerSystem, state: &OrbitState) -> Result<(f64, Vec3)> {
    let h = energy(sys, state)?;
    if h >= 0.0 {
        return Err(KeplerError::NotBound { energy: h });
    }
    let l = angular_momentum(state, sys.m());
    if l.norm() == 0.0 {
        return Err(KeplerError::DegenerateOrbit(
            "radial motion (L = 0) has no tangent/normal pair".into(),
        ));
    }
    Ok((h, l))
}

/// Radial projection `s = -k r / (|r| H)` of the position onto the circle of
/// radius `-k/H`.
pub fn projection_s(sys: &KeplerSystem, state: &OrbitState) -> Result<Vec3> {
    let (h, _) = bound_planar(sys, state)?;
    Ok(state.r * (-sys.k() / (state.r.norm() * h)))
}

/// Tangent line of the orbit at `r`, directed along the velocity.
pub fn tangent_line(state: &OrbitState) -> Result<Line3> {
    if state.r.cross(state.v).norm() == 0.0 {
        return Err(KeplerError::DegenerateOrbit(
            "tangent line needs a velocity not parallel to r".into(),
        ));
    }
    Line3::new(state.r, state.v)
}

/// `n = p × L`, normal to the tangent line inside the orbital plane.
pub fn normal_vector(sys: &KeplerSystem, state: &OrbitState) -> Result<Vec3> {
    let l = angular_momentum(state, sys.m());
    if l.norm() == 0.0 {
        return Err(KeplerError::DegenerateOrbit(
            "normal p × L vanishes for L = 0".into(),
        ));
    }
    Ok((state.v * sys.m()).cross(l))
}

/// Reflection of `s` in the tangent line:
/// `t = s - 2 ((s - r)·n) n / n²`.
pub fn reflect_in_tangent(sys: &KeplerSystem, state: &OrbitState) -> Result<Vec3> {
    let s = projection_s(sys, state)?;
    let n = normal_vector(sys, state)?;
    Ok(s - n * (2.0 * (s - state.r).dot(n) / n.norm_squared()))
}

/// `|t - r| + |r| - (-k/H)` with `t` from the reflection; zero on a Kepler
/// ellipse.
pub fn gardener_residual(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    let (h, _) = bound_planar(sys, state)?;
    let t = reflect_in_tangent(sys, state)?;
    Ok((t - state.r).norm() + state.r.norm() - (-sys.k() / h))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Force center, always the origin.
    pub focus1: Vec3,
    /// Second focus `K/(mH)`.
    pub focus2: Vec3,
    pub center: Vec3,
    pub eccentricity: f64,
    pub period: f64,
    pub energy: f64,
    pub angular_momentum: f64,
    pub lrl_norm: f64,
}

impl EllipseGeometry {
    /// Relative defect of `a² = b² + c²`.
    pub fn axis_identity_residual(&self) -> f64 {
        (self.a * self.a - self.b * self.b - self.c * self.c).abs() / (self.a * self.a)
    }

    /// Relative defect of the area law `π a b = L T / (2m)`.
    pub fn area_law_residual(&self, sys: &KeplerSystem) -> f64 {
        let area = std::f64::consts::PI * self.a * self.b;
        let swept = self.angular_momentum * self.period / (2.0 * sys.m());
        (area - swept).abs() / area
    }
}

/// Orbital ellipse from `2a = -k/H`, `4c² = K²/(m²H²)` and `a² = b² + c²`.
pub fn ellipse_geometry(sys: &KeplerSystem, state: &OrbitState) -> Result<EllipseGeometry> {
    let (h, l) = bound_planar(sys, state)?;
    let k_vec = lrl_vector(sys, state)?;
    let (m, k) = (sys.m(), sys.k());
    let a = -k / (2.0 * h);
    let lrl_norm = k_vec.norm();
    let (c, eccentricity, focus2) = if lrl_norm < CIRCULAR_LRL_FRACTION * k * m {
        (0.0, 0.0, Vec3::ZERO)
    } else {
        (
            lrl_norm / (2.0 * m * h.abs()),
            lrl_norm / (m * k),
            k_vec / (m * h),
        )
    };
    // b² = a² - c² = L²/(2m|H|), the closed form avoids cancellation at high e
    let b = (l.norm_squared() / (2.0 * m * h.abs())).sqrt();
    Ok(EllipseGeometry {
        a,
        b,
        c,
        focus1: Vec3::ZERO,
        focus2,
        center: focus2 * 0.5,
        eccentricity,
        period: analytic_period(sys, a),
        energy: h,
        angular_momentum: l.norm(),
        lrl_norm,
    })
}

/// `r (1 + e cos θ) - L²/(m k)` where `θ` is the angle from `K` to `r`.
/// For a circular orbit this reduces to `r - L²/(m k)`.
pub fn polar_conic_residual(sys: &KeplerSystem, state: &OrbitState) -> Result<f64> {
    let (_, l) = bound_planar(sys, state)?;
    let k_vec = lrl_vector(sys, state)?;
    let (m, k) = (sys.m(), sys.k());
    let r = state.r.norm();
    let semi_latus = l.norm_squared() / (m * k);
    if k_vec.norm() < CIRCULAR_LRL_FRACTION * k * m {
        return Ok(r - semi_latus);
    }
    let e = k_vec.norm() / (m * k);
    let cos_theta = state.r.dot(k_vec) / (r * k_vec.norm());
    Ok(r * (1.0 + e * cos_theta) - semi_latus)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kepler3Row {
    pub a: f64,
    pub period: f64,
    /// `T² / a³`.
    pub ratio: f64,
}

impl Kepler3Row {
    /// Relative deviation from `4π² m / k`.
    pub fn relative_deviation(&self, sys: &KeplerSystem) -> f64 {
        let expected = kepler3_constant(sys);
        (self.ratio - expected).abs() / expected
    }
}

/// `4π² m / k`.
pub fn kepler3_constant(sys: &KeplerSystem) -> f64 {
    4.0 * std::f64::consts::PI.powi(2) * sys.m() / sys.k()
}

/// Integration length in estimated periods, enough for the swept angle to
/// clear 2π.
const KEPLER3_PERIODS: f64 = 1.1;

/// Integrates each state at the default step, measures its period and
/// returns `(a, T, T²/a³)`. States are processed in parallel; the output
/// order matches the input.
pub fn kepler3_check(sys: &KeplerSystem, states: &[OrbitState]) -> Result<Vec<Kepler3Row>> {
    states
        .par_iter()
        .map(|state| {
            let a = semi_major_axis(sys, state)?;
            let dt = default_dt(sys, state)?;
            let steps = (KEPLER3_PERIODS * analytic_period(sys, a) / dt).ceil() as usize;
            let traj = integrate(sys, state, dt, steps, Method::Rk4)?;
            let period = measure_period(&traj)?;
            Ok(Kepler3Row {
                a,
                period,
                ratio: period * period / (a * a * a),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(v: f64) -> OrbitState {
        OrbitState::new(Vec3::X, Vec3::new(0.0, v, 0.0)).unwrap()
    }

    fn unit() -> KeplerSystem {
        KeplerSystem::unit()
    }

    #[test]
    fn projection_examples() {
        assert_eq!(
            projection_s(&unit(), &state(1.0)).unwrap(),
            Vec3::new(2.0, 0.0, 0.0)
        );
        let s = projection_s(&unit(), &state(0.8)).unwrap();
        assert!((s - Vec3::new(1.0 / 0.68, 0.0, 0.0)).max_abs() < 1e-15);
        assert!((s.x - 1.4705882).abs() < 1e-7);
        let skew = OrbitState::new(Vec3::new(0.6, -0.7, 0.2), Vec3::new(0.5, 0.6, 0.1)).unwrap();
        let s = projection_s(&unit(), &skew).unwrap();
        assert!((s.dot(skew.r) - s.norm() * skew.r.norm()).abs() <= 1e-12 * s.norm());
        let h = energy(&unit(), &skew).unwrap();
        assert!((s.norm() - (-1.0 / h)).abs() <= 1e-12 * (-1.0 / h));
    }

    #[test]
    fn projection_errors() {
        assert!(matches!(
            projection_s(&unit(), &state(2.0)),
            Err(KeplerError::NotBound { energy }) if (energy - 1.0).abs() < 1e-15
        ));
        let radial = OrbitState::new(Vec3::X, Vec3::new(0.1, 0.0, 0.0)).unwrap();
        assert!(matches!(
            projection_s(&unit(), &radial),
            Err(KeplerError::DegenerateOrbit(_))
        ));
    }

    #[test]
    fn tangent_and_normal() {
        let line = tangent_line(&state(0.8)).unwrap();
        assert_eq!(line.point, Vec3::X);
        assert_eq!(line.direction, Vec3::Y);
        let still = OrbitState::new(Vec3::X, Vec3::ZERO).unwrap();
        assert!(tangent_line(&still).is_err());

        let sys = KeplerSystem::new(1.3, 0.7).unwrap();
        let st = OrbitState::new(Vec3::new(0.6, -0.7, 0.2), Vec3::new(0.5, 0.6, 0.1)).unwrap();
        let n = normal_vector(&sys, &st).unwrap();
        assert!(n.dot(st.v).abs() <= 1e-12 * n.norm() * st.v.norm());
        let h = energy(&sys, &st).unwrap();
        let l2 = angular_momentum(&st, sys.m()).norm_squared();
        let expected = 2.0 * sys.m() * (h + sys.k() / st.r.norm()) * l2;
        assert!((n.norm_squared() - expected).abs() <= 1e-10 * expected);
        let radial = OrbitState::new(Vec3::X, Vec3::X).unwrap();
        assert!(normal_vector(&sys, &radial).is_err());
    }

    #[test]
    fn reflection_examples() {
        let t = reflect_in_tangent(&unit(), &state(0.8)).unwrap();
        assert!((t - Vec3::new(2.0 - 1.0 / 0.68, 0.0, 0.0)).max_abs() < 1e-15);
        assert!((t.x - 0.5294118).abs() < 1e-7);
        let t = reflect_in_tangent(&unit(), &state(1.0)).unwrap();
        assert!(t.max_abs() < 1e-15);
        // line reflection agrees with the vector formula
        let line = tangent_line(&state(0.8)).unwrap();
        let s = projection_s(&unit(), &state(0.8)).unwrap();
        assert!(
            (line.reflect(s) - reflect_in_tangent(&unit(), &state(0.8)).unwrap()).max_abs() < 1e-15
        );
    }

    #[test]
    fn normal_projection_identity() {
        // (s - r)·n = -(H + k/r) L² / H, both sides computed independently
        let sys = KeplerSystem::new(0.9, 1.7).unwrap();
        let st = OrbitState::new(Vec3::new(0.4, 0.9, -0.3), Vec3::new(-1.1, 0.5, 0.2)).unwrap();
        let s = projection_s(&sys, &st).unwrap();
        let n = normal_vector(&sys, &st).unwrap();
        let lhs = (s - st.r).dot(n);
        let h = energy(&sys, &st).unwrap();
        let l2 = angular_momentum(&st, sys.m()).norm_squared();
        let rhs = -(h + sys.k() / st.r.norm()) * l2 / h;
        assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
    }

    #[test]
    fn gardener_examples() {
        assert!(gardener_residual(&unit(), &state(0.8)).unwrap().abs() < 1e-15);
        assert!(gardener_residual(&unit(), &state(1.0)).unwrap().abs() < 1e-15);
        assert!(gardener_residual(&unit(), &state(2.0)).is_err());
    }

    #[test]
    fn ellipse_examples() {
        let g = ellipse_geometry(&unit(), &state(1.0)).unwrap();
        assert!((g.a - 1.0).abs() < 1e-15 && (g.b - 1.0).abs() < 1e-15);
        assert_eq!((g.c, g.eccentricity), (0.0, 0.0));
        assert!((g.period - std::f64::consts::TAU).abs() < 1e-15);

        let g = ellipse_geometry(&unit(), &state(0.8)).unwrap();
        assert!((g.a - 0.7352941).abs() < 1e-7);
        assert!((g.c - 0.2647059).abs() < 1e-7);
        assert!((g.eccentricity - 0.36).abs() < 1e-15);
        assert!((g.b - (g.a * g.a - g.c * g.c).sqrt()).abs() < 1e-15);
        assert!((g.b - 0.6859943).abs() < 1e-7);
        assert!((g.focus2.distance(g.focus1) - 2.0 * g.c).abs() < 1e-10);
        assert!(g.axis_identity_residual() < 1e-10);
        assert!(g.area_law_residual(&unit()) < 1e-9);
        assert!((2.0 * g.a - (-1.0 / g.energy)).abs() < 1e-10 * 2.0 * g.a);
    }

    #[test]
    fn polar_conic_examples() {
        assert!(polar_conic_residual(&unit(), &state(1.0)).unwrap().abs() < 1e-15);
        // θ = π at r = (1,0,0): 1·(1 - 0.36) = 0.64 = L²/(mk)
        assert!(polar_conic_residual(&unit(), &state(0.8)).unwrap().abs() < 1e-15);
        assert!(polar_conic_residual(&unit(), &state(2.0)).is_err());
    }

    #[test]
    fn kepler3_examples() {
        let sys = unit();
        let circ = |a: f64| {
            OrbitState::new(
                Vec3::new(a, 0.0, 0.0),
                Vec3::new(0.0, (1.0 / a).sqrt(), 0.0),
            )
            .unwrap()
        };
        let rows = kepler3_check(&sys, &[circ(1.0), circ(0.5), circ(2.0)]).unwrap();
        let four_pi_sq = 4.0 * std::f64::consts::PI.powi(2);
        assert!((four_pi_sq - 39.478418).abs() < 1e-6);
        for row in &rows {
            assert!(row.relative_deviation(&sys) < 1e-4, "{row:?}");
        }
        assert!((rows[1].ratio - rows[2].ratio).abs() / rows[1].ratio < 1e-4);

        let heavy = KeplerSystem::new(2.0, 1.0).unwrap();
        let v = (0.5f64).sqrt();
        let row = kepler3_check(
            &heavy,
            &[OrbitState::new(Vec3::X, Vec3::new(0.0, v, 0.0)).unwrap()],
        )
        .unwrap()[0];
        assert!((row.ratio / rows[0].ratio - 2.0).abs() < 1e-4);

        assert!(matches!(
            kepler3_check(&sys, &[circ(1.0), state(2.0)]),
            Err(KeplerError::NotBound { .. })
        ));
    }
}
