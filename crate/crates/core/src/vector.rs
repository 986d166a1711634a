//! Three-dimensional vector algebra and the in-plane frame used by the
//! orbital constructions.
//!
//! Positions, velocities, momenta, the angular momentum `L` and the
//! Laplace-Runge-Lenz vector `K` all live in [`Vec3`]. The orbital plane is
//! the plane perpendicular to `L`; [`PlaneFrame`] gives it an orthonormal
//! basis and [`quarter_turn`] realizes the counterclockwise rotation by a
//! right angle inside it (multiplication by `i` when the plane is read as
//! the complex line).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{KeplerError, Result};

/// Tolerance for accepting an axis as a unit vector.
const UNIT_TOL: f64 = 1e-9;
/// Tolerance for accepting a vector as lying in a rotation plane.
const IN_PLANE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    /// Unchecked constructor. Use [`Vec3::try_new`] for values coming from
    /// outside the library.
    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Rejects NaN and infinite components.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && z.is_finite() {
            Ok(Self { x, y, z })
        } else {
            Err(KeplerError::InvalidInput(format!(
                "vector components must be finite, got ({x}, {y}, {z})"
            )))
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Right-handed outer product.
    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        // hypot-style scaling is unnecessary at orbital magnitudes
        self.norm_squared().sqrt()
    }

    /// Unit vector, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "({:.*}, {:.*}, {:.*})", p, self.x, p, self.y, p, self.z),
            None => write!(f, "({}, {}, {})", self.x, self.y, self.z),
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Vec3 {
    #[inline]
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

#[inline]
pub fn dot(u: Vec3, v: Vec3) -> f64 {
    u.dot(v)
}

#[inline]
pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    u.cross(v)
}

/// Counterclockwise rotation of `v` by π/2 about `axis`, i.e. `axis × v`.
///
/// `axis` must be a unit vector and `v` must lie in the plane perpendicular
/// to it.
pub fn quarter_turn(v: Vec3, axis: Vec3) -> Result<Vec3> {
    check_unit(axis)?;
    let off_plane = v.dot(axis).abs();
    if off_plane > IN_PLANE_TOL * v.norm() {
        return Err(KeplerError::InvalidInput(format!(
            "vector {v} is not in the plane perpendicular to {axis} (v·axis = {off_plane:e})"
        )));
    }
    Ok(axis.cross(v))
}

/// Clockwise rotation by π/2 about `axis`; the inverse of [`quarter_turn`].
pub fn quarter_turn_inverse(v: Vec3, axis: Vec3) -> Result<Vec3> {
    quarter_turn(v, axis).map(|w| -w)
}

fn check_unit(axis: Vec3) -> Result<()> {
    if !axis.is_finite() || (axis.norm() - 1.0).abs() > UNIT_TOL {
        return Err(KeplerError::InvalidInput(format!(
            "rotation axis {axis} is not a unit vector"
        )));
    }
    Ok(())
}

/// Orthonormal, right-handed basis of the plane perpendicular to `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneFrame {
    pub u: Vec3,
    pub w: Vec3,
    pub axis: Vec3,
}

impl PlaneFrame {
    /// In-plane coordinates of `v` (the component along `axis` is dropped).
    pub fn coords(&self, v: Vec3) -> (f64, f64) {
        (v.dot(self.u), v.dot(self.w))
    }

    /// Point of the plane with coordinates `(p, q)`.
    pub fn point(&self, p: f64, q: f64) -> Vec3 {
        self.u * p + self.w * q
    }

    /// Projection of `v` onto the plane.
    pub fn project(&self, v: Vec3) -> Vec3 {
        v - self.axis * v.dot(self.axis)
    }
}

/// Canonical basis vectors with |ê·axis| above this are treated as parallel
/// to the axis when seeding the frame.
const SEED_PARALLEL_COS: f64 = 0.9;

/// Frame of the plane perpendicular to `l`.
///
/// The first in-plane vector is Gram-Schmidt of the first canonical basis
/// vector (x, then y) that is not parallel to `l`; the second completes the
/// right-handed triple so that `u × w = l/|l|`.
pub fn plane_frame(l: Vec3) -> Result<PlaneFrame> {
    let axis = match l.normalized() {
        Some(a) if l.is_finite() => a,
        _ => {
            return Err(KeplerError::DegenerateOrbit(
                "zero angular momentum has no orbital plane".into(),
            ))
        }
    };
    let seed = if axis.x.abs() <= SEED_PARALLEL_COS {
        Vec3::X
    } else {
        Vec3::Y
    };
    let u = (seed - axis * seed.dot(axis))
        .normalized()
        .expect("seed is not parallel to the axis");
    let w = axis.cross(u);
    Ok(PlaneFrame { u, w, axis })
}

/// Counterclockwise angle about `frame.axis` from `origin_dir` to the
/// in-plane projection of `v`, in `[0, 2π)`.
pub fn angle_in_plane(v: Vec3, frame: &PlaneFrame, origin_dir: Vec3) -> Result<f64> {
    let (p, q) = frame.coords(v);
    if p == 0.0 && q == 0.0 {
        return Err(KeplerError::DegenerateOrbit(format!(
            "vector {v} has no component in the orbital plane"
        )));
    }
    let (op, oq) = frame.coords(origin_dir);
    if op == 0.0 && oq == 0.0 {
        return Err(KeplerError::InvalidInput(
            "reference direction has no component in the orbital plane".into(),
        ));
    }
    let angle = (op * q - oq * p).atan2(op * p + oq * q);
    let wrapped = if angle < 0.0 {
        angle + std::f64::consts::TAU
    } else {
        angle
    };
    // -0.0 and values rounding up to 2π both map to 0
    Ok(if wrapped >= std::f64::consts::TAU {
        0.0
    } else {
        wrapped.abs()
    })
}

/// Signed counterclockwise angle about `axis` from `a` to `b`, in `(-π, π]`.
pub(crate) fn signed_angle(a: Vec3, b: Vec3, axis: Vec3) -> f64 {
    a.cross(b).dot(axis).atan2(a.dot(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(Vec3::X, Vec3::Y), 0.0);
        assert_eq!(
            dot(Vec3::new(1.0, 2.0, 3.0), Vec3::new(1.0, 2.0, 3.0)),
            14.0
        );
        assert_eq!(dot(Vec3::new(2.0, 0.0, 0.0), Vec3::new(3.0, 4.0, 0.0)), 6.0);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(Vec3::X, Vec3::Y), Vec3::Z);
        let a = Vec3::new(1.5, -2.0, 0.25);
        assert_eq!(cross(a, a), Vec3::ZERO);
        assert_eq!(cross(Vec3::Y, Vec3::Z), Vec3::X);
    }

    #[test]
    fn try_new_rejects_non_finite() {
        assert!(Vec3::try_new(1.0, f64::NAN, 0.0).is_err());
        assert!(Vec3::try_new(f64::INFINITY, 0.0, 0.0).is_err());
        assert!(Vec3::try_new(1.0, 2.0, 3.0).is_ok());
    }

    #[test]
    fn quarter_turn_examples() {
        assert_eq!(quarter_turn(Vec3::X, Vec3::Z).unwrap(), Vec3::Y);
        let v = Vec3::new(3.0, 4.0, 0.0);
        let twice = quarter_turn(quarter_turn(v, Vec3::Z).unwrap(), Vec3::Z).unwrap();
        assert_eq!(twice, Vec3::new(-3.0, -4.0, 0.0));
        // K = (-0.36, 0, 0) about +z lands on -y
        let k = Vec3::new(-0.36, 0.0, 0.0);
        let oracle = Vec3::new(0.0 * 0.0 - 1.0 * 0.0, 1.0 * -0.36 - 0.0 * 0.0, 0.0);
        assert!(close(quarter_turn(k, Vec3::Z).unwrap(), oracle, 0.0));
    }

    #[test]
    fn quarter_turn_rejects_bad_input() {
        assert!(quarter_turn(Vec3::X, Vec3::new(0.0, 0.0, 2.0)).is_err());
        assert!(quarter_turn(Vec3::new(1.0, 0.0, 0.5), Vec3::Z).is_err());
        assert_eq!(quarter_turn_inverse(Vec3::Y, Vec3::Z).unwrap(), Vec3::X);
    }

    fn assert_frame_invariants(f: &PlaneFrame) {
        assert!(f.u.dot(f.w).abs() <= 1e-12);
        assert!(f.u.dot(f.axis).abs() <= 1e-12);
        assert!(f.w.dot(f.axis).abs() <= 1e-12);
        assert!(close(f.u.cross(f.w), f.axis, 1e-12));
        for v in [f.u, f.w, f.axis] {
            assert!((v.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn plane_frame_canonical() {
        let f = plane_frame(Vec3::Z).unwrap();
        assert_eq!(f.u, Vec3::X);
        assert_eq!(f.w, Vec3::Y);
        assert_eq!(f.axis, Vec3::Z);
    }

    #[test]
    fn plane_frame_flipped_axis() {
        let f = plane_frame(Vec3::new(0.0, 0.0, -2.0)).unwrap();
        assert_eq!(f.axis, Vec3::new(0.0, 0.0, -1.0));
        assert_frame_invariants(&f);
    }

    #[test]
    fn plane_frame_diagonal_matches_gram_schmidt() {
        let s = 1.0 / 3f64.sqrt();
        let l = Vec3::new(s, s, s);
        let f = plane_frame(l).unwrap();
        assert_frame_invariants(&f);
        // Gram-Schmidt of x against the diagonal: (2,-1,-1)/sqrt(6)
        let gs = Vec3::new(2.0, -1.0, -1.0) / 6f64.sqrt();
        assert!(close(f.u, gs, 1e-15));
    }

    #[test]
    fn plane_frame_along_x_uses_y_seed() {
        let f = plane_frame(Vec3::new(3.0, 0.0, 0.0)).unwrap();
        assert_eq!(f.u, Vec3::Y);
        assert_frame_invariants(&f);
    }

    #[test]
    fn plane_frame_zero_is_degenerate() {
        assert!(matches!(
            plane_frame(Vec3::ZERO),
            Err(KeplerError::DegenerateOrbit(_))
        ));
    }

    #[test]
    fn angle_examples() {
        let f = plane_frame(Vec3::Z).unwrap();
        assert!((angle_in_plane(Vec3::Y, &f, Vec3::X).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(angle_in_plane(Vec3::X, &f, Vec3::X).unwrap(), 0.0);
        let v = Vec3::new(-FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0);
        let oracle = (-FRAC_1_SQRT_2).atan2(-FRAC_1_SQRT_2) + 2.0 * PI;
        let got = angle_in_plane(v, &f, Vec3::X).unwrap();
        assert!((got - oracle).abs() < 1e-15);
        assert!((got - 5.0 * PI / 4.0).abs() < 1e-15);
        assert!(angle_in_plane(Vec3::new(0.0, 0.0, 4.0), &f, Vec3::X).is_err());
    }

    fn vec_strategy() -> impl Strategy<Value = Vec3> {
        (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn triple_product_symmetry(u in vec_strategy(), v in vec_strategy(), w in vec_strategy()) {
            let scale = (u.norm() * v.norm() * w.norm()).max(1.0);
            prop_assert!((u.dot(v.cross(w)) - u.cross(v).dot(w)).abs() <= 1e-12 * scale);
        }

        #[test]
        fn bac_cab(u in vec_strategy(), v in vec_strategy(), w in vec_strategy()) {
            let scale = (u.norm() * v.norm() * w.norm()).max(1.0);
            let lhs = u.cross(v.cross(w));
            let rhs = v * u.dot(w) - w * u.dot(v);
            prop_assert!((lhs - rhs).max_abs() <= 1e-12 * scale);
        }

        #[test]
        fn quarter_turn_is_isometry_of_order_four(l in vec_strategy(), v in vec_strategy()) {
            prop_assume!(l.norm() > 1e-3);
            let f = plane_frame(l).unwrap();
            let v = f.project(v);
            let once = quarter_turn(v, f.axis).unwrap();
            prop_assert!((once.norm() - v.norm()).abs() <= 1e-12 * v.norm().max(1.0));
            let mut w = v;
            for _ in 0..4 {
                w = quarter_turn(w, f.axis).unwrap();
            }
            prop_assert!((w - v).max_abs() <= 1e-12 * v.norm().max(1.0));
        }

        #[test]
        fn frames_are_orthonormal(l in vec_strategy()) {
            prop_assume!(l.norm() > 1e-6);
            assert_frame_invariants(&plane_frame(l).unwrap());
        }
    }

    // Leibniz rules on analytic paths via central differences.
    #[test]
    fn leibniz_product_rules() {
        let u = |t: f64| Vec3::new(t.cos(), (2.0 * t).sin(), t * t);
        let du = |t: f64| Vec3::new(-t.sin(), 2.0 * (2.0 * t).cos(), 2.0 * t);
        let v = |t: f64| Vec3::new(t.exp(), 1.0 / (1.0 + t * t), (3.0 * t).cos());
        let dv = |t: f64| {
            Vec3::new(
                t.exp(),
                -2.0 * t / (1.0 + t * t).powi(2),
                -3.0 * (3.0 * t).sin(),
            )
        };
        let h = 1e-5;
        for &t in &[-0.7, 0.0, 0.3, 1.1] {
            let fd_dot = (u(t + h).dot(v(t + h)) - u(t - h).dot(v(t - h))) / (2.0 * h);
            let exact_dot = du(t).dot(v(t)) + u(t).dot(dv(t));
            assert!((fd_dot - exact_dot).abs() < 1e-8, "dot rule at t={t}");

            let fd_cross = (u(t + h).cross(v(t + h)) - u(t - h).cross(v(t - h))) / (2.0 * h);
            let exact_cross = du(t).cross(v(t)) + u(t).cross(dv(t));
            assert!(
                (fd_cross - exact_cross).max_abs() < 1e-8,
                "cross rule at t={t}"
            );
        }
    }
}
