//! Direct least-squares conic fit of planar points.
//!
//! Used as an oracle: fitting raw integrated positions recovers the ellipse
//! without touching energy, angular momentum or the LRL vector.

use nalgebra::{DMatrix, Matrix2, Vector2};

use crate::error::{KeplerError, Result};
use crate::vector::{PlaneFrame, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicFit {
    pub a: f64,
    pub b: f64,
    pub center: Vec3,
    /// Unit direction of the major axis.
    pub major_axis: Vec3,
    /// Largest algebraic residual of the normalized conic over the input.
    pub max_algebraic_residual: f64,
}

/// Fits `A x² + B xy + C y² + D x + E y + F = 0` to the in-plane coordinates
/// of `points` (unit-norm coefficient vector minimizing the squared
/// algebraic residual) and extracts the ellipse axes and center.
pub fn fit_ellipse(points: &[Vec3], frame: &PlaneFrame) -> Result<ConicFit> {
    if points.len() < 5 {
        return Err(KeplerError::DegenerateConfiguration(format!(
            "conic fit needs at least 5 points, got {}",
            points.len()
        )));
    }
    let coords: Vec<(f64, f64)> = points.iter().map(|&p| frame.coords(p)).collect();
    let n = coords.len() as f64;
    let (mx, my) = coords
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(x, y)| (sx + x / n, sy + y / n));
    let scale = coords
        .iter()
        .map(|&(x, y)| ((x - mx).powi(2) + (y - my).powi(2)).sqrt())
        .sum::<f64>()
        / n;
    if !(scale > 0.0) {
        return Err(KeplerError::DegenerateConfiguration(
            "all points coincide".into(),
        ));
    }

    let design = DMatrix::from_fn(coords.len(), 6, |i, j| {
        let x = (coords[i].0 - mx) / scale;
        let y = (coords[i].1 - my) / scale;
        match j {
            0 => x * x,
            1 => x * y,
            2 => y * y,
            3 => x,
            4 => y,
            _ => 1.0,
        }
    });
    let svd = design.clone().svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| KeplerError::DegenerateConfiguration("SVD did not converge".into()))?;
    let (min_idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("six singular values");
    let coef: Vec<f64> = v_t.row(min_idx).iter().copied().collect();
    let (ca, cb, cc, cd, ce, cf) = (coef[0], coef[1], coef[2], coef[3], coef[4], coef[5]);

    let max_algebraic_residual = (&design * nalgebra::DVector::from_vec(coef.clone())).amax();

    let quad = Matrix2::new(2.0 * ca, cb, cb, 2.0 * cc);
    let center_n = quad
        .lu()
        .solve(&Vector2::new(-cd, -ce))
        .ok_or_else(|| KeplerError::DegenerateConfiguration("conic has no center".into()))?;
    let f0 = cf + 0.5 * (cd * center_n.x + ce * center_n.y);
    let eig = Matrix2::new(ca, 0.5 * cb, 0.5 * cb, cc).symmetric_eigen();
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    let (s0, s1) = (-f0 / l0, -f0 / l1);
    if !(s0 > 0.0 && s1 > 0.0) {
        return Err(KeplerError::DegenerateConfiguration(
            "fitted conic is not an ellipse".into(),
        ));
    }
    let (major_sq, minor_sq, major_col) = if s0 >= s1 { (s0, s1, 0) } else { (s1, s0, 1) };
    let dir = eig.eigenvectors.column(major_col);

    Ok(ConicFit {
        a: major_sq.sqrt() * scale,
        b: minor_sq.sqrt() * scale,
        center: frame.point(mx + center_n.x * scale, my + center_n.y * scale),
        major_axis: frame.point(dir[0], dir[1]),
        max_algebraic_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::plane_frame;

    #[test]
    fn recovers_rotated_offset_ellipse() {
        let frame = plane_frame(Vec3::new(0.2, -0.3, 1.0)).unwrap();
        let (a, b, phi) = (3.0, 1.25, 0.4f64);
        let (cx, cy) = (-0.7, 2.1);
        let pts: Vec<Vec3> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.031;
                let (x, y) = (a * t.cos(), b * t.sin());
                frame.point(
                    cx + x * phi.cos() - y * phi.sin(),
                    cy + x * phi.sin() + y * phi.cos(),
                )
            })
            .collect();
        let fit = fit_ellipse(&pts, &frame).unwrap();
        assert!((fit.a - a).abs() < 1e-10);
        assert!((fit.b - b).abs() < 1e-10);
        assert!((fit.center - frame.point(cx, cy)).max_abs() < 1e-10);
        let cos = fit.major_axis.dot(frame.point(phi.cos(), phi.sin())).abs();
        assert!((cos - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_too_few_points() {
        let frame = plane_frame(Vec3::Z).unwrap();
        assert!(fit_ellipse(&[Vec3::X, Vec3::Y], &frame).is_err());
    }

    #[test]
    fn rejects_hyperbola() {
        let frame = plane_frame(Vec3::Z).unwrap();
        let pts: Vec<Vec3> = (-20..=20)
            .map(|i| {
                let u = i as f64 * 0.1;
                Vec3::new(u.cosh(), u.sinh(), 0.0)
            })
            .collect();
        assert!(fit_ellipse(&pts, &frame).is_err());
    }
}
