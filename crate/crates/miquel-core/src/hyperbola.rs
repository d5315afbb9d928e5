//! Equilateral-hyperbola fitting.
//!
//! The five inner points B, D, E, F, H of a valid pattern always lie on a
//! common equilateral conic: a rectangular hyperbola for generic patterns, a
//! pair of orthogonal lines for trapezoidal ones. The fit solves the 5x5
//! homogeneous system with the traceless conic basis ``x^2 - y^2, xy, x, y,
//! 1`` by SVD after centering and rescaling the points, then maps the
//! coefficients back to world coordinates.

use crate::error::{Error, Result};
use crate::geometry::{point, spread, vec2, Line2, Point2};
use crate::pattern::{Pattern22, PatternClass};
use nalgebra::SMatrix;

/// Normalized residual above which five points are declared not co-conic.
pub const FIT_RESIDUAL_TOL: f64 = 1e-7;

/// Threshold on the (normalized) 3x3 conic determinant below which the conic
/// is considered split into two orthogonal lines.
pub const DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    EquilateralHyperbola,
    DegenerateOrthogonalLines,
}

/// Equilateral conic `xx (x^2 - y^2) + xy x y + x_lin x + y_lin y + c0 = 0`
/// in world coordinates (the y^2 coefficient is implicitly `-xx`).
#[derive(Debug, Clone, Copy)]
pub struct HyperbolaSpec {
    pub xx: f64,
    pub xy: f64,
    pub x_lin: f64,
    pub y_lin: f64,
    pub c0: f64,
    pub kind: ConicKind,
}

impl HyperbolaSpec {
    pub fn eval(&self, p: Point2) -> f64 {
        self.xx * (p.x * p.x - p.y * p.y)
            + self.xy * p.x * p.y
            + self.x_lin * p.x
            + self.y_lin * p.y
            + self.c0
    }

    /// Real y-values on the conic above a given x (0, 1, or 2 of them).
    /// Handy for sweep-sampling the curve.
    pub fn y_at(&self, x: f64) -> Vec<f64> {
        // Quadratic in y: (-xx) y^2 + (xy x + y_lin) y + (xx x^2 + x_lin x + c0)
        crate::poly::real_roots_quadratic(
            -self.xx,
            self.xy * x + self.y_lin,
            self.xx * x * x + self.x_lin * x + self.c0,
        )
    }

    /// The two orthogonal lines of a degenerate conic, if it is one.
    pub fn degenerate_lines(&self) -> Option<(Line2, Line2)> {
        if self.kind != ConicKind::DegenerateOrthogonalLines {
            return None;
        }
        // Center: gradient of the quadratic part plus linear terms vanishes.
        let det = -4.0 * self.xx * self.xx - self.xy * self.xy;
        if det == 0.0 {
            return None;
        }
        let cx = (-self.x_lin * (-2.0 * self.xx) + self.xy * self.y_lin) / det;
        let cy = (self.xy * self.x_lin + -(2.0 * self.xx) * self.y_lin) / det;
        let c = point(cx, cy);
        // Asymptotic directions: xx cos(2t) + (xy/2) sin(2t) = 0.
        let t = 0.5 * (-2.0 * self.xx).atan2(self.xy);
        let d1 = vec2(t.cos(), t.sin());
        let d2 = d1.perp();
        Some((Line2::new(c, d1).ok()?, Line2::new(c, d2).ok()?))
    }
}

/// Least-squares equilateral conic through five points. Returns the spec and
/// the largest normalized residual over the five points (compare against
/// [`FIT_RESIDUAL_TOL`]).
pub fn fit_equilateral_conic(pts: &[Point2; 5]) -> Result<(HyperbolaSpec, f64)> {
    let scale = spread(pts);
    if scale == 0.0 {
        return Err(Error::DegenerateInput("five coincident points"));
    }
    let cx = pts.iter().map(|p| p.x).sum::<f64>() / 5.0;
    let cy = pts.iter().map(|p| p.y).sum::<f64>() / 5.0;
    let rho = scale;
    let hat: Vec<Point2> = pts
        .iter()
        .map(|p| point((p.x - cx) / rho, (p.y - cy) / rho))
        .collect();

    let m = SMatrix::<f64, 5, 5>::from_fn(|r, c| {
        let p = hat[r];
        match c {
            0 => p.x * p.x - p.y * p.y,
            1 => p.x * p.y,
            2 => p.x,
            3 => p.y,
            _ => 1.0,
        }
    });
    let svd = m.svd(true, true);
    let v_t = svd.v_t.ok_or(Error::FitFailure)?;
    let mut min_k = 0;
    for k in 1..5 {
        if svd.singular_values[k] < svd.singular_values[min_k] {
            min_k = k;
        }
    }
    let q: [f64; 5] = [
        v_t[(min_k, 0)],
        v_t[(min_k, 1)],
        v_t[(min_k, 2)],
        v_t[(min_k, 3)],
        v_t[(min_k, 4)],
    ];

    let eval_hat = |p: Point2| {
        q[0] * (p.x * p.x - p.y * p.y) + q[1] * p.x * p.y + q[2] * p.x + q[3] * p.y + q[4]
    };
    let residual = hat.iter().map(|p| eval_hat(*p).abs()).fold(0.0, f64::max);

    // Degeneracy: determinant of the symmetric 3x3 matrix of the conic, in
    // the normalized frame where the coefficient vector has unit norm.
    let (a, b, c, d, e) = (q[0], q[1], q[2], q[3], q[4]);
    let det3 = a * (-a * e - d / 2.0 * d / 2.0) - b / 2.0 * (b / 2.0 * e - d / 2.0 * c / 2.0)
        + c / 2.0 * (b / 2.0 * d / 2.0 + a * c / 2.0);
    let kind = if det3.abs() <= DEGENERACY_TOL {
        ConicKind::DegenerateOrthogonalLines
    } else {
        ConicKind::EquilateralHyperbola
    };

    // Undo x_hat = (x - cx)/rho, y_hat = (y - cy)/rho. Multiply through by
    // rho^2 so the quadratic part keeps the fitted magnitude.
    let xx = a;
    let xy = b;
    let x_lin = (-2.0 * a * cx - b * cy) + c * rho;
    let y_lin = (2.0 * a * cy - b * cx) + d * rho;
    let c0 = (a * (cx * cx - cy * cy) + b * cx * cy) - (c * cx + d * cy) * rho + e * rho * rho;

    // Deterministic normalization: unit norm, largest-magnitude entry positive.
    let coeffs = [xx, xy, x_lin, y_lin, c0];
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::FitFailure);
    }
    let lead = coeffs
        .iter()
        .cloned()
        .max_by(|p, q| p.abs().partial_cmp(&q.abs()).unwrap())
        .unwrap();
    let sign = if lead < 0.0 { -1.0 } else { 1.0 };
    let n = sign / norm;

    Ok((
        HyperbolaSpec {
            xx: xx * n,
            xy: xy * n,
            x_lin: x_lin * n,
            y_lin: y_lin * n,
            c0: c0 * n,
            kind,
        },
        residual,
    ))
}

/// Fit through the five inner points B, D, E, F, H of a pattern, with the
/// residual bound enforced and the conic kind cross-checked against the
/// pattern class (trapezoidal patterns must give the degenerate kind).
pub fn fit_pattern_conic(s: &Pattern22, tol: f64) -> Result<HyperbolaSpec> {
    let five = [s.b(), s.d(), s.e(), s.f(), s.h()];
    let (spec, residual) = fit_equilateral_conic(&five)?;
    if residual > FIT_RESIDUAL_TOL {
        return Err(Error::NotOnCommonHyperbola { residual });
    }
    let class = s.classify(tol)?;
    let degenerate = spec.kind == ConicKind::DegenerateOrthogonalLines;
    if degenerate != (class != PatternClass::Generic) {
        return Err(Error::FitFailure);
    }
    Ok(spec)
}
