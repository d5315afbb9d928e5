//! Plane primitives: points, vectors, lines, circles, and the predicates the
//! rest of the crate is built on.
//!
//! Every predicate compares a scale-normalized quantity against an absolute
//! tolerance, so identical figures at different sizes behave identically.
//! `scale` always means the largest pairwise distance among the inputs.

use crate::error::{Error, Result};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Default tolerance for scale-relative predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub const fn point(x: f64, y: f64) -> Point2 {
    Point2 { x, y }
}

pub const fn vec2(x: f64, y: f64) -> Vec2 {
    Vec2 { x, y }
}

impl Point2 {
    pub fn to_vec(self) -> Vec2 {
        vec2(self.x, self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn dist_sq(self, other: Point2) -> f64 {
        (self - other).norm_sq()
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        point(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Vec2 {
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; twice the signed area of the
    /// triangle spanned by the two vectors.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        vec2(-self.y, self.x)
    }

    pub fn normalize(self) -> Option<Vec2> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self / n)
        }
    }
}

impl Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, v: Vec2) -> Point2 {
        point(self.x + v.x, self.y + v.y)
    }
}

impl Sub<Vec2> for Point2 {
    type Output = Point2;
    fn sub(self, v: Vec2) -> Point2 {
        point(self.x - v.x, self.y - v.y)
    }
}

impl Sub for Point2 {
    type Output = Vec2;
    fn sub(self, other: Point2) -> Vec2 {
        vec2(self.x - other.x, self.y - other.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, other: Vec2) -> Vec2 {
        vec2(self.x + other.x, self.y + other.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, other: Vec2) -> Vec2 {
        vec2(self.x - other.x, self.y - other.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        vec2(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        vec2(self.x * s, self.y * s)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, s: f64) -> Vec2 {
        vec2(self.x / s, self.y / s)
    }
}

/// Infinite line given by an anchor point and a unit direction.
#[derive(Debug, Clone, Copy)]
pub struct Line2 {
    pub anchor: Point2,
    pub direction: Vec2,
}

impl Line2 {
    pub fn new(anchor: Point2, direction: Vec2) -> Result<Line2> {
        let direction = direction
            .normalize()
            .ok_or(Error::DegenerateInput("line direction is zero"))?;
        Ok(Line2 { anchor, direction })
    }

    pub fn through(p: Point2, q: Point2) -> Result<Line2> {
        let d = q - p;
        if d.norm() == 0.0 {
            return Err(Error::DegenerateInput("line through two coincident points"));
        }
        Line2::new(p, d)
    }

    /// Signed distance is not needed anywhere; projection parameter is.
    pub fn project(self, p: Point2) -> f64 {
        (p - self.anchor).dot(self.direction)
    }

    pub fn point_at(self, t: f64) -> Point2 {
        self.anchor + self.direction * t
    }

    /// Perpendicular bisector of the segment [p, q].
    pub fn bisector(p: Point2, q: Point2) -> Result<Line2> {
        let d = q - p;
        if d.norm() == 0.0 {
            return Err(Error::DegenerateInput("bisector of a zero-length segment"));
        }
        Line2::new(p.midpoint(q), d.perp())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Circle2 {
    pub center: Point2,
    pub radius: f64,
}

/// Largest pairwise distance among the given points. Zero iff all coincide.
pub fn spread(points: &[Point2]) -> f64 {
    let mut m: f64 = 0.0;
    for (k, p) in points.iter().enumerate() {
        for q in &points[k + 1..] {
            m = m.max(p.dist(*q));
        }
    }
    m
}

/// Circumcenter of a triangle. Errors when the points are collinear within
/// `tol` (normalized by the squared spread of the inputs).
pub fn circumcenter(a: Point2, b: Point2, c: Point2, tol: f64) -> Result<Point2> {
    let scale = spread(&[a, b, c]);
    if scale == 0.0 {
        return Err(Error::DegenerateInput("circumcenter of coincident points"));
    }
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * ab.cross(ac);
    if d.abs() <= tol * scale * scale {
        return Err(Error::CollinearPoints {
            area: d.abs() / (scale * scale),
        });
    }
    let ab2 = ab.norm_sq();
    let ac2 = ac.norm_sq();
    let ux = (ac.y * ab2 - ab.y * ac2) / d;
    let uy = (ab.x * ac2 - ac.x * ab2) / d;
    Ok(a + vec2(ux, uy))
}

pub fn circumcircle(a: Point2, b: Point2, c: Point2, tol: f64) -> Result<Circle2> {
    let center = circumcenter(a, b, c, tol)?;
    Ok(Circle2 {
        center,
        radius: center.dist(a),
    })
}

/// Mirror image of `p` across `l`.
pub fn reflect_point(p: Point2, l: Line2) -> Point2 {
    let w = p - l.anchor;
    let along = l.direction * w.dot(l.direction);
    let across = w - along;
    p - across * 2.0
}

/// Intersection of two lines; errors if their directions are parallel within
/// `tol` (directions are unit, so the cross product is the sine of the angle).
pub fn intersect_lines(l1: Line2, l2: Line2, tol: f64) -> Result<Point2> {
    let denom = l1.direction.cross(l2.direction);
    if denom.abs() <= tol {
        return Err(Error::ParallelLines);
    }
    let w = l2.anchor - l1.anchor;
    let t = w.cross(l2.direction) / denom;
    Ok(l1.point_at(t))
}

/// Do four points lie on a common circle (or line)? Uses the 4x4 determinant
/// with rows [x, y, x^2 + y^2, 1], centered for conditioning and normalized by
/// scale^4. Collinear quadruples are reported as non-concyclic.
pub fn concyclic(p1: Point2, p2: Point2, p3: Point2, p4: Point2, tol: f64) -> bool {
    concyclic_residual(p1, p2, p3, p4)
        .map(|r| r <= tol)
        .unwrap_or(false)
}

/// Scale-normalized concyclicity residual (the quantity `concyclic` compares
/// against the tolerance). `None` when the quadruple is degenerate: coincident
/// points or all four collinear.
pub fn concyclic_residual(p1: Point2, p2: Point2, p3: Point2, p4: Point2) -> Option<f64> {
    let pts = [p1, p2, p3, p4];
    let scale = spread(&pts);
    if scale == 0.0 {
        return None;
    }
    for (k, p) in pts.iter().enumerate() {
        for q in &pts[k + 1..] {
            if p.dist(*q) == 0.0 {
                return None;
            }
        }
    }
    // All collinear: the determinant also vanishes, but there is no circle.
    let d12 = p2 - p1;
    let all_collinear = pts[2..]
        .iter()
        .all(|p| d12.cross(*p - p1).abs() <= 1e-12 * scale * scale);
    if all_collinear {
        return None;
    }
    let cx = 0.25 * (p1.x + p2.x + p3.x + p4.x);
    let cy = 0.25 * (p1.y + p2.y + p3.y + p4.y);
    let row = |p: Point2| {
        let x = p.x - cx;
        let y = p.y - cy;
        [x, y, x * x + y * y, 1.0]
    };
    let m = [row(p1), row(p2), row(p3), row(p4)];
    Some(det4(&m).abs() / scale.powi(4))
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut det = 0.0;
    for col in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for r in 1..4 {
            let mut cc = 0;
            for c in 0..4 {
                if c == col {
                    continue;
                }
                minor[r - 1][cc] = m[r][c];
                cc += 1;
            }
        }
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * m[0][col] * det3(&minor);
    }
    det
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Signed angle at `vertex` from ray (vertex->from) to ray (vertex->to),
/// counterclockwise positive, principal branch (-pi, pi].
pub fn signed_angle(vertex: Point2, from: Point2, to: Point2) -> Result<f64> {
    let u = from - vertex;
    let v = to - vertex;
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(Error::DegenerateInput("angle with a zero-length ray"));
    }
    // atan2 maps into [-pi, pi]; fold -pi onto the principal branch.
    let mut a = u.cross(v).atan2(u.dot(v));
    if a <= -std::f64::consts::PI {
        a += 2.0 * std::f64::consts::PI;
    }
    Ok(a)
}

/// Difference of two angles folded into (-pi, pi]; use to compare angles
/// without branch-cut artifacts.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = a % two_pi;
    if r <= -std::f64::consts::PI {
        r += two_pi;
    } else if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Are `a`, `b`, `c` collinear within `tol` relative to `scale^2`?
pub fn collinear(a: Point2, b: Point2, c: Point2, tol: f64, scale: f64) -> bool {
    (b - a).cross(c - a).abs() <= tol * scale * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn circumcenter_matches_known_triangle() {
        // (0,0), (4,0), (0,3): circumcenter is the hypotenuse midpoint.
        let o = circumcenter(point(0.0, 0.0), point(4.0, 0.0), point(0.0, 3.0), DEFAULT_TOL)
            .unwrap();
        assert_abs_diff_eq!(o.x, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(o.y, 1.5, epsilon = 1e-14);
    }

    #[test]
    fn circumcenter_rejects_collinear() {
        let r = circumcenter(point(0.0, 0.0), point(1.0, 1.0), point(2.0, 2.0), DEFAULT_TOL);
        assert!(matches!(r, Err(Error::CollinearPoints { .. })));
    }

    #[test]
    fn reflect_across_diagonal_swaps_coordinates() {
        let l = Line2::through(point(0.0, 0.0), point(1.0, 1.0)).unwrap();
        let r = reflect_point(point(3.0, -2.0), l);
        assert_abs_diff_eq!(r.x, -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.y, 3.0, epsilon = 1e-14);
    }

    #[test]
    fn intersect_lines_basic_and_parallel() {
        let l1 = Line2::through(point(0.0, 0.0), point(1.0, 1.0)).unwrap();
        let l2 = Line2::through(point(2.0, 0.0), point(2.0, 5.0)).unwrap();
        let p = intersect_lines(l1, l2, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(p.x, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.y, 2.0, epsilon = 1e-14);
        let l3 = Line2::through(point(0.0, 1.0), point(1.0, 2.0)).unwrap();
        assert!(matches!(
            intersect_lines(l1, l3, DEFAULT_TOL),
            Err(Error::ParallelLines)
        ));
    }

    #[test]
    fn concyclic_square_and_collinear() {
        // Unit square is concyclic; shifting one corner breaks it.
        let (p1, p2, p3, p4) = (
            point(0.0, 0.0),
            point(1.0, 0.0),
            point(1.0, 1.0),
            point(0.0, 1.0),
        );
        assert!(concyclic(p1, p2, p3, p4, DEFAULT_TOL));
        assert!(!concyclic(p1, p2, p3, point(0.1, 1.0), DEFAULT_TOL));
        // Collinear quadruple: determinant vanishes but there is no circle.
        assert!(!concyclic(
            point(0.0, 0.0),
            point(1.0, 0.0),
            point(2.0, 0.0),
            point(3.0, 0.0),
            DEFAULT_TOL
        ));
    }

    #[test]
    fn concyclic_is_scale_invariant() {
        let base = [
            point(0.3, 0.1),
            point(1.2, 0.4),
            point(0.9, 1.4),
            point(-0.1, 1.0),
        ];
        let r0 = concyclic_residual(base[0], base[1], base[2], base[3]).unwrap();
        let big: Vec<Point2> = base.iter().map(|p| point(p.x * 1e6, p.y * 1e6)).collect();
        let r1 = concyclic_residual(big[0], big[1], big[2], big[3]).unwrap();
        assert_abs_diff_eq!(r0, r1, epsilon = 1e-9 * r0.max(1e-30));
    }

    #[test]
    fn signed_angle_right_turn() {
        let a = signed_angle(point(0.0, 0.0), point(1.0, 0.0), point(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(a, std::f64::consts::FRAC_PI_2, epsilon = 1e-14);
        let b = signed_angle(point(0.0, 0.0), point(0.0, 1.0), point(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(b, -std::f64::consts::FRAC_PI_2, epsilon = 1e-14);
    }

    proptest! {
        #[test]
        fn reflection_is_involutive(px in -50.0..50.0f64, py in -50.0..50.0f64,
                                    ax in -5.0..5.0f64, ay in -5.0..5.0f64,
                                    dx in -1.0..1.0f64, dy in -1.0..1.0f64) {
            prop_assume!(dx.abs() + dy.abs() > 1e-3);
            let l = Line2::new(point(ax, ay), vec2(dx, dy)).unwrap();
            let p = point(px, py);
            let r = reflect_point(reflect_point(p, l), l);
            prop_assert!(p.dist(r) <= 1e-9 * (1.0 + p.to_vec().norm()));
        }

        #[test]
        fn circumcenter_is_equidistant(ax in -10.0..10.0f64, ay in -10.0..10.0f64,
                                       bx in -10.0..10.0f64, by in -10.0..10.0f64,
                                       cx in -10.0..10.0f64, cy in -10.0..10.0f64) {
            let (a, b, c) = (point(ax, ay), point(bx, by), point(cx, cy));
            let scale = spread(&[a, b, c]);
            prop_assume!(scale > 1e-3);
            prop_assume!((b - a).cross(c - a).abs() > 1e-3 * scale * scale);
            let o = circumcenter(a, b, c, DEFAULT_TOL).unwrap();
            let (ra, rb, rc) = (o.dist(a), o.dist(b), o.dist(c));
            prop_assert!((ra - rb).abs() <= 1e-9 * scale.max(ra));
            prop_assert!((ra - rc).abs() <= 1e-9 * scale.max(ra));
        }

        #[test]
        fn angle_is_antisymmetric(vx in -5.0..5.0f64, vy in -5.0..5.0f64,
                                  fx in -5.0..5.0f64, fy in -5.0..5.0f64,
                                  tx in -5.0..5.0f64, ty in -5.0..5.0f64) {
            let (v, f, t) = (point(vx, vy), point(fx, fy), point(tx, ty));
            prop_assume!(v.dist(f) > 1e-3 && v.dist(t) > 1e-3);
            let a1 = signed_angle(v, f, t).unwrap();
            let a2 = signed_angle(v, t, f).unwrap();
            prop_assert!(wrap_angle(a1 + a2).abs() <= 1e-12);
        }

        #[test]
        fn concyclic_permutation_invariant(cx in -5.0..5.0f64, cy in -5.0..5.0f64,
                                           r in 0.5..5.0f64,
                                           t1 in 0.0..6.0f64, t2 in 0.1..1.5f64,
                                           t3 in 1.6..3.0f64, t4 in 3.1..4.5f64) {
            let c = point(cx, cy);
            let at = |t: f64| c + vec2(r * t.cos(), r * t.sin());
            let ps = [at(t1), at(t1 + t2), at(t1 + t3), at(t1 + t4)];
            prop_assert!(concyclic(ps[0], ps[1], ps[2], ps[3], 1e-9));
            prop_assert!(concyclic(ps[2], ps[0], ps[3], ps[1], 1e-9));
        }
    }
}
