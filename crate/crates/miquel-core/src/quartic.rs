//! The invariant binodal quartic of a pattern.
//!
//! In a suitable orthonormal frame (origin Omega, x-axis through the focus
//! pair) the curve is
//!
//! ```text
//!   F(x, y) = (x^2 + y^2)^2 + a x^2 + b y^2 + c = 0
//! ```
//!
//! and it passes through A, C, G, I, E and every renormalized mutation image
//! of E. Both constructions below produce `(a, b, c)` together with the frame
//! that places the curve in this normal form.

use crate::dd::{self, Dd, DdPoint};
use crate::error::{Error, Result};
use crate::geometry::{
    circumcenter, intersect_lines, point, vec2, Line2, Point2, Vec2,
};
use crate::pattern::{Pattern22, PatternClass};
use crate::poly::real_roots_quadratic;

/// Membership slack: a point with frame radius r is "on" the curve when
/// |F| <= MEMBERSHIP_REL_TOL * max(1, r^4).
pub const MEMBERSHIP_REL_TOL: f64 = 1e-7;

/// Relative tolerance for the binodal non-degeneracy conditions
/// (a != b, 4c not in {0, a^2, b^2}).
pub const NONDEGENERACY_REL_TOL: f64 = 1e-10;

/// Orthonormal frame: `axis` is the unit world direction of the frame
/// x-axis; the y-axis is its counterclockwise perpendicular. The axis sign is
/// canonical (first nonzero component positive), which the curve's x -> -x
/// symmetry makes harmless.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub origin: Point2,
    pub axis: Vec2,
}

impl Frame {
    pub fn new(origin: Point2, direction: Vec2) -> Result<Frame> {
        let mut axis = direction
            .normalize()
            .ok_or(Error::DegenerateInput("frame axis is zero"))?;
        if axis.x < 0.0 || (axis.x == 0.0 && axis.y < 0.0) {
            axis = -axis;
        }
        Ok(Frame { origin, axis })
    }

    pub fn to_frame(&self, p: Point2) -> Point2 {
        let d = p - self.origin;
        point(d.dot(self.axis), d.dot(self.axis.perp()))
    }

    pub fn to_world(&self, p: Point2) -> Point2 {
        self.origin + self.axis * p.x + self.axis.perp() * p.y
    }

    /// Rotate a direction from frame to world (no translation).
    pub fn dir_to_world(&self, v: Vec2) -> Vec2 {
        self.axis * v.x + self.axis.perp() * v.y
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MiquelQuartic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub frame: Frame,
}

/// One sign-branch of the real locus: s runs over `s_range`, x and y carry
/// the fixed signs, and `points` are frame coordinates ordered by s.
#[derive(Debug, Clone)]
pub struct QuarticBranchSample {
    pub interval: usize,
    pub s_range: (f64, f64),
    pub signs: (i8, i8),
    pub points: Vec<Point2>,
}

/// Trapezoidal normal-form coefficients (alpha, beta, gamma) from the frame
/// coordinates of C, D, E; the curve is (x^2+y^2)^2 - alpha x^2 - beta y^2 +
/// gamma = 0, i.e. (a, b, c) = (-alpha, -beta, gamma).
pub fn trapezoid_coefficients(
    x_c: f64,
    y_c: f64,
    x_d: f64,
    x_e: f64,
    y_e: f64,
    tol: f64,
) -> Result<(f64, f64, f64)> {
    let scale = [x_c, y_c, x_d, x_e, y_e]
        .iter()
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let denom = y_c * y_c - y_e * y_e;
    if denom.abs() <= tol * scale * scale {
        return Err(Error::ZeroDenominator("y_C^2 - y_E^2"));
    }
    let rc2 = x_c * x_c + y_c * y_c;
    let re2 = x_e * x_e + y_e * y_e;
    let head = rc2 + re2;
    let m = (x_d + x_c) * (x_d + x_c);
    let diff = rc2 - re2;
    let alpha = head + m * diff / denom;
    let beta = head + m * (x_e * x_e - x_c * x_c) * diff / (denom * denom);
    let gamma = rc2 * re2
        + m * (x_e * x_e * y_c * y_c - x_c * x_c * y_e * y_e) * diff / (denom * denom);
    Ok((alpha, beta, gamma))
}

/// The generic construction carried in double-double: the same curve as the
/// rounded [`MiquelQuartic`], with coefficients and unit axis kept at ~32
/// digits. The tangent-circle centers read the gradient direction at a
/// corner through conditioning of order radius^2 / |chord|, which can reach
/// 1e7 — rounding the curve to f64 first would surface there as a visible
/// error in the reflected point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DdQuartic {
    pub a: Dd,
    pub b: Dd,
    pub c: Dd,
    pub origin: Point2,
    pub ux: Dd,
    pub uy: Dd,
}

impl DdQuartic {
    /// Quartic of a pattern, like [`MiquelQuartic::of_pattern`], but without
    /// the final rounding on the generic branch. The trapezoidal closed
    /// forms are well conditioned (rectangle frame, no glancing meets), so
    /// that branch lifts the f64 result as-is.
    pub fn of_pattern(s: &Pattern22, tol: f64) -> Result<DdQuartic> {
        match s.classify(tol)? {
            PatternClass::Generic => DdQuartic::of_generic(s, tol),
            PatternClass::TrapezoidalHorizontal | PatternClass::TrapezoidalVertical => {
                Ok(DdQuartic::lift(&MiquelQuartic::trapezoidal(s, tol)?))
            }
        }
    }

    pub fn lift(q: &MiquelQuartic) -> DdQuartic {
        DdQuartic {
            a: Dd::from_f64(q.a),
            b: Dd::from_f64(q.b),
            c: Dd::from_f64(q.c),
            origin: q.frame.origin,
            ux: Dd::from_f64(q.frame.axis.x),
            uy: Dd::from_f64(q.frame.axis.y),
        }
    }

    pub fn of_generic(s: &Pattern22, tol: f64) -> Result<DdQuartic> {
        if s.classify(tol)? != PatternClass::Generic {
            return Err(Error::WrongClass { expected: "generic" });
        }
        let scale = s.scale();
        let (a_pt, c_pt, g_pt, i_pt) = (s.a(), s.c(), s.g(), s.i());
        // Working-precision pass: screens the degeneracies at the caller's
        // tolerance and supplies (practically unreachable) fallbacks. The
        // values actually returned come from the double-double pass below —
        // the focus meet and the lambda/kappa differences shed several
        // digits here.
        let o_b = circumcenter(a_pt, s.b(), c_pt, tol).map_err(|e| match e {
            Error::CollinearPoints { .. } => Error::FlatAngle("A, B, C"),
            other => other,
        })?;
        let o_d = circumcenter(a_pt, s.d(), g_pt, tol).map_err(|e| match e {
            Error::CollinearPoints { .. } => Error::FlatAngle("A, D, G"),
            other => other,
        })?;
        let p_screen = intersect_lines(
            Line2::new(o_b, g_pt - a_pt)?,
            Line2::new(o_d, c_pt - a_pt)?,
            tol,
        )?;
        // The midpoint rounds to an exact f64 point which then serves as the
        // frame origin, so the curve is expressed about the origin actually
        // stored rather than about an ideal center it misses by an ulp.
        let omega = a_pt.midpoint(i_pt);
        let denom_screen = omega.dist_sq(a_pt) - omega.dist_sq(c_pt);
        if denom_screen.abs() <= tol * scale * scale {
            return Err(Error::ZeroDenominator("|Omega A|^2 - |Omega C|^2"));
        }

        // Double-double pass; every quantity is rational in the inputs.
        let ob = dd::circumcenter(a_pt, s.b(), c_pt).unwrap_or(DdPoint::of(o_b));
        let od = dd::circumcenter(a_pt, s.d(), g_pt).unwrap_or(DdPoint::of(o_d));
        let p_focus = dd::intersect(
            ob,
            DdPoint::between(a_pt, g_pt),
            od,
            DdPoint::between(a_pt, c_pt),
        )
        .unwrap_or(DdPoint::of(p_screen));
        let to_omega = |p: Point2| DdPoint::between(omega, p);
        let p_rel = p_focus.sub(DdPoint::of(omega));
        let mirror_rel = DdPoint {
            x: p_rel.x.neg(),
            y: p_rel.y.neg(),
        };
        let om_a2 = to_omega(a_pt).norm_sq();
        let om_c2 = to_omega(c_pt).norm_sq();
        let denom = om_a2.sub(om_c2);
        let pa = to_omega(a_pt)
            .sub(p_rel)
            .norm_sq()
            .mul(to_omega(a_pt).sub(mirror_rel).norm_sq());
        let pc = to_omega(c_pt)
            .sub(p_rel)
            .norm_sq()
            .mul(to_omega(c_pt).sub(mirror_rel).norm_sq());
        let lambda = pa.sub(pc).div(denom);
        let kappa = om_a2.mul(pc).sub(om_c2.mul(pa)).div(denom);
        let p2 = p_rel.norm_sq();

        let (ux, uy) = if p2.to_f64().sqrt() <= tol * scale {
            // Focus collapses onto the center; the curve has a = b and will
            // be reported degenerate, but the frame must still exist.
            (Dd::from_f64(1.0), Dd::from_f64(0.0))
        } else {
            let norm = p2.sqrt();
            let (mut ux, mut uy) = (p_rel.x.div(norm), p_rel.y.div(norm));
            // Same canonicalization as Frame::new: first nonzero component
            // positive.
            if ux.hi < 0.0 || (ux.hi == 0.0 && uy.hi < 0.0) {
                ux = ux.neg();
                uy = uy.neg();
            }
            (ux, uy)
        };
        Ok(DdQuartic {
            a: p2.scale(-2.0).sub(lambda),
            b: p2.scale(2.0).sub(lambda),
            c: p2.mul(p2).sub(kappa),
            origin: omega,
            ux,
            uy,
        })
    }

    pub fn round(&self) -> Result<MiquelQuartic> {
        Ok(MiquelQuartic {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
            c: self.c.to_f64(),
            frame: Frame::new(self.origin, vec2(self.ux.to_f64(), self.uy.to_f64()))?,
        })
    }

    pub fn frame_coords(&self, p: Point2) -> (Dd, Dd) {
        let d = DdPoint::between(self.origin, p);
        (
            d.x.mul(self.ux).add(d.y.mul(self.uy)),
            d.y.mul(self.ux).sub(d.x.mul(self.uy)),
        )
    }

    /// World direction of the gradient of F at a world point, up to the
    /// positive factor 2 shared by both components.
    pub fn world_gradient_dir(&self, p: Point2) -> DdPoint {
        let (x, y) = self.frame_coords(p);
        let s2 = x.mul(x).add(y.mul(y));
        let gx = x.mul(s2.scale(2.0).add(self.a));
        let gy = y.mul(s2.scale(2.0).add(self.b));
        DdPoint {
            x: gx.mul(self.ux).sub(gy.mul(self.uy)),
            y: gx.mul(self.uy).add(gy.mul(self.ux)),
        }
    }
}

impl MiquelQuartic {
    /// Construction dispatch on the pattern class.
    pub fn of_pattern(s: &Pattern22, tol: f64) -> Result<MiquelQuartic> {
        match s.classify(tol)? {
            PatternClass::Generic => MiquelQuartic::generic(s, tol),
            PatternClass::TrapezoidalHorizontal | PatternClass::TrapezoidalVertical => {
                MiquelQuartic::trapezoidal(s, tol)
            }
        }
    }

    /// Generic construction via the focus pair.
    ///
    /// O_B and O_D are the circumcenters of (A, B, C) and (A, D, G); the
    /// focus P is the meet of the parallel to (AG) through O_B with the
    /// parallel to (AC) through O_D, P' its reflection through the center
    /// Omega = midpoint(A, I). Squared distances to the foci determine the
    /// quartic: with p = |Omega P|, lambda and kappa solved from A and C,
    ///
    /// ```text
    ///   a = -2 p^2 - lambda,  b = 2 p^2 - lambda,  c = p^4 - kappa.
    /// ```
    pub fn generic(s: &Pattern22, tol: f64) -> Result<MiquelQuartic> {
        DdQuartic::of_generic(s, tol)?.round()
    }

    /// Trapezoidal construction. For a horizontal pattern the frame sits at
    /// the center of the rectangle ACIG with x-axis along (AC); a vertical
    /// pattern is transposed first (rows <-> columns swaps the classes and
    /// fixes the curve), which puts the frame x-axis along (AG).
    pub fn trapezoidal(s: &Pattern22, tol: f64) -> Result<MiquelQuartic> {
        match s.classify(tol)? {
            PatternClass::TrapezoidalHorizontal => {}
            PatternClass::TrapezoidalVertical => {
                return MiquelQuartic::trapezoidal(&s.transpose(), tol)
            }
            PatternClass::Generic => {
                return Err(Error::WrongClass { expected: "trapezoidal" })
            }
        }
        let omega = s.a().midpoint(s.i());
        let frame = Frame::new(omega, s.c() - s.a())?;
        let c = frame.to_frame(s.c());
        let d = frame.to_frame(s.d());
        let e = frame.to_frame(s.e());
        let (alpha, beta, gamma) = trapezoid_coefficients(c.x, c.y, d.x, e.x, e.y, tol)?;
        Ok(MiquelQuartic {
            a: -alpha,
            b: -beta,
            c: gamma,
            frame,
        })
    }

    pub fn evaluate_frame(&self, x: f64, y: f64) -> f64 {
        let s = x * x + y * y;
        s * s + self.a * x * x + self.b * y * y + self.c
    }

    pub fn evaluate_world(&self, p: Point2) -> f64 {
        let q = self.frame.to_frame(p);
        self.evaluate_frame(q.x, q.y)
    }

    /// Frame gradient of F.
    pub fn gradient_frame(&self, x: f64, y: f64) -> Vec2 {
        let s = x * x + y * y;
        vec2(2.0 * x * (2.0 * s + self.a), 2.0 * y * (2.0 * s + self.b))
    }

    /// Membership bound for a frame point at radius^2 = r2. F sums four
    /// terms, and coefficients constructed from a pattern carry their own
    /// relative error, so the bound tracks the largest term magnitude
    /// rather than r^4 alone.
    pub fn membership_bound(&self, r2: f64) -> f64 {
        let term = (r2 * r2)
            .max(self.a.abs() * r2)
            .max(self.b.abs() * r2)
            .max(self.c.abs());
        MEMBERSHIP_REL_TOL * term.max(1.0)
    }

    pub fn is_on_curve(&self, x: f64, y: f64) -> bool {
        let r2 = x * x + y * y;
        self.evaluate_frame(x, y).abs() <= self.membership_bound(r2)
    }

    /// Newton projection of a nearby frame point onto the curve, stepping
    /// along the gradient while |F| shrinks. Points that drifted off the
    /// locus (e.g. through a long mutation orbit) come back to membership;
    /// the motion is normal to the curve, so on-curve geometry of the input
    /// is preserved to first order.
    pub fn project_frame(&self, x: f64, y: f64) -> Point2 {
        let mut p = point(x, y);
        let mut best = self.evaluate_frame(p.x, p.y).abs();
        for _ in 0..8 {
            let f = self.evaluate_frame(p.x, p.y);
            let g = self.gradient_frame(p.x, p.y);
            let n2 = g.norm_sq();
            if n2 == 0.0 || !f.is_finite() {
                break;
            }
            let cand = p - g * (f / n2);
            let res = self.evaluate_frame(cand.x, cand.y).abs();
            if res >= best {
                break;
            }
            best = res;
            p = cand;
        }
        p
    }

    pub fn contains_world(&self, p: Point2) -> bool {
        let q = self.frame.to_frame(p);
        self.is_on_curve(q.x, q.y)
    }

    /// Binodal non-degeneracy: a != b and 4c not in {0, a^2, b^2}, each
    /// compared with [`NONDEGENERACY_REL_TOL`] against max(1, a^2, b^2, |c|).
    pub fn is_nondegenerate(&self) -> bool {
        let m = 1.0f64
            .max(self.a * self.a)
            .max(self.b * self.b)
            .max(self.c.abs());
        let t = NONDEGENERACY_REL_TOL * m;
        let fc = 4.0 * self.c;
        (self.a - self.b).abs() > t
            && fc.abs() > t
            && (fc - self.a * self.a).abs() > t
            && (fc - self.b * self.b).abs() > t
    }

    /// Real intersections with the frame x-axis, sorted by descending x:
    /// (+-sqrt(t), 0) for the nonnegative roots t of t^2 + a t + c.
    pub fn x_axis_points(&self) -> Result<Vec<Point2>> {
        let mut out = Vec::new();
        for t in real_roots_quadratic(1.0, self.a, self.c) {
            if t >= 0.0 {
                let x = t.sqrt();
                out.push(point(x, 0.0));
                if x > 0.0 {
                    out.push(point(-x, 0.0));
                }
            }
        }
        if out.is_empty() {
            return Err(Error::NoRealAxisPoint);
        }
        out.sort_by(|p, q| q.x.partial_cmp(&p.x).unwrap());
        Ok(out)
    }

    /// The focus pair (P, P') in world coordinates, from p^2 = (b - a)/4.
    pub fn foci(&self) -> (Point2, Point2) {
        let p = ((self.b - self.a) / 4.0).max(0.0).sqrt();
        (
            self.frame.to_world(point(p, 0.0)),
            self.frame.to_world(point(-p, 0.0)),
        )
    }

    /// Both quadratics of the s-parametrization: x^2 = q_b(s)/(b-a),
    /// y^2 = -q_a(s)/(b-a) with q_a = s^2 + a s + c, q_b = s^2 + b s + c.
    pub fn x_sq_at(&self, s: f64) -> f64 {
        (s * s + self.b * s + self.c) / (self.b - self.a)
    }

    pub fn y_sq_at(&self, s: f64) -> f64 {
        -(s * s + self.a * s + self.c) / (self.b - self.a)
    }

    /// Maximal s-intervals on which both x^2(s) and y^2(s) are nonnegative.
    /// The real locus is the union over these of the four sign branches.
    pub fn admissible_intervals(&self) -> Vec<(f64, f64)> {
        if self.a == self.b {
            return Vec::new();
        }
        let mut cuts = real_roots_quadratic(1.0, self.a, self.c);
        cuts.extend(real_roots_quadratic(1.0, self.b, self.c));
        cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
        cuts.dedup();
        let mut out = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi - lo <= 0.0 {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            if self.x_sq_at(mid) >= 0.0 && self.y_sq_at(mid) >= 0.0 {
                out.push((lo, hi));
            }
        }
        out
    }

    /// Point on the curve at parameter s with the given signs, in frame
    /// coordinates. Tiny negative radicands (roundoff at interval ends) are
    /// clamped to zero.
    pub fn point_at_s(&self, s: f64, sx: i8, sy: i8) -> Point2 {
        let x = self.x_sq_at(s).max(0.0).sqrt();
        let y = self.y_sq_at(s).max(0.0).sqrt();
        // `+ 0.0` folds -0.0 to +0.0 at branch seams.
        point(sx as f64 * x + 0.0, sy as f64 * y + 0.0)
    }

    /// Sample every sign branch of the real locus with `n` points each
    /// (Chebyshev-clustered in s, ordered by s). Errors when the real locus
    /// is empty.
    pub fn sample_real_curve(&self, n: usize) -> Result<Vec<QuarticBranchSample>> {
        let intervals = self.admissible_intervals();
        if intervals.is_empty() {
            return Err(Error::EmptyRealLocus);
        }
        let n = n.max(2);
        let mut out = Vec::new();
        for (k, &(lo, hi)) in intervals.iter().enumerate() {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for &(sx, sy) in &[(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
                let points = (0..n)
                    .map(|i| {
                        let theta = std::f64::consts::PI * (i as f64) / ((n - 1) as f64);
                        let s = mid - half * theta.cos();
                        self.point_at_s(s, sx, sy)
                    })
                    .collect();
                out.push(QuarticBranchSample {
                    interval: k,
                    s_range: (lo, hi),
                    signs: (sx, sy),
                    points,
                });
            }
        }
        Ok(out)
    }

    /// Radius of the smallest origin-centered disk containing the real
    /// locus; used to normalize curve-space tolerances. Falls back to 1 when
    /// the locus is empty.
    pub fn curve_scale(&self) -> f64 {
        self.admissible_intervals()
            .iter()
            .map(|&(lo, hi)| lo.abs().max(hi.abs()))
            .fold(1.0f64, f64::max)
            .sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Similarity;
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-9;

    fn hyperbola_pattern() -> Pattern22 {
        Pattern22::from_hyperbola([1.0, 2.0, 3.0, 4.0, 6.0], &Similarity::default(), TOL).unwrap()
    }

    fn trapezoid_pattern() -> Pattern22 {
        Pattern22::reconstruct_from_five(
            point(0.0, 1.0),
            point(-1.0, 0.0),
            point(3.0, 0.0),
            point(4.0, 0.0),
            point(0.0, -2.0),
            TOL,
        )
        .unwrap()
    }

    /// Hand-checkable fixture: (x^2+y^2)^2 - 5x^2 + 3y^2 + 4 = 0, identity
    /// frame. Real locus: s in [1, 4]; x-axis points (+-1, 0), (+-2, 0).
    fn fixture_quartic() -> MiquelQuartic {
        MiquelQuartic {
            a: -5.0,
            b: 3.0,
            c: 4.0,
            frame: Frame::new(point(0.0, 0.0), vec2(1.0, 0.0)).unwrap(),
        }
    }

    #[test]
    fn trapezoid_coefficients_match_hand_values() {
        let (alpha, beta, gamma) = trapezoid_coefficients(2.0, 2.0, -1.0, 0.0, 1.0, TOL).unwrap();
        assert_relative_eq!(alpha, 34.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(beta, 53.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(gamma, 44.0 / 9.0, max_relative = 1e-14);

        assert!(matches!(
            trapezoid_coefficients(2.0, 1.0, -1.0, 0.0, 1.0, TOL),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn trapezoid_fixture_has_known_normal_form() {
        let s = trapezoid_pattern();
        let q = MiquelQuartic::of_pattern(&s, TOL).unwrap();
        assert!(q.frame.origin.dist(point(4.5, -0.5)) < 1e-12);
        assert!((q.frame.axis - vec2(1.0, 0.0)).norm() < 1e-12);
        assert_relative_eq!(q.a, -38.0, max_relative = 1e-12);
        assert_relative_eq!(q.b, 43.0, max_relative = 1e-12);
        assert_relative_eq!(q.c, 68.5, max_relative = 1e-12);
        assert!(q.is_nondegenerate());

        // The white-mutated E lands back on the curve (exact closed form).
        assert!(q.contains_world(point(-21.0 / 61.0, 74.0 / 61.0)));
        let e_im = q.frame.to_frame(point(-21.0 / 61.0, 74.0 / 61.0));
        assert!(q.evaluate_frame(e_im.x, e_im.y).abs() < 1e-9);

        // Foci: p^2 = (b - a)/4 = 81/4.
        let (f1, f2) = q.foci();
        assert!(f1.dist(point(9.0, -0.5)) < 1e-12);
        assert!(f2.dist(point(0.0, -0.5)) < 1e-12);
    }

    #[test]
    fn vertical_trapezoid_gives_same_curve() {
        let s = trapezoid_pattern();
        let q = MiquelQuartic::of_pattern(&s, TOL).unwrap();
        let qt = MiquelQuartic::of_pattern(&s.transpose(), TOL).unwrap();
        assert_relative_eq!(q.a, qt.a, max_relative = 1e-12);
        assert_relative_eq!(q.b, qt.b, max_relative = 1e-12);
        assert_relative_eq!(q.c, qt.c, max_relative = 1e-12);
        // Same world curve: transposed frame maps the same world points on.
        for p in [s.a(), s.c(), s.e(), s.g(), s.i()] {
            assert!(qt.contains_world(p));
        }
    }

    #[test]
    fn generic_fixture_focus_and_center() {
        let s = hyperbola_pattern();
        let q = MiquelQuartic::generic(&s, TOL).unwrap();
        assert!(q.frame.origin.dist(point(9.5, 31.0 / 24.0)) < 1e-9);
        let (f1, f2) = q.foci();
        let target = point(-64.0, 323.0 / 288.0);
        let best = f1.dist(target).min(f2.dist(target));
        assert!(best < 1e-6, "focus off by {best}");
        assert!(q.is_nondegenerate());
    }

    #[test]
    fn generic_quartic_passes_through_base_points() {
        let s = hyperbola_pattern();
        let q = MiquelQuartic::of_pattern(&s, TOL).unwrap();
        // Construction uses A and C only; membership of G, I, E is content.
        for p in [s.a(), s.c(), s.g(), s.i(), s.e()] {
            assert!(q.contains_world(p), "F = {}", q.evaluate_world(p));
        }
        // ...and E stays on it along the dynamics.
        let mut cur = s;
        for _ in 0..5 {
            cur = cur.dynamics_step(TOL).unwrap();
            assert!(q.contains_world(cur.e()));
        }
    }

    #[test]
    fn focal_distance_product_is_linear_in_s() {
        // On the curve, |PM|^2 |P'M|^2 = lambda s + kappa with
        // lambda = -(a+b)/2, kappa = p^4 - c.
        let s = hyperbola_pattern();
        let q = MiquelQuartic::of_pattern(&s, TOL).unwrap();
        let (p1, p2) = q.foci();
        let lambda = -(q.a + q.b) / 2.0;
        let p2sq = (q.b - q.a) / 4.0;
        let kappa = p2sq * p2sq - q.c;
        for branch in q.sample_real_curve(40).unwrap() {
            for m in branch.points {
                let world = q.frame.to_world(m);
                let lhs = p1.dist_sq(world) * p2.dist_sq(world);
                let srad = m.x * m.x + m.y * m.y;
                assert_relative_eq!(
                    lhs,
                    lambda * srad + kappa,
                    max_relative = 1e-6,
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn symmetric_coefficients_give_cassini_oval() {
        // a + b = 0 means constant focal product |PM| |P'M| = sqrt(kappa).
        let q = MiquelQuartic {
            a: -5.0,
            b: 5.0,
            c: 4.0,
            frame: Frame::new(point(0.0, 0.0), vec2(1.0, 0.0)).unwrap(),
        };
        let (p1, p2) = q.foci();
        let kappa: f64 = (10.0f64 / 4.0) * (10.0 / 4.0) - 4.0;
        for branch in q.sample_real_curve(25).unwrap() {
            for m in branch.points {
                let world = q.frame.to_world(m);
                let prod = (p1.dist(world) * p2.dist(world)) as f64;
                assert_relative_eq!(prod, kappa.sqrt(), max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn fixture_axis_points_and_intervals() {
        let q = fixture_quartic();
        let pts = q.x_axis_points().unwrap();
        let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
        assert_eq!(xs.len(), 4);
        for (got, want) in xs.iter().zip([2.0, 1.0, -1.0, -2.0]) {
            assert_relative_eq!(*got, want, max_relative = 1e-14);
        }
        let intervals = q.admissible_intervals();
        assert_eq!(intervals.len(), 1);
        assert_relative_eq!(intervals[0].0, 1.0, max_relative = 1e-14);
        assert_relative_eq!(intervals[0].1, 4.0, max_relative = 1e-14);
        assert_relative_eq!(q.curve_scale(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn parametrization_recovers_known_point() {
        let q = fixture_quartic();
        // s = 2: x^2 = 7/4, y^2 = 1/4.
        assert_relative_eq!(q.x_sq_at(2.0), 1.75, max_relative = 1e-14);
        assert_relative_eq!(q.y_sq_at(2.0), 0.25, max_relative = 1e-14);
        let p = q.point_at_s(2.0, 1, 1);
        assert_relative_eq!(p.x, 7.0f64.sqrt() / 2.0, max_relative = 1e-14);
        assert_relative_eq!(p.y, 0.5, max_relative = 1e-14);
        assert!(q.evaluate_frame(p.x, p.y).abs() < 1e-13);
    }

    #[test]
    fn sampled_branches_lie_on_curve() {
        let q = fixture_quartic();
        let branches = q.sample_real_curve(50).unwrap();
        assert_eq!(branches.len(), 4);
        for b in &branches {
            assert_eq!(b.points.len(), 50);
            for p in &b.points {
                assert!(q.is_on_curve(p.x, p.y));
                assert!(p.x * (b.signs.0 as f64) >= 0.0);
                assert!(p.y * (b.signs.1 as f64) >= 0.0);
            }
        }
    }

    #[test]
    fn degenerate_coefficients_are_detected() {
        // Trapezoidal pattern whose quartic satisfies 4c = b^2 exactly:
        // (a, b, c) = (-35/2, 15/2, 225/16).
        let s = Pattern22::reconstruct_from_five(
            point(0.0, 2.0),
            point(-1.0, 0.0),
            point(2.0, 0.0),
            point(3.0, 0.0),
            point(0.0, -1.0),
            TOL,
        )
        .unwrap();
        assert!(s.a().dist(point(1.0, 2.0)) < 1e-12);
        let q = MiquelQuartic::of_pattern(&s, TOL).unwrap();
        assert_relative_eq!(q.a, -17.5, max_relative = 1e-12);
        assert_relative_eq!(q.b, 7.5, max_relative = 1e-12);
        assert_relative_eq!(q.c, 225.0 / 16.0, max_relative = 1e-12);
        assert!(!q.is_nondegenerate());
    }

    #[test]
    fn class_mismatch_is_rejected() {
        let s = hyperbola_pattern();
        assert!(matches!(
            MiquelQuartic::trapezoidal(&s, TOL),
            Err(Error::WrongClass { .. })
        ));
        let t = trapezoid_pattern();
        assert!(matches!(
            MiquelQuartic::generic(&t, TOL),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn frame_round_trips() {
        let f = Frame::new(point(2.0, -1.0), vec2(3.0, 4.0)).unwrap();
        let p = point(0.7, -2.3);
        assert!(f.to_world(f.to_frame(p)).dist(p) < 1e-15);
        assert!((f.axis.norm() - 1.0).abs() < 1e-15);
        // Canonical sign: flipping the requested direction changes nothing.
        let g = Frame::new(point(2.0, -1.0), vec2(-3.0, -4.0)).unwrap();
        assert!((f.axis - g.axis).norm() == 0.0);
    }
}
