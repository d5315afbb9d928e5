//! Chord group law on a nondegenerate quartic, with the x-axis point of
//! largest x as neutral element.
//!
//! Circles cut out a complete, translation-invariant family of divisors on
//! the curve (they all pass through the two circular nodes at infinity), so
//! "circle through P1, P2, N, take the fourth intersection, reflect across
//! the x-axis" defines an abelian group with neutral N, negation (x, y) ->
//! (x, -y), and the renormalized mutations acting as E -> -E - 2A (white) /
//! -E - 2C (black).
//!
//! Intersections are computed on the rational tan-half-angle chart of the
//! circle. For the group operations three of the four roots are known, so
//! the fourth comes from the root sum (Vieta) and is then Newton-polished on
//! F restricted to the circle; no root matching is involved. The generic
//! intersection entry point (unknown roots) solves the quartic via its
//! companion matrix instead.

use crate::dd::{self, DdPoint};
use crate::error::{Error, Result};
use crate::geometry::{
    circumcenter, intersect_lines, point, wrap_angle, Circle2, Line2, Point2,
};
use crate::pattern::{MutationColor, Pattern22};
use crate::poly;
use crate::quartic::{DdQuartic, MiquelQuartic};
use rand::Rng;

/// Points closer than this (times the curve scale) to N or to each other
/// take the exact shortcut paths in `add`.
pub const SHORTCUT_REL_TOL: f64 = 1e-9;

/// Below this normalized triangle area, P1, P2, N are treated as collinear
/// and the chord circle degenerates to a line.
pub const COLLINEAR_REL_TOL: f64 = 1e-10;

/// Intersection points closer than this (times the curve scale) merge into
/// one root with multiplicity.
pub const CLUSTER_REL_TOL: f64 = 1e-6;

/// When the chord construction collapses (its result fails the membership
/// post-check) and an argument sits within this fraction of the curve scale
/// of N, the argument is treated as N instead of failing the operation. The
/// substitution error is bounded by that distance, far below the failure
/// modes it replaces: a chord circle through two points separated by 1e-9
/// of scale misplaces its fourth root by orders of magnitude more.
pub const NEUTRAL_SNAP_REL_TOL: f64 = 1e-6;

/// A point on the quartic in frame coordinates. Constructed through
/// [`GroupLaw::lift_frame`]/[`lift_world`](GroupLaw::lift_world) (which check
/// membership) or returned by the group operations (which stay on the curve
/// by construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupPoint {
    pub x: f64,
    pub y: f64,
}

impl GroupPoint {
    pub fn to_point(self) -> Point2 {
        point(self.x, self.y)
    }

    pub fn dist(self, other: GroupPoint) -> f64 {
        self.to_point().dist(other.to_point())
    }
}

/// Circle or line in frame coordinates.
#[derive(Debug, Clone, Copy)]
pub enum CircleOrLine {
    Circle(Circle2),
    Line(Line2),
}

/// Real intersections (with multiplicity) of a circle/line with the quartic.
/// Multiplicities plus twice the complex pair count sum to four.
#[derive(Debug, Clone)]
pub struct IntersectionList {
    pub points: Vec<(GroupPoint, usize)>,
    pub complex_pairs: usize,
}

/// Outcome of the base-point sum-invariance check: for a fixed base point P,
/// the N-law sum of the three residual intersections of any circle through P
/// is the same point; `spread` is the maximal pairwise distance observed.
#[derive(Debug, Clone, Copy)]
pub struct SumInvarianceReport {
    pub completed: usize,
    pub skipped: usize,
    pub spread: f64,
    pub reference: GroupPoint,
}

pub struct GroupLaw<'q> {
    pub quartic: &'q MiquelQuartic,
    neutral: GroupPoint,
    scale: f64,
}

impl<'q> GroupLaw<'q> {
    pub fn new(quartic: &'q MiquelQuartic) -> Result<GroupLaw<'q>> {
        if !quartic.is_nondegenerate() {
            return Err(Error::DegenerateQuartic {
                a: quartic.a,
                b: quartic.b,
                c: quartic.c,
            });
        }
        let axis_points = quartic.x_axis_points()?;
        let n = axis_points[0];
        Ok(GroupLaw {
            quartic,
            neutral: GroupPoint { x: n.x, y: n.y },
            scale: quartic.curve_scale(),
        })
    }

    pub fn neutral(&self) -> GroupPoint {
        self.neutral
    }

    /// Curve-space scale used for all relative tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn lift_frame(&self, x: f64, y: f64) -> Result<GroupPoint> {
        let residual = self.quartic.evaluate_frame(x, y).abs();
        let bound = self.quartic.membership_bound(x * x + y * y);
        if residual > bound {
            return Err(Error::NotOnCurve { residual, bound });
        }
        Ok(GroupPoint { x, y })
    }

    pub fn lift_world(&self, p: Point2) -> Result<GroupPoint> {
        let q = self.quartic.frame.to_frame(p);
        self.lift_frame(q.x, q.y)
    }

    pub fn to_world(&self, p: GroupPoint) -> Point2 {
        self.quartic.frame.to_world(p.to_point())
    }

    pub fn negate(&self, p: GroupPoint) -> GroupPoint {
        GroupPoint { x: p.x, y: -p.y }
    }

    /// Membership post-check for group operation results. A chord or
    /// tangent circle built on nearly coincident base points can misplace
    /// its fourth root arbitrarily; a result that fails to land back on the
    /// curve must not propagate silently.
    fn accept(&self, p: GroupPoint) -> Result<GroupPoint> {
        let residual = self.quartic.evaluate_frame(p.x, p.y).abs();
        let bound = self.quartic.membership_bound(p.x * p.x + p.y * p.y);
        if residual > bound {
            return Err(Error::NotOnCurve { residual, bound });
        }
        Ok(p)
    }

    /// Chord addition. Exact shortcuts: N is the identity, coincident
    /// arguments delegate to [`double`](Self::double). Arguments are ordered
    /// canonically first, so the operation is bitwise commutative.
    pub fn add(&self, p1: GroupPoint, p2: GroupPoint) -> Result<GroupPoint> {
        // Canonical argument order first (total order, so that -0.0 vs 0.0
        // coordinates cannot split the two orders onto different paths):
        // every branch below then computes bit-identically for (p1, p2) and
        // (p2, p1).
        let (p1, p2) = if (p1.x.total_cmp(&p2.x).then(p1.y.total_cmp(&p2.y)))
            == std::cmp::Ordering::Greater
        {
            (p2, p1)
        } else {
            (p1, p2)
        };
        let eps = SHORTCUT_REL_TOL * self.scale;
        if p1.dist(self.neutral) <= eps {
            return Ok(p2);
        }
        if p2.dist(self.neutral) <= eps {
            return Ok(p1);
        }
        if p1.dist(p2) <= eps {
            return self.double(p1);
        }
        let n = self.neutral.to_point();
        let (q1, q2) = (p1.to_point(), p2.to_point());
        let chord_sum = || -> Result<GroupPoint> {
            let area = (q2 - q1).cross(n - q1).abs();
            let third = if area <= COLLINEAR_REL_TOL * self.scale * self.scale {
                let chord = Line2::through(q1, q2)?;
                self.line_fourth_root(chord, &[q1, q2, n])?
            } else {
                let center = circumcenter(q1, q2, n, 1e-13)?;
                let circle = Circle2 {
                    center,
                    radius: center.dist(n),
                };
                self.circle_fourth_root(circle, &[q1, q2, n])?
            };
            self.accept(self.negate(GroupPoint {
                x: third.x,
                y: third.y,
            }))
        };
        match chord_sum() {
            Ok(sum) => Ok(sum),
            Err(err) => {
                // The construction degrades without bound as an argument
                // approaches N (the chord circle is then built on two nearly
                // coincident points); substituting N is both far more
                // accurate and total.
                let snap = NEUTRAL_SNAP_REL_TOL * self.scale;
                if p2.dist(self.neutral) <= snap {
                    Ok(p1)
                } else if p1.dist(self.neutral) <= snap {
                    Ok(p2)
                } else {
                    Err(err)
                }
            }
        }
    }

    /// Doubling: the circle through N tangent to the curve at P counts P
    /// twice. Its center is the meet of the curve normal at P with the
    /// perpendicular bisector of [P, N]; when the tangent line itself passes
    /// through N that meet escapes to infinity and the tangent line is used
    /// directly.
    pub fn double(&self, p: GroupPoint) -> Result<GroupPoint> {
        let eps = SHORTCUT_REL_TOL * self.scale;
        if p.dist(self.neutral) <= eps {
            return Ok(self.neutral);
        }
        let q = p.to_point();
        let n = self.neutral.to_point();
        let grad = self.quartic.gradient_frame(p.x, p.y);
        let r2 = p.x * p.x + p.y * p.y;
        if grad.norm() <= 1e-12 * (1.0 + r2 * r2.sqrt()) {
            return Err(Error::DegenerateGradient);
        }
        let normal = Line2::new(q, grad)?;
        let bisector = Line2::bisector(q, n)?;
        let tangent_sum = || -> Result<GroupPoint> {
            let third = match intersect_lines(normal, bisector, 1e-13) {
                Ok(center) => {
                    let circle = Circle2 {
                        center,
                        radius: center.dist(n),
                    };
                    self.circle_fourth_root(circle, &[q, q, n])?
                }
                Err(Error::ParallelLines) => {
                    // Tangent at P goes through N.
                    let tangent = Line2::through(q, n)?;
                    self.line_fourth_root(tangent, &[q, q, n])?
                }
                Err(e) => return Err(e),
            };
            self.accept(self.negate(GroupPoint {
                x: third.x,
                y: third.y,
            }))
        };
        match tangent_sum() {
            Ok(d) => Ok(d),
            Err(err) => {
                // Same degradation as in `add`: the tangent circle is built
                // on the pair (P, N), which collapses as P approaches N.
                if p.dist(self.neutral) <= NEUTRAL_SNAP_REL_TOL * self.scale {
                    Ok(self.neutral)
                } else {
                    Err(err)
                }
            }
        }
    }

    /// n * P by double-and-add; negative n negates the point first.
    pub fn mul(&self, n: i64, p: GroupPoint) -> Result<GroupPoint> {
        if n == 0 {
            return Ok(self.neutral);
        }
        if n < 0 {
            return self.mul(-n, self.negate(p));
        }
        let mut acc = self.neutral;
        for bit in (0..64 - n.leading_zeros()).rev() {
            acc = self.double(acc)?;
            if (n >> bit) & 1 == 1 {
                acc = self.add(acc, p)?;
            }
        }
        Ok(acc)
    }

    /// All intersections of a frame-space circle or line with the quartic.
    pub fn intersections(&self, shape: &CircleOrLine) -> Result<IntersectionList> {
        match shape {
            CircleOrLine::Line(line) => {
                let coeffs = self.line_poly(*line);
                self.collect_roots(
                    &coeffs,
                    |t| line.point_at(t),
                    |pt, t0| match self.polish_on_line(*line, t0) {
                        Ok(t) => line.point_at(t),
                        Err(_) => pt,
                    },
                )
            }
            CircleOrLine::Circle(circle) => {
                // The excluded chart point must stay off the curve; scan a
                // fixed set of chart rotations until the polynomial keeps
                // full degree.
                let mut last_err = Error::SolverFailure("no usable circle chart");
                for k in 0..6 {
                    let phi = 0.7 * k as f64;
                    let chart = CircleChart::new(*circle, phi);
                    let coeffs = chart.poly(self.quartic);
                    let maxc = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                    if maxc == 0.0 || coeffs[4].abs() <= 1e-9 * maxc {
                        last_err = Error::SolverFailure("circle chart hits the curve");
                        continue;
                    }
                    return self.collect_roots(
                        &coeffs,
                        |t| chart.point_of_t(t),
                        |pt, t0| {
                            let theta = 2.0 * t0.atan();
                            self.polish_on_circle(&chart, theta)
                                .map(|th| chart.point_of_theta(th))
                                .unwrap_or(pt)
                        },
                    );
                }
                Err(last_err)
            }
        }
    }

    fn collect_roots(
        &self,
        coeffs: &[f64],
        to_point: impl Fn(f64) -> Point2,
        polish: impl Fn(Point2, f64) -> Point2,
    ) -> Result<IntersectionList> {
        let roots = poly::complex_roots(coeffs)?;
        let mut real_pts: Vec<Point2> = Vec::new();
        let mut complex_count = 0usize;
        for z in roots {
            if z.im.abs() <= 1e-7 * (1.0 + z.re.abs()) {
                let t = poly::polish_real_root(coeffs, z.re);
                let pt = to_point(t);
                real_pts.push(polish(pt, t));
            } else {
                complex_count += 1;
            }
        }
        let tol = CLUSTER_REL_TOL * self.scale;
        let mut clustered: Vec<(GroupPoint, usize)> = Vec::new();
        'next: for pt in real_pts {
            for (rep, mult) in clustered.iter_mut() {
                if rep.to_point().dist(pt) <= tol {
                    *mult += 1;
                    continue 'next;
                }
            }
            clustered.push((GroupPoint { x: pt.x, y: pt.y }, 1));
        }
        Ok(IntersectionList {
            points: clustered,
            complex_pairs: complex_count / 2,
        })
    }

    /// Fourth intersection of a circle already known to meet the curve at
    /// the three `known` points (with multiplicity; duplicates allowed).
    fn circle_fourth_root(&self, circle: Circle2, known: &[Point2; 3]) -> Result<Point2> {
        // Direction angles of the known points on the circle.
        let psis: Vec<f64> = known
            .iter()
            .map(|p| (p.y - circle.center.y).atan2(p.x - circle.center.x))
            .collect();
        // Put the excluded chart point (theta = pi) inside the largest
        // angular gap, at several fallback positions.
        let mut sorted = psis.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let tau = 2.0 * std::f64::consts::PI;
        let mut gap_start = sorted[2];
        let mut gap_len = sorted[0] + tau - sorted[2];
        for w in sorted.windows(2) {
            let len = w[1] - w[0];
            if len > gap_len {
                gap_len = len;
                gap_start = w[0];
            }
        }
        let mut last_err = Error::SolverFailure("no usable circle chart");
        for frac in [0.5, 0.25, 0.75, 0.375, 0.625] {
            let excluded = gap_start + frac * gap_len;
            let phi = excluded - std::f64::consts::PI;
            let chart = CircleChart::new(circle, phi);
            let coeffs = chart.poly(self.quartic);
            let maxc = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            if maxc == 0.0 || coeffs[4].abs() <= 1e-9 * maxc {
                last_err = Error::SolverFailure("circle chart hits the curve");
                continue;
            }
            let known_ts: Vec<f64> = known.iter().map(|p| chart.t_of(*p)).collect();
            let sum_all = -coeffs[3] / coeffs[4];
            let t4 = sum_all - known_ts.iter().sum::<f64>();
            let t4 = poly::polish_real_root(&coeffs, t4);
            let theta = 2.0 * t4.atan();
            let theta = self.polish_on_circle(&chart, theta)?;
            return Ok(chart.point_of_theta(theta));
        }
        Err(last_err)
    }

    /// Fourth intersection of a line with three known parameter values.
    fn line_fourth_root(&self, line: Line2, known: &[Point2; 3]) -> Result<Point2> {
        let coeffs = self.line_poly(line);
        // Unit direction: the leading coefficient is exactly 1.
        let sum_all = -coeffs[3] / coeffs[4];
        let t4 = sum_all - known.iter().map(|p| line.project(*p)).sum::<f64>();
        let t4 = poly::polish_real_root(&coeffs, t4);
        Ok(line.point_at(t4))
    }

    /// F restricted to a line, as a polynomial in the line parameter.
    fn line_poly(&self, line: Line2) -> Vec<f64> {
        let x = [line.anchor.x, line.direction.x];
        let y = [line.anchor.y, line.direction.y];
        let s = poly::add(&poly::mul(&x, &x), &poly::mul(&y, &y));
        let mut f = poly::mul(&s, &s);
        f = poly::add(&f, &poly::scale(&poly::mul(&x, &x), self.quartic.a));
        f = poly::add(&f, &poly::scale(&poly::mul(&y, &y), self.quartic.b));
        f[0] += self.quartic.c;
        f
    }

    /// Newton on theta -> F(circle(theta)); returns the converged angle.
    /// Steps that do not shrink |F| are rejected (double roots make f/df
    /// noise-over-noise, and the incoming Vieta estimate is often better).
    fn polish_on_circle(&self, chart: &CircleChart, mut theta: f64) -> Result<f64> {
        let value = |th: f64| {
            let p = chart.point_of_theta(th);
            self.quartic.evaluate_frame(p.x, p.y)
        };
        let mut best = value(theta).abs();
        for _ in 0..12 {
            let p = chart.point_of_theta(theta);
            let f = self.quartic.evaluate_frame(p.x, p.y);
            let grad = self.quartic.gradient_frame(p.x, p.y);
            let (sin, cos) = (theta + chart.phi).sin_cos();
            let df = grad.dot(crate::geometry::vec2(-chart.circle.radius * sin,
                                                    chart.circle.radius * cos));
            if df == 0.0 {
                break;
            }
            let step = f / df;
            if !step.is_finite() {
                break;
            }
            let cand = theta - step;
            let cand_val = value(cand).abs();
            if cand_val >= best {
                break;
            }
            theta = cand;
            best = cand_val;
            if step.abs() <= 1e-15 {
                break;
            }
        }
        Ok(theta)
    }

    fn polish_on_line(&self, line: Line2, mut t: f64) -> Result<f64> {
        let coeffs = self.line_poly(line);
        t = poly::polish_real_root(&coeffs, t);
        Ok(t)
    }

    /// On-curve sample points (all branches), handy for axiom sweeps.
    pub fn sample_points(&self, per_branch: usize) -> Result<Vec<GroupPoint>> {
        let mut out = Vec::new();
        for branch in self.quartic.sample_real_curve(per_branch)? {
            for p in branch.points {
                out.push(GroupPoint { x: p.x, y: p.y });
            }
        }
        Ok(out)
    }

    /// For a fixed base point, the three residual intersections of every
    /// circle through it have constant N-law sum. Each trial draws the
    /// circle through the base point and two random curve points (which
    /// keeps all four intersections real); trials with clustered or
    /// otherwise ill-posed intersections are skipped and counted.
    pub fn base_point_sum_invariance<R: Rng>(
        &self,
        base: GroupPoint,
        trials: usize,
        rng: &mut R,
    ) -> Result<SumInvarianceReport> {
        let intervals = self.quartic.admissible_intervals();
        if intervals.is_empty() {
            return Err(Error::EmptyRealLocus);
        }
        let random_curve_point = |rng: &mut R| -> Point2 {
            let (lo, hi) = intervals[rng.gen_range(0..intervals.len())];
            let s = rng.gen_range(lo..hi);
            let sx = if rng.gen::<bool>() { 1 } else { -1 };
            let sy = if rng.gen::<bool>() { 1 } else { -1 };
            self.quartic.point_at_s(s, sx, sy)
        };
        let mut sums: Vec<GroupPoint> = Vec::new();
        let mut skipped = 0usize;
        for _ in 0..trials {
            let r1 = random_curve_point(rng);
            let r2 = random_curve_point(rng);
            let center = match circumcenter(base.to_point(), r1, r2, 1e-10) {
                Ok(c) => c,
                Err(_) => {
                    skipped += 1;
                    continue;
                }
            };
            let radius = center.dist(base.to_point());
            if radius <= 1e-3 * self.scale {
                skipped += 1;
                continue;
            }
            let list = self.intersections(&CircleOrLine::Circle(Circle2 { center, radius }))?;
            if list.complex_pairs > 0 {
                skipped += 1;
                continue;
            }
            let mut pts: Vec<GroupPoint> = Vec::new();
            for (p, mult) in &list.points {
                for _ in 0..*mult {
                    pts.push(*p);
                }
            }
            if pts.len() != 4 {
                skipped += 1;
                continue;
            }
            // Drop one instance nearest to the base point.
            let nearest = pts
                .iter()
                .enumerate()
                .min_by(|(_, p), (_, q)| {
                    p.dist(base).partial_cmp(&q.dist(base)).unwrap()
                })
                .map(|(k, _)| k)
                .unwrap();
            pts.remove(nearest);
            let sum = self.add(self.add(pts[0], pts[1])?, pts[2])?;
            sums.push(sum);
        }
        if sums.is_empty() {
            return Err(Error::SolverFailure("all sum-invariance trials skipped"));
        }
        let mut spread = 0.0f64;
        for (k, p) in sums.iter().enumerate() {
            for q in &sums[k + 1..] {
                spread = spread.max(p.dist(*q));
            }
        }
        Ok(SumInvarianceReport {
            completed: sums.len(),
            skipped,
            spread,
            reference: sums[0],
        })
    }
}

/// tan-half-angle chart of a circle, rotated by `phi` so the excluded point
/// (theta = pi) sits where the caller wants it.
struct CircleChart {
    circle: Circle2,
    phi: f64,
}

impl CircleChart {
    fn new(circle: Circle2, phi: f64) -> CircleChart {
        CircleChart { circle, phi }
    }

    fn point_of_theta(&self, theta: f64) -> Point2 {
        let (s, c) = (theta + self.phi).sin_cos();
        point(
            self.circle.center.x + self.circle.radius * c,
            self.circle.center.y + self.circle.radius * s,
        )
    }

    fn point_of_t(&self, t: f64) -> Point2 {
        let d = 1.0 + t * t;
        let cos_t = (1.0 - t * t) / d;
        let sin_t = 2.0 * t / d;
        let (sp, cp) = self.phi.sin_cos();
        point(
            self.circle.center.x + self.circle.radius * (cp * cos_t - sp * sin_t),
            self.circle.center.y + self.circle.radius * (sp * cos_t + cp * sin_t),
        )
    }

    fn t_of(&self, p: Point2) -> f64 {
        let psi = (p.y - self.circle.center.y).atan2(p.x - self.circle.center.x);
        (0.5 * wrap_angle(psi - self.phi)).tan()
    }

    /// F restricted to the circle, cleared of denominators: a genuine
    /// quartic in t whose leading coefficient is F at the excluded point.
    fn poly(&self, q: &MiquelQuartic) -> Vec<f64> {
        let (mx, my, r) = (self.circle.center.x, self.circle.center.y, self.circle.radius);
        let (sp, cp) = self.phi.sin_cos();
        // Numerators of x(t), y(t) over the common denominator 1 + t^2.
        let u = [mx + r * cp, -2.0 * r * sp, mx - r * cp];
        let w = [my + r * sp, 2.0 * r * cp, my - r * sp];
        let d = [1.0, 0.0, 1.0];
        // On the circle, x^2 + y^2 = alpha x + beta y + gamma.
        let alpha = 2.0 * mx;
        let beta = 2.0 * my;
        let gamma = r * r - mx * mx - my * my;
        let lin = poly::add(
            &poly::add(&poly::scale(&u, alpha), &poly::scale(&w, beta)),
            &poly::scale(&d, gamma),
        );
        let mut f = poly::mul(&lin, &lin);
        f = poly::add(&f, &poly::scale(&poly::mul(&u, &u), q.a));
        f = poly::add(&f, &poly::scale(&poly::mul(&w, &w), q.b));
        f = poly::add(&f, &poly::scale(&poly::mul(&d, &d), q.c));
        f
    }
}

/// Group-law prediction of the renormalized mutation image of E:
/// -E - 2A for the white mutation, -E - 2C for the black one.
pub fn predict_mutation(s: &Pattern22, color: MutationColor, tol: f64) -> Result<Point2> {
    let q = MiquelQuartic::of_pattern(s, tol)?;
    let law = GroupLaw::new(&q)?;
    let e = law.lift_world(s.e())?;
    let base = law.lift_world(match color {
        MutationColor::White => s.a(),
        MutationColor::Black => s.c(),
    })?;
    let image = law.negate(law.add(e, law.double(base)?)?);
    Ok(law.to_world(image))
}

/// Tangent-circle construction of the white mutation image of E: reflect E
/// through the line of centers of the two circles tangent to the quartic at
/// A and at I that pass through E.
pub fn tangent_circle_mutation(s: &Pattern22, tol: f64) -> Result<Point2> {
    let q = MiquelQuartic::of_pattern(s, tol)?;
    let law = GroupLaw::new(&q)?;
    // The construction is exact geometry of exact input points except for
    // the two gradient directions, which the glancing normal/bisector meet
    // amplifies by up to ~radius^2 / |chord| whenever E sits close to a
    // corner. So the curve is consumed in its unrounded double-double form
    // and the centers and reflection are computed in kind.
    let ddq = DdQuartic::of_pattern(s, tol)?;
    let scale = s.scale();
    let e_pt = s.e();
    let center_at = |anchor_world: Point2| -> Result<DdPoint> {
        let gp = law.lift_world(anchor_world)?;
        // Working-precision screens, erroring exactly where a plain f64
        // construction would.
        let grad = q.gradient_frame(gp.x, gp.y);
        let r2 = gp.x * gp.x + gp.y * gp.y;
        if grad.norm() <= 1e-12 * (1.0 + r2 * r2.sqrt()) {
            return Err(Error::DegenerateGradient);
        }
        let normal = Line2::new(anchor_world, q.frame.dir_to_world(grad))?;
        let bis = Line2::bisector(anchor_world, e_pt)?;
        let screen = intersect_lines(normal, bis, 1e-13)?;

        let gw = ddq.world_gradient_dir(anchor_world);
        let anchor = DdPoint::of(anchor_world);
        let mid = anchor.add(DdPoint::of(e_pt)).scale(0.5);
        let chord = DdPoint::between(anchor_world, e_pt);
        let chord_perp = DdPoint {
            x: chord.y.neg(),
            y: chord.x,
        };
        Ok(dd::intersect(anchor, gw, mid, chord_perp).unwrap_or(DdPoint::of(screen)))
    };
    let o_a = center_at(s.a())?;
    let o_i = center_at(s.i())?;
    if o_a.to_point().dist(o_i.to_point()) <= tol * scale {
        return Err(Error::CoincidentCenters);
    }
    Ok(dd::reflect(DdPoint::of(e_pt), o_a, o_i.sub(o_a)).to_point())
}
