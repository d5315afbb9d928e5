//! The invariant measure |omega| = |d(x^2+y^2) / (x y)| on the real locus.
//!
//! In the parameter s = x^2 + y^2 the density is
//!
//! ```text
//!   |b - a| / sqrt( -(s^2 + a s + c)(s^2 + b s + c) )
//! ```
//!
//! with inverse-square-root singularities exactly at the admissible-interval
//! endpoints. Arc measures substitute s = end +- u^2 on each half, which
//! makes the integrand smooth, and then use adaptive 15-point Gauss-Legendre
//! quadrature. Quadrature is internally sequential; the brute-force Riemann
//! reference is the batch-style operation that fans out over the execution
//! mode.

use crate::elliptic::{GroupLaw, GroupPoint};
use crate::error::{Error, Result};
use crate::exec::ProcessingMode;
use crate::pattern::Pattern22;
use crate::quartic::MiquelQuartic;
use serde::Serialize;
use std::fmt;

/// Points with |x| or |y| below this (times the curve scale) sit on an axis
/// and inherit their branch sign from the previous orbit point.
pub const AXIS_ASSIGN_REL_TOL: f64 = 1e-9;

/// Relative accuracy target of the adaptive quadrature.
pub const QUADRATURE_REL_TOL: f64 = 1e-9;

/// Per-step allowance for the face-revalidation tolerance while walking
/// orbits: reflection rounding accumulates roughly linearly in the step
/// count, so step `k` tolerates a relative concyclicity residual of `k`
/// times this before the pattern counts as corrupted.
pub const ORBIT_DRIFT_TOL: f64 = 1e-6;

/// Connected sign-branch of the real locus: admissible interval index plus
/// the signs of x and y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchId {
    pub interval: usize,
    pub sx: i8,
    pub sy: i8,
}

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sgn = |v: i8| if v >= 0 { '+' } else { '-' };
        write!(f, "{}:{}{}", self.interval, sgn(self.sx), sgn(self.sy))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ArcMeasure {
    pub value: f64,
    pub branch: BranchId,
}

/// One measured orbit segment, serialized as the CLI measure report entry.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureEntry {
    pub from_step: usize,
    pub to_step: usize,
    pub branch: String,
    pub measure: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub entries: Vec<MeasureEntry>,
    /// Steps k at which the orbit hopped to a different branch between E_k
    /// and E_{k+1}.
    pub hops: Vec<usize>,
}

/// Measure density in s. Errors outside the open admissible locus.
pub fn omega_integrand(q: &MiquelQuartic, s: f64) -> Result<f64> {
    let qa = s * s + q.a * s + q.c;
    let qb = s * s + q.b * s + q.c;
    let g = -qa * qb;
    if g <= 0.0 {
        return Err(Error::OutOfDomain(s));
    }
    Ok((q.b - q.a).abs() / g.sqrt())
}

/// Branch of an on-curve point, with axis-adjacent signs resolved by
/// continuity from `prev` when available (nonnegative otherwise).
pub fn branch_of_point(
    q: &MiquelQuartic,
    p: GroupPoint,
    prev: Option<BranchId>,
) -> Result<BranchId> {
    let s = p.x * p.x + p.y * p.y;
    let intervals = q.admissible_intervals();
    let slack = 1e-9 * (1.0 + s.abs());
    let mut interval = None;
    let mut best_gap = f64::INFINITY;
    for (k, &(lo, hi)) in intervals.iter().enumerate() {
        let gap = (lo - s).max(s - hi).max(0.0);
        if gap < best_gap {
            best_gap = gap;
            interval = Some(k);
        }
    }
    let interval = match interval {
        Some(k) if best_gap <= slack => k,
        _ => return Err(Error::OutOfDomain(s)),
    };
    let axis_tol = AXIS_ASSIGN_REL_TOL * q.curve_scale();
    let sign_of = |v: f64, prev_sign: Option<i8>| -> i8 {
        if v.abs() <= axis_tol {
            prev_sign.unwrap_or(1)
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    Ok(BranchId {
        interval,
        sx: sign_of(p.x, prev.map(|b| b.sx)),
        sy: sign_of(p.y, prev.map(|b| b.sy)),
    })
}

/// |omega|-length of the arc between two points on the same sign-branch.
pub fn arc_measure(q: &MiquelQuartic, p1: GroupPoint, p2: GroupPoint) -> Result<ArcMeasure> {
    let b1 = branch_of_point(q, p1, None)?;
    let b2 = branch_of_point(q, p2, Some(b1))?;
    if b1 != b2 {
        return Err(Error::DifferentBranches(b1.to_string(), b2.to_string()));
    }
    let value = measure_on_branch(q, p1, p2, b1)?;
    Ok(ArcMeasure { value, branch: b1 })
}

/// Integration core; trusts the caller-provided branch.
fn measure_on_branch(
    q: &MiquelQuartic,
    p1: GroupPoint,
    p2: GroupPoint,
    branch: BranchId,
) -> Result<f64> {
    let intervals = q.admissible_intervals();
    let &(lo, hi) = intervals
        .get(branch.interval)
        .ok_or(Error::OutOfDomain(f64::NAN))?;
    let s1 = (p1.x * p1.x + p1.y * p1.y).clamp(lo, hi);
    let s2 = (p2.x * p2.x + p2.y * p2.y).clamp(lo, hi);
    let (s_lo, s_hi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    if s_hi - s_lo == 0.0 {
        return Ok(0.0);
    }
    let k = (q.b - q.a).abs();
    let mid = 0.5 * (s_lo + s_hi);

    // Lower half in u with s = lo + u^2: the simple root of the radicand at
    // lo cancels and 2 K / sqrt(rest(s)) is smooth.
    let rest_lo = rest_factor(q, lo, true);
    let f_lower = |u: f64| 2.0 * k / rest_lo(lo + u * u).max(f64::MIN_POSITIVE).sqrt();
    let lower = adaptive_gl15(
        &f_lower,
        (s_lo - lo).max(0.0).sqrt(),
        (mid - lo).max(0.0).sqrt(),
    )?;

    // Upper half with s = hi - u^2.
    let rest_hi = rest_factor(q, hi, false);
    let f_upper = |u: f64| 2.0 * k / rest_hi(hi - u * u).max(f64::MIN_POSITIVE).sqrt();
    let upper = adaptive_gl15(
        &f_upper,
        (hi - s_hi).max(0.0).sqrt(),
        (hi - mid).max(0.0).sqrt(),
    )?;

    Ok(lower + upper)
}

/// The radicand g(s) = -(s^2+as+c)(s^2+bs+c) with its simple root at `root`
/// divided out: g(s) = (s - root) * rest(s) near a lower endpoint, and
/// g(s) = (root - s) * rest(s) near an upper one; rest stays positive across
/// the admissible interval.
fn rest_factor(q: &MiquelQuartic, root: f64, lower: bool) -> impl Fn(f64) -> f64 {
    let (a, b, c) = (q.a, q.b, q.c);
    let at_root = |p: f64| root * root + p * root + c;
    // Vieta: the owner's other root is -p - root.
    let (other_root, other_p) = if at_root(a).abs() <= at_root(b).abs() {
        (-a - root, b)
    } else {
        (-b - root, a)
    };
    let sign = if lower { -1.0 } else { 1.0 };
    move |s: f64| sign * (s - other_root) * (s * s + other_p * s + c)
}

// 15-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
const GL15_X: [f64; 8] = [
    0.000000000000000000,
    0.201194093997434522,
    0.394151347077563370,
    0.570972172608538848,
    0.724417731360170047,
    0.848206583410427216,
    0.937273392400705904,
    0.987992518020485428,
];
const GL15_W: [f64; 8] = [
    0.202578241925561273,
    0.198431485327111576,
    0.186161000015562211,
    0.166269205816993934,
    0.139570677926154314,
    0.107159220467171935,
    0.070366047488108125,
    0.030753241996117268,
];

fn gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = GL15_W[0] * f(mid);
    for k in 1..8 {
        let dx = half * GL15_X[k];
        acc += GL15_W[k] * (f(mid - dx) + f(mid + dx));
    }
    acc * half
}

fn adaptive_gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let rough = gl15(f, a, b);
    let tol = QUADRATURE_REL_TOL * 1e-2 * rough.abs().max(1e-30);
    adaptive_step(f, a, b, rough, tol, 28)
}

fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = gl15(f, a, m);
    let right = gl15(f, m, b);
    let sum = left + right;
    if (sum - whole).abs() <= tol {
        return Ok(sum);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure);
    }
    Ok(adaptive_step(f, a, m, left, 0.5 * tol, depth - 1)?
        + adaptive_step(f, m, b, right, 0.5 * tol, depth - 1)?)
}

/// Brute-force midpoint Riemann sum of the measure density over [s1, s2]
/// (which must sit strictly inside one admissible interval). The batch used
/// for cross-checking the quadrature; fans out over `mode`.
pub fn riemann_measure(
    q: &MiquelQuartic,
    s1: f64,
    s2: f64,
    nodes: usize,
    mode: ProcessingMode,
) -> Result<f64> {
    let (s1, s2) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    omega_integrand(q, s1)?;
    omega_integrand(q, s2)?;
    let inside_one = q
        .admissible_intervals()
        .iter()
        .any(|&(lo, hi)| lo < s1 && s2 < hi);
    if !inside_one {
        return Err(Error::OutOfDomain(s1));
    }
    let k = (q.b - q.a).abs();
    let qa = |s: f64| s * s + q.a * s + q.c;
    let qb = |s: f64| s * s + q.b * s + q.c;
    let h = (s2 - s1) / nodes as f64;
    let sum = mode.sum_indexed(nodes, 1 << 16, |i| {
        let s = s1 + (i as f64 + 0.5) * h;
        k / (-qa(s) * qb(s)).sqrt()
    });
    Ok(sum * h)
}

/// Step the dynamics `steps` times and report the |omega|-distance between
/// orbit points of E that share a branch, at spans k -> k+1 up to k -> k+4
/// (a translation by a fixed group element can cycle through up to four
/// sign branches before revisiting one). Steps whose endpoints changed
/// branch are flagged in `hops`. Per span, the reported measures of a true
/// translation are constant.
pub fn orbit_measure_report(s0: &Pattern22, steps: usize, tol: f64) -> Result<MeasureReport> {
    let q = MiquelQuartic::of_pattern(s0, tol)?;
    let law = GroupLaw::new(&q)?;
    // The same drift that loosens face concyclicity moves orbit points off
    // the invariant curve; measures are defined on the curve, so each point
    // is first pulled back by the normal Newton projection.
    let lift = |p: crate::geometry::Point2| -> Result<GroupPoint> {
        let f = q.frame.to_frame(p);
        let proj = q.project_frame(f.x, f.y);
        law.lift_frame(proj.x, proj.y)
    };
    let mut points = Vec::with_capacity(steps + 1);
    let mut current = *s0;
    points.push(lift(current.e())?);
    for k in 0..steps {
        // Mutations drift faces off concyclic a little on every step, at a
        // pattern-dependent rate; widen the revalidation tolerance linearly
        // so long orbits stay representable while corrupted patterns are
        // still rejected.
        current = current.dynamics_step(tol.max(ORBIT_DRIFT_TOL) * (k + 1) as f64)?;
        points.push(lift(current.e())?);
    }
    let mut branches = Vec::with_capacity(points.len());
    let mut prev = None;
    for p in &points {
        let b = branch_of_point(&q, *p, prev)?;
        branches.push(b);
        prev = Some(b);
    }
    let mut entries = Vec::new();
    let mut hops = Vec::new();
    for k in 0..steps {
        if branches[k] != branches[k + 1] {
            hops.push(k);
        }
        for span in 1..=4usize {
            if k + span < points.len() && branches[k] == branches[k + span] {
                let value = measure_on_branch(&q, points[k], points[k + span], branches[k])?;
                entries.push(MeasureEntry {
                    from_step: k,
                    to_step: k + span,
                    branch: branches[k].to_string(),
                    measure: value,
                });
            }
        }
    }
    Ok(MeasureReport { entries, hops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{point, vec2};
    use crate::quartic::Frame;
    use approx::assert_relative_eq;

    /// (x^2+y^2)^2 - 5x^2 + 3y^2 + 4 = 0: one admissible interval [1, 4];
    /// density 8 / sqrt(-(s^2-5s+4)(s^2+3s+4)).
    fn fixture() -> MiquelQuartic {
        MiquelQuartic {
            a: -5.0,
            b: 3.0,
            c: 4.0,
            frame: Frame::new(point(0.0, 0.0), vec2(1.0, 0.0)).unwrap(),
        }
    }

    fn curve_point(q: &MiquelQuartic, s: f64) -> GroupPoint {
        let p = q.point_at_s(s, 1, 1);
        GroupPoint { x: p.x, y: p.y }
    }

    #[test]
    fn integrand_matches_closed_form() {
        let q = fixture();
        // At s = 2: 8 / sqrt(-(4-10+4)(4+6+4)) = 8/sqrt(28) = 4/sqrt(7).
        assert_relative_eq!(
            omega_integrand(&q, 2.0).unwrap(),
            4.0 / 7.0f64.sqrt(),
            max_relative = 1e-15
        );
        assert!(matches!(
            omega_integrand(&q, 5.0),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            omega_integrand(&q, 1.0),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn branch_assignment_uses_signs_and_continuity() {
        let q = fixture();
        let p = curve_point(&q, 2.0);
        let b = branch_of_point(&q, p, None).unwrap();
        assert_eq!(
            b,
            BranchId {
                interval: 0,
                sx: 1,
                sy: 1
            }
        );
        assert_eq!(b.to_string(), "0:++");

        // Axis point: y = 0 inherits the previous sign.
        let axis = GroupPoint { x: 2.0, y: 0.0 };
        let prev = BranchId {
            interval: 0,
            sx: 1,
            sy: -1,
        };
        assert_eq!(branch_of_point(&q, axis, Some(prev)).unwrap().sy, -1);
        assert_eq!(branch_of_point(&q, axis, None).unwrap().sy, 1);

        assert!(matches!(
            branch_of_point(&q, GroupPoint { x: 3.0, y: 3.0 }, None),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn quadrature_matches_riemann_reference() {
        let q = fixture();
        let arc = arc_measure(&q, curve_point(&q, 2.0), curve_point(&q, 3.0)).unwrap();
        let reference =
            riemann_measure(&q, 2.0, 3.0, 2_000_000, ProcessingMode::Sequential).unwrap();
        assert_relative_eq!(arc.value, reference, max_relative = 1e-9);
        assert_eq!(arc.branch.to_string(), "0:++");
    }

    #[test]
    fn arc_measure_is_additive_up_to_the_singular_ends() {
        // [1, 2] + [2, 3] + [3, 4] = [1, 4]: exercises both endpoint
        // substitutions including the full singular arc.
        let q = fixture();
        let p_lo = curve_point(&q, 1.0); // (1, 0): interval endpoint
        let p_mid1 = curve_point(&q, 2.0);
        let p_mid2 = curve_point(&q, 3.0);
        let p_hi = curve_point(&q, 4.0); // (2, 0)
        let whole = arc_measure(&q, p_lo, p_hi).unwrap().value;
        let parts = arc_measure(&q, p_lo, p_mid1).unwrap().value
            + arc_measure(&q, p_mid1, p_mid2).unwrap().value
            + arc_measure(&q, p_mid2, p_hi).unwrap().value;
        assert_relative_eq!(whole, parts, max_relative = 1e-9);
        assert!(whole.is_finite() && whole > 0.0);
    }

    #[test]
    fn arc_measure_is_symmetric_and_vanishes_on_a_point() {
        let q = fixture();
        let p1 = curve_point(&q, 1.7);
        let p2 = curve_point(&q, 3.6);
        let m12 = arc_measure(&q, p1, p2).unwrap().value;
        let m21 = arc_measure(&q, p2, p1).unwrap().value;
        assert_eq!(m12.to_bits(), m21.to_bits());
        assert_eq!(arc_measure(&q, p1, p1).unwrap().value, 0.0);
    }

    #[test]
    fn different_branches_are_rejected() {
        let q = fixture();
        let up = curve_point(&q, 2.0);
        let down = GroupPoint { x: up.x, y: -up.y };
        assert!(matches!(
            arc_measure(&q, up, down),
            Err(Error::DifferentBranches(_, _))
        ));
    }

    #[test]
    fn riemann_modes_agree_bitwise() {
        let q = fixture();
        let seq = riemann_measure(&q, 1.5, 3.5, 100_000, ProcessingMode::Sequential).unwrap();
        let par = riemann_measure(&q, 1.5, 3.5, 100_000, ProcessingMode::Parallel).unwrap();
        assert_eq!(seq.to_bits(), par.to_bits());
    }

    #[test]
    fn orbit_report_entries_are_constant() {
        let s0 = Pattern22::from_hyperbola(
            [1.0, 2.0, 3.0, 4.0, 6.0],
            &crate::pattern::Similarity::default(),
            1e-9,
        )
        .unwrap();
        let report = orbit_measure_report(&s0, 6, 1e-9).unwrap();
        assert!(!report.entries.is_empty());
        // Translation invariance: all same-span entries agree.
        for span in [1usize, 2] {
            let values: Vec<f64> = report
                .entries
                .iter()
                .filter(|e| e.to_step - e.from_step == span)
                .map(|e| e.measure)
                .collect();
            for w in values.windows(2) {
                assert_relative_eq!(w[0], w[1], max_relative = 1e-6);
            }
        }
    }
}
