//! Minimal double-double arithmetic (Dekker/Knuth error-free transforms)
//! plus the handful of planar primitives built on it. The quartic
//! construction and the tangent-circle centers are rational in the input
//! points but badly conditioned in f64 (glancing line intersections,
//! differences of large squared distances), so those few routines run here
//! at ~32 digits and round once at the end. Not a general numeric type.

use crate::geometry::{point, Point2};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    // Requires |a| >= |b| or a == 0.
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: f64::mul_add(a, b, -p) }
}

impl Dd {
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let e = s.lo + self.lo + o.lo;
        quick_two_sum(s.hi, e)
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        let e = p.lo + (self.hi * o.lo + self.lo * o.hi);
        quick_two_sum(p.hi, e)
    }

    pub fn scale(self, k: f64) -> Dd {
        let p = two_prod(self.hi, k);
        quick_two_sum(p.hi, p.lo + self.lo * k)
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r1 = self.sub(o.scale(q1));
        let q2 = r1.hi / o.hi;
        let r2 = r1.sub(o.scale(q2));
        let q3 = r2.hi / o.hi;
        quick_two_sum(q1, q2).add(Dd::from_f64(q3))
    }

    /// Exact difference of two doubles (two_sum is error-free).
    pub fn diff(a: f64, b: f64) -> Dd {
        two_sum(a, -b)
    }

    /// One dd Newton step on an f64 seed, which doubles its correct digits.
    /// Non-positive inputs fall through to f64 semantics (0 or NaN).
    pub fn sqrt(self) -> Dd {
        if !(self.hi > 0.0) {
            return Dd::from_f64(self.hi.sqrt());
        }
        let seed = Dd::from_f64(self.hi.sqrt());
        seed.add(self.div(seed)).scale(0.5)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// A plane point (or vector) with double-double coordinates.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DdPoint {
    pub x: Dd,
    pub y: Dd,
}

impl DdPoint {
    pub fn of(p: Point2) -> DdPoint {
        DdPoint {
            x: Dd::from_f64(p.x),
            y: Dd::from_f64(p.y),
        }
    }

    /// p - q, componentwise exact.
    pub fn between(q: Point2, p: Point2) -> DdPoint {
        DdPoint {
            x: Dd::diff(p.x, q.x),
            y: Dd::diff(p.y, q.y),
        }
    }

    pub fn add(self, o: DdPoint) -> DdPoint {
        DdPoint {
            x: self.x.add(o.x),
            y: self.y.add(o.y),
        }
    }

    pub fn sub(self, o: DdPoint) -> DdPoint {
        DdPoint {
            x: self.x.sub(o.x),
            y: self.y.sub(o.y),
        }
    }

    pub fn mul(self, k: Dd) -> DdPoint {
        DdPoint {
            x: self.x.mul(k),
            y: self.y.mul(k),
        }
    }

    pub fn scale(self, k: f64) -> DdPoint {
        DdPoint {
            x: self.x.scale(k),
            y: self.y.scale(k),
        }
    }

    pub fn dot(self, o: DdPoint) -> Dd {
        self.x.mul(o.x).add(self.y.mul(o.y))
    }

    pub fn cross(self, o: DdPoint) -> Dd {
        self.x.mul(o.y).sub(self.y.mul(o.x))
    }

    pub fn norm_sq(self) -> Dd {
        self.dot(self)
    }

    pub fn to_point(self) -> Point2 {
        point(self.x.to_f64(), self.y.to_f64())
    }
}

/// Circumcenter of three points. None when the points are collinear to
/// double-double precision (callers are expected to have screened that in
/// working precision already).
pub(crate) fn circumcenter(p1: Point2, p2: Point2, p3: Point2) -> Option<DdPoint> {
    let d2 = DdPoint::between(p1, p2);
    let d3 = DdPoint::between(p1, p3);
    let det = d2.cross(d3);
    if det.hi == 0.0 && det.lo == 0.0 {
        return None;
    }
    let m2 = d2.norm_sq().scale(0.5);
    let m3 = d3.norm_sq().scale(0.5);
    let u = DdPoint {
        x: m2.mul(d3.y).sub(m3.mul(d2.y)).div(det),
        y: m3.mul(d2.x).sub(m2.mul(d3.x)).div(det),
    };
    Some(DdPoint::of(p1).add(u))
}

/// Intersection of two lines in point-direction form.
pub(crate) fn intersect(o1: DdPoint, d1: DdPoint, o2: DdPoint, d2: DdPoint) -> Option<DdPoint> {
    let det = d1.cross(d2);
    if det.hi == 0.0 && det.lo == 0.0 {
        return None;
    }
    let t = o2.sub(o1).cross(d2).div(det);
    Some(o1.add(d1.mul(t)))
}

/// Reflection of p across the line through o with direction d.
pub(crate) fn reflect(p: DdPoint, o: DdPoint, d: DdPoint) -> DdPoint {
    let v = p.sub(o);
    let t = v.dot(d).div(d.norm_sq());
    let foot = o.add(d.mul(t));
    foot.scale(2.0).sub(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_free_sum_and_product() {
        let a = 1.0 + f64::EPSILON;
        let b = 1.0 - f64::EPSILON;
        // (1+e)(1-e) = 1 - e^2 exactly; f64 rounds it to 1.
        let p = two_prod(a, b);
        assert_eq!(p.hi, 1.0);
        assert_eq!(p.lo, -f64::EPSILON * f64::EPSILON);
        let s = Dd::from_f64(1e16).add(Dd::from_f64(1.0)).sub(Dd::from_f64(1e16));
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn compensated_cancellation() {
        // x^2 - y^2 with x, y adjacent floats: plain f64 loses all digits.
        let x = 1.0e8;
        let y = 1.0e8 + 1.0;
        let exact = -(x + y); // x^2 - y^2 = (x-y)(x+y) = -(x+y)
        let dd = two_prod(x, x).sub(two_prod(y, y));
        assert_eq!(dd.to_f64(), exact);
    }

    #[test]
    fn division_recovers_rationals() {
        let q = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        let back = q.scale(3.0);
        assert!((back.to_f64() - 1.0).abs() < 1e-30);
        assert!((q.hi - 1.0 / 3.0).abs() < 1e-17);
    }

    #[test]
    fn sqrt_squares_back() {
        let r = Dd::from_f64(2.0).sqrt();
        let back = r.mul(r).sub(Dd::from_f64(2.0));
        assert!(back.to_f64().abs() < 1e-31);
        assert_eq!(Dd::from_f64(0.0).sqrt().to_f64(), 0.0);
    }

    #[test]
    fn circumcenter_of_right_triangle_is_hypotenuse_midpoint() {
        let c = circumcenter(point(0.0, 0.0), point(4.0, 0.0), point(0.0, 3.0))
            .unwrap()
            .to_point();
        assert_eq!((c.x, c.y), (2.0, 1.5));
        assert!(circumcenter(point(0.0, 0.0), point(1.0, 1.0), point(2.0, 2.0)).is_none());
    }

    #[test]
    fn reflect_across_diagonal_swaps_coordinates() {
        let p = reflect(
            DdPoint::of(point(3.0, -1.0)),
            DdPoint::of(point(0.0, 0.0)),
            DdPoint::of(point(1.0, 1.0)),
        )
        .to_point();
        assert_eq!((p.x, p.y), (-1.0, 3.0));
    }

    #[test]
    fn intersect_matches_exact_meet() {
        let p = intersect(
            DdPoint::of(point(0.0, 1.0)),
            DdPoint::of(point(1.0, 0.0)),
            DdPoint::of(point(2.0, 0.0)),
            DdPoint::of(point(0.0, 5.0)),
        )
        .unwrap()
        .to_point();
        assert_eq!((p.x, p.y), (2.0, 1.0));
    }
}
