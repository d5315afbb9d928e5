//! Biperiodic square-grid circle patterns with a 2x2 fundamental domain, and
//! the two Miquel mutations acting on them.
//!
//! A pattern is stored as the nine vertices S_{i,j}, 0 <= i,j <= 2, of one
//! fundamental domain plus its closing row and column:
//!
//! ```text
//!   G H I        (row j = 2)
//!   D E F        (row j = 1)
//!   A B C        (row j = 0)
//! ```
//!
//! The full vertex set extends biperiodically: S_{i+2,j} = S_{i,j} + u and
//! S_{i,j+2} = S_{i,j} + v with monodromies u = C - A and v = G - A. Each unit
//! face carries a circumcircle; faces are checkerboard-colored by the parity
//! of i + j (even = black, odd = white).

use crate::dd::{self, DdPoint};
use crate::error::{Error, Result};
use crate::geometry::{
    circumcenter, collinear, concyclic_residual, point, reflect_point, signed_angle, spread,
    vec2, Circle2, Line2, Point2, Vec2, DEFAULT_TOL,
};
use crate::hyperbola;

pub const VERTEX_LABELS: [&str; 9] = ["A", "B", "C", "D", "E", "F", "G", "H", "I"];

/// Face names keyed by (i, j) of the lower-left vertex, in grid order.
pub const FACE_LABELS: [(&str, usize, usize); 4] = [
    ("ABED", 0, 0),
    ("BCFE", 1, 0),
    ("DEHG", 0, 1),
    ("EFIH", 1, 1),
];

/// Which family of circles a mutation preserves: `White` reflects the even
/// vertices through the diagonal black-center axes (and fixes every black
/// circle as a set), `Black` does the opposite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationColor {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternClass {
    Generic,
    /// The three rows {A,B,C}, {D,E,F}, {G,H,I} are each collinear.
    TrapezoidalHorizontal,
    /// The three columns {A,D,G}, {B,E,H}, {C,F,I} are each collinear.
    TrapezoidalVertical,
}

/// Quantities fixed by the renormalized mutations (points) or negated by a
/// single one (angles).
///
/// The angles are *directed angles mod pi*, folded into (-pi/2, pi/2]: a
/// mutation can move the vertex to the other arc of its circle, which turns
/// the plain signed angle into its supplement, so only the class mod pi is
/// geometrically meaningful. One renormalized mutation negates both classes;
/// the composed dynamics step preserves them.
#[derive(Debug, Clone, Copy)]
pub struct ConservedQuantities {
    pub a: Point2,
    pub c: Point2,
    pub g: Point2,
    pub i: Point2,
    /// Directed angle mod pi at B from ray B->C to ray B->A.
    pub angle_cba: f64,
    /// Directed angle mod pi at D from ray D->A to ray D->G.
    pub angle_adg: f64,
}

/// Fold a signed angle in (-pi, pi] into its mod-pi class in (-pi/2, pi/2].
fn fold_mod_pi(a: f64) -> f64 {
    let pi = std::f64::consts::PI;
    if a > 0.5 * pi {
        a - pi
    } else if a <= -0.5 * pi {
        a + pi
    } else {
        a
    }
}

/// Direct similarity z -> factor * e^{i angle} * z + offset.
#[derive(Debug, Clone, Copy)]
pub struct Similarity {
    pub angle: f64,
    pub factor: f64,
    pub offset: Vec2,
}

impl Default for Similarity {
    fn default() -> Self {
        Similarity {
            angle: 0.0,
            factor: 1.0,
            offset: vec2(0.0, 0.0),
        }
    }
}

impl Similarity {
    pub fn apply(&self, p: Point2) -> Point2 {
        let (s, c) = self.angle.sin_cos();
        point(
            self.factor * (c * p.x - s * p.y) + self.offset.x,
            self.factor * (s * p.x + c * p.y) + self.offset.y,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pattern22 {
    pts: [Point2; 9],
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    3 * j + i
}

impl Pattern22 {
    /// Validates and wraps nine vertices given in label order A..I.
    ///
    /// Checks, each against `tol` times the pattern scale (largest pairwise
    /// distance): periodic closure of the third row/column, non-collinear
    /// monodromies, all four faces concyclic with pairwise distinct vertices.
    pub fn from_points(pts: [Point2; 9], tol: f64) -> Result<Pattern22> {
        let scale = spread(&pts);
        if scale == 0.0 {
            return Err(Error::DegenerateInput("all nine vertices coincide"));
        }
        let p = |i: usize, j: usize| pts[idx(i, j)];
        let u = p(2, 0) - p(0, 0);
        let v = p(0, 2) - p(0, 0);

        let hres = [
            (p(2, 1) - p(0, 1)) - u,
            (p(2, 2) - p(0, 2)) - u,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0f64, f64::max);
        if hres > tol * scale {
            return Err(Error::PeriodicityViolation {
                detail: "rows disagree on the horizontal monodromy u",
                residual: hres / scale,
            });
        }
        let vres = [
            (p(1, 2) - p(1, 0)) - v,
            (p(2, 2) - p(2, 0)) - v,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0f64, f64::max);
        if vres > tol * scale {
            return Err(Error::PeriodicityViolation {
                detail: "columns disagree on the vertical monodromy v",
                residual: vres / scale,
            });
        }
        if u.cross(v).abs() <= tol * scale * scale {
            return Err(Error::CollinearMonodromies);
        }

        for &(name, fi, fj) in &FACE_LABELS {
            let quad = [p(fi, fj), p(fi + 1, fj), p(fi + 1, fj + 1), p(fi, fj + 1)];
            for (a, pa) in quad.iter().enumerate() {
                for pb in &quad[a + 1..] {
                    if pa.dist(*pb) <= tol * scale {
                        return Err(Error::DegenerateFace { face: name });
                    }
                }
            }
            match concyclic_residual(quad[0], quad[1], quad[2], quad[3]) {
                Some(r) if r <= tol => {}
                Some(r) => return Err(Error::NonConcyclicFace { face: name, residual: r }),
                None => return Err(Error::DegenerateFace { face: name }),
            }
        }
        Ok(Pattern22 { pts })
    }

    pub fn points(&self) -> &[Point2; 9] {
        &self.pts
    }

    pub fn a(&self) -> Point2 { self.pts[0] }
    pub fn b(&self) -> Point2 { self.pts[1] }
    pub fn c(&self) -> Point2 { self.pts[2] }
    pub fn d(&self) -> Point2 { self.pts[3] }
    pub fn e(&self) -> Point2 { self.pts[4] }
    pub fn f(&self) -> Point2 { self.pts[5] }
    pub fn g(&self) -> Point2 { self.pts[6] }
    pub fn h(&self) -> Point2 { self.pts[7] }
    pub fn i(&self) -> Point2 { self.pts[8] }

    /// Horizontal monodromy u = C - A.
    pub fn u(&self) -> Vec2 {
        self.pts[2] - self.pts[0]
    }

    /// Vertical monodromy v = G - A.
    pub fn v(&self) -> Vec2 {
        self.pts[6] - self.pts[0]
    }

    /// Largest pairwise distance among the nine stored vertices.
    pub fn scale(&self) -> f64 {
        spread(&self.pts)
    }

    /// Vertex S_{i,j} for any integer indices, via the biperiodic extension.
    pub fn vertex(&self, i: i64, j: i64) -> Point2 {
        let (qi, ri) = (i.div_euclid(2), i.rem_euclid(2) as usize);
        let (qj, rj) = (j.div_euclid(2), j.rem_euclid(2) as usize);
        self.pts[idx(ri, rj)] + self.u() * qi as f64 + self.v() * qj as f64
    }

    /// Circumcenter of face (i, j) (any integers), from its best-conditioned
    /// vertex triple.
    pub fn face_center(&self, i: i64, j: i64, tol: f64) -> Result<Point2> {
        Ok(self.face_center_dd(i, j, tol)?.to_point())
    }

    /// `face_center` carried in double-double. Mutations divide by the gap
    /// between two centers when forming a mirror line, which amplifies any
    /// center rounding; orbits iterate that often enough for plain f64
    /// centers to show up as measurable drift.
    fn face_center_dd(&self, i: i64, j: i64, tol: f64) -> Result<DdPoint> {
        let (qi, ri) = (i.div_euclid(2), i.rem_euclid(2) as usize);
        let (qj, rj) = (j.div_euclid(2), j.rem_euclid(2) as usize);
        let name = FACE_LABELS
            .iter()
            .find(|&&(_, fi, fj)| fi == ri && fj == rj)
            .map(|&(n, _, _)| n)
            .unwrap();
        let p = |a: usize, b: usize| self.pts[idx(a, b)];
        let quad = [p(ri, rj), p(ri + 1, rj), p(ri + 1, rj + 1), p(ri, rj + 1)];
        let mut best: Option<(f64, [Point2; 3])> = None;
        for skip in 0..4 {
            let tri: Vec<Point2> = (0..4).filter(|&k| k != skip).map(|k| quad[k]).collect();
            let area = (tri[1] - tri[0]).cross(tri[2] - tri[0]).abs();
            if best.map(|(a, _)| area > a).unwrap_or(true) {
                best = Some((area, [tri[0], tri[1], tri[2]]));
            }
        }
        let (_, tri) = best.unwrap();
        // f64 pass screens for degeneracy; the value comes from dd.
        circumcenter(tri[0], tri[1], tri[2], tol)
            .map_err(|_| Error::DegenerateFaceCircle { face: name })?;
        let center = dd::circumcenter(tri[0], tri[1], tri[2])
            .ok_or(Error::DegenerateFaceCircle { face: name })?;
        let u = DdPoint::between(self.pts[0], self.pts[2]);
        let v = DdPoint::between(self.pts[0], self.pts[6]);
        Ok(center.add(u.scale(qi as f64)).add(v.scale(qj as f64)))
    }

    pub fn face_circle(&self, i: i64, j: i64, tol: f64) -> Result<Circle2> {
        let center = self.face_center(i, j, tol)?;
        Ok(Circle2 {
            center,
            radius: center.dist(self.vertex(i, j)),
        })
    }

    /// Is face (i, j) black (i + j even)?
    pub fn face_is_black(i: i64, j: i64) -> bool {
        (i + j).rem_euclid(2) == 0
    }

    /// Rows collinear -> horizontal trapezoidal; columns collinear ->
    /// vertical; both within tolerance is rejected as ambiguous.
    pub fn classify(&self, tol: f64) -> Result<PatternClass> {
        let s = self.scale();
        let p = |i: usize, j: usize| self.pts[idx(i, j)];
        let rows = (0..3).all(|j| collinear(p(0, j), p(1, j), p(2, j), tol, s));
        let cols = (0..3).all(|i| collinear(p(i, 0), p(i, 1), p(i, 2), tol, s));
        match (rows, cols) {
            (true, true) => Err(Error::AmbiguousClass),
            (true, false) => Ok(PatternClass::TrapezoidalHorizontal),
            (false, true) => Ok(PatternClass::TrapezoidalVertical),
            (false, false) => Ok(PatternClass::Generic),
        }
    }

    /// One Miquel mutation. Every vertex is reflected through the line
    /// joining the centers of two equal-colored circles adjacent to it: for
    /// the white mutation, S_{i,j} with i+j even reflects through
    /// (O_{i,j}, O_{i-1,j-1}) and with i+j odd through (O_{i-1,j}, O_{i,j-1});
    /// the black mutation swaps the two rules. The lines join black centers
    /// for `White` and white centers for `Black`, so the mutation maps every
    /// circle of the opposite color to itself.
    pub fn mutate(&self, color: MutationColor, tol: f64) -> Result<Pattern22> {
        let scale = self.scale();
        let mut centers = [[DdPoint::of(point(0.0, 0.0)); 2]; 2];
        for fj in 0..2 {
            for fi in 0..2 {
                centers[fj][fi] = self.face_center_dd(fi as i64, fj as i64, tol)?;
            }
        }
        let u = DdPoint::between(self.pts[0], self.pts[2]);
        let v = DdPoint::between(self.pts[0], self.pts[6]);
        let center = |i: i64, j: i64| -> DdPoint {
            let (qi, ri) = (i.div_euclid(2), i.rem_euclid(2) as usize);
            let (qj, rj) = (j.div_euclid(2), j.rem_euclid(2) as usize);
            centers[rj][ri].add(u.scale(qi as f64)).add(v.scale(qj as f64))
        };
        let mut out = [point(0.0, 0.0); 9];
        for j in 0..3i64 {
            for i in 0..3i64 {
                let even = (i + j) % 2 == 0;
                let diagonal = match color {
                    MutationColor::White => even,
                    MutationColor::Black => !even,
                };
                let (c1, c2) = if diagonal {
                    (center(i, j), center(i - 1, j - 1))
                } else {
                    (center(i - 1, j), center(i, j - 1))
                };
                if c1.to_point().dist(c2.to_point()) <= tol * scale {
                    return Err(Error::CoincidentCenters);
                }
                let p = DdPoint::of(self.pts[idx(i as usize, j as usize)]);
                out[idx(i as usize, j as usize)] = dd::reflect(p, c1, c2.sub(c1)).to_point();
            }
        }
        Pattern22::from_points(out, tol)
    }

    /// Mutation followed by the translation taking the image of A back to A.
    /// The result has exactly the same A and the same monodromies, which
    /// makes iterates comparable without drift.
    pub fn mutate_renormalized(&self, color: MutationColor, tol: f64) -> Result<Pattern22> {
        let mutated = self.mutate(color, tol)?;
        let t = self.pts[0] - mutated.pts[0];
        let mut out = mutated.pts;
        for p in &mut out {
            *p = *p + t;
        }
        out[0] = self.pts[0];
        Pattern22::from_points(out, tol)
    }

    /// One step of the dynamics: renormalized white mutation, then
    /// renormalized black mutation.
    pub fn dynamics_step(&self, tol: f64) -> Result<Pattern22> {
        self.mutate_renormalized(MutationColor::White, tol)?
            .mutate_renormalized(MutationColor::Black, tol)
    }

    pub fn conserved_quantities(&self) -> Result<ConservedQuantities> {
        Ok(ConservedQuantities {
            a: self.a(),
            c: self.c(),
            g: self.g(),
            i: self.i(),
            angle_cba: fold_mod_pi(signed_angle(self.b(), self.c(), self.a())?),
            angle_adg: fold_mod_pi(signed_angle(self.d(), self.a(), self.g())?),
        })
    }

    /// Swap the roles of rows and columns: vertex (i, j) of the result is
    /// vertex (j, i) of the input. Faces map to faces of the same color, both
    /// mutations commute with the swap, and a vertically trapezoidal pattern
    /// becomes horizontally trapezoidal.
    pub fn transpose(&self) -> Pattern22 {
        let mut out = self.pts;
        for j in 0..3 {
            for i in 0..3 {
                out[idx(i, j)] = self.pts[idx(j, i)];
            }
        }
        Pattern22 { pts: out }
    }

    /// Rebuild a pattern from the five inner points B, D, E, F, H.
    ///
    /// The five must lie on a common equilateral hyperbola (possibly
    /// degenerated into two orthogonal lines); A is then the second
    /// intersection of the circle through B, D, E with the circle through
    /// D, E, H translated by B - H, and the rest of the domain follows from
    /// the monodromies u = F - D, v = H - B.
    pub fn reconstruct_from_five(
        b: Point2,
        d: Point2,
        e: Point2,
        f: Point2,
        h: Point2,
        tol: f64,
    ) -> Result<Pattern22> {
        let five = [b, d, e, f, h];
        let scale = spread(&five);
        if scale == 0.0 {
            return Err(Error::DegenerateInput("five coincident points"));
        }
        let (_, residual) = hyperbola::fit_equilateral_conic(&five)?;
        if residual > hyperbola::FIT_RESIDUAL_TOL {
            return Err(Error::NotOnCommonHyperbola { residual });
        }
        let o1 = circumcenter(b, d, e, tol)?;
        let o2 = circumcenter(d, e, h, tol)?;
        let o2_shift = o2 + (b - h);
        if o1.dist(o2_shift) <= tol * scale {
            return Err(Error::CoincidentCenters);
        }
        let axis = Line2::through(o1, o2_shift)?;
        let a = reflect_point(b, axis);
        let u = f - d;
        let v = h - b;
        let pts = [
            a,
            b,
            a + u,
            d,
            e,
            f,
            a + v,
            h,
            a + u + v,
        ];
        Pattern22::from_points(pts, tol)
    }

    /// Pattern whose five inner points sit on the image of the hyperbola
    /// xy = 1 under `map`: B, D, E, F, H are taken at the given abscissas.
    pub fn from_hyperbola(abscissas: [f64; 5], map: &Similarity, tol: f64) -> Result<Pattern22> {
        for (k, x) in abscissas.iter().enumerate() {
            if *x == 0.0 || !x.is_finite() {
                return Err(Error::InvalidAbscissas);
            }
            for y in &abscissas[k + 1..] {
                if x == y {
                    return Err(Error::InvalidAbscissas);
                }
            }
        }
        let [b, d, e, f, h] = abscissas.map(|x| map.apply(point(x, 1.0 / x)));
        Pattern22::reconstruct_from_five(b, d, e, f, h, tol)
    }
}

/// Convenience wrapper using [`DEFAULT_TOL`].
impl TryFrom<[Point2; 9]> for Pattern22 {
    type Error = Error;
    fn try_from(pts: [Point2; 9]) -> Result<Pattern22> {
        Pattern22::from_points(pts, DEFAULT_TOL)
    }
}
