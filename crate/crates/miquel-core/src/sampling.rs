//! Seeded random pattern generators used by the CLI, the test suites, and
//! the benches. Everything is rejection-sampled until validation passes, so
//! the outputs are always valid patterns; determinism comes from ChaCha8.

use crate::error::{Error, Result};
use crate::geometry::{point, vec2};
use crate::pattern::{Pattern22, PatternClass, Similarity};
use crate::quartic::MiquelQuartic;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_ATTEMPTS: usize = 500;
/// Abscissas are drawn from +-[MIN_ABS, MAX_ABS] and kept apart by MIN_GAP,
/// which keeps the inner points off each other and the construction
/// well-conditioned without biasing toward any symmetry.
const MIN_ABS: f64 = 0.2;
const MAX_ABS: f64 = 5.0;
const MIN_GAP: f64 = 0.05;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw_magnitude<R: Rng>(rng: &mut R) -> f64 {
    let m = rng.gen_range(MIN_ABS..MAX_ABS);
    if rng.gen_bool(0.5) {
        -m
    } else {
        m
    }
}

fn distinct_draws<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    'outer: loop {
        let xs: Vec<f64> = (0..n).map(|_| draw_magnitude(rng)).collect();
        for (k, a) in xs.iter().enumerate() {
            for b in &xs[k + 1..] {
                if (a - b).abs() < MIN_GAP {
                    continue 'outer;
                }
            }
        }
        return xs;
    }
}

/// Five hyperbola abscissas, pairwise separated and bounded away from zero.
pub fn random_abscissas<R: Rng>(rng: &mut R) -> [f64; 5] {
    let xs = distinct_draws(rng, 5);
    [xs[0], xs[1], xs[2], xs[3], xs[4]]
}

pub fn random_similarity<R: Rng>(rng: &mut R) -> Similarity {
    Similarity {
        angle: rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        factor: rng.gen_range(0.5..2.0),
        offset: vec2(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
    }
}

/// Random generic pattern: random abscissas on xy = 1, pushed through a
/// random similarity.
pub fn random_generic_pattern<R: Rng>(rng: &mut R, tol: f64) -> Result<Pattern22> {
    for _ in 0..MAX_ATTEMPTS {
        let abscissas = random_abscissas(rng);
        let map = random_similarity(rng);
        if let Ok(p) = Pattern22::from_hyperbola(abscissas, &map, tol) {
            if matches!(p.classify(tol), Ok(PatternClass::Generic)) {
                return Ok(p);
            }
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Random horizontally trapezoidal pattern: D, E, F on one line of the
/// degenerate conic xy = 0, B, H on the other, pushed through a random
/// similarity (rotations keep the class, so orientations stay general).
pub fn random_trapezoidal_pattern<R: Rng>(rng: &mut R, tol: f64) -> Result<Pattern22> {
    for _ in 0..MAX_ATTEMPTS {
        let xs = distinct_draws(rng, 3);
        let ys = distinct_draws(rng, 2);
        let map = random_similarity(rng);
        let d = map.apply(point(xs[0], 0.0));
        let e = map.apply(point(xs[1], 0.0));
        let f = map.apply(point(xs[2], 0.0));
        let b = map.apply(point(0.0, ys[0]));
        let h = map.apply(point(0.0, ys[1]));
        if let Ok(p) = Pattern22::reconstruct_from_five(b, d, e, f, h, tol) {
            if matches!(p.classify(tol), Ok(PatternClass::TrapezoidalHorizontal)) {
                return Ok(p);
            }
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Random vertically trapezoidal pattern (transpose of a horizontal one).
pub fn random_vertical_trapezoidal_pattern<R: Rng>(rng: &mut R, tol: f64) -> Result<Pattern22> {
    Ok(random_trapezoidal_pattern(rng, tol)?.transpose())
}

/// Minimum distance from E to each corner, as a fraction of the pattern
/// scale, for the s0 samplers. As E approaches a corner the tangent circle
/// of the quartic at that corner collapses (its chord through E shrinks to
/// a point), and every construction reading the curve there amplifies input
/// rounding roughly as 1 / |corner - E|^2 — at 1e-4 of scale a single ulp
/// of a coordinate already moves the reflected image by ~1e-5 of scale.
pub const MIN_CORNER_GAP: f64 = 2e-2;

fn e_clear_of_corners(p: &Pattern22) -> bool {
    let least = MIN_CORNER_GAP * p.scale();
    [p.a(), p.c(), p.g(), p.i()]
        .iter()
        .all(|corner| corner.dist(p.e()) > least)
}

/// Like [`random_generic_pattern`], but additionally requiring the invariant
/// quartic to be non-degenerate (the binodal locus the group law lives on)
/// and E bounded away from the corners.
pub fn random_generic_s0<R: Rng>(rng: &mut R, tol: f64) -> Result<Pattern22> {
    for _ in 0..MAX_ATTEMPTS {
        let p = random_generic_pattern(rng, tol)?;
        if !e_clear_of_corners(&p) {
            continue;
        }
        if let Ok(q) = MiquelQuartic::of_pattern(&p, tol) {
            if q.is_nondegenerate() {
                return Ok(p);
            }
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Trapezoidal counterpart of [`random_generic_s0`].
pub fn random_trapezoidal_s0<R: Rng>(rng: &mut R, tol: f64) -> Result<Pattern22> {
    for _ in 0..MAX_ATTEMPTS {
        let p = random_trapezoidal_pattern(rng, tol)?;
        if !e_clear_of_corners(&p) {
            continue;
        }
        if let Ok(q) = MiquelQuartic::of_pattern(&p, tol) {
            if q.is_nondegenerate() {
                return Ok(p);
            }
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}
