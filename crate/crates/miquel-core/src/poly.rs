//! Dense real polynomials in one variable, just big enough for the quartics
//! that show up when a circle or line meets the invariant curve.
//!
//! Coefficients are stored in ascending order: `p[k]` multiplies `t^k`.

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix};

pub(crate) fn eval(p: &[f64], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

pub(crate) fn eval_deriv(p: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for k in (1..p.len()).rev() {
        acc = acc * t + p[k] * k as f64;
    }
    acc
}

pub(crate) fn add(p: &[f64], q: &[f64]) -> Vec<f64> {
    let n = p.len().max(q.len());
    (0..n)
        .map(|k| p.get(k).copied().unwrap_or(0.0) + q.get(k).copied().unwrap_or(0.0))
        .collect()
}

pub(crate) fn scale(p: &[f64], s: f64) -> Vec<f64> {
    p.iter().map(|c| c * s).collect()
}

pub(crate) fn mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Real roots of a*t^2 + b*t + c, ascending, using the cancellation-free form.
pub(crate) fn real_roots_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = if q == 0.0 {
        // b == 0 and disc == -4ac >= 0
        let r = (-c / a).max(0.0).sqrt();
        vec![-r, r]
    } else {
        vec![q / a, c / q]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| x == y);
    roots
}

/// All complex roots of `p` (any degree up to 4 in practice), via the
/// companion matrix. Leading coefficients that are negligible relative to the
/// largest one are trimmed first; the corresponding roots "escaped to
/// infinity" and are not reported.
pub(crate) fn complex_roots(p: &[f64]) -> Result<Vec<Complex<f64>>> {
    let maxc = p.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if maxc == 0.0 {
        return Err(Error::SolverFailure("zero polynomial"));
    }
    let mut deg = p.len() - 1;
    while deg > 0 && p[deg].abs() <= 1e-13 * maxc {
        deg -= 1;
    }
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg == 1 {
        return Ok(vec![Complex::new(-p[0] / p[1], 0.0)]);
    }
    if deg == 2 {
        let (a, b, c) = (p[2], p[1], p[0]);
        let disc = Complex::new(b * b - 4.0 * a * c, 0.0).sqrt();
        return Ok(vec![
            (-Complex::new(b, 0.0) + disc) / (2.0 * a),
            (-Complex::new(b, 0.0) - disc) / (2.0 * a),
        ]);
    }
    let lead = p[deg];
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for k in 1..deg {
        m[(k, k - 1)] = 1.0;
    }
    for k in 0..deg {
        m[(k, deg - 1)] = -p[k] / lead;
    }
    let eig = m.complex_eigenvalues();
    Ok(eig.iter().copied().collect())
}

/// A few Newton steps on a real root candidate; returns the polished root.
/// Falls back to the input when the derivative collapses (multiple root).
/// Newton polish that only accepts improving steps. At a double root the
/// residual and the derivative are both noise-dominated, and an unguarded
/// f/df step can throw away an input that was already exact (e.g. from a
/// Vieta root sum); rejecting non-improving candidates keeps it.
pub(crate) fn polish_real_root(p: &[f64], mut t: f64) -> f64 {
    let mut best = eval(p, t).abs();
    for _ in 0..6 {
        let f = eval(p, t);
        let df = eval_deriv(p, t);
        if df == 0.0 {
            break;
        }
        let step = f / df;
        if !step.is_finite() {
            break;
        }
        let cand = t - step;
        let cand_val = eval(p, cand).abs();
        if cand_val >= best {
            break;
        }
        t = cand;
        best = cand_val;
        if step.abs() <= 1e-16 * (1.0 + t.abs()) {
            break;
        }
    }
    t
}
