//! End-to-end numerical verification: mutation against the group-law
//! prediction, the two-step translation, and the chord-law axioms, bundled
//! into a serializable report.

use crate::elliptic::{predict_mutation, GroupLaw, GroupPoint};
use crate::error::Result;
use crate::exec::ProcessingMode;
use crate::pattern::{MutationColor, Pattern22};
use crate::quartic::MiquelQuartic;
use crate::sampling::seeded_rng;
use rand::Rng;
use serde::Serialize;

/// Worst observed deviation for each chord-law axiom, normalized by the
/// curve scale.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GroupAxiomResiduals {
    pub commutativity: f64,
    pub associativity: f64,
    pub identity: f64,
    pub inverse: f64,
    pub two_torsion: f64,
    pub sum_invariance: f64,
}

/// Outcome of [`verify_pattern`]. All residuals are relative to the pattern
/// or curve scale, so thresholds are plain numbers.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerificationReport {
    /// |E' - (-E - 2A)| / scale after one white mutation.
    pub theorem3_residual_white: f64,
    /// |E' - (-E - 2C)| / scale after one black mutation.
    pub theorem3_residual_black: f64,
    /// |E'' - (E + 2(A - C))| / scale after white-then-black.
    pub prop5_residual: f64,
    pub group_axiom_residuals: GroupAxiomResiduals,
    /// Randomized trials abandoned because an intersection was ill-posed
    /// (near-tangent circle, complex quartet, clustered roots).
    pub skipped_trials: usize,
}

/// Check one pattern end to end: both single mutations against the
/// group-law prediction, the composed step against translation by
/// 2(A - C), and the axioms of the chord law on `trials` random samples.
pub fn verify_pattern(
    s0: &Pattern22,
    tol: f64,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let scale = s0.scale();
    let q = MiquelQuartic::of_pattern(s0, tol)?;
    let law = GroupLaw::new(&q)?;

    let white = s0.mutate_renormalized(MutationColor::White, tol)?;
    let predicted_w = predict_mutation(s0, MutationColor::White, tol)?;
    let theorem3_residual_white = white.e().dist(predicted_w) / scale;

    let black = s0.mutate_renormalized(MutationColor::Black, tol)?;
    let predicted_b = predict_mutation(s0, MutationColor::Black, tol)?;
    let theorem3_residual_black = black.e().dist(predicted_b) / scale;

    let stepped = s0.dynamics_step(tol)?;
    let shift = law.add(law.lift_world(s0.a())?, law.negate(law.lift_world(s0.c())?))?;
    let translated = law.add(law.lift_world(s0.e())?, law.mul(2, shift)?)?;
    let prop5_residual = stepped.e().dist(law.to_world(translated)) / scale;

    let group_scale = law.scale();
    let pool = law.sample_points(16)?;
    let mut rng = seeded_rng(seed);
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| pool[rng.gen_range(0..pool.len())];
    let mut skipped = 0usize;

    let mut commutativity = 0.0f64;
    let mut associativity = 0.0f64;
    let mut identity = 0.0f64;
    let mut inverse = 0.0f64;
    for _ in 0..trials {
        let p1 = pick(&mut rng);
        let p2 = pick(&mut rng);
        let p3 = pick(&mut rng);
        match axiom_trial(&law, p1, p2, p3) {
            Ok((comm, assoc)) => {
                commutativity = commutativity.max(comm / group_scale);
                associativity = associativity.max(assoc / group_scale);
            }
            Err(_) => {
                skipped += 1;
                continue;
            }
        }
        identity = identity.max(law.add(p1, law.neutral())?.dist(p1) / group_scale);
        match law.add(p1, law.negate(p1)) {
            Ok(n) => inverse = inverse.max(n.dist(law.neutral()) / group_scale),
            Err(_) => skipped += 1,
        }
    }

    let mut two_torsion = 0.0f64;
    for p in q.x_axis_points()? {
        // x_axis_points are frame coordinates.
        let t = law.lift_frame(p.x, p.y)?;
        match law.double(t) {
            Ok(d) => two_torsion = two_torsion.max(d.dist(law.neutral()) / group_scale),
            Err(_) => skipped += 1,
        }
    }

    let sum = law.base_point_sum_invariance(law.neutral(), trials.max(8), &mut rng)?;
    skipped += sum.skipped;

    Ok(VerificationReport {
        theorem3_residual_white,
        theorem3_residual_black,
        prop5_residual,
        group_axiom_residuals: GroupAxiomResiduals {
            commutativity,
            associativity,
            identity,
            inverse,
            two_torsion,
            sum_invariance: sum.spread / group_scale,
        },
        skipped_trials: skipped,
    })
}

fn axiom_trial(
    law: &GroupLaw<'_>,
    p1: GroupPoint,
    p2: GroupPoint,
    p3: GroupPoint,
) -> Result<(f64, f64)> {
    let ab = law.add(p1, p2)?;
    let ba = law.add(p2, p1)?;
    let left = law.add(ab, p3)?;
    let right = law.add(p1, law.add(p2, p3)?)?;
    Ok((ab.dist(ba), left.dist(right)))
}

/// Verify many patterns, fanning the work out over the execution mode.
pub fn verify_batch(
    patterns: &[Pattern22],
    tol: f64,
    trials: usize,
    seed: u64,
    mode: ProcessingMode,
) -> Vec<Result<VerificationReport>> {
    mode.map_indices(patterns.len(), |i| {
        verify_pattern(&patterns[i], tol, trials, seed.wrapping_add(i as u64))
    })
}

/// Largest residual in the report, for quick pass/fail summaries.
pub fn worst_residual(report: &VerificationReport) -> f64 {
    let g = &report.group_axiom_residuals;
    [
        report.theorem3_residual_white,
        report.theorem3_residual_black,
        report.prop5_residual,
        g.commutativity,
        g.associativity,
        g.identity,
        g.inverse,
        g.two_torsion,
        g.sum_invariance,
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point;
    use crate::pattern::Similarity;

    #[test]
    fn generic_fixture_verifies_cleanly() {
        let s = Pattern22::from_hyperbola(
            [1.0, 2.0, 3.0, 4.0, 6.0],
            &Similarity::default(),
            1e-9,
        )
        .unwrap();
        let report = verify_pattern(&s, 1e-9, 12, 3).unwrap();
        assert!(report.theorem3_residual_white <= 1e-7);
        assert!(report.theorem3_residual_black <= 1e-7);
        assert!(report.prop5_residual <= 1e-6);
        assert!(report.group_axiom_residuals.commutativity == 0.0);
        assert!(report.group_axiom_residuals.associativity <= 1e-6);
        assert!(report.group_axiom_residuals.identity <= 1e-9);
        assert!(report.group_axiom_residuals.inverse <= 1e-9);
        assert!(report.group_axiom_residuals.two_torsion <= 1e-9);
        assert!(report.group_axiom_residuals.sum_invariance <= 1e-6);
    }

    #[test]
    fn trapezoidal_fixture_verifies_cleanly() {
        let s = Pattern22::reconstruct_from_five(
            point(0.0, 1.0),
            point(-1.0, 0.0),
            point(3.0, 0.0),
            point(4.0, 0.0),
            point(0.0, -2.0),
            1e-9,
        )
        .unwrap();
        let report = verify_pattern(&s, 1e-9, 12, 3).unwrap();
        assert!(worst_residual(&report) <= 1e-6, "{report:?}");
    }

    #[test]
    fn batch_matches_individual_runs() {
        let s = Pattern22::from_hyperbola(
            [1.0, 2.0, 3.0, 4.0, 6.0],
            &Similarity::default(),
            1e-9,
        )
        .unwrap();
        let patterns = [s, s];
        for mode in [ProcessingMode::Sequential, ProcessingMode::Parallel] {
            let reports = verify_batch(&patterns, 1e-9, 6, 9, mode);
            assert_eq!(reports.len(), 2);
            let solo = verify_pattern(&patterns[1], 1e-9, 6, 10).unwrap();
            let batch1 = reports[1].as_ref().unwrap();
            // Same seed derivation: batch index 1 uses seed 9 + 1 = 10.
            assert_eq!(batch1.prop5_residual.to_bits(), solo.prop5_residual.to_bits());
        }
    }

    #[test]
    fn report_serializes_with_stable_field_names() {
        let s = Pattern22::from_hyperbola(
            [1.0, 2.0, 3.0, 4.0, 6.0],
            &Similarity::default(),
            1e-9,
        )
        .unwrap();
        let report = verify_pattern(&s, 1e-9, 4, 1).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        for key in [
            "theorem3_residual_white",
            "theorem3_residual_black",
            "prop5_residual",
            "group_axiom_residuals",
            "sum_invariance",
            "skipped_trials",
        ] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
    }
}
