use miquel_core::sampling::{random_generic_s0, seeded_rng};
use miquel_core::{GroupLaw, GroupPoint, MiquelQuartic};

#[test]
fn probe_failing_seed() {
    let seed = 1675833314115048128u64;
    let mut rng = seeded_rng(seed);
    let s = random_generic_s0(&mut rng, 1e-9).unwrap();
    let q = MiquelQuartic::of_pattern(&s, 1e-9).unwrap();
    println!("a={} b={} c={}", q.a, q.b, q.c);
    println!("curve_scale={}", q.curve_scale());
    println!("intervals={:?}", q.admissible_intervals());
    let law = GroupLaw::new(&q).unwrap();
    println!("neutral={:?} scale={}", law.neutral(), law.scale());
    let pts = law.sample_points(4).unwrap();
    println!("n={} pts:", pts.len());
    for (i, p) in pts.iter().enumerate() {
        println!("  [{i}] ({:.6e}, {:.6e})  F={:.3e}", p.x, p.y, q.evaluate_frame(p.x, p.y));
    }
    for (i, pair) in pts.windows(2).enumerate() {
        let d = pair[0].dist(pair[1]) / law.scale();
        match law.add(pair[0], pair[1]) {
            Ok(sum) => println!(
                "add[{i}] dist={:.3e} -> ({:.6e}, {:.6e}) F={:.3e}",
                d, sum.x, sum.y, q.evaluate_frame(sum.x, sum.y)
            ),
            Err(e) => println!("add[{i}] dist={:.3e} -> ERR {e}", d),
        }
        match law.double(pair[0]) {
            Ok(t) => println!("  dbl[{i}] -> F={:.3e}", q.evaluate_frame(t.x, t.y)),
            Err(e) => println!("  dbl[{i}] -> ERR {e}"),
        }
    }
    for t in q.x_axis_points().unwrap() {
        match law.double(GroupPoint { x: t.x, y: t.y }) {
            Ok(tt) => println!("torsion ({:.6e},{:.6e}) -> dist to N {:.3e}", t.x, t.y, tt.dist(law.neutral())),
            Err(e) => println!("torsion ({:.6e},{:.6e}) -> ERR {e}", t.x, t.y),
        }
    }
}
