mod common;

use common::property_scenarios;
use cs_intercept::{propagate_arc, propagate_straight, sample, solve, turning_circle_center};

#[test]
fn samples_follow_the_solution() {
    let mut sampled = 0;
    for (id, scenario) in property_scenarios() {
        let Some(best) = solve(&scenario).unwrap().best else {
            continue;
        };
        let scale = scenario.length_scale();
        let traj = sample(&best, &scenario, 64, 48).unwrap();
        sampled += 1;

        for samples in [&traj.pursuer_samples, &traj.target_samples] {
            assert_eq!(samples[0].time, 0.0, "{id}");
            assert!(
                samples.windows(2).all(|w| w[1].time > w[0].time),
                "{id}: times not increasing"
            );
            assert_eq!(samples.last().unwrap().time, best.total_time, "{id}");
        }

        let p_end = traj.pursuer_samples.last().unwrap().point;
        let t_end = traj.target_samples.last().unwrap().point;
        assert!(p_end.distance(&traj.intercept.point) <= 1e-8 * scale, "{id}");
        assert!(t_end.distance(&traj.intercept.point) <= 1e-8 * scale, "{id}");

        // Closed-form cross-checks of the segment endpoints.
        let radius = scenario.pursuer.turn_radius();
        let a = scenario.pursuer.curvature();
        let exit = propagate_arc(scenario.pursuer_start, best.branch, best.arc_length(), a).unwrap();
        let end = propagate_straight(exit, best.lengths.xi3).unwrap();
        if best.arc_length() > 0.0 {
            let arc = traj.arc_samples();
            assert!(
                arc.last().unwrap().point.distance(&exit.position()) <= 1e-10 * scale,
                "{id}"
            );
            let center = turning_circle_center(scenario.pursuer_start, best.branch, radius).unwrap();
            for s in arc {
                assert!(
                    (s.point.distance(&center) - radius).abs() <= 1e-9 * scale.max(radius),
                    "{id}"
                );
            }
        }
        assert!(p_end.distance(&end.position()) <= 1e-10 * scale, "{id}");

        // Target moves by |V_T|·Δt along its heading.
        let (st, ct) = scenario.target.heading.sin_cos();
        for w in traj.target_samples.windows(2) {
            let dt = w[1].time - w[0].time;
            let dx = w[1].point.x - w[0].point.x;
            let dy = w[1].point.y - w[0].point.y;
            let step = scenario.target.speed * dt;
            assert!(
                (dx - step * ct).abs() <= 1e-10 * scale && (dy - step * st).abs() <= 1e-10 * scale,
                "{id}"
            );
        }
    }
    assert!(sampled > 150);
}

#[test]
fn sampling_is_reproducible() {
    for (_, scenario) in property_scenarios().into_iter().take(30) {
        let Some(best) = solve(&scenario).unwrap().best else {
            continue;
        };
        let a = sample(&best, &scenario, 100, 100).unwrap();
        let b = sample(&best, &scenario, 100, 100).unwrap();
        for (x, y) in a
            .pursuer_samples
            .iter()
            .chain(&a.target_samples)
            .zip(b.pursuer_samples.iter().chain(&b.target_samples))
        {
            assert_eq!(x.point.x.to_bits(), y.point.x.to_bits());
            assert_eq!(x.point.y.to_bits(), y.point.y.to_bits());
            assert_eq!(x.time.to_bits(), y.time.to_bits());
        }
    }
}

#[test]
fn sample_counts_match_segments() {
    for (id, scenario) in property_scenarios().into_iter().take(40) {
        let Some(best) = solve(&scenario).unwrap().best else {
            continue;
        };
        let traj = sample(&best, &scenario, 30, 20).unwrap();
        let arc = if best.arc_length() > 0.0 { 30 } else { 0 };
        let line = if best.lengths.xi3 > 0.0 { 20 } else { 0 };
        assert_eq!(traj.pursuer_samples.len(), 1 + arc + line, "{id}");
        assert_eq!(traj.target_samples.len(), 21, "{id}");
        assert_eq!(traj.arc_len, 1 + arc);
    }
}
