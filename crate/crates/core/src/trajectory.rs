//! Time-stamped sampling of a solved intercept for export and plotting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{Point, Scenario, TurnDirection};
use crate::solver::InterceptSolution;

pub const DEFAULT_ARC_SAMPLES: usize = 200;
pub const DEFAULT_LINE_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub time: f64,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub pursuer_samples: Vec<Sample>,
    pub target_samples: Vec<Sample>,
    pub intercept: Sample,
    /// `pursuer_samples[..arc_len]` lie on the turning circle (start included).
    pub arc_len: usize,
}

impl Trajectory {
    pub fn arc_samples(&self) -> &[Sample] {
        &self.pursuer_samples[..self.arc_len]
    }
}

/// Samples the pursuer's arc with `arc_samples` heading increments and the
/// two straight legs with `line_samples` subdivisions each.
///
/// Zero-length segments contribute no samples beyond their start point.
pub fn sample(
    solution: &InterceptSolution,
    scenario: &Scenario,
    arc_samples: usize,
    line_samples: usize,
) -> Result<Trajectory> {
    if arc_samples < 2 || line_samples < 2 {
        return Err(Error::invalid(format!(
            "need at least 2 samples per segment, got arc={arc_samples} line={line_samples}"
        )));
    }
    let total_time = solution.total_time;
    let start = scenario.pursuer_start;
    let a = scenario.pursuer.curvature();

    let mut pursuer = Vec::with_capacity(1 + arc_samples + line_samples);
    pursuer.push(Sample {
        time: 0.0,
        point: start.position(),
    });

    let arc_time = solution.arc_time();
    if solution.arc_length() > 0.0 {
        let [_, exit] = solution.segment_poses.arc;
        let step = (exit.heading - start.heading) / arc_samples as f64;
        let (s0, c0) = start.heading.sin_cos();
        let sign = match solution.branch {
            TurnDirection::Left => 1.0,
            TurnDirection::Right => -1.0,
        };
        let mut heading = start.heading;
        for i in 1..=arc_samples {
            heading += step;
            let (s, c) = heading.sin_cos();
            pursuer.push(Sample {
                time: arc_time * i as f64 / arc_samples as f64,
                point: Point::new(start.x + sign * (s - s0) / a, start.y - sign * (c - c0) / a),
            });
        }
    }
    let arc_len = pursuer.len();

    let xi3 = solution.lengths.xi3;
    if xi3 > 0.0 {
        let [exit, _] = solution.segment_poses.straight;
        let (s, c) = exit.heading.sin_cos();
        let straight_time = solution.durations[2];
        for j in 1..=line_samples {
            let frac = j as f64 / line_samples as f64;
            pursuer.push(Sample {
                time: arc_time + straight_time * frac,
                point: Point::new(exit.x + frac * xi3 * c, exit.y + frac * xi3 * s),
            });
        }
    }
    if let Some(last) = pursuer.last_mut() {
        // The two time expressions agree only to rounding; pin the end.
        if last.time > 0.0 {
            last.time = total_time;
        }
    }

    let target_start = scenario.target_start.position();
    let (st, ct) = scenario.target.heading.sin_cos();
    let vt = scenario.target.speed;
    let mut target = vec![Sample {
        time: 0.0,
        point: target_start,
    }];
    if total_time > 0.0 {
        for j in 1..=line_samples {
            let t = if j == line_samples {
                total_time
            } else {
                total_time * j as f64 / line_samples as f64
            };
            target.push(Sample {
                time: t,
                point: Point::new(target_start.x + vt * t * ct, target_start.y + vt * t * st),
            });
        }
    }

    Ok(Trajectory {
        pursuer_samples: pursuer,
        target_samples: target,
        intercept: Sample {
            time: total_time,
            point: solution.intercept_point,
        },
        arc_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{turning_circle_center, Pose};
    use crate::solver::solve;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn strictly_increasing(samples: &[Sample]) -> bool {
        samples.windows(2).all(|w| w[1].time > w[0].time)
    }

    #[test]
    fn table_one_endpoints() {
        let s = Scenario::from_parts(
            Pose::new(0.0, 0.0, 2.0 * PI / 3.0),
            5.0,
            1.0,
            Pose::new(-5.0, 0.0, FRAC_PI_2),
            1.0,
        )
        .unwrap();
        let sol = solve(&s).unwrap().best.unwrap();
        let traj = sample(&sol, &s, 100, 100).unwrap();
        let p = traj.pursuer_samples.last().unwrap();
        let t = traj.target_samples.last().unwrap();
        assert!((p.point.x + 5.0).abs() < 0.01 && (p.point.y - 1.04).abs() < 0.01);
        assert!(p.point.distance(&t.point) < 1e-8);
        assert_eq!(p.time, sol.total_time);
        assert_eq!(t.time, sol.total_time);
        assert_eq!(traj.pursuer_samples.len(), 201);
        assert!(strictly_increasing(&traj.pursuer_samples) && strictly_increasing(&traj.target_samples));
    }

    #[test]
    fn pure_straight_evenly_spaced() {
        let s = Scenario::from_parts(Pose::new(0.0, 0.0, 0.0), 5.0, 1.0, Pose::new(10.0, 0.0, 0.0), 1.0).unwrap();
        let sol = solve(&s).unwrap().best.unwrap();
        let traj = sample(&sol, &s, 2, 2).unwrap();
        let pts: Vec<Point> = traj.pursuer_samples.iter().map(|s| s.point).collect();
        assert_eq!(pts.len(), 3);
        assert_eq!(traj.arc_len, 1);
        assert!(pts.iter().all(|p| p.y == 0.0));
        assert!((pts[1].x - 6.25).abs() < 1e-12 && (pts[2].x - 12.5).abs() < 1e-12);
    }

    #[test]
    fn table_four_arc_on_right_circle() {
        let s = Scenario::from_parts(Pose::new(0.0, 0.0, PI / 3.0), 5.0, 3.0, Pose::new(8.0, 3.0, PI), 2.0).unwrap();
        let sol = solve(&s).unwrap().best.unwrap();
        assert_eq!(sol.branch, TurnDirection::Right);
        let traj = sample(&sol, &s, 50, 50).unwrap();
        let c = turning_circle_center(s.pursuer_start, TurnDirection::Right, 3.0).unwrap();
        assert_eq!(traj.arc_samples().len(), 51);
        for p in traj.arc_samples() {
            assert!((p.point.distance(&c) - 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn too_few_samples() {
        let s = Scenario::from_parts(Pose::new(0.0, 0.0, 0.0), 5.0, 1.0, Pose::new(10.0, 0.0, 0.0), 1.0).unwrap();
        let sol = solve(&s).unwrap().best.unwrap();
        assert!(sample(&sol, &s, 1, 10).is_err());
        assert!(sample(&sol, &s, 10, 1).is_err());
    }
}
