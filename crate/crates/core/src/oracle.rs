//! Brute-force reference solver for tests.
//!
//! Deliberately shares nothing with [`crate::solver`] beyond the kinematics
//! primitives: its own grid, its own coincidence solve, its own bisection.
//! Slow by design.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::kinematics::{propagate_arc, Pose, Scenario, TurnDirection};
use crate::solver::SegmentLengths;

pub const DEFAULT_ORACLE_GRID: usize = 100_000;
pub const MIN_ORACLE_GRID: usize = 10_000;
const BISECTION_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleRoot {
    pub branch: TurnDirection,
    pub phi: f64,
    pub lengths: SegmentLengths,
    pub f: f64,
}

impl OracleRoot {
    pub fn total_time(&self, scenario: &Scenario) -> f64 {
        self.lengths.xi4 / scenario.target.speed
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub best: Option<OracleRoot>,
    pub all_roots: Vec<OracleRoot>,
    pub grid_size: usize,
}

struct Probe {
    arc: f64,
    xi3: f64,
    xi4: f64,
    residual: f64,
}

fn probe(scenario: &Scenario, branch: TurnDirection, phi: f64) -> Option<Probe> {
    let radius = scenario.pursuer.turn_radius();
    let arc = phi * radius;
    let exit: Pose = propagate_arc(scenario.pursuer_start, branch, arc, scenario.pursuer.curvature()).ok()?;
    // [cos θe  −cos θT] [ξ3]   [xT − xe]
    // [sin θe  −sin θT] [ξ4] = [yT − ye]
    let m = [
        [exit.heading.cos(), -scenario.target.heading.cos()],
        [exit.heading.sin(), -scenario.target.heading.sin()],
    ];
    let rhs = [scenario.target_start.x - exit.x, scenario.target_start.y - exit.y];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let (xi3, xi4) = if det.abs() >= 1e-10 {
        (
            (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det,
            (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det,
        )
    } else {
        collinear(scenario, exit, arc)?
    };
    let residual = scenario.target.speed * (arc + xi3) - scenario.pursuer.speed() * xi4;
    Some(Probe {
        arc,
        xi3,
        xi4,
        residual,
    })
}

/// Parallel headings: only a shared line admits a solution, and then the
/// timing equation fixes it directly.
fn collinear(scenario: &Scenario, exit: Pose, arc: f64) -> Option<(f64, f64)> {
    let dir = (exit.heading.cos(), exit.heading.sin());
    let tdir = (scenario.target.heading.cos(), scenario.target.heading.sin());
    let gap = (scenario.target_start.x - exit.x, scenario.target_start.y - exit.y);
    let off_line = gap.0 * dir.1 - gap.1 * dir.0;
    if off_line.abs() > 1e-9 * scenario.length_scale() {
        return None;
    }
    let along = gap.0 * dir.0 + gap.1 * dir.1;
    let same_way = dir.0 * tdir.0 + dir.1 * tdir.1;
    let closing = scenario.pursuer.speed() - same_way * scenario.target.speed;
    if closing <= 0.0 {
        return None;
    }
    let xi4 = scenario.target.speed * (arc + along) / closing;
    Some((along + same_way * xi4, xi4))
}

fn finish(scenario: &Scenario, branch: TurnDirection, phi: f64, p: &Probe) -> Option<OracleRoot> {
    let scale = (scenario.pursuer.speed() + scenario.target.speed) * scenario.length_scale();
    if p.residual.abs() > 1e-6 * scale || p.xi3 < -1e-9 || p.xi4 < -1e-9 {
        return None;
    }
    let (xi3, xi4) = (p.xi3.max(0.0), p.xi4.max(0.0));
    let lengths = match branch {
        TurnDirection::Left => SegmentLengths::new(p.arc, 0.0, xi3, xi4),
        TurnDirection::Right => SegmentLengths::new(0.0, p.arc, xi3, xi4),
    };
    Some(OracleRoot {
        branch,
        phi,
        lengths,
        f: lengths.total(),
    })
}

fn bisect(scenario: &Scenario, branch: TurnDirection, mut a: f64, mut b: f64, mut fa: f64) -> Option<f64> {
    for _ in 0..200 {
        if b - a <= BISECTION_TOLERANCE {
            break;
        }
        let m = a + 0.5 * (b - a);
        let fm = probe(scenario, branch, m)?.residual;
        if fm == 0.0 {
            return Some(m);
        }
        if fa.signum() == fm.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(a + 0.5 * (b - a))
}

/// Dense grid sweep with exhaustive bisection on both branches.
pub fn oracle_solve(scenario: &Scenario, grid_size: usize) -> Result<OracleResult> {
    scenario.validate()?;
    if grid_size < MIN_ORACLE_GRID {
        return Err(Error::invalid(format!(
            "oracle grid must have at least {MIN_ORACLE_GRID} points, got {grid_size}"
        )));
    }
    let mut all_roots = Vec::new();
    for branch in [TurnDirection::Left, TurnDirection::Right] {
        let mut last: Option<(f64, f64)> = None;
        for i in 0..grid_size {
            let phi = TAU * i as f64 / (grid_size - 1) as f64;
            let Some(p) = probe(scenario, branch, phi) else {
                last = None;
                continue;
            };
            let root = if p.residual == 0.0 {
                Some(phi)
            } else {
                match last {
                    Some((lphi, lres)) if lres != 0.0 && lres.signum() != p.residual.signum() => {
                        bisect(scenario, branch, lphi, phi, lres)
                    }
                    _ => None,
                }
            };
            if let Some(r) = root {
                if let Some(found) = probe(scenario, branch, r).and_then(|q| finish(scenario, branch, r, &q)) {
                    all_roots.push(found);
                }
            }
            last = Some((phi, p.residual));
        }
    }
    let best = all_roots
        .iter()
        .copied()
        .fold(None, |acc: Option<OracleRoot>, r| match acc {
            Some(b) if b.f <= r.f => Some(b),
            _ => Some(r),
        });
    Ok(OracleResult {
        best,
        all_roots,
        grid_size,
    })
}
