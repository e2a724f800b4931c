//! Shortest arc-then-straight interception.
//!
//! For a fixed initial turn direction, the exit pose after turning through an
//! angle `phi` is known in closed form. Given the exit pose, the two
//! position-coincidence equations are linear in the straight length `ξ3` and
//! the target travel `ξ4`, so the whole model collapses to a single scalar
//! equation in `phi`: the speed-coupling residual
//! `|V_T|·(ξ_arc + ξ3) − |V_P|·ξ4`. Every root on `[0, 2π]` is bracketed on a
//! uniform grid and refined by bisection; the shortest feasible root over both
//! branches is optimal.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{arc_unchecked, center_unchecked, straight_unchecked, Point, Pose, Scenario, TurnDirection};

/// `|sin(θ_exit − θ_T)|` below this makes the coincidence system singular.
pub const SINGULAR_TOLERANCE: f64 = 1e-10;
/// Straight lengths in `(-CLAMP_TOLERANCE, 0)` are clamped to zero.
pub const CLAMP_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_GRID_INTERVALS: usize = 2048;
pub const DEFAULT_PHI_TOLERANCE: f64 = 1e-12;
/// Distance from a singular turn angle to the scan points placed beside it.
const POLE_OFFSET: f64 = 1e-9;
/// Relative residual a converged bracket must reach to count as a root
/// rather than a pole of the residual.
const ROOT_ACCEPT_TOLERANCE: f64 = 1e-6;
const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Number of uniform intervals on `[0, 2π]` scanned for sign changes.
    pub grid_intervals: usize,
    /// Bisection stops once the bracket is narrower than this (radians).
    pub phi_tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid_intervals: DEFAULT_GRID_INTERVALS,
            phi_tolerance: DEFAULT_PHI_TOLERANCE,
        }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        if self.grid_intervals < 2 {
            return Err(Error::invalid(format!(
                "grid must have at least 2 intervals, got {}",
                self.grid_intervals
            )));
        }
        if !(self.phi_tolerance > 0.0 && self.phi_tolerance.is_finite()) {
            return Err(Error::invalid(format!(
                "phi tolerance must be positive, got {}",
                self.phi_tolerance
            )));
        }
        Ok(())
    }
}

/// Decision vector: left arc, right arc, pursuer straight, target straight.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct SegmentLengths {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub xi4: f64,
}

impl SegmentLengths {
    pub const fn new(xi1: f64, xi2: f64, xi3: f64, xi4: f64) -> Self {
        Self { xi1, xi2, xi3, xi4 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.xi1, self.xi2, self.xi3, self.xi4]
    }

    pub fn total(&self) -> f64 {
        self.xi1 + self.xi2 + self.xi3 + self.xi4
    }

    pub fn pursuer_length(&self) -> f64 {
        self.xi1 + self.xi2 + self.xi3
    }
}

/// Start and end pose of every segment of a solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SegmentPoses {
    pub arc: [Pose; 2],
    pub straight: [Pose; 2],
    pub target: [Pose; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterceptSolution {
    pub branch: TurnDirection,
    /// Turn angle of the arc in radians (`arc length · curvature`).
    pub turn_angle: f64,
    pub curvature: f64,
    pub lengths: SegmentLengths,
    /// `ξ1..ξ3 / |V_P|` followed by `ξ4 / |V_T|`.
    pub durations: [f64; 4],
    pub total_length: f64,
    pub total_time: f64,
    pub intercept_point: Point,
    pub segment_poses: SegmentPoses,
}

impl InterceptSolution {
    /// Length of the single arc, whichever branch it is on.
    pub fn arc_length(&self) -> f64 {
        self.lengths.xi1 + self.lengths.xi2
    }

    /// Time at which the pursuer leaves the arc.
    pub fn arc_time(&self) -> f64 {
        self.durations[0] + self.durations[1]
    }

    fn build(scenario: &Scenario, branch: TurnDirection, turn_angle: f64, xi3: f64, xi4: f64) -> Self {
        let radius = scenario.pursuer.turn_radius();
        let curvature = scenario.pursuer.curvature();
        let vp = scenario.pursuer.speed();
        let vt = scenario.target.speed;
        let arc = turn_angle * radius;
        let (xi1, xi2) = match branch {
            TurnDirection::Left => (arc, 0.0),
            TurnDirection::Right => (0.0, arc),
        };
        let lengths = SegmentLengths::new(xi1, xi2, xi3, xi4);
        let durations = [xi1 / vp, xi2 / vp, xi3 / vp, xi4 / vt];
        let exit = arc_unchecked(scenario.pursuer_start, branch, arc, curvature);
        let end = straight_unchecked(exit, xi3);
        let target_start = Pose::new(
            scenario.target_start.x,
            scenario.target_start.y,
            scenario.target.heading,
        );
        let target_end = straight_unchecked(target_start, xi4);
        Self {
            branch,
            turn_angle,
            curvature,
            lengths,
            durations,
            total_length: lengths.total(),
            total_time: durations[3],
            intercept_point: end.position(),
            segment_poses: SegmentPoses {
                arc: [scenario.pursuer_start, exit],
                straight: [exit, end],
                target: [target_start, target_end],
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchReport {
    pub branch: TurnDirection,
    /// Feasible roots in increasing turn angle.
    pub candidates: Vec<InterceptSolution>,
    /// Converged roots before the `ξ3, ξ4 ≥ 0` filter.
    pub root_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub best: Option<InterceptSolution>,
    pub per_branch: Vec<BranchReport>,
    pub status: SolveStatus,
    /// Model constraint residuals of `best`; empty when infeasible.
    pub residuals: Vec<f64>,
}

impl SolveReport {
    pub fn candidates(&self) -> impl Iterator<Item = &InterceptSolution> {
        self.per_branch.iter().flat_map(|b| b.candidates.iter())
    }

    pub fn branch(&self, branch: TurnDirection) -> Option<&BranchReport> {
        self.per_branch.iter().find(|b| b.branch == branch)
    }
}

/// Pose after turning through `phi` radians on the branch circle.
pub fn exit_pose(scenario: &Scenario, branch: TurnDirection, phi: f64) -> Result<Pose> {
    if !(0.0..=TAU).contains(&phi) {
        return Err(Error::invalid(format!("turn angle must lie in [0, 2π], got {phi}")));
    }
    Ok(exit_unchecked(scenario, branch, phi))
}

#[inline]
fn exit_unchecked(scenario: &Scenario, branch: TurnDirection, phi: f64) -> Pose {
    arc_unchecked(
        scenario.pursuer_start,
        branch,
        phi * scenario.pursuer.turn_radius(),
        scenario.pursuer.curvature(),
    )
}

/// Raw solution of `exit + ξ3·d_exit = target_start + ξ4·d_target`, with no
/// sign restriction. `None` only when the headings are parallel.
#[inline]
fn coincidence_lengths(scenario: &Scenario, exit: Pose) -> Option<(f64, f64)> {
    let (s2, c2) = exit.heading.sin_cos();
    let (st, ct) = scenario.target.heading.sin_cos();
    // d_exit × d_target = sin(θ_T − θ_exit)
    let det = c2 * st - s2 * ct;
    if det.abs() < SINGULAR_TOLERANCE {
        return None;
    }
    let bx = scenario.target_start.x - exit.x;
    let by = scenario.target_start.y - exit.y;
    let xi3 = (bx * st - by * ct) / det;
    let xi4 = (bx * s2 - by * c2) / det;
    Some((xi3, xi4))
}

fn clamp_nonnegative(value: f64) -> Option<f64> {
    if value < -CLAMP_TOLERANCE {
        None
    } else {
        Some(value.max(0.0))
    }
}

/// Solves the position-coincidence equations for `(ξ3, ξ4)` given the arc
/// exit pose.
///
/// Returns `None` when the exit heading is parallel to the target heading or
/// when either length is negative beyond [`CLAMP_TOLERANCE`]; smaller
/// negative values are clamped to zero.
pub fn linear_subsolve(scenario: &Scenario, exit: Pose) -> Option<(f64, f64)> {
    if !exit.heading.is_finite() {
        return None;
    }
    let (xi3, xi4) = coincidence_lengths(scenario, exit)?;
    Some((clamp_nonnegative(xi3)?, clamp_nonnegative(xi4)?))
}

/// Parallel-heading fallback: when the exit point lies on the target's line
/// the coincidence system has a one-parameter family of solutions and the
/// speed coupling picks the member.
fn collinear_lengths(scenario: &Scenario, exit: Pose, arc: f64) -> Option<(f64, f64)> {
    let (s2, c2) = exit.heading.sin_cos();
    let (st, ct) = scenario.target.heading.sin_cos();
    if (c2 * st - s2 * ct).abs() >= SINGULAR_TOLERANCE {
        return None;
    }
    let bx = scenario.target_start.x - exit.x;
    let by = scenario.target_start.y - exit.y;
    let offset = bx * st - by * ct;
    if offset.abs() > CLAMP_TOLERANCE * scenario.length_scale() {
        return None;
    }
    // ξ3 − c·ξ4 = p along the shared line, |V_T|(arc + ξ3) = |V_P|·ξ4.
    let c = c2 * ct + s2 * st;
    let p = bx * c2 + by * s2;
    let vp = scenario.pursuer.speed();
    let vt = scenario.target.speed;
    let denom = vp - c * vt;
    if denom <= 0.0 {
        return None;
    }
    let xi4 = vt * (arc + p) / denom;
    let xi3 = p + c * xi4;
    Some((clamp_nonnegative(xi3)?, clamp_nonnegative(xi4)?))
}

/// Speed-coupling residual `|V_T|·(ξ_arc + ξ3) − |V_P|·ξ4` at turn angle `phi`.
///
/// `None` when no nonnegative `(ξ3, ξ4)` satisfies the coincidence equations
/// at this `phi`.
pub fn timing_residual(scenario: &Scenario, branch: TurnDirection, phi: f64) -> Option<f64> {
    if !(0.0..=TAU).contains(&phi) {
        return None;
    }
    let exit = exit_unchecked(scenario, branch, phi);
    let arc = phi * scenario.pursuer.turn_radius();
    let (xi3, xi4) = linear_subsolve(scenario, exit).or_else(|| collinear_lengths(scenario, exit, arc))?;
    Some(scenario.target.speed * (arc + xi3) - scenario.pursuer.speed() * xi4)
}

/// Unrestricted residual used for bracketing. It stays continuous across the
/// `ξ3 = 0` / `ξ4 = 0` feasibility boundaries, so roots next to them are not
/// lost; feasibility is checked once a root has converged.
#[inline]
fn raw_residual(scenario: &Scenario, branch: TurnDirection, phi: f64) -> Option<f64> {
    let exit = exit_unchecked(scenario, branch, phi);
    let (xi3, xi4) = coincidence_lengths(scenario, exit)?;
    let arc = phi * scenario.pursuer.turn_radius();
    Some(scenario.target.speed * (arc + xi3) - scenario.pursuer.speed() * xi4)
}

fn residual_scale(scenario: &Scenario) -> f64 {
    (scenario.pursuer.speed() + scenario.target.speed) * scenario.length_scale()
}

enum Refined {
    Root(f64),
    Pole,
}

fn refine(
    scenario: &Scenario,
    branch: TurnDirection,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    tolerance: f64,
) -> Refined {
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let Some(f_mid) = raw_residual(scenario, branch, mid) else {
            return Refined::Pole;
        };
        if f_mid == 0.0 {
            return accept(scenario, mid, 0.0);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    // One secant step inside the final bracket.
    let mut best = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if secant > lo && secant < hi {
        if let Some(f) = raw_residual(scenario, branch, secant) {
            if f.abs() < best.1.abs() {
                best = (secant, f);
            }
        }
    }
    accept(scenario, best.0, best.1)
}

fn accept(scenario: &Scenario, phi: f64, residual: f64) -> Refined {
    if residual.abs() <= ROOT_ACCEPT_TOLERANCE * residual_scale(scenario) {
        Refined::Root(phi)
    } else {
        Refined::Pole
    }
}

fn solution_at(scenario: &Scenario, branch: TurnDirection, phi: f64) -> Option<InterceptSolution> {
    let exit = exit_unchecked(scenario, branch, phi);
    let (xi3, xi4) = linear_subsolve(scenario, exit)
        .or_else(|| collinear_lengths(scenario, exit, phi * scenario.pursuer.turn_radius()))?;
    Some(InterceptSolution::build(scenario, branch, phi, xi3, xi4))
}

/// Turn angles in `[0, 2π]` where the exit heading is parallel to the target
/// heading, i.e. where the coincidence system is singular.
fn parallel_angles(scenario: &Scenario, branch: TurnDirection) -> Vec<f64> {
    let gap = branch.sign() * (scenario.target.heading - scenario.pursuer_start.heading);
    let first = gap.rem_euclid(PI);
    (0..3)
        .map(|k| first + k as f64 * PI)
        .filter(|&phi| phi <= TAU)
        .collect()
}

/// Scan points: the uniform grid plus each singular angle and a point just
/// either side of it. A pole and a root closer together than one grid cell
/// would otherwise cancel into no sign change.
fn scan_points(scenario: &Scenario, branch: TurnDirection, intervals: usize) -> Vec<f64> {
    let step = TAU / intervals as f64;
    let mut points: Vec<f64> = (0..=intervals)
        .map(|i| if i == intervals { TAU } else { i as f64 * step })
        .collect();
    for pole in parallel_angles(scenario, branch) {
        for phi in [pole - POLE_OFFSET, pole, pole + POLE_OFFSET] {
            if (0.0..=TAU).contains(&phi) {
                points.push(phi);
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// All roots of the speed-coupling residual on one branch, with diagnostics.
pub fn solve_branch_with(scenario: &Scenario, branch: TurnDirection, options: &SolverOptions) -> BranchReport {
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for phi in scan_points(scenario, branch, options.grid_intervals.max(2)) {
        let value = raw_residual(scenario, branch, phi);
        match value {
            Some(0.0) => roots.push(phi),
            Some(f) => {
                if let Some((p_phi, p_f)) = prev {
                    if p_f != 0.0 && (p_f < 0.0) != (f < 0.0) {
                        if let Refined::Root(root) = refine(scenario, branch, p_phi, phi, p_f, f, options.phi_tolerance)
                        {
                            roots.push(root);
                        }
                    }
                }
            }
            None => {
                // Singular scan point; it is only a root in the collinear case.
                let exit = exit_unchecked(scenario, branch, phi);
                if collinear_lengths(scenario, exit, phi * scenario.pursuer.turn_radius()).is_some() {
                    roots.push(phi);
                }
            }
        }
        // Never bracket across a singular angle.
        prev = value.map(|f| (phi, f));
    }

    let root_count = roots.len();
    let candidates = roots
        .into_iter()
        .filter_map(|phi| solution_at(scenario, branch, phi))
        .collect();
    BranchReport {
        branch,
        candidates,
        root_count,
    }
}

/// Every feasible intercept on one branch, ordered by turn angle.
pub fn solve_branch(scenario: &Scenario, branch: TurnDirection) -> Vec<InterceptSolution> {
    solve_branch_with(scenario, branch, &SolverOptions::default()).candidates
}

/// Shortest intercept over both branches.
pub fn solve(scenario: &Scenario) -> Result<SolveReport> {
    solve_with(scenario, &SolverOptions::default())
}

pub fn solve_with(scenario: &Scenario, options: &SolverOptions) -> Result<SolveReport> {
    solve_branches(scenario, &TurnDirection::BOTH, options)
}

/// Restricts the search to one initial turn direction.
pub fn solve_forced(scenario: &Scenario, branch: TurnDirection, options: &SolverOptions) -> Result<SolveReport> {
    solve_branches(scenario, &[branch], options)
}

fn solve_branches(scenario: &Scenario, branches: &[TurnDirection], options: &SolverOptions) -> Result<SolveReport> {
    scenario.validate()?;
    options.validate()?;
    let per_branch: Vec<BranchReport> = branches
        .iter()
        .map(|&branch| solve_branch_with(scenario, branch, options))
        .collect();

    // Branches are visited Left first, so a strict improvement is needed to
    // displace an earlier candidate.
    let mut best: Option<&InterceptSolution> = None;
    for candidate in per_branch.iter().flat_map(|b| b.candidates.iter()) {
        match best {
            Some(current) if candidate.total_length >= current.total_length - TIE_TOLERANCE => {}
            _ => best = Some(candidate),
        }
    }
    let best = best.cloned();
    let residuals = match &best {
        Some(solution) => check_model_constraints(scenario, &solution.lengths)?.to_vec(),
        None => Vec::new(),
    };
    Ok(SolveReport {
        status: if best.is_some() {
            SolveStatus::Optimal
        } else {
            SolveStatus::Infeasible
        },
        best,
        per_branch,
        residuals,
    })
}

/// Evaluates the model constraints for an arbitrary decision vector, including
/// left-then-right composites: the two coincidence residuals and the
/// speed-coupling residual.
pub fn check_model_constraints(scenario: &Scenario, lengths: &SegmentLengths) -> Result<[f64; 3]> {
    for (name, value) in ["xi1", "xi2", "xi3", "xi4"].iter().zip(lengths.as_array()) {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::invalid(format!("{name} must be finite and >= 0, got {value}")));
        }
    }
    let a = scenario.pursuer.curvature();
    let p0 = scenario.pursuer_start;
    let t0 = scenario.target_start;
    let theta_t = scenario.target.heading;
    let theta0 = p0.heading;
    let theta1 = theta0 + a * lengths.xi1;
    let theta2 = theta1 - a * lengths.xi2;

    let x = p0.x - t0.x + (-theta0.sin() + 2.0 * theta1.sin() - theta2.sin()) / a + lengths.xi3 * theta2.cos()
        - lengths.xi4 * theta_t.cos();
    let y = p0.y - t0.y + (theta0.cos() - 2.0 * theta1.cos() + theta2.cos()) / a + lengths.xi3 * theta2.sin()
        - lengths.xi4 * theta_t.sin();
    let timing = scenario.target.speed * lengths.pursuer_length() - scenario.pursuer.speed() * lengths.xi4;
    Ok([x, y, timing])
}

/// Distance from the intercept point to the active turning circle, minus the
/// radius. Never negative (beyond rounding) for a valid solution: the straight
/// leg leaves the circle tangentially, so the intercept cannot lie inside it.
///
/// Straight-only solutions have no active circle; the left circle is used.
pub fn turning_circle_clearance(solution: &InterceptSolution, scenario: &Scenario) -> f64 {
    let radius = scenario.pursuer.turn_radius();
    let direction = if solution.lengths.xi2 > 0.0 {
        TurnDirection::Right
    } else {
        TurnDirection::Left
    };
    let center = center_unchecked(scenario.pursuer_start, direction, radius);
    solution.intercept_point.distance(&center) - radius
}

/// Piecewise-constant curvature control, one value per nonzero segment.
///
/// Arc then straight gives `[±a, 0]`, a straight-only chase `[0]`.
pub fn control_profile(solution: &InterceptSolution) -> Result<Vec<f64>> {
    let lengths = solution.lengths;
    if lengths.as_array().iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InternalConsistency(format!(
            "negative segment length in {lengths:?}"
        )));
    }
    if lengths.xi1 > 0.0 && lengths.xi2 > 0.0 {
        return Err(Error::InternalConsistency(format!(
            "solution turns both ways ({lengths:?}); expected a single arc"
        )));
    }
    let arc_branch = if lengths.xi1 > 0.0 {
        Some(TurnDirection::Left)
    } else if lengths.xi2 > 0.0 {
        Some(TurnDirection::Right)
    } else {
        None
    };
    if let Some(branch) = arc_branch {
        if branch != solution.branch {
            return Err(Error::InternalConsistency(format!(
                "arc stored on the {branch} side of a {} solution",
                solution.branch
            )));
        }
    }

    let mut profile = Vec::with_capacity(2);
    if let Some(branch) = arc_branch {
        profile.push(branch.sign() * solution.curvature);
    }
    if lengths.xi3 > 0.0 || arc_branch.is_none() {
        profile.push(0.0);
    }
    Ok(profile)
}
