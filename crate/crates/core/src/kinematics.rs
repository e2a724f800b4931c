//! Planar kinematics for a forward-only, constant-speed vehicle.
//!
//! Poses are propagated in closed form along circular arcs and straight
//! lines. Headings are kept unwrapped while propagating so that arc
//! composition stays exact; use [`normalize_angle`] at I/O boundaries.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Position plus heading (radians, counterclockwise from +x).
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

impl Pose {
    pub const fn new(x: f64, y: f64, heading: f64) -> Self {
        Self { x, y, heading }
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.heading.is_finite()
    }

    /// Same pose with the heading wrapped into `[0, 2π)`.
    pub fn normalized(&self) -> Result<Pose> {
        Ok(Pose::new(self.x, self.y, normalize_angle(self.heading)?))
    }

    fn check_finite(&self, name: &str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::invalid(format!("{name} has a non-finite component: {self:?}")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TurnDirection {
    /// Counterclockwise, control `u = +a`.
    Left,
    /// Clockwise, control `u = -a`.
    Right,
}

impl TurnDirection {
    pub const BOTH: [TurnDirection; 2] = [TurnDirection::Left, TurnDirection::Right];

    /// +1 for Left, -1 for Right.
    pub fn sign(self) -> f64 {
        match self {
            TurnDirection::Left => 1.0,
            TurnDirection::Right => -1.0,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            TurnDirection::Left => TurnDirection::Right,
            TurnDirection::Right => TurnDirection::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TurnDirection::Left => "left",
            TurnDirection::Right => "right",
        }
    }
}

impl std::fmt::Display for TurnDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TurnDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(TurnDirection::Left),
            "right" | "r" => Ok(TurnDirection::Right),
            other => Err(Error::invalid(format!("unknown turn direction `{other}`"))),
        }
    }
}

/// Constant speed and minimum turning radius of the pursuer.
///
/// The curvature bound is always derived from the radius, so the two can
/// never disagree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PursuerParams {
    speed: f64,
    turn_radius: f64,
    curvature: f64,
}

impl PursuerParams {
    pub fn new(speed: f64, turn_radius: f64) -> Result<Self> {
        ensure_positive("pursuer speed", speed)?;
        ensure_positive("pursuer turn radius", turn_radius)?;
        Ok(Self {
            speed,
            turn_radius,
            curvature: 1.0 / turn_radius,
        })
    }

    /// Builds the parameters from linear and angular speed via `R = |V| / |θ̇|`.
    pub fn from_angular_speed(speed: f64, angular_speed: f64) -> Result<Self> {
        ensure_positive("pursuer speed", speed)?;
        ensure_positive("angular speed", angular_speed.abs())?;
        Self::new(speed, speed / angular_speed.abs())
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn turn_radius(&self) -> f64 {
        self.turn_radius
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TargetParams {
    pub speed: f64,
    pub heading: f64,
}

impl TargetParams {
    pub fn new(speed: f64, heading: f64) -> Result<Self> {
        ensure_positive("target speed", speed)?;
        ensure_finite("target heading", heading)?;
        Ok(Self { speed, heading })
    }
}

/// One interception problem instance.
///
/// `target_start.heading` is ignored in favour of `target.heading`; the
/// constructor keeps them equal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scenario {
    pub pursuer_start: Pose,
    pub pursuer: PursuerParams,
    pub target_start: Pose,
    pub target: TargetParams,
}

impl Scenario {
    pub fn new(pursuer_start: Pose, pursuer: PursuerParams, target_start: Point, target: TargetParams) -> Result<Self> {
        let scenario = Self {
            pursuer_start,
            pursuer,
            target_start: Pose::new(target_start.x, target_start.y, target.heading),
            target,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Convenience constructor taking the raw numbers in the usual order.
    pub fn from_parts(
        pursuer_start: Pose,
        pursuer_speed: f64,
        turn_radius: f64,
        target_start: Pose,
        target_speed: f64,
    ) -> Result<Self> {
        Self::new(
            pursuer_start,
            PursuerParams::new(pursuer_speed, turn_radius)?,
            target_start.position(),
            TargetParams::new(target_speed, target_start.heading)?,
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.pursuer_start.check_finite("pursuer start")?;
        self.target_start.check_finite("target start")?;
        ensure_positive("pursuer speed", self.pursuer.speed)?;
        ensure_positive("pursuer turn radius", self.pursuer.turn_radius)?;
        if self.pursuer.curvature != 1.0 / self.pursuer.turn_radius {
            return Err(Error::invalid("pursuer curvature is not 1 / turn radius"));
        }
        ensure_positive("target speed", self.target.speed)?;
        ensure_finite("target heading", self.target.heading)?;
        Ok(())
    }

    /// Characteristic length used to scale absolute tolerances.
    pub fn length_scale(&self) -> f64 {
        let separation = self.pursuer_start.position().distance(&self.target_start.position());
        1f64.max(self.pursuer.turn_radius).max(separation)
    }

    /// Uniform scaling of all positions and the turning radius about the origin.
    pub fn scaled(&self, factor: f64) -> Result<Scenario> {
        ensure_positive("scale factor", factor)?;
        let scale = |p: Pose| Pose::new(p.x * factor, p.y * factor, p.heading);
        Scenario::new(
            scale(self.pursuer_start),
            PursuerParams::new(self.pursuer.speed, self.pursuer.turn_radius * factor)?,
            scale(self.target_start).position(),
            self.target,
        )
    }

    /// Rigid rotation of the whole scenario about the origin.
    pub fn rotated(&self, angle: f64) -> Result<Scenario> {
        ensure_finite("rotation angle", angle)?;
        let (s, c) = angle.sin_cos();
        let rot = |p: Pose| Pose::new(c * p.x - s * p.y, s * p.x + c * p.y, p.heading + angle);
        Scenario::new(
            rot(self.pursuer_start),
            self.pursuer,
            rot(self.target_start).position(),
            TargetParams::new(self.target.speed, self.target.heading + angle)?,
        )
    }
}

/// Moves `start` along an arc of the given length turning in `direction`.
///
/// Uses the closed form `x' = x + (sin θ' − sin θ)/u`, `y' = y − (cos θ' − cos θ)/u`
/// with `u = ±curvature` and `θ' = θ ± curvature·arc_length`.
pub fn propagate_arc(start: Pose, direction: TurnDirection, arc_length: f64, curvature: f64) -> Result<Pose> {
    start.check_finite("arc start pose")?;
    ensure_finite("arc length", arc_length)?;
    ensure_positive("curvature", curvature)?;
    if arc_length < 0.0 {
        return Err(Error::invalid(format!("arc length must be >= 0, got {arc_length}")));
    }
    Ok(arc_unchecked(start, direction, arc_length, curvature))
}

#[inline]
pub(crate) fn arc_unchecked(start: Pose, direction: TurnDirection, arc_length: f64, curvature: f64) -> Pose {
    let turn = curvature * arc_length;
    let heading = match direction {
        TurnDirection::Left => start.heading + turn,
        TurnDirection::Right => start.heading - turn,
    };
    let (s0, c0) = start.heading.sin_cos();
    let (s1, c1) = heading.sin_cos();
    let (dx, dy) = match direction {
        TurnDirection::Left => ((s1 - s0) / curvature, -(c1 - c0) / curvature),
        TurnDirection::Right => (-(s1 - s0) / curvature, (c1 - c0) / curvature),
    };
    Pose::new(start.x + dx, start.y + dy, heading)
}

/// Moves `start` straight ahead by `length`; the heading is left untouched.
pub fn propagate_straight(start: Pose, length: f64) -> Result<Pose> {
    start.check_finite("straight start pose")?;
    ensure_finite("straight length", length)?;
    if length < 0.0 {
        return Err(Error::invalid(format!("straight length must be >= 0, got {length}")));
    }
    Ok(straight_unchecked(start, length))
}

#[inline]
pub(crate) fn straight_unchecked(start: Pose, length: f64) -> Pose {
    let (s, c) = start.heading.sin_cos();
    Pose::new(start.x + length * c, start.y + length * s, start.heading)
}

/// Target pose after `elapsed` time of uniform straight-line motion.
pub fn target_position(target_start: Pose, target: TargetParams, elapsed: f64) -> Result<Pose> {
    target_start.check_finite("target start pose")?;
    ensure_positive("target speed", target.speed)?;
    ensure_finite("target heading", target.heading)?;
    ensure_finite("elapsed time", elapsed)?;
    if elapsed < 0.0 {
        return Err(Error::invalid(format!("elapsed time must be >= 0, got {elapsed}")));
    }
    let travelled = target.speed * elapsed;
    let (s, c) = target.heading.sin_cos();
    Ok(Pose::new(
        target_start.x + travelled * c,
        target_start.y + travelled * s,
        target.heading,
    ))
}

/// Center of the turning circle tangent to `start`.
///
/// Left: `(x − R sin θ, y + R cos θ)`. Right: `(x + R sin θ, y − R cos θ)`.
pub fn turning_circle_center(start: Pose, direction: TurnDirection, radius: f64) -> Result<Point> {
    start.check_finite("pose")?;
    ensure_positive("turning radius", radius)?;
    Ok(center_unchecked(start, direction, radius))
}

#[inline]
pub(crate) fn center_unchecked(start: Pose, direction: TurnDirection, radius: f64) -> Point {
    let (s, c) = start.heading.sin_cos();
    match direction {
        TurnDirection::Left => Point::new(start.x - radius * s, start.y + radius * c),
        TurnDirection::Right => Point::new(start.x + radius * s, start.y - radius * c),
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> Result<f64> {
    ensure_finite("angle", theta)?;
    let wrapped = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    Ok(if wrapped >= TAU { 0.0 } else { wrapped })
}
