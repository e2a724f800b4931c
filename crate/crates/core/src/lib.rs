//! Shortest-path interception of a constant-velocity target by a
//! constant-speed pursuer with a minimum turning radius.
//!
//! The pursuer flies one circular arc (left or right) followed by a straight
//! line; the target keeps its straight course. [`solver::solve`] enumerates
//! every feasible intercept of both families and returns the shortest.
//!
//! ```
//! use std::f64::consts::PI;
//! use cs_intercept::{solve, Pose, Scenario};
//!
//! let scenario = Scenario::from_parts(
//!     Pose::new(0.0, 0.0, 2.0 * PI / 3.0), 5.0, 1.0,
//!     Pose::new(-5.0, 0.0, PI / 2.0), 1.0,
//! ).unwrap();
//! let best = solve(&scenario).unwrap().best.unwrap();
//! assert!((best.total_length - 6.26).abs() < 0.01);
//! ```

pub mod error;
pub mod format;
pub mod kinematics;
pub mod oracle;
pub mod scenario_file;
pub mod solver;
pub mod svg;
pub mod tables;
pub mod trajectory;

pub use error::{Error, Result};
pub use kinematics::{
    normalize_angle, propagate_arc, propagate_straight, target_position, turning_circle_center, Point, Pose,
    PursuerParams, Scenario, TargetParams, TurnDirection,
};
pub use solver::{
    check_model_constraints, control_profile, exit_pose, linear_subsolve, solve, solve_branch, solve_forced,
    solve_with, timing_residual, turning_circle_clearance, BranchReport, InterceptSolution, SegmentLengths,
    SolveReport, SolveStatus, SolverOptions,
};
pub use trajectory::{sample, Trajectory};
