//! JSON scenario documents.
//!
//! ```json
//! {
//!   "pursuer": { "x": 0, "y": 0, "heading": 2.0943951, "speed": 5, "turn_radius": 1 },
//!   "target":  { "x": -5, "y": 0, "heading": 1.5707963, "speed": 1 },
//!   "solver":  { "grid_size": 2048, "arc_samples": 200, "line_samples": 200 }
//! }
//! ```
//!
//! Headings are radians unless the caller asks for degrees at parse time.
//! The `solver` block and each of its keys are optional. Unknown keys are
//! rejected everywhere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kinematics::{Point, Pose, PursuerParams, Scenario, TargetParams};
use crate::solver::SolverOptions;
use crate::trajectory::{DEFAULT_ARC_SAMPLES, DEFAULT_LINE_SAMPLES};

#[derive(Debug, Error)]
pub enum ScenarioFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AngleUnit {
    #[default]
    Radians,
    Degrees,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PursuerSpec {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub speed: f64,
    pub turn_radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub speed: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_samples: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub pursuer: PursuerSpec,
    pub target: TargetSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverSpec>,
}

impl ScenarioFile {
    /// Parses and validates a document; headings are stored in radians.
    pub fn parse(text: &str, unit: AngleUnit) -> Result<Self, ScenarioFileError> {
        let mut file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioFileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if unit == AngleUnit::Degrees {
            file.pursuer.heading = file.pursuer.heading.to_radians();
            file.target.heading = file.target.heading.to_radians();
        }
        file.scenario()?;
        file.solver_options()?;
        Ok(file)
    }

    pub fn read(path: &std::path::Path, unit: AngleUnit) -> Result<Self, ScenarioFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, unit)
    }

    pub fn from_scenario(scenario: &Scenario) -> Self {
        Self {
            pursuer: PursuerSpec {
                x: scenario.pursuer_start.x,
                y: scenario.pursuer_start.y,
                heading: scenario.pursuer_start.heading,
                speed: scenario.pursuer.speed(),
                turn_radius: scenario.pursuer.turn_radius(),
            },
            target: TargetSpec {
                x: scenario.target_start.x,
                y: scenario.target_start.y,
                heading: scenario.target.heading,
                speed: scenario.target.speed,
            },
            solver: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario file serializes")
    }

    pub fn scenario(&self) -> crate::Result<Scenario> {
        Scenario::new(
            Pose::new(self.pursuer.x, self.pursuer.y, self.pursuer.heading),
            PursuerParams::new(self.pursuer.speed, self.pursuer.turn_radius)?,
            Point::new(self.target.x, self.target.y),
            TargetParams::new(self.target.speed, self.target.heading)?,
        )
    }

    pub fn solver_options(&self) -> crate::Result<SolverOptions> {
        let mut options = SolverOptions::default();
        if let Some(grid) = self.solver.and_then(|s| s.grid_size) {
            if grid < 2 {
                return Err(crate::Error::InvalidInput(format!(
                    "solver.grid_size must be >= 2, got {grid}"
                )));
            }
            options.grid_intervals = grid;
        }
        Ok(options)
    }

    pub fn arc_samples(&self) -> usize {
        self.solver.and_then(|s| s.arc_samples).unwrap_or(DEFAULT_ARC_SAMPLES)
    }

    pub fn line_samples(&self) -> usize {
        self.solver.and_then(|s| s.line_samples).unwrap_or(DEFAULT_LINE_SAMPLES)
    }
}
