//! Text renderings: table rows and CSV.

use std::fmt::Write as _;

use serde::Serialize;

use crate::solver::InterceptSolution;
use crate::trajectory::Trajectory;

/// Segment lengths, segment times, total length and total time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub id: String,
    pub lengths: [f64; 4],
    pub times: [f64; 4],
    pub total_length: f64,
    pub total_time: f64,
}

impl TableRow {
    pub fn from_solution(id: impl Into<String>, solution: &InterceptSolution) -> Self {
        Self {
            id: id.into(),
            lengths: solution.lengths.as_array(),
            times: solution.durations,
            total_length: solution.total_length,
            total_time: solution.total_time,
        }
    }

    /// The ten numeric cells in column order.
    pub fn cells(&self) -> [f64; 10] {
        let mut out = [0.0; 10];
        out[..4].copy_from_slice(&self.lengths);
        out[4..8].copy_from_slice(&self.times);
        out[8] = self.total_length;
        out[9] = self.total_time;
        out
    }

    pub fn header() -> &'static str {
        "xi1 xi2 xi3 xi4 t1 t2 t3 t4 f t"
    }

    /// Space-separated cells, two decimals; exact zeros print as `0`.
    pub fn render(&self) -> String {
        self.cells().iter().map(|&v| cell(v)).collect::<Vec<_>>().join(" ")
    }
}

pub fn cell(value: f64) -> String {
    if value == 0.0 {
        "0".to_string()
    } else {
        format!("{value:.2}")
    }
}

/// `%.9g`-style formatting: 9 significant digits, trailing zeros trimmed.
pub fn sig9(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let sci = format!("{value:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let fixed = format!("{value:.decimals$}");
        if fixed == "-0" {
            "0".to_string()
        } else {
            trim(&fixed)
        }
    } else {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

/// CSV with header `actor,time,x,y`, pursuer rows then target rows.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("actor,time,x,y\n");
    for (actor, samples) in [("pursuer", &traj.pursuer_samples), ("target", &traj.target_samples)] {
        for s in samples {
            let _ = writeln!(out, "{actor},{},{},{}", sig9(s.time), sig9(s.point.x), sig9(s.point.y));
        }
    }
    out
}
