//! Static SVG plot of a solved intercept.
//!
//! World coordinates are drawn inside a `scale(1,-1)` group so that `cx`/`cy`
//! and polyline points carry the scenario's own coordinates with +y up.

use std::fmt::Write as _;

use crate::format::sig9;
use crate::kinematics::{center_unchecked, Point, Scenario, TurnDirection};
use crate::solver::InterceptSolution;
use crate::trajectory::Trajectory;

const MARGIN: f64 = 0.10;

struct Bounds {
    min: Point,
    max: Point,
}

impl Bounds {
    fn new(p: Point) -> Self {
        Self { min: p, max: p }
    }

    fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    fn include_circle(&mut self, c: Point, r: f64) {
        self.include(Point::new(c.x - r, c.y - r));
        self.include(Point::new(c.x + r, c.y + r));
    }
}

fn polyline(out: &mut String, class: &str, color: &str, width: f64, points: impl Iterator<Item = Point>) {
    let pts: Vec<String> = points.map(|p| format!("{},{}", sig9(p.x), sig9(p.y))).collect();
    let _ = writeln!(
        out,
        r#"    <polyline class="{class}" fill="none" stroke="{color}" stroke-width="{}" points="{}"/>"#,
        sig9(width),
        pts.join(" ")
    );
}

/// Pursuer path, target path, both initial turning circles and the intercept.
pub fn render(scenario: &Scenario, solution: &InterceptSolution, trajectory: &Trajectory) -> String {
    let radius = scenario.pursuer.turn_radius();
    let circles = TurnDirection::BOTH.map(|d| (d, center_unchecked(scenario.pursuer_start, d, radius)));

    let mut bounds = Bounds::new(scenario.pursuer_start.position());
    for s in trajectory.pursuer_samples.iter().chain(&trajectory.target_samples) {
        bounds.include(s.point);
    }
    for (_, c) in &circles {
        bounds.include_circle(*c, radius);
    }
    let width = (bounds.max.x - bounds.min.x).max(1e-9);
    let height = (bounds.max.y - bounds.min.y).max(1e-9);
    let (mx, my) = (MARGIN * width, MARGIN * height);
    let view = [
        bounds.min.x - mx,
        -(bounds.max.y + my),
        width + 2.0 * mx,
        height + 2.0 * my,
    ];
    let stroke = 0.004 * view[2].max(view[3]);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        sig9(view[0]),
        sig9(view[1]),
        sig9(view[2]),
        sig9(view[3])
    );
    let _ = writeln!(
        out,
        "  <title>{} intercept: f = {}, t = {}</title>",
        solution.branch,
        sig9(solution.total_length),
        sig9(solution.total_time)
    );
    out.push_str("  <g transform=\"scale(1,-1)\">\n");
    for (direction, c) in &circles {
        let _ = writeln!(
            out,
            r#"    <circle class="turning-circle {direction}" cx="{}" cy="{}" r="{}" fill="none" stroke="gray" stroke-width="{}" stroke-dasharray="{} {}"/>"#,
            sig9(c.x),
            sig9(c.y),
            sig9(radius),
            sig9(stroke / 2.0),
            sig9(stroke * 3.0),
            sig9(stroke * 2.0)
        );
    }
    polyline(
        &mut out,
        "target",
        "#d62728",
        stroke,
        trajectory.target_samples.iter().map(|s| s.point),
    );
    polyline(
        &mut out,
        "pursuer",
        "#1f77b4",
        stroke,
        trajectory.pursuer_samples.iter().map(|s| s.point),
    );
    let start = scenario.pursuer_start.position();
    let target_start = scenario.target_start.position();
    for (class, p, color) in [
        ("pursuer-start", start, "#1f77b4"),
        ("target-start", target_start, "#d62728"),
    ] {
        let _ = writeln!(
            out,
            r#"    <circle class="{class}" cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
            sig9(p.x),
            sig9(p.y),
            sig9(stroke * 2.0)
        );
    }
    let hit = trajectory.intercept.point;
    let _ = writeln!(
        out,
        r#"    <circle class="intercept" cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        sig9(hit.x),
        sig9(hit.y),
        sig9(stroke * 3.0),
        sig9(stroke)
    );
    out.push_str("  </g>\n</svg>\n");
    out
}
