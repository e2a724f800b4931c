use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use cs_intercept::format::{cell, trajectory_csv, TableRow};
use cs_intercept::scenario_file::{AngleUnit, ScenarioFile};
use cs_intercept::tables::{benchmark_table, benchmark_tables, reproduce, Gate, RowComparison, REPRODUCTION_TOLERANCE};
use cs_intercept::{sample, solve_forced, solve_with, svg, SolveReport, SolveStatus, TurnDirection};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "cs-intercept",
    version,
    about = "Shortest turn-then-straight intercept of a moving target"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ScenarioArgs {
    /// Scenario JSON file.
    scenario: PathBuf,
    /// Read headings in degrees instead of radians.
    #[arg(long)]
    degrees: bool,
    /// Restrict the search to one initial turn direction.
    #[arg(long, value_parser = ["left", "right"])]
    branch: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario and print the segment lengths and times.
    Solve {
        #[command(flatten)]
        args: ScenarioArgs,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Solve and write sampled trajectories as CSV, optionally an SVG plot.
    Simulate {
        #[command(flatten)]
        args: ScenarioArgs,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// SVG output path.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Samples along the arc (overrides the scenario file).
        #[arg(long)]
        arc_samples: Option<usize>,
        /// Samples along each straight segment (overrides the scenario file).
        #[arg(long)]
        line_samples: Option<usize>,
    },
    /// Re-run the built-in benchmark tables and compare with published values.
    #[command(group(ArgGroup::new("which").required(true).args(["table", "all"])))]
    Reproduce {
        #[arg(long)]
        table: Option<u8>,
        #[arg(long)]
        all: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    let code = match cli.command {
        Command::Solve { args, json } => cmd_solve(&args, json),
        Command::Simulate {
            args,
            out,
            svg,
            arc_samples,
            line_samples,
        } => cmd_simulate(&args, &out, svg.as_deref(), arc_samples, line_samples),
        Command::Reproduce { table, all } => cmd_reproduce(table, all),
    };
    ExitCode::from(code)
}

fn load(args: &ScenarioArgs) -> Result<(ScenarioFile, SolveReport), u8> {
    let unit = if args.degrees {
        AngleUnit::Degrees
    } else {
        AngleUnit::Radians
    };
    let file = ScenarioFile::read(&args.scenario, unit).map_err(|e| {
        eprintln!("error: {}: {e}", args.scenario.display());
        EXIT_ERROR
    })?;
    let report = (|| {
        let scenario = file.scenario()?;
        let options = file.solver_options()?;
        match args.branch.as_deref() {
            Some(b) => solve_forced(&scenario, b.parse::<TurnDirection>()?, &options),
            None => solve_with(&scenario, &options),
        }
    })()
    .map_err(|e| {
        eprintln!("error: {e}");
        EXIT_ERROR
    })?;
    Ok((file, report))
}

fn cmd_solve(args: &ScenarioArgs, as_json: bool) -> u8 {
    let (_, report) = match load(args) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let row = report
        .best
        .as_ref()
        .map(|b| TableRow::from_solution(args.scenario.display().to_string(), b));
    if as_json {
        let doc = json!({
            "status": report.status,
            "row": row,
            "report": report,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    } else {
        match (&report.best, &row) {
            (Some(best), Some(row)) => {
                println!("status: optimal ({} branch)", best.branch);
                println!("{}", TableRow::header());
                println!("{}", row.render());
            }
            _ => println!("status: infeasible"),
        }
    }
    match report.status {
        SolveStatus::Optimal => EXIT_OK,
        SolveStatus::Infeasible => EXIT_INFEASIBLE,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), u8> {
    std::fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_ERROR
    })
}

fn cmd_simulate(
    args: &ScenarioArgs,
    out: &Path,
    svg_path: Option<&Path>,
    arc_samples: Option<usize>,
    line_samples: Option<usize>,
) -> u8 {
    let (file, report) = match load(args) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let Some(best) = report.best else {
        eprintln!("infeasible: no intercept exists; nothing written");
        return EXIT_INFEASIBLE;
    };
    let scenario = file.scenario().expect("validated on load");
    let trajectory = match sample(
        &best,
        &scenario,
        arc_samples.unwrap_or_else(|| file.arc_samples()),
        line_samples.unwrap_or_else(|| file.line_samples()),
    ) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    if let Err(code) = write_file(out, &trajectory_csv(&trajectory)) {
        return code;
    }
    if let Some(path) = svg_path {
        if let Err(code) = write_file(path, &svg::render(&scenario, &best, &trajectory)) {
            return code;
        }
    }
    println!(
        "{} branch: f = {:.2}, t = {:.2}; {} pursuer + {} target samples",
        best.branch,
        best.total_length,
        best.total_time,
        trajectory.pursuer_samples.len(),
        trajectory.target_samples.len()
    );
    EXIT_OK
}

fn print_comparison(out: &mut impl std::io::Write, cmp: &RowComparison) -> std::io::Result<bool> {
    let pass = cmp.passes(REPRODUCTION_TOLERANCE);
    writeln!(out, "  {} [{}]", cmp.label, cmp.id)?;
    if let Some(note) = cmp.inferred {
        writeln!(out, "    note: inferred input: {note}")?;
    }
    let fmt = |cells: &[f64; 10]| cells.iter().map(|&v| format!("{:>8}", cell(v))).collect::<String>();
    writeln!(
        out,
        "    {:<9}{}",
        "",
        ["xi1", "xi2", "xi3", "xi4", "t1", "t2", "t3", "t4", "f", "t"]
            .map(|h| format!("{h:>8}"))
            .concat()
    )?;
    writeln!(out, "    {:<9}{}", "published", fmt(&cmp.expected))?;
    match (&cmp.computed, &cmp.deviations) {
        (Some(row), Some(dev)) => {
            writeln!(out, "    {:<9}{}", "computed", fmt(&row.cells()))?;
            let devs: String = dev.iter().map(|d| format!("{d:>8.3}")).collect();
            writeln!(out, "    {:<9}{}", "|dev|", devs)?;
        }
        _ => writeln!(out, "    computed: infeasible")?,
    }
    let gate = match cmp.gate {
        Gate::AllCells => "all cells",
        Gate::Totals => "f and t",
    };
    writeln!(
        out,
        "    branch {} (expected {}), max |dev| over {gate} = {:.3} -> {}",
        cmp.branch.map_or("none".to_string(), |b| b.to_string()),
        cmp.expected_branch,
        cmp.gated_deviation(),
        if pass { "PASS" } else { "FAIL" }
    )?;
    Ok(pass)
}

fn cmd_reproduce(table: Option<u8>, all: bool) -> u8 {
    let tables = if all {
        benchmark_tables()
    } else {
        let n = table.expect("clap enforces one of --table/--all");
        match benchmark_table(n) {
            Some(t) => vec![t],
            None => {
                eprintln!("error: unknown table {n}; expected 1..=7");
                return EXIT_ERROR;
            }
        }
    };
    let results = reproduce(&tables);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut all_pass = true;
    for (table, (number, rows)) in tables.iter().zip(results) {
        let _ = writeln!(out, "Table {number}: {}", table.title);
        for cmp in &rows {
            match print_comparison(&mut out, cmp) {
                Ok(pass) => all_pass &= pass,
                Err(_) => return EXIT_ERROR,
            }
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(
        out,
        "{} (tolerance {REPRODUCTION_TOLERANCE})",
        if all_pass {
            "all rows reproduced"
        } else {
            "some rows deviate"
        }
    );
    if all_pass {
        EXIT_OK
    } else {
        EXIT_ERROR
    }
}
