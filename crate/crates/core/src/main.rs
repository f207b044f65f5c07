//! Command-line front end: map inspection, scenario sampling, planning,
//! bank construction, simulation, recognition, and the experiment runners.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use goalrec::experiment::{
    self, bank_from_json, bank_to_json, mask_timing_columns, rows_to_csv, ContinuousConfig,
    DiscreteConfig,
};
use goalrec::geoplanner::{self, PlannerConfig};
use goalrec::gridmap::{scenario_from_text, scenario_to_text, OccupancyGrid};
use goalrec::quintic::Trajectory;
use goalrec::recognizer::{euclid_continuous, posterior_history_to_csv, Observation, Session};
use goalrec::sim::ObservationStream;
use goalrec::strips;
use goalrec::Vec2;

#[derive(Parser)]
#[command(name = "goalrec", version, about = "Online goal recognition toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print map dimensions, scale and occupancy.
    MapInfo {
        #[arg(long)]
        map: PathBuf,
    },
    /// Sample scenario points with wall and separation margins.
    SamplePoints {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plan k collision-free paths between two positions.
    Plan {
        #[arg(long)]
        map: PathBuf,
        /// Start position `x,y` in meters.
        #[arg(long)]
        start: String,
        /// Goal position `x,y` in meters.
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Deterministic iteration budget per search.
        #[arg(long, default_value_t = 2000)]
        iters: u64,
        #[arg(long, default_value_t = goalrec::geoplanner::WALL_LIM_M)]
        clearance: f64,
        /// Skip path shortcutting.
        #[arg(long)]
        no_simplify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Precompute a hypothesis bank for one start point.
    BankBuild {
        #[arg(long)]
        map: PathBuf,
        /// Scenario points file (`x y theta` lines).
        #[arg(long)]
        points: PathBuf,
        /// Index of the start point; all other points become hypotheses.
        #[arg(long, default_value_t = 0)]
        start_index: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        vmax: f64,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        /// Bank output path (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate the observed agent between two scenario points.
    Simulate {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        vmax: f64,
        #[arg(long, default_value_t = 1500)]
        iters: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Posterior history for an observation stream.
    ///
    /// Continuous mode: `--bank` + `--observations` (stream CSV).
    /// Discrete mode: `--domain` + `--problem` + `--hypotheses` +
    /// `--observations` (one grounded action per line).
    Recognize {
        #[arg(long)]
        bank: Option<PathBuf>,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long)]
        problem: Option<PathBuf>,
        #[arg(long)]
        hypotheses: Option<PathBuf>,
        #[arg(long)]
        observations: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        optimal_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full continuous experiment over all ordered scenario-point pairs.
    ExperimentContinuous {
        #[arg(long)]
        map: PathBuf,
        /// Scenario points file; sampled from the map when omitted.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        vmax: f64,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        #[arg(long)]
        no_simplify: bool,
        /// Results file; `.json` selects JSON, anything else CSV. Stdout
        /// (CSV) when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Zero out the timing columns (for byte-comparing runs).
        #[arg(long)]
        mask_timing: bool,
    },
    /// One discrete recognition problem at the configured fractions.
    ExperimentDiscrete {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        hypotheses: PathBuf,
        #[arg(long)]
        observations: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Comma-separated observation fractions in (0, 1].
        #[arg(long, default_value = "0.3,0.5,0.7,1.0")]
        fractions: String,
        #[arg(long)]
        optimal_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Aggregate a per-problem results CSV into summary statistics.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::MapInfo { map } => {
            let grid = load_map(&map)?;
            let (ex, ey) = grid.extent();
            let total = grid.width() * grid.height();
            println!("width_cells {}", grid.width());
            println!("height_cells {}", grid.height());
            println!("meters_per_cell {}", grid.meters_per_cell());
            println!("extent_m {ex}x{ey}");
            println!("obstacle_cells {}", grid.obstacle_count());
            println!(
                "free_fraction {:.4}",
                1.0 - grid.obstacle_count() as f64 / total as f64
            );
        }
        Command::SamplePoints { map, count, seed, out } => {
            let grid = load_map(&map)?;
            let points = grid.sample_scenario_points(count, seed)?;
            emit(&scenario_to_text(&points), out.as_deref())?;
        }
        Command::Plan {
            map,
            start,
            goal,
            k,
            seed,
            iters,
            clearance,
            no_simplify,
            out,
        } => {
            let grid = load_map(&map)?;
            let start = parse_xy(&start)?;
            let goal = parse_xy(&goal)?;
            let cfg = PlannerConfig {
                max_iters: Some(iters),
                clearance,
                rng_seed: seed,
                ..PlannerConfig::default()
            };
            let paths = geoplanner::plan_k(&grid, start, goal, &cfg, k)?;
            let mut text = String::new();
            for path in &paths {
                let path = if no_simplify {
                    path.clone()
                } else {
                    geoplanner::simplify(path, &grid, clearance)
                };
                text.push_str(&path.to_csv());
            }
            emit(&text, out.as_deref())?;
        }
        Command::BankBuild {
            map,
            points,
            start_index,
            k,
            seed,
            vmax,
            iters,
            out,
        } => {
            let grid = load_map(&map)?;
            let points = load_points(&points)?;
            if start_index >= points.len() {
                bail!("start index {start_index} out of range ({} points)", points.len());
            }
            let labels: Vec<String> = (0..points.len())
                .filter(|&i| i != start_index)
                .map(|i| format!("p{i}"))
                .collect();
            let positions: Vec<Vec2> = (0..points.len())
                .filter(|&i| i != start_index)
                .map(|i| points[i].position())
                .collect();
            let cfg = ContinuousConfig {
                k,
                seed,
                v_max: vmax,
                planner_iters: iters,
                ..ContinuousConfig::default()
            };
            let bank = experiment::build_bank(
                &grid,
                points[start_index].position(),
                &labels,
                &positions,
                &cfg,
                seed,
            )?;
            fs::write(&out, bank_to_json(&bank))
                .with_context(|| format!("writing {}", out.display()))?;
            eprintln!(
                "bank: {} goals x {} trajectories -> {}",
                labels.len(),
                k,
                out.display()
            );
        }
        Command::Simulate {
            map,
            points,
            from,
            to,
            seed,
            vmax,
            iters,
            out,
        } => {
            let grid = load_map(&map)?;
            let points = load_points(&points)?;
            if from >= points.len() || to >= points.len() {
                bail!("point index out of range ({} points)", points.len());
            }
            let cfg = ContinuousConfig {
                v_max: vmax,
                planner_iters: iters,
                seed,
                ..ContinuousConfig::default()
            };
            let stream = experiment::ground_truth_stream(
                &grid,
                &points[from],
                points[to].position(),
                &cfg,
                seed,
            )?;
            emit(&stream.to_csv(), out.as_deref())?;
        }
        Command::Recognize {
            bank,
            domain,
            problem,
            hypotheses,
            observations,
            k,
            optimal_only,
            out,
        } => {
            let text = match bank {
                Some(bank_path) => {
                    let bank = bank_from_json(&read(&bank_path)?)?;
                    let stream = ObservationStream::from_csv(&read(&observations)?)
                        .map_err(anyhow::Error::msg)?;
                    recognize_continuous(&bank, &stream)?
                }
                None => {
                    let (domain, problem_path, hypotheses) = match (domain, problem, hypotheses) {
                        (Some(d), Some(p), Some(h)) => (d, p, h),
                        _ => bail!(
                            "recognize needs either --bank or all of --domain/--problem/--hypotheses"
                        ),
                    };
                    let model = strips::parse_domain(&read(&domain)?)?;
                    let ground = strips::parse_problem(&read(&problem_path)?, &model)?;
                    let goals = experiment::parse_hypotheses(&ground, &read(&hypotheses)?)?;
                    let actions = ground.parse_action_sequence(&read(&observations)?)?;
                    let cfg = DiscreteConfig {
                        k,
                        optimal_only,
                        fractions: vec![1.0],
                        ..DiscreteConfig::default()
                    };
                    let (_, history) =
                        experiment::run_discrete_experiment(&ground, &goals, &actions, &cfg)?;
                    let labels: Vec<String> =
                        (0..goals.len()).map(|i| format!("g{i}")).collect();
                    posterior_history_to_csv(&history, &labels)
                }
            };
            emit(&text, out.as_deref())?;
        }
        Command::ExperimentContinuous {
            map,
            points,
            count,
            k,
            seed,
            vmax,
            iters,
            no_simplify,
            out,
            mask_timing,
        } => {
            let grid = load_map(&map)?;
            let points = match points {
                Some(path) => load_points(&path)?,
                None => grid.sample_scenario_points(count, seed)?,
            };
            let cfg = ContinuousConfig {
                k,
                seed,
                v_max: vmax,
                planner_iters: iters,
                simplify: !no_simplify,
                ..ContinuousConfig::default()
            };
            let report = experiment::run_continuous_experiment(&grid, &points, &cfg);
            eprintln!(
                "planner calls: offline {}, online {}",
                report.offline_planner_calls, report.online_planner_calls
            );
            let mut csv = format!(
                "{}{}",
                experiment::continuous_metadata(&cfg, points.len()),
                rows_to_csv(&report.rows)
            );
            if mask_timing {
                csv = mask_timing_columns(&csv);
            }
            emit_rows(&report.rows, &csv, out.as_deref())?;
        }
        Command::ExperimentDiscrete {
            domain,
            problem,
            hypotheses,
            observations,
            k,
            fractions,
            optimal_only,
            out,
        } => {
            let model = strips::parse_domain(&read(&domain)?)?;
            let ground = strips::parse_problem(&read(&problem)?, &model)?;
            let goals = experiment::parse_hypotheses(&ground, &read(&hypotheses)?)?;
            let actions = ground.parse_action_sequence(&read(&observations)?)?;
            let cfg = DiscreteConfig {
                k,
                optimal_only,
                fractions: parse_fractions(&fractions)?,
                ..DiscreteConfig::default()
            };
            let (report, _) =
                experiment::run_discrete_experiment(&ground, &goals, &actions, &cfg)?;
            eprintln!(
                "planner calls: offline {}, online {}",
                report.offline_planner_calls, report.online_planner_calls
            );
            let csv = format!(
                "{}{}",
                experiment::discrete_metadata(&cfg),
                rows_to_csv(&report.rows)
            );
            emit_rows(&report.rows, &csv, out.as_deref())?;
        }
        Command::Report { input, out } => {
            let rows = experiment::rows_from_csv(&read(&input)?)?;
            let summary = experiment::summarize(&rows);
            match out {
                Some(path) if path.extension().is_some_and(|e| e == "json") => {
                    fs::write(&path, serde_json::to_string_pretty(&summary)?)?;
                }
                other => emit(&experiment::summary_to_csv(&summary), other.as_deref())?,
            }
        }
    }
    Ok(())
}

fn recognize_continuous(
    bank: &goalrec::recognizer::HypothesisBank<Trajectory>,
    stream: &ObservationStream,
) -> Result<String> {
    let observations: Vec<Observation<goalrec::quintic::TimedState>> =
        if stream.test_point_indices.is_empty() {
            stream
                .full
                .samples
                .iter()
                .map(|s| Observation::new(*s, s.t))
                .collect()
        } else {
            stream.test_observations()
        };
    let mut session = Session::new(bank, euclid_continuous);
    let mut history = Vec::new();
    for obs in &observations {
        let posterior = session.update(obs)?;
        history.push((obs.t, posterior));
    }
    Ok(posterior_history_to_csv(&history, bank.goals()))
}

fn load_map(path: &Path) -> Result<OccupancyGrid> {
    Ok(OccupancyGrid::parse_map(&read(path)?)?)
}

fn load_points(path: &Path) -> Result<Vec<goalrec::gridmap::ScenarioPoint>> {
    Ok(scenario_from_text(&read(path)?)?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
    }
}

/// Rows go to `--out` as JSON when the extension is `.json`, CSV otherwise.
fn emit_rows(rows: &[experiment::MetricsRow], csv: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) if path.extension().is_some_and(|e| e == "json") => {
            fs::write(path, serde_json::to_string_pretty(rows)?)
                .with_context(|| format!("writing {}", path.display()))?;
            Ok(())
        }
        other => emit(csv, other),
    }
}

fn parse_xy(text: &str) -> Result<Vec2> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        bail!("expected `x,y`, found `{text}`");
    }
    Ok(Vec2::new(parts[0].trim().parse()?, parts[1].trim().parse()?))
}

fn parse_fractions(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(Into::into))
        .collect()
}
