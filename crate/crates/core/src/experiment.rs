//! Experiment harness and metrics: builds hypothesis banks offline, runs
//! online recognition over ground-truth streams, and scores PPV/ACC/SPR/PC
//! with separated offline/online timing.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geoplanner::{self, PlannerConfig, PositionPath};
use crate::gridmap::{MapError, OccupancyGrid, ScenarioPoint};
use crate::instrument::PlannerCalls;
use crate::quintic::{self, Trajectory, STANDARD_DT_S};
use crate::recognizer::{
    euclid_continuous, euclid_discrete, HypothesisBank, Observation, Posterior, RecognizerError,
    Session, SPREAD_TOLERANCE,
};
use crate::sim::{self, ObservationStream, SimConfig};
use crate::strips::{self, GroundProblem, GroundState, StateTrajectory, StripsError};
use crate::viaopt::{self, OptConfig};
use crate::Vec2;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Plan(#[from] geoplanner::PlanError),
    #[error(transparent)]
    Opt(#[from] viaopt::OptError),
    #[error(transparent)]
    Quintic(#[from] quintic::QuinticError),
    #[error(transparent)]
    Sim(#[from] sim::SimError),
    #[error(transparent)]
    Strips(#[from] StripsError),
    #[error(transparent)]
    Recognizer(#[from] RecognizerError),
}

/// One problem's scored outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub problem: String,
    pub ppv: f64,
    pub acc: f64,
    pub spr: f64,
    pub pc: u64,
    pub online_s: f64,
    pub offline_s: f64,
    pub failed: bool,
}

impl MetricsRow {
    pub const CSV_HEADER: &'static str = "problem,ppv,acc,spr,pc,online_s,offline_s,failed";

    pub fn failed_row(problem: String) -> Self {
        Self {
            problem,
            ppv: 0.0,
            acc: 0.0,
            spr: 0.0,
            pc: 0,
            online_s: 0.0,
            offline_s: 0.0,
            failed: true,
        }
    }

    fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.problem,
            self.ppv,
            self.acc,
            self.spr,
            self.pc,
            self.online_s,
            self.offline_s,
            self.failed
        )
    }
}

/// Comment header recording how a continuous batch was produced,
/// including the ground-truth generator substitution.
pub fn continuous_metadata(cfg: &ContinuousConfig, points: usize) -> String {
    format!(
        "# mode=continuous ground_truth=pure-pursuit-unicycle points={} k={} seed={} v_max={} planner_iters={} simplify={} via_spacing={}\n",
        points, cfg.k, cfg.seed, cfg.v_max, cfg.planner_iters, cfg.simplify, cfg.via_spacing
    )
}

/// Comment header for a discrete run.
pub fn discrete_metadata(cfg: &DiscreteConfig) -> String {
    let fractions: Vec<String> = cfg.fractions.iter().map(|f| f.to_string()).collect();
    format!(
        "# mode=discrete ground_truth=dataset-actions k={} fractions={} optimal_only={}\n",
        cfg.k,
        fractions.join("/"),
        cfg.optimal_only
    )
}

pub fn rows_to_csv(rows: &[MetricsRow]) -> String {
    let mut out = String::from(MetricsRow::CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_row());
        out.push('\n');
    }
    out
}

pub fn rows_from_csv(text: &str) -> Result<Vec<MetricsRow>, ExperimentError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == MetricsRow::CSV_HEADER {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(ExperimentError::Config(format!(
                "line {}: expected 8 CSV fields",
                i + 1
            )));
        }
        let num = |s: &str| -> Result<f64, ExperimentError> {
            s.parse()
                .map_err(|e| ExperimentError::Config(format!("line {}: {e}", i + 1)))
        };
        rows.push(MetricsRow {
            problem: f[0].to_string(),
            ppv: num(f[1])?,
            acc: num(f[2])?,
            spr: num(f[3])?,
            pc: num(f[4])? as u64,
            online_s: num(f[5])?,
            offline_s: num(f[6])?,
            failed: f[7] == "true",
        });
    }
    Ok(rows)
}

/// Zeroes the timing columns; the determinism contract covers everything
/// else byte for byte.
pub fn mask_timing_columns(csv: &str) -> String {
    let mut out = String::with_capacity(csv.len());
    for line in csv.lines() {
        if line == MetricsRow::CSV_HEADER || line.is_empty() {
            out.push_str(line);
        } else {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() == 8 {
                out.push_str(&format!(
                    "{},{},{},{},{},0,0,{}",
                    f[0], f[1], f[2], f[3], f[4], f[7]
                ));
            } else {
                out.push_str(line);
            }
        }
        out.push('\n');
    }
    out
}

/// Indices within `SPREAD_TOLERANCE` of the max probability.
fn tie_set(posterior: &Posterior) -> Vec<usize> {
    let max = posterior.probabilities[posterior.argmax];
    posterior
        .probabilities
        .iter()
        .enumerate()
        .filter(|(_, &p)| p >= max - SPREAD_TOLERANCE)
        .map(|(i, _)| i)
        .collect()
}

/// Scores one problem from its per-observation-point posteriors.
///
/// PPV credits each point 1/|tie set| when the true goal is in the tie
/// set. ACC scores, per point, the per-goal binary membership decisions
/// (true goal in the tie set is the single true positive; every other tied
/// goal is a false positive). SPR is the mean tie-set size.
pub fn compute_metrics(
    problem: impl Into<String>,
    posteriors: &[Posterior],
    true_goal: usize,
    goal_count: usize,
    pc: u64,
    online_s: f64,
    offline_s: f64,
) -> MetricsRow {
    assert!(!posteriors.is_empty(), "metrics need at least one point");
    let points = posteriors.len() as f64;
    let mut ppv = 0.0;
    let mut acc = 0.0;
    let mut spr = 0.0;
    for posterior in posteriors {
        let tie = tie_set(posterior);
        let hit = tie.contains(&true_goal);
        if hit {
            ppv += 1.0 / tie.len() as f64;
        }
        // Binary decisions: predicted positive iff in the tie set.
        let false_positives = tie.len() - usize::from(hit);
        let false_negatives = usize::from(!hit);
        let correct = goal_count - false_positives - false_negatives;
        acc += correct as f64 / goal_count as f64;
        spr += tie.len() as f64;
    }
    MetricsRow {
        problem: problem.into(),
        ppv: 100.0 * ppv / points,
        acc: 100.0 * acc / points,
        spr: spr / points,
        pc,
        online_s,
        offline_s,
        failed: false,
    }
}

/// Continuous-domain experiment parameters.
#[derive(Debug, Clone)]
pub struct ContinuousConfig {
    pub k: usize,
    pub seed: u64,
    pub v_max: f64,
    /// Iteration budget per geometric plan (deterministic mode).
    pub planner_iters: u64,
    /// Shortcut paths before via-point optimization.
    pub simplify: bool,
    /// Max via-point spacing after simplification; long straight runs are
    /// re-subdivided so the optimizer can hold cruise speed between rest
    /// boundaries.
    pub via_spacing: f64,
    /// Scenario points to sample when none are supplied.
    pub point_count: usize,
    /// Online timing = median over this many repetitions.
    pub timing_reps: usize,
    /// Relative tolerance handed to the via-point optimizer.
    pub opt_tolerance: f64,
}

impl Default for ContinuousConfig {
    fn default() -> Self {
        Self {
            k: 1,
            seed: 0,
            v_max: 1.0,
            planner_iters: 1000,
            simplify: true,
            via_spacing: 1.25,
            point_count: 8,
            timing_reps: 5,
            opt_tolerance: 1e-3,
        }
    }
}

/// Batch report: per-problem rows plus instrumentation totals.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<MetricsRow>,
    pub offline_planner_calls: u64,
    pub online_planner_calls: u64,
}

/// Bank-construction planner configuration (hypothesis trajectories).
fn bank_planner_config(cfg: &ContinuousConfig, problem_seed: u64) -> PlannerConfig {
    PlannerConfig {
        max_iters: Some(cfg.planner_iters),
        clearance: geoplanner::WALL_LIM_M,
        rng_seed: problem_seed,
        ..PlannerConfig::default()
    }
}

/// Ground-truth planner configuration: wider clearance and finer steps so
/// the simulated agent keeps the wall limit with margin.
fn sim_planner_config(cfg: &ContinuousConfig, seed: u64) -> PlannerConfig {
    PlannerConfig {
        max_iters: Some(cfg.planner_iters.max(1500)),
        clearance: 0.2,
        step_size: 0.3,
        rng_seed: seed,
        ..PlannerConfig::default()
    }
}

/// Builds the k-trajectory-per-goal bank for one start position.
pub fn build_bank(
    grid: &OccupancyGrid,
    start: Vec2,
    goal_labels: &[String],
    goal_positions: &[Vec2],
    cfg: &ContinuousConfig,
    problem_seed: u64,
) -> Result<HypothesisBank<Trajectory>, ExperimentError> {
    let mut per_goal = Vec::with_capacity(goal_positions.len());
    for (g, &goal) in goal_positions.iter().enumerate() {
        let plan_cfg = bank_planner_config(cfg, geoplanner::derive_seed(problem_seed, g as u64, 7));
        let paths = geoplanner::plan_k(grid, start, goal, &plan_cfg, cfg.k)?;
        let mut trajectories = Vec::with_capacity(paths.len());
        for (j, path) in paths.iter().enumerate() {
            let path = if cfg.simplify {
                geoplanner::simplify(path, grid, plan_cfg.clearance)
            } else {
                path.clone()
            };
            let path = ensure_two_points(geoplanner::resample(&path, cfg.via_spacing));
            let opt_cfg = OptConfig {
                v_max: cfg.v_max,
                tolerance: cfg.opt_tolerance,
                rng_seed: geoplanner::derive_seed(problem_seed, g as u64, 100 + j as u64),
                ..OptConfig::default()
            };
            let via = viaopt::optimize(&path, &opt_cfg)?;
            trajectories.push(quintic::synthesize(&via, STANDARD_DT_S)?);
        }
        per_goal.push(trajectories);
    }
    Ok(HypothesisBank::new(goal_labels.to_vec(), per_goal)?)
}

/// A degenerate single-waypoint path becomes a stationary two-point one.
fn ensure_two_points(path: PositionPath) -> PositionPath {
    if path.waypoints.len() >= 2 {
        path
    } else {
        let p = path.waypoints[0];
        PositionPath::new(vec![p, p])
    }
}

/// Simulates the observed agent from `start` to `goal`. Narrow passages
/// can defeat a single seeded search, so planning retries fresh seeds
/// with escalating budgets before giving up.
pub fn ground_truth_stream(
    grid: &OccupancyGrid,
    start: &ScenarioPoint,
    goal: Vec2,
    cfg: &ContinuousConfig,
    seed: u64,
) -> Result<ObservationStream, ExperimentError> {
    let mut path = None;
    let mut last_err = None;
    for attempt in 0..4u64 {
        let mut plan_cfg = sim_planner_config(cfg, geoplanner::derive_seed(seed, attempt, 17));
        plan_cfg.max_iters = plan_cfg.max_iters.map(|i| i * (1 + attempt));
        match geoplanner::plan(grid, start.position(), goal, &plan_cfg) {
            Ok(p) => {
                path = Some(p);
                break;
            }
            Err(e @ geoplanner::PlanError::InvalidEndpoint { .. }) => return Err(e.into()),
            Err(e) => last_err = Some(e),
        }
    }
    let path = match path {
        Some(p) => p,
        None => return Err(last_err.expect("at least one attempt ran").into()),
    };
    let sim_cfg = SimConfig {
        v_max: cfg.v_max,
        ..SimConfig::default()
    };
    Ok(sim::follow_path(grid, &path, start.theta, &sim_cfg)?)
}

/// Runs the online phase: posterior after each test observation, with the
/// online time taken as the median over repeated replays of the updates.
pub fn run_online(
    bank: &HypothesisBank<Trajectory>,
    observations: &[Observation<crate::quintic::TimedState>],
    timing_reps: usize,
) -> Result<(Vec<Posterior>, f64), ExperimentError> {
    let mut posteriors = Vec::with_capacity(observations.len());
    let mut session = Session::new(bank, euclid_continuous);
    for obs in observations {
        posteriors.push(session.update(obs)?);
    }
    let mut durations = Vec::with_capacity(timing_reps.max(1));
    for _ in 0..timing_reps.max(1) {
        let mut timed = Session::new(bank, euclid_continuous);
        let t0 = Instant::now();
        for obs in observations {
            timed.update(obs)?;
        }
        durations.push(t0.elapsed().as_secs_f64());
    }
    durations.sort_by(|a, b| a.partial_cmp(b).expect("finite durations"));
    Ok((posteriors, durations[durations.len() / 2]))
}

/// Runs all ordered (start, goal) pairs of the scenario points. Problems
/// run sequentially so the per-problem planner-call deltas stay exact.
pub fn run_continuous_experiment(
    grid: &OccupancyGrid,
    points: &[ScenarioPoint],
    cfg: &ContinuousConfig,
) -> ExperimentReport {
    let mut rows = Vec::new();
    let mut offline_calls = 0u64;
    let mut online_calls = 0u64;

    let mut pair_index = 0u64;
    for start_idx in 0..points.len() {
        for goal_idx in 0..points.len() {
            if start_idx == goal_idx {
                continue;
            }
            pair_index += 1;
            let problem_id = format!("p{start_idx}->p{goal_idx}");
            let problem_seed = geoplanner::derive_seed(cfg.seed, pair_index, 0);

            match run_continuous_problem(grid, points, start_idx, goal_idx, cfg, problem_seed) {
                Ok((row, offline_pc, online_pc)) => {
                    offline_calls += offline_pc;
                    online_calls += online_pc;
                    rows.push(row);
                }
                Err(_) => rows.push(MetricsRow::failed_row(problem_id)),
            }
        }
    }
    ExperimentReport {
        rows,
        offline_planner_calls: offline_calls,
        online_planner_calls: online_calls,
    }
}

/// One (start, true-goal) recognition problem; hypotheses are all points
/// except the start. Returns the metrics row and the offline/online
/// planner-call deltas measured around the two phases.
pub fn run_continuous_problem(
    grid: &OccupancyGrid,
    points: &[ScenarioPoint],
    start_idx: usize,
    goal_idx: usize,
    cfg: &ContinuousConfig,
    problem_seed: u64,
) -> Result<(MetricsRow, u64, u64), ExperimentError> {
    let problem_id = format!("p{start_idx}->p{goal_idx}");
    let start = &points[start_idx];

    let hypothesis_indices: Vec<usize> =
        (0..points.len()).filter(|&i| i != start_idx).collect();
    let goal_labels: Vec<String> = hypothesis_indices.iter().map(|i| format!("p{i}")).collect();
    let goal_positions: Vec<Vec2> = hypothesis_indices
        .iter()
        .map(|&i| points[i].position())
        .collect();
    let true_goal = hypothesis_indices
        .iter()
        .position(|&i| i == goal_idx)
        .expect("goal index differs from start index");

    // Ground truth is the simulated world, not part of the recognizer's
    // planner budget; it runs outside the measured windows.
    let stream = ground_truth_stream(
        grid,
        start,
        points[goal_idx].position(),
        cfg,
        geoplanner::derive_seed(problem_seed, 0, 9001),
    )?;
    let observations = stream.test_observations();

    let before_offline = PlannerCalls::snapshot();
    let t0 = Instant::now();
    let bank = build_bank(
        grid,
        start.position(),
        &goal_labels,
        &goal_positions,
        cfg,
        problem_seed,
    )?;
    let offline_s = t0.elapsed().as_secs_f64();
    let offline_pc = PlannerCalls::snapshot().since(before_offline);

    let before_online = PlannerCalls::snapshot();
    let (posteriors, online_s) = run_online(&bank, &observations, cfg.timing_reps)?;
    let online_pc = PlannerCalls::snapshot().since(before_online);

    let row = compute_metrics(
        problem_id,
        &posteriors,
        true_goal,
        goal_labels.len(),
        offline_pc,
        online_s,
        offline_s,
    );
    Ok((row, offline_pc, online_pc))
}

/// Discrete-domain experiment parameters.
#[derive(Debug, Clone)]
pub struct DiscreteConfig {
    pub k: usize,
    /// Observation-prefix fractions scored as recognition points.
    pub fractions: Vec<f64>,
    /// Keep only the optimal-cost plans of each bank entry.
    pub optimal_only: bool,
    pub timing_reps: usize,
}

impl Default for DiscreteConfig {
    fn default() -> Self {
        Self {
            k: 1,
            fractions: vec![0.3, 0.5, 0.7, 1.0],
            optimal_only: false,
            timing_reps: 5,
        }
    }
}

/// Parses one goal hypothesis per nonempty, non-comment line.
pub fn parse_hypotheses(
    problem: &GroundProblem,
    text: &str,
) -> Result<Vec<GroundState>, ExperimentError> {
    let mut goals = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with(';') || line.starts_with('#') {
            continue;
        }
        goals.push(problem.parse_fact_set(line)?);
    }
    Ok(goals)
}

/// Runs one discrete recognition problem: top-k bank per goal hypothesis,
/// then posterior snapshots at each observation fraction.
pub fn run_discrete_experiment(
    problem: &GroundProblem,
    hypotheses: &[GroundState],
    observed_actions: &[usize],
    cfg: &DiscreteConfig,
) -> Result<(ExperimentReport, Vec<(usize, Posterior)>), ExperimentError> {
    if hypotheses.is_empty() {
        return Err(ExperimentError::Config("empty goal hypothesis set".into()));
    }
    if observed_actions.is_empty() {
        return Err(ExperimentError::Config("empty observation sequence".into()));
    }
    for f in &cfg.fractions {
        if !(*f > 0.0 && *f <= 1.0) {
            return Err(ExperimentError::Config(format!("fraction {f} outside (0, 1]")));
        }
    }
    let true_goal = hypotheses
        .iter()
        .position(|g| g == problem.problem_goal())
        .ok_or_else(|| {
            ExperimentError::Config("problem goal missing from the hypothesis set".into())
        })?;

    let labels: Vec<String> = (0..hypotheses.len()).map(|i| format!("g{i}")).collect();

    let before_offline = PlannerCalls::snapshot();
    let t0 = Instant::now();
    let mut per_goal: Vec<Vec<StateTrajectory>> = Vec::with_capacity(hypotheses.len());
    for goal in hypotheses {
        let plans = match strips::topk_plans(problem, goal, cfg.k) {
            Ok(p) => p,
            Err(StripsError::Unsolvable) => {
                // Unreachable hypothesis: keep it scored with a bank of
                // just the initial state (maximal distance to progress).
                per_goal.push(vec![StateTrajectory {
                    states: vec![problem.init.clone()],
                }]);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let plans = if cfg.optimal_only {
            strips::optimal_prefix(plans)
        } else {
            plans
        };
        let mut rollouts = Vec::with_capacity(plans.len());
        for plan in &plans {
            rollouts.push(strips::rollout(problem, &plan.actions)?);
        }
        per_goal.push(rollouts);
    }
    let offline_s = t0.elapsed().as_secs_f64();
    let offline_pc = PlannerCalls::snapshot().since(before_offline);

    let bank = HypothesisBank::new(labels, per_goal)?;
    let states = strips::observed_states(problem, observed_actions)?;
    let stream: Vec<Observation<GroundState>> = states
        .into_iter()
        .enumerate()
        .map(|(t, s)| Observation::new(s, t))
        .collect();

    // Posterior snapshots at each fraction's prefix length.
    let mut cut_lengths: Vec<usize> = cfg
        .fractions
        .iter()
        .map(|f| ((f * stream.len() as f64).ceil() as usize).clamp(1, stream.len()))
        .collect();
    let snapshots = cut_lengths.clone();
    cut_lengths.sort_unstable();
    cut_lengths.dedup();

    let before_online = PlannerCalls::snapshot();
    let mut history: Vec<(usize, Posterior)> = Vec::new();
    let mut by_length: Vec<(usize, Posterior)> = Vec::new();
    let mut session = Session::new(&bank, euclid_discrete);
    let t0 = Instant::now();
    for (i, obs) in stream.iter().enumerate() {
        let posterior = session.update(obs)?;
        history.push((obs.t, posterior.clone()));
        if cut_lengths.contains(&(i + 1)) {
            by_length.push((i + 1, posterior));
        }
    }
    let mut durations = vec![t0.elapsed().as_secs_f64()];
    for _ in 1..cfg.timing_reps.max(1) {
        let mut timed = Session::new(&bank, euclid_discrete);
        let t0 = Instant::now();
        for obs in &stream {
            timed.update(obs)?;
        }
        durations.push(t0.elapsed().as_secs_f64());
    }
    durations.sort_by(|a, b| a.partial_cmp(b).expect("finite durations"));
    let online_s = durations[durations.len() / 2];
    let online_pc = PlannerCalls::snapshot().since(before_online);

    let posteriors: Vec<Posterior> = snapshots
        .iter()
        .map(|len| {
            by_length
                .iter()
                .find(|(l, _)| l == len)
                .expect("every snapshot length was recorded")
                .1
                .clone()
        })
        .collect();

    let row = compute_metrics(
        problem.problem_name.clone(),
        &posteriors,
        true_goal,
        hypotheses.len(),
        offline_pc,
        online_s,
        offline_s,
    );
    Ok((
        ExperimentReport {
            rows: vec![row],
            offline_planner_calls: offline_pc,
            online_planner_calls: online_pc,
        },
        history,
    ))
}

/// Aggregate summary of a metrics CSV (mean and standard deviation).
#[derive(Debug, Clone, Serialize)]
pub struct ReportSummary {
    pub problems: usize,
    pub failed: usize,
    pub ppv_mean: f64,
    pub ppv_std: f64,
    pub acc_mean: f64,
    pub acc_std: f64,
    pub spr_mean: f64,
    pub pc_mean: f64,
    pub online_s_mean: f64,
    pub offline_s_mean: f64,
}

pub fn summarize(rows: &[MetricsRow]) -> ReportSummary {
    let ok: Vec<&MetricsRow> = rows.iter().filter(|r| !r.failed).collect();
    let n = ok.len().max(1) as f64;
    let mean = |f: &dyn Fn(&MetricsRow) -> f64| ok.iter().map(|r| f(r)).sum::<f64>() / n;
    let std = |f: &dyn Fn(&MetricsRow) -> f64, m: f64| {
        (ok.iter().map(|r| (f(r) - m).powi(2)).sum::<f64>() / n).sqrt()
    };
    let ppv_mean = mean(&|r| r.ppv);
    let acc_mean = mean(&|r| r.acc);
    ReportSummary {
        problems: rows.len(),
        failed: rows.len() - ok.len(),
        ppv_mean,
        ppv_std: std(&|r| r.ppv, ppv_mean),
        acc_mean,
        acc_std: std(&|r| r.acc, acc_mean),
        spr_mean: mean(&|r| r.spr),
        pc_mean: mean(&|r| r.pc as f64),
        online_s_mean: mean(&|r| r.online_s),
        offline_s_mean: mean(&|r| r.offline_s),
    }
}

pub fn summary_to_csv(s: &ReportSummary) -> String {
    format!(
        "problems,failed,ppv_mean,ppv_std,acc_mean,acc_std,spr_mean,pc_mean,online_s_mean,offline_s_mean\n{},{},{},{},{},{},{},{},{},{}\n",
        s.problems,
        s.failed,
        s.ppv_mean,
        s.ppv_std,
        s.acc_mean,
        s.acc_std,
        s.spr_mean,
        s.pc_mean,
        s.online_s_mean,
        s.offline_s_mean
    )
}

/// Serializable hypothesis bank for the continuous pipeline.
#[derive(Debug, Serialize, Deserialize)]
struct BankFile {
    goals: Vec<String>,
    priors: Vec<f64>,
    dt: f64,
    /// Per goal, per trajectory, rows of `[x, y, vx, vy]`; sample index is
    /// the timestamp.
    trajectories: Vec<Vec<Vec<[f64; 4]>>>,
}

pub fn bank_to_json(bank: &HypothesisBank<Trajectory>) -> String {
    let trajectories: Vec<Vec<Vec<[f64; 4]>>> = (0..bank.goal_count())
        .map(|g| {
            bank.trajectories(g)
                .iter()
                .map(|t| t.samples.iter().map(|s| [s.x, s.y, s.vx, s.vy]).collect())
                .collect()
        })
        .collect();
    let file = BankFile {
        goals: bank.goals().to_vec(),
        priors: bank.priors().to_vec(),
        dt: bank
            .trajectories(0)
            .first()
            .map(|t| t.dt)
            .unwrap_or(STANDARD_DT_S),
        trajectories,
    };
    serde_json::to_string_pretty(&file).expect("bank serializes")
}

pub fn bank_from_json(text: &str) -> Result<HypothesisBank<Trajectory>, ExperimentError> {
    let file: BankFile =
        serde_json::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
    let trajectories: Vec<Vec<Trajectory>> = file
        .trajectories
        .iter()
        .map(|per_goal| {
            per_goal
                .iter()
                .map(|rows| Trajectory {
                    samples: rows
                        .iter()
                        .enumerate()
                        .map(|(t, r)| crate::quintic::TimedState {
                            x: r[0],
                            y: r[1],
                            vx: r[2],
                            vy: r[3],
                            t,
                        })
                        .collect(),
                    dt: file.dt,
                })
                .collect()
        })
        .collect();
    Ok(HypothesisBank::with_priors(
        file.goals,
        trajectories,
        file.priors,
    )?)
}
