//! Fills in the non-position via-point parameters: interior velocities and
//! per-segment durations that minimize total trajectory time under the
//! velocity bound.
//!
//! The constrained problem is solved as an unconstrained penalized one by
//! coordinate descent with adaptive step shrinking, run from a heuristic
//! seed and from a random start, keeping the better result. Accelerations
//! are zero at every via point and the agent starts and ends at rest.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geoplanner::PositionPath;
use crate::quintic::{segment_coeffs, ViaPoint, ViaSequence};
use crate::Vec2;

/// Duration floor keeping segment coefficients finite.
pub const TD_FLOOR_S: f64 = 1e-3;

/// Sampling resolution divisor for the documented penalty objective.
const PENALTY_RESOLUTION_DIV: f64 = 1000.0;
/// Coarser divisor used inside the descent loop.
const DESCENT_RESOLUTION_DIV: f64 = 96.0;
/// Divisor for the final dense feasibility check.
const VERIFY_RESOLUTION_DIV: f64 = 2000.0;

#[derive(Debug, Error)]
pub enum OptError {
    #[error("no dynamically feasible fill-in found (residual violation {violation})")]
    InfeasibleDynamics {
        best: Box<ViaSequence>,
        violation: f64,
    },
    #[error("via-point optimization needs at least two positions")]
    TooFewPoints,
}

/// Velocity/acceleration state at a via point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptState {
    pub vx: f64,
    pub vy: f64,
    pub ax: f64,
    pub ay: f64,
}

/// Decision variables owned by one segment: the successor's state and the
/// segment duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptAction {
    pub next: OptState,
    pub td: f64,
}

#[derive(Debug, Clone)]
pub struct OptConfig {
    pub v_max: f64,
    pub penalty_weight: f64,
    pub max_iters: usize,
    /// Relative convergence tolerance.
    pub tolerance: f64,
    pub rng_seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            v_max: 1.0,
            penalty_weight: 1e3,
            max_iters: 5000,
            tolerance: 1e-4,
            rng_seed: 0,
        }
    }
}

/// One optimizer trace row; `iter` restarts at zero for each descent run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub cost: f64,
    pub violation: f64,
}

/// Trace rows as `iter,cost,violation` CSV.
pub fn trace_to_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("iter,cost,violation\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.iter, r.cost, r.violation));
    }
    out
}

/// Total duration plus the quadratic velocity-bound penalty.
///
/// Zero penalty exactly when every segment respects `v_max` at the
/// documented sampling resolution (duration/1000 per segment).
pub fn penalized_cost(via: &ViaSequence, cfg: &OptConfig) -> f64 {
    let mut cost = via.total_duration();
    for seg in via.segments() {
        let seg = seg.expect("via sequence was validated");
        let peak = seg.max_speed(seg.duration / PENALTY_RESOLUTION_DIV);
        let over = (peak - cfg.v_max).max(0.0);
        cost += cfg.penalty_weight * over * over;
    }
    cost
}

/// Internal candidate: durations per segment and interior velocities.
#[derive(Debug, Clone)]
struct Candidate {
    tds: Vec<f64>,
    vels: Vec<Vec2>,
}

struct Objective<'a> {
    positions: &'a [Vec2],
    cfg: &'a OptConfig,
    resolution_div: f64,
}

impl Objective<'_> {
    fn velocity_at(&self, cand: &Candidate, i: usize) -> Vec2 {
        let last = self.positions.len() - 1;
        if i == 0 || i == last {
            Vec2::new(0.0, 0.0)
        } else {
            cand.vels[i - 1]
        }
    }

    fn segment_peak(&self, cand: &Candidate, i: usize) -> f64 {
        let v0 = self.velocity_at(cand, i);
        let v1 = self.velocity_at(cand, i + 1);
        let from = ViaPoint {
            x: self.positions[i].x,
            y: self.positions[i].y,
            vx: v0.x,
            vy: v0.y,
            ax: 0.0,
            ay: 0.0,
            td: cand.tds[i],
        };
        let to = ViaPoint {
            x: self.positions[i + 1].x,
            y: self.positions[i + 1].y,
            vx: v1.x,
            vy: v1.y,
            ax: 0.0,
            ay: 0.0,
            td: 0.0,
        };
        let seg = segment_coeffs(&from, &to).expect("td is floored above zero");
        seg.max_speed(cand.tds[i] / self.resolution_div)
    }

    fn segment_cost(&self, cand: &Candidate, i: usize) -> f64 {
        let over = (self.segment_peak(cand, i) - self.cfg.v_max).max(0.0);
        cand.tds[i] + self.cfg.penalty_weight * over * over
    }

    fn max_violation(&self, cand: &Candidate) -> f64 {
        (0..cand.tds.len())
            .map(|i| self.segment_peak(cand, i) - self.cfg.v_max)
            .fold(0.0, f64::max)
    }
}

/// One coordinate of the decision vector.
enum Coord {
    /// Duration of segment i.
    Td(usize),
    /// Interior velocity component: (via index, 0 = x / 1 = y).
    Vel(usize, usize),
}

fn coordinate_list(n_points: usize) -> Vec<Coord> {
    let mut coords = Vec::new();
    for i in 0..n_points - 1 {
        coords.push(Coord::Td(i));
    }
    for i in 1..n_points - 1 {
        coords.push(Coord::Vel(i, 0));
        coords.push(Coord::Vel(i, 1));
    }
    coords
}

fn descend(objective: &Objective<'_>, cand: &mut Candidate, trace: &mut Vec<TraceRow>) -> f64 {
    let cfg = objective.cfg;
    let n_points = objective.positions.len();
    let coords = coordinate_list(n_points);
    let scales: Vec<f64> = coords
        .iter()
        .map(|c| match c {
            Coord::Td(i) => {
                let d = objective.positions[*i].dist(objective.positions[*i + 1]);
                (d / cfg.v_max).max(0.1)
            }
            Coord::Vel(..) => cfg.v_max,
        })
        .collect();
    let mut steps: Vec<f64> = scales.iter().map(|s| 0.25 * s).collect();

    let mut seg_costs: Vec<f64> = (0..n_points - 1)
        .map(|i| objective.segment_cost(cand, i))
        .collect();
    let mut cost: f64 = seg_costs.iter().sum();

    let affected = |c: &Coord| -> Vec<usize> {
        match c {
            Coord::Td(i) => vec![*i],
            Coord::Vel(i, _) => vec![*i - 1, *i],
        }
    };

    let mut sweeps = 0usize;
    loop {
        let mut improved = false;
        for (ci, coord) in coords.iter().enumerate() {
            let segs = affected(coord);
            for dir in [1.0f64, -1.0] {
                let delta = dir * steps[ci];
                let old = match coord {
                    Coord::Td(i) => {
                        let old = cand.tds[*i];
                        cand.tds[*i] = (old + delta).max(TD_FLOOR_S);
                        old
                    }
                    Coord::Vel(i, axis) => {
                        let v = &mut cand.vels[*i - 1];
                        let old = if *axis == 0 { v.x } else { v.y };
                        let new = (old + delta).clamp(-1.5 * cfg.v_max, 1.5 * cfg.v_max);
                        if *axis == 0 {
                            v.x = new;
                        } else {
                            v.y = new;
                        }
                        old
                    }
                };
                let new_costs: Vec<f64> =
                    segs.iter().map(|&s| objective.segment_cost(cand, s)).collect();
                let new_cost = cost + new_costs.iter().sum::<f64>()
                    - segs.iter().map(|&s| seg_costs[s]).sum::<f64>();
                if new_cost < cost - 1e-15 {
                    for (&s, &c) in segs.iter().zip(&new_costs) {
                        seg_costs[s] = c;
                    }
                    cost = new_cost;
                    improved = true;
                    // Keep stepping in the improving direction.
                    for _ in 0..16 {
                        let prev = match coord {
                            Coord::Td(i) => {
                                let prev = cand.tds[*i];
                                cand.tds[*i] = (prev + delta).max(TD_FLOOR_S);
                                prev
                            }
                            Coord::Vel(i, axis) => {
                                let v = &mut cand.vels[*i - 1];
                                let prev = if *axis == 0 { v.x } else { v.y };
                                let next =
                                    (prev + delta).clamp(-1.5 * cfg.v_max, 1.5 * cfg.v_max);
                                if *axis == 0 {
                                    v.x = next;
                                } else {
                                    v.y = next;
                                }
                                prev
                            }
                        };
                        let repeat_costs: Vec<f64> =
                            segs.iter().map(|&s| objective.segment_cost(cand, s)).collect();
                        let repeat_cost = cost + repeat_costs.iter().sum::<f64>()
                            - segs.iter().map(|&s| seg_costs[s]).sum::<f64>();
                        if repeat_cost < cost - 1e-15 {
                            for (&s, &c) in segs.iter().zip(&repeat_costs) {
                                seg_costs[s] = c;
                            }
                            cost = repeat_cost;
                        } else {
                            match coord {
                                Coord::Td(i) => cand.tds[*i] = prev,
                                Coord::Vel(i, axis) => {
                                    let v = &mut cand.vels[*i - 1];
                                    if *axis == 0 {
                                        v.x = prev;
                                    } else {
                                        v.y = prev;
                                    }
                                }
                            }
                            break;
                        }
                    }
                    break;
                }
                // Revert.
                match coord {
                    Coord::Td(i) => cand.tds[*i] = old,
                    Coord::Vel(i, axis) => {
                        let v = &mut cand.vels[*i - 1];
                        if *axis == 0 {
                            v.x = old;
                        } else {
                            v.y = old;
                        }
                    }
                }
            }
        }
        trace.push(TraceRow {
            iter: sweeps,
            cost,
            violation: objective.max_violation(cand).max(0.0),
        });
        sweeps += 1;
        if !improved {
            for s in steps.iter_mut() {
                *s *= 0.5;
            }
            let done = steps
                .iter()
                .zip(&scales)
                .all(|(s, sc)| *s < cfg.tolerance * sc);
            if done {
                break;
            }
        }
        if sweeps >= cfg.max_iters {
            break;
        }
    }
    cost
}

fn heuristic_candidate(positions: &[Vec2], cfg: &OptConfig) -> Candidate {
    let n = positions.len();
    // Cruise near the bound on interior segments; the rest-to-rest end
    // segments need the min-jerk duration factor.
    let tds: Vec<f64> = positions
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let d = w[0].dist(w[1]);
            let factor = if i == 0 || i == n - 2 { 1.9 } else { 1.15 };
            (factor * d / cfg.v_max).max(TD_FLOOR_S)
        })
        .collect();
    let mut vels = Vec::with_capacity(n.saturating_sub(2));
    for i in 1..n - 1 {
        let inward = positions[i] - positions[i - 1];
        let outward = positions[i + 1] - positions[i];
        let mean = Vec2::new(inward.x + outward.x, inward.y + outward.y);
        let norm = mean.norm();
        if norm > 1e-12 {
            vels.push(mean * (0.85 * cfg.v_max / norm));
        } else {
            vels.push(Vec2::new(0.0, 0.0));
        }
    }
    Candidate { tds, vels }
}

fn random_candidate(positions: &[Vec2], cfg: &OptConfig) -> Candidate {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let n = positions.len();
    let tds: Vec<f64> = positions
        .windows(2)
        .map(|w| {
            let denom = rng.random_range(0.3..0.9) * cfg.v_max;
            (w[0].dist(w[1]) / denom).max(TD_FLOOR_S)
        })
        .collect();
    let vels: Vec<Vec2> = (1..n - 1)
        .map(|_| {
            Vec2::new(
                rng.random_range(-0.5..0.5) * cfg.v_max,
                rng.random_range(-0.5..0.5) * cfg.v_max,
            )
        })
        .collect();
    Candidate { tds, vels }
}

fn to_via_sequence(positions: &[Vec2], cand: &Candidate) -> ViaSequence {
    let n = positions.len();
    let points: Vec<ViaPoint> = positions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let v = if i == 0 || i == n - 1 {
                Vec2::new(0.0, 0.0)
            } else {
                cand.vels[i - 1]
            };
            ViaPoint {
                x: p.x,
                y: p.y,
                vx: v.x,
                vy: v.y,
                ax: 0.0,
                ay: 0.0,
                td: if i < n - 1 { cand.tds[i] } else { 0.0 },
            }
        })
        .collect();
    ViaSequence::new(points).expect("durations are floored above zero")
}

/// Optimizes interior velocities and segment durations for a waypoint path,
/// returning the completed via sequence and the descent trace.
pub fn optimize_with_trace(
    path: &PositionPath,
    cfg: &OptConfig,
) -> (Result<ViaSequence, OptError>, Vec<TraceRow>) {
    debug_assert!(cfg.v_max > 0.0 && cfg.penalty_weight > 0.0);
    let positions = &path.waypoints;
    let mut trace = Vec::new();
    if positions.len() < 2 {
        return (Err(OptError::TooFewPoints), trace);
    }
    let objective = Objective {
        positions,
        cfg,
        resolution_div: DESCENT_RESOLUTION_DIV,
    };

    let mut best: Option<(f64, Candidate)> = None;
    for mut cand in [heuristic_candidate(positions, cfg), random_candidate(positions, cfg)] {
        let cost = descend(&objective, &mut cand, &mut trace);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, cand));
        }
    }
    let (_, mut cand) = best.expect("two starts ran");

    // Repair pass: stretch durations (and damp interior velocities) until
    // the dense check clears the bound exactly.
    let verifier = Objective {
        positions,
        cfg,
        resolution_div: VERIFY_RESOLUTION_DIV,
    };
    let mut rounds = 0;
    while verifier.max_violation(&cand) > 0.0 {
        for td in cand.tds.iter_mut() {
            *td *= 1.05;
        }
        for v in cand.vels.iter_mut() {
            *v = *v * 0.95;
        }
        rounds += 1;
        if rounds > 200 {
            let violation = verifier.max_violation(&cand);
            return (
                Err(OptError::InfeasibleDynamics {
                    best: Box::new(to_via_sequence(positions, &cand)),
                    violation,
                }),
                trace,
            );
        }
    }

    (Ok(to_via_sequence(positions, &cand)), trace)
}

/// [`optimize_with_trace`] without the trace.
pub fn optimize(path: &PositionPath, cfg: &OptConfig) -> Result<ViaSequence, OptError> {
    optimize_with_trace(path, cfg).0
}
