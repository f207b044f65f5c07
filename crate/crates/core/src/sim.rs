//! Ground-truth observation streams: a unicycle agent follows a planned
//! path under a pure-pursuit controller with hard speed, turn-rate,
//! corridor and wall-clearance guards.

use thiserror::Error;

use crate::geoplanner::PositionPath;
use crate::gridmap::OccupancyGrid;
use crate::quintic::{TimedState, Trajectory};
use crate::recognizer::Observation;
use crate::Vec2;

/// Number of equally spaced test observations per stream.
pub const TEST_POINT_COUNT: usize = 6;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("controller failed to reach the goal within {budget_s} s")]
    ControllerTimeout { budget_s: f64 },
    #[error(transparent)]
    Map(#[from] crate::gridmap::MapError),
}

/// Unicycle pose at a wall-clock time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnicycleState {
    pub x: f64,
    pub y: f64,
    /// Heading, normalized to (-pi, pi].
    pub theta: f64,
    pub t: f64,
}

/// Forward speed and turn-rate command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlInput {
    pub alpha: f64,
    pub omega: f64,
}

/// Wraps an angle into (-pi, pi].
pub fn normalize_angle(theta: f64) -> f64 {
    let mut a = theta.rem_euclid(std::f64::consts::TAU);
    if a > std::f64::consts::PI {
        a -= std::f64::consts::TAU;
    }
    a
}

/// One forward-Euler step of the unicycle kinematics.
pub fn step(s: &UnicycleState, u: &ControlInput, dt: f64) -> UnicycleState {
    assert!(dt > 0.0, "dt must be positive");
    UnicycleState {
        x: s.x + u.alpha * s.theta.cos() * dt,
        y: s.y + u.alpha * s.theta.sin() * dt,
        theta: normalize_angle(s.theta + u.omega * dt),
        t: s.t + dt,
    }
}

/// Controller gains and limits.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub v_max: f64,
    pub omega_lim: f64,
    pub dt: f64,
    pub lookahead: f64,
    pub goal_tolerance: f64,
    /// Max allowed lateral deviation from the reference polyline.
    pub corridor: f64,
    pub wall_lim: f64,
    /// Time budget = factor x (path length / v_max), floored at one step.
    pub time_budget_factor: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            v_max: 1.0,
            omega_lim: 3.0,
            dt: 0.1,
            lookahead: 0.25,
            goal_tolerance: 0.05,
            corridor: 0.08,
            wall_lim: crate::geoplanner::WALL_LIM_M,
            time_budget_factor: 10.0,
        }
    }
}

/// A full sampled run plus its six test-observation indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationStream {
    pub full: Trajectory,
    /// Sample indices of the six test observations.
    pub test_point_indices: Vec<usize>,
}

impl ObservationStream {
    /// Total simulated time.
    pub fn tf(&self) -> f64 {
        (self.full.len() - 1) as f64 * self.full.dt
    }

    /// The six test observations, timestamped by sample index.
    pub fn test_observations(&self) -> Vec<Observation<TimedState>> {
        self.test_point_indices
            .iter()
            .map(|&i| Observation::new(self.full.samples[i], i))
            .collect()
    }

    /// Trajectory CSV prefixed with a `# test_points=` header.
    pub fn to_csv(&self) -> String {
        let indices: Vec<String> = self.test_point_indices.iter().map(|i| i.to_string()).collect();
        format!("# test_points={}\n{}", indices.join(","), self.full.to_csv())
    }

    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut indices = Vec::new();
        for line in text.lines() {
            if let Some(list) = line.trim().strip_prefix("# test_points=") {
                for part in list.split(',') {
                    if part.is_empty() {
                        continue;
                    }
                    indices.push(part.trim().parse().map_err(|e| format!("{e}"))?);
                }
            }
        }
        let full = Trajectory::from_csv(text)?;
        Ok(Self { full, test_point_indices: indices })
    }
}

/// Arc-length parameterized polyline lookup.
struct Polyline {
    points: Vec<Vec2>,
    cumulative: Vec<f64>,
}

impl Polyline {
    fn new(points: &[Vec2]) -> Self {
        let mut cumulative = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in points.windows(2) {
            acc += w[0].dist(w[1]);
            cumulative.push(acc);
        }
        Self { points: points.to_vec(), cumulative }
    }

    fn length(&self) -> f64 {
        *self.cumulative.last().expect("nonempty polyline")
    }

    fn point_at(&self, s: f64) -> Vec2 {
        let s = s.clamp(0.0, self.length());
        for i in 0..self.points.len() - 1 {
            if s <= self.cumulative[i + 1] {
                let seg_len = self.cumulative[i + 1] - self.cumulative[i];
                if seg_len < 1e-12 {
                    return self.points[i];
                }
                let f = (s - self.cumulative[i]) / seg_len;
                return Vec2::new(
                    self.points[i].x + (self.points[i + 1].x - self.points[i].x) * f,
                    self.points[i].y + (self.points[i + 1].y - self.points[i].y) * f,
                );
            }
        }
        *self.points.last().expect("nonempty polyline")
    }

    /// Arc length of the projection of `p`, searched from `from_s` onward,
    /// and the lateral distance at that projection.
    fn project_ahead(&self, p: Vec2, from_s: f64) -> (f64, f64) {
        let mut best_s = self.length();
        let mut best_d = p.dist(self.point_at(best_s));
        for i in 0..self.points.len() - 1 {
            if self.cumulative[i + 1] < from_s {
                continue;
            }
            let a = self.points[i];
            let b = self.points[i + 1];
            let seg = b - a;
            let len2 = seg.x * seg.x + seg.y * seg.y;
            let f = if len2 < 1e-18 {
                0.0
            } else {
                (((p.x - a.x) * seg.x + (p.y - a.y) * seg.y) / len2).clamp(0.0, 1.0)
            };
            let s = (self.cumulative[i] + f * (self.cumulative[i + 1] - self.cumulative[i]))
                .max(from_s);
            let q = self.point_at(s);
            let d = p.dist(q);
            if d < best_d - 1e-12 {
                best_d = d;
                best_s = s;
            }
        }
        (best_s, best_d)
    }

    /// Unconstrained lateral distance from `p` to the polyline.
    fn lateral_distance(&self, p: Vec2) -> f64 {
        self.project_ahead(p, 0.0).1
    }
}

/// Drives the unicycle along `path` from its head, starting at heading
/// `initial_theta`, and samples the resulting stream at `cfg.dt`.
pub fn follow_path(
    grid: &OccupancyGrid,
    path: &PositionPath,
    initial_theta: f64,
    cfg: &SimConfig,
) -> Result<ObservationStream, SimError> {
    let line = Polyline::new(&path.waypoints);
    let goal = path.goal();
    let mut pose = UnicycleState {
        x: path.start().x,
        y: path.start().y,
        theta: normalize_angle(initial_theta),
        t: 0.0,
    };

    let mut samples = vec![TimedState {
        x: pose.x,
        y: pose.y,
        vx: 0.0,
        vy: 0.0,
        t: 0,
    }];

    let budget_s = cfg.time_budget_factor * (line.length() / cfg.v_max).max(cfg.dt);
    let max_steps = (budget_s / cfg.dt).ceil() as usize + 1;
    let mut progress = 0.0f64;

    for k in 1..=max_steps {
        let p = Vec2::new(pose.x, pose.y);
        if p.dist(goal) <= cfg.goal_tolerance {
            break;
        }
        let (s_near, _) = line.project_ahead(p, progress);
        progress = s_near;
        let target = line.point_at((s_near + cfg.lookahead).min(line.length()));
        let to_target = if target.dist(p) < 1e-9 { goal - p } else { target - p };
        let heading_err = normalize_angle(to_target.y.atan2(to_target.x) - pose.theta);

        let omega = (heading_err / cfg.dt).clamp(-cfg.omega_lim, cfg.omega_lim);
        let mut alpha = (cfg.v_max * heading_err.cos()).max(0.0);
        let remaining = p.dist(goal);
        alpha = alpha.min(remaining / cfg.dt);
        // Parking gate: close to the goal, align before translating, or
        // the final approach can overshoot and limit-cycle around it.
        let park_radius = (6.0 * cfg.goal_tolerance).max(2.0 * cfg.lookahead);
        if remaining < park_radius && heading_err.abs() > 0.2 {
            alpha = 0.0;
        }

        // Corridor and wall guards: shrink the forward speed until the
        // candidate pose stays near the path and clear of walls. alpha = 0
        // (turn in place) always satisfies both.
        for _ in 0..12 {
            if alpha < 1e-9 {
                alpha = 0.0;
                break;
            }
            let candidate = step(&pose, &ControlInput { alpha, omega }, cfg.dt);
            let lateral_ok = line.lateral_distance(Vec2::new(candidate.x, candidate.y))
                <= cfg.corridor;
            let wall_ok = grid
                .wall_distance(candidate.x, candidate.y)
                .map(|d| d >= cfg.wall_lim * 1.5)
                .unwrap_or(false);
            if lateral_ok && wall_ok {
                break;
            }
            alpha *= 0.5;
        }

        pose = step(&pose, &ControlInput { alpha, omega }, cfg.dt);
        samples.push(TimedState {
            x: pose.x,
            y: pose.y,
            vx: alpha * pose.theta.cos(),
            vy: alpha * pose.theta.sin(),
            t: k,
        });
        if k == max_steps {
            let p = Vec2::new(pose.x, pose.y);
            if p.dist(goal) > cfg.goal_tolerance {
                return Err(SimError::ControllerTimeout { budget_s });
            }
        }
    }

    let full = Trajectory { samples, dt: cfg.dt };
    let test_point_indices = test_points(full.len());
    Ok(ObservationStream { full, test_point_indices })
}

/// Indices of six equally spaced interior samples: nearest samples to
/// `i * tf / 7` for i in 1..=6, which excludes the goal-revealing endpoint.
fn test_points(sample_count: usize) -> Vec<usize> {
    let last = sample_count.saturating_sub(1);
    (1..=TEST_POINT_COUNT)
        .map(|i| ((i as f64) * (last as f64) / 7.0).round() as usize)
        .collect()
}
