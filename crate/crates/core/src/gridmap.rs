//! Occupancy-grid maps: Moving-AI format parsing, wall-distance queries
//! backed by an exact Euclidean distance transform, and scenario-point
//! sampling under wall-clearance and pairwise-separation constraints.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::Vec2;

/// World extent (meters) of the standard experiment maps, both axes.
pub const WORLD_EXTENT_M: f64 = 10.0;
/// Minimum wall clearance for sampled scenario points.
pub const WALL_MARGIN_M: f64 = 0.23;
/// Minimum pairwise separation between scenario points.
pub const POINT_SEPARATION_M: f64 = 2.0;
/// Rejection-sampling attempt cap before giving up on a scenario set.
pub const MAX_SAMPLE_ATTEMPTS: usize = 100_000;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("map parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("map dimension mismatch: {msg}")]
    Dimension { msg: String },
    #[error("query ({x}, {y}) is outside the map bounds")]
    Bounds { x: f64, y: f64 },
    #[error("no scenario point set satisfying the constraints after {attempts} attempts")]
    InfeasibleScenario { attempts: usize },
}

/// A start/goal candidate pose sampled on a map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioPoint {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl ScenarioPoint {
    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Immutable occupancy grid over a fixed world extent.
///
/// Cell `(row, col)` spans world coordinates
/// `[col*mpc, (col+1)*mpc) x [row*mpc, (row+1)*mpc)` where `mpc` is
/// `meters_per_cell`. The distance field is precomputed at construction;
/// all queries are read-only.
#[derive(Debug, Clone)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    /// Row-major, true = obstacle.
    obstacles: Vec<bool>,
    meters_per_cell: f64,
    /// Exact distance (meters) from each cell center to the nearest
    /// obstacle-cell center. `f64::INFINITY` on maps without obstacles.
    center_dist: Vec<f64>,
    obstacle_count: usize,
}

impl OccupancyGrid {
    pub fn new(
        width: usize,
        height: usize,
        obstacles: Vec<bool>,
        meters_per_cell: f64,
    ) -> Result<Self, MapError> {
        if width == 0 || height == 0 {
            return Err(MapError::Dimension {
                msg: format!("grid must be non-empty, got {width}x{height}"),
            });
        }
        if obstacles.len() != width * height {
            return Err(MapError::Dimension {
                msg: format!(
                    "cell buffer has {} entries, expected {}",
                    obstacles.len(),
                    width * height
                ),
            });
        }
        let center_dist = exact_center_distances(width, height, &obstacles, meters_per_cell);
        let obstacle_count = obstacles.iter().filter(|&&o| o).count();
        Ok(Self {
            width,
            height,
            obstacles,
            meters_per_cell,
            center_dist,
            obstacle_count,
        })
    }

    /// Parses the Moving-AI benchmark `.map` format and scales the grid to
    /// the standard 10 m x 10 m world extent.
    pub fn parse_map(text: &str) -> Result<Self, MapError> {
        let mut lines = text.lines().enumerate();
        let mut next_header = |key: &str| -> Result<(usize, &str), MapError> {
            lines.next().ok_or_else(|| MapError::Parse {
                line: 0,
                msg: format!("missing `{key}` header line"),
            })
        };

        let (line_no, type_line) = next_header("type")?;
        if !type_line.trim_start().starts_with("type") {
            return Err(MapError::Parse {
                line: line_no + 1,
                msg: format!("expected `type ...`, found `{type_line}`"),
            });
        }
        let height = parse_header_count(next_header("height")?, "height")?;
        let width = parse_header_count(next_header("width")?, "width")?;
        let (line_no, map_marker) = next_header("map")?;
        if map_marker.trim() != "map" {
            return Err(MapError::Parse {
                line: line_no + 1,
                msg: format!("expected `map` marker, found `{map_marker}`"),
            });
        }

        let mut obstacles = Vec::with_capacity(width * height);
        let mut rows = 0usize;
        for (line_no, row) in lines {
            if rows == height {
                if row.trim().is_empty() {
                    continue;
                }
                return Err(MapError::Dimension {
                    msg: format!("body continues past {height} rows at line {}", line_no + 1),
                });
            }
            let glyphs: Vec<char> = row.chars().collect();
            if glyphs.len() != width {
                return Err(MapError::Dimension {
                    msg: format!(
                        "row {} (line {}) has {} cells, header says width {}",
                        rows,
                        line_no + 1,
                        glyphs.len(),
                        width
                    ),
                });
            }
            for g in glyphs {
                // `.` and `G` are passable; everything else is an obstacle.
                obstacles.push(!matches!(g, '.' | 'G'));
            }
            rows += 1;
        }
        if rows != height {
            return Err(MapError::Dimension {
                msg: format!("body has {rows} rows, header says height {height}"),
            });
        }

        Self::new(width, height, obstacles, WORLD_EXTENT_M / width as f64)
    }

    /// Renders the grid back into the Moving-AI format (`.` free, `@` wall).
    pub fn to_map_text(&self) -> String {
        let mut out = String::with_capacity(self.width * self.height + self.height + 40);
        out.push_str("type octile\n");
        out.push_str(&format!("height {}\n", self.height));
        out.push_str(&format!("width {}\n", self.width));
        out.push_str("map\n");
        for r in 0..self.height {
            for c in 0..self.width {
                out.push(if self.obstacles[r * self.width + c] { '@' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn meters_per_cell(&self) -> f64 {
        self.meters_per_cell
    }

    pub fn extent(&self) -> (f64, f64) {
        (
            self.width as f64 * self.meters_per_cell,
            self.height as f64 * self.meters_per_cell,
        )
    }

    pub fn obstacle_count(&self) -> usize {
        self.obstacle_count
    }

    pub fn is_obstacle(&self, row: usize, col: usize) -> bool {
        self.obstacles[row * self.width + col]
    }

    fn in_bounds(&self, x: f64, y: f64) -> bool {
        let (ex, ey) = self.extent();
        x >= 0.0 && x <= ex && y >= 0.0 && y <= ey
    }

    fn cell_of(&self, x: f64, y: f64) -> (usize, usize) {
        let c = ((x / self.meters_per_cell) as usize).min(self.width - 1);
        let r = ((y / self.meters_per_cell) as usize).min(self.height - 1);
        (r, c)
    }

    fn center(&self, row: usize, col: usize) -> Vec2 {
        Vec2::new(
            (col as f64 + 0.5) * self.meters_per_cell,
            (row as f64 + 0.5) * self.meters_per_cell,
        )
    }

    /// True when `(x, y)` falls inside an obstacle cell.
    pub fn occupied_at(&self, x: f64, y: f64) -> Result<bool, MapError> {
        if !self.in_bounds(x, y) {
            return Err(MapError::Bounds { x, y });
        }
        let (r, c) = self.cell_of(x, y);
        Ok(self.obstacles[r * self.width + c])
    }

    /// Euclidean distance (meters) to the nearest wall: the closer of the
    /// nearest obstacle-cell center and the map boundary. Zero inside an
    /// obstacle cell.
    pub fn wall_distance(&self, x: f64, y: f64) -> Result<f64, MapError> {
        if !self.in_bounds(x, y) {
            return Err(MapError::Bounds { x, y });
        }
        let (r, c) = self.cell_of(x, y);
        if self.obstacles[r * self.width + c] {
            return Ok(0.0);
        }
        let (ex, ey) = self.extent();
        let boundary = x.min(ex - x).min(y).min(ey - y);
        Ok(boundary.min(self.obstacle_distance(x, y)))
    }

    /// True iff `wall_distance(x, y) >= clearance`, decided without the
    /// exact obstacle scan whenever the precomputed field already settles
    /// the comparison.
    pub fn clearance_at_least(&self, x: f64, y: f64, clearance: f64) -> Result<bool, MapError> {
        if !self.in_bounds(x, y) {
            return Err(MapError::Bounds { x, y });
        }
        let (r, c) = self.cell_of(x, y);
        if self.obstacles[r * self.width + c] {
            return Ok(clearance <= 0.0);
        }
        let (ex, ey) = self.extent();
        let boundary = x.min(ex - x).min(y).min(ey - y);
        if boundary < clearance {
            return Ok(false);
        }
        if self.obstacle_count == 0 {
            return Ok(true);
        }
        let (qr, qc) = self.nearest_center(x, y);
        let q = self.center(qr, qc);
        let delta = q.dist(Vec2::new(x, y));
        let at_center = self.center_dist[qr * self.width + qc];
        if at_center - delta >= clearance {
            return Ok(true);
        }
        if at_center + delta < clearance {
            return Ok(false);
        }
        Ok(self.obstacle_distance(x, y) >= clearance)
    }

    fn nearest_center(&self, x: f64, y: f64) -> (usize, usize) {
        let c = ((x / self.meters_per_cell - 0.5).round().max(0.0) as usize).min(self.width - 1);
        let r = ((y / self.meters_per_cell - 0.5).round().max(0.0) as usize).min(self.height - 1);
        (r, c)
    }

    /// Exact distance from `(x, y)` to the nearest obstacle-cell center.
    ///
    /// The precomputed center-to-center field bounds the answer to a thin
    /// annulus around the query, which is then scanned exactly.
    fn obstacle_distance(&self, x: f64, y: f64) -> f64 {
        if self.obstacle_count == 0 {
            return f64::INFINITY;
        }
        let p = Vec2::new(x, y);
        let (qr, qc) = self.nearest_center(x, y);
        let q = self.center(qr, qc);
        let delta = q.dist(p);
        let at_center = self.center_dist[qr * self.width + qc];
        // Every obstacle center lies at distance >= lo from p, and at least
        // one lies within hi (both by the triangle inequality).
        let lo = (at_center - delta).max(0.0);
        let hi = at_center + delta;

        let mpc = self.meters_per_cell;
        let r_min = (((y - hi) / mpc - 0.5).floor().max(0.0)) as usize;
        let r_max = ((((y + hi) / mpc - 0.5).ceil()) as usize).min(self.height - 1);
        let mut best = f64::INFINITY;
        for row in r_min..=r_max {
            let cy = (row as f64 + 0.5) * mpc;
            let dy = cy - y;
            let span_sq = hi * hi - dy * dy;
            if span_sq < 0.0 {
                continue;
            }
            let span = span_sq.sqrt();
            let inner_sq = lo * lo - dy * dy;
            let (c_lo, c_hi) = self.col_range(x - span, x + span);
            if inner_sq <= 0.0 {
                for col in c_lo..=c_hi {
                    self.scan_cell(row, col, p, &mut best);
                }
            } else {
                let inner = inner_sq.sqrt();
                let (left_lo, left_hi) = self.col_range(x - span, x - inner);
                let (right_lo, right_hi) = self.col_range(x + inner, x + span);
                for col in left_lo..=left_hi {
                    self.scan_cell(row, col, p, &mut best);
                }
                for col in right_lo.max(left_hi + 1)..=right_hi {
                    self.scan_cell(row, col, p, &mut best);
                }
            }
        }
        debug_assert!(best.is_finite(), "annulus scan must find a candidate");
        best
    }

    fn col_range(&self, x_lo: f64, x_hi: f64) -> (usize, usize) {
        let mpc = self.meters_per_cell;
        let lo = ((x_lo / mpc - 0.5).floor().max(0.0)) as usize;
        let hi = (((x_hi / mpc - 0.5).ceil()).max(0.0) as usize).min(self.width - 1);
        (lo.min(self.width - 1), hi)
    }

    #[inline]
    fn scan_cell(&self, row: usize, col: usize, p: Vec2, best: &mut f64) {
        if self.obstacles[row * self.width + col] {
            let d = self.center(row, col).dist(p);
            if d < *best {
                *best = d;
            }
        }
    }

    /// Samples `count` poses with wall clearance >= 0.23 m and pairwise
    /// separation >= 2 m, uniformly over free space, deterministically for
    /// a fixed seed.
    pub fn sample_scenario_points(
        &self,
        count: usize,
        rng_seed: u64,
    ) -> Result<Vec<ScenarioPoint>, MapError> {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let (ex, ey) = self.extent();
        let mut accepted: Vec<ScenarioPoint> = Vec::with_capacity(count);
        if count == 0 {
            return Ok(accepted);
        }
        let mut stale = 0usize;
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            // Restart the whole set if the greedy extension has wedged.
            if stale > 20_000 {
                accepted.clear();
                stale = 0;
            }
            let x = rng.random_range(0.0..ex);
            let y = rng.random_range(0.0..ey);
            let ok_wall = self.wall_distance(x, y)? >= WALL_MARGIN_M;
            let ok_sep = accepted
                .iter()
                .all(|p| p.position().dist(Vec2::new(x, y)) >= POINT_SEPARATION_M);
            if ok_wall && ok_sep {
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                accepted.push(ScenarioPoint { x, y, theta });
                stale = 0;
                if accepted.len() == count {
                    return Ok(accepted);
                }
            } else {
                stale += 1;
            }
        }
        Err(MapError::InfeasibleScenario {
            attempts: MAX_SAMPLE_ATTEMPTS,
        })
    }
}

fn parse_header_count(entry: (usize, &str), key: &str) -> Result<usize, MapError> {
    let (line_no, line) = entry;
    let mut parts = line.split_whitespace();
    let found_key = parts.next().unwrap_or("");
    if found_key != key {
        return Err(MapError::Parse {
            line: line_no + 1,
            msg: format!("expected `{key} <n>`, found `{line}`"),
        });
    }
    let value = parts.next().ok_or_else(|| MapError::Parse {
        line: line_no + 1,
        msg: format!("`{key}` header is missing its value"),
    })?;
    let n: usize = value.parse().map_err(|_| MapError::Parse {
        line: line_no + 1,
        msg: format!("`{key}` value `{value}` is not a positive integer"),
    })?;
    if n == 0 {
        return Err(MapError::Parse {
            line: line_no + 1,
            msg: format!("`{key}` must be positive"),
        });
    }
    Ok(n)
}

/// Exact Euclidean distance (meters) from every cell center to the nearest
/// obstacle-cell center: per-row nearest-obstacle pass, then the two-pass
/// lower-envelope transform along columns on squared distances.
fn exact_center_distances(
    width: usize,
    height: usize,
    obstacles: &[bool],
    meters_per_cell: f64,
) -> Vec<f64> {
    const INF: f64 = f64::INFINITY;
    // Pass 1: squared distance to the nearest obstacle within each row.
    let mut row_sq = vec![INF; width * height];
    for r in 0..height {
        let base = r * width;
        let mut last: Option<usize> = None;
        for c in 0..width {
            if obstacles[base + c] {
                last = Some(c);
            }
            if let Some(o) = last {
                let d = c as f64 - o as f64;
                row_sq[base + c] = d * d;
            }
        }
        last = None;
        for c in (0..width).rev() {
            if obstacles[base + c] {
                last = Some(c);
            }
            if let Some(o) = last {
                let d = o as f64 - c as f64;
                row_sq[base + c] = row_sq[base + c].min(d * d);
            }
        }
    }

    // Pass 2: 1-D squared-distance transform down each column
    // (Felzenszwalb-Huttenlocher lower envelope of parabolas).
    let mut out = vec![INF; width * height];
    let mut f = vec![INF; height];
    let mut v = vec![0usize; height];
    let mut z = vec![0.0f64; height + 1];
    for c in 0..width {
        for r in 0..height {
            f[r] = row_sq[r * width + c];
        }
        let mut k = 0usize;
        v[0] = 0;
        z[0] = -INF;
        z[1] = INF;
        for q in 1..height {
            if f[q] == INF {
                continue;
            }
            loop {
                let p = v[k];
                if f[p] == INF {
                    // Parabola at p is infinitely high; replace it.
                    if k == 0 {
                        v[0] = q;
                        z[0] = -INF;
                        z[1] = INF;
                        break;
                    }
                    k -= 1;
                    continue;
                }
                let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64))
                    / (2.0 * (q as f64 - p as f64));
                if s <= z[k] {
                    if k == 0 {
                        v[0] = q;
                        z[0] = -INF;
                        z[1] = INF;
                        break;
                    }
                    k -= 1;
                } else {
                    k += 1;
                    v[k] = q;
                    z[k] = s;
                    z[k + 1] = INF;
                    break;
                }
            }
        }
        let mut k_read = 0usize;
        for r in 0..height {
            while z[k_read + 1] < r as f64 {
                k_read += 1;
            }
            let p = v[k_read];
            if f[p] < INF {
                let dr = r as f64 - p as f64;
                out[r * width + c] = (f[p] + dr * dr).sqrt() * meters_per_cell;
            }
        }
    }
    out
}

/// Writes scenario points in the `x y theta` line format.
pub fn scenario_to_text(points: &[ScenarioPoint]) -> String {
    let mut out = String::from("# x y theta\n");
    for p in points {
        out.push_str(&format!("{} {} {}\n", p.x, p.y, p.theta));
    }
    out
}

/// Parses the `x y theta` scenario format; `#` starts a comment line.
pub fn scenario_from_text(text: &str) -> Result<Vec<ScenarioPoint>, MapError> {
    let mut points = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(MapError::Parse {
                line: line_no + 1,
                msg: format!("expected `x y theta`, found `{line}`"),
            });
        }
        let mut vals = [0.0f64; 3];
        for (i, field) in fields.iter().enumerate() {
            vals[i] = field.parse().map_err(|_| MapError::Parse {
                line: line_no + 1,
                msg: format!("`{field}` is not a number"),
            })?;
        }
        points.push(ScenarioPoint {
            x: vals[0],
            y: vals[1],
            theta: vals[2],
        });
    }
    Ok(points)
}
