//! Fifth-degree polynomial trajectory segments between via points.
//!
//! A via point carries position, velocity, acceleration and the duration of
//! the segment it starts. Two consecutive via points fix all six boundary
//! conditions per axis, so the segment coefficients have a closed form.
//! Segments are parameterized in local time `[0, td]`; global timestamps
//! appear only when a sequence is sampled into a [`Trajectory`].

use thiserror::Error;

use crate::Vec2;

/// Sampling period (seconds) of the standard experiment trajectories.
pub const STANDARD_DT_S: f64 = 0.1;

#[derive(Debug, Error)]
pub enum QuinticError {
    #[error("segment duration must be positive, got {td}")]
    DegenerateSegment { td: f64 },
    #[error("time {t} outside segment domain [0, {duration}]")]
    Domain { t: f64, duration: f64 },
}

/// Position, velocity, acceleration and outgoing segment duration.
///
/// `td` is ignored on the final via point of a sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViaPoint {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
    pub ax: f64,
    pub ay: f64,
    pub td: f64,
}

impl ViaPoint {
    /// A via point at rest (zero velocity and acceleration).
    pub fn at_rest(x: f64, y: f64, td: f64) -> Self {
        Self { x, y, vx: 0.0, vy: 0.0, ax: 0.0, ay: 0.0, td }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Ordered via points; every point but the last must carry a positive
/// outgoing duration.
#[derive(Debug, Clone, PartialEq)]
pub struct ViaSequence {
    points: Vec<ViaPoint>,
}

impl ViaSequence {
    pub fn new(points: Vec<ViaPoint>) -> Result<Self, QuinticError> {
        assert!(points.len() >= 2, "via sequence needs at least two points");
        for p in &points[..points.len() - 1] {
            if p.td <= 0.0 {
                return Err(QuinticError::DegenerateSegment { td: p.td });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[ViaPoint] {
        &self.points
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Sum of segment durations.
    pub fn total_duration(&self) -> f64 {
        self.points[..self.points.len() - 1].iter().map(|p| p.td).sum()
    }

    pub fn segments(&self) -> impl Iterator<Item = Result<QuinticSegment, QuinticError>> + '_ {
        self.points.windows(2).map(|w| segment_coeffs(&w[0], &w[1]))
    }
}

/// State of one segment at a given local time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentState {
    pub pos: Vec2,
    pub vel: Vec2,
    pub acc: Vec2,
}

/// Quintic polynomial coefficients for one segment, highest power first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuinticSegment {
    /// X-axis coefficients `(a5, a4, a3, a2, a1, a0)`.
    pub x_coeffs: [f64; 6],
    /// Y-axis coefficients `(b5, b4, b3, b2, b1, b0)`.
    pub y_coeffs: [f64; 6],
    pub duration: f64,
}

/// Closed-form quintic coefficients from the boundary conditions carried by
/// a via-point pair.
pub fn segment_coeffs(from: &ViaPoint, to: &ViaPoint) -> Result<QuinticSegment, QuinticError> {
    if from.td <= 0.0 || !from.td.is_finite() {
        return Err(QuinticError::DegenerateSegment { td: from.td });
    }
    let td = from.td;
    Ok(QuinticSegment {
        x_coeffs: axis_coeffs(from.x, to.x, from.vx, to.vx, from.ax, to.ax, td),
        y_coeffs: axis_coeffs(from.y, to.y, from.vy, to.vy, from.ay, to.ay, td),
        duration: td,
    })
}

fn axis_coeffs(p0: f64, p1: f64, v0: f64, v1: f64, a0: f64, a1: f64, td: f64) -> [f64; 6] {
    let td2 = td * td;
    let td3 = td2 * td;
    let td4 = td3 * td;
    let td5 = td4 * td;
    let c5 = (12.0 * (p1 - p0) - 6.0 * (v1 + v0) * td - (a0 - a1) * td2) / (2.0 * td5);
    let c4 = (30.0 * (p0 - p1) + (14.0 * v1 + 16.0 * v0) * td + (3.0 * a0 - 2.0 * a1) * td2)
        / (2.0 * td4);
    let c3 = (20.0 * (p1 - p0) - (8.0 * v1 + 12.0 * v0) * td - (3.0 * a0 - a1) * td2)
        / (2.0 * td3);
    [c5, c4, c3, a0 / 2.0, v0, p0]
}

impl QuinticSegment {
    /// Position, velocity and acceleration at local time `t in [0, duration]`.
    pub fn eval(&self, t: f64) -> Result<SegmentState, QuinticError> {
        if !(0.0..=self.duration).contains(&t) {
            return Err(QuinticError::Domain { t, duration: self.duration });
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: f64) -> SegmentState {
        let (x, vx, ax) = eval_axis(&self.x_coeffs, t);
        let (y, vy, ay) = eval_axis(&self.y_coeffs, t);
        SegmentState {
            pos: Vec2::new(x, y),
            vel: Vec2::new(vx, vy),
            acc: Vec2::new(ax, ay),
        }
    }

    /// Max Euclidean speed over the segment, sampled every `resolution`
    /// seconds plus both endpoints.
    pub fn max_speed(&self, resolution: f64) -> f64 {
        assert!(resolution > 0.0, "resolution must be positive");
        let mut best = 0.0f64;
        let mut t = 0.0;
        while t < self.duration {
            best = best.max(self.eval_unchecked(t).vel.norm());
            t += resolution;
        }
        best.max(self.eval_unchecked(self.duration).vel.norm())
    }
}

fn eval_axis(coeffs: &[f64; 6], t: f64) -> (f64, f64, f64) {
    let [c5, c4, c3, c2, c1, c0] = *coeffs;
    let pos = ((((c5 * t + c4) * t + c3) * t + c2) * t + c1) * t + c0;
    let vel = (((5.0 * c5 * t + 4.0 * c4) * t + 3.0 * c3) * t + 2.0 * c2) * t + c1;
    let acc = ((20.0 * c5 * t + 12.0 * c4) * t + 6.0 * c3) * t + 2.0 * c2;
    (pos, vel, acc)
}

/// One sampled state of a trajectory; `t` is the discrete timestamp index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimedState {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
    pub t: usize,
}

impl TimedState {
    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Uniformly sampled trajectory; sample `k` nominally sits at time `k * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TimedState>,
    pub dt: f64,
}

impl Trajectory {
    /// State at timestamp index `t`; indices past the end clamp to the
    /// final (goal) state.
    pub fn state_at(&self, t: usize) -> &TimedState {
        &self.samples[t.min(self.samples.len() - 1)]
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Max sampled Euclidean speed.
    pub fn max_speed(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.vx * s.vx + s.vy * s.vy).sqrt())
            .fold(0.0, f64::max)
    }

    /// CSV with a `t,x,y,vx,vy` header; `t` is the timestamp index. The
    /// sampling period rides along as a `# dt=` comment.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# dt={}\nt,x,y,vx,vy\n", self.dt);
        for s in &self.samples {
            out.push_str(&format!("{},{},{},{},{}\n", s.t, s.x, s.y, s.vx, s.vy));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut samples = Vec::new();
        let mut dt = STANDARD_DT_S;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(value) = line.strip_prefix("# dt=") {
                dt = value.trim().parse().map_err(|e| format!("line {}: {e}", i + 1))?;
                continue;
            }
            if line.is_empty() || line.starts_with('#') || line.starts_with("t,") {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(format!("line {}: expected 5 fields", i + 1));
            }
            let parse = |s: &str| s.parse::<f64>().map_err(|e| format!("line {}: {e}", i + 1));
            samples.push(TimedState {
                t: f[0].parse().map_err(|e| format!("line {}: {e}", i + 1))?,
                x: parse(f[1])?,
                y: parse(f[2])?,
                vx: parse(f[3])?,
                vy: parse(f[4])?,
            });
        }
        Ok(Self { samples, dt })
    }
}

/// Samples the concatenated piecewise quintic at a uniform period.
///
/// If the total duration is not a multiple of `dt`, one extra sample holding
/// the exact end state is appended so the goal state is always present.
pub fn synthesize(via: &ViaSequence, dt: f64) -> Result<Trajectory, QuinticError> {
    assert!(dt > 0.0, "dt must be positive");
    let segments: Vec<QuinticSegment> = via.segments().collect::<Result<_, _>>()?;
    let mut cumulative = Vec::with_capacity(segments.len() + 1);
    let mut acc = 0.0;
    cumulative.push(0.0);
    for seg in &segments {
        acc += seg.duration;
        cumulative.push(acc);
    }
    let total = acc;

    let n_full = (total / dt + 1e-9).floor() as usize;
    let mut samples = Vec::with_capacity(n_full + 2);
    for k in 0..=n_full {
        let t = (k as f64 * dt).min(total);
        samples.push(sample_at(&segments, &cumulative, t, k));
    }
    if (n_full as f64) * dt < total - 1e-9 {
        samples.push(sample_at(&segments, &cumulative, total, n_full + 1));
    }
    Ok(Trajectory { samples, dt })
}

fn sample_at(
    segments: &[QuinticSegment],
    cumulative: &[f64],
    t: f64,
    index: usize,
) -> TimedState {
    // Pick the segment whose half-open span [cum[i], cum[i+1]) contains t;
    // the final endpoint belongs to the last segment.
    let mut i = segments.len() - 1;
    for s in 0..segments.len() {
        if t < cumulative[s + 1] {
            i = s;
            break;
        }
    }
    let local = (t - cumulative[i]).clamp(0.0, segments[i].duration);
    let state = segments[i].eval_unchecked(local);
    TimedState {
        x: state.pos.x,
        y: state.pos.y,
        vx: state.vel.x,
        vy: state.vel.y,
        t: index,
    }
}

/// Max Euclidean speed over a whole via sequence, sampled every
/// `resolution` seconds per segment plus segment endpoints.
pub fn max_speed_sequence(via: &ViaSequence, resolution: f64) -> Result<f64, QuinticError> {
    let mut best = 0.0f64;
    for seg in via.segments() {
        best = best.max(seg?.max_speed(resolution));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rest_to_rest(x0: f64, x1: f64, td: f64) -> QuinticSegment {
        segment_coeffs(
            &ViaPoint::at_rest(x0, 0.0, td),
            &ViaPoint::at_rest(x1, 0.0, td),
        )
        .unwrap()
    }

    /// All twelve boundary residuals of a segment against its via pair.
    fn boundary_residuals(seg: &QuinticSegment, from: &ViaPoint, to: &ViaPoint) -> Vec<f64> {
        let s0 = seg.eval(0.0).unwrap();
        let s1 = seg.eval(seg.duration).unwrap();
        vec![
            s0.pos.x - from.x,
            s0.pos.y - from.y,
            s0.vel.x - from.vx,
            s0.vel.y - from.vy,
            s0.acc.x - from.ax,
            s0.acc.y - from.ay,
            s1.pos.x - to.x,
            s1.pos.y - to.y,
            s1.vel.x - to.vx,
            s1.vel.y - to.vy,
            s1.acc.x - to.ax,
            s1.acc.y - to.ay,
        ]
    }

    #[test]
    fn min_jerk_coefficients() {
        let seg = rest_to_rest(0.0, 1.0, 1.0);
        let expect = [6.0, -15.0, 10.0, 0.0, 0.0, 0.0];
        for (got, want) in seg.x_coeffs.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{:?}", seg.x_coeffs);
        }
    }

    #[test]
    fn stationary_segment_is_constant() {
        let seg = rest_to_rest(2.5, 2.5, 1.0);
        assert_eq!(seg.x_coeffs, [0.0, 0.0, 0.0, 0.0, 0.0, 2.5]);
        let mid = seg.eval(0.37).unwrap();
        assert_eq!(mid.pos.x, 2.5);
        assert_eq!(mid.vel.x, 0.0);
    }

    #[test]
    fn constant_velocity_boundary_pair() {
        // x: 0 -> 0 with unit velocity at both ends.
        let from = ViaPoint { x: 0.0, y: 0.0, vx: 1.0, vy: 0.0, ax: 0.0, ay: 0.0, td: 1.0 };
        let to = ViaPoint { x: 0.0, y: 0.0, vx: 1.0, vy: 0.0, ax: 0.0, ay: 0.0, td: 1.0 };
        let seg = segment_coeffs(&from, &to).unwrap();
        assert_eq!(seg.x_coeffs[4], 1.0); // a1 = v0
        assert_eq!(seg.x_coeffs[5], 0.0); // a0 = x0
        for r in boundary_residuals(&seg, &from, &to) {
            assert!(r.abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_duration_is_rejected() {
        let p = ViaPoint::at_rest(0.0, 0.0, 0.0);
        assert!(matches!(
            segment_coeffs(&p, &ViaPoint::at_rest(1.0, 0.0, 1.0)),
            Err(QuinticError::DegenerateSegment { .. })
        ));
    }

    #[test]
    fn eval_outside_domain_is_rejected() {
        let seg = rest_to_rest(0.0, 1.0, 1.0);
        assert!(matches!(seg.eval(-0.01), Err(QuinticError::Domain { .. })));
        assert!(matches!(seg.eval(1.01), Err(QuinticError::Domain { .. })));
    }

    #[test]
    fn min_jerk_midpoint() {
        let seg = rest_to_rest(0.0, 1.0, 1.0);
        let mid = seg.eval(0.5).unwrap();
        assert!((mid.pos.x - 0.5).abs() < 1e-12);
    }

    #[test]
    fn min_jerk_peak_speed() {
        let seg = rest_to_rest(0.0, 1.0, 1.0);
        let peak = seg.max_speed(1.0 / 1000.0);
        assert!((peak - 1.875).abs() < 1e-4, "peak={peak}");
    }

    #[test]
    fn constant_velocity_max_speed() {
        let from = ViaPoint { x: 0.0, y: 0.0, vx: 1.0, vy: 0.0, ax: 0.0, ay: 0.0, td: 1.0 };
        let to = ViaPoint { x: 1.0, y: 0.0, vx: 1.0, vy: 0.0, ax: 0.0, ay: 0.0, td: 1.0 };
        let seg = segment_coeffs(&from, &to).unwrap();
        let peak = seg.max_speed(1e-3);
        assert!((peak - 1.0).abs() < 1e-9, "peak={peak}");
    }

    #[test]
    fn stationary_max_speed_is_zero() {
        let seg = rest_to_rest(1.0, 1.0, 2.0);
        assert_eq!(seg.max_speed(1e-3), 0.0);
    }

    #[test]
    fn synthesize_two_min_jerk_segments() {
        let via = ViaSequence::new(vec![
            ViaPoint::at_rest(0.0, 0.0, 1.0),
            ViaPoint::at_rest(1.0, 0.0, 1.0),
            ViaPoint::at_rest(2.0, 0.0, 1.0),
        ])
        .unwrap();
        let traj = synthesize(&via, 0.1).unwrap();
        assert_eq!(traj.len(), 21);
        let joint = &traj.samples[10];
        assert!((joint.x - 1.0).abs() < 1e-9);
        assert!(joint.vx.abs() < 1e-9);
        assert_eq!(traj.samples.last().unwrap().x, 2.0);
    }

    #[test]
    fn synthesize_coarsest_sampling_keeps_endpoints() {
        let via = ViaSequence::new(vec![
            ViaPoint::at_rest(0.0, 0.0, 1.0),
            ViaPoint::at_rest(1.0, 1.0, 1.0),
        ])
        .unwrap();
        let traj = synthesize(&via, 1.0).unwrap();
        assert_eq!(traj.len(), 2);
        assert_eq!(traj.samples[0].x, 0.0);
        assert_eq!(traj.samples[1].x, 1.0);
    }

    #[test]
    fn synthesize_appends_exact_end_sample() {
        let via = ViaSequence::new(vec![
            ViaPoint::at_rest(0.0, 0.0, 0.95),
            ViaPoint::at_rest(1.0, 0.0, 1.0),
        ])
        .unwrap();
        let traj = synthesize(&via, 0.1).unwrap();
        // Samples at 0.0..0.9 plus the appended end state.
        assert_eq!(traj.len(), 11);
        let last = traj.samples.last().unwrap();
        assert_eq!(last.t, 10);
        assert!((last.x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn stationary_sequence_stays_put() {
        let via = ViaSequence::new(vec![
            ViaPoint::at_rest(3.0, 4.0, 1.0),
            ViaPoint::at_rest(3.0, 4.0, 1.0),
        ])
        .unwrap();
        let traj = synthesize(&via, 0.25).unwrap();
        for s in &traj.samples {
            assert_eq!((s.x, s.y), (3.0, 4.0));
        }
    }

    #[test]
    fn state_at_clamps_past_the_end() {
        let via = ViaSequence::new(vec![
            ViaPoint::at_rest(0.0, 0.0, 1.0),
            ViaPoint::at_rest(1.0, 0.0, 1.0),
        ])
        .unwrap();
        let traj = synthesize(&via, 0.1).unwrap();
        assert_eq!(traj.state_at(9999), traj.samples.last().unwrap());
    }

    #[test]
    fn trajectory_csv_round_trip() {
        let via = ViaSequence::new(vec![
            ViaPoint::at_rest(0.0, 0.0, 1.0),
            ViaPoint::at_rest(1.0, 2.0, 1.0),
        ])
        .unwrap();
        let traj = synthesize(&via, 0.2).unwrap();
        let parsed = Trajectory::from_csv(&traj.to_csv()).unwrap();
        assert_eq!(parsed, traj);
    }

    prop_compose! {
        fn random_via_pair()(
            x0 in -10.0f64..10.0, y0 in -10.0f64..10.0,
            x1 in -10.0f64..10.0, y1 in -10.0f64..10.0,
            vx0 in -2.0f64..2.0, vy0 in -2.0f64..2.0,
            vx1 in -2.0f64..2.0, vy1 in -2.0f64..2.0,
            ax0 in -5.0f64..5.0, ay0 in -5.0f64..5.0,
            ax1 in -5.0f64..5.0, ay1 in -5.0f64..5.0,
            td in 0.1f64..10.0,
        ) -> (ViaPoint, ViaPoint) {
            (
                ViaPoint { x: x0, y: y0, vx: vx0, vy: vy0, ax: ax0, ay: ay0, td },
                ViaPoint { x: x1, y: y1, vx: vx1, vy: vy1, ax: ax1, ay: ay1, td },
            )
        }
    }

    proptest! {
        #[test]
        fn boundary_conditions_hold((from, to) in random_via_pair()) {
            let seg = segment_coeffs(&from, &to).unwrap();
            for r in boundary_residuals(&seg, &from, &to) {
                prop_assert!(r.abs() < 1e-8, "residual {r}");
            }
        }

        #[test]
        fn velocity_matches_finite_differences(
            (from, to) in random_via_pair(),
            frac in 0.1f64..0.9,
        ) {
            let seg = segment_coeffs(&from, &to).unwrap();
            let t = frac * seg.duration;
            let h = 1e-4 * seg.duration;
            // Five-point central differences on position and velocity.
            let p = |t: f64| seg.eval_unchecked(t).pos.x;
            let v = |t: f64| seg.eval_unchecked(t).vel.x;
            let fd_v = (p(t - 2.0 * h) - 8.0 * p(t - h) + 8.0 * p(t + h) - p(t + 2.0 * h))
                / (12.0 * h);
            let fd_a = (v(t - 2.0 * h) - 8.0 * v(t - h) + 8.0 * v(t + h) - v(t + 2.0 * h))
                / (12.0 * h);
            let s = seg.eval_unchecked(t);
            prop_assert!((fd_v - s.vel.x).abs() < 1e-6, "v fd={} analytic={}", fd_v, s.vel.x);
            prop_assert!((fd_a - s.acc.x).abs() < 1e-6, "a fd={} analytic={}", fd_a, s.acc.x);
        }

        #[test]
        fn concatenation_is_continuous((a, b) in random_via_pair(), (c, _) in random_via_pair()) {
            // Chain a -> b -> c; the joint is the shared via point b.
            let b_mid = ViaPoint { td: c.td, ..b };
            let left = segment_coeffs(&a, &b_mid).unwrap();
            let right = segment_coeffs(&b_mid, &c).unwrap();
            let end = left.eval(left.duration).unwrap();
            let start = right.eval(0.0).unwrap();
            prop_assert!((end.pos.x - start.pos.x).abs() < 1e-9);
            prop_assert!((end.pos.y - start.pos.y).abs() < 1e-9);
            prop_assert!((end.vel.x - start.vel.x).abs() < 1e-9);
            prop_assert!((end.vel.y - start.vel.y).abs() < 1e-9);
            prop_assert!((end.acc.x - start.acc.x).abs() < 1e-9);
            prop_assert!((end.acc.y - start.acc.y).abs() < 1e-9);
        }

        #[test]
        fn time_reversal_symmetry((from, to) in random_via_pair(), frac in 0.0f64..1.0) {
            let seg = segment_coeffs(&from, &to).unwrap();
            let rev_from = ViaPoint { vx: -to.vx, vy: -to.vy, ..to };
            let rev_to = ViaPoint { vx: -from.vx, vy: -from.vy, td: 0.0, ..from };
            let rev = segment_coeffs(&rev_from, &rev_to).unwrap();
            let t = frac * seg.duration;
            let fwd = seg.eval(t).unwrap();
            let bwd = rev.eval((seg.duration - t).max(0.0)).unwrap();
            prop_assert!((fwd.pos.x - bwd.pos.x).abs() < 1e-8);
            prop_assert!((fwd.pos.y - bwd.pos.y).abs() < 1e-8);
        }
    }
}
