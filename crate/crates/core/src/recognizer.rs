//! Online goal inference over precomputed hypothesis banks.
//!
//! Each goal hypothesis carries k precomputed trajectories. An observation
//! at timestamp `t` is compared against each trajectory's state at `t`; the
//! per-goal likelihood is `1 - exp(-1 / d_mean)` averaged over the k
//! trajectories, and the posterior is the prior-weighted normalization of
//! those likelihoods. Updates keep running distance sums, so one update
//! costs O(goals x k) regardless of how many observations came before —
//! and no code path here can reach a planner.

use thiserror::Error;

use crate::quintic::{TimedState, Trajectory};
use crate::strips::{GroundState, StateTrajectory};

/// Probability floor used for spread counting: goals within this of the
/// max probability count as tied.
pub const SPREAD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RecognizerError {
    #[error("observation stream is empty")]
    EmptyObservation,
    #[error("out-of-order observation: timestamp {new} after {last}")]
    OutOfOrder { last: usize, new: usize },
    #[error("invalid hypothesis bank: {msg}")]
    InvalidBank { msg: String },
}

/// A timestamped observation of the agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation<O> {
    pub value: O,
    pub t: usize,
}

impl<O> Observation<O> {
    pub fn new(value: O, t: usize) -> Self {
        Self { value, t }
    }
}

/// Hypothesis trajectories indexable by an observation timestamp.
pub trait IndexedStates {
    type State;
    /// State compared against an observation at timestamp `t`; timestamps
    /// past the end clamp to the final (goal) state.
    fn state_at_time(&self, t: usize) -> &Self::State;
}

impl IndexedStates for Trajectory {
    type State = TimedState;
    fn state_at_time(&self, t: usize) -> &TimedState {
        self.state_at(t)
    }
}

impl IndexedStates for StateTrajectory {
    type State = GroundState;
    fn state_at_time(&self, t: usize) -> &GroundState {
        self.state_for_observation(t)
    }
}

/// Spatial distance over positions only; velocities do not contribute.
pub fn euclid_continuous(a: &TimedState, b: &TimedState) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

/// Square root of the symmetric-difference cardinality of two fact sets.
pub fn euclid_discrete(a: &GroundState, b: &GroundState) -> f64 {
    (a.symmetric_difference_size(b) as f64).sqrt()
}

/// `1 - exp(-1 / d_mean)`, with the zero-distance limit defined as 1.
pub fn likelihood_from_mean_distance(d_mean: f64) -> f64 {
    debug_assert!(d_mean >= 0.0);
    if d_mean == 0.0 {
        1.0
    } else {
        1.0 - (-1.0 / d_mean).exp()
    }
}

/// Likelihood of an observation stream under a single trajectory.
pub fn likelihood_single<T, O, D>(
    stream: &[Observation<O>],
    trajectory: &T,
    dist: D,
) -> Result<f64, RecognizerError>
where
    T: IndexedStates,
    D: Fn(&O, &T::State) -> f64,
{
    if stream.is_empty() {
        return Err(RecognizerError::EmptyObservation);
    }
    let total: f64 = stream
        .iter()
        .map(|o| dist(&o.value, trajectory.state_at_time(o.t)))
        .sum();
    Ok(likelihood_from_mean_distance(total / stream.len() as f64))
}

/// Mean of [`likelihood_single`] over a goal's k trajectories.
pub fn likelihood_multi<T, O, D>(
    stream: &[Observation<O>],
    trajectories: &[T],
    dist: D,
) -> Result<f64, RecognizerError>
where
    T: IndexedStates,
    D: Fn(&O, &T::State) -> f64,
{
    assert!(!trajectories.is_empty(), "bank entry must hold >= 1 trajectory");
    let mut sum = 0.0;
    for trajectory in trajectories {
        sum += likelihood_single(stream, trajectory, &dist)?;
    }
    Ok(sum / trajectories.len() as f64)
}

/// Per-goal precomputed trajectories with priors.
#[derive(Debug, Clone)]
pub struct HypothesisBank<T> {
    goals: Vec<String>,
    trajectories: Vec<Vec<T>>,
    priors: Vec<f64>,
}

impl<T: IndexedStates> HypothesisBank<T> {
    /// Builds a bank with uniform priors.
    pub fn new(goals: Vec<String>, trajectories: Vec<Vec<T>>) -> Result<Self, RecognizerError> {
        let n = goals.len();
        Self::with_priors(goals, trajectories, vec![1.0 / n as f64; n])
    }

    pub fn with_priors(
        goals: Vec<String>,
        trajectories: Vec<Vec<T>>,
        priors: Vec<f64>,
    ) -> Result<Self, RecognizerError> {
        if goals.is_empty() {
            return Err(RecognizerError::InvalidBank {
                msg: "bank needs at least one goal".into(),
            });
        }
        if goals.len() != trajectories.len() || goals.len() != priors.len() {
            return Err(RecognizerError::InvalidBank {
                msg: "goals, trajectories and priors must align".into(),
            });
        }
        if trajectories.iter().any(|t| t.is_empty()) {
            return Err(RecognizerError::InvalidBank {
                msg: "every goal needs at least one trajectory".into(),
            });
        }
        if priors.iter().any(|&p| p <= 0.0) {
            return Err(RecognizerError::InvalidBank {
                msg: "priors must be positive".into(),
            });
        }
        let sum: f64 = priors.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(RecognizerError::InvalidBank {
                msg: format!("priors sum to {sum}, expected 1"),
            });
        }
        Ok(Self {
            goals,
            trajectories,
            priors,
        })
    }

    pub fn goal_count(&self) -> usize {
        self.goals.len()
    }

    pub fn goals(&self) -> &[String] {
        &self.goals
    }

    pub fn trajectories(&self, goal: usize) -> &[T] {
        &self.trajectories[goal]
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }
}

/// Posterior over goal hypotheses after some number of observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Posterior {
    /// Normalized probabilities, one per goal.
    pub probabilities: Vec<f64>,
    /// Raw per-goal likelihoods before prior weighting and normalization.
    pub likelihoods: Vec<f64>,
    pub argmax: usize,
    pub argmax_label: String,
    /// Number of goals within [`SPREAD_TOLERANCE`] of the max probability.
    pub spread: usize,
}

/// Incremental recognition state over one observation stream.
///
/// The bank is shared and immutable (borrowed or `Arc`-owned); the session
/// owns only its running distance sums.
pub struct Session<B, T: IndexedStates, O, D>
where
    B: std::borrow::Borrow<HypothesisBank<T>>,
    D: Fn(&O, &T::State) -> f64,
{
    bank: B,
    dist: D,
    /// Running distance sums, indexed [goal][trajectory].
    sums: Vec<Vec<f64>>,
    count: usize,
    last_t: Option<usize>,
    _marker: std::marker::PhantomData<(T, O)>,
}

impl<B, T: IndexedStates, O, D> Session<B, T, O, D>
where
    B: std::borrow::Borrow<HypothesisBank<T>>,
    D: Fn(&O, &T::State) -> f64,
{
    pub fn new(bank: B, dist: D) -> Self {
        let sums = bank
            .borrow()
            .trajectories
            .iter()
            .map(|ts| vec![0.0; ts.len()])
            .collect();
        Self {
            bank,
            dist,
            sums,
            count: 0,
            last_t: None,
            _marker: std::marker::PhantomData,
        }
    }

    pub fn observation_count(&self) -> usize {
        self.count
    }

    pub fn bank(&self) -> &HypothesisBank<T> {
        self.bank.borrow()
    }

    /// Folds one observation into the running sums and returns the new
    /// posterior. O(goals x k); earlier observations are never rescanned.
    pub fn update(&mut self, obs: &Observation<O>) -> Result<Posterior, RecognizerError> {
        if let Some(last) = self.last_t {
            if obs.t <= last {
                return Err(RecognizerError::OutOfOrder { last, new: obs.t });
            }
        }
        for (g, trajectories) in self.bank.borrow().trajectories.iter().enumerate() {
            for (j, trajectory) in trajectories.iter().enumerate() {
                self.sums[g][j] += (self.dist)(&obs.value, trajectory.state_at_time(obs.t));
            }
        }
        self.count += 1;
        self.last_t = Some(obs.t);
        Ok(self.posterior())
    }

    /// Posterior from the current sums (requires at least one update).
    pub fn posterior(&self) -> Posterior {
        assert!(self.count > 0, "posterior requires at least one observation");
        let n = self.count as f64;
        let likelihoods: Vec<f64> = self
            .sums
            .iter()
            .map(|per_traj| {
                per_traj
                    .iter()
                    .map(|&s| likelihood_from_mean_distance(s / n))
                    .sum::<f64>()
                    / per_traj.len() as f64
            })
            .collect();
        let bank = self.bank.borrow();
        let weighted: Vec<f64> = likelihoods
            .iter()
            .zip(&bank.priors)
            .map(|(l, p)| l * p)
            .collect();
        let norm: f64 = weighted.iter().sum();
        let probabilities: Vec<f64> = weighted.iter().map(|w| w / norm).collect();

        let mut argmax = 0usize;
        for (i, &p) in probabilities.iter().enumerate() {
            if p > probabilities[argmax] {
                argmax = i;
            }
        }
        let max = probabilities[argmax];
        let spread = probabilities
            .iter()
            .filter(|&&p| p >= max - SPREAD_TOLERANCE)
            .count();
        Posterior {
            probabilities,
            likelihoods,
            argmax,
            argmax_label: bank.goals[argmax].clone(),
            spread,
        }
    }
}

/// Folds a whole stream and returns the final argmax goal label.
pub fn recognize<T, O, D>(
    bank: &HypothesisBank<T>,
    stream: &[Observation<O>],
    dist: D,
) -> Result<String, RecognizerError>
where
    T: IndexedStates,
    D: Fn(&O, &T::State) -> f64,
{
    if stream.is_empty() {
        return Err(RecognizerError::EmptyObservation);
    }
    let mut session = Session::new(bank, dist);
    let mut last = None;
    for obs in stream {
        last = Some(session.update(obs)?);
    }
    Ok(last.expect("stream is nonempty").argmax_label)
}

/// Long-format posterior history CSV: `t,goal,probability`.
pub fn posterior_history_to_csv(history: &[(usize, Posterior)], goals: &[String]) -> String {
    let mut out = String::from("t,goal,probability\n");
    for (t, posterior) in history {
        for (g, p) in posterior.probabilities.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", t, goals[g], p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quintic::STANDARD_DT_S;
    use proptest::prelude::*;

    fn state(x: f64, y: f64, t: usize) -> TimedState {
        TimedState { x, y, vx: 0.0, vy: 0.0, t }
    }

    /// Straight-line trajectory along y = `y0` starting at x = 0, step 1.
    fn line_trajectory(y0: f64, len: usize) -> Trajectory {
        Trajectory {
            samples: (0..len).map(|t| state(t as f64, y0, t)).collect(),
            dt: STANDARD_DT_S,
        }
    }

    #[test]
    fn banks_are_shareable_across_threads() {
        fn assert_sync<T: Sync + Send>() {}
        assert_sync::<HypothesisBank<Trajectory>>();
        assert_sync::<HypothesisBank<crate::strips::StateTrajectory>>();
    }

    #[test]
    fn likelihood_at_unit_mean_distance() {
        let got = likelihood_from_mean_distance(1.0);
        assert!((got - 0.632121).abs() < 1e-6, "got {got}");
    }

    #[test]
    fn zero_distance_limit_is_one() {
        assert_eq!(likelihood_from_mean_distance(0.0), 1.0);
        let traj = line_trajectory(0.0, 5);
        let stream: Vec<Observation<TimedState>> = traj
            .samples
            .iter()
            .map(|s| Observation::new(*s, s.t))
            .collect();
        let l = likelihood_single(&stream, &traj, euclid_continuous).unwrap();
        assert_eq!(l, 1.0);
    }

    #[test]
    fn large_mean_distance_first_order() {
        let l = likelihood_from_mean_distance(1e6);
        assert!(l > 0.0);
        assert!((l - 1e-6).abs() < 1e-11, "got {l}");
    }

    #[test]
    fn empty_stream_is_an_error() {
        let traj = line_trajectory(0.0, 3);
        let stream: Vec<Observation<TimedState>> = Vec::new();
        assert!(matches!(
            likelihood_single(&stream, &traj, euclid_continuous),
            Err(RecognizerError::EmptyObservation)
        ));
    }

    #[test]
    fn multi_with_one_trajectory_equals_single() {
        let traj = line_trajectory(1.0, 6);
        let stream: Vec<Observation<TimedState>> =
            (0..4).map(|t| Observation::new(state(t as f64, 0.0, t), t)).collect();
        let single = likelihood_single(&stream, &traj, euclid_continuous).unwrap();
        let multi =
            likelihood_multi(&stream, std::slice::from_ref(&traj), euclid_continuous).unwrap();
        assert_eq!(single, multi);
    }

    #[test]
    fn multi_is_the_mean_over_trajectories() {
        // One trajectory at distance 0, one at constant distance 1.
        let near = line_trajectory(0.0, 6);
        let far = line_trajectory(1.0, 6);
        let stream: Vec<Observation<TimedState>> =
            (0..4).map(|t| Observation::new(state(t as f64, 0.0, t), t)).collect();
        let multi = likelihood_multi(&stream, &[near, far], euclid_continuous).unwrap();
        let expected = (1.0 + likelihood_from_mean_distance(1.0)) / 2.0;
        assert!((multi - expected).abs() < 1e-12);
    }

    #[test]
    fn multi_mean_of_unit_and_vanishing_likelihoods() {
        // One exact-match trajectory, one at enormous distance: the mean
        // approaches (1 + 0) / 2.
        let near = line_trajectory(0.0, 6);
        let far = line_trajectory(1e9, 6);
        let stream: Vec<Observation<TimedState>> =
            (0..4).map(|t| Observation::new(state(t as f64, 0.0, t), t)).collect();
        let multi = likelihood_multi(&stream, &[near, far], euclid_continuous).unwrap();
        assert!((multi - 0.5).abs() < 1e-6, "multi {multi}");
    }

    #[test]
    fn identical_mean_distances_average_to_same_value() {
        let a = line_trajectory(1.0, 8);
        let b = line_trajectory(-1.0, 8);
        let stream: Vec<Observation<TimedState>> =
            (0..5).map(|t| Observation::new(state(t as f64, 0.0, t), t)).collect();
        let multi = likelihood_multi(&stream, &[a, b], euclid_continuous).unwrap();
        assert!((multi - 0.632121).abs() < 1e-6);
    }

    #[test]
    fn worked_two_goal_posterior() {
        // Goal 1 matches the observations exactly; goal 2 sits at constant
        // offset 1, so the mean distances are 0 and 1.
        let bank = HypothesisBank::new(
            vec!["g1".into(), "g2".into()],
            vec![vec![line_trajectory(0.0, 8)], vec![line_trajectory(1.0, 8)]],
        )
        .unwrap();
        let mut session = Session::new(&bank, euclid_continuous);
        let mut posterior = None;
        for t in 0..4 {
            posterior = Some(
                session
                    .update(&Observation::new(state(t as f64, 0.0, t), t))
                    .unwrap(),
            );
        }
        let posterior = posterior.unwrap();
        assert!((posterior.probabilities[0] - 0.6127).abs() < 1e-4);
        assert!((posterior.probabilities[1] - 0.3873).abs() < 1e-4);
        assert_eq!(posterior.argmax, 0);
        assert_eq!(posterior.argmax_label, "g1");
        assert_eq!(posterior.spread, 1);
    }

    #[test]
    fn symmetric_banks_split_evenly() {
        let bank = HypothesisBank::new(
            vec!["up".into(), "down".into()],
            vec![vec![line_trajectory(1.0, 8)], vec![line_trajectory(-1.0, 8)]],
        )
        .unwrap();
        let mut session = Session::new(&bank, euclid_continuous);
        let posterior = session
            .update(&Observation::new(state(0.0, 0.0, 0), 0))
            .unwrap();
        assert!((posterior.probabilities[0] - 0.5).abs() < 1e-12);
        assert_eq!(posterior.spread, 2);
        assert_eq!(posterior.argmax, 0); // tie broken toward the lower index
    }

    #[test]
    fn out_of_order_observation_is_rejected() {
        let bank = HypothesisBank::new(
            vec!["g".into()],
            vec![vec![line_trajectory(0.0, 8)]],
        )
        .unwrap();
        let mut session = Session::new(&bank, euclid_continuous);
        session.update(&Observation::new(state(0.0, 0.0, 3), 3)).unwrap();
        assert!(matches!(
            session.update(&Observation::new(state(1.0, 0.0, 3), 3)),
            Err(RecognizerError::OutOfOrder { .. })
        ));
    }

    #[test]
    fn single_goal_always_wins() {
        let bank = HypothesisBank::new(
            vec!["only".into()],
            vec![vec![line_trajectory(5.0, 4)]],
        )
        .unwrap();
        let stream = vec![Observation::new(state(9.0, -4.0, 0), 0)];
        assert_eq!(recognize(&bank, &stream, euclid_continuous).unwrap(), "only");
    }

    #[test]
    fn observations_along_a_bank_line_pick_that_goal() {
        let bank = HypothesisBank::new(
            vec!["g1".into(), "g2".into(), "g3".into()],
            vec![
                vec![line_trajectory(-2.0, 10)],
                vec![line_trajectory(0.0, 10)],
                vec![line_trajectory(2.0, 10)],
            ],
        )
        .unwrap();
        let stream: Vec<Observation<TimedState>> = (0..6)
            .map(|t| Observation::new(state(t as f64, 0.05, t), t))
            .collect();
        assert_eq!(recognize(&bank, &stream, euclid_continuous).unwrap(), "g2");
        // Brute-force check of the full posterior path.
        let l1 = likelihood_single(&stream, &bank.trajectories(0)[0], euclid_continuous).unwrap();
        let l2 = likelihood_single(&stream, &bank.trajectories(1)[0], euclid_continuous).unwrap();
        let l3 = likelihood_single(&stream, &bank.trajectories(2)[0], euclid_continuous).unwrap();
        assert!(l2 > l1 && l2 > l3);
    }

    #[test]
    fn timestamps_past_trajectory_end_clamp_to_goal_state() {
        let traj = line_trajectory(0.0, 3); // states at x = 0, 1, 2
        let stream = vec![Observation::new(state(2.0, 0.0, 9), 9)];
        let l = likelihood_single(&stream, &traj, euclid_continuous).unwrap();
        assert_eq!(l, 1.0);
    }

    #[test]
    fn euclid_continuous_examples() {
        assert_eq!(euclid_continuous(&state(1.0, 2.0, 0), &state(1.0, 2.0, 5)), 0.0);
        assert_eq!(euclid_continuous(&state(0.0, 0.0, 0), &state(3.0, 4.0, 0)), 5.0);
        let mut a = state(1.0, 1.0, 0);
        let b = a;
        a.vx = 9.0;
        assert_eq!(euclid_continuous(&a, &b), 0.0);
    }

    #[test]
    fn euclid_discrete_examples() {
        let gs = |facts: &[u32]| GroundState::new(facts.to_vec());
        assert_eq!(euclid_discrete(&gs(&[1, 2]), &gs(&[1, 2])), 0.0);
        assert!((euclid_discrete(&gs(&[1, 2]), &gs(&[2, 3])) - 2.0f64.sqrt()).abs() < 1e-15);
        assert!((euclid_discrete(&gs(&[1, 2]), &gs(&[3, 4, 5])) - 5.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn monotone_discrimination_in_mean_distance() {
        // Lower d1 with d2 fixed never lowers P(g1).
        let p = |d1: f64, d2: f64| {
            let l1 = likelihood_from_mean_distance(d1);
            let l2 = likelihood_from_mean_distance(d2);
            l1 / (l1 + l2)
        };
        let mut prev = p(5.0, 1.0);
        for d1 in [4.0, 3.0, 2.0, 1.0, 0.5, 0.1, 0.0] {
            let cur = p(d1, 1.0);
            assert!(cur >= prev - 1e-15, "d1={d1} gave {cur} < {prev}");
            prev = cur;
        }
    }

    proptest! {
        #[test]
        fn posterior_normalizes_and_stays_positive(
            offsets in proptest::collection::vec(-5.0f64..5.0, 2..6),
            steps in 1usize..8,
        ) {
            let goals: Vec<String> = (0..offsets.len()).map(|i| format!("g{i}")).collect();
            let trajs: Vec<Vec<Trajectory>> = offsets
                .iter()
                .map(|&y| vec![line_trajectory(y, 10)])
                .collect();
            let bank = HypothesisBank::new(goals, trajs).unwrap();
            let mut session = Session::new(&bank, euclid_continuous);
            for t in 0..steps {
                let posterior = session
                    .update(&Observation::new(state(t as f64, 0.3, t), t))
                    .unwrap();
                let sum: f64 = posterior.probabilities.iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-9);
                prop_assert!(posterior.probabilities.iter().all(|&p| p > 0.0));
            }
        }

        #[test]
        fn incremental_equals_batch(
            offsets in proptest::collection::vec(-5.0f64..5.0, 2..5),
            xs in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..12),
        ) {
            let goals: Vec<String> = (0..offsets.len()).map(|i| format!("g{i}")).collect();
            let trajs: Vec<Vec<Trajectory>> = offsets
                .iter()
                .map(|&y| vec![line_trajectory(y, 6), line_trajectory(-y, 9)])
                .collect();
            let bank = HypothesisBank::new(goals, trajs).unwrap();
            let stream: Vec<Observation<TimedState>> = xs
                .iter()
                .enumerate()
                .map(|(t, &(x, y))| Observation::new(state(x, y, t), t))
                .collect();

            let mut session = Session::new(&bank, euclid_continuous);
            for (i, obs) in stream.iter().enumerate() {
                let incremental = session.update(obs).unwrap();
                // Batch recomputation over the prefix.
                for g in 0..bank.goal_count() {
                    let batch = likelihood_multi(
                        &stream[..=i],
                        bank.trajectories(g),
                        euclid_continuous,
                    ).unwrap();
                    prop_assert!((incremental.likelihoods[g] - batch).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn batch_likelihood_is_order_invariant(
            xs in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..10),
            swap_a in 0usize..10,
            swap_b in 0usize..10,
        ) {
            let traj = line_trajectory(0.5, 12);
            let stream: Vec<Observation<TimedState>> = xs
                .iter()
                .enumerate()
                .map(|(t, &(x, y))| Observation::new(state(x, y, t), t))
                .collect();
            let mut permuted = stream.clone();
            let (a, b) = (swap_a % stream.len(), swap_b % stream.len());
            permuted.swap(a, b);
            let l1 = likelihood_single(&stream, &traj, euclid_continuous).unwrap();
            let l2 = likelihood_single(&permuted, &traj, euclid_continuous).unwrap();
            prop_assert!((l1 - l2).abs() < 1e-15);
        }

        #[test]
        fn uniform_prior_scaling_preserves_argmax(
            offsets in proptest::collection::vec(-5.0f64..5.0, 2..5),
        ) {
            let goals: Vec<String> = (0..offsets.len()).map(|i| format!("g{i}")).collect();
            let trajs: Vec<Vec<Trajectory>> = offsets
                .iter()
                .map(|&y| vec![line_trajectory(y, 8)])
                .collect();
            let bank = HypothesisBank::new(goals.clone(), trajs.clone()).unwrap();
            let stream: Vec<Observation<TimedState>> =
                (0..4).map(|t| Observation::new(state(t as f64, 0.7, t), t)).collect();

            let mut s1 = Session::new(&bank, euclid_continuous);
            let mut p1 = None;
            for obs in &stream { p1 = Some(s1.update(obs).unwrap()); }

            // Same uniform prior expressed explicitly.
            let n = goals.len() as f64;
            let bank2 = HypothesisBank::with_priors(goals, trajs, vec![1.0 / n; offsets.len()]).unwrap();
            let mut s2 = Session::new(&bank2, euclid_continuous);
            let mut p2 = None;
            for obs in &stream { p2 = Some(s2.update(obs).unwrap()); }

            prop_assert_eq!(p1.unwrap().argmax, p2.unwrap().argmax);
        }
    }
}
