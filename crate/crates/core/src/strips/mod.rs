//! STRIPS-subset planning support for discrete goal recognition: PDDL
//! parsing, grounding, plan application/rollout, and a top-k optimal plan
//! enumerator.

pub mod fixtures;
mod ground;
mod parse;
mod search;

pub use ground::{apply, observed_states, rollout, GroundAction, GroundProblem};
pub use parse::{parse_domain, parse_problem, ActionSchema, DomainModel, PredicateSchema};
pub use search::{optimal_prefix, topk_plans, validate_plan, Plan};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StripsError {
    #[error("parse error at {location}: {msg}")]
    Parse { location: String, msg: String },
    #[error("unsupported construct `{construct}` at {location}")]
    UnsupportedFeature { construct: String, location: String },
    #[error("type error: {msg}")]
    Type { msg: String },
    #[error("action `{action}` is not applicable{}", step.map(|s| format!(" at step {s}")).unwrap_or_default())]
    InapplicableAction { action: String, step: Option<usize> },
    #[error("goal is unreachable from the initial state")]
    Unsolvable,
}

/// Interned fact index into a problem's fact universe.
pub type FactId = u32;

/// A set of ground facts in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundState {
    facts: Vec<FactId>,
}

impl GroundState {
    pub fn new(mut facts: Vec<FactId>) -> Self {
        facts.sort_unstable();
        facts.dedup();
        Self { facts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn facts(&self) -> &[FactId] {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn contains(&self, fact: FactId) -> bool {
        self.facts.binary_search(&fact).is_ok()
    }

    pub fn is_superset_of(&self, other: &GroundState) -> bool {
        other.facts.iter().all(|f| self.contains(*f))
    }

    /// |self symmetric-difference other|, by a sorted merge walk.
    pub fn symmetric_difference_size(&self, other: &GroundState) -> usize {
        let (a, b) = (&self.facts, &other.facts);
        let (mut i, mut j, mut n) = (0usize, 0usize, 0usize);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    n += 1;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    n += 1;
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        n + (a.len() - i) + (b.len() - j)
    }

    /// `(self minus deletes) union adds`.
    pub fn apply_delta(&self, adds: &[FactId], deletes: &[FactId]) -> GroundState {
        let mut facts: Vec<FactId> = self
            .facts
            .iter()
            .copied()
            .filter(|f| !deletes.contains(f))
            .collect();
        facts.extend_from_slice(adds);
        GroundState::new(facts)
    }
}

/// States visited by a plan, starting at the initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateTrajectory {
    pub states: Vec<GroundState>,
}

impl StateTrajectory {
    /// State matched against observation index `t`: observation 0 pairs
    /// with the first post-action state; indices past the end clamp to the
    /// final state.
    pub fn state_for_observation(&self, t: usize) -> &GroundState {
        let idx = (t + 1).min(self.states.len() - 1);
        &self.states[idx]
    }

    pub fn final_state(&self) -> &GroundState {
        self.states.last().expect("trajectory has at least the initial state")
    }

    pub fn satisfies(&self, goal: &GroundState) -> bool {
        self.final_state().is_superset_of(goal)
    }
}
