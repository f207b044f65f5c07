//! Top-k optimal plan enumeration by best-first search over loop-free
//! paths in the state-transition graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::ground::GroundProblem;
use super::{GroundState, StripsError};
use crate::instrument;

/// A validated plan: action indices into the problem plus its unit cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub actions: Vec<usize>,
    pub cost: usize,
}

impl Plan {
    /// Newline-separated grounded actions with a `; cost = N` trailer.
    pub fn to_text(&self, problem: &GroundProblem) -> String {
        let mut out = String::new();
        for &idx in &self.actions {
            out.push_str(&problem.actions[idx].name);
            out.push('\n');
        }
        out.push_str(&format!("; cost = {}\n", self.cost));
        out
    }
}

#[derive(PartialEq, Eq)]
struct Node {
    cost: usize,
    actions: Vec<usize>,
    state: GroundState,
    visited: Vec<GroundState>,
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Cost first, then the action sequence for a deterministic order.
        self.cost
            .cmp(&other.cost)
            .then_with(|| self.actions.cmp(&other.actions))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumerates up to `k` distinct plans reaching `goal`, cheapest first.
///
/// Plans whose state sequence would revisit a state are excluded, which
/// makes the plan space finite. If fewer than `k` loop-free plans exist,
/// all of them are returned.
pub fn topk_plans(
    problem: &GroundProblem,
    goal: &GroundState,
    k: usize,
) -> Result<Vec<Plan>, StripsError> {
    assert!(k >= 1, "k must be at least 1");
    instrument::record_topk_call();

    let mut plans: Vec<Plan> = Vec::new();
    let mut heap: BinaryHeap<Reverse<Node>> = BinaryHeap::new();
    heap.push(Reverse(Node {
        cost: 0,
        actions: Vec::new(),
        state: problem.init.clone(),
        visited: vec![problem.init.clone()],
    }));

    while let Some(Reverse(node)) = heap.pop() {
        if node.state.is_superset_of(goal) {
            plans.push(Plan {
                actions: node.actions.clone(),
                cost: node.cost,
            });
            if plans.len() >= k {
                break;
            }
            // A goal state may still lead to further, longer plans.
        }
        for (idx, action) in problem.actions.iter().enumerate() {
            if action.preconditions.iter().any(|p| !node.state.contains(*p)) {
                continue;
            }
            let next = node.state.apply_delta(&action.adds, &action.deletes);
            if node.visited.contains(&next) {
                continue;
            }
            let mut actions = node.actions.clone();
            actions.push(idx);
            let mut visited = node.visited.clone();
            visited.push(next.clone());
            heap.push(Reverse(Node {
                cost: node.cost + 1,
                actions,
                state: next,
                visited,
            }));
        }
    }

    if plans.is_empty() {
        return Err(StripsError::Unsolvable);
    }
    Ok(plans)
}

/// Keeps only the optimal-cost prefix of a nondecreasing plan list.
pub fn optimal_prefix(plans: Vec<Plan>) -> Vec<Plan> {
    match plans.first().map(|p| p.cost) {
        Some(best) => plans.into_iter().take_while(|p| p.cost == best).collect(),
        None => plans,
    }
}

/// Re-validates a plan by rollout and checks goal achievement.
pub fn validate_plan(
    problem: &GroundProblem,
    plan: &Plan,
    goal: &GroundState,
) -> Result<bool, StripsError> {
    let trajectory = super::ground::rollout(problem, &plan.actions)?;
    Ok(trajectory.satisfies(goal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strips::ground::{apply as apply_action, observed_states, rollout};
    use crate::strips::{parse_domain, parse_problem};

    use crate::strips::fixtures::{BLOCKS_2_STACK, BLOCKS_DOMAIN};

    fn blocks2() -> crate::strips::GroundProblem {
        let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
        parse_problem(BLOCKS_2_STACK, &domain).unwrap()
    }

    /// Exhaustive breadth-first enumeration of loop-free goal-reaching
    /// plans, ordered by (cost, action sequence). Independent of the
    /// heap-based search above.
    pub(crate) fn bfs_enumerate(
        problem: &crate::strips::GroundProblem,
        goal: &GroundState,
        max_plans: usize,
        max_depth: usize,
    ) -> Vec<Plan> {
        let mut plans = Vec::new();
        let mut frontier = vec![(problem.init.clone(), Vec::<usize>::new(), vec![problem.init.clone()])];
        for depth in 0..=max_depth {
            let mut next_frontier = Vec::new();
            for (state, actions, _visited) in &frontier {
                if state.is_superset_of(goal) {
                    plans.push(Plan { actions: actions.clone(), cost: depth });
                }
            }
            if plans.len() >= max_plans {
                break;
            }
            for (state, actions, visited) in frontier {
                for (idx, action) in problem.actions.iter().enumerate() {
                    if action.preconditions.iter().any(|p| !state.contains(*p)) {
                        continue;
                    }
                    let next = state.apply_delta(&action.adds, &action.deletes);
                    if visited.contains(&next) {
                        continue;
                    }
                    let mut acts = actions.clone();
                    acts.push(idx);
                    let mut vis = visited.clone();
                    vis.push(next.clone());
                    next_frontier.push((next, acts, vis));
                }
            }
            // Deterministic within a depth level.
            next_frontier.sort_by(|a, b| a.1.cmp(&b.1));
            frontier = next_frontier;
        }
        plans.truncate(max_plans);
        plans
    }

    #[test]
    fn two_block_fact_universe_matches_hand_count() {
        let problem = blocks2();
        // on: 4, ontable: 2, clear: 2, holding: 2, handempty: 1.
        assert_eq!(problem.fact_count(), 11);
    }

    #[test]
    fn stack_action_has_expected_precondition() {
        let problem = blocks2();
        let stack = problem.action_by_name("(stack a b)").unwrap();
        let pre: Vec<&str> = stack
            .preconditions
            .iter()
            .map(|&f| problem.fact_names[f as usize].as_str())
            .collect();
        assert_eq!(pre, vec!["(clear b)", "(holding a)"]);
    }

    #[test]
    fn empty_init_grounds_to_empty_state() {
        let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
        let text = r#"
            (define (problem empty)
              (:domain blocksworld)
              (:objects a - block)
              (:init)
              (:goal (ontable a)))
        "#;
        let problem = parse_problem(text, &domain).unwrap();
        assert!(problem.init.is_empty());
    }

    #[test]
    fn undeclared_goal_object_is_a_type_error() {
        let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
        let text = r#"
            (define (problem bad)
              (:domain blocksworld)
              (:objects a - block)
              (:init (ontable a))
              (:goal (on a z)))
        "#;
        assert!(matches!(
            parse_problem(text, &domain),
            Err(StripsError::Type { .. })
        ));
    }

    #[test]
    fn unsupported_construct_is_named() {
        let text = r#"
            (define (domain bad)
              (:predicates (p) (q))
              (:action choice
                :parameters ()
                :precondition (or (p) (q))
                :effect (p)))
        "#;
        match parse_domain(text) {
            Err(StripsError::UnsupportedFeature { construct, .. }) => {
                assert_eq!(construct, "or");
            }
            other => panic!("expected UnsupportedFeature, got {other:?}"),
        }
    }

    #[test]
    fn pick_up_matches_hand_application() {
        let problem = blocks2();
        let pick_up_a = problem.action_by_name("(pick-up a)").unwrap();
        let next = apply_action(&problem.init, pick_up_a).unwrap();
        let names: Vec<&str> = next
            .facts()
            .iter()
            .map(|&f| problem.fact_names[f as usize].as_str())
            .collect();
        assert_eq!(names, vec!["(clear b)", "(holding a)", "(ontable b)"]);
    }

    #[test]
    fn apply_with_unmet_precondition_fails() {
        let problem = blocks2();
        let stack = problem.action_by_name("(stack a b)").unwrap();
        assert!(matches!(
            apply_action(&problem.init, stack),
            Err(StripsError::InapplicableAction { .. })
        ));
    }

    #[test]
    fn apply_set_algebra_identity() {
        let problem = blocks2();
        let pick_up_a = problem.action_by_name("(pick-up a)").unwrap();
        let s = &problem.init;
        let next = apply_action(s, pick_up_a).unwrap();
        let deletes_present = pick_up_a.deletes.iter().filter(|f| s.contains(**f)).count();
        let adds_new = pick_up_a
            .adds
            .iter()
            .filter(|f| !(s.contains(**f) && !pick_up_a.deletes.contains(f)))
            .count();
        assert_eq!(next.len(), s.len() - deletes_present + adds_new);
    }

    #[test]
    fn empty_plan_rollout_is_initial_state() {
        let problem = blocks2();
        let traj = rollout(&problem, &[]).unwrap();
        assert_eq!(traj.states, vec![problem.init.clone()]);
    }

    #[test]
    fn rollout_reports_failing_step_index() {
        let problem = blocks2();
        let pick_a = *problem
            .parse_action_sequence("(pick-up a)\n(pick-up b)")
            .unwrap()
            .first()
            .unwrap();
        let pick_b = problem.parse_action_sequence("(pick-up b)").unwrap()[0];
        // Second pick-up fails: hand is no longer empty.
        match rollout(&problem, &[pick_a, pick_b]) {
            Err(StripsError::InapplicableAction { step: Some(1), .. }) => {}
            other => panic!("expected step-1 failure, got {other:?}"),
        }
    }

    #[test]
    fn goal_already_satisfied_yields_empty_first_plan() {
        let problem = blocks2();
        let goal = problem.parse_fact_set("(ontable a)").unwrap();
        let plans = topk_plans(&problem, &goal, 3).unwrap();
        assert_eq!(plans[0].cost, 0);
        assert!(plans[0].actions.is_empty());
    }

    #[test]
    fn two_block_stack_goal_optimal_plan() {
        let problem = blocks2();
        let goal = problem.problem_goal().clone();
        let plans = topk_plans(&problem, &goal, 2).unwrap();
        assert_eq!(plans[0].cost, 2);
        let names: Vec<&str> = plans[0]
            .actions
            .iter()
            .map(|&i| problem.actions[i].name.as_str())
            .collect();
        assert_eq!(names, vec!["(pick-up a)", "(stack a b)"]);
        for p in &plans[1..] {
            assert!(p.cost >= 3);
        }
        // Oracle agreement, including how many plans exist at all.
        let oracle = bfs_enumerate(&problem, &goal, 2, 8);
        assert_eq!(
            plans.iter().map(|p| p.cost).collect::<Vec<_>>(),
            oracle.iter().map(|p| p.cost).collect::<Vec<_>>()
        );
    }

    #[test]
    fn topk_plans_all_validate_by_rollout() {
        let problem = blocks2();
        let goal = problem.problem_goal().clone();
        for plan in topk_plans(&problem, &goal, 5).unwrap() {
            assert!(validate_plan(&problem, &plan, &goal).unwrap());
        }
    }

    #[test]
    fn unreachable_goal_is_unsolvable() {
        let problem = blocks2();
        // holding a and handempty can never hold together... but that is a
        // mutex, not statically known; use an honest unreachable: both
        // blocks on each other.
        let goal = problem.parse_fact_set("(on a b) (on b a)").unwrap();
        assert!(matches!(
            topk_plans(&problem, &goal, 1),
            Err(StripsError::Unsolvable)
        ));
    }

    #[test]
    fn observed_states_match_rollout_suffix() {
        let problem = blocks2();
        let actions = problem
            .parse_action_sequence("(pick-up a)\n(stack a b)")
            .unwrap();
        let states = observed_states(&problem, &actions).unwrap();
        let traj = rollout(&problem, &actions).unwrap();
        assert_eq!(states.len(), 2);
        assert_eq!(states[..], traj.states[1..]);
    }

    #[test]
    fn observed_states_of_empty_prefix_is_empty() {
        let problem = blocks2();
        assert!(observed_states(&problem, &[]).unwrap().is_empty());
    }

    #[test]
    fn grounding_is_deterministic() {
        let a = blocks2();
        let b = blocks2();
        assert_eq!(a.fact_names, b.fact_names);
        assert_eq!(
            a.actions.iter().map(|x| &x.name).collect::<Vec<_>>(),
            b.actions.iter().map(|x| &x.name).collect::<Vec<_>>()
        );
    }

    #[test]
    fn optimal_prefix_truncates_at_first_cost_increase() {
        let plans = vec![
            Plan { actions: vec![0, 1], cost: 2 },
            Plan { actions: vec![2, 3], cost: 2 },
            Plan { actions: vec![0, 1, 2, 3], cost: 4 },
        ];
        let kept = optimal_prefix(plans);
        assert_eq!(kept.len(), 2);
    }

    #[test]
    fn apply_with_empty_effects_is_identity() {
        let problem = blocks2();
        let s = &problem.init;
        assert_eq!(s.apply_delta(&[], &[]), *s);
    }

    #[test]
    fn four_step_plan_rolls_out_five_states() {
        use crate::strips::fixtures::{BLOCKS_3_STACK, BLOCKS_DOMAIN};
        let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
        let problem = parse_problem(BLOCKS_3_STACK, &domain).unwrap();
        let actions = problem
            .parse_action_sequence("(pick-up b)\n(stack b c)\n(pick-up a)\n(stack a b)")
            .unwrap();
        let traj = rollout(&problem, &actions).unwrap();
        assert_eq!(traj.states.len(), 5);
        assert!(traj.satisfies(problem.problem_goal()));
        // Half prefix: first ceil(4/2) observed states match the rollout.
        let half = observed_states(&problem, &actions[..2]).unwrap();
        assert_eq!(half[..], traj.states[1..3]);
    }

    #[test]
    fn symmetric_grid_yields_two_equal_cost_optima() {
        use crate::strips::fixtures::{NAV_DOMAIN, NAV_PROBLEM};
        let domain = parse_domain(NAV_DOMAIN).unwrap();
        let problem = parse_problem(NAV_PROBLEM, &domain).unwrap();
        let goal = problem.problem_goal().clone();
        let plans = topk_plans(&problem, &goal, 4).unwrap();
        assert!(plans.len() >= 2);
        assert_eq!(plans[0].cost, 2);
        assert_eq!(plans[1].cost, 2);
        assert_ne!(plans[0].actions, plans[1].actions);
    }

    #[test]
    fn fact_sets_accept_bare_and_conjunction_forms() {
        let problem = blocks2();
        let bare = problem.parse_fact_set("(on a b) (clear a)").unwrap();
        let wrapped = problem.parse_fact_set("(and (on a b) (clear a))").unwrap();
        assert_eq!(bare, wrapped);
        assert_eq!(bare.len(), 2);
        assert!(problem.parse_fact_set("(on a z)").is_err());
    }

    #[test]
    fn plan_text_has_cost_trailer() {
        let problem = blocks2();
        let goal = problem.problem_goal().clone();
        let plan = &topk_plans(&problem, &goal, 1).unwrap()[0];
        let text = plan.to_text(&problem);
        assert!(text.ends_with("; cost = 2\n"));
        assert!(text.starts_with("(pick-up a)\n"));
    }
}
