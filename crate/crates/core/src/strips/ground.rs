//! Grounding: instantiate every type-consistent fact and action, with
//! deterministic lexicographic ordering over canonical names.

use std::collections::HashMap;

use super::parse::{Atom, DomainModel, ProblemSpec, Term};
use super::{FactId, GroundState, StateTrajectory, StripsError};

/// A fully instantiated action.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundAction {
    /// Canonical `(name arg1 arg2)` form.
    pub name: String,
    pub preconditions: Vec<FactId>,
    pub adds: Vec<FactId>,
    pub deletes: Vec<FactId>,
}

/// A grounded planning problem.
#[derive(Debug, Clone)]
pub struct GroundProblem {
    pub problem_name: String,
    /// Canonical fact names, index = `FactId`, sorted lexicographically.
    pub fact_names: Vec<String>,
    fact_index: HashMap<String, FactId>,
    pub actions: Vec<GroundAction>,
    action_index: HashMap<String, usize>,
    pub init: GroundState,
    /// Goal hypothesis fact-sets; starts with the problem file's goal.
    pub goals: Vec<GroundState>,
}

impl GroundProblem {
    pub fn fact_id(&self, canonical: &str) -> Option<FactId> {
        self.fact_index.get(canonical).copied()
    }

    pub fn fact_count(&self) -> usize {
        self.fact_names.len()
    }

    pub fn action_by_name(&self, canonical: &str) -> Option<&GroundAction> {
        self.action_index.get(canonical).map(|&i| &self.actions[i])
    }

    /// The goal stated in the problem file.
    pub fn problem_goal(&self) -> &GroundState {
        &self.goals[0]
    }

    /// Parses a conjunction of ground facts, e.g. `(and (on a b) (clear c))`
    /// or bare `(on a b) (clear c)`, into a fact set of this problem.
    pub fn parse_fact_set(&self, text: &str) -> Result<GroundState, StripsError> {
        let wrapped = format!("(and {text})");
        let sexp = super::parse::read_sexp(&wrapped)?;
        let mut facts = Vec::new();
        self.collect_facts(&sexp, &mut facts)?;
        Ok(GroundState::new(facts))
    }

    /// Walks a condition, descending through `and`, collecting fact ids.
    fn collect_facts(
        &self,
        sexp: &super::parse::Sexp,
        facts: &mut Vec<FactId>,
    ) -> Result<(), StripsError> {
        use super::parse::Sexp;
        if let Sexp::List(items, _) = sexp {
            if let Some(Sexp::Sym(head, _)) = items.first() {
                if head == "and" {
                    for item in &items[1..] {
                        self.collect_facts(item, facts)?;
                    }
                    return Ok(());
                }
            }
        }
        let canon = canonical_from_sexp(sexp)?;
        let id = self.fact_id(&canon).ok_or_else(|| StripsError::Type {
            msg: format!("`{canon}` is not a fact of problem `{}`", self.problem_name),
        })?;
        facts.push(id);
        Ok(())
    }

    /// Parses one grounded action per line, `(name arg1 arg2)`.
    pub fn parse_action_sequence(&self, text: &str) -> Result<Vec<usize>, StripsError> {
        let mut out = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with(';') || line.starts_with('#') {
                continue;
            }
            let sexp = super::parse::read_sexp(line)?;
            let canon = canonical_from_sexp(&sexp)?;
            let idx = *self.action_index.get(&canon).ok_or_else(|| StripsError::Type {
                msg: format!("line {}: `{canon}` is not a ground action", line_no + 1),
            })?;
            out.push(idx);
        }
        Ok(out)
    }
}

fn canonical_from_sexp(sexp: &super::parse::Sexp) -> Result<String, StripsError> {
    use super::parse::Sexp;
    match sexp {
        Sexp::List(items, line) => {
            let mut parts = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    Sexp::Sym(s, _) => parts.push(s.clone()),
                    Sexp::List(..) => {
                        return Err(StripsError::Parse {
                            location: format!("line {line}"),
                            msg: "nested list where a ground atom was expected".into(),
                        })
                    }
                }
            }
            Ok(format!("({})", parts.join(" ")))
        }
        Sexp::Sym(s, line) => Err(StripsError::Parse {
            location: format!("line {line}"),
            msg: format!("expected a parenthesized atom, found `{s}`"),
        }),
    }
}

fn canonical(predicate: &str, args: &[&str]) -> String {
    if args.is_empty() {
        format!("({predicate})")
    } else {
        format!("({} {})", predicate, args.join(" "))
    }
}

/// Instantiates all type-consistent facts and actions.
pub fn ground_problem(
    domain: &DomainModel,
    spec: &ProblemSpec,
) -> Result<GroundProblem, StripsError> {
    // Objects sorted by name for deterministic enumeration.
    let mut objects: Vec<(String, String)> = spec.objects.clone();
    objects.sort();
    let object_type: HashMap<&str, &str> = objects
        .iter()
        .map(|(n, t)| (n.as_str(), t.as_str()))
        .collect();
    if object_type.len() != objects.len() {
        return Err(StripsError::Type {
            msg: "duplicate object declaration".into(),
        });
    }

    // Fact universe: every predicate applied to every type-consistent tuple.
    let mut fact_names: Vec<String> = Vec::new();
    for pred in &domain.predicates {
        let candidates: Vec<Vec<&str>> = pred
            .param_types
            .iter()
            .map(|ty| {
                objects
                    .iter()
                    .filter(|(_, ot)| domain.is_subtype(ot, ty))
                    .map(|(n, _)| n.as_str())
                    .collect()
            })
            .collect();
        for combo in cartesian(&candidates) {
            fact_names.push(canonical(&pred.name, &combo));
        }
    }
    fact_names.sort();
    fact_names.dedup();
    let fact_index: HashMap<String, FactId> = fact_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i as FactId))
        .collect();

    let resolve_atom = |atom: &Atom,
                        binding: Option<&HashMap<&str, &str>>|
     -> Result<FactId, StripsError> {
        let schema = domain.predicate(&atom.predicate).ok_or_else(|| StripsError::Type {
            msg: format!("undeclared predicate `{}`", atom.predicate),
        })?;
        if schema.param_types.len() != atom.args.len() {
            return Err(StripsError::Type {
                msg: format!(
                    "predicate `{}` takes {} arguments, found {}",
                    atom.predicate,
                    schema.param_types.len(),
                    atom.args.len()
                ),
            });
        }
        let mut names: Vec<&str> = Vec::with_capacity(atom.args.len());
        for (arg, want_ty) in atom.args.iter().zip(&schema.param_types) {
            let name = match arg {
                Term::Const(c) => c.as_str(),
                Term::Var(v) => match binding.and_then(|b| b.get(v.as_str())) {
                    Some(n) => n,
                    None => {
                        return Err(StripsError::Type {
                            msg: format!("unbound variable `?{v}` in `{}`", atom.predicate),
                        })
                    }
                },
            };
            let ot = object_type.get(name).ok_or_else(|| StripsError::Type {
                msg: format!("undeclared object `{name}` in `{}`", atom.predicate),
            })?;
            if !domain.is_subtype(ot, want_ty) {
                return Err(StripsError::Type {
                    msg: format!(
                        "object `{name}` of type `{ot}` where `{want_ty}` is required in `{}`",
                        atom.predicate
                    ),
                });
            }
            names.push(name);
        }
        let canon = canonical(&atom.predicate, &names);
        fact_index.get(&canon).copied().ok_or_else(|| StripsError::Type {
            msg: format!("`{canon}` is outside the fact universe"),
        })
    };

    let init = GroundState::new(
        spec.init
            .iter()
            .map(|a| resolve_atom(a, None))
            .collect::<Result<Vec<_>, _>>()?,
    );
    let goal = GroundState::new(
        spec.goal
            .iter()
            .map(|a| resolve_atom(a, None))
            .collect::<Result<Vec<_>, _>>()?,
    );

    // Ground every action schema over type-consistent parameter bindings.
    let mut actions: Vec<GroundAction> = Vec::new();
    for schema in &domain.actions {
        let candidates: Vec<Vec<&str>> = schema
            .params
            .iter()
            .map(|(_, ty)| {
                objects
                    .iter()
                    .filter(|(_, ot)| domain.is_subtype(ot, ty))
                    .map(|(n, _)| n.as_str())
                    .collect()
            })
            .collect();
        for combo in cartesian(&candidates) {
            let binding: HashMap<&str, &str> = schema
                .params
                .iter()
                .map(|(v, _)| v.as_str())
                .zip(combo.iter().copied())
                .collect();
            let resolve_list = |atoms: &[Atom]| -> Result<Vec<FactId>, StripsError> {
                let mut ids = atoms
                    .iter()
                    .map(|a| resolve_atom(a, Some(&binding)))
                    .collect::<Result<Vec<_>, _>>()?;
                ids.sort_unstable();
                ids.dedup();
                Ok(ids)
            };
            actions.push(GroundAction {
                name: canonical(&schema.name, &combo),
                preconditions: resolve_list(&schema.preconditions)?,
                adds: resolve_list(&schema.adds)?,
                deletes: resolve_list(&schema.deletes)?,
            });
        }
    }
    actions.sort_by(|a, b| a.name.cmp(&b.name));
    let action_index = actions
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.clone(), i))
        .collect();

    Ok(GroundProblem {
        problem_name: spec.name.clone(),
        fact_names,
        fact_index,
        actions,
        action_index,
        init,
        goals: vec![goal],
    })
}

fn cartesian<'a>(sets: &[Vec<&'a str>]) -> Vec<Vec<&'a str>> {
    let mut out: Vec<Vec<&str>> = vec![Vec::new()];
    for set in sets {
        let mut next = Vec::with_capacity(out.len() * set.len());
        for prefix in &out {
            for item in set {
                let mut row = prefix.clone();
                row.push(item);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// Applies a ground action: precondition check, then delete/add.
pub fn apply(state: &GroundState, action: &GroundAction) -> Result<GroundState, StripsError> {
    for pre in &action.preconditions {
        if !state.contains(*pre) {
            return Err(StripsError::InapplicableAction {
                action: action.name.clone(),
                step: None,
            });
        }
    }
    Ok(state.apply_delta(&action.adds, &action.deletes))
}

/// Replays a plan from the initial state into its state trajectory.
pub fn rollout(problem: &GroundProblem, actions: &[usize]) -> Result<StateTrajectory, StripsError> {
    let mut states = Vec::with_capacity(actions.len() + 1);
    states.push(problem.init.clone());
    for (step, &idx) in actions.iter().enumerate() {
        let action = &problem.actions[idx];
        let next = apply(states.last().unwrap(), action).map_err(|_| {
            StripsError::InapplicableAction {
                action: action.name.clone(),
                step: Some(step),
            }
        })?;
        states.push(next);
    }
    Ok(StateTrajectory { states })
}

/// Progression states `s_1..s_m` of an observed action prefix (the initial
/// state is excluded so index i matches observation i).
pub fn observed_states(
    problem: &GroundProblem,
    actions: &[usize],
) -> Result<Vec<GroundState>, StripsError> {
    let trajectory = rollout(problem, actions)?;
    Ok(trajectory.states[1..].to_vec())
}
