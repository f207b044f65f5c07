//! Parser for the STRIPS fragment of PDDL: typed predicates and objects,
//! conjunctive positive preconditions, add/delete effects. Anything beyond
//! that fragment is rejected with the offending construct named.

use std::collections::HashMap;

use super::ground::ground_problem;
use super::{GroundProblem, StripsError};

const UNSUPPORTED_HEADS: &[&str] = &[
    "or", "exists", "forall", "when", "imply", "=", "increase", "decrease", "assign",
    "scale-up", "scale-down", ">", "<", ">=", "<=",
];

/// S-expression with the source line it started on.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Sexp {
    Sym(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    pub(crate) fn line(&self) -> usize {
        match self {
            Sexp::Sym(_, l) | Sexp::List(_, l) => *l,
        }
    }
}

pub(crate) fn tokenize(text: &str) -> Vec<(String, usize)> {
    let mut tokens = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = match line.find(';') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut current = String::new();
        for ch in line.chars() {
            match ch {
                '(' | ')' => {
                    if !current.is_empty() {
                        tokens.push((std::mem::take(&mut current), line_no + 1));
                    }
                    tokens.push((ch.to_string(), line_no + 1));
                }
                c if c.is_whitespace() => {
                    if !current.is_empty() {
                        tokens.push((std::mem::take(&mut current), line_no + 1));
                    }
                }
                c => current.push(c.to_ascii_lowercase()),
            }
        }
        if !current.is_empty() {
            tokens.push((current, line_no + 1));
        }
    }
    tokens
}

pub(crate) fn read_sexp(text: &str) -> Result<Sexp, StripsError> {
    let tokens = tokenize(text);
    let mut pos = 0usize;
    let sexp = read_one(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(StripsError::Parse {
            location: format!("line {}", tokens[pos].1),
            msg: "trailing content after top-level form".into(),
        });
    }
    Ok(sexp)
}

fn read_one(tokens: &[(String, usize)], pos: &mut usize) -> Result<Sexp, StripsError> {
    let (tok, line) = tokens.get(*pos).ok_or_else(|| StripsError::Parse {
        location: "end of input".into(),
        msg: "unexpected end of input".into(),
    })?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let open_line = *line;
            let mut items = Vec::new();
            loop {
                let (next, _) = tokens.get(*pos).ok_or_else(|| StripsError::Parse {
                    location: format!("line {open_line}"),
                    msg: "unclosed parenthesis".into(),
                })?;
                if next == ")" {
                    *pos += 1;
                    return Ok(Sexp::List(items, open_line));
                }
                items.push(read_one(tokens, pos)?);
            }
        }
        ")" => Err(StripsError::Parse {
            location: format!("line {line}"),
            msg: "unbalanced `)`".into(),
        }),
        _ => Ok(Sexp::Sym(tok.clone(), *line)),
    }
}

/// A typed predicate declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct PredicateSchema {
    pub name: String,
    pub param_types: Vec<String>,
}

/// An atom whose arguments are schema variables or constants.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Var(String),
    Const(String),
}

/// An action schema in the STRIPS fragment.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub preconditions: Vec<Atom>,
    pub adds: Vec<Atom>,
    pub deletes: Vec<Atom>,
}

/// Parsed domain: type hierarchy, predicate schemas, action schemas.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainModel {
    pub name: String,
    /// type -> parent type; every chain ends at `object`.
    pub type_parents: HashMap<String, String>,
    pub predicates: Vec<PredicateSchema>,
    pub actions: Vec<ActionSchema>,
}

impl DomainModel {
    pub fn predicate(&self, name: &str) -> Option<&PredicateSchema> {
        self.predicates.iter().find(|p| p.name == name)
    }

    /// True when `ty` equals `ancestor` or derives from it.
    pub fn is_subtype(&self, ty: &str, ancestor: &str) -> bool {
        if ancestor == "object" || ty == ancestor {
            return true;
        }
        let mut current = ty;
        while let Some(parent) = self.type_parents.get(current) {
            if parent == ancestor {
                return true;
            }
            if parent == current {
                break;
            }
            current = parent;
        }
        false
    }
}

fn expect_list<'a>(sexp: &'a Sexp, what: &str) -> Result<&'a [Sexp], StripsError> {
    match sexp {
        Sexp::List(items, _) => Ok(items),
        Sexp::Sym(s, line) => Err(StripsError::Parse {
            location: format!("line {line}"),
            msg: format!("expected {what}, found `{s}`"),
        }),
    }
}

fn expect_sym<'a>(sexp: &'a Sexp, what: &str) -> Result<&'a str, StripsError> {
    match sexp {
        Sexp::Sym(s, _) => Ok(s),
        Sexp::List(_, line) => Err(StripsError::Parse {
            location: format!("line {line}"),
            msg: format!("expected {what}, found a list"),
        }),
    }
}

/// Parses `name name - type name - type ...` into `(name, type)` pairs.
fn parse_typed_list(items: &[Sexp], default_type: &str) -> Result<Vec<(String, String)>, StripsError> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let sym = expect_sym(&items[i], "a name in a typed list")?;
        if sym == "-" {
            let ty = expect_sym(
                items.get(i + 1).ok_or_else(|| StripsError::Parse {
                    location: format!("line {}", items[i].line()),
                    msg: "dangling `-` in typed list".into(),
                })?,
                "a type name",
            )?;
            for name in pending.drain(..) {
                out.push((name, ty.to_string()));
            }
            i += 2;
        } else {
            pending.push(sym.to_string());
            i += 1;
        }
    }
    for name in pending {
        out.push((name, default_type.to_string()));
    }
    Ok(out)
}

fn check_supported_head(head: &str, line: usize) -> Result<(), StripsError> {
    if UNSUPPORTED_HEADS.contains(&head) {
        return Err(StripsError::UnsupportedFeature {
            construct: head.to_string(),
            location: format!("line {line}"),
        });
    }
    Ok(())
}

fn parse_atom(sexp: &Sexp) -> Result<Atom, StripsError> {
    let items = expect_list(sexp, "an atom")?;
    if items.is_empty() {
        return Err(StripsError::Parse {
            location: format!("line {}", sexp.line()),
            msg: "empty atom".into(),
        });
    }
    let head = expect_sym(&items[0], "a predicate name")?;
    check_supported_head(head, sexp.line())?;
    let args = items[1..]
        .iter()
        .map(|a| {
            let s = expect_sym(a, "an atom argument")?;
            Ok(if let Some(v) = s.strip_prefix('?') {
                Term::Var(v.to_string())
            } else {
                Term::Const(s.to_string())
            })
        })
        .collect::<Result<Vec<_>, StripsError>>()?;
    Ok(Atom {
        predicate: head.to_string(),
        args,
    })
}

/// Flattens a condition into positive atoms; `(and ...)` is the only
/// accepted connective.
fn parse_conjunction(sexp: &Sexp, allow_not: bool) -> Result<(Vec<Atom>, Vec<Atom>), StripsError> {
    let items = expect_list(sexp, "a condition")?;
    if items.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let head = expect_sym(&items[0], "a condition head")?;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    if head == "and" {
        for item in &items[1..] {
            let (p, n) = parse_conjunction(item, allow_not)?;
            pos.extend(p);
            neg.extend(n);
        }
    } else if head == "not" {
        if !allow_not {
            return Err(StripsError::UnsupportedFeature {
                construct: "negative precondition".into(),
                location: format!("line {}", sexp.line()),
            });
        }
        if items.len() != 2 {
            return Err(StripsError::Parse {
                location: format!("line {}", sexp.line()),
                msg: "`not` takes exactly one atom".into(),
            });
        }
        neg.push(parse_atom(&items[1])?);
    } else {
        check_supported_head(head, sexp.line())?;
        pos.push(parse_atom(sexp)?);
    }
    Ok((pos, neg))
}

/// Parses a domain file in the STRIPS fragment.
pub fn parse_domain(text: &str) -> Result<DomainModel, StripsError> {
    let top = read_sexp(text)?;
    let items = expect_list(&top, "(define ...)")?;
    if items.is_empty() || expect_sym(&items[0], "define")? != "define" {
        return Err(StripsError::Parse {
            location: format!("line {}", top.line()),
            msg: "expected (define (domain ...) ...)".into(),
        });
    }
    let head = expect_list(&items[1], "(domain NAME)")?;
    if head.len() != 2 || expect_sym(&head[0], "domain")? != "domain" {
        return Err(StripsError::Parse {
            location: format!("line {}", items[1].line()),
            msg: "expected (domain NAME)".into(),
        });
    }
    let name = expect_sym(&head[1], "the domain name")?.to_string();

    let mut domain = DomainModel {
        name,
        type_parents: HashMap::new(),
        predicates: Vec::new(),
        actions: Vec::new(),
    };

    for section in &items[2..] {
        let body = expect_list(section, "a domain section")?;
        if body.is_empty() {
            continue;
        }
        let key = expect_sym(&body[0], "a section keyword")?;
        match key {
            ":requirements" => {}
            ":types" => {
                for (ty, parent) in parse_typed_list(&body[1..], "object")? {
                    domain.type_parents.insert(ty, parent);
                }
            }
            ":predicates" => {
                for pred in &body[1..] {
                    let decl = expect_list(pred, "a predicate declaration")?;
                    if decl.is_empty() {
                        continue;
                    }
                    let pname = expect_sym(&decl[0], "a predicate name")?.to_string();
                    let params = parse_typed_list(&decl[1..], "object")?;
                    domain.predicates.push(PredicateSchema {
                        name: pname,
                        param_types: params.into_iter().map(|(_, t)| t).collect(),
                    });
                }
            }
            ":action" => {
                domain.actions.push(parse_action(&body[1..], section.line())?);
            }
            ":functions" | ":constants" | ":axioms" | ":derived" => {
                return Err(StripsError::UnsupportedFeature {
                    construct: key.to_string(),
                    location: format!("line {}", section.line()),
                });
            }
            other => {
                return Err(StripsError::UnsupportedFeature {
                    construct: other.to_string(),
                    location: format!("line {}", section.line()),
                });
            }
        }
    }
    Ok(domain)
}

fn parse_action(body: &[Sexp], line: usize) -> Result<ActionSchema, StripsError> {
    if body.is_empty() {
        return Err(StripsError::Parse {
            location: format!("line {line}"),
            msg: "action without a name".into(),
        });
    }
    let name = expect_sym(&body[0], "an action name")?.to_string();
    let mut params = Vec::new();
    let mut preconditions = Vec::new();
    let mut adds = Vec::new();
    let mut deletes = Vec::new();

    let mut i = 1;
    while i < body.len() {
        let key = expect_sym(&body[i], "an action keyword")?;
        let value = body.get(i + 1).ok_or_else(|| StripsError::Parse {
            location: format!("line {line}"),
            msg: format!("`{key}` is missing its value in action `{name}`"),
        })?;
        match key {
            ":parameters" => {
                let items = expect_list(value, "the parameter list")?;
                for (var, ty) in parse_typed_list(items, "object")? {
                    let var = var.strip_prefix('?').unwrap_or(&var).to_string();
                    params.push((var, ty));
                }
            }
            ":precondition" => {
                let (pos, _neg) = parse_conjunction(value, false)?;
                preconditions = pos;
            }
            ":effect" => {
                let (pos, neg) = parse_conjunction(value, true)?;
                adds = pos;
                deletes = neg;
            }
            other => {
                return Err(StripsError::UnsupportedFeature {
                    construct: other.to_string(),
                    location: format!("line {}", body[i].line()),
                });
            }
        }
        i += 2;
    }
    Ok(ActionSchema {
        name,
        params,
        preconditions,
        adds,
        deletes,
    })
}

/// Parsed problem, pre-grounding.
#[derive(Debug, Clone)]
pub(crate) struct ProblemSpec {
    pub name: String,
    pub objects: Vec<(String, String)>,
    pub init: Vec<Atom>,
    pub goal: Vec<Atom>,
}

pub(crate) fn parse_problem_spec(text: &str) -> Result<ProblemSpec, StripsError> {
    let top = read_sexp(text)?;
    let items = expect_list(&top, "(define ...)")?;
    if items.is_empty() || expect_sym(&items[0], "define")? != "define" {
        return Err(StripsError::Parse {
            location: format!("line {}", top.line()),
            msg: "expected (define (problem ...) ...)".into(),
        });
    }
    let head = expect_list(&items[1], "(problem NAME)")?;
    if head.len() != 2 || expect_sym(&head[0], "problem")? != "problem" {
        return Err(StripsError::Parse {
            location: format!("line {}", items[1].line()),
            msg: "expected (problem NAME)".into(),
        });
    }
    let mut spec = ProblemSpec {
        name: expect_sym(&head[1], "the problem name")?.to_string(),
        objects: Vec::new(),
        init: Vec::new(),
        goal: Vec::new(),
    };

    for section in &items[2..] {
        let body = expect_list(section, "a problem section")?;
        if body.is_empty() {
            continue;
        }
        let key = expect_sym(&body[0], "a section keyword")?;
        match key {
            ":domain" => {}
            ":objects" => {
                spec.objects = parse_typed_list(&body[1..], "object")?;
            }
            ":init" => {
                for atom in &body[1..] {
                    spec.init.push(parse_atom(atom)?);
                }
            }
            ":goal" => {
                if body.len() != 2 {
                    return Err(StripsError::Parse {
                        location: format!("line {}", section.line()),
                        msg: ":goal takes exactly one condition".into(),
                    });
                }
                let (pos, neg) = parse_conjunction(&body[1], false)?;
                debug_assert!(neg.is_empty());
                spec.goal = pos;
            }
            other => {
                return Err(StripsError::UnsupportedFeature {
                    construct: other.to_string(),
                    location: format!("line {}", section.line()),
                });
            }
        }
    }
    Ok(spec)
}

/// Parses a problem file and grounds it against the domain.
pub fn parse_problem(text: &str, domain: &DomainModel) -> Result<GroundProblem, StripsError> {
    let spec = parse_problem_spec(text)?;
    ground_problem(domain, &spec)
}
