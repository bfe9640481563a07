//! Axioms of the inductive extension of a program: Clark's equality
//! theory (without the acyclicity schema), groundness, uniqueness and
//! totality, fixed points, and statically instantiated induction.

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexSet;

use crate::ast::{Atom, Formula, Functor, Mode, PredId, Program, Term};
use crate::completion::{completed_definition_with, is_directly_recursive, DependencyInfo};
use crate::fresh::FreshVars;
use crate::sft::{f_of, s_of, simplify, t_of};

type GoalOperator = fn(&crate::ast::Goal) -> Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Axiom,
    Conjecture,
}

impl Role {
    pub fn keyword(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Conjecture => "conjecture",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFormula {
    /// Unquoted name; the emitter quotes it when it is not a lower word.
    pub name: String,
    pub role: Role,
    pub formula: Formula,
}

impl NamedFormula {
    pub fn axiom(name: impl Into<String>, formula: Formula) -> Self {
        NamedFormula {
            name: name.into(),
            role: Role::Axiom,
            formula,
        }
    }

    pub fn conjecture(name: impl Into<String>, formula: Formula) -> Self {
        NamedFormula {
            name: name.into(),
            role: Role::Conjecture,
            formula,
        }
    }
}

/// `base`, `base_2`, `base_3`, ...
fn numbered(base: &str, index: usize) -> String {
    if index == 0 {
        base.to_string()
    } else {
        format!("{base}_{}", index + 1)
    }
}

fn app(f: &Functor, vars: &[String]) -> Term {
    Term::App(f.name.clone(), vars.iter().cloned().map(Term::Var).collect())
}

/// Injectivity (one axiom per argument position) and pairwise distinctness
/// of function symbols.
pub fn cet_axioms(signature: &IndexSet<Functor>, fresh: &mut FreshVars) -> Vec<NamedFormula> {
    let mut out = Vec::new();
    let mut injective = 0;
    for f in signature.iter().filter(|f| f.arity > 0) {
        for i in 0..f.arity {
            let xs = fresh.fresh_many(f.arity);
            let ys = fresh.fresh_many(f.arity);
            let body = Formula::implies(
                Formula::Eq(app(f, &xs), app(f, &ys)),
                Formula::Eq(Term::Var(xs[i].clone()), Term::Var(ys[i].clone())),
            );
            let vars: Vec<String> = xs.iter().chain(&ys).cloned().collect();
            out.push(NamedFormula::axiom(
                numbered("id1", injective),
                Formula::forall_all(vars, body),
            ));
            injective += 1;
        }
    }
    let functors: Vec<&Functor> = signature.iter().collect();
    let mut distinct = 0;
    for (i, f) in functors.iter().enumerate() {
        for g in &functors[i + 1..] {
            let xs = fresh.fresh_many(f.arity);
            let ys = fresh.fresh_many(g.arity);
            let body = Formula::not(Formula::Eq(app(f, &xs), app(g, &ys)));
            let vars: Vec<String> = xs.iter().chain(&ys).cloned().collect();
            out.push(NamedFormula::axiom(
                numbered("id2", distinct),
                Formula::forall_all(vars, body),
            ));
            distinct += 1;
        }
    }
    out
}

pub fn gr_axioms(signature: &IndexSet<Functor>, fresh: &mut FreshVars) -> Vec<NamedFormula> {
    let mut out = Vec::new();
    for (k, c) in signature.iter().filter(|f| f.arity == 0).enumerate() {
        out.push(NamedFormula::axiom(
            numbered("id4", k),
            Formula::Gr(Term::constant(c.name.clone())),
        ));
    }
    for (k, f) in signature.iter().filter(|f| f.arity > 0).enumerate() {
        let xs = fresh.fresh_many(f.arity);
        let args_ground = Formula::conj(xs.iter().cloned().map(|x| Formula::Gr(Term::Var(x))).collect());
        let body = Formula::iff(args_ground, Formula::Gr(app(f, &xs)));
        out.push(NamedFormula::axiom(
            numbered("id5", k),
            Formula::forall_all(xs, body),
        ));
    }
    out
}

fn pred_atom(mode: Mode, pred: &PredId, vars: &[String]) -> Formula {
    Formula::Pred(
        mode,
        Atom {
            pred: pred.clone(),
            args: vars.iter().cloned().map(Term::Var).collect(),
        },
    )
}

/// Short per-predicate tags for axiom names: the shortest prefix of the
/// name that no other predicate shares, falling back to name and arity.
pub fn predicate_tags(preds: &IndexSet<PredId>) -> HashMap<PredId, String> {
    let sanitized: Vec<String> = preds
        .iter()
        .map(|p| {
            let s: String = p
                .name
                .chars()
                .map(|c| {
                    if c.is_ascii_alphanumeric() {
                        c.to_ascii_lowercase()
                    } else {
                        '_'
                    }
                })
                .collect();
            if s.is_empty() {
                "p".to_string()
            } else {
                s
            }
        })
        .collect();
    let mut tags = HashMap::new();
    for (i, pred) in preds.iter().enumerate() {
        let name = &sanitized[i];
        let unique_prefix = (1..=name.len()).map(|n| &name[..n]).find(|prefix| {
            sanitized
                .iter()
                .enumerate()
                .all(|(j, other)| j == i || !other.starts_with(prefix))
        });
        let tag = match unique_prefix {
            Some(prefix) => prefix.to_string(),
            None => format!("{name}_{}_", pred.arity),
        };
        tags.insert(pred.clone(), tag);
    }
    tags
}

/// `not (R^s & R^f)` and `R^t -> R^s | R^f`, universally closed.
pub fn uniq_total_axioms(pred: &PredId, tag: &str, fresh: &mut FreshVars) -> Vec<NamedFormula> {
    let xs = fresh.fresh_many(pred.arity);
    let s = pred_atom(Mode::Succeeds, pred, &xs);
    let f = pred_atom(Mode::Fails, pred, &xs);
    let t = pred_atom(Mode::Terminates, pred, &xs);
    vec![
        NamedFormula::axiom(
            format!("id{tag}6"),
            Formula::forall_all(xs.clone(), Formula::not(Formula::and(s.clone(), f.clone()))),
        ),
        NamedFormula::axiom(
            format!("id{tag}7"),
            Formula::forall_all(xs, Formula::implies(t, Formula::or(s, f))),
        ),
    ]
}

/// The three fixed-point equivalences of a predicate. Right-hand sides are
/// unit-simplified; the equivalence itself is kept even when a side is a
/// constant.
pub fn fixedpoint_axioms(
    program: &Program,
    pred: &PredId,
    tag: &str,
    fresh: &mut FreshVars,
) -> Vec<NamedFormula> {
    let def = completed_definition_with(program, pred, fresh);
    let xs = def.head_vars;
    let ops: [(Mode, &str, GoalOperator); 3] = [
        (Mode::Succeeds, "s", s_of),
        (Mode::Fails, "f", f_of),
        (Mode::Terminates, "t", t_of),
    ];
    ops.into_iter()
        .map(|(mode, letter, op)| {
            let rhs = simplify(&op(&def.body));
            NamedFormula::axiom(
                format!("id{tag}{letter}8"),
                Formula::forall_all(xs.clone(), Formula::iff(pred_atom(mode, pred, &xs), rhs)),
            )
        })
        .collect()
}

/// All program axioms in emission order: equality theory, groundness,
/// uniqueness/totality, fixed points.
pub fn theory_axioms(program: &Program, fresh: &mut FreshVars) -> Vec<NamedFormula> {
    let tags = predicate_tags(&program.predicates);
    let mut out = cet_axioms(&program.signature, fresh);
    out.extend(gr_axioms(&program.signature, fresh));
    for pred in &program.predicates {
        out.extend(uniq_total_axioms(pred, &tags[pred], fresh));
    }
    for pred in &program.predicates {
        out.extend(fixedpoint_axioms(program, pred, &tags[pred], fresh));
    }
    out
}

/// Why no induction axiom was produced for a conjecture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoInduction {
    /// Not of the form `all v (A1 & .. & Ak => psi)` with atomic premises.
    NotAnImplication,
    /// No premise is a success atom of a directly recursive predicate over
    /// distinct variables.
    NoEligiblePremise,
    /// The requested premise (1-based) does not exist or is not eligible.
    IneligiblePremise(usize),
}

impl fmt::Display for NoInduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoInduction::NotAnImplication => {
                f.write_str("conjecture is not a universally quantified implication with atomic premises")
            }
            NoInduction::NoEligiblePremise => f.write_str(
                "no premise is a success atom of a directly recursive predicate over distinct variables",
            ),
            NoInduction::IneligiblePremise(i) => {
                write!(f, "premise {i} does not exist or is not eligible for induction")
            }
        }
    }
}

/// The conjecture rewritten as `all x (R^s(x) => phi(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionPlan {
    pub pred: PredId,
    pub vars: Vec<String>,
    pub phi: Formula,
}

fn is_atomic(f: &Formula) -> bool {
    matches!(
        f,
        Formula::Top | Formula::Bot | Formula::Eq(..) | Formula::Pred(..) | Formula::Gr(_)
    )
}

fn flatten_conjunction(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(l, r) => {
            flatten_conjunction(l, out);
            flatten_conjunction(r, out);
        }
        other => out.push(other.clone()),
    }
}

/// Splits `all v (A1 & .. => all w (B1 & .. => psi))` into the prefix
/// variables, the atomic premises in order, and `psi`.
fn prenex_premises(f: &Formula) -> Option<(Vec<String>, Vec<Formula>, Formula)> {
    let mut vars: Vec<String> = Vec::new();
    let mut premises = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Forall(v, body) => {
                if vars.contains(v) {
                    break;
                }
                vars.push(v.clone());
                cur = body;
            }
            Formula::Implies(ante, cons) => {
                let mut parts = Vec::new();
                flatten_conjunction(ante, &mut parts);
                if !parts.iter().all(is_atomic) {
                    if premises.is_empty() {
                        return None;
                    }
                    break;
                }
                premises.extend(parts);
                cur = cons;
            }
            _ => break,
        }
    }
    // Variables absorbed after the last implication stay in the prefix.
    if premises.is_empty() {
        return None;
    }
    Some((vars, premises, cur.clone()))
}

fn eligible(premise: &Formula, vars: &[String], deps: &DependencyInfo) -> Option<(PredId, Vec<String>)> {
    let Formula::Pred(Mode::Succeeds, atom) = premise else {
        return None;
    };
    if !is_directly_recursive(deps, &atom.pred) {
        return None;
    }
    let mut seen = HashSet::new();
    let mut xs = Vec::new();
    for arg in &atom.args {
        match arg {
            Term::Var(v) if vars.contains(v) && seen.insert(v.clone()) => xs.push(v.clone()),
            _ => return None,
        }
    }
    Some((atom.pred.clone(), xs))
}

/// Chooses the induction premise: the first eligible one, or the 1-based
/// `premise` when given.
pub fn plan_induction(
    conjecture: &Formula,
    deps: &DependencyInfo,
    premise: Option<usize>,
) -> Result<InductionPlan, NoInduction> {
    let (vars, premises, psi) = prenex_premises(conjecture).ok_or(NoInduction::NotAnImplication)?;
    let chosen = match premise {
        Some(k) => {
            let found = k
                .checked_sub(1)
                .and_then(|i| premises.get(i).map(|p| (i, p)))
                .and_then(|(i, p)| eligible(p, &vars, deps).map(|e| (i, e)));
            found.ok_or(NoInduction::IneligiblePremise(k))?
        }
        None => premises
            .iter()
            .enumerate()
            .find_map(|(i, p)| eligible(p, &vars, deps).map(|e| (i, e)))
            .ok_or(NoInduction::NoEligiblePremise)?,
    };
    let (index, (pred, xs)) = chosen;
    let rest: Vec<Formula> = premises
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != index)
        .map(|(_, p)| p)
        .collect();
    let matrix = if rest.is_empty() {
        psi
    } else {
        Formula::implies(Formula::conj(rest), psi)
    };
    let others: Vec<String> = vars.iter().filter(|v| !xs.contains(v)).cloned().collect();
    Ok(InductionPlan {
        pred,
        vars: xs,
        phi: Formula::forall_all(others, matrix),
    })
}

/// Builds `closed(phi/R) => sub(phi/R)` for a conjecture, if it can be read
/// as `all x (R^s(x) => phi(x))` with `R` directly recursive.
pub fn try_induction_axiom(
    program: &Program,
    deps: &DependencyInfo,
    conjecture: &Formula,
    premise: Option<usize>,
    fresh: &mut FreshVars,
) -> Result<NamedFormula, NoInduction> {
    let plan = plan_induction(conjecture, deps, premise)?;
    let mut avoid = HashSet::new();
    conjecture.all_vars(&mut avoid);
    fresh.reserve(avoid);

    let def = completed_definition_with(program, &plan.pred, fresh);
    let to_conjecture_vars: HashMap<String, Term> = def
        .head_vars
        .iter()
        .cloned()
        .zip(plan.vars.iter().cloned().map(Term::Var))
        .collect();
    let success_def = simplify(&s_of(&def.body.substitute(&to_conjecture_vars)));

    let phi_at = |args: &[Term]| -> Formula {
        let binding: HashMap<String, Term> = plan.vars.iter().cloned().zip(args.iter().cloned()).collect();
        plan.phi.substitute(&binding)
    };
    let strengthened = success_def.map_atoms(&mut |f| match f {
        Formula::Pred(Mode::Succeeds, atom) if atom.pred == plan.pred => {
            Some(Formula::and(f.clone(), phi_at(&atom.args)))
        }
        _ => None,
    });

    let closed = Formula::forall_all(
        plan.vars.clone(),
        Formula::implies(strengthened, plan.phi.clone()),
    );
    let sub = Formula::forall_all(
        plan.vars.clone(),
        Formula::implies(
            pred_atom(Mode::Succeeds, &plan.pred, &plan.vars),
            plan.phi.clone(),
        ),
    );
    Ok(NamedFormula::axiom("induction", Formula::implies(closed, sub)))
}

pub fn induction_axiom(
    program: &Program,
    deps: &DependencyInfo,
    conjecture: &Formula,
    premise: Option<usize>,
    fresh: &mut FreshVars,
) -> Option<NamedFormula> {
    try_induction_axiom(program, deps, conjecture, premise, fresh).ok()
}
