//! Clark completion of user predicates and the predicate call graph.

use std::collections::HashMap;

use indexmap::{IndexMap, IndexSet};
use petgraph::graph::{DiGraph, NodeIndex};

use crate::ast::{Goal, PredId, Program, Term};
use crate::fresh::FreshVars;

/// The completed definition `R(x1..xn) <-> body` of one predicate.
///
/// `body` is a disjunction with one disjunct per defining clause, in clause
/// order; each disjunct has the shape `some y1 .. some yk (x1 = t1, .., B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinitionForm {
    pub pred: PredId,
    pub head_vars: Vec<String>,
    pub body: Goal,
}

impl DefinitionForm {
    /// The body with the head variables replaced by `args`.
    pub fn instantiate(&self, args: &[Term]) -> Goal {
        let binding: HashMap<String, Term> =
            self.head_vars.iter().cloned().zip(args.iter().cloned()).collect();
        self.body.substitute(&binding)
    }
}

/// Completed definition with head-equation simplification, using a
/// private fresh-variable supply.
pub fn completed_definition(program: &Program, pred: &PredId) -> DefinitionForm {
    completed_definition_with(program, pred, &mut FreshVars::default())
}

pub fn completed_definition_with(program: &Program, pred: &PredId, fresh: &mut FreshVars) -> DefinitionForm {
    build_definition(program, pred, fresh, true)
}

/// Completed definition keeping every head equation, e.g. `x2 = y, x3 = y`.
pub fn raw_completed_definition_with(
    program: &Program,
    pred: &PredId,
    fresh: &mut FreshVars,
) -> DefinitionForm {
    build_definition(program, pred, fresh, false)
}

fn build_definition(
    program: &Program,
    pred: &PredId,
    fresh: &mut FreshVars,
    simplify: bool,
) -> DefinitionForm {
    let head_vars = fresh.fresh_many(pred.arity);
    let mut disjuncts = Vec::new();
    for clause in program.clauses_for(pred) {
        let renaming: HashMap<String, Term> = clause
            .vars()
            .into_iter()
            .map(|v| (v, Term::Var(fresh.fresh())))
            .collect();
        let mut existentials: Vec<String> = clause
            .vars()
            .iter()
            .map(|v| match &renaming[v] {
                Term::Var(n) => n.clone(),
                Term::App(..) => unreachable!("renaming maps to variables"),
            })
            .collect();
        let mut equations: Vec<(String, Term)> = head_vars
            .iter()
            .cloned()
            .zip(clause.head.args.iter().map(|t| t.substitute(&renaming)))
            .collect();
        let mut body = clause.body.substitute(&renaming);

        if simplify {
            let mut kept: Vec<(String, Term)> = Vec::new();
            let pending = std::mem::take(&mut equations);
            let mut pending = pending.into_iter();
            while let Some((head_var, rhs)) = pending.next() {
                let eliminable = match &rhs {
                    Term::Var(v) => existentials.contains(v),
                    Term::App(..) => false,
                };
                if !eliminable {
                    kept.push((head_var, rhs));
                    continue;
                }
                let Term::Var(v) = rhs else { unreachable!() };
                existentials.retain(|e| e != &v);
                let binding = HashMap::from([(v, Term::Var(head_var))]);
                for (_, t) in kept.iter_mut() {
                    *t = t.substitute(&binding);
                }
                let rest: Vec<(String, Term)> = pending.map(|(h, t)| (h, t.substitute(&binding))).collect();
                pending = rest.into_iter();
                body = body.substitute(&binding);
            }
            equations = kept;
        }

        let mut conjuncts: Vec<Goal> = equations
            .into_iter()
            .map(|(h, t)| Goal::eq(Term::Var(h), t))
            .collect();
        if body != Goal::True || conjuncts.is_empty() {
            conjuncts.push(body);
        }
        disjuncts.push(Goal::some_all(existentials, Goal::conj(conjuncts)));
    }
    DefinitionForm {
        pred: pred.clone(),
        head_vars,
        body: Goal::disj(disjuncts),
    }
}

/// Call graph of the user predicates with its strongly connected components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DependencyInfo {
    /// Callees of each predicate, positive and negative calls merged.
    pub calls: IndexMap<PredId, IndexSet<PredId>>,
    /// Components ordered by their first member in program order.
    pub sccs: Vec<Vec<PredId>>,
    component_of: HashMap<PredId, usize>,
}

impl DependencyInfo {
    pub fn component(&self, pred: &PredId) -> Option<&[PredId]> {
        self.component_of.get(pred).map(|&idx| self.sccs[idx].as_slice())
    }

    pub fn calls_itself(&self, pred: &PredId) -> bool {
        self.calls.get(pred).is_some_and(|c| c.contains(pred))
    }
}

pub fn dependency_info(program: &Program) -> DependencyInfo {
    let mut calls: IndexMap<PredId, IndexSet<PredId>> = program
        .predicates
        .iter()
        .map(|p| (p.clone(), IndexSet::new()))
        .collect();
    for clause in &program.clauses {
        let mut callees = IndexSet::new();
        clause.body.collect_calls(&mut callees);
        calls.entry(clause.head.pred.clone()).or_default().extend(callees);
    }

    let mut graph: DiGraph<usize, ()> = DiGraph::new();
    let nodes: Vec<NodeIndex> = (0..calls.len()).map(|i| graph.add_node(i)).collect();
    for (i, (_, callees)) in calls.iter().enumerate() {
        for callee in callees {
            if let Some(j) = calls.get_index_of(callee) {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }

    let mut components: Vec<Vec<usize>> = petgraph::algo::tarjan_scc(&graph)
        .into_iter()
        .map(|scc| {
            let mut members: Vec<usize> = scc.into_iter().map(|n| graph[n]).collect();
            members.sort_unstable();
            members
        })
        .collect();
    components.sort_by_key(|c| c[0]);

    let sccs: Vec<Vec<PredId>> = components
        .iter()
        .map(|c| {
            c.iter()
                .map(|&i| calls.get_index(i).expect("node index").0.clone())
                .collect()
        })
        .collect();
    let component_of = sccs
        .iter()
        .enumerate()
        .flat_map(|(idx, c)| c.iter().map(move |p| (p.clone(), idx)))
        .collect();
    DependencyInfo {
        calls,
        sccs,
        component_of,
    }
}

/// True iff the predicate's component is a singleton. Predicates unknown
/// to `deps` are not directly recursive.
pub fn is_directly_recursive(deps: &DependencyInfo, pred: &PredId) -> bool {
    deps.component(pred).is_some_and(|c| c.len() == 1)
}
