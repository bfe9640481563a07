//! A small SLDNF interpreter with occurs-check unification, used to check
//! the generated theory against operational behaviour.
//!
//! Clauses are tried top-down, conjunctions left to right, `;` is a choice
//! point and `\+` is negation as failure on ground goals. The search is
//! bounded by the number of resolution steps along each derivation.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::ast::{Goal, Program, Term};
use crate::reader::print_goal;

/// An idempotent substitution: no bound variable occurs in any range term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: HashMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_map(&self) -> &HashMap<String, Term> {
        &self.map
    }

    pub fn apply(&self, t: &Term) -> Term {
        t.substitute(&self.map)
    }

    pub fn apply_goal(&self, g: &Goal) -> Goal {
        g.substitute(&self.map)
    }

    /// Adds `var -> t`, where `t` is already resolved and does not contain
    /// `var`, keeping the substitution idempotent.
    fn bind(&mut self, var: String, t: Term) {
        let single: HashMap<String, Term> = [(var.clone(), t.clone())].into_iter().collect();
        for range in self.map.values_mut() {
            *range = range.substitute(&single);
        }
        self.map.insert(var, t);
    }

    /// Extends the substitution with a most general unifier of `s` and `t`.
    pub fn unify(&mut self, s: &Term, t: &Term) -> bool {
        let mut work = vec![(s.clone(), t.clone())];
        while let Some((a, b)) = work.pop() {
            let a = self.apply(&a);
            let b = self.apply(&b);
            match (a, b) {
                (Term::Var(x), Term::Var(y)) if x == y => {}
                (Term::Var(x), other) | (other, Term::Var(x)) => {
                    if other.occurs(&x) {
                        return false;
                    }
                    self.bind(x, other);
                }
                (Term::App(f, fa), Term::App(g, ga)) => {
                    if f != g || fa.len() != ga.len() {
                        return false;
                    }
                    work.extend(fa.into_iter().zip(ga));
                }
            }
        }
        true
    }
}

/// Most general unifier with occurs check.
pub fn unify(s: &Term, t: &Term) -> Option<Substitution> {
    let mut subst = Substitution::new();
    subst.unify(s, t).then_some(subst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Succeeds,
    Fails,
    DepthExceeded,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Succeeds => "succeeds",
            Outcome::Fails => "fails",
            Outcome::DepthExceeded => "depth exceeded",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Search nodes visited, including those of negated sub-goals.
    pub nodes: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("negation applied to non-ground goal `{0}`")]
pub struct UnsafeNegation(pub String);

/// Total node budget for one call to [`solve`].
pub const DEFAULT_NODE_LIMIT: usize = 1_000_000;

struct Solver<'a> {
    program: &'a Program,
    next_var: usize,
    nodes: usize,
    node_limit: usize,
}

impl Solver<'_> {
    fn fresh_var(&mut self) -> Term {
        self.next_var += 1;
        Term::Var(format!("_#{}", self.next_var))
    }

    /// Explores the derivations of `stack` (top at the end) with `budget`
    /// resolution steps left.
    fn explore(
        &mut self,
        mut stack: Vec<Goal>,
        mut subst: Substitution,
        budget: usize,
    ) -> Result<Outcome, UnsafeNegation> {
        loop {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Ok(Outcome::DepthExceeded);
            }
            let Some(goal) = stack.pop() else {
                return Ok(Outcome::Succeeds);
            };
            match goal {
                Goal::True => {}
                Goal::Fail => return Ok(Outcome::Fails),
                Goal::Eq(s, t) => {
                    if !subst.unify(&s, &t) {
                        return Ok(Outcome::Fails);
                    }
                }
                Goal::And(l, r) => {
                    stack.push(*r);
                    stack.push(*l);
                }
                Goal::Or(l, r) => {
                    let mut left = stack.clone();
                    left.push(*l);
                    let first = self.explore(left, subst.clone(), budget)?;
                    if first == Outcome::Succeeds {
                        return Ok(first);
                    }
                    stack.push(*r);
                    let second = self.explore(stack, subst, budget)?;
                    return Ok(combine(first, second));
                }
                Goal::Some(x, body) => {
                    let fresh = self.fresh_var();
                    let binding: HashMap<String, Term> = [(x, fresh)].into_iter().collect();
                    stack.push(body.substitute(&binding));
                }
                Goal::Naf(inner) => {
                    let inner = subst.apply_goal(&inner);
                    if !inner.is_ground() {
                        return Err(UnsafeNegation(print_goal(&inner)));
                    }
                    match self.explore(vec![inner], Substitution::new(), budget)? {
                        Outcome::Succeeds => return Ok(Outcome::Fails),
                        Outcome::Fails => {}
                        Outcome::DepthExceeded => return Ok(Outcome::DepthExceeded),
                    }
                }
                Goal::Atom(atom) => {
                    if budget == 0 {
                        return Ok(Outcome::DepthExceeded);
                    }
                    let args: Vec<Term> = atom.args.iter().map(|a| subst.apply(a)).collect();
                    let mut result = Outcome::Fails;
                    for clause in self.program.clauses_for(&atom.pred) {
                        let renaming: HashMap<String, Term> = clause
                            .vars()
                            .into_iter()
                            .map(|v| {
                                let fresh = self.fresh_var();
                                (v, fresh)
                            })
                            .collect();
                        let mut branch = subst.clone();
                        let unified = clause
                            .head
                            .args
                            .iter()
                            .zip(&args)
                            .all(|(h, a)| branch.unify(&h.substitute(&renaming), a));
                        if !unified {
                            continue;
                        }
                        let mut next = stack.clone();
                        next.push(clause.body.substitute(&renaming));
                        let outcome = self.explore(next, branch, budget - 1)?;
                        if outcome == Outcome::Succeeds {
                            return Ok(outcome);
                        }
                        result = combine(result, outcome);
                    }
                    return Ok(result);
                }
            }
        }
    }
}

/// Outcome of a choice point whose alternatives did not succeed.
fn combine(a: Outcome, b: Outcome) -> Outcome {
    match (a, b) {
        (Outcome::Succeeds, _) | (_, Outcome::Succeeds) => Outcome::Succeeds,
        (Outcome::DepthExceeded, _) | (_, Outcome::DepthExceeded) => Outcome::DepthExceeded,
        _ => Outcome::Fails,
    }
}

/// Runs `goal` against `program` with at most `depth` resolution steps per
/// derivation.
pub fn solve(program: &Program, goal: &Goal, depth: usize) -> Result<Verdict, UnsafeNegation> {
    solve_with_limit(program, goal, depth, DEFAULT_NODE_LIMIT)
}

/// Like [`solve`], also giving up with `DepthExceeded` after `node_limit`
/// search nodes.
pub fn solve_with_limit(
    program: &Program,
    goal: &Goal,
    depth: usize,
    node_limit: usize,
) -> Result<Verdict, UnsafeNegation> {
    let mut solver = Solver {
        program,
        next_var: 0,
        nodes: 0,
        node_limit,
    };
    let outcome = solver.explore(vec![goal.clone()], Substitution::new(), depth)?;
    Ok(Verdict {
        outcome,
        nodes: solver.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::{parse_goal, parse_program};

    const ADD: &str = "nat(0).\nnat(s(X)) :- nat(X).\nadd(0,Y,Y).\nadd(s(X),Y,s(Z)) :- add(X,Y,Z).\n";

    fn run(program: &str, goal: &str, depth: usize) -> Outcome {
        let p = parse_program(program).unwrap();
        solve(&p, &parse_goal(goal).unwrap(), depth).unwrap().outcome
    }

    #[test]
    fn unify_examples() {
        let x = Term::var("X");
        let zero = Term::constant("0");
        let s = unify(&x, &zero).unwrap();
        assert_eq!(s.get("X"), Some(&zero));
        assert!(unify(&x, &Term::app("s", vec![x.clone()])).is_none());
        let s = unify(
            &Term::app("s", vec![x.clone()]),
            &Term::app("s", vec![Term::var("Y")]),
        )
        .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.apply(&x), s.apply(&Term::var("Y")));
    }

    #[test]
    fn unifier_is_idempotent() {
        let t1 = Term::app("f", vec![Term::var("X"), Term::var("Y"), Term::var("Z")]);
        let t2 = Term::app(
            "f",
            vec![
                Term::var("Y"),
                Term::var("Z"),
                Term::app("g", vec![Term::var("W")]),
            ],
        );
        let s = unify(&t1, &t2).unwrap();
        assert_eq!(s.apply(&t1), s.apply(&t2));
        for range in s.as_map().values() {
            assert_eq!(s.apply(range), *range);
        }
    }

    #[test]
    fn add_examples() {
        assert_eq!(run(ADD, "add(s(0),0,s(0))", 10), Outcome::Succeeds);
        assert_eq!(run(ADD, "add(0,0,s(0))", 10), Outcome::Fails);
        assert_eq!(run(ADD, "true", 1), Outcome::Succeeds);
        assert_eq!(
            run(ADD, "add(s(s(s(0))),0,s(s(s(0))))", 2),
            Outcome::DepthExceeded
        );
    }

    #[test]
    fn negation_as_failure() {
        assert_eq!(run(ADD, "\\+ nat(s(a))", 10), Outcome::Succeeds);
        assert_eq!(run(ADD, "\\+ nat(s(0))", 10), Outcome::Fails);
        let p = parse_program(ADD).unwrap();
        let err = solve(&p, &parse_goal("\\+ nat(X)").unwrap(), 10).unwrap_err();
        assert!(err.0.contains("nat"));
        assert_eq!(run(ADD, "X = 0, \\+ nat(s(X))", 10), Outcome::Fails);
    }

    #[test]
    fn choice_and_existentials() {
        assert_eq!(run(ADD, "fail ; nat(0)", 5), Outcome::Succeeds);
        assert_eq!(run(ADD, "some(X, (X = s(Y), nat(X)))", 5), Outcome::Succeeds);
        assert_eq!(run(ADD, "nat(X), X = a", 5), Outcome::DepthExceeded);
        assert_eq!(run("p :- p.", "p", 50), Outcome::DepthExceeded);
        assert_eq!(run("p :- q.", "p", 5), Outcome::Fails);
    }

    #[test]
    fn occurs_check_in_resolution() {
        assert_eq!(run("p(X, f(X)).", "p(Y, Y)", 5), Outcome::Fails);
    }

    #[test]
    fn node_limit_reports_depth_exceeded() {
        let p = parse_program(ADD).unwrap();
        let g = parse_goal("add(X,Y,Z), fail").unwrap();
        let v = solve_with_limit(&p, &g, 1000, 50).unwrap();
        assert_eq!(v.outcome, Outcome::DepthExceeded);
    }
}
