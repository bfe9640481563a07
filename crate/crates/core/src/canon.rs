//! Equivalence of formulas and goals up to renaming of bound variables and
//! reordering inside conjunction/disjunction chains.
//!
//! Bound variables are replaced by their binder depth, chains of the same
//! associative connective are flattened, and their operands sorted. Two
//! values are equivalent when their canonical forms are equal.

use crate::ast::{Formula, Goal, Mode, Term};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum CTerm {
    Bound(usize),
    Free(String),
    App(String, Vec<CTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Canon {
    Top,
    Bot,
    Eq(CTerm, CTerm),
    Pred(Mode, String, Vec<CTerm>),
    Gr(CTerm),
    Not(Box<Canon>),
    And(Vec<Canon>),
    Or(Vec<Canon>),
    Implies(Box<Canon>, Box<Canon>),
    Iff(Box<Canon>, Box<Canon>),
    Forall(Box<Canon>),
    Exists(Box<Canon>),
    // goal-only constructors
    Call(String, Vec<CTerm>),
    Naf(Box<Canon>),
}

struct Scope {
    /// Bound names, innermost last, with their binder depth.
    stack: Vec<String>,
}

impl Scope {
    fn term(&self, t: &Term) -> CTerm {
        match t {
            Term::Var(v) => match self.stack.iter().rposition(|b| b == v) {
                Some(level) => CTerm::Bound(level),
                None => CTerm::Free(v.clone()),
            },
            Term::App(name, args) => CTerm::App(name.clone(), args.iter().map(|a| self.term(a)).collect()),
        }
    }

    fn formula(&mut self, f: &Formula) -> Canon {
        match f {
            Formula::Top => Canon::Top,
            Formula::Bot => Canon::Bot,
            Formula::Eq(s, t) => Canon::Eq(self.term(s), self.term(t)),
            Formula::Pred(mode, atom) => Canon::Pred(
                *mode,
                atom.pred.name.clone(),
                atom.args.iter().map(|a| self.term(a)).collect(),
            ),
            Formula::Gr(t) => Canon::Gr(self.term(t)),
            Formula::Not(g) => Canon::Not(Box::new(self.formula(g))),
            Formula::And(..) => {
                let mut parts = Vec::new();
                flatten_formula(f, true, &mut parts);
                let mut canon: Vec<Canon> = parts.into_iter().map(|p| self.formula(p)).collect();
                canon.sort();
                Canon::And(canon)
            }
            Formula::Or(..) => {
                let mut parts = Vec::new();
                flatten_formula(f, false, &mut parts);
                let mut canon: Vec<Canon> = parts.into_iter().map(|p| self.formula(p)).collect();
                canon.sort();
                Canon::Or(canon)
            }
            Formula::Implies(l, r) => Canon::Implies(Box::new(self.formula(l)), Box::new(self.formula(r))),
            Formula::Iff(l, r) => Canon::Iff(Box::new(self.formula(l)), Box::new(self.formula(r))),
            Formula::Forall(v, body) => {
                self.stack.push(v.clone());
                let inner = self.formula(body);
                self.stack.pop();
                Canon::Forall(Box::new(inner))
            }
            Formula::Exists(v, body) => {
                self.stack.push(v.clone());
                let inner = self.formula(body);
                self.stack.pop();
                Canon::Exists(Box::new(inner))
            }
        }
    }

    fn goal(&mut self, g: &Goal) -> Canon {
        match g {
            Goal::True => Canon::Top,
            Goal::Fail => Canon::Bot,
            Goal::Eq(s, t) => Canon::Eq(self.term(s), self.term(t)),
            Goal::Atom(a) => Canon::Call(a.pred.name.clone(), a.args.iter().map(|t| self.term(t)).collect()),
            Goal::Naf(inner) => Canon::Naf(Box::new(self.goal(inner))),
            Goal::And(..) | Goal::Or(..) => {
                let conj = matches!(g, Goal::And(..));
                let mut parts = Vec::new();
                flatten_goal(g, conj, &mut parts);
                let mut canon: Vec<Canon> = parts.into_iter().map(|p| self.goal(p)).collect();
                canon.sort();
                if conj {
                    Canon::And(canon)
                } else {
                    Canon::Or(canon)
                }
            }
            Goal::Some(v, body) => {
                self.stack.push(v.clone());
                let inner = self.goal(body);
                self.stack.pop();
                Canon::Exists(Box::new(inner))
            }
        }
    }
}

fn flatten_formula<'a>(f: &'a Formula, conj: bool, out: &mut Vec<&'a Formula>) {
    match (f, conj) {
        (Formula::And(l, r), true) | (Formula::Or(l, r), false) => {
            flatten_formula(l, conj, out);
            flatten_formula(r, conj, out);
        }
        _ => out.push(f),
    }
}

fn flatten_goal<'a>(g: &'a Goal, conj: bool, out: &mut Vec<&'a Goal>) {
    match (g, conj) {
        (Goal::And(l, r), true) | (Goal::Or(l, r), false) => {
            flatten_goal(l, conj, out);
            flatten_goal(r, conj, out);
        }
        _ => out.push(g),
    }
}

fn canon_formula(f: &Formula) -> Canon {
    Scope { stack: Vec::new() }.formula(f)
}

/// Equal up to bound-variable names and the order/grouping of `&`/`|`
/// chains.
pub fn alpha_ac_equivalent(a: &Formula, b: &Formula) -> bool {
    canon_formula(a) == canon_formula(b)
}

pub fn alpha_equivalent_goals(a: &Goal, b: &Goal) -> bool {
    Scope { stack: Vec::new() }.goal(a) == Scope { stack: Vec::new() }.goal(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str, v: &str) -> Formula {
        Formula::succeeds(name, vec![Term::var(v)])
    }

    #[test]
    fn renaming_bound_variables() {
        let a = Formula::forall("x", p("nat", "x"));
        let b = Formula::forall("y", p("nat", "y"));
        assert!(alpha_ac_equivalent(&a, &b));
    }

    #[test]
    fn free_variables_must_match() {
        assert!(!alpha_ac_equivalent(&p("nat", "x"), &p("nat", "y")));
    }

    #[test]
    fn conjunct_permutation_and_grouping() {
        let a = Formula::and(p("a", "x"), Formula::and(p("b", "x"), p("c", "x")));
        let b = Formula::and(Formula::and(p("c", "x"), p("a", "x")), p("b", "x"));
        assert!(alpha_ac_equivalent(&a, &b));
        let c = Formula::or(p("a", "x"), Formula::and(p("b", "x"), p("c", "x")));
        assert!(!alpha_ac_equivalent(&a, &c));
    }

    #[test]
    fn binder_structure_matters() {
        let a = Formula::forall(
            "x",
            Formula::forall("y", Formula::Eq(Term::var("x"), Term::var("y"))),
        );
        let b = Formula::forall(
            "y",
            Formula::forall("x", Formula::Eq(Term::var("x"), Term::var("y"))),
        );
        assert!(!alpha_ac_equivalent(&a, &b));
    }

    #[test]
    fn implication_is_not_commutative() {
        let a = Formula::implies(p("a", "x"), p("b", "x"));
        let b = Formula::implies(p("b", "x"), p("a", "x"));
        assert!(!alpha_ac_equivalent(&a, &b));
    }
}
