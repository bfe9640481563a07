//! The success (S), failure (F) and termination (T) operators from goals
//! to formulas, the groundness map on goals, and Boolean unit
//! simplification.

use crate::ast::{Formula, Goal, Mode};

pub fn s_of(goal: &Goal) -> Formula {
    match goal {
        Goal::True => Formula::Top,
        Goal::Fail => Formula::Bot,
        Goal::Eq(s, t) => Formula::Eq(s.clone(), t.clone()),
        Goal::Atom(a) => Formula::Pred(Mode::Succeeds, a.clone()),
        Goal::Naf(g) => f_of(g),
        Goal::And(g, h) => Formula::and(s_of(g), s_of(h)),
        Goal::Or(g, h) => Formula::or(s_of(g), s_of(h)),
        Goal::Some(x, g) => Formula::exists(x.clone(), s_of(g)),
    }
}

pub fn f_of(goal: &Goal) -> Formula {
    match goal {
        Goal::True => Formula::Bot,
        Goal::Fail => Formula::Top,
        Goal::Eq(s, t) => Formula::not(Formula::Eq(s.clone(), t.clone())),
        Goal::Atom(a) => Formula::Pred(Mode::Fails, a.clone()),
        Goal::Naf(g) => s_of(g),
        Goal::And(g, h) => Formula::or(f_of(g), f_of(h)),
        Goal::Or(g, h) => Formula::and(f_of(g), f_of(h)),
        Goal::Some(x, g) => Formula::forall(x.clone(), f_of(g)),
    }
}

pub fn t_of(goal: &Goal) -> Formula {
    match goal {
        Goal::True | Goal::Fail | Goal::Eq(..) => Formula::Top,
        Goal::Atom(a) => Formula::Pred(Mode::Terminates, a.clone()),
        Goal::Naf(g) => Formula::and(t_of(g), gr_of_goal(g)),
        Goal::And(g, h) => Formula::and(t_of(g), Formula::or(f_of(g), t_of(h))),
        Goal::Or(g, h) => Formula::and(t_of(g), t_of(h)),
        Goal::Some(x, g) => Formula::forall(x.clone(), t_of(g)),
    }
}

/// Groundness of a goal. Terms stay atomic: `gr(t)` is never expanded
/// over the structure of `t`.
pub fn gr_of_goal(goal: &Goal) -> Formula {
    match goal {
        Goal::True | Goal::Fail => Formula::Top,
        Goal::Eq(s, t) => Formula::and(Formula::Gr(s.clone()), Formula::Gr(t.clone())),
        Goal::Atom(a) => Formula::conj(a.args.iter().cloned().map(Formula::Gr).collect()),
        Goal::Naf(g) => gr_of_goal(g),
        Goal::And(g, h) | Goal::Or(g, h) => Formula::and(gr_of_goal(g), gr_of_goal(h)),
        Goal::Some(x, g) => Formula::exists(x.clone(), gr_of_goal(g)),
    }
}

/// Removes `Top`/`Bot` units bottom-up. Nothing beyond unit rewriting is
/// attempted; quantifiers over a constant collapse to the constant.
pub fn simplify(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Top | Bot | Eq(..) | Pred(..) | Gr(_) => f.clone(),
        Not(g) => match simplify(g) {
            Top => Bot,
            Bot => Top,
            g => Formula::not(g),
        },
        And(l, r) => match (simplify(l), simplify(r)) {
            (Bot, _) | (_, Bot) => Bot,
            (Top, x) | (x, Top) => x,
            (l, r) => Formula::and(l, r),
        },
        Or(l, r) => match (simplify(l), simplify(r)) {
            (Top, _) | (_, Top) => Top,
            (Bot, x) | (x, Bot) => x,
            (l, r) => Formula::or(l, r),
        },
        Implies(l, r) => match (simplify(l), simplify(r)) {
            (Bot, _) | (_, Top) => Top,
            (Top, x) => x,
            (x, Bot) => Formula::not(x),
            (l, r) => Formula::implies(l, r),
        },
        Iff(l, r) => match (simplify(l), simplify(r)) {
            (Top, x) | (x, Top) => x,
            (Bot, Bot) => Top,
            (Bot, x) | (x, Bot) => Formula::not(x),
            (l, r) => Formula::iff(l, r),
        },
        Forall(v, body) => match simplify(body) {
            Top => Top,
            Bot => Bot,
            b => Formula::forall(v.clone(), b),
        },
        Exists(v, body) => match simplify(body) {
            Top => Top,
            Bot => Bot,
            b => Formula::exists(v.clone(), b),
        },
    }
}
