//! Terms, goals, clauses, programs and first-order formulas.
//!
//! Every value here is immutable once built. Goals are the executable
//! language of the program; formulas are the specification language whose
//! atoms talk about success, failure and termination of user predicates.

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexSet;

/// A function symbol keyed by name and arity. Arity 0 is a constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functor {
    pub name: String,
    pub arity: usize,
}

impl Functor {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Functor {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// A user predicate symbol keyed by name and arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredId {
    pub name: String,
    pub arity: usize,
}

impl PredId {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        PredId {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for PredId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn functor(&self) -> Option<Functor> {
        match self {
            Term::Var(_) => None,
            Term::App(name, args) => Some(Functor::new(name.clone(), args.len())),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn occurs(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::App(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }

    /// Appends the variables of the term in first-occurrence order.
    pub fn collect_vars(&self, out: &mut IndexSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> IndexSet<String> {
        let mut out = IndexSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_functors(&self, out: &mut IndexSet<Functor>) {
        if let Term::App(name, args) = self {
            out.insert(Functor::new(name.clone(), args.len()));
            args.iter().for_each(|a| a.collect_functors(out));
        }
    }

    pub fn substitute(&self, binding: &HashMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => binding.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| a.substitute(binding)).collect())
            }
        }
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

/// An atomic formula `pred(args)`. The argument count always equals the
/// predicate's arity because the arity is taken from the arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub pred: PredId,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(name: impl Into<String>, args: Vec<Term>) -> Self {
        let pred = PredId::new(name, args.len());
        Atom { pred, args }
    }

    pub fn substitute(&self, binding: &HashMap<String, Term>) -> Atom {
        Atom {
            pred: self.pred.clone(),
            args: self.args.iter().map(|t| t.substitute(binding)).collect(),
        }
    }

    pub fn collect_vars(&self, out: &mut IndexSet<String>) {
        self.args.iter().for_each(|t| t.collect_vars(out));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    True,
    Fail,
    Eq(Term, Term),
    Atom(Atom),
    Naf(Box<Goal>),
    And(Box<Goal>, Box<Goal>),
    Or(Box<Goal>, Box<Goal>),
    /// `some x G`: binds exactly one variable.
    Some(String, Box<Goal>),
}

impl Goal {
    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Goal {
        Goal::Atom(Atom::new(name, args))
    }

    pub fn eq(lhs: Term, rhs: Term) -> Goal {
        Goal::Eq(lhs, rhs)
    }

    pub fn naf(inner: Goal) -> Goal {
        Goal::Naf(Box::new(inner))
    }

    pub fn and(left: Goal, right: Goal) -> Goal {
        Goal::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Goal, right: Goal) -> Goal {
        Goal::Or(Box::new(left), Box::new(right))
    }

    pub fn some(var: impl Into<String>, body: Goal) -> Goal {
        Goal::Some(var.into(), Box::new(body))
    }

    /// Right-nested conjunction; `true` when empty.
    pub fn conj(goals: Vec<Goal>) -> Goal {
        let mut iter = goals.into_iter().rev();
        match iter.next() {
            None => Goal::True,
            Some(last) => iter.fold(last, |acc, g| Goal::and(g, acc)),
        }
    }

    /// Right-nested disjunction; `fail` when empty.
    pub fn disj(goals: Vec<Goal>) -> Goal {
        let mut iter = goals.into_iter().rev();
        match iter.next() {
            None => Goal::Fail,
            Some(last) => iter.fold(last, |acc, g| Goal::or(g, acc)),
        }
    }

    /// Wraps `body` in one `some` per variable, first variable outermost.
    pub fn some_all<I, S>(vars: I, body: Goal) -> Goal
    where
        I: IntoIterator<Item = S>,
        I::IntoIter: DoubleEndedIterator,
        S: Into<String>,
    {
        vars.into_iter().rev().fold(body, |acc, v| Goal::some(v, acc))
    }

    pub fn free_vars(&self) -> IndexSet<String> {
        let mut out = IndexSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut IndexSet<String>) {
        let push_term = |t: &Term, out: &mut IndexSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Goal::True | Goal::Fail => {}
            Goal::Eq(s, t) => {
                push_term(s, out);
                push_term(t, out);
            }
            Goal::Atom(a) => a.args.iter().for_each(|t| push_term(t, out)),
            Goal::Naf(g) => g.collect_free(bound, out),
            Goal::And(l, r) | Goal::Or(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Goal::Some(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// All variable names, free or bound.
    pub fn all_vars(&self, out: &mut HashSet<String>) {
        match self {
            Goal::True | Goal::Fail => {}
            Goal::Eq(s, t) => {
                out.extend(s.vars());
                out.extend(t.vars());
            }
            Goal::Atom(a) => a.args.iter().for_each(|t| out.extend(t.vars())),
            Goal::Naf(g) => g.all_vars(out),
            Goal::And(l, r) | Goal::Or(l, r) => {
                l.all_vars(out);
                r.all_vars(out);
            }
            Goal::Some(v, body) => {
                out.insert(v.clone());
                body.all_vars(out);
            }
        }
    }

    pub fn is_ground(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn collect_functors(&self, out: &mut IndexSet<Functor>) {
        match self {
            Goal::True | Goal::Fail => {}
            Goal::Eq(s, t) => {
                s.collect_functors(out);
                t.collect_functors(out);
            }
            Goal::Atom(a) => a.args.iter().for_each(|t| t.collect_functors(out)),
            Goal::Naf(g) | Goal::Some(_, g) => g.collect_functors(out),
            Goal::And(l, r) | Goal::Or(l, r) => {
                l.collect_functors(out);
                r.collect_functors(out);
            }
        }
    }

    /// Predicates called anywhere in the goal, in first-occurrence order.
    pub fn collect_calls(&self, out: &mut IndexSet<PredId>) {
        match self {
            Goal::True | Goal::Fail | Goal::Eq(..) => {}
            Goal::Atom(a) => {
                out.insert(a.pred.clone());
            }
            Goal::Naf(g) | Goal::Some(_, g) => g.collect_calls(out),
            Goal::And(l, r) | Goal::Or(l, r) => {
                l.collect_calls(out);
                r.collect_calls(out);
            }
        }
    }

    /// Capture-avoiding simultaneous substitution.
    pub fn substitute(&self, binding: &HashMap<String, Term>) -> Goal {
        if binding.is_empty() {
            return self.clone();
        }
        match self {
            Goal::True | Goal::Fail => self.clone(),
            Goal::Eq(s, t) => Goal::Eq(s.substitute(binding), t.substitute(binding)),
            Goal::Atom(a) => Goal::Atom(a.substitute(binding)),
            Goal::Naf(g) => Goal::naf(g.substitute(binding)),
            Goal::And(l, r) => Goal::and(l.substitute(binding), r.substitute(binding)),
            Goal::Or(l, r) => Goal::or(l.substitute(binding), r.substitute(binding)),
            Goal::Some(v, body) => {
                let free = body.free_vars();
                let (binder, inner) = enter_binder(v, &free, binding);
                Goal::some(binder, body.substitute(&inner))
            }
        }
    }
}

/// Computes the binding to push under a binder for `var`, renaming the
/// binder when a range term would otherwise be captured.
fn enter_binder(
    var: &str,
    body_free: &IndexSet<String>,
    binding: &HashMap<String, Term>,
) -> (String, HashMap<String, Term>) {
    let mut inner: HashMap<String, Term> = binding
        .iter()
        .filter(|(k, _)| k.as_str() != var && body_free.contains(k.as_str()))
        .map(|(k, t)| (k.clone(), t.clone()))
        .collect();
    let captured = inner.values().any(|t| t.occurs(var));
    if !captured {
        return (var.to_string(), inner);
    }
    let mut avoid: HashSet<&str> = body_free.iter().map(String::as_str).collect();
    let range_vars: Vec<String> = inner.values().flat_map(|t| t.vars()).collect();
    avoid.extend(range_vars.iter().map(String::as_str));
    avoid.extend(inner.keys().map(String::as_str));
    let renamed = (1..)
        .map(|k| format!("{var}{k}"))
        .find(|cand| !avoid.contains(cand.as_str()))
        .expect("unbounded candidate supply");
    inner.insert(var.to_string(), Term::Var(renamed.clone()));
    (renamed, inner)
}

/// Clause `head :- body`. Facts carry the body `true`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub head: Atom,
    pub body: Goal,
}

impl Clause {
    pub fn new(head: Atom, body: Goal) -> Self {
        Clause { head, body }
    }

    /// Clause variables in first-occurrence order (head first, then body).
    pub fn vars(&self) -> IndexSet<String> {
        let mut out = IndexSet::new();
        self.head.collect_vars(&mut out);
        out.extend(self.body.free_vars());
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub clauses: Vec<Clause>,
    /// Function symbols in first-occurrence order.
    pub signature: IndexSet<Functor>,
    /// Defined and called predicates in first-occurrence order.
    pub predicates: IndexSet<PredId>,
}

impl Program {
    pub fn new(clauses: Vec<Clause>) -> Self {
        let mut signature = IndexSet::new();
        let mut predicates = IndexSet::new();
        for clause in &clauses {
            predicates.insert(clause.head.pred.clone());
            clause
                .head
                .args
                .iter()
                .for_each(|t| t.collect_functors(&mut signature));
            clause.body.collect_functors(&mut signature);
            clause.body.collect_calls(&mut predicates);
        }
        Program {
            clauses,
            signature,
            predicates,
        }
    }

    pub fn clauses_for<'a>(&'a self, pred: &'a PredId) -> impl Iterator<Item = &'a Clause> + 'a {
        self.clauses.iter().filter(move |c| &c.head.pred == pred)
    }

    /// Extends the signature with function symbols used outside the program
    /// text, such as in queried facts.
    pub fn extend_signature(&mut self, functors: impl IntoIterator<Item = Functor>) {
        self.signature.extend(functors);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Succeeds,
    Fails,
    Terminates,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Succeeds, Mode::Fails, Mode::Terminates];

    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Succeeds => "succeeds",
            Mode::Fails => "fails",
            Mode::Terminates => "terminates",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bot,
    Eq(Term, Term),
    Pred(Mode, Atom),
    Gr(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn pred(mode: Mode, atom: Atom) -> Formula {
        Formula::Pred(mode, atom)
    }

    pub fn succeeds(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(Mode::Succeeds, Atom::new(name, args))
    }

    pub fn fails(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(Mode::Fails, Atom::new(name, args))
    }

    pub fn terminates(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(Mode::Terminates, Atom::new(name, args))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Universal prefix over `vars`, first variable outermost.
    pub fn forall_all<I, S>(vars: I, body: Formula) -> Formula
    where
        I: IntoIterator<Item = S>,
        I::IntoIter: DoubleEndedIterator,
        S: Into<String>,
    {
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v, acc))
    }

    /// Right-nested conjunction; `Top` when empty.
    pub fn conj(parts: Vec<Formula>) -> Formula {
        let mut iter = parts.into_iter().rev();
        match iter.next() {
            None => Formula::Top,
            Some(last) => iter.fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Right-nested disjunction; `Bot` when empty.
    pub fn disj(parts: Vec<Formula>) -> Formula {
        let mut iter = parts.into_iter().rev();
        match iter.next() {
            None => Formula::Bot,
            Some(last) => iter.fold(last, |acc, f| Formula::or(f, acc)),
        }
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> IndexSet<String> {
        let mut out = IndexSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut IndexSet<String>) {
        let push_term = |t: &Term, bound: &Vec<String>, out: &mut IndexSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Eq(s, t) => {
                push_term(s, bound, out);
                push_term(t, bound, out);
            }
            Formula::Pred(_, a) => a.args.iter().for_each(|t| push_term(t, bound, out)),
            Formula::Gr(t) => push_term(t, bound, out),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Universal closure over the free variables, in first-occurrence order.
    pub fn universal_closure(self) -> Formula {
        let free = self.free_vars();
        Formula::forall_all(free, self)
    }

    /// All variable names, free or bound.
    pub fn all_vars(&self, out: &mut HashSet<String>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Eq(s, t) => {
                out.extend(s.vars());
                out.extend(t.vars());
            }
            Formula::Pred(_, a) => a.args.iter().for_each(|t| out.extend(t.vars())),
            Formula::Gr(t) => out.extend(t.vars()),
            Formula::Not(f) => f.all_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.all_vars(out);
                r.all_vars(out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                out.insert(v.clone());
                body.all_vars(out);
            }
        }
    }

    pub fn collect_functors(&self, out: &mut IndexSet<Functor>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Eq(s, t) => {
                s.collect_functors(out);
                t.collect_functors(out);
            }
            Formula::Pred(_, a) => a.args.iter().for_each(|t| t.collect_functors(out)),
            Formula::Gr(t) => t.collect_functors(out),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.collect_functors(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_functors(out);
                r.collect_functors(out);
            }
        }
    }

    pub fn collect_preds(&self, out: &mut IndexSet<PredId>) {
        match self {
            Formula::Top | Formula::Bot | Formula::Eq(..) | Formula::Gr(_) => {}
            Formula::Pred(_, a) => {
                out.insert(a.pred.clone());
            }
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.collect_preds(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_preds(out);
                r.collect_preds(out);
            }
        }
    }

    /// Capture-avoiding simultaneous substitution. Bound variables that
    /// would capture a variable of a range term are renamed by appending a
    /// numeric suffix.
    pub fn substitute(&self, binding: &HashMap<String, Term>) -> Formula {
        if binding.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Top | Formula::Bot => self.clone(),
            Formula::Eq(s, t) => Formula::Eq(s.substitute(binding), t.substitute(binding)),
            Formula::Pred(m, a) => Formula::Pred(*m, a.substitute(binding)),
            Formula::Gr(t) => Formula::Gr(t.substitute(binding)),
            Formula::Not(f) => Formula::not(f.substitute(binding)),
            Formula::And(l, r) => Formula::and(l.substitute(binding), r.substitute(binding)),
            Formula::Or(l, r) => Formula::or(l.substitute(binding), r.substitute(binding)),
            Formula::Implies(l, r) => Formula::implies(l.substitute(binding), r.substitute(binding)),
            Formula::Iff(l, r) => Formula::iff(l.substitute(binding), r.substitute(binding)),
            Formula::Forall(v, body) => {
                let (binder, inner) = enter_binder(v, &body.free_vars(), binding);
                Formula::forall(binder, body.substitute(&inner))
            }
            Formula::Exists(v, body) => {
                let (binder, inner) = enter_binder(v, &body.free_vars(), binding);
                Formula::exists(binder, body.substitute(&inner))
            }
        }
    }

    /// Rewrites every atom bottom-up with `f`; binders are left untouched.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Formula) -> Option<Formula>) -> Formula {
        match self {
            Formula::Top | Formula::Bot | Formula::Eq(..) | Formula::Pred(..) | Formula::Gr(_) => {
                f(self).unwrap_or_else(|| self.clone())
            }
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(l, r) => Formula::and(l.map_atoms(f), r.map_atoms(f)),
            Formula::Or(l, r) => Formula::or(l.map_atoms(f), r.map_atoms(f)),
            Formula::Implies(l, r) => Formula::implies(l.map_atoms(f), r.map_atoms(f)),
            Formula::Iff(l, r) => Formula::iff(l.map_atoms(f), r.map_atoms(f)),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.map_atoms(f)),
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.map_atoms(f)),
        }
    }

    /// Number of connective and atom nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Eq(..) | Formula::Pred(..) | Formula::Gr(_) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactKind {
    Lemma,
    Corollary,
    Theorem,
}

impl FactKind {
    pub fn keyword(self) -> &'static str {
        match self {
            FactKind::Lemma => "lemma",
            FactKind::Corollary => "corollary",
            FactKind::Theorem => "theorem",
        }
    }

    pub fn from_keyword(word: &str) -> Option<FactKind> {
        match word {
            "lemma" => Some(FactKind::Lemma),
            "corollary" => Some(FactKind::Corollary),
            "theorem" => Some(FactKind::Theorem),
            _ => None,
        }
    }
}

impl fmt::Display for FactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A named property. The statement is closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub kind: FactKind,
    /// Qualified `library:label` name, e.g. `add:x_0_x`.
    pub name: String,
    pub statement: Formula,
}

impl Fact {
    pub fn new(kind: FactKind, name: impl Into<String>, statement: Formula) -> Self {
        Fact {
            kind,
            name: name.into(),
            statement,
        }
    }

    /// The part of the name before the first `:`.
    pub fn library(&self) -> &str {
        self.name.split(':').next().unwrap_or(&self.name)
    }
}
