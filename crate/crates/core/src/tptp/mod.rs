//! TPTP FOF output: symbol mangling, formula and file emission, and a
//! validator for the emitted subset.
//!
//! Predicates are mangled as `<name>_succeeds`, `<name>_fails`,
//! `<name>_terminates`; the groundness predicate is `gr`. Variables get an
//! `X` prefix. Symbols that are not lower words are single-quoted.

mod parse;

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use crate::ast::{Atom, Formula, Functor, Mode, PredId, Term};
use crate::axiomgen::{NamedFormula, Role};

pub use parse::{parse_fof, parse_fof_formula, validate_fof, Diagnostic, Fof, FofInput, FofTerm};

pub const GENERATOR: &str = concat!("starkc ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MangleError {
    #[error("symbols {first} and {second} both mangle to `{token}`")]
    Collision {
        token: String,
        first: String,
        second: String,
    },
    #[error("name `{0}` contains characters that cannot appear in TPTP output")]
    Unrepresentable(String),
    #[error("no TPTP token for symbol {0}")]
    UnknownSymbol(String),
    #[error("unknown TPTP token `{0}`")]
    UnknownToken(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmitError {
    #[error("obligation has no conjecture")]
    NoConjecture,
    #[error("obligation has {0} conjectures")]
    MultipleConjectures(usize),
    #[error("the conjecture must be the last formula")]
    ConjectureNotLast,
    #[error("duplicate formula name `{0}`")]
    DuplicateName(String),
    #[error(transparent)]
    Mangle(#[from] MangleError),
}

/// `[a-z][A-Za-z0-9_]*`
pub fn is_lower_word(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_printable(s: &str) -> bool {
    s.chars().all(|c| (' '..='~').contains(&c))
}

/// A symbol token: bare when a lower word, single-quoted otherwise.
pub fn quote_atom(name: &str) -> Result<String, MangleError> {
    if is_lower_word(name) {
        return Ok(name.to_string());
    }
    if name.is_empty() || !is_printable(name) {
        return Err(MangleError::Unrepresentable(name.to_string()));
    }
    let mut out = String::with_capacity(name.len() + 2);
    out.push('\'');
    for c in name.chars() {
        if c == '\'' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('\'');
    Ok(out)
}

/// `x` becomes `Xx`. Names outside `[A-Za-z0-9_]` are hex-encoded behind a
/// `Y` so the map stays injective.
pub fn variable_token(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        format!("X{name}")
    } else {
        let mut out = String::from("Y");
        for b in name.bytes() {
            let _ = write!(out, "{b:02x}");
        }
        out
    }
}

pub fn demangle_variable(token: &str) -> Option<String> {
    if let Some(rest) = token.strip_prefix('X') {
        return (!rest.is_empty()).then(|| rest.to_string());
    }
    let hex = token.strip_prefix('Y')?;
    if hex.len() % 2 != 0 {
        return None;
    }
    let bytes: Option<Vec<u8>> = (0..hex.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&hex[i..i + 2], 16).ok())
        .collect();
    String::from_utf8(bytes?).ok()
}

fn mode_suffix(mode: Mode) -> &'static str {
    match mode {
        Mode::Succeeds => "_succeeds",
        Mode::Fails => "_fails",
        Mode::Terminates => "_terminates",
    }
}

/// What a TPTP symbol token stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Functor(Functor),
    Pred(PredId, Mode),
    Gr,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Functor(func) => write!(f, "functor {func}"),
            Symbol::Pred(p, mode) => write!(f, "{} {p}", mode.keyword()),
            Symbol::Gr => f.write_str("gr/1"),
        }
    }
}

/// Injective map from source symbols to TPTP tokens for one obligation.
#[derive(Clone, Debug, Default)]
pub struct ManglingTable {
    functors: IndexMap<Functor, String>,
    preds: IndexMap<(PredId, Mode), String>,
    reverse: HashMap<String, Symbol>,
}

/// Base names, with `_<arity>` appended for names used at several arities.
fn bases<'a>(items: impl Iterator<Item = (&'a str, usize)> + Clone) -> HashMap<(String, usize), String> {
    let mut arities: HashMap<&str, IndexSet<usize>> = HashMap::new();
    for (name, arity) in items.clone() {
        arities.entry(name).or_default().insert(arity);
    }
    items
        .map(|(name, arity)| {
            let base = if arities[name].len() > 1 {
                format!("{name}_{arity}")
            } else {
                name.to_string()
            };
            ((name.to_string(), arity), base)
        })
        .collect()
}

impl ManglingTable {
    pub fn new<'a>(
        functors: impl IntoIterator<Item = &'a Functor>,
        preds: impl IntoIterator<Item = &'a PredId>,
    ) -> Result<Self, MangleError> {
        let functors: Vec<&Functor> = functors.into_iter().collect();
        let preds: Vec<&PredId> = preds.into_iter().collect();
        let mut table = ManglingTable::default();
        table.reverse.insert("gr".to_string(), Symbol::Gr);

        let fbases = bases(functors.iter().map(|f| (f.name.as_str(), f.arity)));
        for f in &functors {
            let token = quote_atom(&fbases[&(f.name.clone(), f.arity)])?;
            table.claim(&token, Symbol::Functor((*f).clone()))?;
            table.functors.insert((*f).clone(), token);
        }
        let pbases = bases(preds.iter().map(|p| (p.name.as_str(), p.arity)));
        for p in &preds {
            let base = &pbases[&(p.name.clone(), p.arity)];
            for mode in Mode::ALL {
                let token = quote_atom(&format!("{base}{}", mode_suffix(mode)))?;
                table.claim(&token, Symbol::Pred((*p).clone(), mode))?;
                table.preds.insert(((*p).clone(), mode), token);
            }
        }
        Ok(table)
    }

    /// Table covering every symbol of the given formulas, in first-use order.
    pub fn for_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Result<Self, MangleError> {
        let mut functors = IndexSet::new();
        let mut preds = IndexSet::new();
        for f in formulas {
            f.collect_functors(&mut functors);
            f.collect_preds(&mut preds);
        }
        ManglingTable::new(&functors, &preds)
    }

    fn claim(&mut self, token: &str, symbol: Symbol) -> Result<(), MangleError> {
        if let Some(existing) = self.reverse.get(token) {
            if *existing != symbol {
                return Err(MangleError::Collision {
                    token: token.to_string(),
                    first: existing.to_string(),
                    second: symbol.to_string(),
                });
            }
        }
        self.reverse.insert(token.to_string(), symbol);
        Ok(())
    }

    pub fn functor_token(&self, f: &Functor) -> Result<&str, MangleError> {
        self.functors
            .get(f)
            .map(String::as_str)
            .ok_or_else(|| MangleError::UnknownSymbol(format!("functor {f}")))
    }

    pub fn pred_token(&self, p: &PredId, mode: Mode) -> Result<&str, MangleError> {
        self.preds
            .get(&(p.clone(), mode))
            .map(String::as_str)
            .ok_or_else(|| MangleError::UnknownSymbol(format!("{} {p}", mode.keyword())))
    }

    /// The source symbol behind a token. Bare and quoted spellings of a
    /// lower word are the same token.
    pub fn demangle(&self, token: &str) -> Option<&Symbol> {
        self.reverse.get(token)
    }

    pub fn demangle_term(&self, t: &FofTerm) -> Result<Term, MangleError> {
        match t {
            FofTerm::Var(v) => demangle_variable(v)
                .map(Term::Var)
                .ok_or_else(|| MangleError::UnknownToken(v.clone())),
            FofTerm::App(name, args) => match self.demangle(name) {
                Some(Symbol::Functor(f)) if f.arity == args.len() => Ok(Term::App(
                    f.name.clone(),
                    args.iter()
                        .map(|a| self.demangle_term(a))
                        .collect::<Result<_, _>>()?,
                )),
                _ => Err(MangleError::UnknownToken(name.clone())),
            },
        }
    }

    /// Maps a parsed FOF formula back to a source formula.
    pub fn demangle_formula(&self, f: &Fof) -> Result<Formula, MangleError> {
        Ok(match f {
            Fof::True => Formula::Top,
            Fof::False => Formula::Bot,
            Fof::Eq(s, t) => Formula::Eq(self.demangle_term(s)?, self.demangle_term(t)?),
            Fof::Atom(name, args) => {
                let args: Vec<Term> = args
                    .iter()
                    .map(|a| self.demangle_term(a))
                    .collect::<Result<_, _>>()?;
                match self.demangle(name) {
                    Some(Symbol::Gr) if args.len() == 1 => Formula::Gr(args.into_iter().next().unwrap()),
                    Some(Symbol::Pred(p, mode)) if p.arity == args.len() => Formula::Pred(
                        *mode,
                        Atom {
                            pred: p.clone(),
                            args,
                        },
                    ),
                    _ => return Err(MangleError::UnknownToken(name.clone())),
                }
            }
            Fof::Not(g) => Formula::not(self.demangle_formula(g)?),
            Fof::And(l, r) => Formula::and(self.demangle_formula(l)?, self.demangle_formula(r)?),
            Fof::Or(l, r) => Formula::or(self.demangle_formula(l)?, self.demangle_formula(r)?),
            Fof::Implies(l, r) => Formula::implies(self.demangle_formula(l)?, self.demangle_formula(r)?),
            Fof::Iff(l, r) => Formula::iff(self.demangle_formula(l)?, self.demangle_formula(r)?),
            Fof::Forall(v, body) => Formula::forall(
                demangle_variable(v).ok_or_else(|| MangleError::UnknownToken(v.clone()))?,
                self.demangle_formula(body)?,
            ),
            Fof::Exists(v, body) => Formula::exists(
                demangle_variable(v).ok_or_else(|| MangleError::UnknownToken(v.clone()))?,
                self.demangle_formula(body)?,
            ),
        })
    }
}

struct Emitter<'a> {
    table: &'a ManglingTable,
    out: String,
}

impl Emitter<'_> {
    fn term(&mut self, t: &Term) -> Result<(), MangleError> {
        match t {
            Term::Var(v) => self.out.push_str(&variable_token(v)),
            Term::App(name, args) => {
                let token = self
                    .table
                    .functor_token(&Functor::new(name.clone(), args.len()))?;
                self.out.push_str(token);
                self.args(args)?;
            }
        }
        Ok(())
    }

    fn args(&mut self, args: &[Term]) -> Result<(), MangleError> {
        if args.is_empty() {
            return Ok(());
        }
        self.out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                self.out.push(',');
            }
            self.term(a)?;
        }
        self.out.push(')');
        Ok(())
    }

    /// An operand position: binary formulas are parenthesized.
    fn unit(&mut self, f: &Formula, paren_eq: bool) -> Result<(), MangleError> {
        let paren = matches!(
            f,
            Formula::And(..) | Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..)
        ) || (paren_eq && matches!(f, Formula::Eq(..)));
        if paren {
            self.out.push('(');
        }
        self.formula(f)?;
        if paren {
            self.out.push(')');
        }
        Ok(())
    }

    fn formula(&mut self, f: &Formula) -> Result<(), MangleError> {
        match f {
            Formula::Top => self.out.push_str("$true"),
            Formula::Bot => self.out.push_str("$false"),
            Formula::Eq(s, t) => {
                self.term(s)?;
                self.out.push_str(" = ");
                self.term(t)?;
            }
            Formula::Pred(mode, atom) => {
                let token = self.table.pred_token(&atom.pred, *mode)?;
                self.out.push_str(token);
                self.args(&atom.args)?;
            }
            Formula::Gr(t) => {
                self.out.push_str("gr(");
                self.term(t)?;
                self.out.push(')');
            }
            Formula::Not(g) => {
                self.out.push_str("~ ");
                self.unit(g, true)?;
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                let op = match f {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    Formula::Implies(..) => " => ",
                    _ => " <=> ",
                };
                self.unit(l, false)?;
                self.out.push_str(op);
                self.unit(r, false)?;
            }
            Formula::Forall(..) | Formula::Exists(..) => {
                let universal = matches!(f, Formula::Forall(..));
                let mut vars: Vec<&str> = Vec::new();
                let mut cur = f;
                while let (Formula::Forall(v, body), true) | (Formula::Exists(v, body), false) =
                    (cur, universal)
                {
                    if vars.contains(&v.as_str()) {
                        break;
                    }
                    vars.push(v);
                    cur = body;
                }
                self.out.push_str(if universal { "! [" } else { "? [" });
                for (i, v) in vars.iter().enumerate() {
                    if i > 0 {
                        self.out.push(',');
                    }
                    self.out.push_str(&variable_token(v));
                }
                self.out.push_str("] : ");
                self.unit(cur, true)?;
            }
        }
        Ok(())
    }
}

/// Renders a formula, universally closing any free variables first.
pub fn emit_formula(f: &Formula, table: &ManglingTable) -> Result<String, MangleError> {
    let closed;
    let f = if f.is_closed() {
        f
    } else {
        closed = f.clone().universal_closure();
        &closed
    };
    let mut e = Emitter {
        table,
        out: String::new(),
    };
    e.formula(f)?;
    Ok(e.out)
}

pub fn emit_named(nf: &NamedFormula, table: &ManglingTable) -> Result<String, MangleError> {
    Ok(format!(
        "fof({},{},{}).",
        quote_atom(&nf.name)?,
        nf.role.keyword(),
        emit_formula(&nf.formula, table)?
    ))
}

/// Provenance lines written as comments at the top of a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileHeader {
    pub program: String,
    pub fact: String,
}

/// One `fof(...)` clause per formula, blank-line separated, after a comment
/// header. The obligation must end with its only conjecture.
pub fn emit_file(
    obligation: &[NamedFormula],
    header: &FileHeader,
    table: &ManglingTable,
) -> Result<String, EmitError> {
    let conjectures = obligation.iter().filter(|f| f.role == Role::Conjecture).count();
    match conjectures {
        0 => return Err(EmitError::NoConjecture),
        1 => {}
        n => return Err(EmitError::MultipleConjectures(n)),
    }
    if obligation.last().map(|f| f.role) != Some(Role::Conjecture) {
        return Err(EmitError::ConjectureNotLast);
    }
    let mut seen = IndexSet::new();
    for f in obligation {
        if !seen.insert(f.name.as_str()) {
            return Err(EmitError::DuplicateName(f.name.clone()));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "% program: {}", header.program);
    let _ = writeln!(out, "% fact: {}", header.fact);
    let _ = writeln!(out, "% generator: {GENERATOR}");
    for f in obligation {
        out.push('\n');
        out.push_str(&emit_named(f, table)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ManglingTable {
        ManglingTable::new(
            &[Functor::new("0", 0), Functor::new("s", 1)],
            &[PredId::new("nat", 1), PredId::new("add", 3)],
        )
        .unwrap()
    }

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn gr_of_zero() {
        let t = table();
        assert_eq!(
            emit_formula(&Formula::Gr(Term::constant("0")), &t).unwrap(),
            "gr('0')"
        );
    }

    #[test]
    fn first_lemma_conjecture() {
        let f = Formula::forall(
            "x",
            Formula::implies(
                Formula::succeeds("nat", vec![v("x")]),
                Formula::succeeds("add", vec![v("x"), Term::constant("0"), v("x")]),
            ),
        );
        assert_eq!(
            emit_formula(&f, &table()).unwrap(),
            "! [Xx] : (nat_succeeds(Xx) => add_succeeds(Xx,'0',Xx))"
        );
    }

    #[test]
    fn constants_and_negated_equality() {
        let t = table();
        assert_eq!(emit_formula(&Formula::Top, &t).unwrap(), "$true");
        assert_eq!(emit_formula(&Formula::Bot, &t).unwrap(), "$false");
        let f = Formula::forall(
            "x3",
            Formula::not(Formula::Eq(Term::constant("0"), Term::app("s", vec![v("x3")]))),
        );
        assert_eq!(emit_formula(&f, &t).unwrap(), "! [Xx3] : ~ ('0' = s(Xx3))");
    }

    #[test]
    fn groups_quantifiers_and_closes_free_variables() {
        let t = table();
        let f = Formula::forall_all(["x", "y"], Formula::Eq(v("x"), v("y")));
        assert_eq!(emit_formula(&f, &t).unwrap(), "! [Xx,Xy] : (Xx = Xy)");
        let open = Formula::succeeds("nat", vec![v("z")]);
        assert_eq!(emit_formula(&open, &t).unwrap(), "! [Xz] : nat_succeeds(Xz)");
    }

    #[test]
    fn quoting_rules() {
        assert_eq!(quote_atom("nat").unwrap(), "nat");
        assert_eq!(quote_atom("0").unwrap(), "'0'");
        assert_eq!(quote_atom("Foo").unwrap(), "'Foo'");
        assert_eq!(quote_atom("it's").unwrap(), "'it\\'s'");
        assert_eq!(quote_atom("a\\b").unwrap(), "'a\\\\b'");
        assert_eq!(quote_atom("lemma-(add:x_0_x)").unwrap(), "'lemma-(add:x_0_x)'");
        assert!(quote_atom("caf\u{e9}").is_err());
    }

    #[test]
    fn variables_round_trip() {
        for name in ["x", "x12", "Foo", "_G3", "a-b", "é"] {
            let token = variable_token(name);
            assert!(token.starts_with(|c: char| c.is_ascii_uppercase()));
            assert_eq!(demangle_variable(&token).as_deref(), Some(name));
        }
    }

    #[test]
    fn arity_overloading_is_disambiguated() {
        let t = ManglingTable::new(
            &[Functor::new("f", 1), Functor::new("f", 2)],
            &[PredId::new("p", 1), PredId::new("p", 2)],
        )
        .unwrap();
        assert_ne!(
            t.functor_token(&Functor::new("f", 1)).unwrap(),
            t.functor_token(&Functor::new("f", 2)).unwrap()
        );
        assert_eq!(
            t.pred_token(&PredId::new("p", 2), Mode::Fails).unwrap(),
            "p_2_fails"
        );
    }

    #[test]
    fn collisions_are_reported() {
        let err = ManglingTable::new(&[Functor::new("gr", 1)], &[]).unwrap_err();
        assert!(matches!(err, MangleError::Collision { .. }));
        let err = ManglingTable::new(&[Functor::new("p_fails", 1)], &[PredId::new("p", 1)]).unwrap_err();
        assert!(matches!(err, MangleError::Collision { .. }));
    }

    #[test]
    fn demangles_tokens() {
        let t = table();
        assert_eq!(
            t.demangle("add_terminates"),
            Some(&Symbol::Pred(PredId::new("add", 3), Mode::Terminates))
        );
        assert_eq!(t.demangle("'0'"), Some(&Symbol::Functor(Functor::new("0", 0))));
        assert_eq!(t.demangle("gr"), Some(&Symbol::Gr));
        assert_eq!(t.demangle("nope"), None);
    }

    #[test]
    fn file_layout() {
        let t = table();
        let obligation = vec![
            NamedFormula::axiom("id4", Formula::Gr(Term::constant("0"))),
            NamedFormula::conjecture(
                "theorem-(t:z)",
                Formula::Eq(Term::constant("0"), Term::constant("0")),
            ),
        ];
        let header = FileHeader {
            program: "t.pl".into(),
            fact: "theorem t:z".into(),
        };
        let text = emit_file(&obligation, &header, &t).unwrap();
        let expected = format!(
            "% program: t.pl\n% fact: theorem t:z\n% generator: {GENERATOR}\n\nfof(id4,axiom,gr('0')).\n\nfof('theorem-(t:z)',conjecture,'0' = '0').\n"
        );
        assert_eq!(text, expected);
        assert!(validate_fof(&text).is_empty());
    }

    #[test]
    fn file_requires_single_trailing_conjecture() {
        let t = table();
        let h = FileHeader::default();
        let ax = NamedFormula::axiom("a", Formula::Top);
        let cj = NamedFormula::conjecture("c", Formula::Top);
        assert_eq!(
            emit_file(std::slice::from_ref(&ax), &h, &t),
            Err(EmitError::NoConjecture)
        );
        assert_eq!(
            emit_file(&[cj.clone(), cj.clone()], &h, &t),
            Err(EmitError::MultipleConjectures(2))
        );
        assert_eq!(
            emit_file(&[cj.clone(), ax.clone()], &h, &t),
            Err(EmitError::ConjectureNotLast)
        );
        let dup = NamedFormula::axiom("c", Formula::Top);
        assert_eq!(
            emit_file(&[dup, cj], &h, &t),
            Err(EmitError::DuplicateName("c".into()))
        );
    }
}
