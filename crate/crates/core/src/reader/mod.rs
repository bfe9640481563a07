//! Readers for logic-program files (`.pl`) and property files (`.pr`).
//!
//! The program syntax is the pure Prolog subset used by the compiler:
//! clauses whose bodies are built from `,`, `;`, `\+`, `=`, `true`, `fail`
//! and `some(X, G)` / `some([X,Y], G)`. The property syntax follows the
//! LPTP proof-file convention `:- lemma(Name, Statement, Proof).`; proofs
//! are skipped as balanced blobs.

mod lexer;
mod print;

use std::fmt;
use std::path::{Path, PathBuf};

use indexmap::IndexSet;

use crate::ast::{Atom, Clause, Fact, FactKind, Formula, Goal, Mode, Program, Term};
use lexer::{tokenize, Spanned, Tok};

pub use print::{print_fact, print_facts, print_formula, print_goal, print_program, print_term};

/// A 1-based position in a source file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: Option<PathBuf>,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.file {
            Some(file) => write!(f, "{}:{}:{}", file.display(), self.line, self.column),
            None => write!(f, "{}:{}", self.line, self.column),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("{span}: unknown fact kind `{kind}`")]
    UnknownFactKind { span: SourceSpan, kind: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ReadError {
    pub(crate) fn syntax(span: SourceSpan, message: impl Into<String>) -> Self {
        ReadError::Syntax {
            span,
            message: message.into(),
        }
    }
}

pub fn parse_program(text: &str) -> Result<Program, ReadError> {
    parse_program_in(text, None)
}

/// Like [`parse_program`], tagging error spans with `file`.
pub fn parse_program_in(text: &str, file: Option<&Path>) -> Result<Program, ReadError> {
    let file = file.map(Path::to_path_buf);
    let tokens = tokenize(text, file.as_ref())?;
    let mut cursor = Cursor::new(tokens, file);
    let mut clauses = Vec::new();
    while !cursor.at(&Tok::Eof) {
        clauses.push(cursor.clause()?);
    }
    Ok(Program::new(clauses))
}

pub fn read_program(path: &Path) -> Result<Program, ReadError> {
    let text = read_text(path)?;
    parse_program_in(&text, Some(path))
}

pub fn parse_facts(text: &str) -> Result<Vec<Fact>, ReadError> {
    parse_facts_in(text, None)
}

pub fn parse_facts_in(text: &str, file: Option<&Path>) -> Result<Vec<Fact>, ReadError> {
    let file = file.map(Path::to_path_buf);
    let tokens = tokenize(text, file.as_ref())?;
    let mut cursor = Cursor::new(tokens, file);
    let mut facts = Vec::new();
    while !cursor.at(&Tok::Eof) {
        facts.push(cursor.fact_declaration()?);
    }
    Ok(facts)
}

pub fn read_facts(path: &Path) -> Result<Vec<Fact>, ReadError> {
    let text = read_text(path)?;
    parse_facts_in(&text, Some(path))
}

/// Parses a single goal, e.g. a query given on the command line.
pub fn parse_goal(text: &str) -> Result<Goal, ReadError> {
    let tokens = tokenize(text, None)?;
    let mut cursor = Cursor::new(tokens, None);
    let goal = cursor.goal()?;
    if cursor.at(&Tok::End) {
        cursor.bump();
    }
    cursor.expect(&Tok::Eof)?;
    Ok(goal)
}

fn read_text(path: &Path) -> Result<String, ReadError> {
    std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

const CONS: &str = ".";
const NIL: &str = "[]";

struct Cursor {
    tokens: Vec<Spanned>,
    pos: usize,
    file: Option<PathBuf>,
    anon: usize,
}

impl Cursor {
    fn new(tokens: Vec<Spanned>, file: Option<PathBuf>) -> Self {
        Cursor {
            tokens,
            pos: 0,
            file,
            anon: 0,
        }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    fn at(&self, tok: &Tok) -> bool {
        self.peek() == tok
    }

    fn at_sym(&self, sym: &str) -> bool {
        matches!(self.peek(), Tok::Sym(s) if s == sym)
    }

    fn at_name(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Name(s) if s == name)
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn span(&self) -> SourceSpan {
        let t = &self.tokens[self.pos];
        SourceSpan {
            file: self.file.clone(),
            line: t.line,
            column: t.column,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ReadError> {
        Err(ReadError::syntax(self.span(), message))
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ReadError> {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ReadError> {
        if self.at(tok) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn expect_sym(&mut self, sym: &str) -> Result<(), ReadError> {
        if self.at_sym(sym) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{sym}`"))
        }
    }

    // ---- program syntax ----

    fn clause(&mut self) -> Result<Clause, ReadError> {
        if self.at_sym(":-") {
            return self.error("directives are not supported in program files");
        }
        let head = match self.program_term()? {
            Term::App(name, args) => Atom::new(name, args),
            Term::Var(_) => return self.error("clause head must be an atom"),
        };
        let body = if self.at_sym(":-") {
            self.bump();
            self.goal()?
        } else {
            Goal::True
        };
        self.expect(&Tok::End)?;
        Ok(Clause::new(head, body))
    }

    fn goal(&mut self) -> Result<Goal, ReadError> {
        let left = self.conjunction()?;
        if self.at(&Tok::Semicolon) {
            self.bump();
            let right = self.goal()?;
            return Ok(Goal::or(left, right));
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Goal, ReadError> {
        let left = self.goal_unary()?;
        if self.at(&Tok::Comma) {
            self.bump();
            let right = self.conjunction()?;
            return Ok(Goal::and(left, right));
        }
        Ok(left)
    }

    fn goal_unary(&mut self) -> Result<Goal, ReadError> {
        if self.at_sym("\\+") {
            self.bump();
            return Ok(Goal::naf(self.goal_unary()?));
        }
        self.goal_primary()
    }

    fn goal_primary(&mut self) -> Result<Goal, ReadError> {
        if self.at(&Tok::LParen) {
            self.bump();
            let g = self.goal()?;
            self.expect(&Tok::RParen)?;
            return Ok(g);
        }
        if self.at_name("some") && self.peek_at(1) == &Tok::LParen {
            self.bump();
            self.bump();
            let vars = self.some_vars()?;
            self.expect(&Tok::Comma)?;
            let body = self.goal()?;
            self.expect(&Tok::RParen)?;
            return Ok(Goal::some_all(vars, body));
        }
        let keyword_follows_eq = matches!(self.peek_at(1), Tok::Sym(s) if s == "=");
        if !keyword_follows_eq {
            if self.at_name("true") {
                self.bump();
                return Ok(Goal::True);
            }
            if self.at_name("fail") {
                self.bump();
                return Ok(Goal::Fail);
            }
        }
        let span = self.span();
        let term = self.program_term()?;
        if self.at_sym("=") {
            self.bump();
            let rhs = self.program_term()?;
            return Ok(Goal::eq(term, rhs));
        }
        match term {
            Term::App(name, args) => Ok(Goal::Atom(Atom::new(name, args))),
            Term::Var(v) => Err(ReadError::syntax(
                span,
                format!("variable `{v}` cannot be used as a goal"),
            )),
        }
    }

    fn some_vars(&mut self) -> Result<Vec<String>, ReadError> {
        match self.bump() {
            Tok::Var(v) if v != "_" => Ok(vec![v]),
            Tok::LBracket => {
                let mut vars = Vec::new();
                loop {
                    match self.bump() {
                        Tok::Var(v) if v != "_" => vars.push(v),
                        _ => {
                            self.pos -= 1;
                            return self.unexpected("variable");
                        }
                    }
                    if self.at(&Tok::Comma) {
                        self.bump();
                        continue;
                    }
                    self.expect(&Tok::RBracket)?;
                    break;
                }
                Ok(vars)
            }
            _ => {
                self.pos -= 1;
                self.unexpected("variable or variable list after `some(`")
            }
        }
    }

    fn program_term(&mut self) -> Result<Term, ReadError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                if v == "_" {
                    self.anon += 1;
                    Ok(Term::Var(format!("_G{}", self.anon)))
                } else {
                    Ok(Term::Var(v))
                }
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Term::constant(n))
            }
            Tok::Name(name) | Tok::Quoted(name) => {
                self.bump();
                let args = self.arguments(Cursor::program_term)?;
                Ok(Term::App(name, args))
            }
            Tok::LBracket => self.list(Cursor::program_term),
            _ => self.unexpected("term"),
        }
    }

    fn arguments(
        &mut self,
        item: fn(&mut Cursor) -> Result<Term, ReadError>,
    ) -> Result<Vec<Term>, ReadError> {
        if !self.at(&Tok::LParen) {
            return Ok(Vec::new());
        }
        self.bump();
        let mut args = vec![item(self)?];
        while self.at(&Tok::Comma) {
            self.bump();
            args.push(item(self)?);
        }
        self.expect(&Tok::RParen)?;
        Ok(args)
    }

    fn list(&mut self, item: fn(&mut Cursor) -> Result<Term, ReadError>) -> Result<Term, ReadError> {
        self.expect(&Tok::LBracket)?;
        if self.at(&Tok::RBracket) {
            self.bump();
            return Ok(Term::constant(NIL));
        }
        let mut items = vec![item(self)?];
        while self.at(&Tok::Comma) {
            self.bump();
            items.push(item(self)?);
        }
        let tail = if self.at(&Tok::Bar) {
            self.bump();
            item(self)?
        } else {
            Term::constant(NIL)
        };
        self.expect(&Tok::RBracket)?;
        Ok(items
            .into_iter()
            .rev()
            .fold(tail, |acc, t| Term::app(CONS, vec![t, acc])))
    }

    // ---- property syntax ----

    fn fact_declaration(&mut self) -> Result<Fact, ReadError> {
        self.expect_sym(":-")?;
        let kind_span = self.span();
        let kind_word = match self.bump() {
            Tok::Name(w) => w,
            other => {
                return Err(ReadError::syntax(
                    kind_span,
                    format!("expected fact kind, found {}", other.describe()),
                ))
            }
        };
        let kind = FactKind::from_keyword(&kind_word).ok_or(ReadError::UnknownFactKind {
            span: kind_span,
            kind: kind_word,
        })?;
        self.expect(&Tok::LParen)?;
        let name = self.fact_name()?;
        self.expect(&Tok::Comma)?;
        let statement = self.statement()?;
        if self.at(&Tok::Comma) {
            self.bump();
            self.skip_blob()?;
        }
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::End)?;
        Ok(Fact::new(kind, name, statement.universal_closure()))
    }

    fn fact_name(&mut self) -> Result<String, ReadError> {
        let mut parts = vec![self.name_part()?];
        while self.at_sym(":") {
            self.bump();
            parts.push(self.name_part()?);
        }
        Ok(parts.join(":"))
    }

    fn name_part(&mut self) -> Result<String, ReadError> {
        match self.peek().clone() {
            Tok::Name(n) | Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("fact name"),
        }
    }

    /// Skips a balanced token sequence up to (not including) the `)` that
    /// closes the declaration.
    fn skip_blob(&mut self) -> Result<(), ReadError> {
        let start = self.span();
        let mut depth = 0usize;
        loop {
            match self.peek() {
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBracket if depth == 0 => return Ok(()),
                Tok::RParen | Tok::RBracket => depth -= 1,
                Tok::Eof => {
                    return Err(ReadError::syntax(start, "unbalanced proof argument"));
                }
                _ => {}
            }
            self.bump();
        }
    }

    fn statement(&mut self) -> Result<Formula, ReadError> {
        let left = self.disjunction()?;
        if self.at_sym("=>") {
            self.bump();
            let right = self.statement()?;
            return Ok(Formula::implies(left, right));
        }
        if self.at_sym("<=>") {
            self.bump();
            let right = self.statement()?;
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ReadError> {
        let left = self.conjunction_f()?;
        if self.at_sym("\\/") {
            self.bump();
            let right = self.disjunction()?;
            return Ok(Formula::or(left, right));
        }
        Ok(left)
    }

    fn conjunction_f(&mut self) -> Result<Formula, ReadError> {
        let left = self.unary_f()?;
        if self.at_sym("&") {
            self.bump();
            let right = self.conjunction_f()?;
            return Ok(Formula::and(left, right));
        }
        Ok(left)
    }

    fn unary_f(&mut self) -> Result<Formula, ReadError> {
        if self.at_sym("~") {
            self.bump();
            return Ok(Formula::not(self.unary_f()?));
        }
        let quantifier = match self.peek() {
            Tok::Name(w) if w == "all" || w == "ex" => Some(w == "all"),
            _ => None,
        };
        if let Some(universal) = quantifier {
            if matches!(self.peek_at(1), Tok::LBracket | Tok::Name(_)) {
                self.bump();
                let vars = self.bound_vars()?;
                self.expect_sym(":")?;
                let body = self.statement()?;
                return Ok(vars.into_iter().rev().fold(body, |acc, v| {
                    if universal {
                        Formula::forall(v, acc)
                    } else {
                        Formula::exists(v, acc)
                    }
                }));
            }
        }
        self.primary_f()
    }

    fn bound_vars(&mut self) -> Result<Vec<String>, ReadError> {
        if let Tok::Name(v) = self.peek().clone() {
            self.bump();
            return Ok(vec![v]);
        }
        self.expect(&Tok::LBracket)?;
        let mut vars = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Name(v) => {
                    self.bump();
                    vars.push(v);
                }
                _ => return self.unexpected("variable name"),
            }
            if self.at(&Tok::Comma) {
                self.bump();
                continue;
            }
            self.expect(&Tok::RBracket)?;
            return Ok(vars);
        }
    }

    fn primary_f(&mut self) -> Result<Formula, ReadError> {
        if self.at(&Tok::LParen) {
            self.bump();
            let f = self.statement()?;
            self.expect(&Tok::RParen)?;
            return Ok(f);
        }
        let mode = match self.peek() {
            Tok::Name(w) => match w.as_str() {
                "succeeds" => Some(Mode::Succeeds),
                "fails" => Some(Mode::Fails),
                "terminates" => Some(Mode::Terminates),
                _ => None,
            },
            _ => None,
        };
        if let Some(mode) = mode {
            if matches!(self.peek_at(1), Tok::Name(_) | Tok::Quoted(_)) {
                self.bump();
                let span = self.span();
                return match self.spec_term()? {
                    Term::App(name, args) => Ok(Formula::Pred(mode, Atom::new(name, args))),
                    Term::Var(_) => Err(ReadError::syntax(span, "expected predicate atom")),
                };
            }
        }
        let bare_keyword = matches!(self.peek(), Tok::Name(_));
        let span = self.span();
        let term = self.spec_term()?;
        if self.at_sym("=") {
            self.bump();
            let rhs = self.spec_term()?;
            return Ok(Formula::Eq(term, rhs));
        }
        if bare_keyword {
            if let Term::App(name, args) = &term {
                match (name.as_str(), args.len()) {
                    ("gr", 1) => return Ok(Formula::Gr(args[0].clone())),
                    ("tt", 0) => return Ok(Formula::Top),
                    ("ff", 0) => return Ok(Formula::Bot),
                    _ => {}
                }
            }
        }
        Err(ReadError::syntax(
            span,
            "expected a formula (`succeeds`, `fails`, `terminates`, `gr(..)`, `tt`, `ff` or an equation)",
        ))
    }

    fn spec_term(&mut self) -> Result<Term, ReadError> {
        match self.peek().clone() {
            Tok::Sym(s) if s == "?" => {
                self.bump();
                match self.bump() {
                    Tok::Name(v) => Ok(Term::Var(v)),
                    _ => {
                        self.pos -= 1;
                        self.unexpected("variable name after `?`")
                    }
                }
            }
            Tok::Var(v) => self.error(format!("`{v}`: variables in statements are written `?name`")),
            Tok::Int(n) => {
                self.bump();
                Ok(Term::constant(n))
            }
            Tok::Name(name) | Tok::Quoted(name) => {
                self.bump();
                let args = self.arguments(Cursor::spec_term)?;
                Ok(Term::App(name, args))
            }
            Tok::LBracket => self.list(Cursor::spec_term),
            _ => self.unexpected("term"),
        }
    }
}

/// Functors of a fact list, in first-occurrence order.
pub fn fact_functors(facts: &[Fact]) -> IndexSet<crate::ast::Functor> {
    let mut out = IndexSet::new();
    for fact in facts {
        fact.statement.collect_functors(&mut out);
    }
    out
}
