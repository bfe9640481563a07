//! Reader for the FOF subset the emitter produces.
//!
//! Accepted: `fof(name, axiom|conjecture, formula).` clauses, `%` and
//! `/* */` comments, the connectives `~ & | => <=>`, `! [..] :` and
//! `? [..] :` quantifiers, infix `=`, `$true`, `$false`, lower-word or
//! single-quoted symbols, and upper-word variables. Every variable must be
//! bound, every symbol used at one arity and in one role, formula names
//! must be distinct, and there is at most one conjecture.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::quote_atom;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FofTerm {
    Var(String),
    App(String, Vec<FofTerm>),
}

/// Parsed formula. Symbol tokens are canonical: bare when a lower word,
/// quoted as the emitter would quote them otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fof {
    True,
    False,
    Eq(FofTerm, FofTerm),
    Atom(String, Vec<FofTerm>),
    Not(Box<Fof>),
    And(Box<Fof>, Box<Fof>),
    Or(Box<Fof>, Box<Fof>),
    Implies(Box<Fof>, Box<Fof>),
    Iff(Box<Fof>, Box<Fof>),
    Forall(String, Box<Fof>),
    Exists(String, Box<Fof>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FofInput {
    pub name: String,
    pub role: String,
    pub formula: Fof,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    /// Canonical token of a quoted symbol.
    Quoted(String),
    Dollar(String),
    Int(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
    And,
    Or,
    Not,
    Bang,
    Question,
    Eq,
    Implies,
    Iff,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Quoted(s) | Tok::Dollar(s) | Tok::Int(s) => s,
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Not => "~",
            Tok::Bang => "!",
            Tok::Question => "?",
            Tok::Eq => "=",
            Tok::Implies => "=>",
            Tok::Iff => "<=>",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, diags: &mut Vec<Diagnostic>) -> Vec<Spanned> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut diag = |message: String| {
            diags.push(Diagnostic {
                line: l0,
                column: c0,
                message,
            })
        };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            bump!();
            bump!();
            let mut closed = false;
            while i < chars.len() {
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    closed = true;
                    break;
                }
                bump!();
            }
            if !closed {
                diag("unterminated block comment".into());
            }
            continue;
        }
        let word = |i: usize| {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            j
        };
        let tok = if c.is_ascii_lowercase() || c.is_ascii_uppercase() {
            let end = word(i);
            let s: String = chars[i..end].iter().collect();
            while i < end {
                bump!();
            }
            if c.is_ascii_lowercase() {
                Tok::Lower(s)
            } else {
                Tok::Upper(s)
            }
        } else if c == '_' {
            let end = word(i);
            let s: String = chars[i..end].iter().collect();
            while i < end {
                bump!();
            }
            diag(format!("`{s}`: variables must start with an uppercase letter"));
            Tok::Upper(s)
        } else if c.is_ascii_digit() {
            let end = word(i);
            let s: String = chars[i..end].iter().collect();
            while i < end {
                bump!();
            }
            if !s.chars().all(|c| c.is_ascii_digit()) {
                diag(format!("malformed number `{s}`"));
            }
            Tok::Int(s)
        } else if c == '$' {
            bump!();
            let end = word(i);
            let s: String = chars[i..end].iter().collect();
            while i < end {
                bump!();
            }
            Tok::Dollar(format!("${s}"))
        } else if c == '\'' {
            bump!();
            let mut content = String::new();
            let mut closed = false;
            while i < chars.len() {
                let d = chars[i];
                if d == '\'' {
                    bump!();
                    closed = true;
                    break;
                }
                if d == '\\' {
                    bump!();
                    match chars.get(i) {
                        Some(&e) if e == '\'' || e == '\\' => {
                            content.push(e);
                            bump!();
                        }
                        _ => diag("bad escape in quoted symbol".into()),
                    }
                    continue;
                }
                if !(' '..='~').contains(&d) {
                    diag(format!("character {d:?} not allowed in a quoted symbol"));
                }
                content.push(d);
                bump!();
            }
            if !closed {
                diag("unterminated quoted symbol".into());
            }
            if content.is_empty() {
                diag("empty quoted symbol".into());
                Tok::Quoted("''".into())
            } else {
                Tok::Quoted(quote_atom(&content).unwrap_or_else(|_| format!("'{content}'")))
            }
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let (tok, len) = if rest.starts_with("<=>") {
                (Some(Tok::Iff), 3)
            } else if rest.starts_with("=>") {
                (Some(Tok::Implies), 2)
            } else if rest.starts_with("<~>")
                || rest.starts_with("<=")
                || rest.starts_with("~|")
                || rest.starts_with("~&")
                || rest.starts_with("!=")
            {
                let len = if rest.starts_with("<~>") { 3 } else { 2 };
                let op: String = chars[i..i + len].iter().collect();
                diag(format!("connective `{op}` is outside the accepted subset"));
                (None, len)
            } else {
                let single = match c {
                    '(' => Some(Tok::LParen),
                    ')' => Some(Tok::RParen),
                    '[' => Some(Tok::LBracket),
                    ']' => Some(Tok::RBracket),
                    ',' => Some(Tok::Comma),
                    ':' => Some(Tok::Colon),
                    '.' => Some(Tok::Dot),
                    '&' => Some(Tok::And),
                    '|' => Some(Tok::Or),
                    '~' => Some(Tok::Not),
                    '!' => Some(Tok::Bang),
                    '?' => Some(Tok::Question),
                    '=' => Some(Tok::Eq),
                    _ => {
                        diag(format!("illegal character {c:?}"));
                        None
                    }
                };
                (single, 1)
            };
            for _ in 0..len {
                bump!();
            }
            match tok {
                Some(t) => t,
                None => continue,
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    out
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.column)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let (line, column) = self.here();
        Err(Diagnostic {
            line,
            column,
            message: message.into(),
        })
    }

    fn note(&mut self, message: impl Into<String>) {
        let (line, column) = self.here();
        self.diags.push(Diagnostic {
            line,
            column,
            message: message.into(),
        });
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected `{want}`, found `{}`", self.peek()))
        }
    }

    fn file(&mut self) -> Vec<FofInput> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            match self.annotated() {
                Ok(input) => out.push(input),
                Err(d) => {
                    self.diags.push(d);
                    // Resynchronize after the next terminating dot.
                    loop {
                        match self.next() {
                            Tok::Dot | Tok::Eof => break,
                            _ => {}
                        }
                    }
                }
            }
        }
        out
    }

    fn annotated(&mut self) -> PResult<FofInput> {
        let (line, _) = self.here();
        match self.next() {
            Tok::Lower(w) if w == "fof" => {}
            other => {
                self.pos -= usize::from(other != Tok::Eof);
                return self.error(format!("expected `fof`, found `{other}`"));
            }
        }
        self.expect(Tok::LParen)?;
        let name = match self.next() {
            Tok::Lower(s) | Tok::Quoted(s) | Tok::Int(s) => s,
            other => {
                self.pos -= 1;
                return self.error(format!("expected a formula name, found `{other}`"));
            }
        };
        self.expect(Tok::Comma)?;
        let role = match self.next() {
            Tok::Lower(s) => s,
            other => {
                self.pos -= 1;
                return self.error(format!("expected a role, found `{other}`"));
            }
        };
        if role != "axiom" && role != "conjecture" {
            self.pos -= 1;
            self.note(format!("role `{role}` is outside the accepted subset"));
            self.pos += 1;
        }
        self.expect(Tok::Comma)?;
        let formula = self.formula()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Dot)?;
        Ok(FofInput {
            name,
            role,
            formula,
            line,
        })
    }

    fn formula(&mut self) -> PResult<Fof> {
        let first = self.unit()?;
        match self.peek() {
            Tok::And | Tok::Or => {
                let op = self.peek().clone();
                let mut acc = first;
                while *self.peek() == op {
                    self.next();
                    let rhs = self.unit()?;
                    acc = if op == Tok::And {
                        Fof::And(Box::new(acc), Box::new(rhs))
                    } else {
                        Fof::Or(Box::new(acc), Box::new(rhs))
                    };
                }
                if matches!(self.peek(), Tok::And | Tok::Or | Tok::Implies | Tok::Iff) {
                    return self.error(format!("`{}` mixed with `{op}` needs parentheses", self.peek()));
                }
                Ok(acc)
            }
            Tok::Implies | Tok::Iff => {
                let op = self.next();
                let rhs = self.unit()?;
                if matches!(self.peek(), Tok::And | Tok::Or | Tok::Implies | Tok::Iff) {
                    return self.error(format!("`{}` after `{op}` needs parentheses", self.peek()));
                }
                Ok(if op == Tok::Implies {
                    Fof::Implies(Box::new(first), Box::new(rhs))
                } else {
                    Fof::Iff(Box::new(first), Box::new(rhs))
                })
            }
            _ => Ok(first),
        }
    }

    fn unit(&mut self) -> PResult<Fof> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Not => {
                self.next();
                Ok(Fof::Not(Box::new(self.unit()?)))
            }
            Tok::Bang | Tok::Question => {
                let universal = self.next() == Tok::Bang;
                self.expect(Tok::LBracket)?;
                let mut vars = Vec::new();
                loop {
                    match self.peek().clone() {
                        Tok::Upper(v) => {
                            self.next();
                            vars.push(v);
                        }
                        Tok::Lower(v) => {
                            self.note(format!("`{v}`: variables must start with an uppercase letter"));
                            self.next();
                            vars.push(v);
                        }
                        other => return self.error(format!("expected a variable, found `{other}`")),
                    }
                    if *self.peek() == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::Colon)?;
                let mut body = self.unit()?;
                for v in vars.into_iter().rev() {
                    body = if universal {
                        Fof::Forall(v, Box::new(body))
                    } else {
                        Fof::Exists(v, Box::new(body))
                    };
                }
                Ok(body)
            }
            Tok::Dollar(w) => {
                self.next();
                match w.as_str() {
                    "$true" => Ok(Fof::True),
                    "$false" => Ok(Fof::False),
                    _ => {
                        self.pos -= 1;
                        self.error(format!("`{w}` is outside the accepted subset"))
                    }
                }
            }
            _ => {
                let lhs = self.term()?;
                if *self.peek() == Tok::Eq {
                    self.next();
                    let rhs = self.term()?;
                    return Ok(Fof::Eq(lhs, rhs));
                }
                match lhs {
                    FofTerm::App(name, args) => Ok(Fof::Atom(name, args)),
                    FofTerm::Var(v) => self.error(format!("variable `{v}` used as a formula")),
                }
            }
        }
    }

    fn term(&mut self) -> PResult<FofTerm> {
        match self.next() {
            Tok::Upper(v) => Ok(FofTerm::Var(v)),
            Tok::Lower(name) | Tok::Quoted(name) => {
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.next();
                    loop {
                        args.push(self.term()?);
                        match self.next() {
                            Tok::Comma => continue,
                            Tok::RParen => break,
                            other => {
                                self.pos -= usize::from(other != Tok::Eof);
                                return self.error(format!("expected `,` or `)`, found `{other}`"));
                            }
                        }
                    }
                }
                Ok(FofTerm::App(name, args))
            }
            Tok::Int(n) => {
                self.pos -= 1;
                self.error(format!("unquoted number `{n}` is outside the accepted subset"))
            }
            other => {
                self.pos -= usize::from(other != Tok::Eof);
                self.error(format!("expected a term, found `{other}`"))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Use {
    Functor(usize),
    Pred(usize),
}

struct Checker<'a> {
    uses: HashMap<String, Use>,
    diags: &'a mut Vec<Diagnostic>,
    line: usize,
}

impl Checker<'_> {
    fn record(&mut self, name: &str, usage: Use) {
        match self.uses.get(name) {
            Some(prev) if *prev != usage => self.diags.push(Diagnostic {
                line: self.line,
                column: 1,
                message: format!("symbol `{name}` used inconsistently ({prev:?} and {usage:?})"),
            }),
            Some(_) => {}
            None => {
                self.uses.insert(name.to_string(), usage);
            }
        }
    }

    fn term(&mut self, t: &FofTerm, bound: &[String], free: &mut HashSet<String>) {
        match t {
            FofTerm::Var(v) => {
                if !bound.contains(v) {
                    free.insert(v.clone());
                }
            }
            FofTerm::App(name, args) => {
                self.record(name, Use::Functor(args.len()));
                for a in args {
                    self.term(a, bound, free);
                }
            }
        }
    }

    fn formula(&mut self, f: &Fof, bound: &mut Vec<String>, free: &mut HashSet<String>) {
        match f {
            Fof::True | Fof::False => {}
            Fof::Eq(s, t) => {
                self.term(s, bound, free);
                self.term(t, bound, free);
            }
            Fof::Atom(name, args) => {
                self.record(name, Use::Pred(args.len()));
                for a in args {
                    self.term(a, bound, free);
                }
            }
            Fof::Not(g) => self.formula(g, bound, free),
            Fof::And(l, r) | Fof::Or(l, r) | Fof::Implies(l, r) | Fof::Iff(l, r) => {
                self.formula(l, bound, free);
                self.formula(r, bound, free);
            }
            Fof::Forall(v, body) | Fof::Exists(v, body) => {
                bound.push(v.clone());
                self.formula(body, bound, free);
                bound.pop();
            }
        }
    }
}

fn check(inputs: &[FofInput], diags: &mut Vec<Diagnostic>) {
    let mut names = HashSet::new();
    let mut conjectures = 0;
    let mut checker = Checker {
        uses: HashMap::new(),
        diags,
        line: 0,
    };
    for input in inputs {
        checker.line = input.line;
        if !names.insert(input.name.clone()) {
            checker.diags.push(Diagnostic {
                line: input.line,
                column: 1,
                message: format!("duplicate formula name `{}`", input.name),
            });
        }
        if input.role == "conjecture" {
            conjectures += 1;
            if conjectures == 2 {
                checker.diags.push(Diagnostic {
                    line: input.line,
                    column: 1,
                    message: "more than one conjecture".into(),
                });
            }
        }
        let mut free = HashSet::new();
        checker.formula(&input.formula, &mut Vec::new(), &mut free);
        let mut free: Vec<_> = free.into_iter().collect();
        free.sort();
        for v in free {
            checker.diags.push(Diagnostic {
                line: input.line,
                column: 1,
                message: format!("variable `{v}` is not bound"),
            });
        }
    }
}

/// Parses and checks a FOF file, returning its formulas when there is
/// nothing to report.
pub fn parse_fof(text: &str) -> Result<Vec<FofInput>, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let toks = lex(text, &mut diags);
    let mut parser = Parser {
        toks,
        pos: 0,
        diags: Vec::new(),
    };
    let inputs = parser.file();
    diags.extend(parser.diags);
    check(&inputs, &mut diags);
    if diags.is_empty() {
        Ok(inputs)
    } else {
        diags.sort_by_key(|d| (d.line, d.column));
        Err(diags)
    }
}

pub fn validate_fof(text: &str) -> Vec<Diagnostic> {
    parse_fof(text).err().unwrap_or_default()
}

/// Parses a single formula, e.g. a fragment copied from a FOF file. Free
/// variables are allowed.
pub fn parse_fof_formula(text: &str) -> Result<Fof, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let toks = lex(text, &mut diags);
    let mut parser = Parser {
        toks,
        pos: 0,
        diags: Vec::new(),
    };
    let result = parser.formula();
    match result {
        Ok(f) if parser.diags.is_empty() && diags.is_empty() && *parser.peek() == Tok::Eof => Ok(f),
        Ok(_) => {
            if *parser.peek() != Tok::Eof {
                let trailing = parser.error::<()>("trailing input").unwrap_err();
                parser.diags.push(trailing);
            }
            diags.extend(parser.diags);
            Err(diags)
        }
        Err(d) => {
            diags.extend(parser.diags);
            diags.push(d);
            Err(diags)
        }
    }
}
