//! Printers producing text the readers accept again.

use std::fmt::Write;

use crate::ast::{Clause, Fact, Formula, Goal, Program, Term};

const GOAL_KEYWORDS: &[&str] = &["true", "fail", "some"];
const STATEMENT_KEYWORDS: &[&str] = &["succeeds", "fails", "terminates", "gr", "tt", "ff", "all", "ex"];

fn is_plain_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_digits(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_digit())
}

fn atom_name(name: &str, reserved: &[&str]) -> String {
    if (is_plain_name(name) && !reserved.contains(&name)) || is_digits(name) {
        return name.to_string();
    }
    let mut out = String::with_capacity(name.len() + 2);
    out.push('\'');
    for c in name.chars() {
        match c {
            '\'' => out.push_str("''"),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out.push('\'');
    out
}

#[derive(Clone, Copy)]
enum VarStyle {
    /// Prolog variables, printed as is.
    Program,
    /// Statement variables, printed `?name`.
    Statement,
}

fn write_term(out: &mut String, term: &Term, style: VarStyle) {
    match term {
        Term::Var(v) => match style {
            VarStyle::Program => out.push_str(v),
            VarStyle::Statement => {
                out.push('?');
                out.push_str(v);
            }
        },
        Term::App(name, args) => {
            if name == "[]" && args.is_empty() {
                out.push_str("[]");
                return;
            }
            if name == "." && args.len() == 2 {
                write_list(out, term, style);
                return;
            }
            let reserved = match style {
                VarStyle::Program => GOAL_KEYWORDS,
                VarStyle::Statement => STATEMENT_KEYWORDS,
            };
            out.push_str(&atom_name(name, reserved));
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_term(out, a, style);
                }
                out.push(')');
            }
        }
    }
}

fn write_list(out: &mut String, term: &Term, style: VarStyle) {
    out.push('[');
    let mut cur = term;
    let mut first = true;
    loop {
        match cur {
            Term::App(name, args) if name == "." && args.len() == 2 => {
                if !first {
                    out.push(',');
                }
                first = false;
                write_term(out, &args[0], style);
                cur = &args[1];
            }
            Term::App(name, args) if name == "[]" && args.is_empty() => break,
            tail => {
                out.push('|');
                write_term(out, tail, style);
                break;
            }
        }
    }
    out.push(']');
}

/// Prints a term in program syntax.
pub fn print_term(term: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, term, VarStyle::Program);
    out
}

/// Prolog-style priorities: `;` 1100, `,` 1000, `\+` 900, `=` 700.
fn goal_priority(goal: &Goal) -> u32 {
    match goal {
        Goal::Or(..) => 1100,
        Goal::And(..) => 1000,
        Goal::Naf(_) => 900,
        Goal::Eq(..) => 700,
        _ => 0,
    }
}

fn write_goal(out: &mut String, goal: &Goal, max: u32) {
    let paren = goal_priority(goal) > max;
    if paren {
        out.push('(');
    }
    match goal {
        Goal::True => out.push_str("true"),
        Goal::Fail => out.push_str("fail"),
        Goal::Eq(s, t) => {
            write_term(out, s, VarStyle::Program);
            out.push_str(" = ");
            write_term(out, t, VarStyle::Program);
        }
        Goal::Atom(a) => write_term(
            out,
            &Term::App(a.pred.name.clone(), a.args.clone()),
            VarStyle::Program,
        ),
        Goal::Naf(g) => {
            out.push_str("\\+ ");
            write_goal(out, g, 900);
        }
        Goal::And(l, r) => {
            write_goal(out, l, 999);
            out.push_str(", ");
            write_goal(out, r, 1000);
        }
        Goal::Or(l, r) => {
            write_goal(out, l, 1099);
            out.push_str(" ; ");
            write_goal(out, r, 1100);
        }
        Goal::Some(v, body) => {
            let _ = write!(out, "some({v}, ");
            write_goal(out, body, 1200);
            out.push(')');
        }
    }
    if paren {
        out.push(')');
    }
}

pub fn print_goal(goal: &Goal) -> String {
    let mut out = String::new();
    write_goal(&mut out, goal, 1200);
    out
}

fn write_clause(out: &mut String, clause: &Clause) {
    write_term(
        out,
        &Term::App(clause.head.pred.name.clone(), clause.head.args.clone()),
        VarStyle::Program,
    );
    if clause.body != Goal::True {
        out.push_str(" :- ");
        write_goal(out, &clause.body, 1199);
    }
    out.push_str(".\n");
}

pub fn print_program(program: &Program) -> String {
    let mut out = String::new();
    for clause in &program.clauses {
        write_clause(&mut out, clause);
    }
    out
}

/// Binding strength for statement printing; larger binds tighter.
fn formula_level(f: &Formula) -> u32 {
    match f {
        Formula::Implies(..) | Formula::Iff(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(_) => 4,
        Formula::Forall(..) | Formula::Exists(..) => 0,
        _ => 5,
    }
}

fn write_operand(out: &mut String, f: &Formula, min_level: u32) {
    // Quantifier bodies extend to the right, so quantifiers are bracketed
    // whenever they occur as operands.
    let level = formula_level(f);
    if level < min_level || level == 0 {
        out.push('(');
        write_formula(out, f);
        out.push(')');
    } else {
        write_formula(out, f);
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Top => out.push_str("tt"),
        Formula::Bot => out.push_str("ff"),
        Formula::Eq(s, t) => {
            write_term(out, s, VarStyle::Statement);
            out.push_str(" = ");
            write_term(out, t, VarStyle::Statement);
        }
        Formula::Pred(mode, atom) => {
            out.push_str(mode.keyword());
            out.push(' ');
            write_term(
                out,
                &Term::App(atom.pred.name.clone(), atom.args.clone()),
                VarStyle::Statement,
            );
        }
        Formula::Gr(t) => {
            out.push_str("gr(");
            write_term(out, t, VarStyle::Statement);
            out.push(')');
        }
        Formula::Not(g) => {
            out.push_str("~ ");
            write_operand(out, g, 4);
        }
        Formula::And(l, r) => {
            write_operand(out, l, 4);
            out.push_str(" & ");
            write_operand(out, r, 3);
        }
        Formula::Or(l, r) => {
            write_operand(out, l, 3);
            out.push_str(" \\/ ");
            write_operand(out, r, 2);
        }
        Formula::Implies(l, r) | Formula::Iff(l, r) => {
            write_operand(out, l, 2);
            out.push_str(if matches!(f, Formula::Implies(..)) {
                " => "
            } else {
                " <=> "
            });
            write_operand(out, r, 1);
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let universal = matches!(f, Formula::Forall(..));
            let mut vars = Vec::new();
            let mut cur = f;
            loop {
                match cur {
                    Formula::Forall(v, body) if universal => {
                        vars.push(v.as_str());
                        cur = body;
                    }
                    Formula::Exists(v, body) if !universal => {
                        vars.push(v.as_str());
                        cur = body;
                    }
                    _ => break,
                }
            }
            let _ = write!(
                out,
                "{} [{}]: ",
                if universal { "all" } else { "ex" },
                vars.join(",")
            );
            write_formula(out, cur);
        }
    }
}

/// Prints a formula in property-file syntax.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

pub fn print_fact(fact: &Fact) -> String {
    format!(
        ":- {}({}, {}).\n",
        fact.kind.keyword(),
        fact.name,
        print_formula(&fact.statement)
    )
}

pub fn print_facts(facts: &[Fact]) -> String {
    facts.iter().map(print_fact).collect()
}
