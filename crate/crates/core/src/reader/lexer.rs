use super::ReadError;
use super::SourceSpan;
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Unquoted atom starting with a lowercase letter.
    Name(String),
    /// Single-quoted atom, unescaped.
    Quoted(String),
    Var(String),
    Int(String),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bar,
    Semicolon,
    /// Run of symbol characters, e.g. `:-`, `=>`, `\+`.
    Sym(String),
    /// Clause terminator: `.` followed by layout, `%` or end of input.
    End,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Name(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("'{s}'"),
            Tok::Var(s) => format!("variable `{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Str(_) => "string".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::LBracket => "`[`".to_string(),
            Tok::RBracket => "`]`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Bar => "`|`".to_string(),
            Tok::Semicolon => "`;`".to_string(),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::End => "end of clause".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const SYMBOL_CHARS: &str = "+-*/\\^<>=~:.?@#&$";

/// Operators the grammars care about, longest first. Runs of symbol
/// characters are split greedily into these; anything else becomes one
/// opaque `Sym` token (only legal inside discarded proof blobs).
const OPERATORS: &[&str] = &["<=>", ":-", "=>", "\\/", "\\+", "=", "&", "~", "?", ":"];

pub(crate) fn tokenize(text: &str, file: Option<&PathBuf>) -> Result<Vec<Spanned>, ReadError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    let span_at = |line: usize, column: usize| SourceSpan {
        file: file.cloned(),
        line,
        column,
    };

    macro_rules! advance {
        ($n:expr) => {
            for _ in 0..$n {
                if chars[i] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                i += 1;
            }
        };
    }

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c.is_whitespace() {
            advance!(1);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance!(1);
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance!(2);
            loop {
                if i >= chars.len() {
                    return Err(ReadError::syntax(
                        span_at(start_line, start_col),
                        "unterminated block comment",
                    ));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    advance!(2);
                    break;
                }
                advance!(1);
            }
            continue;
        }
        let push = |out: &mut Vec<Spanned>, tok: Tok| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            })
        };
        if c.is_ascii_lowercase() {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            advance!(j - i);
            push(&mut out, Tok::Name(word));
            continue;
        }
        if c.is_ascii_uppercase() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            advance!(j - i);
            push(&mut out, Tok::Var(word));
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            advance!(j - i);
            push(&mut out, Tok::Int(word));
            continue;
        }
        if c == '\'' || c == '"' {
            let quote = c;
            advance!(1);
            let mut value = String::new();
            loop {
                let Some(&d) = chars.get(i) else {
                    return Err(ReadError::syntax(
                        span_at(start_line, start_col),
                        "unterminated quoted atom",
                    ));
                };
                if d == quote {
                    if chars.get(i + 1) == Some(&quote) {
                        value.push(quote);
                        advance!(2);
                        continue;
                    }
                    advance!(1);
                    break;
                }
                if d == '\\' {
                    let Some(&e) = chars.get(i + 1) else {
                        return Err(ReadError::syntax(
                            span_at(start_line, start_col),
                            "unterminated quoted atom",
                        ));
                    };
                    value.push(match e {
                        'n' => '\n',
                        't' => '\t',
                        other => other,
                    });
                    advance!(2);
                    continue;
                }
                value.push(d);
                advance!(1);
            }
            let tok = if quote == '\'' {
                Tok::Quoted(value)
            } else {
                Tok::Str(value)
            };
            push(&mut out, tok);
            continue;
        }
        let solo = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Bar),
            ';' => Some(Tok::Semicolon),
            _ => None,
        };
        if let Some(tok) = solo {
            advance!(1);
            push(&mut out, tok);
            continue;
        }
        if c == '.' {
            let next = chars.get(i + 1);
            if next.is_none_or(|n| n.is_whitespace() || *n == '%') {
                advance!(1);
                push(&mut out, Tok::End);
                continue;
            }
        }
        if SYMBOL_CHARS.contains(c) {
            let mut j = i;
            while j < chars.len() && SYMBOL_CHARS.contains(chars[j]) {
                j += 1;
            }
            // A trailing `.` before layout ends the clause.
            let mut run_end = j;
            if chars[j - 1] == '.' && j - 1 > i && chars.get(j).is_none_or(|n| n.is_whitespace() || *n == '%')
            {
                run_end = j - 1;
            }
            let run: String = chars[i..run_end].iter().collect();
            split_symbol_run(&run, start_line, start_col, &mut out);
            advance!(run_end - i);
            continue;
        }
        // Unknown characters only matter if the parser looks at them.
        advance!(1);
        push(&mut out, Tok::Sym(c.to_string()));
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

fn split_symbol_run(run: &str, line: usize, column: usize, out: &mut Vec<Spanned>) {
    let mut rest = run;
    let mut col = column;
    'outer: while !rest.is_empty() {
        for op in OPERATORS {
            if rest.starts_with(op) {
                out.push(Spanned {
                    tok: Tok::Sym((*op).to_string()),
                    line,
                    column: col,
                });
                rest = &rest[op.len()..];
                col += op.chars().count();
                continue 'outer;
            }
        }
        // Not a known operator: keep the remainder opaque.
        out.push(Spanned {
            tok: Tok::Sym(rest.to_string()),
            line,
            column: col,
        });
        break;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<Tok> {
        tokenize(text, None).unwrap().into_iter().map(|s| s.tok).collect()
    }

    #[test]
    fn clause_tokens() {
        assert_eq!(
            toks("nat(s(X)) :- nat(X)."),
            vec![
                Tok::Name("nat".into()),
                Tok::LParen,
                Tok::Name("s".into()),
                Tok::LParen,
                Tok::Var("X".into()),
                Tok::RParen,
                Tok::RParen,
                Tok::Sym(":-".into()),
                Tok::Name("nat".into()),
                Tok::LParen,
                Tok::Var("X".into()),
                Tok::RParen,
                Tok::End,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn operator_runs_split() {
        assert_eq!(
            toks("~~p"),
            vec![
                Tok::Sym("~".into()),
                Tok::Sym("~".into()),
                Tok::Name("p".into()),
                Tok::Eof
            ]
        );
        assert_eq!(
            toks("a=?x"),
            vec![
                Tok::Name("a".into()),
                Tok::Sym("=".into()),
                Tok::Sym("?".into()),
                Tok::Name("x".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn end_after_symbol_run() {
        assert_eq!(
            toks("X = Y."),
            vec![
                Tok::Var("X".into()),
                Tok::Sym("=".into()),
                Tok::Var("Y".into()),
                Tok::End,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn quoted_atoms_and_comments() {
        assert_eq!(
            toks("'it''s' % comment\n'a\\\\b'"),
            vec![Tok::Quoted("it's".into()), Tok::Quoted("a\\b".into()), Tok::Eof]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let spans = tokenize("a.\n  b.", None).unwrap();
        assert_eq!((spans[0].line, spans[0].column), (1, 1));
        assert_eq!((spans[2].line, spans[2].column), (2, 3));
    }

    #[test]
    fn unterminated_quote_is_error() {
        assert!(tokenize("'abc", None).is_err());
    }
}
