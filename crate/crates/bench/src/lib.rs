//! Inputs for the benchmarks.

use std::fmt::Write;

pub const ADD: &str = include_str!("../../../corpus/add.pl");

pub const ADD_FACTS: &str = include_str!("../../../corpus/add.pr");

/// `n` predicates `p0 .. p{n-1}`, each defined by two clauses and calling
/// its predecessor, plus one inductive lemma per predicate.
pub fn chain(n: usize) -> (String, String) {
    let mut program = String::from("nat(0).\nnat(s(X)) :- nat(X).\n");
    let mut facts = String::new();
    for i in 0..n {
        let _ = writeln!(program, "p{i}(0, nil).");
        if i == 0 {
            let _ = writeln!(program, "p0(s(X), c(X, L)) :- p0(X, L).");
        } else {
            let _ = writeln!(
                program,
                "p{i}(s(X), c(X, L)) :- p{i}(X, L), \\+ p{}(X, nil).",
                i - 1
            );
        }
        let _ = writeln!(
            facts,
            ":- lemma(c:p{i}, all [x,l]: succeeds p{i}(?x,?l) => succeeds nat(?x), [])."
        );
    }
    (program, facts)
}

/// `s(s(...(0)))` with `n` applications.
pub fn numeral(n: usize) -> String {
    let mut s = String::new();
    for _ in 0..n {
        s.push_str("s(");
    }
    s.push('0');
    for _ in 0..n {
        s.push(')');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_parse() {
        let (p, f) = chain(5);
        let program = starkc_core::reader::parse_program(&p).unwrap();
        let facts = starkc_core::reader::parse_facts(&f).unwrap();
        let obs = starkc_core::harness::build_obligations(&program, &facts).unwrap();
        assert_eq!(obs.len(), 5);
        assert!(obs.iter().all(|o| o.induction.is_some()));
        assert_eq!(numeral(2), "s(s(0))");
    }
}
