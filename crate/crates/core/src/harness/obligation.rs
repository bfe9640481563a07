use std::collections::{HashMap, HashSet};

use indexmap::IndexSet;
use thiserror::Error;

use crate::ast::{Fact, PredId, Program};
use crate::axiomgen::{theory_axioms, try_induction_axiom, NamedFormula};
use crate::completion::dependency_info;
use crate::fresh::FreshVars;
use crate::tptp::{emit_file, EmitError, FileHeader, MangleError, ManglingTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("fact {fact} refers to {pred}, which the program does not define or call")]
    UnknownPredicate { fact: String, pred: PredId },
    #[error(transparent)]
    Mangle(#[from] MangleError),
}

/// Per-fact settings for obligation building.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ObligationOptions {
    /// 1-based premise index to induct on, keyed by fact name.
    pub induct_on: HashMap<String, usize>,
}

/// One fact's conjecture with its full axiom context.
#[derive(Clone, Debug)]
pub struct ProofObligation {
    pub fact: Fact,
    /// 1-based position in the fact file.
    pub ordinal: usize,
    /// Program theory followed by the earlier facts.
    pub axioms: Vec<NamedFormula>,
    pub induction: Option<NamedFormula>,
    pub conjecture: NamedFormula,
    pub table: ManglingTable,
}

impl ProofObligation {
    /// Axioms, induction axiom, conjecture: the order they are emitted in.
    pub fn formulas(&self) -> Vec<NamedFormula> {
        let mut out = self.axioms.clone();
        out.extend(self.induction.clone());
        out.push(self.conjecture.clone());
        out
    }

    pub fn to_fof(&self, program: &str) -> Result<String, EmitError> {
        let header = FileHeader {
            program: program.to_string(),
            fact: format!("{} {}", self.fact.kind, self.fact.name),
        };
        emit_file(&self.formulas(), &header, &self.table)
    }

    /// `<lib>__<ordinal>__<fact>.p`, zero-padded so lexical order is file
    /// order.
    pub fn file_name(&self, lib: &str) -> String {
        format!(
            "{}__{:03}__{}.p",
            sanitize(lib),
            self.ordinal,
            sanitize(&self.fact.name)
        )
    }
}

pub fn sanitize(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() {
        "_".to_string()
    } else {
        s
    }
}

/// `lemma-(add:x_0_x)`
pub fn fact_formula_name(fact: &Fact) -> String {
    format!("{}-({})", fact.kind, fact.name)
}

fn dedupe_names(formulas: &mut [&mut NamedFormula]) {
    let mut used = HashSet::new();
    for f in formulas.iter_mut() {
        if used.insert(f.name.clone()) {
            continue;
        }
        let mut k = 2;
        while used.contains(&format!("{}_{k}", f.name)) {
            k += 1;
        }
        f.name = format!("{}_{k}", f.name);
        used.insert(f.name.clone());
    }
}

pub fn build_obligations(program: &Program, facts: &[Fact]) -> Result<Vec<ProofObligation>, BuildError> {
    build_obligations_with(program, facts, &ObligationOptions::default())
}

/// One obligation per fact, in file order. Earlier facts become axioms of
/// later obligations; never the other way round.
pub fn build_obligations_with(
    program: &Program,
    facts: &[Fact],
    options: &ObligationOptions,
) -> Result<Vec<ProofObligation>, BuildError> {
    for fact in facts {
        let mut preds = IndexSet::new();
        fact.statement.collect_preds(&mut preds);
        if let Some(pred) = preds.into_iter().find(|p| !program.predicates.contains(p)) {
            return Err(BuildError::UnknownPredicate {
                fact: fact.name.clone(),
                pred,
            });
        }
    }
    let mut extended = program.clone();
    for fact in facts {
        let mut functors = IndexSet::new();
        fact.statement.collect_functors(&mut functors);
        extended.extend_signature(functors);
    }
    let table = ManglingTable::new(&extended.signature, &extended.predicates)?;
    let deps = dependency_info(&extended);

    let mut reserved = HashSet::new();
    for fact in facts {
        fact.statement.all_vars(&mut reserved);
    }
    let mut fresh = FreshVars::default();
    fresh.reserve(reserved);
    let theory = theory_axioms(&extended, &mut fresh);

    let mut out = Vec::with_capacity(facts.len());
    for (index, fact) in facts.iter().enumerate() {
        let mut axioms = theory.clone();
        axioms.extend(
            facts[..index]
                .iter()
                .map(|prior| NamedFormula::axiom(fact_formula_name(prior), prior.statement.clone())),
        );
        let premise = options.induct_on.get(&fact.name).copied();
        let mut induction =
            match try_induction_axiom(&extended, &deps, &fact.statement, premise, &mut fresh.clone()) {
                Ok(axiom) => Some(axiom),
                Err(reason) => {
                    log::warn!("{} {}: no induction axiom: {reason}", fact.kind, fact.name);
                    None
                }
            };
        let mut conjecture = NamedFormula::conjecture(fact_formula_name(fact), fact.statement.clone());
        {
            let mut all: Vec<&mut NamedFormula> = axioms.iter_mut().collect();
            all.extend(induction.as_mut());
            all.push(&mut conjecture);
            dedupe_names(&mut all);
        }
        out.push(ProofObligation {
            fact: fact.clone(),
            ordinal: index + 1,
            axioms,
            induction,
            conjecture,
            table: table.clone(),
        });
    }
    Ok(out)
}
