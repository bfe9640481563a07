//! Compiler from pure logic programs with negation, plus property files,
//! to first-order proof obligations for automated theorem provers.

pub mod ast;
pub mod axiomgen;
pub mod canon;
pub mod completion;
pub mod fresh;
pub mod harness;
pub mod oracle;
pub mod reader;
pub mod sft;
pub mod tptp;

pub use ast::{Atom, Clause, Fact, FactKind, Formula, Functor, Goal, Mode, PredId, Program, Term};
pub use axiomgen::{NamedFormula, Role};
pub use completion::{completed_definition, dependency_info, DefinitionForm, DependencyInfo};
pub use fresh::FreshVars;
pub use reader::{read_facts, read_program, ReadError};
