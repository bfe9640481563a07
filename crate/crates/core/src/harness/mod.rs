//! End-to-end pipeline: per-fact proof obligations, FOF files on disk with a
//! manifest, prover runs with a resumable journal, and success-rate
//! reports.

mod journal;
mod obligation;
mod prover;
mod report;
mod suite;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::FactKind;
use crate::reader::{read_facts, read_program, ReadError};
use crate::tptp::EmitError;

pub use journal::{load_journal, Journal, JournalRecord};
pub use obligation::{
    build_obligations, build_obligations_with, fact_formula_name, sanitize, BuildError, ObligationOptions,
    ProofObligation,
};
pub use prover::{
    parse_szs, run_prover, run_prover_for, status_for, ConfigError, ProverConfig, ProverId, ProverOutcome,
    Status, EPROVER_ARGS, GRACE, VAMPIRE_ARGS,
};
pub use report::{percent, write_report, CellResult, Format, Report, ReportRow};
pub use suite::{file_digest, run_suite, SuiteEntry};

pub const MANIFEST: &str = "manifest.json";
pub const JOURNAL: &str = "results.jsonl";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("{path}: {source}")]
    Build {
        path: PathBuf,
        #[source]
        source: BuildError,
    },
    #[error("{fact}: {source}")]
    Emit {
        fact: String,
        #[source]
        source: EmitError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: bad manifest: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("no compiled fact named `{0}`")]
    UnknownFact(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObligationEntry {
    pub ordinal: usize,
    pub kind: FactKind,
    pub name: String,
    /// File name relative to the output directory.
    pub file: String,
    pub induction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LibraryEntry {
    pub lib: String,
    pub program: PathBuf,
    pub facts: PathBuf,
    #[serde(default)]
    pub induct_on: BTreeMap<String, usize>,
    pub obligations: Vec<ObligationEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub generator: String,
    /// Sorted by library name.
    pub libraries: Vec<LibraryEntry>,
}

impl Manifest {
    pub fn load(out_dir: &Path) -> Result<Manifest, HarnessError> {
        let path = out_dir.join(MANIFEST);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Manifest::default()),
            Err(e) => return Err(io_err(&path)(e)),
        };
        serde_json::from_str(&text).map_err(|e| HarnessError::Manifest {
            path,
            message: e.to_string(),
        })
    }

    pub fn save(&self, out_dir: &Path) -> Result<(), HarnessError> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        write_atomic(&out_dir.join(MANIFEST), text.as_bytes())
    }

    /// Adds or replaces a library entry.
    pub fn upsert(&mut self, entry: LibraryEntry) {
        self.generator = crate::tptp::GENERATOR.to_string();
        self.libraries.retain(|l| l.lib != entry.lib);
        self.libraries.push(entry);
        self.libraries.sort_by(|a, b| a.lib.cmp(&b.lib));
    }

    /// Suite entries for every compiled obligation, in library then file
    /// order.
    pub fn suite_entries(&self, out_dir: &Path) -> Vec<SuiteEntry> {
        self.libraries
            .iter()
            .flat_map(|lib| {
                lib.obligations.iter().map(move |o| SuiteEntry {
                    lib: lib.lib.clone(),
                    ordinal: o.ordinal,
                    fact: o.name.clone(),
                    file: out_dir.join(&o.file),
                })
            })
            .collect()
    }

    pub fn library_of_fact(&self, fact: &str) -> Option<&LibraryEntry> {
        self.libraries
            .iter()
            .find(|l| l.obligations.iter().any(|o| o.name == fact))
    }
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.as_file().sync_all().map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

/// Library name of a program file: its stem.
pub fn library_name(program: &Path) -> String {
    program
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "lib".to_string())
}

/// Compiles one program and its fact file into `out_dir`, one `.p` file per
/// fact, and records the library in the manifest.
pub fn compile_library(
    program_path: &Path,
    facts_path: &Path,
    out_dir: &Path,
    induct_on: &BTreeMap<String, usize>,
) -> Result<LibraryEntry, HarnessError> {
    let program = read_program(program_path)?;
    let facts = read_facts(facts_path)?;
    let options = ObligationOptions {
        induct_on: induct_on.iter().map(|(k, v)| (k.clone(), *v)).collect(),
    };
    let obligations =
        build_obligations_with(&program, &facts, &options).map_err(|source| HarnessError::Build {
            path: facts_path.to_path_buf(),
            source,
        })?;
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let lib = library_name(program_path);
    let label = program_path.display().to_string();

    let mut entries = Vec::with_capacity(obligations.len());
    for ob in &obligations {
        let text = ob.to_fof(&label).map_err(|source| HarnessError::Emit {
            fact: ob.fact.name.clone(),
            source,
        })?;
        let file = ob.file_name(&lib);
        write_atomic(&out_dir.join(&file), text.as_bytes())?;
        entries.push(ObligationEntry {
            ordinal: ob.ordinal,
            kind: ob.fact.kind,
            name: ob.fact.name.clone(),
            file,
            induction: ob.induction.is_some(),
        });
    }
    remove_stale(out_dir, &lib, &entries)?;

    let canonical = |p: &Path| std::fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
    let entry = LibraryEntry {
        lib,
        program: canonical(program_path),
        facts: canonical(facts_path),
        induct_on: induct_on.clone(),
        obligations: entries,
    };
    let mut manifest = Manifest::load(out_dir)?;
    manifest.upsert(entry.clone());
    manifest.save(out_dir)?;
    Ok(entry)
}

/// Deletes `.p` files of `lib` left over from an earlier compile.
fn remove_stale(out_dir: &Path, lib: &str, keep: &[ObligationEntry]) -> Result<(), HarnessError> {
    let prefix = format!("{}__", sanitize(lib));
    let read = std::fs::read_dir(out_dir).map_err(io_err(out_dir))?;
    for item in read {
        let item = item.map_err(io_err(out_dir))?;
        let name = item.file_name().to_string_lossy().into_owned();
        if name.starts_with(&prefix) && name.ends_with(".p") && !keep.iter().any(|k| k.file == name) {
            std::fs::remove_file(item.path()).map_err(io_err(&item.path()))?;
        }
    }
    Ok(())
}
