use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io;
use std::path::PathBuf;
use std::sync::{Condvar, Mutex};

use sha2::{Digest, Sha256};

use super::journal::{Journal, JournalRecord};
use super::prover::{run_prover_for, ProverConfig, Status};
use super::report::{CellResult, Report};

/// One compiled obligation file to be run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub lib: String,
    pub ordinal: usize,
    pub fact: String,
    pub file: PathBuf,
}

pub fn file_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs of one prover on one file over ascending timeouts, stopping at the
/// first proof.
struct Chain {
    entry: usize,
    prover: usize,
    timeouts: Vec<u64>,
}

struct Queue {
    chains: VecDeque<Chain>,
    running: HashMap<usize, usize>,
}

/// Runs every (entry, prover, timeout) cell not already in the journal,
/// with at most `jobs` prover processes at a time.
///
/// A proof at timeout `t` counts for every larger timeout without running
/// again. Outcomes are appended to the journal as they arrive, so an
/// interrupted suite resumes where it stopped.
pub fn run_suite(
    entries: &[SuiteEntry],
    provers: &[ProverConfig],
    timeouts: &[u64],
    jobs: usize,
    journal: Option<&std::path::Path>,
) -> io::Result<Report> {
    let mut timeouts: Vec<u64> = timeouts.to_vec();
    timeouts.sort_unstable();
    timeouts.dedup();
    let jobs = jobs.max(1);

    let digests: Vec<String> = entries
        .iter()
        .map(|e| std::fs::read(&e.file).map(|b| file_digest(&b)))
        .collect::<io::Result<_>>()?;

    let (journal, existing) = match journal {
        Some(path) => {
            let (j, records) = Journal::open(path)?;
            (Some(j), records)
        }
        None => (None, Vec::new()),
    };

    // (entry, prover) -> timeout -> status
    let mut known: HashMap<(usize, usize), BTreeMap<u64, Status>> = HashMap::new();
    let index: HashMap<(&str, usize, &str), usize> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.lib.as_str(), e.ordinal, digests[i].as_str()), i))
        .collect();
    let prover_index: HashMap<&str, usize> = provers
        .iter()
        .enumerate()
        .map(|(i, p)| (p.id.name(), i))
        .collect();
    // Errors (a missing executable, a crash) are retried rather than
    // trusted.
    for rec in existing.iter().filter(|r| r.outcome.status != Status::Error) {
        let Some(&e) = index.get(&(rec.lib.as_str(), rec.ordinal, rec.digest.as_str())) else {
            continue;
        };
        let Some(&p) = prover_index.get(rec.outcome.prover.as_str()) else {
            continue;
        };
        known
            .entry((e, p))
            .or_default()
            .insert(rec.timeout, rec.outcome.status);
    }

    let mut chains = VecDeque::new();
    for e in 0..entries.len() {
        for p in 0..provers.len() {
            let done = known.get(&(e, p));
            let mut todo = Vec::new();
            for &t in &timeouts {
                match done.and_then(|d| d.get(&t)) {
                    Some(Status::Proved) => break,
                    Some(_) => {}
                    None => todo.push(t),
                }
            }
            if let Some(d) = done {
                if let Some((&t0, _)) = d.iter().find(|(_, s)| **s == Status::Proved) {
                    todo.retain(|&t| t < t0);
                }
            }
            if !todo.is_empty() {
                chains.push_back(Chain {
                    entry: e,
                    prover: p,
                    timeouts: todo,
                });
            }
        }
    }
    let total_runs: usize = chains.iter().map(|c| c.timeouts.len()).sum();
    log::info!(
        "{total_runs} prover runs to do, {} already recorded",
        existing.len()
    );

    let queue = Mutex::new(Queue {
        chains,
        running: HashMap::new(),
    });
    let wake = Condvar::new();
    let results: Mutex<Vec<(usize, usize, u64, Status)>> = Mutex::new(Vec::new());
    let failure: Mutex<Option<io::Error>> = Mutex::new(None);

    let take = || -> Option<Chain> {
        let mut q = queue.lock().unwrap();
        loop {
            if q.chains.is_empty() {
                return None;
            }
            let pos = q.chains.iter().position(|c| {
                provers[c.prover]
                    .max_parallel
                    .is_none_or(|limit| q.running.get(&c.prover).copied().unwrap_or(0) < limit.max(1))
            });
            if let Some(pos) = pos {
                let chain = q.chains.remove(pos).expect("position is valid");
                *q.running.entry(chain.prover).or_default() += 1;
                return Some(chain);
            }
            q = wake.wait(q).unwrap();
        }
    };

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| {
                while let Some(chain) = take() {
                    let entry = &entries[chain.entry];
                    let cfg = &provers[chain.prover];
                    for &t in &chain.timeouts {
                        let outcome = run_prover_for(cfg, &entry.file, t, &entry.fact);
                        log::info!(
                            "{} {} {}s: {:?} ({:.2}s)",
                            entry.fact,
                            cfg.id.name(),
                            t,
                            outcome.status,
                            outcome.wall_time
                        );
                        let status = outcome.status;
                        if let Some(j) = &journal {
                            let record = JournalRecord {
                                lib: entry.lib.clone(),
                                ordinal: entry.ordinal,
                                digest: digests[chain.entry].clone(),
                                timeout: t,
                                outcome,
                            };
                            if let Err(e) = j.append(&record) {
                                failure.lock().unwrap().get_or_insert(e);
                            }
                        }
                        results
                            .lock()
                            .unwrap()
                            .push((chain.entry, chain.prover, t, status));
                        if status == Status::Proved {
                            break;
                        }
                    }
                    let mut q = queue.lock().unwrap();
                    if let Some(n) = q.running.get_mut(&chain.prover) {
                        *n -= 1;
                    }
                    wake.notify_all();
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }

    for (e, p, t, status) in results.into_inner().unwrap() {
        known.entry((e, p)).or_default().insert(t, status);
    }
    let mut cells = Vec::new();
    for (e, entry) in entries.iter().enumerate() {
        for p in 0..provers.len() {
            let statuses = known.get(&(e, p));
            let mut proved = false;
            for &t in &timeouts {
                let recorded = statuses.and_then(|s| s.get(&t)).copied();
                proved |= recorded == Some(Status::Proved)
                    || statuses.is_some_and(|s| s.range(..t).any(|(_, st)| *st == Status::Proved));
                let status = if proved {
                    Status::Proved
                } else {
                    recorded.unwrap_or(Status::Unknown)
                };
                cells.push(CellResult {
                    lib: entry.lib.clone(),
                    ordinal: entry.ordinal,
                    fact: entry.fact.clone(),
                    prover: p,
                    timeout: t,
                    status,
                });
            }
        }
    }
    let mut libraries: BTreeMap<String, usize> = BTreeMap::new();
    for e in entries {
        *libraries.entry(e.lib.clone()).or_default() += 1;
    }
    Ok(Report::new(
        provers.iter().map(|p| p.id.abbreviation().to_string()).collect(),
        &timeouts,
        libraries,
        cells,
    ))
}
