use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::prover::Status;

/// Final status of one (fact, prover, timeout) cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellResult {
    pub lib: String,
    pub ordinal: usize,
    pub fact: String,
    /// Index into [`Report::provers`].
    pub prover: usize,
    pub timeout: u64,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub lib: String,
    /// Prover abbreviations, e.g. `E`, `V`, or `EV` for "any of".
    pub combination: String,
    pub timeout: u64,
    pub facts: usize,
    pub successes: usize,
    pub percent: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// Prover column labels in configuration order.
    pub provers: Vec<String>,
    /// Ascending.
    pub timeouts: Vec<u64>,
    /// Library name and fact count, sorted by name.
    pub libraries: Vec<(String, usize)>,
    /// Sorted by library, then timeout, then column order.
    pub rows: Vec<ReportRow>,
    pub cells: Vec<CellResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

/// `round(100 * successes / facts)`, halves rounded up; 0 when there are no
/// facts.
pub fn percent(successes: usize, facts: usize) -> u32 {
    if facts == 0 {
        return 0;
    }
    ((200 * successes + facts) / (2 * facts)) as u32
}

impl Report {
    /// Aggregates cell results. `libraries` gives every library's fact
    /// count, including libraries without cells.
    pub fn new(
        provers: Vec<String>,
        timeouts: &[u64],
        libraries: impl IntoIterator<Item = (String, usize)>,
        mut cells: Vec<CellResult>,
    ) -> Report {
        let timeouts: Vec<u64> = timeouts
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let libraries: Vec<(String, usize)> = libraries
            .into_iter()
            .collect::<BTreeMap<_, _>>()
            .into_iter()
            .collect();
        cells.sort();
        let mut proved: BTreeMap<(&str, u64, usize), BTreeSet<usize>> = BTreeMap::new();
        for c in &cells {
            if c.status == Status::Proved {
                proved
                    .entry((c.lib.as_str(), c.timeout, c.prover))
                    .or_default()
                    .insert(c.ordinal);
            }
        }
        let mut rows = Vec::new();
        for (lib, facts) in &libraries {
            for &t in &timeouts {
                let mut any = BTreeSet::new();
                for (i, name) in provers.iter().enumerate() {
                    let set = proved.get(&(lib.as_str(), t, i));
                    let successes = set.map_or(0, BTreeSet::len);
                    any.extend(set.into_iter().flatten().copied());
                    rows.push(ReportRow {
                        lib: lib.clone(),
                        combination: name.clone(),
                        timeout: t,
                        facts: *facts,
                        successes,
                        percent: percent(successes, *facts),
                    });
                }
                if provers.len() > 1 {
                    rows.push(ReportRow {
                        lib: lib.clone(),
                        combination: provers.concat(),
                        timeout: t,
                        facts: *facts,
                        successes: any.len(),
                        percent: percent(any.len(), *facts),
                    });
                }
            }
        }
        Report {
            provers,
            timeouts,
            libraries,
            rows,
            cells,
        }
    }

    /// Column labels after `lib` and `#`, e.g. `E-1s`, `V-1s`, `EV-1s`.
    pub fn columns(&self) -> Vec<String> {
        let mut out = Vec::new();
        for t in &self.timeouts {
            for p in &self.provers {
                out.push(format!("{p}-{t}s"));
            }
            if self.provers.len() > 1 {
                out.push(format!("{}-{t}s", self.provers.concat()));
            }
        }
        out
    }

    /// Whether every fact was proved by some prover at some timeout. True
    /// when no provers were run.
    pub fn all_proved(&self) -> bool {
        if self.provers.is_empty() {
            return true;
        }
        let proved: BTreeSet<(&str, usize)> = self
            .cells
            .iter()
            .filter(|c| c.status == Status::Proved)
            .map(|c| (c.lib.as_str(), c.ordinal))
            .collect();
        let total: usize = self.libraries.iter().map(|(_, n)| n).sum();
        proved.len() == total
    }

    fn grid(&self) -> Vec<Vec<String>> {
        let per_lib = self.columns().len();
        let mut rows = Vec::new();
        for (i, (lib, facts)) in self.libraries.iter().enumerate() {
            let mut row = vec![lib.clone(), facts.to_string()];
            row.extend(
                self.rows[i * per_lib..(i + 1) * per_lib]
                    .iter()
                    .map(|r| format!("{}%", r.percent)),
            );
            rows.push(row);
        }
        rows
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_report(report: &Report, format: Format) -> String {
    let mut header = vec!["lib".to_string(), "#".to_string()];
    header.extend(report.columns());
    let grid = report.grid();
    let mut out = String::new();
    match format {
        Format::Csv => {
            for row in std::iter::once(&header).chain(&grid) {
                let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                let _ = writeln!(out, "{}", fields.join(","));
            }
        }
        Format::Markdown => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let align: Vec<&str> = header
                .iter()
                .enumerate()
                .map(|(i, _)| if i == 0 { "---" } else { "---:" })
                .collect();
            let _ = writeln!(out, "| {} |", align.join(" | "));
            for row in &grid {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
    }
    out
}
