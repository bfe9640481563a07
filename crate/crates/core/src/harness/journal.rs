use std::fs::{File, OpenOptions};
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::prover::ProverOutcome;

/// One line of `results.jsonl`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JournalRecord {
    pub lib: String,
    pub ordinal: usize,
    /// SHA-256 of the obligation file the prover was run on.
    pub digest: String,
    pub timeout: u64,
    #[serde(flatten)]
    pub outcome: ProverOutcome,
}

/// Append-only results log. Each record is written with a single
/// `write_all` of one complete line.
#[derive(Debug)]
pub struct Journal {
    path: PathBuf,
    file: Mutex<File>,
}

fn parse_lines(text: &str, path: &Path) -> Vec<JournalRecord> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(line) {
            Ok(rec) => out.push(rec),
            Err(e) => log::warn!("{}:{}: skipping unreadable record: {e}", path.display(), i + 1),
        }
    }
    out
}

/// Reads the complete records of a journal; a torn last line is ignored.
pub fn load_journal(path: &Path) -> io::Result<Vec<JournalRecord>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let complete = match text.rfind('\n') {
        Some(end) => &text[..=end],
        None => "",
    };
    Ok(parse_lines(complete, path))
}

impl Journal {
    /// Opens (creating if needed) a journal, drops a torn trailing line,
    /// and returns the records already present.
    pub fn open(path: &Path) -> io::Result<(Journal, Vec<JournalRecord>)> {
        let mut file = OpenOptions::new()
            .read(true)
            .write(true)
            .create(true)
            .truncate(false)
            .open(path)?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        let keep = text.rfind('\n').map_or(0, |i| i + 1);
        if keep < text.len() {
            log::warn!("{}: dropping incomplete last record", path.display());
            file.set_len(keep as u64)?;
        }
        file.seek(SeekFrom::End(0))?;
        let records = parse_lines(&text[..keep], path);
        drop(file);
        let file = OpenOptions::new().append(true).open(path)?;
        Ok((
            Journal {
                path: path.to_path_buf(),
                file: Mutex::new(file),
            },
            records,
        ))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, record: &JournalRecord) -> io::Result<()> {
        let mut line = serde_json::to_string(record).map_err(io::Error::other)?;
        line.push('\n');
        let mut file = self.file.lock().unwrap_or_else(|e| e.into_inner());
        file.write_all(line.as_bytes())?;
        file.flush()
    }
}
