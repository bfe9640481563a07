use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Stdio};
use std::sync::OnceLock;
use std::thread;
use std::time::{Duration, Instant};

use regex::Regex;
use serde::{Deserialize, Serialize};
use wait_timeout::ChildExt;

/// Extra wall-clock time granted beyond the prover's own limit before the
/// process is killed.
pub const GRACE: Duration = Duration::from_secs(2);

pub const EPROVER_ARGS: &str =
    "--delete-bad-limit=2000000000 --definitional-cnf -s --auto-schedule=8 --proof-object --cpu-limit=$TO $FILE";
pub const VAMPIRE_ARGS: &str = "--mode casc -m 16384 --cores 7 -t $TO $FILE";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProverId {
    Eprover,
    Vampire,
    Custom(String),
}

impl ProverId {
    pub fn name(&self) -> &str {
        match self {
            ProverId::Eprover => "eprover",
            ProverId::Vampire => "vampire",
            ProverId::Custom(name) => name,
        }
    }

    /// Column label: `E`, `V`, or the custom name.
    pub fn abbreviation(&self) -> &str {
        match self {
            ProverId::Eprover => "E",
            ProverId::Vampire => "V",
            ProverId::Custom(name) => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("argument template must contain $FILE exactly once, found {0}")]
    FileCount(usize),
    #[error("unknown prover `{0}`")]
    UnknownProver(String),
    #[error("prover name `{0}` may only contain letters, digits, `_` and `-`")]
    BadName(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverConfig {
    pub id: ProverId,
    pub executable: PathBuf,
    /// Arguments with `$TO` and `$FILE` placeholders.
    pub args: Vec<String>,
    /// Upper bound on concurrent runs of this prover; `None` defers to the
    /// suite-wide job limit.
    pub max_parallel: Option<usize>,
}

fn count_file(args: &[String]) -> usize {
    args.iter().map(|a| a.matches("$FILE").count()).sum()
}

impl ProverConfig {
    pub fn new(id: ProverId, executable: impl Into<PathBuf>, template: &str) -> Result<Self, ConfigError> {
        let args: Vec<String> = template.split_whitespace().map(str::to_string).collect();
        let n = count_file(&args);
        if n != 1 {
            return Err(ConfigError::FileCount(n));
        }
        if let ProverId::Custom(name) = &id {
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
            {
                return Err(ConfigError::BadName(name.clone()));
            }
        }
        Ok(ProverConfig {
            id,
            executable: executable.into(),
            args,
            max_parallel: None,
        })
    }

    /// The E command line; `STARKC_EPROVER` overrides the executable.
    pub fn eprover() -> Self {
        let exe = std::env::var_os("STARKC_EPROVER").unwrap_or_else(|| "eprover".into());
        ProverConfig::new(ProverId::Eprover, exe, EPROVER_ARGS).expect("built-in template")
    }

    /// The Vampire command line; `STARKC_VAMPIRE` overrides the executable.
    pub fn vampire() -> Self {
        let exe = std::env::var_os("STARKC_VAMPIRE").unwrap_or_else(|| "vampire".into());
        ProverConfig::new(ProverId::Vampire, exe, VAMPIRE_ARGS).expect("built-in template")
    }

    pub fn by_name(name: &str) -> Result<Self, ConfigError> {
        match name {
            "eprover" | "e" | "E" => Ok(ProverConfig::eprover()),
            "vampire" | "v" | "V" => Ok(ProverConfig::vampire()),
            other => Err(ConfigError::UnknownProver(other.to_string())),
        }
    }

    pub fn command_args(&self, file: &Path, timeout: u64) -> Vec<String> {
        let to = timeout.to_string();
        let file = file.to_string_lossy();
        self.args
            .iter()
            .map(|a| a.replace("$TO", &to).replace("$FILE", &file))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proved,
    Disproved,
    Unknown,
    Timeout,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProverOutcome {
    pub prover: String,
    pub fact: String,
    pub status: Status,
    /// Seconds.
    pub wall_time: f64,
    /// The last `SZS status` line, or a short error description.
    pub szs: String,
}

fn szs_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"SZS status\s+(\w+)").expect("valid regex"))
}

/// The last SZS status word in `output` and the line containing it.
pub fn parse_szs(output: &str) -> Option<(String, String)> {
    output.lines().rev().find_map(|line| {
        szs_regex()
            .captures_iter(line)
            .last()
            .map(|c| (c[1].to_string(), line.trim().to_string()))
    })
}

pub fn status_for(szs: &str) -> Status {
    match szs {
        "Theorem" => Status::Proved,
        "CounterSatisfiable" | "Satisfiable" => Status::Disproved,
        "Timeout" => Status::Timeout,
        _ => Status::Unknown,
    }
}

fn read_all(mut r: impl Read + Send + 'static) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = r.read_to_end(&mut buf);
        String::from_utf8_lossy(&buf).into_owned()
    })
}

#[cfg(unix)]
fn own_process_group(cmd: &mut Command) {
    use std::os::unix::process::CommandExt;
    cmd.process_group(0);
}

#[cfg(not(unix))]
fn own_process_group(_cmd: &mut Command) {}

/// Kills the child and everything it spawned.
fn kill_tree(child: &mut Child) {
    #[cfg(unix)]
    {
        // The child leads its own process group.
        unsafe {
            libc::kill(-(child.id() as libc::pid_t), libc::SIGKILL);
        }
    }
    let _ = child.kill();
}

/// Runs one prover on one file. Failures to run are reported as outcomes
/// with status `Error`, never as Rust errors.
pub fn run_prover(cfg: &ProverConfig, file: &Path, timeout: u64) -> ProverOutcome {
    run_prover_for(cfg, file, timeout, &file.to_string_lossy())
}

pub fn run_prover_for(cfg: &ProverConfig, file: &Path, timeout: u64, fact: &str) -> ProverOutcome {
    let start = Instant::now();
    let outcome = |status, szs: String, start: Instant| ProverOutcome {
        prover: cfg.id.name().to_string(),
        fact: fact.to_string(),
        status,
        wall_time: start.elapsed().as_secs_f64(),
        szs,
    };
    if !file.is_file() {
        return outcome(Status::Error, format!("no such file: {}", file.display()), start);
    }
    let mut cmd = Command::new(&cfg.executable);
    cmd.args(cfg.command_args(file, timeout))
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    own_process_group(&mut cmd);
    let mut child = match cmd.spawn() {
        Ok(child) => child,
        Err(e) => {
            return outcome(
                Status::Error,
                format!("cannot run {}: {e}", cfg.executable.display()),
                start,
            )
        }
    };
    let stdout = read_all(child.stdout.take().expect("piped stdout"));
    let stderr = read_all(child.stderr.take().expect("piped stderr"));
    let limit = Duration::from_secs(timeout) + GRACE;
    let (exit, killed) = match child.wait_timeout(limit) {
        Ok(Some(status)) => (Some(status), false),
        Ok(None) => {
            kill_tree(&mut child);
            (child.wait().ok(), true)
        }
        Err(e) => {
            kill_tree(&mut child);
            let _ = child.wait();
            return outcome(Status::Error, format!("wait failed: {e}"), start);
        }
    };
    let wall = start.elapsed();
    let out = stdout.join().unwrap_or_default();
    let err = stderr.join().unwrap_or_default();
    let mut result = match parse_szs(&out) {
        Some((word, line)) => outcome(status_for(&word), line, start),
        None if killed => outcome(Status::Timeout, "killed after timeout".into(), start),
        None if exit.is_none_or(|s| !s.success()) => {
            let detail = err.lines().last().unwrap_or("").trim().to_string();
            let code = exit
                .and_then(|s| s.code())
                .map_or("signal".to_string(), |c| c.to_string());
            outcome(Status::Error, format!("exit {code}: {detail}"), start)
        }
        None => outcome(Status::Unknown, String::new(), start),
    };
    if killed && result.status != Status::Proved && result.status != Status::Disproved {
        result.status = Status::Timeout;
    }
    result.wall_time = wall.as_secs_f64();
    result
}
