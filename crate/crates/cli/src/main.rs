use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use starkc_core::harness::{
    compile_library, run_suite, write_atomic, write_report, Format, Manifest, ProverConfig, ProverId, JOURNAL,
};
use starkc_core::oracle::{solve_with_limit, Outcome, DEFAULT_NODE_LIMIT};
use starkc_core::reader::{parse_goal, read_program};
use starkc_core::tptp::validate_fof;

#[derive(Parser)]
#[command(
    name = "starkc",
    version,
    about = "Compile logic programs and their properties to TPTP proof obligations"
)]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one `.p` file per fact plus a manifest.
    Compile {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        facts: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Induct on the given 1-based premise of a fact: `fact=index`.
        #[arg(long = "induct-on", value_parser = parse_induct_on)]
        induct_on: Vec<(String, usize)>,
    },
    /// Run provers on every compiled obligation and report success rates.
    Prove {
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated; `eprover`, `vampire`, or names given with
        /// `--prover-cmd`. Empty for a compile-only report.
        #[arg(long, default_value = "eprover,vampire")]
        provers: String,
        /// Extra prover: `name=executable args...` with `$TO` and `$FILE`.
        #[arg(long = "prover-cmd")]
        prover_cmd: Vec<String>,
        /// Seconds, comma-separated.
        #[arg(long, default_value = "1,10,60", value_delimiter = ',')]
        timeouts: Vec<u64>,
        #[arg(long, default_value_t = 7)]
        jobs: usize,
        /// Recompile with induction on the given 1-based premise: `fact=index`.
        #[arg(long = "induct-on", value_parser = parse_induct_on)]
        induct_on: Vec<(String, usize)>,
        /// Results journal; defaults to `results.jsonl` in the output directory.
        #[arg(long)]
        journal: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
    },
    /// Validate the compiled FOF files.
    Check {
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a goal through the SLDNF interpreter.
    Solve {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        nodes: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Markdown,
}

fn parse_induct_on(s: &str) -> Result<(String, usize), String> {
    let (fact, index) = s
        .rsplit_once('=')
        .ok_or_else(|| format!("expected fact=index, got `{s}`"))?;
    let index: usize = index
        .parse()
        .map_err(|_| format!("premise index `{index}` is not a number"))?;
    if index == 0 || fact.is_empty() {
        return Err(format!("expected fact=index with index >= 1, got `{s}`"));
    }
    Ok((fact.to_string(), index))
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Unproved,
    Config(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Config(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unproved) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compile {
            program,
            facts,
            out,
            induct_on,
        } => {
            let entry = compile_library(&program, &facts, &out, &induct_on.into_iter().collect())
                .map_err(anyhow::Error::from)?;
            for ob in &entry.obligations {
                let note = if ob.induction {
                    ""
                } else {
                    "  (no induction axiom)"
                };
                println!("{}{note}", out.join(&ob.file).display());
            }
            Ok(())
        }
        Command::Prove {
            out,
            provers,
            prover_cmd,
            timeouts,
            jobs,
            induct_on,
            journal,
            report,
            format,
        } => prove(ProveArgs {
            out,
            provers,
            prover_cmd,
            timeouts,
            jobs,
            induct_on,
            journal,
            report,
            format,
        }),
        Command::Check { out } => check(&out),
        Command::Solve {
            program,
            goal,
            depth,
            nodes,
        } => {
            let p = read_program(&program).map_err(anyhow::Error::from)?;
            let g = parse_goal(&goal).map_err(|e| anyhow!("goal: {e}"))?;
            let verdict = solve_with_limit(&p, &g, depth, nodes).map_err(|e| anyhow!("{e}"))?;
            let word = match verdict.outcome {
                Outcome::Succeeds => "succeeds",
                Outcome::Fails => "fails",
                Outcome::DepthExceeded => "depth exceeded",
            };
            println!("{word} ({} nodes)", verdict.nodes);
            Ok(())
        }
    }
}

struct ProveArgs {
    out: PathBuf,
    provers: String,
    prover_cmd: Vec<String>,
    timeouts: Vec<u64>,
    jobs: usize,
    induct_on: Vec<(String, usize)>,
    journal: Option<PathBuf>,
    report: Option<PathBuf>,
    format: Option<ReportFormat>,
}

fn custom_prover(spec: &str) -> Result<ProverConfig> {
    let (name, command) = spec
        .split_once('=')
        .ok_or_else(|| anyhow!("--prover-cmd expects name=command, got `{spec}`"))?;
    let command = command.trim();
    let (exe, template) = command.split_once(char::is_whitespace).unwrap_or((command, ""));
    if exe.is_empty() {
        bail!("--prover-cmd `{spec}` has no executable");
    }
    ProverConfig::new(ProverId::Custom(name.to_string()), exe, template)
        .with_context(|| format!("--prover-cmd `{spec}`"))
}

fn select_provers(names: &str, custom: &[String]) -> Result<Vec<ProverConfig>> {
    let custom: Vec<ProverConfig> = custom.iter().map(|s| custom_prover(s)).collect::<Result<_>>()?;
    let mut out: Vec<ProverConfig> = Vec::new();
    for name in names.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        let cfg = match custom.iter().find(|c| c.id.name() == name) {
            Some(c) => c.clone(),
            None => ProverConfig::by_name(name)?,
        };
        if out.iter().any(|c| c.id == cfg.id) {
            bail!("prover `{name}` listed twice");
        }
        out.push(cfg);
    }
    Ok(out)
}

fn prove(args: ProveArgs) -> Result<(), Failure> {
    let provers = select_provers(&args.provers, &args.prover_cmd)?;
    if args.timeouts.is_empty() || args.timeouts.contains(&0) {
        return Err(anyhow!("timeouts must be positive").into());
    }
    if args.jobs == 0 {
        return Err(anyhow!("--jobs must be at least 1").into());
    }
    let mut manifest = Manifest::load(&args.out).map_err(anyhow::Error::from)?;
    if manifest.libraries.is_empty() {
        return Err(anyhow!(
            "{}: nothing compiled; run `starkc compile` first",
            args.out.display()
        )
        .into());
    }
    if !args.induct_on.is_empty() {
        manifest = recompile(&args.out, manifest, &args.induct_on)?;
    }

    let entries = manifest.suite_entries(&args.out);
    let journal = args.journal.unwrap_or_else(|| args.out.join(JOURNAL));
    let report = run_suite(&entries, &provers, &args.timeouts, args.jobs, Some(&journal))
        .with_context(|| format!("running suite in {}", args.out.display()))?;

    let format = match args.format {
        Some(ReportFormat::Markdown) => Format::Markdown,
        Some(ReportFormat::Csv) => Format::Csv,
        None => match args.report.as_deref().and_then(Path::extension) {
            Some(ext) if ext == "md" => Format::Markdown,
            _ => Format::Csv,
        },
    };
    let text = write_report(&report, format);
    match &args.report {
        Some(path) => write_atomic(path, text.as_bytes()).map_err(anyhow::Error::from)?,
        None => print!("{text}"),
    }
    if report.all_proved() {
        Ok(())
    } else {
        Err(Failure::Unproved)
    }
}

/// Recompiles the libraries owning the facts named in `overrides`.
fn recompile(out: &Path, manifest: Manifest, overrides: &[(String, usize)]) -> Result<Manifest> {
    let mut per_lib: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for (fact, index) in overrides {
        let lib = manifest
            .library_of_fact(fact)
            .ok_or_else(|| anyhow!("no compiled fact named `{fact}`"))?;
        per_lib
            .entry(lib.lib.clone())
            .or_insert_with(|| lib.induct_on.clone())
            .insert(fact.clone(), *index);
    }
    for (lib, induct_on) in &per_lib {
        let entry = manifest
            .libraries
            .iter()
            .find(|l| &l.lib == lib)
            .expect("library came from the manifest");
        let unchanged = &entry.induct_on == induct_on;
        if unchanged {
            continue;
        }
        log::info!("recompiling {lib} with induction overrides");
        compile_library(&entry.program, &entry.facts, out, induct_on)?;
    }
    Ok(Manifest::load(out)?)
}

fn check(out: &Path) -> Result<(), Failure> {
    let manifest = Manifest::load(out).map_err(anyhow::Error::from)?;
    let mut files: BTreeSet<PathBuf> = manifest.suite_entries(out).into_iter().map(|e| e.file).collect();
    let listing = std::fs::read_dir(out).with_context(|| format!("reading {}", out.display()))?;
    for item in listing {
        let path = item.context("listing output directory")?.path();
        if path.extension().is_some_and(|e| e == "p") {
            files.insert(path);
        }
    }
    if files.is_empty() {
        return Err(anyhow!("{}: no .p files", out.display()).into());
    }
    let mut bad = 0;
    for file in &files {
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => {
                println!("{}: {e}", file.display());
                bad += 1;
                continue;
            }
        };
        let diags = validate_fof(&text);
        for d in &diags {
            println!("{}:{d}", file.display());
        }
        if !diags.is_empty() {
            bad += 1;
        }
    }
    println!("{} files checked, {bad} with problems", files.len());
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Unproved)
    }
}
