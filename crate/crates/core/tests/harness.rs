use std::collections::BTreeMap;
use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use starkc_core::harness::{
    compile_library, load_journal, run_prover, run_suite, write_report, Format, Manifest, ProverConfig,
    ProverId, Status, SuiteEntry,
};

fn corpus(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(file)
}

fn script(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, format!("#!/bin/sh\n{body}")).unwrap();
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    path
}

/// Proves a file once the timeout reaches `$MIN`, logging each call.
fn threshold_prover(dir: &Path, name: &str, min: u64) -> ProverConfig {
    let log = dir.join(format!("{name}.log"));
    let body = format!(
        "echo \"$1 $(basename $2)\" >> '{}'\n\
         if [ \"$1\" -ge {min} ]; then echo '% SZS status Theorem'; else echo '% SZS status GaveUp'; fi\n",
        log.display()
    );
    let exe = script(dir, name, &body);
    ProverConfig::new(ProverId::Custom(name.into()), exe, "$TO $FILE").unwrap()
}

fn calls(dir: &Path, name: &str) -> Vec<String> {
    std::fs::read_to_string(dir.join(format!("{name}.log")))
        .unwrap_or_default()
        .lines()
        .map(str::to_string)
        .collect()
}

fn compiled_add(out: &Path) -> Vec<SuiteEntry> {
    compile_library(&corpus("add.pl"), &corpus("add.pr"), out, &BTreeMap::new()).unwrap();
    Manifest::load(out).unwrap().suite_entries(out)
}

#[test]
fn compile_writes_files_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let entry = compile_library(&corpus("add.pl"), &corpus("add.pr"), dir.path(), &BTreeMap::new()).unwrap();
    assert_eq!(entry.lib, "add");
    let files: Vec<&str> = entry.obligations.iter().map(|o| o.file.as_str()).collect();
    assert_eq!(
        files,
        [
            "add__001__add_x_0_x.p",
            "add__002__add_succ.p",
            "add__003__add_commutative.p",
            "add__004__add_term_1.p",
            "add__005__add_term_3.p",
            "add__006__add_term.p",
        ]
    );
    let induction: Vec<bool> = entry.obligations.iter().map(|o| o.induction).collect();
    assert_eq!(induction, [true, true, true, true, true, false]);
    for f in files {
        let text = std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert!(starkc_core::tptp::validate_fof(&text).is_empty(), "{f}");
    }
    let manifest = Manifest::load(dir.path()).unwrap();
    assert_eq!(manifest.libraries, vec![entry]);
}

#[test]
fn recompiling_removes_stale_files() {
    let dir = tempfile::tempdir().unwrap();
    compiled_add(dir.path());
    let facts = dir.path().join("add.pr");
    std::fs::write(
        &facts,
        ":- lemma(add:only, all [x]: succeeds nat(?x) => gr(?x), []).\n",
    )
    .unwrap();
    compile_library(&corpus("add.pl"), &facts, dir.path(), &BTreeMap::new()).unwrap();
    let mut left: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".p"))
        .collect();
    left.sort();
    assert_eq!(left, ["add__001__add_only.p"]);
}

#[test]
fn induct_on_override_selects_premise() {
    let dir = tempfile::tempdir().unwrap();
    let overrides = BTreeMap::from([("add:commutative".to_string(), 3)]);
    compile_library(&corpus("add.pl"), &corpus("add.pr"), dir.path(), &overrides).unwrap();
    let text = std::fs::read_to_string(dir.path().join("add__003__add_commutative.p")).unwrap();
    let induction = text.lines().find(|l| l.starts_with("fof(induction")).unwrap();
    // Inducting on add(x,y,z) puts add_succeeds in the consequent's premise.
    assert!(
        induction.contains("=> ! [Xx,Xy,Xz] : (add_succeeds(Xx,Xy,Xz) =>"),
        "{induction}"
    );
    let bad = BTreeMap::from([("add:commutative".to_string(), 9)]);
    let entry = compile_library(&corpus("add.pl"), &corpus("add.pr"), dir.path(), &bad).unwrap();
    assert!(!entry.obligations[2].induction);
}

#[test]
fn proofs_carry_over_to_larger_timeouts() {
    let dir = tempfile::tempdir().unwrap();
    let entries = compiled_add(&dir.path().join("out"));
    let p = threshold_prover(dir.path(), "two", 2);
    let report = run_suite(&entries, &[p], &[3, 1, 2], 2, None).unwrap();
    let log = calls(dir.path(), "two");
    // Timeouts 1 and 2 run, 3 is inferred.
    assert_eq!(log.len(), 12);
    assert!(log.iter().all(|l| !l.starts_with("3 ")));
    assert_eq!(report.timeouts, [1, 2, 3]);
    assert!(report
        .cells
        .iter()
        .all(|c| (c.timeout >= 2) == (c.status == Status::Proved)));
    assert_eq!(
        write_report(&report, Format::Csv),
        "lib,#,two-1s,two-2s,two-3s\nadd,6,0%,100%,100%\n"
    );
}

#[test]
fn journal_resumes_without_rerunning() {
    let dir = tempfile::tempdir().unwrap();
    let entries = compiled_add(&dir.path().join("out"));
    let journal = dir.path().join("results.jsonl");
    let p = threshold_prover(dir.path(), "two", 2);
    let first = run_suite(&entries, std::slice::from_ref(&p), &[1, 2], 3, Some(&journal)).unwrap();
    assert_eq!(calls(dir.path(), "two").len(), 12);
    assert_eq!(load_journal(&journal).unwrap().len(), 12);

    let again = run_suite(&entries, std::slice::from_ref(&p), &[1, 2], 3, Some(&journal)).unwrap();
    assert_eq!(calls(dir.path(), "two").len(), 12);
    assert_eq!(again, first);

    // Editing one obligation invalidates only its cells.
    let edited = &entries[4].file;
    let mut text = std::fs::read_to_string(edited).unwrap();
    text.push_str("% edited\n");
    std::fs::write(edited, text).unwrap();
    run_suite(&entries, std::slice::from_ref(&p), &[1, 2], 3, Some(&journal)).unwrap();
    let log = calls(dir.path(), "two");
    assert_eq!(log.len(), 14);
    assert!(log[12..].iter().all(|l| l.ends_with("add__005__add_term_3.p")));
}

#[test]
fn torn_journal_tail_is_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let entries = compiled_add(&dir.path().join("out"));
    let journal = dir.path().join("results.jsonl");
    let p = threshold_prover(dir.path(), "one", 1);
    let first = run_suite(&entries, std::slice::from_ref(&p), &[1], 1, Some(&journal)).unwrap();
    let text = std::fs::read_to_string(&journal).unwrap();
    let cut = text.trim_end().rfind('\n').unwrap() + 10;
    std::fs::write(&journal, &text[..cut]).unwrap();
    let again = run_suite(&entries, std::slice::from_ref(&p), &[1], 1, Some(&journal)).unwrap();
    assert_eq!(calls(dir.path(), "one").len(), 7);
    assert_eq!(again, first);
    assert_eq!(load_journal(&journal).unwrap().len(), 6);
}

#[test]
fn per_prover_parallelism_is_bounded() {
    let dir = tempfile::tempdir().unwrap();
    let entries = compiled_add(&dir.path().join("out"));
    let running = dir.path().join("running");
    std::fs::create_dir(&running).unwrap();
    let log = dir.path().join("peak.log");
    let body = format!(
        "touch '{r}/'$$\nsleep 0.1\nls '{r}' | wc -l >> '{l}'\nrm '{r}/'$$\necho '% SZS status Theorem'\n",
        r = running.display(),
        l = log.display()
    );
    let exe = script(dir.path(), "slow", &body);
    let mut p = ProverConfig::new(ProverId::Custom("slow".into()), exe, "$TO $FILE").unwrap();
    p.max_parallel = Some(2);
    run_suite(&entries, &[p], &[1], 6, None).unwrap();
    let peaks: Vec<usize> = std::fs::read_to_string(&log)
        .unwrap()
        .lines()
        .map(|l| l.trim().parse().unwrap())
        .collect();
    assert_eq!(peaks.len(), 6);
    assert!(peaks.iter().all(|&n| n <= 2), "{peaks:?}");
}

fn alive(pid: &str) -> bool {
    match std::fs::read_to_string(format!("/proc/{pid}/stat")) {
        Ok(stat) => !stat.split_whitespace().nth(2).is_some_and(|s| s == "Z"),
        Err(_) => false,
    }
}

#[test]
fn overrunning_prover_is_killed_with_its_children() {
    let dir = tempfile::tempdir().unwrap();
    let pidfile = dir.path().join("child.pid");
    let body = format!("sleep 30 &\necho $! > '{}'\nwait\n", pidfile.display());
    let exe = script(dir.path(), "hang", &body);
    let p = ProverConfig::new(ProverId::Custom("hang".into()), exe, "$TO $FILE").unwrap();
    let file = dir.path().join("a.p");
    std::fs::write(&file, "fof(a,conjecture,$true).\n").unwrap();
    let out = run_prover(&p, &file, 1);
    assert_eq!(out.status, Status::Timeout);
    assert!(out.wall_time < 10.0, "{}", out.wall_time);
    let pid = std::fs::read_to_string(&pidfile).unwrap();
    let pid = pid.trim();
    let deadline = std::time::Instant::now() + Duration::from_secs(5);
    while alive(pid) && std::time::Instant::now() < deadline {
        std::thread::sleep(Duration::from_millis(50));
    }
    assert!(!alive(pid), "grandchild {pid} survived");
}

#[test]
fn exit_status_without_szs_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a.p");
    std::fs::write(&file, "fof(a,conjecture,$true).\n").unwrap();
    let crash = script(dir.path(), "crash", "echo boom >&2\nexit 3\n");
    let p = ProverConfig::new(ProverId::Custom("crash".into()), crash, "$FILE").unwrap();
    let out = run_prover(&p, &file, 1);
    assert_eq!(out.status, Status::Error);
    assert!(out.szs.contains("boom"), "{}", out.szs);
    let quiet = script(dir.path(), "quiet", "exit 0\n");
    let p = ProverConfig::new(ProverId::Custom("quiet".into()), quiet, "$FILE").unwrap();
    assert_eq!(run_prover(&p, &file, 1).status, Status::Unknown);
    let sat = script(dir.path(), "sat", "echo '% SZS status CounterSatisfiable'\n");
    let p = ProverConfig::new(ProverId::Custom("sat".into()), sat, "$FILE").unwrap();
    assert_eq!(run_prover(&p, &file, 1).status, Status::Disproved);
}
