mod common;

use std::path::Path;

use common::{compile_corpus, corpus, install_fake_provers, prove_command, run, starkc};

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compile_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(starkc()
        .args(["compile", "--program"])
        .arg(corpus().join("add.pl"))
        .arg("--facts")
        .arg(corpus().join("add.pr"))
        .arg("--out")
        .arg(&out));
    assert_eq!(o.status.code(), Some(0));
    let listed = stdout(&o);
    assert_eq!(listed.lines().count(), 6);
    assert!(listed
        .lines()
        .last()
        .unwrap()
        .ends_with("add__006__add_term.p  (no induction axiom)"));
    assert!(out.join("manifest.json").is_file());

    let o = run(starkc().arg("check").arg("--out").arg(&out));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6 files checked, 0 with problems\n");

    std::fs::write(out.join("add__002__add_succ.p"), "fof(a,axiom,p(X)).\n").unwrap();
    let o = run(starkc().arg("check").arg("--out").arg(&out));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("add__002__add_succ.p:1:"), "{}", stdout(&o));
}

#[test]
fn compile_reports_read_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pl");
    std::fs::write(&bad, "nat(0).\nnat(s(X) :- nat(X).\n").unwrap();
    let o = run(starkc()
        .args(["compile", "--program"])
        .arg(&bad)
        .arg("--facts")
        .arg(corpus().join("add.pr"))
        .arg("--out")
        .arg(dir.path().join("out")));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.pl:2:"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(starkc().args(["prove", "--out"]).arg(&out));
    assert_eq!(o.status.code(), Some(2), "nothing compiled");
    compile_corpus(&out, &["add"]);
    let o = run(starkc().args(["prove", "--provers", "z3", "--out"]).arg(&out));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown prover `z3`"));
    let o = run(starkc()
        .args(["prove", "--induct-on", "add:succ", "--out"])
        .arg(&out));
    assert_eq!(o.status.code(), Some(2));
    let o = run(starkc()
        .args(["prove", "--induct-on", "nope=1", "--provers", "", "--out"])
        .arg(&out));
    assert_eq!(o.status.code(), Some(2));
    let o = run(starkc()
        .args(["prove", "--prover-cmd", "x=cat", "--provers", "x", "--out"])
        .arg(&out));
    assert_eq!(o.status.code(), Some(2), "template without $FILE");
    let o = run(starkc().arg("frobnicate"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compile_only_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    compile_corpus(&out, &["add", "list"]);
    let o = run(starkc().args(["prove", "--provers", "", "--out"]).arg(&out));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lib,#\nadd,6\nlist,3\n");
}

#[test]
fn prove_exit_codes_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let fakes = install_fake_provers(dir.path());
    let out = dir.path().join("out");
    compile_corpus(&out, &["list"]);

    // Vampire proves all of `list` by 10s.
    let report = dir.path().join("table.md");
    let o = run(prove_command(&out, &fakes)
        .args([
            "--provers",
            "vampire",
            "--timeouts",
            "1,10",
            "--jobs",
            "2",
            "--report",
        ])
        .arg(&report));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        std::fs::read_to_string(&report).unwrap(),
        "| lib | # | V-1s | V-10s |\n| --- | ---: | ---: | ---: |\n| list | 3 | 33% | 100% |\n"
    );

    let o = run(prove_command(&out, &fakes).args(["--provers", "eprover,vampire", "--timeouts", "1"]));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "lib,#,E-1s,V-1s,EV-1s\nlist,3,33%,33%,67%\n");
}

#[test]
fn custom_prover_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    compile_corpus(&out, &["add"]);
    let exe = dir.path().join("yes.sh");
    std::fs::write(&exe, "#!/bin/sh\necho \"% SZS status Theorem for $2\"\n").unwrap();
    let cmd = format!("yes=sh {} $TO $FILE", exe.display());
    let o = run(starkc()
        .args([
            "prove",
            "--provers",
            "yes",
            "--prover-cmd",
            &cmd,
            "--timeouts",
            "5",
            "--out",
        ])
        .arg(&out));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "lib,#,yes-5s\nadd,6,100%\n");
}

#[test]
fn induct_on_recompiles_the_owning_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    compile_corpus(&out, &["add", "list"]);
    let file = out.join("add__003__add_commutative.p");
    let before = std::fs::read_to_string(&file).unwrap();
    let list_before = std::fs::read(out.join("list__001__app_nil.p")).unwrap();
    let o = run(starkc()
        .args([
            "prove",
            "--provers",
            "",
            "--induct-on",
            "add:commutative=3",
            "--out",
        ])
        .arg(&out));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let after = std::fs::read_to_string(&file).unwrap();
    assert_ne!(before, after);
    assert!(after.contains("=> ! [Xx,Xy,Xz] : (add_succeeds(Xx,Xy,Xz) =>"));
    assert_eq!(
        std::fs::read(out.join("list__001__app_nil.p")).unwrap(),
        list_before
    );
    let manifest = std::fs::read_to_string(out.join("manifest.json")).unwrap();
    assert!(manifest.contains("\"add:commutative\": 3"), "{manifest}");
}

fn solve(goal: &str, depth: &str) -> (Option<i32>, String) {
    let o = run(starkc()
        .args(["solve", "--program"])
        .arg(corpus().join("add.pl"))
        .args(["--goal", goal, "--depth", depth]));
    (o.status.code(), stdout(&o))
}

#[test]
fn solve_verdicts() {
    let (code, out) = solve("add(s(0),0,s(0))", "10");
    assert_eq!(code, Some(0));
    assert!(out.starts_with("succeeds"), "{out}");
    assert!(solve("add(0,0,s(0))", "10").1.starts_with("fails"));
    assert!(solve("nat(X)", "0").1.starts_with("depth exceeded"));
    assert!(solve("true", "1").1.starts_with("succeeds"));
    let (code, _) = solve("\\+ nat(X)", "5");
    assert_eq!(code, Some(2), "unsafe negation");
}

#[test]
fn missing_prover_is_an_error_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    compile_corpus(&out, &["list"]);
    let missing = Path::new("/nonexistent/eprover");
    let o = run(starkc()
        .args(["prove", "--provers", "eprover", "--timeouts", "1", "--out"])
        .arg(&out)
        .env("STARKC_EPROVER", missing));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "lib,#,E-1s\nlist,3,0%\n");
    let journal = std::fs::read_to_string(out.join("results.jsonl")).unwrap();
    assert_eq!(journal.lines().count(), 3);
    assert!(journal.lines().all(|l| l.contains("\"status\":\"error\"")));
}

#[test]
fn errors_are_retried_on_resume() {
    let dir = tempfile::tempdir().unwrap();
    let fakes = install_fake_provers(dir.path());
    let out = dir.path().join("out");
    compile_corpus(&out, &["list"]);
    let o = run(starkc()
        .args(["prove", "--provers", "vampire", "--timeouts", "10", "--out"])
        .arg(&out)
        .env("STARKC_VAMPIRE", "/nonexistent/vampire"));
    assert_eq!(stdout(&o), "lib,#,V-10s\nlist,3,0%\n");
    let o = run(prove_command(&out, &fakes).args(["--provers", "vampire", "--timeouts", "10"]));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lib,#,V-10s\nlist,3,100%\n");
}
