#![allow(dead_code)]

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starkc_core::{Atom, Clause, Fact, FactKind, Formula, Goal, Mode, Program, Term};

pub fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn starkc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_starkc"))
}

pub fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("starkc runs")
}

pub fn compile_corpus(out: &Path, libs: &[&str]) {
    for lib in libs {
        let dir = corpus();
        let o = run(starkc()
            .arg("compile")
            .arg("--program")
            .arg(dir.join(format!("{lib}.pl")))
            .arg("--facts")
            .arg(dir.join(format!("{lib}.pr")))
            .arg("--out")
            .arg(out));
        assert!(
            o.status.success(),
            "compile {lib}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

/// Which fake-prover runs succeed, keyed on prover name, file name and
/// timeout. Mirrors the `case` table in [`FAKE_PROVER`].
pub fn fake_proves(prover: &str, file: &str, timeout: u64) -> bool {
    match prover {
        "eprover" => {
            file.contains("term") && !file.ends_with("add__006__add_term.p")
                || file.contains("x_0_x") && timeout >= 10
        }
        "vampire" => {
            if file.ends_with("add__006__add_term.p") || file.contains("even_s") {
                false
            } else if file.contains("x_0_x") || file.contains("nil") {
                true
            } else {
                timeout >= 10
            }
        }
        _ => false,
    }
}

/// A stand-in for E and Vampire. Reads the timeout from `--cpu-limit=N`
/// or `-t N`, logs each call to `$FAKE_LOG`, sleeps `$FAKE_SLEEP`, and
/// answers per [`fake_proves`].
pub const FAKE_PROVER: &str = r#"#!/bin/sh
name="$1"; shift
to=""; file=""; prev=""
for a in "$@"; do
  case "$a" in --cpu-limit=*) to="${a#--cpu-limit=}" ;; esac
  if [ "$prev" = "-t" ]; then to="$a"; fi
  prev="$a"; file="$a"
done
base=$(basename "$file")
if [ -n "$FAKE_LOG" ]; then echo "$name $to $base" >> "$FAKE_LOG"; fi
if [ -n "$FAKE_SLEEP" ]; then sleep "$FAKE_SLEEP"; fi
ok=no
case "$name" in
  eprover)
    case "$base" in
      add__006__add_term.p) ;;
      *term*) ok=yes ;;
      *x_0_x*) if [ "$to" -ge 10 ]; then ok=yes; fi ;;
    esac ;;
  vampire)
    case "$base" in
      add__006__add_term.p|*even_s*) ;;
      *x_0_x*|*nil*) ok=yes ;;
      *) if [ "$to" -ge 10 ]; then ok=yes; fi ;;
    esac ;;
esac
if [ "$ok" = yes ]; then
  echo "% SZS status Theorem for $base"
else
  echo "% SZS status Timeout for $base"
fi
"#;

/// Writes `eprover` and `vampire` wrapper scripts into `dir` and returns
/// their paths.
pub fn install_fake_provers(dir: &Path) -> (PathBuf, PathBuf) {
    use std::os::unix::fs::PermissionsExt;
    let core = dir.join("fake-prover.sh");
    std::fs::write(&core, FAKE_PROVER).unwrap();
    let mut paths = Vec::new();
    for name in ["eprover", "vampire"] {
        let path = dir.join(name);
        std::fs::write(
            &path,
            format!("#!/bin/sh\nexec sh '{}' {name} \"$@\"\n", core.display()),
        )
        .unwrap();
        paths.push(path);
    }
    for p in paths.iter().chain([&core]) {
        std::fs::set_permissions(p, std::fs::Permissions::from_mode(0o755)).unwrap();
    }
    (paths[0].clone(), paths[1].clone())
}

pub fn prove_command(out: &Path, fakes: &(PathBuf, PathBuf)) -> Command {
    let mut cmd = starkc();
    cmd.arg("prove")
        .arg("--out")
        .arg(out)
        .env("STARKC_EPROVER", &fakes.0)
        .env("STARKC_VAMPIRE", &fakes.1)
        .env_remove("FAKE_LOG")
        .env_remove("FAKE_SLEEP");
    cmd
}

/// Random syntax over small signatures.
pub struct Gen {
    pub rng: ChaCha8Rng,
}

pub type Sig = Vec<(String, usize)>;

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.random_range(0..items.len())]
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// A signature drawn from `pool` with at least one constant.
    pub fn signature(&mut self, pool: &[&str], max: usize) -> Sig {
        let n = self.rng.random_range(1..=max);
        let mut sig: Sig = vec![(self.pick(pool).to_string(), 0)];
        for _ in 1..n {
            let name = self.pick(pool).to_string();
            let arity = self.rng.random_range(0..=2);
            if !sig.contains(&(name.clone(), arity)) {
                sig.push((name, arity));
            }
        }
        sig
    }

    pub fn term(&mut self, sig: &Sig, vars: &[String], depth: usize) -> Term {
        if !vars.is_empty() && self.chance(0.4) {
            return Term::var(self.pick(vars).clone());
        }
        let (name, arity) = if depth == 0 {
            let constants: Vec<_> = sig.iter().filter(|(_, a)| *a == 0).cloned().collect();
            self.pick(&constants).clone()
        } else {
            self.pick(sig).clone()
        };
        let args = (0..arity)
            .map(|_| self.term(sig, vars, depth.saturating_sub(1)))
            .collect();
        Term::app(name, args)
    }

    fn atom(&mut self, preds: &Sig, sig: &Sig, vars: &[String]) -> Atom {
        let (name, arity) = self.pick(preds).clone();
        Atom::new(name, (0..arity).map(|_| self.term(sig, vars, 2)).collect())
    }

    /// A goal with at most `size` nodes.
    pub fn goal(&mut self, size: usize, preds: &Sig, sig: &Sig, vars: &[String]) -> Goal {
        if size <= 2 || self.chance(0.25) {
            return match self.rng.random_range(0..8) {
                0 => Goal::True,
                1 => Goal::Fail,
                2 | 3 => Goal::eq(self.term(sig, vars, 2), self.term(sig, vars, 2)),
                _ => Goal::Atom(self.atom(preds, sig, vars)),
            };
        }
        match self.rng.random_range(0..4) {
            0 => Goal::naf(self.goal(size - 1, preds, sig, vars)),
            1 | 2 => {
                let left = self.rng.random_range(1..size - 1).max(1);
                let l = self.goal(left, preds, sig, vars);
                let r = self.goal((size - 1 - left).max(1), preds, sig, vars);
                if self.chance(0.5) {
                    Goal::and(l, r)
                } else {
                    Goal::or(l, r)
                }
            }
            _ => {
                let v = format!("V{}", self.rng.random_range(0..3));
                let mut inner = vars.to_vec();
                inner.push(v.clone());
                Goal::some(v, self.goal(size - 1, preds, sig, &inner))
            }
        }
    }

    /// A formula with at most `size` nodes, over every connective.
    pub fn formula(&mut self, size: usize, preds: &Sig, sig: &Sig, vars: &[String]) -> Formula {
        if size <= 2 || self.chance(0.2) {
            return match self.rng.random_range(0..10) {
                0 => Formula::Top,
                1 => Formula::Bot,
                2 | 3 => Formula::Eq(self.term(sig, vars, 1), self.term(sig, vars, 1)),
                4 => Formula::Gr(self.term(sig, vars, 1)),
                _ => {
                    let mode = *self.pick(&Mode::ALL);
                    Formula::pred(mode, self.atom(preds, sig, vars))
                }
            };
        }
        match self.rng.random_range(0..7) {
            0 => Formula::not(self.formula(size - 1, preds, sig, vars)),
            1..=4 => {
                let left = self.rng.random_range(1..size - 1).max(1);
                let l = self.formula(left, preds, sig, vars);
                let r = self.formula((size - 1 - left).max(1), preds, sig, vars);
                match self.rng.random_range(0..4) {
                    0 => Formula::and(l, r),
                    1 => Formula::or(l, r),
                    2 => Formula::implies(l, r),
                    _ => Formula::iff(l, r),
                }
            }
            k => {
                let v = format!("v{}", self.rng.random_range(0..3));
                let mut inner = vars.to_vec();
                inner.push(v.clone());
                let body = self.formula(size - 1, preds, sig, &inner);
                if k == 5 {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
        }
    }

    /// Clauses for `preds` over `sig`; every predicate called in a body is
    /// one of `preds`.
    pub fn program(&mut self, preds: &Sig, sig: &Sig, max_clauses: usize, body_size: usize) -> Program {
        let n = self.rng.random_range(1..=max_clauses);
        let vars: Vec<String> = ["X", "Y", "Z"].iter().map(|s| s.to_string()).collect();
        let clauses = (0..n)
            .map(|_| {
                let head = self.atom(preds, sig, &vars);
                let body = if self.chance(0.3) {
                    Goal::True
                } else {
                    self.goal(body_size, preds, sig, &vars)
                };
                Clause::new(head, body)
            })
            .collect();
        Program::new(clauses)
    }

    pub fn facts(&mut self, program: &Program, sig: &Sig, n: usize) -> Vec<Fact> {
        let preds: Sig = program
            .predicates
            .iter()
            .map(|p| (p.name.clone(), p.arity))
            .collect();
        let vars: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        (0..n)
            .map(|i| {
                let kind = *self.pick(&[FactKind::Lemma, FactKind::Theorem, FactKind::Corollary]);
                let body = if self.chance(0.5) {
                    // The inductive shape: premises over distinct variables.
                    let (name, arity) = self.pick(&preds).clone();
                    let args: Vec<Term> = (0..arity).map(|k| Term::var(format!("a{k}"))).collect();
                    let premise = Formula::succeeds(name, args);
                    Formula::implies(premise, self.formula(6, &preds, sig, &vars))
                } else {
                    self.formula(8, &preds, sig, &vars)
                };
                Fact::new(kind, format!("g:f{i}"), body.universal_closure())
            })
            .collect()
    }
}

/// Propositional value of `f` with every atomic formula looked up in
/// `assignment` (keyed by its debug form); quantifiers are transparent.
pub fn eval_bool(f: &Formula, assignment: &mut HashMap<String, bool>, rng: &mut ChaCha8Rng) -> bool {
    use Formula::*;
    match f {
        Top => true,
        Bot => false,
        Eq(..) | Pred(..) | Gr(_) => {
            let key = format!("{f:?}");
            *assignment.entry(key).or_insert_with(|| rng.random_bool(0.5))
        }
        Not(g) => !eval_bool(g, assignment, rng),
        And(l, r) => {
            let a = eval_bool(l, assignment, rng);
            let b = eval_bool(r, assignment, rng);
            a && b
        }
        Or(l, r) => {
            let a = eval_bool(l, assignment, rng);
            let b = eval_bool(r, assignment, rng);
            a || b
        }
        Implies(l, r) => {
            let a = eval_bool(l, assignment, rng);
            let b = eval_bool(r, assignment, rng);
            !a || b
        }
        Iff(l, r) => eval_bool(l, assignment, rng) == eval_bool(r, assignment, rng),
        Forall(_, b) | Exists(_, b) => eval_bool(b, assignment, rng),
    }
}
