use std::path::PathBuf;
use std::process::{Command, Output};

fn proofs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/proofs")
}

fn proof(name: &str) -> String {
    proofs().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sweedler"))
        .args(args)
        .env_remove("SWEEDLER_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn check_reports_conclusion_or_violation() {
    let ok = run(&["check", &proof("church-2.sexp")]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok), "ok: !(A ⊸ A) ⊢ (A ⊸ A)\n");

    let dir = std::env::temp_dir().join(format!("sweedler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("prom.sexp");
    std::fs::write(&bad, "(prom (axiom (pvar A 2)))").unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("`prom`"), "{}", stdout(&out));

    let unclosed = dir.join("unclosed.sexp");
    std::fs::write(&unclosed, "(lolli-r\n  (axiom (pvar A 2))").unwrap();
    let out = run(&["check", unclosed.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unclosed.sexp:1:1"));

    assert_eq!(code(&run(&["check", "/nonexistent/proof.sexp"])), 2);
}

#[test]
fn eval_church_numeral_on_shear() {
    let out = run(&[
        "eval",
        &proof("church-2.sexp"),
        "--input",
        r#"[[{"point": [[1,1],[0,1]]}]]"#,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[[\"1\",\"2\"],[\"0\",\"1\"]]\n");

    let wrong = run(&[
        "eval",
        &proof("church-2.sexp"),
        "--input",
        r#"[[{"point": [[1,1],[0,1]]}]]"#,
        "--expect",
        "[[1,3],[0,1]]",
    ]);
    assert_eq!(code(&wrong), 1);
    assert!(stdout(&wrong).contains("differs from expected"));
}

#[test]
fn eval_binary_integer_with_arguments() {
    // β∘γ∘γ with γ = [[1,1],[0,1]], β = [[0,0],[1,5]]
    let out = run(&[
        "eval",
        &proof("bint-001.sexp"),
        "--input",
        r#"[[{"point": [[1,1],[0,1]]}], [{"point": [[0,1],[1,0]], "tangents": [[[0,0],[1,5]]]}]]"#,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[[\"0\",\"0\"],[\"1\",\"7\"]]\n");
}

#[test]
fn eval_names_the_expected_space() {
    let out = run(&[
        "eval",
        &proof("church-2.sexp"),
        "--input",
        r#"[{"proof": "church-full:2"}]"#,
    ]);
    assert_eq!(code(&out), 1);
    assert!(
        stdout(&out).contains("expected a value of !Hom(k^2, k^2)"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn derive_repeat_matches_sum_of_concatenations() {
    let out = run(&[
        "derive",
        &proof("repeat.sexp"),
        "--point",
        r#"{"proof": "bint:01"}"#,
        "--tangent",
        r#"{"proof": "bint:1"}"#,
        "--expect",
        r#"{"sum": [{"proof": "bint:011"}, {"proof": "bint:101"}]}"#,
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["matches"], true);
}

#[test]
fn derive_church_numeral() {
    let out = run(&[
        "derive",
        &proof("church-2.sexp"),
        "--point",
        "[[1,1],[0,1]]",
        "--tangent",
        "[[0,0],[1,0]]",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[[\"1\",\"0\"],[\"2\",\"1\"]]\n");
    let closed = run(&["derive", &proof("bint-01.sexp"), "--point", "[]", "--tangent", "[]"]);
    assert_eq!(code(&closed), 1);
}

#[test]
fn axioms_pass_and_mutant_is_caught() {
    let out = run(&["axioms", "--law", "deriving", "--trials", "50"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("4 laws, 4 passed, 0 failed"));

    let out = run(&[
        "axioms",
        "--law",
        "deriving",
        "--trials",
        "50",
        "--mutate",
        "append-negated",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL d4-chain-rule"), "{text}");
    assert!(text.contains("input: dim="), "{text}");

    assert_eq!(code(&run(&["axioms", "--mutate", "nope"])), 2);
    assert_eq!(code(&run(&["axioms", "--law", "nope"])), 2);
}

#[test]
fn output_is_deterministic_and_seed_env_wins() {
    let args = [
        "axioms", "--law", "hopf", "--trials", "20", "--format", "json", "--seed", "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["seed"], 7);

    let env = Command::new(env!("CARGO_BIN_EXE_sweedler"))
        .args(args)
        .env("SWEEDLER_SEED", "5")
        .output()
        .unwrap();
    let direct = run(&[
        "axioms", "--law", "hopf", "--trials", "20", "--format", "json", "--seed", "5",
    ]);
    assert_eq!(env.stdout, direct.stdout);
}

#[test]
fn examples_reproduce() {
    let out = run(&["examples"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("OK  ").count(), 6);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["eval", &proof("church-2.sexp"), "--input", "not json"])), 2);
}
