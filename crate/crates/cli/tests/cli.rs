use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file).to_str().unwrap().to_owned()
}

fn fixture(name: &str, src: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, src).unwrap();
    path.to_str().unwrap().to_owned()
}

fn tvec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvec")).args(args).env_remove("TVEC_FUEL").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

#[test]
fn corpus_files_check() {
    for file in ["vec.tvec", "quodlibet.tvec"] {
        let out = tvec(&["check", &corpus(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn failed_join_exits_one_with_a_diagnostic() {
    let bad = fixture("bad.tvec", "def bad : zero = S zero = join zero (S zero)\n");
    let out = tvec(&["check", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("join"), "{stderr}");
}

#[test]
fn missing_file_and_parse_error_exit_two() {
    assert_eq!(tvec(&["check", "missing.tvec"]).status.code(), Some(2));
    let broken = fixture("broken.tvec", "def x : Nat = (S\n");
    assert_eq!(tvec(&["check", &broken]).status.code(), Some(2));
    assert_eq!(tvec(&["check"]).status.code(), Some(2));
}

#[test]
fn json_is_well_formed_on_every_path() {
    let bad = fixture("bad_json.tvec", "def ok : Nat = 0\ndef bad : zero = S zero = join zero (S zero)\n");
    let broken = fixture("broken_json.tvec", "def = =");
    let report = json(&tvec(&["check", "--json", &bad]));
    assert_eq!(report["defs"][0]["status"], "ok");
    assert_eq!(report["defs"][0]["type"], "Nat");
    assert_eq!(report["defs"][1]["status"], "error");
    assert!(report["defs"][1]["diagnostic"]["message"].is_string());
    assert_eq!(report["fuel"], 100000);
    assert!(json(&tvec(&["check", "--json", &broken]))["error"].is_object());
    assert!(json(&tvec(&["check", "--json", "missing.tvec"]))["error"].is_string());
    assert!(json(&tvec(&["eval", "--json", &corpus("vec.tvec"), "nope"]))["error"].is_string());
}

#[test]
fn diagnostic_spans_lie_within_the_input() {
    let src = "def ok : Nat = 0\ndef bad : zero = S zero = join zero (S zero)\n";
    let report = json(&tvec(&["check", "--json", &fixture("spans.tvec", src)]));
    let span = &report["defs"][1]["diagnostic"]["span"];
    let (start, end) = (span["start"].as_u64().unwrap(), span["end"].as_u64().unwrap());
    assert!(start <= end && end as usize <= src.len(), "{span}");
}

#[test]
fn eval_reports_outcomes() {
    let out = tvec(&["eval", &corpus("vec.tvec"), "four", "--strategy", "full"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("NormalForm(4)"), "{}", stdout(&out));

    let out = tvec(&["eval", &corpus("quodlibet.tvec"), "stuckApp"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("Stuck(0 0)"));
    assert!(stdout(&out).contains("non-empty context"));

    let report = json(&tvec(&["eval", "--json", &corpus("vec.tvec"), "appendDemo"]));
    assert_eq!(report["outcome"], "Value");
    assert_eq!(report["term"], "cons 1 (cons 2 (cons 3 (cons 4 (cons 5 nil))))");
}

#[test]
fn eval_trace_prints_each_step() {
    let out = tvec(&["eval", &corpus("vec.tvec"), "four", "--trace"]);
    let steps = stdout(&out).lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).count();
    let report = json(&tvec(&["eval", "--json", &corpus("vec.tvec"), "four"]));
    assert_eq!(steps as u64, report["steps"].as_u64().unwrap());
}

#[test]
fn fuel_exhaustion_exits_one() {
    // No joins, so checking needs no fuel; evaluation needs plenty.
    let slow = fixture("slow.tvec", "def big : Nat = rnat [x. Nat] 0 (fun y : Nat => fun u : Nat => S u) 20\n");
    let out = tvec(&["eval", "--fuel", "3", &slow, "big"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FuelExhausted"), "{}", stdout(&out));
    let out =
        Command::new(env!("CARGO_BIN_EXE_tvec")).args(["eval", &slow, "big"]).env("TVEC_FUEL", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn erase_drops_annotations() {
    let out = tvec(&["erase", &corpus("vec.tvec"), "append"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("cast") && !text.contains("ifun") && !text.contains(':'), "{text}");
    let cast = fixture("cast.tvec", "def c : Nat = cast [x. Nat] (join 0 0) (S 0)\n");
    assert_eq!(stdout(&tvec(&["erase", &cast, "c"])).trim(), "1");
}

#[test]
fn mode_override_applies() {
    let out = tvec(&["check", "--mode", "base", &corpus("quodlibet.tvec")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(tvec(&["check", "--mode", "nonsense", &corpus("vec.tvec")]).status.code(), Some(2));
}

#[test]
fn selftest_fails_when_a_rule_is_never_exercised() {
    // Size 4 is too small to reach the recursors or cast.
    let out = tvec(&["selftest", "--size", "4", "--mode", "base", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["passed"], false);
    let suite = &report["suites"][0];
    assert!(suite["properties"].as_array().unwrap().iter().all(|p| p["failed"] == 0));
    assert_eq!(suite["rule_hits"]["rnat"], 0);
}

#[test]
fn selftest_base_mode_passes_at_size_six() {
    let out = tvec(&["selftest", "--size", "6", "--mode", "base"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("selftest passed\n"));
}
