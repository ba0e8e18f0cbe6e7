//! End-to-end runs of the `ambigame` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambigame"))
        .args(args)
        .env_remove("AMBIGAME_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ambigame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_reports_no_pure_lexne() {
    let out = run(&["solve", &fixture("no-lexne.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["count"], 0);
    assert_eq!(r["results"]["profiles_checked"], "8");
    assert!(r.get("elapsed_ms").is_none());
}

#[test]
fn mixed_lexne_search_is_refused() {
    let out = run(&["solve", &fixture("alice-bob.json"), "--strategies", "mixed"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verification only"));
}

#[test]
fn mixed_minne_search_finds_a_profile() {
    let out = run(&[
        "solve",
        &fixture("alice-bob.json"),
        "--strategies",
        "mixed",
        "--concept",
        "minne",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["found"], true);
}

#[test]
fn verify_names_the_deviating_row_type() {
    let game = fixture("no-lexne.json");
    let profile = fixture("no-lexne-profile.json");
    let out = run(&["verify", &game, &profile, "--concept", "lexne"]);
    assert_eq!(out.status.code(), Some(1));
    let w = &json(&out)["results"]["witness"];
    assert_eq!(w["player"], "row");
    assert_eq!(w["deviation"], "B");
    assert_eq!(w["before_best"], "1/3");
    assert_eq!(w["after_best"], "1");

    let out = run(&["verify", &game, &profile, "--concept", "minne"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["verdict"], "equilibrium");
}

#[test]
fn verify_rejects_an_unknown_action() {
    let profile = scratch(
        "bad-profile.json",
        r#"{"row": {"r": "X"}, "col": {"c1": "L", "c2": "R"}}"#,
    );
    let out = run(&["verify", &fixture("no-lexne.json"), &profile]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_game_file_is_an_input_error() {
    let bad = scratch("bad.json", "{");
    assert_eq!(run(&["solve", &bad]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/nonexistent/game.json"]).status.code(), Some(2));
}

#[test]
fn street_game_has_fifteen_location_sets() {
    let out = run(&["coord", "solve", &fixture("street.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["count"], 15);
    assert_eq!(r["results"]["location_sets"].as_array().unwrap().len(), 15);
}

#[test]
fn coordination_file_is_also_accepted_by_verify() {
    let out = run(&[
        "verify",
        &fixture("street.json"),
        &fixture("street-farthest.json"),
        "--concept",
        "minne",
    ]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    assert!(json(&out)["results"]["verdict"].is_string());
}

#[test]
fn euclidean_and_known_peak_sets() {
    let out = run(&["coord", "euclidean", &fixture("euclid.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["count"], 7);
    let out = run(&["coord", "known-peak", &fixture("known-peak.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["count"], 6);
}

#[test]
fn minne_fraction_bound() {
    let out = run(&["coord", "minne-fraction", "--m", "3", "--t", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["bound"], "4/9");
    assert_eq!(
        run(&["coord", "minne-fraction", "--m", "1", "--t", "2", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn trade_cross_validation_exit_codes() {
    let out = run(&["trade", "cross-validate", &fixture("small.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["verdict"], "match");
    let out = run(&["trade", "cross-validate", &fixture("span.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["verdict"], "mismatch");
}

#[test]
fn trade_classify_exit_codes() {
    let span = fixture("span.json");
    let out = run(&["trade", "classify", &span, &fixture("trade-overpay.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["class"]["class"], "not-equilibrium");
    let out = run(&["trade", "solve", &span]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["count"], 17);
}

#[test]
fn axioms_exit_codes() {
    for c in ["min", "lex", "second-worst"] {
        let out = run(&["axioms", "--comparator", c, "--samples", "100"]);
        assert_eq!(out.status.code(), Some(0), "{c}");
    }
    assert_eq!(run(&["axioms", "--comparator", "nope"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let args = ["trade", "cross-validate", &fixture("span.json")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["axioms", "--comparator", "lex", "--samples", "200", "--seed", "9"]);
    let b = run(&["axioms", "--comparator", "lex", "--samples", "200", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_flag_adds_elapsed_time() {
    let out = run(&["--timing", "coord", "solve", &fixture("street.json")]);
    assert!(json(&out)["elapsed_ms"].is_number());
}

#[test]
fn job_count_does_not_change_results() {
    let street = fixture("street.json");
    let base = run(&["coord", "solve", &street]);
    let env = Command::new(env!("CARGO_BIN_EXE_ambigame"))
        .args(["coord", "solve", &street])
        .env("AMBIGAME_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    assert_eq!(base.stdout, env.stdout);
    let three = run(&["--jobs", "3", "solve", &street]);
    let one = run(&["--jobs", "1", "solve", &street]);
    assert_eq!(three.status.code(), Some(0));
    assert_eq!(json(&three)["results"], json(&one)["results"]);
    assert_eq!(json(&three)["results"]["count"], 15);
}
