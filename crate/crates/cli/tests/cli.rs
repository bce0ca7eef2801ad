use std::process::{Command, Output};

use transjective::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transjective"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Report, String) {
    let out = run(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), r, text)
}

#[test]
fn pentagon_swaps_the_cluster() {
    let (code, r, _) = report(&["mutate", "--type", "A2", "1", "2", "1", "2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.details["cluster"], serde_json::json!(["x2", "x1"]));
}

#[test]
fn empty_sequence_gives_initial_seed() {
    let (code, r, _) = report(&["mutate", "--type", "A3"]);
    assert_eq!(code, 0);
    assert_eq!(r.details["cluster"], serde_json::json!(["x1", "x2", "x3"]));
    assert_eq!(
        r.details["matrix"],
        serde_json::json!([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    );
}

#[test]
fn comma_separated_sequence() {
    let (_, a, _) = report(&["mutate", "--type", "A3", "1,2,3"]);
    let (_, b, _) = report(&["mutate", "--type", "A3", "1 2", "3"]);
    assert_eq!(a.details, b.details);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["mutate", "--type", "A2", "7"]).status.code(), Some(2));
    assert_eq!(run(&["mutate", "--type", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["mutate"]).status.code(), Some(2));
    assert_eq!(
        run(&["explore", "--type", "Atilde21"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "theorem1", "--type", "Atilde21"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn quiver_file_input() {
    let path = std::env::temp_dir().join(format!("transjective-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"vertices": 3, "arrows": [[1, 2], [2, 3]]}"#).unwrap();
    let p = path.to_str().unwrap();
    let (code, r, _) = report(&["explore", "--quiver", p]);
    assert_eq!(code, 0);
    assert_eq!(r.counts["clusters"], 14);
    assert_eq!(r.counts["cluster_variables"], 9);
    std::fs::write(&path, r#"{"vertices": 2, "arrows": [[1, 3]]}"#).unwrap();
    assert_eq!(run(&["explore", "--quiver", p]).status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn denominators_in_the_initial_cluster() {
    let (code, r, _) = report(&["denominators", "--type", "A2"]);
    assert_eq!(code, 0);
    let rows = r.details.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().any(|row| row["variable"] == "x1^-1*x2 + x1^-1"
        && row["denominator"] == serde_json::json!([1, 0])));
}

#[test]
fn verify_targets() {
    let (code, r, _) = report(&["verify", "counterexample"]);
    assert_eq!(code, 0);
    assert_eq!(r.counts["lift_ext1_cluster_category"], 2);

    let (code, r, _) = report(&["verify", "theorem1", "--type", "A3"]);
    assert_eq!(code, 0);
    assert_eq!(r.counts["tilting_objects"], 14);

    let (code, r, _) = report(&["verify", "corollary5", "--depth", "6"]);
    assert_eq!(code, 0);
    assert!(r.pass && r.truncated);

    let (code, r, _) = report(&[
        "verify", "denomhom", "--type", "A3", "--depth", "8", "--seed", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.parameters["seed"], "3");
}

#[test]
fn json_reports_round_trip() {
    let (_, r, text) = report(&["verify", "prop8", "--type", "A3"]);
    assert_eq!(format!("{}\n", r.to_json()), text);
}

#[test]
fn tsv_format() {
    let out = run(&["verify", "lemma67", "--type", "A2", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "pass\ttrue"));
    assert!(text.lines().any(|l| l == "count.tilting_objects\t5"));
}

#[test]
fn help_documents_orientations() {
    let out = run(&["--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 -> 2, 3 -> 2, 4 -> 2"));
    assert!(text.contains("1 -> 2 -> 3 and 1 -> 3"));
}
