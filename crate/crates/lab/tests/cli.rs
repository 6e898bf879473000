use bottleneck_lab::cli::{run, EXIT_ANALYSIS, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use bottleneck_lab::report::{Outcome, Report, Status, SCHEMA, VERSION};
use serde_json::Value;

fn lab(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("bottleneck-lab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = lab(args);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const BOWTIE: &str = "0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n";

#[test]
fn reports_are_versioned() {
    let r = json(&["bottleneck", "--family", "path", "--param", "n=5"]);
    assert_eq!(r["schema"], SCHEMA);
    assert_eq!(r["version"], VERSION);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["kind"], "bottleneck");
    assert_eq!(r["result"]["edge_bottleneck"], 1);
}

#[test]
fn bowtie_is_a_cactus() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "bowtie.txt", BOWTIE);
    let r = json(&["analyze", "--input", &input]);
    assert_eq!(r["result"]["label"], "cactus");
    assert_eq!(r["result"]["edge_bottleneck"], 2);
    let (code, text, _) = lab(&["classify", "--input", &input, "--out", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("label: cactus"), "{text}");
}

#[test]
fn json_input_matches_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let b = write(&dir, "k4.json", r#"{"vertices": 4, "edges": [[3, 2], [0, 1], [0, 2], [0, 3], [1, 2], [1, 3]]}"#);
    let x = json(&["bottleneck", "--input", &a]);
    let y = json(&["bottleneck", "--input", &b, "--format", "json"]);
    assert_eq!(x, y);
    assert_eq!(x["result"]["edge_bottleneck"], 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lab(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(lab(&["fat", "--family", "cycle", "--param", "n=6"]).0, EXIT_USAGE);
    assert_eq!(lab(&["bottleneck", "--family", "cycle", "--param", "n"]).0, EXIT_USAGE);
    assert_eq!(lab(&["bottleneck"]).0, EXIT_USAGE);
    assert_eq!(lab(&["ladder", "--family", "cycle", "--param", "n=5", "--width", "0"]).0, EXIT_USAGE);
}

#[test]
fn analysis_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write(&dir, "gap.txt", "0 5\n");
    let (code, _, err) = lab(&["analyze", "--input", &gap]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(err.contains("1..4"), "{err}");
    let bad = write(&dir, "bad.txt", "0 1\n1 x\n");
    let (code, _, err) = lab(&["analyze", "--input", &bad]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(lab(&["analyze", "--input", "/no/such/file"]).0, EXIT_ANALYSIS);
    let (code, _, err) = lab(&[
        "cmt", "--family", "cycle", "--param", "n=8", "--x", "0", "--y", "4", "--centers", "2,6", "--m-small", "1",
        "-M", "1", "--bound", "3",
    ]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(err.contains("must exceed"), "{err}");
}

#[test]
fn budget_exhaustion_keeps_a_partial_report() {
    let (code, out, err) = lab(&["bottleneck", "--family", "complete", "--param", "n=12", "--budget-pairs", "5"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(err.contains("partial"));
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.status, Status::BudgetExceeded);
    match r.result {
        Outcome::Bottleneck { edge_bottleneck, bounds: Some(b), .. } => {
            assert_eq!(edge_bottleneck, None);
            assert!(b.lower <= 11 && 11 <= b.upper);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn reports_verify_from_the_file_alone() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 4] = [
        &["analyze", "--family", "random-cut-cactus", "--param", "n=9", "--seed", "4"],
        &["ladder", "--family", "complete", "--param", "n=5", "--width", "4", "--normalize", "--theta"],
        &["fat", "-M", "1", "-n", "1", "--family", "ladder", "--param", "width=2", "--param", "pole_len=6",
          "--param", "rung_len=4", "--param", "spacing=5"],
        &["sweep", "--family", "cycle", "--size-param", "n", "--sizes", "6,8", "--radii", "1", "--width", "2"],
    ];
    for args in runs {
        let (code, out, err) = lab(args);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        let path = write(&dir, "report.json", &out);
        let (code, out, err) = lab(&["oracle", "--verify", &path]);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["failures"], serde_json::json!([]));
    }
}

#[test]
fn tampered_witness_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = lab(&["ladder", "--family", "complete", "--param", "n=5", "--width", "4"]);
    let mut v: Value = serde_json::from_str(&out).unwrap();
    v["graph"]["edges"].as_array_mut().unwrap().truncate(6);
    let path = write(&dir, "report.json", &v.to_string());
    let (code, out, _) = lab(&["oracle", "--verify", &path, "--out", "text"]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(!out.contains(" 0 failures"), "{out}");
}

#[test]
fn oracle_agrees_with_the_fast_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "bowtie.txt", BOWTIE);
    let fast = json(&["bottleneck", "--input", &input]);
    let slow = json(&["oracle", "--input", &input]);
    assert_eq!(fast["result"]["edge_bottleneck"], slow["result"]["edge_bottleneck"]);
    assert_eq!(fast["result"]["point_bottleneck"], slow["result"]["point_bottleneck"]);
    let big = lab(&["oracle", "--family", "cycle", "--param", "n=12"]);
    assert_eq!(big.0, EXIT_ANALYSIS);
}

#[test]
fn dot_marks_poles_and_rungs() {
    let (code, dot, _) = lab(&["ladder", "--family", "complete", "--param", "n=4", "--width", "3", "--out", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert!(dot.starts_with("graph"), "{dot}");
    assert!(dot.contains("#6baed6") && dot.contains("#f4a6c6"), "{dot}");
    assert_eq!(dot.matches(" -- ").count(), 6);
}

#[test]
fn generate_round_trips_through_the_reader() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text, _) = lab(&["generate", "--family", "random-cactus", "--param", "n=14", "--seed", "9", "--out", "text"]);
    assert_eq!(code, EXIT_OK);
    let path = write(&dir, "g.txt", &text);
    let r = json(&["classify", "--input", &path]);
    assert_eq!(r["result"]["label"], "cactus");
    let again = lab(&["generate", "--family", "random-cactus", "--param", "n=14", "--seed", "9", "--out", "text"]);
    assert_eq!(again.1, text);
}
