use sextic_cli::{run_file, run_text, Options};
use std::path::PathBuf;
use std::process::Command;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn options() -> Options {
    Options { depth: 1, ..Options::default() }
}

const NORM_FACT: &str = r#"{
  "towers": [{"name": "T", "standard": "S3"}],
  "assumed": [{"tower": "T", "subject": "2", "generator": "g", "verdict": "NotNorm"}],
  "surfaces": [{"name": "S", "tower": "T", "xi": "2"}],
  "commands": ["classify S"]
}"#;

#[test]
fn example_main_reproduces_the_worked_example() {
    let out = run_file(&scenario("example-main.json"), &options());
    assert_eq!(out.code, 0, "{}", out.report);
    let r = &out.report;
    assert!(r.contains("s NotNorm over Norm_g: valuation deg s = 1"));
    assert!(r.contains("  index 3\n"));
    assert!(r.contains("  Am_K = Z/3\n"));
    assert!(r.contains("gtype S3"));
    assert_eq!(r.matches("  valid: true\n").count(), 4);
    assert_eq!(r.matches("  general position: true\n").count(), 4);
    assert_eq!(r.matches("No: the fields L differ").count(), 6);
    assert!(r.contains("depth 1: 5 vertices"));
    assert!(r.contains("Z-factor letters S/q0[q1], S/q2[q3]"));
    assert!(r.contains("27 (-1)-classes"));
    assert!(!r.contains("status error"));
}

#[test]
fn reports_are_deterministic() {
    let a = run_file(&scenario("example-main.json"), &options());
    let b = run_file(&scenario("example-main.json"), &options());
    assert_eq!(a, b);
}

#[test]
fn bundled_instances_of_each_index() {
    let two = run_file(&scenario("z6-index2.json"), &options());
    assert_eq!(two.code, 0, "{}", two.report);
    assert!(two.report.contains("classified as almost-involution"));
    assert_eq!(two.report.matches("relation holds").count(), 2);
    let three = run_file(&scenario("z6-index3.json"), &options());
    assert_eq!(three.code, 0, "{}", three.report);
    assert!(three.report.contains("point p3 of degree 3 on T (ThreeOverL)"));
    let six = run_file(&scenario("z6-index6.json"), &options());
    assert_eq!(six.code, 0, "{}", six.report);
    assert!(six.report.contains("birationally superrigid"));
    assert!(six.report.contains("depth 2: 1 vertices, 0 edges"));
}

#[test]
fn empty_command_list_gives_an_empty_report() {
    let out = run_text(r#"{"commands": []}"#, &options());
    assert_eq!(out.code, 0);
    assert!(!out.report.contains("=="));
}

#[test]
fn invalid_norm_condition_is_a_semantic_error() {
    let text = r#"{"towers": [{"name": "Z", "standard": "Z6"}],
        "surfaces": [{"name": "S", "tower": "Z", "xi": "2", "rho": "1"}], "commands": ["classify S"]}"#;
    let out = run_text(text, &options());
    assert_eq!(out.code, 3);
    assert!(out.report.contains("Norm_h(xi)*Norm_g(rho) = 4 != 1"), "{}", out.report);
}

#[test]
fn malformed_input_is_a_parse_error() {
    assert_eq!(run_text("{ not json", &options()).code, 2);
    assert_eq!(run_text(r#"{"commands": ["frobnicate S"]}"#, &options()).code, 2);
    assert_eq!(run_file(&scenario("missing.json"), &options()).code, 2);
}

#[test]
fn failing_command_is_reported_and_sets_the_exit_code() {
    let text = r#"{"towers": [{"name": "T", "standard": "S3"}], "surfaces": [{"name": "S", "tower": "T", "xi": "s"}],
        "commands": ["link S nowhere", "classify S"]}"#;
    let out = run_text(text, &options());
    assert_eq!(out.code, 3);
    assert!(out.report.contains("status error: precondition violated: unknown point 'nowhere' on S"));
    assert!(out.report.contains("== 2. classify S"));
}

#[test]
fn assumed_facts_are_listed_and_refused_in_strict_mode() {
    let loose = run_text(NORM_FACT, &options());
    assert_eq!(loose.code, 0, "{}", loose.report);
    assert!(loose.report.contains("  index 3\n"));
    assert!(loose.report.contains("assumed facts relied upon:\n  2 NotNorm over Norm_g: assumed"));
    let strict = run_text(NORM_FACT, &Options { strict: true, ..options() });
    assert_eq!(strict.code, 4, "{}", strict.report);
    assert!(strict.report.contains("index unknown"));
    assert!(strict.report.contains("assumed fact ignored in strict mode"));
}

#[test]
fn sampling_uses_the_seed() {
    let text = r#"{"commands": ["sample D6 5"]}"#;
    let a = run_text(text, &Options { seed: 7, ..options() });
    assert_eq!(a.code, 0, "{}", a.report);
    assert!(a.report.contains("seed 7"));
    assert!(a.report.contains("5 of 5 violating parameter sets rejected"));
}

#[test]
fn binary_exit_codes_and_dumps() {
    let bin = env!("CARGO_BIN_EXE_sextic");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, r#"{"commands": ["dump-config 5", "dump-config 3"]}"#).unwrap();
    let out = Command::new(bin).arg(&path).arg("--dump-dir").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("16 (-1)-classes"));
    assert!(text.contains("intersection graph regular of degree 5"));
    let dumped = std::fs::read_to_string(dir.path().join("config-3.txt")).unwrap();
    assert_eq!(dumped.lines().count(), 6);
    std::fs::write(&path, NORM_FACT).unwrap();
    let strict = Command::new(bin).arg(&path).arg("--strict").output().unwrap();
    assert_eq!(strict.status.code(), Some(4));
    std::fs::write(&path, "[").unwrap();
    assert_eq!(Command::new(bin).arg(&path).output().unwrap().status.code(), Some(2));
}
