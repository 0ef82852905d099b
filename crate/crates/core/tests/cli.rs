use nilfibre::census::CensusReport;
use nilfibre::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn nf(args: &str) -> nilfibre::cli::Output {
    run(std::iter::once("nilfibre").chain(args.split_whitespace()))
}

#[test]
fn tableau_renders_columns() {
    let o = nf("tableau 1,2,2,1");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "1 2 4 6\n  3 5\n");
}

#[test]
fn non_positive_parts_are_usage_errors() {
    let o = nf("tableau 0,2");
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("parts must be positive"), "{}", o.stderr);
    assert_eq!(nf("tableau 1,x").code, EXIT_USAGE);
    assert_eq!(nf("frobnicate 1,2").code, EXIT_USAGE);
    assert_eq!(nf("census 1,2 --trials 0").code, EXIT_USAGE);
}

#[test]
fn invariants_print_both_pairs() {
    let o = nf("invariant 1,2,2,1");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("x_{2,4}*x_{3,5} - x_{2,5}*x_{3,4}"));
    assert_eq!(o.stdout.lines().count(), 2);
    let one = nf("invariant 1,2,2,1 --pair C2-C3");
    assert_eq!(one.stdout.lines().count(), 1);
    assert_eq!(nf("invariant 1,2,2,1 --pair C1-C2").code, EXIT_USAGE);
}

#[test]
fn census_json_lists_components_and_round_trips() {
    let o = nf("census 1,2,2,1 --json");
    assert_eq!(o.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let reds: Vec<_> = v["components"].as_array().unwrap().iter().map(|c| c["red"].clone()).collect();
    assert_eq!(reds, vec![serde_json::json!([5, 6]), serde_json::json!([4, 5])]);
    let rep = CensusReport::from_json(&o.stdout).unwrap();
    assert_eq!(rep.to_json() + "\n", o.stdout);
}

#[test]
fn implement_fills_in_forced_fields() {
    let o = nf("implement 1,2,2,1 pair=C2-C3 pair=C1-C4;source=C4");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("red {5,6}"), "{}", o.stdout);
    let ambiguous = nf("implement 1,2,2,1 pair=C2-C3 pair=C1-C4");
    assert_eq!(ambiguous.code, EXIT_USAGE);
    assert!(ambiguous.stderr.contains("legal choices"), "{}", ambiguous.stderr);
    assert_eq!(nf("implement 1,2,2,1 pair=C2-C3 pair=C2-C3").code, EXIT_USAGE);
}

#[test]
fn implement_json_carries_stages() {
    let o = nf("implement 1,2,3,3,1,2 pair=C3-C4 pair=C1-C5 --json");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["red"], serde_json::json!([9, 10]));
    assert_eq!(v["stages"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_reports_sections() {
    let o = nf("verify 1,2,2,1");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.lines().any(|l| l.starts_with("PASS vanishing")));
    assert!(!o.stdout.contains("FAIL"));
    assert_ne!(EXIT_OK, EXIT_FAILED);
}

#[test]
fn enumerate_and_pairs() {
    let o = nf("enumerate 1,2,2,1");
    assert!(o.stdout.starts_with("2 complete tableaux, 2 red sets"), "{}", o.stdout);
    let p = nf("pairs 1,2,3,3,1,2 --json");
    let v: serde_json::Value = serde_json::from_str(&p.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn limit_exceeded_is_a_usage_error() {
    let o = nf("census 1,1,1,1,1,1,1 --limit 10");
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("guard"), "{}", o.stderr);
}

#[test]
fn binary_matches_library() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_nilfibre"))
        .args(["tableau", "0,2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parts must be positive"));
}
