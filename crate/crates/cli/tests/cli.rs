use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieseries"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn f4_exterior_square_is_adjoint_plus_one() {
    let o = run(&["decompose", "F4", "0,0,0,1", "--ext", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("325 = 52 + 273"), "{out}");
    assert!(out.contains("[1,0,0,0]") && out.contains("[0,0,1,0]"));
}

#[test]
fn sl2_tensor_square() {
    let o = run(&["decompose", "A1", "1", "--tensor", "A1", "1", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    let ws: Vec<&str> = recs.iter().map(|r| r["weight"].as_str().unwrap()).collect();
    assert_eq!(ws, ["[0]", "[2]"]);
    assert_eq!(recs[1]["casimir_killing"], "1");
}

#[test]
fn e6_symmetric_cube_has_three_terms() {
    let o = run(&["decompose", "E6", "1,0,0,0,0,0", "--sym", "3", "--format", "records"]);
    let recs = records(&o);
    assert_eq!(recs.len(), 3);
    let total: u64 = recs.iter().map(|r| r["dim"].as_u64().unwrap()).sum();
    assert_eq!(total, 3654);
}

#[test]
fn norm_flag_selects_one_casimir() {
    let o = run(&["decompose", "G2", "omega1", "--sym", "2", "--norm", "highest-root", "--format", "records"]);
    let recs = records(&o);
    assert!(recs.iter().all(|r| r.get("casimir_killing").is_none() && r.get("casimir_highest_root").is_some()));
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        vec!["decompose", "A2", "1,0,0"],
        vec!["decompose", "Q7", "1"],
        vec!["decompose", "A2", "1,0", "--schur", "2,x"],
        vec!["verify", "--series", "nope"],
        vec!["verify"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["decompose", "A2", "1,0,0"]);
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().count(), 1);
}

#[test]
fn subexceptional_sp6_column_verifies() {
    let o = run(&["verify", "--series", "subexceptional", "--m", "1", "--all-identities"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 diff"));
}

#[test]
fn named_suites_verify() {
    for args in [
        vec!["verify", "--identity", "vogel-dim", "--all-rows"],
        vec!["verify", "--identity", "mu-lemma", "--n-max", "8"],
        vec!["verify", "--suite", "magic-square", "--suite", "extremal"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn record_stream_carries_anchors_and_statuses() {
    let o = run(&["verify", "--identity", "vogel-dim", "--format", "records"]);
    let recs = records(&o);
    assert!(!recs.is_empty());
    for r in &recs {
        assert!(!r["anchor"].as_str().unwrap().is_empty());
        assert!(["match", "diff", "skipped-budget", "expected-open-question"].contains(&r["status"].as_str().unwrap()));
        assert_eq!(r["suite"], "vogel-dim");
    }
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let a = run(&["verify", "--suite", "extremal", "--format", "records", "--jobs", "1"]);
    let b = run(&["verify", "--suite", "extremal", "--format", "records", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn a_wrong_table_exits_one() {
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/exceptional.toml");
    let text = std::fs::read_to_string(src).unwrap();
    let broken = text.replacen("rhs = \"g + g2\"", "rhs = \"g + g2 + 1\"", 1);
    assert_ne!(text, broken);
    let dir = std::env::temp_dir().join(format!("lieseries-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("exceptional.toml"), broken).unwrap();
    let o = run(&[
        "verify",
        "--data",
        dir.to_str().unwrap(),
        "--series",
        "exceptional",
        "--identity",
        "vogel-ext2-g",
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("diff"));
}

#[test]
fn tiny_budget_skips_instead_of_failing() {
    let o = run(&["verify", "--series", "exceptional", "--identity", "vogel-sym2-g", "--budget", "1000"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("skipped-budget"), "{out}");
}

#[test]
fn induction_examples() {
    let o = run(&["induce", "E7", "adjoint", "--quadric"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("D5") && out.contains("dim Q = 8") && out.contains("largest"), "{out}");

    let o = run(&["induce", "A7", "omega4", "--achain", "--format", "records"]);
    let recs = records(&o);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["weight"], "[0,0,1,0,1,0,0]");
    assert_eq!(recs[0]["contained"], true);

    let o = run(&["induce", "E6", "omega1", "omega6", "--aad", "full-chain"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[0,1,0,0,0,0] (adjoint)"));
}
