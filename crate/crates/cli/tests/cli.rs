use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coclass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_reports_order_and_type() {
    let o = run(&["build", "M[e=2,i=1]"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("order 3^5 = 243"), "{s}");
    assert!(s.contains("type a.1, kappa (000;0)"), "{s}");

    let s = stdout(&run(&["build", "B[e=2]"]));
    assert!(s.contains("= 81") && s.contains("class 2,"), "{s}");

    let o = run(&["build", "MM[e=2,i=1]", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "729");
    assert_eq!(v["vertex"]["named_type"], "d.10");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["build", "M[e=1,i=1]"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "consistency", "--e-min", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tree_dot_has_four_branches() {
    let o = run(&["tree", "CF", "--e", "2", "--i-max", "4", "--format", "dot"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("digraph"));
    for i in 1..=4 {
        assert!(s.contains(&format!("\"M[e=2,i={i}]\" [label=")), "{s}");
    }
    // classes 3 to 7
    assert_eq!(s.matches("rank=same").count(), 5);
}

#[test]
fn tree_json_schema() {
    let o = run(&["tree", "BCF", "--e", "2", "--i-max", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5 + 9);
    let e = &v["edges"][0];
    assert!(e["from"].is_string() && e["to"].is_string() && e["step"].is_u64() && e["kind"].is_string());
}

#[test]
fn step_two_descendants_of_the_root() {
    let o = run(&["descendants", "M[e=3,i=1]", "--step", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let types: Vec<&str> = v["members"].as_array().unwrap().iter().filter_map(|m| m["named_type"].as_str()).collect();
    assert!(types.contains(&"a.1") && types.contains(&"d.10"), "{types:?}");
    assert_eq!(run(&["descendants", "M[e=3,i=1]", "--step", "3"]).status.code(), Some(2));
}

#[test]
fn verify_class2_passes() {
    let o = run(&["verify", "class2", "--e-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS class2"));
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "properties", "--triples", "300", "--seed", "7", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn gap_export() {
    let s = stdout(&run(&["export-gap", "B[e=2]", "--var", "B2"]));
    assert!(s.contains("F := FreeGroup(4);;") && s.contains("B2 := F / ["), "{s}");
}
