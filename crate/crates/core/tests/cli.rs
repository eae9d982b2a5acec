use std::process::Command;

use serde_json::Value;

fn mixedwalk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mixedwalk")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = mixedwalk(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn period_of_cycle() {
    let v = json(&["period", "--graph", "cycle:n=4,j=1", "--eta", "pi*1/2"]);
    assert_eq!(v["periodic"], true);
    assert_eq!(v["period"], 16);
    assert_eq!(v["method"], "closed_form_cycle");
    assert_eq!(v["cross_check"], "agree");
}

#[test]
fn real_eta_cycle_uses_brute_force() {
    let v = json(&["period", "--graph", "cycle:n=4,j=1", "--eta", "1.0", "--cap", "500"]);
    assert_eq!(v["periodic"], false);
    assert_eq!(v["method"], "brute_force");
    assert_eq!(v["cap_used"], 500);
}

#[test]
fn spectrum_graph_round_trip() {
    let v = json(&["spectrum", "--graph", "path:n=5,orient=fb-f", "--eta", "pi*1/3"]);
    assert_eq!(v["cospectral_with_underlying"], true);
    let dir = std::env::temp_dir().join(format!("mixedwalk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("graph.json");
    std::fs::write(&file, v["graph"].to_string()).unwrap();
    let again = json(&["spectrum", "--graph", file.to_str().unwrap(), "--eta", "pi*1/3"]);
    assert_eq!(again["graph"], v["graph"]);
    assert_eq!(again["charpoly"], v["charpoly"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_reports_moves() {
    let v = json(&["classify-cycle", "--graph", "cycle:n=6,j=2", "--eta", "pi*1/4"]);
    assert_eq!(v["n"], 6);
    assert_eq!(v["j"], 2);
    assert_eq!(v["moves"].as_array().unwrap().len(), 0);
    assert_eq!(v["orientation_reversed"], false);
}

#[test]
fn walk_dump_shapes() {
    let v = json(&["walk", "--graph", "cycle:n=3,j=1", "--eta", "pi*1/3", "--all"]);
    assert_eq!(v["u"].as_array().unwrap().len(), 6);
    assert_eq!(v["k"].as_array().unwrap().len(), 3);
    assert_eq!(v["k"][0].as_array().unwrap().len(), 6);
    assert_eq!(v["u"][0][0].as_array().unwrap().len(), 2);
}

#[test]
fn sweep_csv() {
    let (code, out, _) = mixedwalk(&["sweep", "--n-max", "4", "--angles", "1/2,2/3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "n,j,p,q,tau_formula,tau_brute,agree");
    assert_eq!(lines.len(), 1 + (4 + 5) * 2);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    assert!(lines.contains(&"4,1,1,2,16,16,true"));
}

#[test]
fn exit_codes() {
    assert_eq!(mixedwalk(&["period", "--graph", "cycle:n=4", "--eta", "pi*1/0"]).0, 1);
    assert_eq!(mixedwalk(&["period", "--graph", "/no/such/file.json"]).0, 1);
    assert_eq!(mixedwalk(&["spectrum"]).0, 1);
    assert_eq!(mixedwalk(&["sweep", "--n-min", "2"]).0, 1);
    let (code, _, err) = mixedwalk(&["classify-cycle", "--graph", "path:n=3"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a cycle"));
}
