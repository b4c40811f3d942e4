use std::path::Path;
use std::process::{Command, Output};

use convex_chroma::Family;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convex-chroma"))
        .args(args)
        .current_dir(dir)
        .env_remove("CONVEX_CHROMA_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn generate_then_verify_pentagon() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["generate", "pentagon", "--k", "2", "--out", "p.json"]);
    assert!(o.status.success());
    let family = Family::from_json(&std::fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    assert_eq!(family.len(), 10);

    let o = run(dir.path(), &["verify", "--in", "p.json", "--samples", "5000"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["oracles"]["chi"]["value"], 5);
    assert_eq!(r["oracles"]["omega"]["value"], 4);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    assert!(r.get("wall_time_ms").is_none());
}

#[test]
fn grid_commands() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["generate", "grid", "--body", "square", "--m", "2", "--out", "g.json"]).status.success());

    let o = run(dir.path(), &["color", "--in", "g.json", "--method", "translates"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let used = r["colorings"][0]["colors_used"].as_u64().unwrap();
    assert!((9..=18).contains(&used));

    let o = run(dir.path(), &["partition", "--in", "g.json", "--method", "translates"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["partitions"][0]["classes_used"].as_u64().unwrap() <= 8);

    let o = run(dir.path(), &["export", "--in", "g.json", "--format", "dimacs"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("p edge 16 ")));

    let o = run(dir.path(), &["export", "--in", "g.json", "--format", "csv"]);
    assert!(stdout(&o).contains("theta,4,exact"));
}

#[test]
fn svg_uses_one_fill_per_colour() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["generate", "pentagon", "--k", "2", "--out", "p.json"]).status.success());
    let colors = convex_chroma::constructions::explicit_pentagon_coloring(2);
    std::fs::write(dir.path().join("c.json"), serde_json::to_string(&colors).unwrap()).unwrap();
    let o = run(dir.path(), &["export", "--in", "p.json", "--format", "svg", "--coloring", "c.json"]);
    assert!(o.status.success());
    let svg = stdout(&o);
    let fills: std::collections::BTreeSet<&str> =
        svg.split("fill=\"").skip(1).filter_map(|s| s.split('"').next()).filter(|f| f.starts_with("hsl")).collect();
    assert_eq!(fills.len(), 5);
}

#[test]
fn reports_repeat_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let gen = ["generate", "random", "--body", "triangle", "--count", "25", "--seed", "9", "--out", "r.json"];
    assert!(run(dir.path(), &gen).status.success());
    let first = std::fs::read(dir.path().join("r.json")).unwrap();
    assert!(run(dir.path(), &gen).status.success());
    assert_eq!(first, std::fs::read(dir.path().join("r.json")).unwrap());

    let verify = ["verify", "--in", "r.json", "--seed", "4", "--samples", "5000"];
    assert_eq!(run(dir.path(), &verify).stdout, run(dir.path(), &verify).stdout);
    let timed = json(&run(dir.path(), &["color", "--in", "r.json", "--timing"]));
    assert!(timed["wall_time_ms"].is_u64());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["color", "--in", "missing.json"]);
    assert_eq!(o.status.code(), Some(4));

    std::fs::write(dir.path().join("bad.json"), "{\"body\": 3}").unwrap();
    assert_eq!(run(dir.path(), &["verify", "--in", "bad.json"]).status.code(), Some(4));

    assert!(run(dir.path(), &["generate", "random", "--body", "square", "--count", "20", "--scales", "1,3", "--out", "h.json"])
        .status
        .success());
    let o = run(dir.path(), &["color", "--in", "h.json", "--method", "translates"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let o = run(dir.path(), &["color", "--in", "h.json", "--method", "homothets", "--caps", "omega=5,chi=5", "--samples", "5000"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["capped"], true);

    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(4));
}

#[test]
fn corrupted_claim_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["generate", "pentagon", "--k", "1", "--out", "p.json"]).status.success());
    let mut f: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    f["claimed_edges"] = serde_json::json!([[0, 1], [1, 2], [2, 3], [3, 4], [0, 2]]);
    std::fs::write(dir.path().join("p.json"), f.to_string()).unwrap();
    let o = run(dir.path(), &["verify", "--in", "p.json", "--samples", "5000"]);
    assert_eq!(o.status.code(), Some(4));
    let r = json(&o);
    let claim = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "claimed_adjacency").unwrap();
    assert_eq!(claim["holds"], false);
    assert!(claim["detail"].as_str().unwrap().contains("(0, 4)"));
}

#[test]
fn caps_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["generate", "pentagon", "--k", "2", "--out", "p.json"]).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_convex-chroma"))
        .args(["color", "--in", "p.json", "--method", "translates"])
        .current_dir(dir.path())
        .env("CONVEX_CHROMA_CAPS", "omega=3,chi=3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_convex-chroma"))
        .args(["color", "--in", "p.json", "--method", "translates", "--caps", "omega=100,chi=45"])
        .current_dir(dir.path())
        .env("CONVEX_CHROMA_CAPS", "omega=3,chi=3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
