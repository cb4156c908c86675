use std::fs;
use std::process::{Command, Output};

use planturan::io::read_planar_code;
use planturan::verify::Certificate;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planturan")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_writes_the_full_stream() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tri8.pc");
    let o = run(&["enumerate", "--n", "8", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let gs = read_planar_code(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(gs.len(), 14);
    assert!(gs.iter().all(|g| g.is_triangulation()));
}

#[test]
fn enumerate_parts_and_count() {
    let o = run(&["enumerate", "--n", "10", "--count", "--jobs", "1"]);
    assert_eq!(stdout(&o).trim(), "233");
    let mut total = 0;
    for p in ["0/2", "1/2"] {
        let o = run(&["enumerate", "--n", "10", "--count", "--part", p]);
        total += stdout(&o).trim().parse::<usize>().unwrap();
    }
    assert_eq!(total, 233);
}

#[test]
fn sampling_is_seeded() {
    let a = run(&["enumerate", "--n", "9", "--sample", "3", "--seed", "7"]);
    let b = run(&["enumerate", "--n", "9", "--sample", "3", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(read_planar_code(&a.stdout).unwrap().len(), 3);
}

#[test]
fn verify_single_order() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cert.json");
    let o = run(&["verify", "--statement", "THM_1_1", "--n", "11", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS"));
    assert!(text.contains("| 26 |") || text.contains("26 | 3n-7"));
    let cert = Certificate::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(cert.schema, "cert-v1");
    assert_eq!(cert.witnesses[0].e, 26);
    assert!(cert.reverify_witnesses().unwrap());
}

#[test]
fn construct_fan_as_dot() {
    let o = run(&["construct", "--family", "fan", "--t", "1", "--k", "4", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("// n=104 e=288\n"));
}

#[test]
fn check_and_blocks_report_status() {
    let dir = tempfile::tempdir().unwrap();
    let g0 = dir.path().join("g0.txt");
    let ico = dir.path().join("ico.txt");
    assert!(run(&["construct", "--family", "h3", "--k", "0", "--out", g0.to_str().unwrap()]).status.success());
    assert!(run(&["construct", "--family", "named", "--name", "icosahedron", "--out", ico.to_str().unwrap()]).status.success());

    let free = run(&["check", g0.to_str().unwrap(), "--pattern", "H3"]);
    assert_eq!(free.status.code(), Some(0));
    assert!(stdout(&free).contains("n=24 e=63 H3-free"));
    let not_free = run(&["check", ico.to_str().unwrap(), "--pattern", "F4"]);
    assert_eq!(not_free.status.code(), Some(1));

    let blocks = run(&["blocks", g0.to_str().unwrap(), "--pattern", "H3"]);
    assert_eq!(blocks.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&blocks).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2]["ok"], true);
}

#[test]
fn export_round_trips_through_text() {
    let dir = tempfile::tempdir().unwrap();
    let pc = dir.path().join("a.pc");
    let txt = dir.path().join("a.txt");
    let back = dir.path().join("b.pc");
    run(&["enumerate", "--n", "7", "--out", pc.to_str().unwrap()]);
    assert!(run(&["export", pc.to_str().unwrap(), "--format", "text", "--out", txt.to_str().unwrap()]).status.success());
    assert!(run(&["export", txt.to_str().unwrap(), "--format", "pc", "--out", back.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(&pc).unwrap(), fs::read(&back).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--n", "13", "--count"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--statement", "NOPE"]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent", "--pattern", "H3"]).status.code(), Some(2));
}
