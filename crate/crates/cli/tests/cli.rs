use std::process::{Command, Output};

use meshcy::mesh::MeshData;
use meshcy::rewrite::parse_element;
use meshcy::{Quiver, Rational};

fn meshcy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meshcy"))
        .args(args)
        .env_remove("MESHCY_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gb_lists_the_j_rules() {
    let out = meshcy(&["gb", "--family", "j", "--degree", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().any(|l| l == "b*c^2 -> a^2*b"));
}

#[test]
fn gb_accepts_an_order() {
    let out = meshcy(&[
        "gb", "--family", "dq", "--q", "3", "--degree", "6", "--order", "c>b>d>a",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn hilbert_blocks_agree_for_d_q() {
    let out = meshcy(&["hilbert", "--family", "dq", "--q", "5", "--degree", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let (first, second) = text.split_once("\n\n").expect("two blocks");
    assert_eq!(first.trim_end(), second.trim_end());
    assert!(first.starts_with("0\n1\t0\n0\t1\n1\n0\t2\n2\t0\n"));
}

#[test]
fn degree_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_meshcy"))
        .args(["hilbert", "--family", "j"])
        .env("MESHCY_DEGREE", "3")
        .output()
        .unwrap();
    let text = stdout(&out);
    // two blocks of four degrees, three lines each
    assert_eq!(text.lines().filter(|l| !l.is_empty()).count(), 24);
}

#[test]
fn iso_exit_codes() {
    let out = meshcy(&["iso", "--family", "bq", "--p", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("not isomorphic"));
    let out = meshcy(&["iso", "--family", "bq", "--p", "2", "--q", "3", "--expect"]);
    assert_eq!(out.status.code(), Some(1));
    let out = meshcy(&[
        "iso", "--family", "aq", "--p", "2", "--q", "1/2", "--expect",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = meshcy(&["iso", "--family", "an", "--p", "1,x,3", "--q", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = meshcy(&["iso", "--family", "an", "--p", "1,2", "--q", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn iso_prints_the_witness() {
    let out = meshcy(&[
        "iso",
        "--family",
        "an",
        "--p",
        "1,2,3",
        "--q",
        "3,2,1",
        "--witness",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("isomorphic"));
    assert!(text.contains("sigma: ") && text.contains("matrix: [["));
}

#[test]
fn construct_output_parses_back() {
    let out = meshcy(&[
        "construct",
        "--family",
        "an",
        "--n",
        "4",
        "--q",
        "1,2,3,4",
        "--emit",
        "quiver",
    ]);
    let quiver = Quiver::from_text(&stdout(&out)).unwrap();
    assert_eq!(quiver.arrow_count(), 8);
    let out = meshcy(&["construct", "--family", "an", "--q", "1,2,3,4"]);
    let relations: Vec<_> = stdout(&out)
        .lines()
        .map(|l| parse_element::<Rational>(&quiver, l).unwrap())
        .collect();
    assert_eq!(relations.len(), 4);
    let out = meshcy(&["construct", "--family", "an", "--n", "3", "--q", "1,2,3,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_a_constructed_mesh() {
    let out = meshcy(&["construct", "--family", "dq", "--q", "2", "--emit", "mesh"]);
    let text = stdout(&out);
    MeshData::<Rational>::from_text(&text).unwrap();
    let path = std::env::temp_dir().join(format!("meshcy-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let out = meshcy(&["classify", "--mesh", path.to_str().unwrap(), "--witness"]);
    let shown = stdout(&out);
    assert!(shown.starts_with("Aq q=1/2"), "{shown}");
    let out = meshcy(&[
        "cy-check",
        "--mesh",
        path.to_str().unwrap(),
        "--degree",
        "8",
        "--expect",
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(path).unwrap();
    let out = meshcy(&["classify", "--mesh", "/nonexistent/mesh.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gk_check_and_enumerate() {
    let out = meshcy(&["gk-check", "--family", "j", "--expect"]);
    assert_eq!(out.status.code(), Some(0));
    let out = meshcy(&["enumerate", "--vertices", "2"]);
    assert_eq!(
        stdout(&out),
        "M=[[0,2],[2,0]] P=()\nM=[[1,1],[1,1]] P=()\nM=[[1,1],[1,1]] P=(e1 e2)\n"
    );
    let out = meshcy(&["enumerate", "--vertices", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_paper_is_deterministic() {
    let first = meshcy(&["verify-paper"]);
    let second = meshcy(&["verify-paper"]);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert_eq!(text.lines().filter(|l| l.starts_with("AC")).count(), 8);
    assert!(text.contains("AC8 FAIL"));
    let out = meshcy(&["verify-paper", "--expect"]);
    assert_eq!(out.status.code(), Some(1));
}
