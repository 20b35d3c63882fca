use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const F2_POINTS: &str = "2\n0 0 W\n0 2 B\n3 0 B\n3 2 W\n";
const F2_MATCHING: &str = "2\n0 1\n3 2\n";

fn bimatch(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimatch")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

fn f2(dir: &TempDir) {
    fs::write(dir.path().join("f2.pts"), F2_POINTS).unwrap();
    fs::write(dir.path().join("f2.m"), F2_MATCHING).unwrap();
}

#[test]
fn parallel_family_is_unique() {
    let dir = TempDir::new().unwrap();
    let gen = bimatch(dir.path(), &["gen", "parallel", "--n", "6", "-o", "p.pts", "-m", "p.m"]);
    assert_eq!(gen.status.code(), Some(0));
    let out = bimatch(dir.path(), &["unique", "p.pts"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&stdout(&out), "unique"), Some("true"));
    assert_eq!(field(&stdout(&out), "verdict"), Some("linear"));
}

#[test]
fn circular_family_is_not_unique() {
    let dir = TempDir::new().unwrap();
    bimatch(dir.path(), &["gen", "radial", "--n", "7", "--occupancy", "1111111", "-o", "r.pts", "-m", "r.m"]);
    let out = bimatch(dir.path(), &["unique", "r.pts"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(field(&stdout(&out), "verdict"), Some("circular"));

    let classified = bimatch(dir.path(), &["classify", "r.pts", "r.m"]);
    assert_eq!(field(&stdout(&classified), "verdict"), Some("circular"));

    let alt = bimatch(dir.path(), &["alternatives", "r.pts", "r.m", "-o", "a.m", "b.m"]);
    assert_eq!(alt.status.code(), Some(0));
    for name in ["a.m", "b.m"] {
        let check = bimatch(dir.path(), &["classify", "r.pts", name]);
        assert_eq!(check.status.code(), Some(0), "{name} is a valid matching");
    }
}

#[test]
fn cut_and_balanced_line_on_f2() {
    let dir = TempDir::new().unwrap();
    f2(&dir);
    let cut = bimatch(dir.path(), &["cut", "f2.pts", "f2.m", "--svg", "cut.svg"]);
    assert_eq!(cut.status.code(), Some(0));
    let text = stdout(&cut);
    assert_eq!(field(&text, "segments"), Some("0 1"));
    assert!(field(&text, "line_from").is_some() && field(&text, "line_to").is_some());
    assert!(fs::read_to_string(dir.path().join("cut.svg")).unwrap().contains("class=\"overlay\""));

    let bl = bimatch(dir.path(), &["balanced-line", "f2.pts", "f2.m", "--json"]);
    assert_eq!(bl.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&bl)).unwrap();
    assert!(json["line_from"].is_string());
}

#[test]
fn f2_alternative_is_the_other_matching() {
    let dir = TempDir::new().unwrap();
    f2(&dir);
    let out = bimatch(dir.path(), &["alternatives", "f2.pts", "f2.m", "-o", "x.m"]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("x.m")).unwrap();
    let mut pairs: Vec<&str> = text.lines().skip(1).collect();
    pairs.sort();
    assert_eq!(pairs, vec!["0 2", "3 1"]);
}

#[test]
fn linear_matching_has_no_cut_or_alternative() {
    let dir = TempDir::new().unwrap();
    bimatch(dir.path(), &["gen", "parallel", "--n", "3", "-o", "p.pts", "-m", "p.m"]);
    assert_eq!(bimatch(dir.path(), &["cut", "p.pts", "p.m"]).status.code(), Some(1));
    assert_eq!(bimatch(dir.path(), &["balanced-line", "p.pts", "p.m"]).status.code(), Some(1));
    assert_eq!(bimatch(dir.path(), &["alternatives", "p.pts", "p.m", "-o", "z.m"]).status.code(), Some(1));
    assert!(!dir.path().join("z.m").exists());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("dup.pts"), "1\n0 0 W\n0 0 B\n").unwrap();
    fs::write(dir.path().join("col.pts"), "2\n0 0 W\n1 1 W\n2 2 B\n3 5 B\n").unwrap();
    let dup = bimatch(dir.path(), &["unique", "dup.pts"]);
    assert_eq!(dup.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&dup.stderr).contains("coincide"));
    let col = bimatch(dir.path(), &["build", "col.pts"]);
    assert_eq!(col.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&col.stderr).contains("0, 1 and 2"));
    assert_eq!(bimatch(dir.path(), &["unique", "missing.pts"]).status.code(), Some(2));
    f2(&dir);
    fs::write(dir.path().join("crossing.m"), "2\n0 2\n3 1\n0\n").unwrap();
    assert_eq!(bimatch(dir.path(), &["classify", "f2.pts", "crossing.m"]).status.code(), Some(2));
}

#[test]
fn census_counts() {
    let dir = TempDir::new().unwrap();
    for (n, want) in [(3, "1"), (5, "11"), (7, "57")] {
        let out = bimatch(dir.path(), &["census", &n.to_string()]);
        assert_eq!(field(&stdout(&out), "relations"), Some(want));
    }
}

#[test]
fn build_round_trips_through_classify() {
    let dir = TempDir::new().unwrap();
    let pts = bimatch(dir.path(), &["gen", "random", "--n", "12", "--seed", "4"]);
    fs::write(dir.path().join("r.pts"), stdout(&pts)).unwrap();
    let build = bimatch(dir.path(), &["build", "r.pts", "-o", "r.m", "--svg", "r.svg"]);
    assert_eq!(build.status.code(), Some(0));
    assert_eq!(bimatch(dir.path(), &["classify", "r.pts", "r.m"]).status.code(), Some(0));
    let svg = fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 24);
}

#[test]
fn render_is_deterministic() {
    let dir = TempDir::new().unwrap();
    bimatch(dir.path(), &["gen", "radial", "--n", "5", "--occupancy", "11111", "-o", "r.pts", "-m", "r.m"]);
    let a = stdout(&bimatch(dir.path(), &["render", "r.pts", "-m", "r.m", "--overlay", "cycle"]));
    let b = stdout(&bimatch(dir.path(), &["render", "r.pts", "-m", "r.m", "--overlay", "cycle"]));
    assert_eq!(a, b);
    assert_eq!(a.matches("class=\"label\"").count(), 5);
    let no_matching = bimatch(dir.path(), &["render", "r.pts", "--overlay", "cut"]);
    assert_eq!(no_matching.status.code(), Some(2));
}

#[test]
fn duplication_makes_a_unique_set() {
    let dir = TempDir::new().unwrap();
    f2(&dir);
    bimatch(dir.path(), &["gen", "duplicate", "f2.pts", "-o", "d.pts"]);
    let out = bimatch(dir.path(), &["unique", "d.pts"]);
    assert_eq!(out.status.code(), Some(0));
}
