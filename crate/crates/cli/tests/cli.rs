use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_unity-sieve"));
    c.env_remove("UNITY_SIEVE_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn prove_writes_a_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["prove", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["route"], "main");
    assert_eq!(v["N"], 210);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 30);
    assert_eq!(v["filtered"], serde_json::json!([[15, 30], [30, 15]]));
    for a in v["assertions"].as_array().unwrap() {
        assert_eq!(a["status"], "pass", "{}", a["name"]);
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let one = run(&["--jobs", "1", "prove", "--route", "both"]);
    let many = run(&["--jobs", "4", "prove", "--route", "both"]);
    let default = run(&["prove", "--route", "both"]);
    assert_eq!(one.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, default.stdout);
    let env = bin().env("UNITY_SIEVE_JOBS", "1").args(["prove", "--route", "both"]).output().unwrap();
    assert_eq!(env.stdout, one.stdout);
}

#[test]
fn modulus_override() {
    let o = run(&["prove", "--modulus-override", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], 7);
    assert!(v["solutions"].as_array().unwrap().is_empty());
    assert!(v["assertions"].as_array().unwrap().iter().any(|a| a["status"] == "skipped"));
    assert_eq!(run(&["prove", "--modulus-override", "100001"]).status.code(), Some(2));
    assert_eq!(run(&["prove", "--modulus-override", "0"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["--jobs", "0", "mobius", "6"][..],
        &["prove", "--route", "sideways"],
        &["prove", "-o", "/nonexistent/dir/report.json"],
        &["solve", "1+x+z"],
        &["solve", "1+x+x^2"],
        &["solve", "1+x+y+x*y+x^2+y^2+x^2*y+x*y^2+x^2*y^2", "--max-terms", "4"],
        &["geometry", "0,105,1@210"],
        &["geometry", "octagonal"],
        &["geometry", "heptagonal", "--precision", "-1"],
        &["mobius", "0"],
        &["ramanujan", "0", "3"],
        &["cyclotomic", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn solve_prints_solutions_at_the_minimal_modulus() {
    let o = run(&["solve", "1+x+y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2 solutions at N = 3\n(1, 2, 3)\n(2, 1, 3)\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let o = run(&["solve", "1 + x + y + x^2*y^3 + x^3*y^2 + x^3*y^3", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("30 solutions at N = 210\n"));
    assert!(stdout(&o).contains("(15, 30, 210)\n"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["index_set"], serde_json::json!([1, 2, 3, 5, 6, 7, 14, 15]));
}

#[test]
fn geometry_named_triangles() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["heptagonal", "pentadecagonal1", "pentadecagonal2"] {
        let svg = dir.path().join(format!("{name}.svg"));
        let o = run(&["geometry", name, "--svg", svg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let text = stdout(&o);
        assert!(!text.contains("FAILS"), "{text}");
        assert_eq!(text.matches("holds").count(), 2);
        let drawing = std::fs::read_to_string(&svg).unwrap();
        assert!(drawing.starts_with("<svg") && drawing.contains(&format!("<title>{name}</title>")));
    }
    let hept = stdout(&run(&["geometry", "heptagonal"]));
    assert!(hept.contains("sharygin window: inside"), "{hept}");
    assert!(hept.contains("(102.857142857 deg)"), "{hept}");
}

#[test]
fn geometry_ad_hoc_triples() {
    let o = run(&["geometry", "0,70,140@210"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("tangency 0,1,2@3"), "{text}");
    assert!(text.contains("all sides equal: true"));
    assert!(text.contains("(60.000000000 deg)"));
    let o = run(&["geometry", "2,13,7@14"]);
    assert!(stdout(&o).contains("bisectral A1B1C1 isosceles: true"));
}

#[test]
fn arithmetic_helpers() {
    assert_eq!(stdout(&run(&["ramanujan", "6", "2"])), "-1\n");
    assert_eq!(stdout(&run(&["ramanujan", "210", "-15"])), stdout(&run(&["ramanujan", "210", "15"])));
    assert_eq!(stdout(&run(&["ramanujan", "12", "0"])), "4\n");
    assert_eq!(stdout(&run(&["mobius", "30"])), "-1\n");
    assert_eq!(stdout(&run(&["mobius", "12"])), "0\n");
    assert_eq!(stdout(&run(&["cyclotomic", "6"])), "x^2 - x + 1\n");
    assert_eq!(stdout(&run(&["cyclotomic", "1"])), "x - 1\n");
}

#[test]
fn resultant_from_stdin() {
    let o = with_stdin(&["resultant"], "1+x+y\ny^2-1\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x^2 + 2*x\n");
    let o = with_stdin(&["resultant", "--var", "x"], "1+x+y\nx^2-1\n");
    assert_eq!(stdout(&o), "y^2 + 2*y\n");
    assert_eq!(with_stdin(&["resultant"], "1+x+y\n").status.code(), Some(2));
    assert_eq!(with_stdin(&["resultant"], "1+x+y\nq\n").status.code(), Some(2));
    assert_eq!(with_stdin(&["resultant"], "1+x+y\ny+x*y+y^2\n").status.code(), Some(1));
}
