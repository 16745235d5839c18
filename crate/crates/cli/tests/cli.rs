use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn tanglekh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tanglekh")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", &format!("{name}.tangle")].iter().collect();
    p.to_str().unwrap().to_owned()
}

fn temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_trefoil() {
    let o = tanglekh(&["compute", &fixture("3_1")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("P = x^-3y^-9 + x^-2y^-5 + y^-3 + y^-1"));
}

#[test]
fn compute_circle() {
    let f = temp("O\n");
    let o = tanglekh(&["compute", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("P = y^-1 + y"));
}

#[test]
fn compute_gf2_trefoil_sees_torsion() {
    // the 2-torsion of the trefoil adds a pair of classes mod 2
    let o = tanglekh(&["compute", "--field", "GF2", &fixture("3_1")]);
    assert!(stdout(&o).contains("P = x^-3y^-9 + x^-3y^-7 + x^-2y^-7 + x^-2y^-5 + y^-3 + y^-1"));
}

#[test]
fn malformed_input_exits_1() {
    let f = temp("X a b c\n");
    let o = tanglekh(&["compute", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(tanglekh(&["compute", "/nonexistent/file.tangle"]).status.code(), Some(1));
}

#[test]
fn crossing_cap_exits_2() {
    let o = tanglekh(&["compute", "--max-crossings", "2", &fixture("3_1")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_output_is_in_input_order() {
    let names = ["3_6", "0_0", "2_1", "4arcs", "1_1"];
    let paths: Vec<String> = names.iter().map(|n| fixture(n)).collect();
    let mut args = vec!["compute", "--format", "json"];
    args.extend(paths.iter().map(String::as_str));
    let o = tanglekh(&args);
    assert!(o.status.success());
    let files: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["file"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(files, paths);
}

#[test]
fn json_is_byte_stable() {
    let args = ["compute", "--format", "json", &fixture("3_3"), &fixture("2_2")];
    let first = tanglekh(&args);
    for threads in ["1", "3"] {
        let again = Command::new(env!("CARGO_BIN_EXE_tanglekh"))
            .args(args)
            .env("TANGLEKH_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(first.stdout, again.stdout);
    }
    let dump = || tanglekh(&["dump-complex", &fixture("2_3")]).stdout;
    assert_eq!(dump(), dump());
}

#[test]
fn verify_tables_reports_flagged_row_separately() {
    let o = tanglekh(&["verify-tables", "--table", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("20 pass, 3 discrepancy, 0 fail"));
    let flagged: Vec<&str> = text.lines().filter(|l| l.starts_with("DISCREPANCY")).collect();
    assert_eq!(flagged.len(), 3);
    assert!(flagged.iter().all(|l| l.contains("{+,-}") && l.contains("2y^3") && l.contains("2y^-3")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn verify_table_two_all_pass() {
    let o = tanglekh(&["verify-tables", "--table", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("24 pass, 0 discrepancy, 0 fail"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS") && l.contains("4 arcs")).count(), 4);
}

#[test]
fn euler_check_passes_on_fixtures() {
    let paths: Vec<String> = ["0_0", "1_1", "3_1", "3_5"].iter().map(|n| fixture(n)).collect();
    let mut args = vec!["euler-check"];
    args.extend(paths.iter().map(String::as_str));
    let o = tanglekh(&args);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn expand_prints_closed_form_and_generators() {
    let o = tanglekh(&["expand", "4", "1", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("P = x^-2y^-7 + 3x^-1y^-6 + 3y^-5 + xy^-4"));
    assert!(text.contains("generators = (-2,-7) + 3(-1,-6) + 3(0,-5) + (1,-4)"));
    assert_eq!(tanglekh(&["expand", "2", "1", "1"]).status.code(), Some(1));
}

#[test]
fn reduce_trace_and_fallback() {
    let o = tanglekh(&["reduce", "--trace", &fixture("2_4")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("remove arc")).count(), 3);
    assert!(text.contains("P = y^-1 + 2x + x^2y"));
    let o = tanglekh(&["reduce", "--trace", &fixture("3_1")]);
    assert!(stdout(&o).contains("brute force"));
    assert!(stdout(&o).contains("P = x^-3y^-9 + x^-2y^-5 + y^-3 + y^-1"));
}

#[test]
fn dump_complex_is_json() {
    let o = tanglekh(&["dump-complex", &fixture("1_1")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["blocks"].is_array());
}
