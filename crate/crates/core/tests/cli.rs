use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn infobdd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infobdd")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(suffix: &str, text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn measures_table_for_example() {
    let o = infobdd(&["measures", &fixture("example1.blif")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split_whitespace().collect();
    assert_eq!(row, ["f", "0.6250", "0.9544", "0.4056", "0.9056", "0.9056"]);
}

#[test]
fn pla_and_blif_agree() {
    let args = |f: &str| vec!["measures".to_string(), f.to_string(), "--format".into(), "csv".into()];
    let blif = stdout(&infobdd(
        &args(&fixture("example1.blif"))
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    ));
    let pla = stdout(&infobdd(
        &args(&fixture("example1.pla"))
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    ));
    assert_eq!(blif, pla);
}

#[test]
fn measures_selects_outputs_and_vars() {
    let o = infobdd(&[
        "measures",
        &fixture("c17.blif"),
        "--outputs",
        "23",
        "--vars",
        "3,7",
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains(",H_cond,")).count(), 2);
    assert!(!text.contains(",22,"));
    let o = infobdd(&["measures", &fixture("c17.blif"), "--vars", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn truth_vector_files_load() {
    let f = temp_file(".tt", "# parity and example\np 0110\nq 1000\n");
    let o = infobdd(&["measures", f.path().to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains(",p,,H,1.000000\n"), "{text}");
    assert!(text.contains(",p,x1,H_cond,1.000000\n"), "{text}");
    assert!(text.contains(",q,,p,0.250000\n"), "{text}");
}

#[test]
fn reorder_info_trace() {
    let o = infobdd(&["reorder", &fixture("example1.blif"), "--method", "info", "--trace"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("order x1,x2,x3\n"), "{text}");
    assert!(text.contains("x1=0.4056 x2=0.9056 x3=0.9056"), "{text}");
}

#[test]
fn compare_example_rows() {
    let o = infobdd(&[
        "compare",
        &fixture("example1.blif"),
        "--methods",
        "info,sift,none",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "circuit,method,size,millis\nexample1,info,3,\nexample1,sift,3,\nexample1,none,3,\n"
    );
}

#[test]
fn compare_none_matches_measures_size() {
    for file in ["c17.blif", "s27.blif"] {
        let m = stdout(&infobdd(&["measures", &fixture(file), "--format", "csv"]));
        let nodes = m.lines().last().unwrap().rsplit(',').next().unwrap().to_string();
        let c = stdout(&infobdd(&[
            "compare",
            &fixture(file),
            "--methods",
            "none",
            "--format",
            "csv",
        ]));
        let size = c.lines().nth(1).unwrap().split(',').nth(2).unwrap().to_string();
        assert_eq!(nodes, size, "{file}");
    }
}

#[test]
fn timing_is_opt_in() {
    let o = infobdd(&[
        "compare",
        &fixture("c17.blif"),
        "--methods",
        "sift",
        "--format",
        "json",
        "--timing",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v[0]["millis"].is_number());
    let o = infobdd(&["compare", &fixture("c17.blif"), "--methods", "sift", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v[0]["millis"].is_null());
}

#[test]
fn oracle_check_passes_on_fixtures() {
    for file in ["example1.blif", "example1.pla", "c17.blif", "s27.blif"] {
        let o = infobdd(&["oracle-check", &fixture(file)]);
        assert_eq!(o.status.code(), Some(0), "{file}: {}{}", stdout(&o), stderr(&o));
    }
    let o = infobdd(&["oracle-check", &fixture("s27.blif"), "--quiet"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn oracle_check_respects_max_n() {
    let o = infobdd(&["oracle-check", &fixture("c17.blif"), "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(infobdd(&[]).status.code(), Some(2));
    assert_eq!(infobdd(&["measures", "--bogus", "x"]).status.code(), Some(2));
    assert_eq!(infobdd(&["compare", "x", "--methods", "anneal"]).status.code(), Some(2));
    assert_eq!(infobdd(&["--version"]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_1_with_location() {
    let f = temp_file(".blif", ".model bad\n.inputs a\n.outputs y\n.names a y\nx 1\n.end\n");
    let o = infobdd(&["measures", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));

    let f = temp_file(
        ".blif",
        ".model cyc\n.inputs a\n.outputs y\n.names a z y\n11 1\n.names y z\n1 1\n.end\n",
    );
    let o = infobdd(&["reorder", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cycle"));
}

#[test]
fn node_limit_names_the_gate() {
    let o = infobdd(&["measures", &fixture("c17.blif"), "--node-limit", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("gate `"), "{}", stderr(&o));
}
