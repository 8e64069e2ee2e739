use std::process::{Command, Output};

fn fdlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdlat")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn estimate_json_row() {
    let out = fdlat(&["estimate", "--r", "3", "--n", "9", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["flat"], "24");
    assert_eq!(v["g_doublestar"], "26");
    assert_eq!(v["g_upper"], "35");
}

#[test]
fn table_csv_header_and_rows() {
    let out = fdlat(&["table", "t54", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,flat,g_doublestar,flat_sci,g_doublestar_sci,ratio");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].ends_with(",1.562662e88,1.567888e88,1.003344482"));
}

#[test]
fn table_output_is_deterministic() {
    let a = fdlat(&["--jobs", "1", "table", "t51", "--format", "json"]);
    let b = fdlat(&["table", "t51", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gmin_text_and_json() {
    let out = fdlat(&["gmin", "--r", "4", "--k", "20000"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("Gmin(FD(4)^k) for k = 20000: Ambiguous {20,21}"));

    let out = fdlat(&["gmin", "--r", "3", "--k", "10^88", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["outcome"]["exact"], 300);
}

#[test]
fn verify_small_separation_passes() {
    let out = fdlat(&["verify", "separation", "--r", "3", "--r-max", "6", "--n-max", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let pairs: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["pair"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(pairs, ["flat3/g3", "flat4/g4", "flat5/g5", "flat6/g6", "flat3/g3**"]);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("\"pass\":true"));
}

#[test]
fn oracle_subcommands() {
    let out = fdlat(&["oracle", "sp-exact", "--poset", "crown", "--n", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"value\":2"));
    let out = fdlat(&["oracle", "lemma", "--r", "4"]);
    assert!(out.status.success());
    let out = fdlat(&["oracle", "family", "--r", "3", "--n", "9"]);
    assert!(out.status.success());
    let out = fdlat(&["oracle", "min-generating", "--r", "2", "--k", "2"]);
    assert!(out.status.success());
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["estimate", "--r", "2", "--n", "9"][..],
        &["gmin", "--r", "3", "--k", "1"],
        &["gmin", "--r", "3", "--k", "abc"],
        &["verify", "min_location", "--n", "3", "--n-max", "301"],
        &["oracle", "sp-exact", "--n", "7"],
        &["table", "t99"],
    ] {
        let out = fdlat(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}
