use std::process::{Command, Output};

fn springer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer"))
        .args(args)
        .env_remove("SPRINGER_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn xn_small() {
    let o = springer(&["xn", "--N", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[[5],[1,2,2]]\n");
    assert_eq!(stdout(&springer(&["xn", "--N", "4"])), "[[2,2],[1,3]]\n");
    assert_eq!(stdout(&springer(&["xn", "--N", "2"])), "[]\n");
    assert_eq!(stdout(&springer(&["xn", "--N", "2", "--tilde"])), "[[1,1]]\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(springer(&["bogus"]).status.code(), Some(2));
    assert_eq!(springer(&["xn"]).status.code(), Some(2));
    assert_eq!(springer(&["split", "--group", "sl", "--lambda", "1,x", "--q", "3"]).status.code(), Some(2));
    assert_eq!(springer(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn help_lists_every_command() {
    let o = springer(&["--help"]);
    let text = stdout(&o);
    for c in ["series", "xn", "split", "flags", "restrict", "tables", "verify"] {
        assert!(text.contains(c), "{c} missing from help");
    }
}

#[test]
fn verify_suite_passes() {
    let o = springer(&["verify", "--suite", "spin-series", "--N-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn restrict_tsv_shape() {
    let o = springer(&["restrict", "--n", "4", "--d", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "lambda\tlambda_p\tmu\tmu_p\tcase\tmultiplicity\ttable_value");
    for l in lines {
        assert_eq!(l.split('\t').count(), 7);
        assert!(!l.contains('"'));
    }
}

#[test]
fn tables_json_keys() {
    let o = springer(&["tables", "--group", "sl", "--n", "4", "--xi-order", "2", "--q", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["group", "q", "rows", "series"]);
    let row = &v["rows"][0];
    let keys: Vec<_> = row.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["classes", "lambda", "rho", "values"]);
}

#[test]
fn refused_tables_exit_2() {
    let o = springer(&["tables", "--group", "sl", "--n", "3", "--xi-order", "3", "--q", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = springer(&["tables", "--group", "spin", "--N", "10", "--q", "3", "--non-split"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["split", "--group", "spin", "--lambda", "1,2,2,3", "--q", "3"];
    let a = springer(&args);
    let b = springer(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn budget_env_caps_enumeration() {
    let o = Command::new(env!("CARGO_BIN_EXE_springer"))
        .args(["flags", "--group", "sl", "--lambda", "2,4", "--d", "2", "--q", "3", "--no-orbits"])
        .env("SPRINGER_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("springer-xn-{}.json", std::process::id()));
    let o = springer(&["xn", "--N", "7", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("[["));
}
