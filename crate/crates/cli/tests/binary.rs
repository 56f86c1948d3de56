use std::process::{Command, Output};

fn arone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arone")).env_remove("ARONE_CACHE_DIR").args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_json() {
    let o = arone(&["table", "--d-max", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"1":{"0":"Z"},"2":{"1":"Z/2"}}"#);
}

#[test]
fn verify_passes_with_exit_zero() {
    let o = arone(&["verify", "h1", "--d", "2..9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 8);
    assert!(stdout(&o).lines().all(|l| l.contains(r#""verdict":"pass""#)));
}

#[test]
fn generator_dump() {
    let o = arone(&["dump", "generator", "--kind", "h1", "--d", "4"]);
    assert_eq!(stdout(&o).trim(), "2*<1> + 3*<2> + 2*<3>");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(arone(&["verify", "foo"]).status.code(), Some(2));
    assert_eq!(arone(&["homology", "--d", "6", "--p", "4", "--N", "1"]).status.code(), Some(2));
    // E_d only exists for prime powers
    assert_eq!(arone(&["dump", "ed-matrix", "--d", "6", "--gen", "delta"]).status.code(), Some(2));
}

#[test]
fn resource_guard_exits_three() {
    let o = arone(&["--budget", "1000", "homology", "--d", "20"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn cache_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = arone(&["--cache-dir", d, "table", "--d-max", "7", "--format", "csv"]);
    let warm = arone(&["--cache-dir", d, "table", "--d-max", "7", "--format", "csv"]);
    let off = arone(&["--no-cache", "table", "--d-max", "7", "--format", "csv"]);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, off.stdout);
    assert!(!stdout(&arone(&["--cache-dir", d, "cache", "list"])).is_empty());
    assert_eq!(arone(&["--cache-dir", d, "cache", "clear"]).status.code(), Some(0));
    assert!(stdout(&arone(&["--cache-dir", d, "cache", "list"])).is_empty());
}
