use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lucky_in(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lucky"));
    cmd.args(args).env_remove("LUCKY_CONFIG");
    match cache {
        Some(dir) => cmd.env("LUCKY_CACHE_DIR", dir),
        None => cmd.env_remove("LUCKY_CACHE_DIR").arg("--no-cache"),
    };
    cmd.output().unwrap()
}

fn lucky(args: &[&str]) -> Output {
    lucky_in(None, args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn simulate_exit_codes() {
    let o = lucky(&["simulate", "2", "4", "2", "3", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("lucky cars 1 2 5\n"));
    assert!(s.contains("lucky spots 1 2 4\n"));

    let o = lucky(&["simulate", "2", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("car 2 prefers 2 exits"));

    let o = lucky(&["simulate", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lucky cars 1 2 3\n"));

    for bad in [&["simulate", "x"][..], &["simulate", "0", "1"], &["simulate", "-1"], &["simulate"]] {
        assert_eq!(lucky(bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn simulate_json() {
    let o = lucky(&["simulate", "--format", "json", "2", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["parking_function"], Value::Bool(false));
    assert_eq!(v["spot_of_car"][1], Value::Null);
    assert_eq!(v["car_in_spot"], serde_json::json!([null, 1]));
}

#[test]
fn table_formats() {
    let text = stdout(&lucky(&["table", "columns", "5"]));
    assert_eq!(text, "# columns n=5 variant=all source=both\n1296 908 783 708 625\n");

    let csv = stdout(&lucky(&["table", "q", "3", "--format", "csv"]));
    assert_eq!(csv, "i,j1,j2,j3\n1,8,5,3\n2,5,4,3\n3,3,2,3\n");

    let json: Value = serde_json::from_str(&stdout(&lucky(&[
        "table", "q", "7", "--format", "json", "--provenance",
    ])))
    .unwrap();
    assert_eq!(json["rows"][3][3], serde_json::json!(22788));
    assert_eq!(json["rows"][6][3], serde_json::json!(5120));
    assert_eq!(json["provenance"][0][0], "oracle=closed-form=embedded");
    assert_eq!(json["provenance"][3][3], "oracle=embedded");
    assert_eq!(json["variant"], "all");
    assert_eq!(json["generator_version"], "1");
}

#[test]
fn table_sources() {
    // interior cells have no closed form
    let closed = stdout(&lucky(&["table", "q", "4", "--source", "closed"]));
    assert!(closed.lines().nth(2).unwrap().contains(" - "), "{closed}");

    let inc = stdout(&lucky(&["table", "distribution", "4", "--variant", "dec"]));
    assert!(inc.ends_with("1 6 6 1\n"));

    // beyond the enumeration limit every cell still has a closed form
    let o = lucky(&["table", "qdec", "20", "--provenance"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("1[closed-form] "));

    let o = lucky(&["table", "q", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--allow-long"));

    assert_eq!(lucky(&["table", "q", "12", "--source", "oracle"]).status.code(), Some(2));
    assert_eq!(lucky(&["table", "q", "0"]).status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let o = lucky(&["verify", "borders", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS borders")).count(), 7);
    assert!(s.ends_with("7 checks, 0 failed\n"));

    assert_eq!(lucky(&["verify", "spot-catalan", "12"]).status.code(), Some(0));
    assert_eq!(lucky(&["verify", "narayana", "8"]).status.code(), Some(0));
    assert_eq!(lucky(&["verify", "nosuch", "3"]).status.code(), Some(2));
    assert_eq!(lucky(&["verify", "borders", "12"]).status.code(), Some(2));
}

#[test]
fn bijection_commands() {
    let o = lucky(&["bijection", "dec2path", "7", "7", "6", "2", "2", "2", "1", "1"]);
    assert_eq!(stdout(&o), "NNENNNEEEENENNEE\nround trip ok\n");
    let o = lucky(&["bijection", "path2inc", "NNENNNEEEENENNEE"]);
    assert_eq!(stdout(&o), "(1,1,2,2,2,6,7,7)\nround trip ok\n");

    let o = lucky(&["bijection", "split", "--column", "3", "NNNEEE"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no peak in column 3"));

    let o = lucky(&["bijection", "merge", "--column", "5", "NENENNNEEENE", "NNENEE"]);
    assert_eq!(stdout(&o), "NENENNNEENNNENEEEENE\nround trip ok\n");
    let o = lucky(&["bijection", "merge", "--column", "1", "-", "-"]);
    assert_eq!(stdout(&o), "NE\nround trip ok\n");

    let o = lucky(&["bijection", "reflect", "NNENEE", "--grid"]);
    assert!(stdout(&o).starts_with("NNENEE\nround trip ok\n"));

    assert_eq!(lucky(&["bijection", "inc2path", "2", "1"]).status.code(), Some(1));
    assert_eq!(lucky(&["bijection", "path2dec", "NEEN"]).status.code(), Some(2));
    assert_eq!(lucky(&["bijection", "split", "NE"]).status.code(), Some(2));
}

#[test]
fn fit_reports() {
    let s = stdout(&lucky(&["fit", "3"]));
    assert!(s.starts_with("j 3\nf(n) 2/3*n - 1/3\ndegree at most 1 verified"));
    assert!(s.contains("known constant matches"));
    assert!(s.contains("n=10 S=1465709426 f=19/3 (6.333333) embedded held-out"));
    let s = stdout(&lucky(&["fit", "2", "--oracle-nmax", "4"]));
    assert!(s.contains("f(n) 1/4\n"));
    assert!(s.contains("n=5 S=908 f=1/4 (0.250000) embedded held-out"));
    assert_eq!(lucky(&["fit", "9"]).status.code(), Some(2));
}

#[test]
fn export_sequences() {
    let o = lucky(&["export", "subdiagonal", "8"]);
    assert_eq!(stdout(&o), "2 3\n3 11\n4 74\n5 708\n6 8733\n7 131632\n8 2342820\n");
    let o = lucky(&["export", "subdiagonal", "10", "--provenance"]);
    assert!(stdout(&o).contains("# n=10 embedded\n"));
    assert!(stdout(&o).ends_with("10 1116809255\n"));
    assert_eq!(lucky(&["export", "subdiagonal", "11"]).status.code(), Some(2));

    let o = lucky(&["export", "total-lucky", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,value\n1,1\n2,5\n3,36\n");
    let o = lucky(&["export", "column-3", "12", "--format", "json", "--provenance"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"][0]["n"], 3);
    assert_eq!(v["values"][9]["provenance"], "closed-form");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let o = lucky(&["export", "total-lucky", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&path).unwrap(), "1 1\n2 5\n3 36\n4 350\n");

    assert_eq!(lucky(&["export", "columns", "4"]).status.code(), Some(2));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = lucky_in(Some(dir.path()), &["table", "q", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let file = dir.path().join("lucky-all-n6-g1.txt");
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("# lucky oracle cache\nschema_version 1\n"));

    // a second run reads the entry back
    let again = lucky_in(Some(dir.path()), &["table", "q", "6"]);
    assert_eq!(stdout(&again), stdout(&o));

    let tampered = text.replacen("\ncounts\n", "\ncounts\n1", 1);
    assert_ne!(tampered, text);
    fs::write(&file, tampered).unwrap();
    let o = lucky_in(Some(dir.path()), &["table", "q", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("lucky-all-n6-g1.txt"));
    assert!(stderr(&o).contains("checksum mismatch"));
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lucky.toml");
    let cache = dir.path().join("cache");
    fs::write(&cfg, format!("cache_dir = {:?}\nthreads = 1\n", cache)).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lucky"))
        .args(["table", "qdec", "7"])
        .env("LUCKY_CONFIG", &cfg)
        .env_remove("LUCKY_CACHE_DIR")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(cache.join("lucky-weakly_decreasing-n7-g1.txt").exists());

    fs::write(&cfg, "bogus = 1\n").unwrap();
    let o = lucky(&["--config", cfg.to_str().unwrap(), "table", "q", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
