use lucky_web::{dyck_view, lucky_table, simulate};
use serde_json::{json, Value};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn simulate_reports_lucky_cars() {
    let v = parse(simulate("2 4 2 3 1"));
    assert_eq!(v["lucky_cars"], json!([1, 2, 5]));
    assert_eq!(v["cars"][2]["spot"], json!(3));
    assert_eq!(v["parking_function"], json!(true));
    let v = parse(simulate("2,2"));
    assert_eq!(v["cars"][1]["spot"], Value::Null);
    assert!(parse(simulate("0 1"))["error"].is_string());
}

#[test]
fn table_matches_small_case() {
    let v = parse(lucky_table(3, "all"));
    assert_eq!(v["rows"][0], json!(["8", "5", "3"]));
    assert_eq!(v["functions"], json!(16));
    assert!(parse(lucky_table(8, "all"))["error"].is_string());
    assert!(parse(lucky_table(3, "x"))["error"].is_string());
}

#[test]
fn dyck_view_from_prefs_and_paths() {
    let v = parse(dyck_view("7 7 6 2 2 2 1 1", 0));
    assert_eq!(v["path"], "NNENNNEEEENENNEE");
    assert_eq!(v["increasing"], "(1,1,2,2,2,6,7,7)");
    let v = parse(dyck_view("NENENNNEENNNENEEEENE", 5));
    assert_eq!(v["split"]["big"], "NENENNNEEENE");
    assert_eq!(v["split"]["small"], "NNENEE");
    let v = parse(dyck_view("NNNEEE", 3));
    assert!(v["split"]["error"].is_string());
    assert!(parse(dyck_view("NEEN", 0))["error"].is_string());
}
