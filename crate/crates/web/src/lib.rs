//! Browser bindings. Each export takes plain strings or numbers and returns
//! a JSON string; failures come back as `{"error": "..."}`.

use lucky_core::dyck::{self, DyckPath};
use lucky_core::oracle::run_oracle_by_simulation;
use lucky_core::parking::CarResult;
use lucky_core::{park, PreferenceVector, Variant};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest table the page will compute; enumeration runs on the UI thread.
pub const MAX_TABLE_N: usize = 7;

fn reply(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Runs the parking process on a preference list such as `"2 4 2 3 1"`.
#[wasm_bindgen]
pub fn simulate(prefs: &str) -> String {
    reply(simulate_value(prefs))
}

fn simulate_value(prefs: &str) -> Result<Value, String> {
    let p: PreferenceVector = prefs.parse().map_err(|e| format!("{e}"))?;
    let out = park(&p);
    let cars: Vec<Value> = out
        .car_spot
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let spot = match r {
                CarResult::Parked(s) => json!(s),
                CarResult::Exited => Value::Null,
            };
            json!({
                "car": i + 1,
                "pref": p.pref(i + 1),
                "spot": spot,
                "lucky": out.lucky_cars.contains(&(i + 1)),
            })
        })
        .collect();
    Ok(json!({
        "n": p.len(),
        "cars": cars,
        "car_in_spot": out.assignment,
        "lucky_cars": out.lucky_cars,
        "lucky_spots": out.lucky_spots,
        "parking_function": out.success,
    }))
}

/// Lucky table by enumeration. `variant` is `all`, `inc` or `dec`.
#[wasm_bindgen]
pub fn lucky_table(n: usize, variant: &str) -> String {
    reply(table_value(n, variant))
}

fn table_value(n: usize, variant: &str) -> Result<Value, String> {
    let v = match variant {
        "all" => Variant::All,
        "inc" => Variant::WeaklyIncreasing,
        "dec" => Variant::WeaklyDecreasing,
        _ => return Err(format!("unknown variant {variant:?}")),
    };
    if n == 0 || n > MAX_TABLE_N {
        return Err(format!("n must be between 1 and {MAX_TABLE_N}"));
    }
    let res = run_oracle_by_simulation(n, v, false).map_err(|e| e.to_string())?;
    let strs = |xs: &[lucky_core::ExactInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let rows: Vec<Vec<String>> = res.table.q.iter().map(|r| strs(r)).collect();
    Ok(json!({
        "n": n,
        "variant": variant,
        "rows": rows,
        "row_sums": strs(&res.table.row_sums()),
        "column_sums": strs(&res.table.column_sums()),
        "total": res.table.total().to_string(),
        "functions": res.leaves,
    }))
}

/// Dyck path view of a monotone parking function or of an N/E path string.
///
/// `input` is either a path (`"NNEE"`) or a preference list; a preference
/// list goes through the increasing or decreasing map, whichever applies.
/// With `column > 0` the path is also split at that column.
#[wasm_bindgen]
pub fn dyck_view(input: &str, column: usize) -> String {
    reply(dyck_value(input, column))
}

fn dyck_value(input: &str, column: usize) -> Result<Value, String> {
    let s = input.trim();
    let path: DyckPath = if s.chars().all(|c| matches!(c, 'N' | 'E' | 'n' | 'e')) {
        s.to_uppercase().parse().map_err(|e| format!("{e}"))?
    } else {
        let p: PreferenceVector = s.parse().map_err(|e| format!("{e}"))?;
        dyck::increasing_to_dyck(&p)
            .or_else(|_| dyck::decreasing_to_dyck(&p))
            .map_err(|_| "not a weakly increasing or decreasing parking function".to_string())?
    };
    let peaks: Vec<Value> = dyck::peaks(&path)
        .iter()
        .map(|pk| json!({ "car": pk.car, "spot": pk.spot }))
        .collect();
    let pref_string = |r: lucky_core::Result<PreferenceVector>| r.map(|p| p.to_string()).ok();
    let mut v = json!({
        "path": path.to_string(),
        "grid": path.render_grid(),
        "increasing": pref_string(dyck::dyck_to_increasing(&path)),
        "decreasing": pref_string(dyck::dyck_to_decreasing(&path)),
        "reflected": dyck::reflect_antidiagonal(&path).to_string(),
        "peaks": peaks,
    });
    if column > 0 {
        v["split"] = match dyck::split_at_column(&path, column) {
            Ok((big, small, k)) => json!({
                "column": column,
                "big": big.to_string(),
                "small": small.to_string(),
                "k": k,
            }),
            Err(e) => json!({ "column": column, "error": e.to_string() }),
        };
    }
    Ok(v)
}
