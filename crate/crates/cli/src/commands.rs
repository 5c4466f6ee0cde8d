use std::fmt::Write as _;
use std::fs;

use serde_json::json;

use lucky_core::closed_forms::rho_asymptotic;
use lucky_core::correction::{fit_correction, gather_samples_with, DegreeClaim};
use lucky_core::dyck::{
    decreasing_to_dyck, dyck_to_decreasing, dyck_to_increasing, increasing_to_dyck, merge, peaks,
    reflect_antidiagonal, split_at_column, DyckPath,
};
use lucky_core::numeric::rational_to_f64;
use lucky_core::parking::{is_parking_function, CarResult};
use lucky_core::reference::subdiagonal_reference;
use lucky_core::{park, PreferenceVector, Variant};

use crate::data::{column_closed, Candidates, Cell, Data};
use crate::render::{json_int, matrix, vector, Meta};
use crate::verify::run_suite;
use crate::{
    CliError, CliResult, Command, Direction, ExportFormat, Outcome, Sequence, SimFormat, Source,
    TableKind,
};

pub fn dispatch(cmd: &Command, data: &Data) -> CliResult<Outcome> {
    match cmd {
        Command::Simulate { prefs, format } => simulate(prefs, *format),
        Command::Table { kind, n, format, source, variant, provenance } => {
            table(data, *kind, *n, *format, *source, (*variant).into(), *provenance)
        }
        Command::Verify { suite, nmax } => {
            let checks = run_suite(*suite, *nmax, data)?;
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(out, "{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            let _ = writeln!(out, "{} checks, {failed} failed", checks.len());
            Ok(Outcome { stdout: out, code: u8::from(failed > 0) })
        }
        Command::Bijection { direction, input, column, grid } => {
            bijection(*direction, input, *column, *grid)
        }
        Command::Fit { j, oracle_nmax } => fit(data, *j, *oracle_nmax),
        Command::Export { name, nmax, format, output, provenance } => {
            let text = export(data, *name, *nmax, *format, *provenance)?;
            match output {
                Some(path) => {
                    fs::write(path, text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
    }
}

fn parse_prefs(args: &[String]) -> CliResult<PreferenceVector> {
    Ok(args.join(" ").parse::<PreferenceVector>()?)
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn simulate(args: &[String], format: SimFormat) -> CliResult<Outcome> {
    let p = parse_prefs(args)?;
    let out = park(&p);
    let code = u8::from(!out.success);
    let text = match format {
        SimFormat::Json => {
            let cars: Vec<_> = out
                .car_spot
                .iter()
                .map(|r| match r {
                    CarResult::Parked(s) => json!(s),
                    CarResult::Exited => json!(null),
                })
                .collect();
            let v = json!({
                "preferences": p.as_slice(),
                "parking_function": out.success,
                "spot_of_car": cars,
                "car_in_spot": out.assignment,
                "lucky_cars": out.lucky_cars,
                "lucky_spots": out.lucky_spots,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        SimFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "preferences {p}");
            for (i, r) in out.car_spot.iter().enumerate() {
                let pref = p.pref(i + 1);
                let _ = match r {
                    CarResult::Parked(spot) if *spot == pref => {
                        writeln!(s, "car {} prefers {pref} parks in {spot} lucky", i + 1)
                    }
                    CarResult::Parked(spot) => writeln!(s, "car {} prefers {pref} parks in {spot}", i + 1),
                    CarResult::Exited => writeln!(s, "car {} prefers {pref} exits", i + 1),
                };
            }
            let _ = writeln!(s, "lucky cars {}", list(&out.lucky_cars));
            let _ = writeln!(s, "lucky spots {}", list(&out.lucky_spots));
            let _ = writeln!(s, "parking function {}", if out.success { "yes" } else { "no" });
            s
        }
    };
    Ok(Outcome { stdout: text, code })
}

fn table(
    data: &Data,
    kind: TableKind,
    n: usize,
    format: crate::Format,
    source: Source,
    variant: Variant,
    provenance: bool,
) -> CliResult<Outcome> {
    if n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let text = match kind {
        TableKind::Q | TableKind::Qinc | TableKind::Qdec => {
            let variant = match kind {
                TableKind::Q => Variant::All,
                TableKind::Qinc => Variant::WeaklyIncreasing,
                _ => Variant::WeaklyDecreasing,
            };
            let rows = data.q_cells(n, variant, source)?;
            let meta = Meta { kind: "q", n, variant, source };
            matrix(&meta, &rows, format, provenance)
        }
        TableKind::Columns => {
            let cells = data.column_cells(n, variant, source)?;
            let meta = Meta { kind: "columns", n, variant, source };
            vector(&meta, "j", &cells, format, provenance)
        }
        TableKind::Distribution => {
            let cells = data.distribution_cells(n, variant, source)?;
            let meta = Meta { kind: "distribution", n, variant, source };
            vector(&meta, "k", &cells, format, provenance)
        }
    };
    Ok(Outcome::ok(text))
}

fn parse_path(s: &str) -> CliResult<DyckPath> {
    if s == "-" {
        return Ok(DyckPath::empty());
    }
    Ok(s.parse::<DyckPath>()?)
}

fn single_path(input: &[String]) -> CliResult<DyckPath> {
    match input {
        [one] => parse_path(one),
        _ => Err(CliError::usage("expected exactly one path string")),
    }
}

fn show_path(p: &DyckPath) -> String {
    if p.size() == 0 {
        "-".into()
    } else {
        p.to_string()
    }
}

fn bijection(dir: Direction, input: &[String], column: Option<usize>, grid: bool) -> CliResult<Outcome> {
    let mut s = String::new();
    let drawn: DyckPath;
    let round_trip = |ok: bool| -> CliResult<&'static str> {
        if ok {
            Ok("round trip ok")
        } else {
            Err(CliError::negative("round trip failed"))
        }
    };
    match dir {
        Direction::Inc2path | Direction::Dec2path => {
            let p = parse_prefs(input)?;
            if !is_parking_function(&p) {
                return Err(CliError::negative(format!("{p} is not a parking function")));
            }
            let (path, back) = if dir == Direction::Inc2path {
                let path = increasing_to_dyck(&p).map_err(domain)?;
                let back = dyck_to_increasing(&path)?;
                (path, back)
            } else {
                let path = decreasing_to_dyck(&p).map_err(domain)?;
                let back = dyck_to_decreasing(&path)?;
                (path, back)
            };
            let _ = writeln!(s, "{path}");
            let _ = writeln!(s, "{}", round_trip(back == p)?);
            drawn = path;
        }
        Direction::Path2inc | Direction::Path2dec => {
            let path = single_path(input)?;
            if path.size() == 0 {
                return Err(CliError::usage("the empty path has no parking function"));
            }
            let (p, back) = if dir == Direction::Path2inc {
                let p = dyck_to_increasing(&path)?;
                let back = increasing_to_dyck(&p)?;
                (p, back)
            } else {
                let p = dyck_to_decreasing(&path)?;
                let back = decreasing_to_dyck(&p)?;
                (p, back)
            };
            let _ = writeln!(s, "{p}");
            let _ = writeln!(s, "{}", round_trip(back == path)?);
            drawn = path;
        }
        Direction::Split => {
            let j = column.ok_or_else(|| CliError::usage("split needs --column"))?;
            let path = single_path(input)?;
            let (big, small, k) = split_at_column(&path, j).map_err(domain)?;
            let _ = writeln!(s, "big {}", show_path(&big));
            let _ = writeln!(s, "small {}", show_path(&small));
            let _ = writeln!(s, "k {k}");
            let _ = writeln!(s, "{}", round_trip(merge(&big, &small, j)? == path)?);
            drawn = path;
        }
        Direction::Merge => {
            let j = column.ok_or_else(|| CliError::usage("merge needs --column"))?;
            let [big, small] = input else {
                return Err(CliError::usage("merge takes two paths: BIG SMALL"));
            };
            let (big, small) = (parse_path(big)?, parse_path(small)?);
            let path = merge(&big, &small, j).map_err(domain)?;
            let _ = writeln!(s, "{path}");
            let back = split_at_column(&path, j)?;
            let _ = writeln!(s, "{}", round_trip(back == (big, small.clone(), small.size()))?);
            drawn = path;
        }
        Direction::Reflect => {
            let path = single_path(input)?;
            let r = reflect_antidiagonal(&path);
            let _ = writeln!(s, "{}", show_path(&r));
            let _ = writeln!(s, "{}", round_trip(reflect_antidiagonal(&r) == path)?);
            drawn = r;
        }
        Direction::Peaks => {
            let path = single_path(input)?;
            for pk in peaks(&path) {
                let _ = writeln!(
                    s,
                    "car {} spot {} corner ({},{})",
                    pk.car, pk.spot, pk.corner.0, pk.corner.1
                );
            }
            if path.size() > 0 {
                let dec = dyck_to_decreasing(&path)?;
                let out = park(&dec);
                let lucky: Vec<_> = out.lucky_cars.iter().map(|&c| (c, dec.pref(c))).collect();
                let mut from_peaks: Vec<_> = peaks(&path).iter().map(|pk| (pk.car, pk.spot)).collect();
                from_peaks.sort_unstable();
                let agree = lucky == from_peaks;
                let _ = writeln!(
                    s,
                    "lucky pairs of {dec} {}",
                    if agree { "match" } else { "differ" }
                );
                if !agree {
                    return Err(CliError::negative("peaks differ from lucky pairs"));
                }
            }
            drawn = path;
        }
    }
    if grid {
        s.push_str(&drawn.render_grid());
    }
    Ok(Outcome::ok(s))
}

/// An input outside a map's domain is a negative result, not a usage error.
fn domain(e: lucky_core::Error) -> CliError {
    let mut c = CliError::from(e);
    if matches!(c.code, 2) {
        c.code = 1;
    }
    c
}

fn fit(data: &Data, j: usize, oracle_nmax: usize) -> CliResult<Outcome> {
    if j == 0 {
        return Err(CliError::usage("j must be at least 1"));
    }
    let limit = Variant::All.limit(data.settings.allow_long);
    if oracle_nmax > limit {
        return Err(CliError::usage(format!(
            "--oracle-nmax {oracle_nmax} exceeds the enumeration limit {limit}"
        )));
    }
    let samples = gather_samples_with(j, oracle_nmax, |n| {
        data.table(n, Variant::All)
            .map(|t| t.column_sums())
            .map_err(|e| lucky_core::Error::Invariant(e.message))
    })?;
    let fit = fit_correction(j, &samples)?;
    let mut s = String::new();
    let exploratory = fit.is_exploratory();
    if exploratory {
        let _ = writeln!(s, "exploratory fit: every sample is used for interpolation, nothing is held out");
    }
    let _ = writeln!(s, "j {j}");
    let _ = writeln!(s, "f(n) {}", fit.f_poly.display_in("n"));
    let held = fit.held_out();
    let claim = match &fit.degree_claim {
        DegreeClaim::Verified => format!("verified on held-out n = {}", list(&held)),
        DegreeClaim::Unverified => "unverified".to_string(),
        DegreeClaim::Refuted(ns) if ns.is_empty() => "refuted: degree exceeds j - 2".to_string(),
        DegreeClaim::Refuted(ns) => format!("refuted at n = {}", list(ns)),
    };
    let _ = writeln!(s, "degree at most {} {claim}", j.saturating_sub(2));
    let _ = writeln!(s, "r_j {}", fit.r_j);
    let rho = &fit.predicted_rho;
    let _ = writeln!(
        s,
        "rho {} - ({})*e^-{j} = {:.6}{}",
        rho.rational_part,
        rho.exp_coefficient,
        rho.numeric,
        if exploratory { " (exploratory)" } else { "" }
    );
    if let Ok(known) = rho_asymptotic(j) {
        let agrees = known.exp_coefficient == fit.r_j;
        let _ = writeln!(s, "known constant {}", if agrees { "matches" } else { "differs" });
    }
    let _ = writeln!(s, "samples");
    let fvals = lucky_core::correction::extract_f_values(j, &fit.samples_used)?;
    for (sample, (_, f)) in fit.samples_used.iter().zip(&fvals) {
        let role = if fit.support.contains(&sample.n) { "fit" } else { "held-out" };
        let _ = writeln!(
            s,
            "n={} S={} f={} ({:.6}) {} {role}",
            sample.n,
            sample.value,
            f,
            rational_to_f64(f),
            sample.source
        );
    }
    let code = u8::from(matches!(fit.degree_claim, DegreeClaim::Refuted(_)));
    Ok(Outcome { stdout: s, code })
}

fn export(data: &Data, seq: Sequence, nmax: usize, format: ExportFormat, provenance: bool) -> CliResult<String> {
    let first = match seq {
        Sequence::Subdiagonal => 2,
        Sequence::TotalLucky => 1,
        Sequence::Column(j) => j,
    };
    if nmax < first {
        return Err(CliError::usage(format!("{seq} starts at n = {first}")));
    }
    let mut rows: Vec<(usize, Cell)> = Vec::new();
    for n in first..=nmax {
        let cell = match seq {
            Sequence::TotalLucky => data.total_lucky_cell(n, Source::Both)?,
            Sequence::Subdiagonal | Sequence::Column(_) => {
                let j = if let Sequence::Column(j) = seq { j } else { n - 1 };
                let oracle = if data.within_limit(n, Variant::All) {
                    Some(data.table(n, Variant::All)?.column_sums()[j - 1].clone())
                } else {
                    None
                };
                let embedded = match seq {
                    Sequence::Subdiagonal => subdiagonal_reference(n),
                    _ => lucky_core::reference::spot_lucky_reference(n, j),
                };
                Candidates { oracle, closed: column_closed(n, Variant::All, j)?, embedded }
                    .resolve(Source::Both, &format!("{seq} at n = {n}"))?
            }
        };
        if cell.value.is_none() {
            return Err(CliError::usage(format!(
                "{seq} at n = {n} needs enumeration beyond the limit; pass --allow-long"
            )));
        }
        rows.push((n, cell));
    }
    let mut out = String::new();
    match format {
        ExportFormat::Bfile => {
            if provenance {
                for (n, c) in &rows {
                    let _ = writeln!(out, "# n={n} {}", c.tag());
                }
            }
            for (n, c) in &rows {
                let _ = writeln!(out, "{n} {c}");
            }
        }
        ExportFormat::Csv => {
            let _ = writeln!(out, "n,value{}", if provenance { ",provenance" } else { "" });
            for (n, c) in &rows {
                let _ = write!(out, "{n},{c}");
                if provenance {
                    let _ = write!(out, ",{}", c.tag());
                }
                out.push('\n');
            }
        }
        ExportFormat::Json => {
            let values: Vec<_> = rows
                .iter()
                .map(|(n, c)| {
                    let mut v = json!({ "n": n, "value": json_int(c.value.as_ref().expect("checked above")) });
                    if provenance {
                        v["provenance"] = json!(c.tag());
                    }
                    v
                })
                .collect();
            let v = json!({ "sequence": seq.to_string(), "values": values });
            out = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
        }
    }
    Ok(out)
}
