//! Identity suites: each closed form against enumeration, or two
//! independent evaluations against each other.

use std::fmt::{self, Display};

use lucky_core::closed_forms::{
    c_all, c_one, c_penultimate, c_two, car_lucky_count, decreasing_expected, decreasing_q,
    decreasing_spot_count_by_catalan, decreasing_spot_count_by_rows, decreasing_total,
    factorial_moment, increasing_expected, increasing_lucky_count, is_border, lucky_polynomial,
    mean_lucky, partial_pf_count, restricted_count, q_border, spot_lucky_count,
    variance_lucky, RestrictionSets,
};
use lucky_core::dyck::{
    decreasing_to_dyck, dyck_to_decreasing, dyck_to_increasing, enumerate_dyck,
    has_peak_in_column, increasing_to_dyck, merge, peaks, reflect_antidiagonal, split_at_column,
};
use lucky_core::numeric::{binomial, catalan, narayana, rational_from_int};
use lucky_core::oracle::{count_with_restrictions, lucky_mask_histogram};
use lucky_core::{ExactInt, Variant};

use crate::data::Data;
use crate::{CliError, CliResult, Suite};

/// Outcome of one identity at one `n`.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub identity: &'static str,
    pub n: usize,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(suite: &'static str, identity: &'static str, n: usize) -> Self {
        Check { suite, identity, n, cases: 0, failures: Vec::new() }
    }

    fn compare<T: PartialEq + Display>(&mut self, label: impl Display, expected: T, actual: T) {
        self.cases += 1;
        if expected != actual {
            self.failures.push(format!("{label}: expected {expected}, got {actual}"));
        }
    }

    fn holds(&mut self, label: impl Display, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(format!("{label}: does not hold"));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} n={} cases={} {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.n,
            self.cases,
            self.identity
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, " ({} failures; first: {first})", self.failures.len())?;
        }
        Ok(())
    }
}

pub const ALL_SUITES: [Suite; 13] = [
    Suite::Borders,
    Suite::RowSums,
    Suite::SpotLucky,
    Suite::Restricted,
    Suite::Distribution,
    Suite::Moments,
    Suite::Partial,
    Suite::SpotCatalan,
    Suite::Decreasing,
    Suite::Increasing,
    Suite::Narayana,
    Suite::Bijections,
    Suite::ColumnPeaks,
];

pub fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Borders => "borders",
        Suite::RowSums => "row-sums",
        Suite::SpotLucky => "spot-lucky",
        Suite::Restricted => "restricted",
        Suite::Distribution => "distribution",
        Suite::Moments => "moments",
        Suite::Partial => "partial",
        Suite::SpotCatalan => "spot-catalan",
        Suite::Decreasing => "decreasing",
        Suite::Increasing => "increasing",
        Suite::Narayana => "narayana",
        Suite::Bijections => "bijections",
        Suite::ColumnPeaks => "column-peaks",
        Suite::All => "all",
    }
}

/// Largest `n` a suite accepts.
pub fn suite_cap(s: Suite, allow_long: bool) -> usize {
    let long = usize::from(allow_long);
    match s {
        Suite::Borders | Suite::RowSums | Suite::SpotLucky | Suite::Distribution | Suite::Moments => {
            Variant::All.limit(allow_long)
        }
        // one full simulation per parking function
        Suite::Restricted => 8 + long,
        // brute force over t^s preference vectors
        Suite::Partial => 7 + long,
        Suite::SpotCatalan => 60,
        Suite::Decreasing | Suite::Increasing => Variant::WeaklyDecreasing.limit(allow_long),
        Suite::Narayana | Suite::Bijections | Suite::ColumnPeaks => 12 + 2 * long,
        Suite::All => usize::MAX,
    }
}

/// Runs `suite` for `n = 1..=nmax`. `all` caps each member at its own limit.
pub fn run_suite(suite: Suite, nmax: usize, data: &Data) -> CliResult<Vec<Check>> {
    if nmax == 0 {
        return Err(CliError::usage("nmax must be at least 1"));
    }
    let allow_long = data.settings.allow_long;
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in ALL_SUITES {
            out.extend(run_suite(s, nmax.min(suite_cap(s, allow_long)), data)?);
        }
        return Ok(out);
    }
    let cap = suite_cap(suite, allow_long);
    if nmax > cap {
        return Err(CliError::usage(format!(
            "suite {} goes up to n = {cap}{}",
            suite_name(suite),
            if allow_long { "" } else { " without --allow-long" }
        )));
    }
    let mut out = Vec::new();
    for n in 1..=nmax {
        out.extend(run_one(suite, n, data)?);
    }
    Ok(out)
}

fn run_one(suite: Suite, n: usize, data: &Data) -> CliResult<Vec<Check>> {
    let name = suite_name(suite);
    let mut checks = Vec::new();
    match suite {
        Suite::Borders => {
            let t = data.table(n, Variant::All)?;
            let mut c = Check::new(name, "border cells of the lucky table", n);
            for i in 1..=n {
                for j in (1..=n).filter(|&j| is_border(n, i, j)) {
                    c.compare(format!("q({i},{j})"), q_border(n, i, j)?, t.get(i, j).clone());
                }
            }
            checks.push(c);
        }
        Suite::RowSums => {
            let t = data.table(n, Variant::All)?;
            let mut c = Check::new(name, "car i lucky: (n+2-i)(n+1)^(n-2)", n);
            for (k, s) in t.row_sums().into_iter().enumerate() {
                c.compare(format!("car {}", k + 1), car_lucky_count(n, k + 1)?, s);
            }
            checks.push(c);
        }
        Suite::SpotLucky => {
            let t = data.table(n, Variant::All)?;
            let sums = t.column_sums();
            let mut c = Check::new(name, "spot j lucky for j <= 5 and j = n", n);
            for j in (1..=n).filter(|&j| j <= 5 || j == n) {
                c.compare(format!("spot {j}"), spot_lucky_count(n, j)?, sums[j - 1].clone());
            }
            checks.push(c);
        }
        Suite::Restricted => {
            let hist = lucky_mask_histogram(n)?;
            let mut c = Check::new(name, "prescribed lucky and unlucky cars, all disjoint pairs", n);
            // each car is lucky, unlucky or free: 3^n pairs
            for code in 0..3usize.pow(n as u32) {
                let (mut lucky, mut unlucky, mut rest) = (Vec::new(), Vec::new(), code);
                for car in 1..=n {
                    match rest % 3 {
                        1 => lucky.push(car),
                        2 => unlucky.push(car),
                        _ => {}
                    }
                    rest /= 3;
                }
                let r = RestrictionSets::new(n, lucky.clone(), unlucky.clone())?;
                let (lm, um) = r.masks();
                c.compare(
                    format!("L={lucky:?} U={unlucky:?}"),
                    restricted_count(&r)?,
                    ExactInt::from(count_with_restrictions(&hist, lm, um)),
                );
            }
            checks.push(c);
        }
        Suite::Distribution => {
            let d = data.distribution(n, Variant::All)?;
            let poly = lucky_polynomial(n)?;
            let mut c = Check::new(name, "lucky-count distribution: coefficients of the lucky polynomial", n);
            for k in 0..=n {
                c.compare(format!("c_{k}"), poly.coeff(k), rational_from_int(d.c(k)));
            }
            checks.push(c);
            let mut c = Check::new(name, "c_1, c_2, c_(n-1), c_n identities", n);
            c.compare("c_1", c_one(n), d.c(1));
            if n >= 2 {
                c.compare("c_2", c_two(n)?, d.c(2));
                c.compare("c_(n-1)", c_penultimate(n)?, d.c(n - 1));
            }
            c.compare("c_n", c_all(n), d.c(n));
            checks.push(c);
            let mut c = Check::new(name, "mean and variance of the lucky count", n);
            c.compare("mean", mean_lucky(n)?, d.mean());
            c.compare("variance", variance_lucky(n)?, d.variance());
            checks.push(c);
        }
        Suite::Moments => {
            let d = data.distribution(n, Variant::All)?;
            let mut c = Check::new(name, "falling factorial moments from the lucky polynomial", n);
            for l in 0..=n {
                c.compare(format!("l={l}"), factorial_moment(n, l)?, d.falling_factorial_moment(l));
            }
            checks.push(c);
        }
        Suite::Partial => {
            let t = n;
            let mut c = Check::new(name, "s cars on t spots all park: (t+1-s)(t+1)^(s-1)", t);
            for s in 1..=t {
                c.compare(format!("s={s}"), partial_pf_count(s, t)?, ExactInt::from(brute_partial(s, t)));
            }
            checks.push(c);
        }
        Suite::SpotCatalan => {
            let mut c = Check::new(name, "spot j lucky, weakly decreasing: row sum = Catalan convolution", n);
            for j in 1..=n {
                c.compare(
                    format!("j={j}"),
                    decreasing_spot_count_by_rows(n, j)?,
                    decreasing_spot_count_by_catalan(n, j)?,
                );
            }
            checks.push(c);
        }
        Suite::Decreasing => {
            let t = data.table(n, Variant::WeaklyDecreasing)?;
            let mut c = Check::new(name, "weakly decreasing lucky table closed form", n);
            for i in 1..=n {
                for j in 1..=n {
                    c.compare(format!("q({i},{j})"), decreasing_q(n, i, j)?, t.get(i, j).clone());
                }
            }
            checks.push(c);
            let mut c = Check::new(name, "weakly decreasing lucky table is symmetric", n);
            for i in 1..=n {
                for j in i + 1..=n {
                    c.compare(format!("q({i},{j})"), t.get(i, j), t.get(j, i));
                }
            }
            checks.push(c);
            let mut c = Check::new(name, "weakly decreasing: total C(2n,n)/2, mean (n+1)/2", n);
            let total = t.total();
            c.compare("total", decreasing_total(n)?, total.clone());
            c.compare("central binomial", binomial(2 * n as i64, n as i64), 2 * total.clone());
            c.compare(
                "mean",
                decreasing_expected(n)?,
                lucky_core::ExactRational::new(total, catalan(n as u64)),
            );
            checks.push(c);
        }
        Suite::Increasing => {
            let t = data.table(n, Variant::WeaklyIncreasing)?;
            let mut c = Check::new(name, "weakly increasing: position i lucky C_(i-1) C_(n-i+1)", n);
            let rows = t.row_sums();
            let cols = t.column_sums();
            for i in 1..=n {
                c.compare(format!("car {i}"), increasing_lucky_count(n, i)?, rows[i - 1].clone());
                c.compare(format!("spot {i}"), increasing_lucky_count(n, i)?, cols[i - 1].clone());
            }
            c.compare(
                "mean 3n/(n+2)",
                increasing_expected(n),
                lucky_core::ExactRational::new(t.total(), catalan(n as u64)),
            );
            checks.push(c);
        }
        Suite::Narayana => {
            let mut by_peaks = vec![0u64; n + 1];
            for p in enumerate_dyck(n) {
                by_peaks[peaks(&p).len()] += 1;
            }
            let mut c = Check::new(name, "Dyck paths by peaks: Narayana numbers", n);
            for k in 1..=n {
                c.compare(format!("k={k}"), narayana(n as u64, k as u64)?, ExactInt::from(by_peaks[k]));
            }
            if n <= Variant::WeaklyDecreasing.limit(data.settings.allow_long) {
                let d = data.distribution(n, Variant::WeaklyDecreasing)?;
                for k in 1..=n {
                    c.compare(format!("lucky k={k}"), narayana(n as u64, k as u64)?, d.c(k));
                }
            }
            checks.push(c);
        }
        Suite::Bijections => {
            let mut c = Check::new(name, "monotone bijections, reflection and split/merge round trips", n);
            for p in enumerate_dyck(n) {
                let inc = dyck_to_increasing(&p)?;
                let dec = dyck_to_decreasing(&p)?;
                c.holds(format!("inc {p}"), increasing_to_dyck(&inc)? == p);
                c.holds(format!("dec {p}"), decreasing_to_dyck(&dec)? == p);
                c.holds(format!("reflect {p}"), reflect_antidiagonal(&reflect_antidiagonal(&p)) == p);
                for j in (1..=n).filter(|&j| has_peak_in_column(&p, j)) {
                    let (big, small, k) = split_at_column(&p, j)?;
                    c.holds(format!("split {p} j={j}"), k <= n - j && merge(&big, &small, j)? == p);
                }
            }
            checks.push(c);
        }
        Suite::ColumnPeaks => {
            let mut counts = vec![0u64; n + 1];
            for p in enumerate_dyck(n) {
                for pk in peaks(&p) {
                    counts[pk.spot] += 1;
                }
            }
            let mut c = Check::new(name, "paths with a peak in column j: Catalan convolution", n);
            for j in 1..=n {
                c.compare(format!("j={j}"), decreasing_spot_count_by_catalan(n, j)?, ExactInt::from(counts[j]));
                c.compare(format!("rows j={j}"), decreasing_spot_count_by_rows(n, j)?, ExactInt::from(counts[j]));
            }
            checks.push(c);
        }
        Suite::All => unreachable!("expanded by run_suite"),
    }
    Ok(checks)
}

/// Preference vectors for `s` cars on `t` spots in which every car parks.
pub fn brute_partial(s: usize, t: usize) -> u64 {
    let mut prefs = vec![1usize; s];
    let mut count = 0;
    loop {
        let mut taken = vec![false; t + 1];
        let parks = prefs.iter().all(|&p| match (p..=t).find(|&x| !taken[x]) {
            Some(x) => {
                taken[x] = true;
                true
            }
            None => false,
        });
        count += u64::from(parks);
        // odometer increment
        let mut k = 0;
        loop {
            if k == s {
                return count;
            }
            prefs[k] += 1;
            if prefs[k] <= t {
                break;
            }
            prefs[k] = 1;
            k += 1;
        }
    }
}
