//! Ground truth by exhaustive enumeration.
//!
//! Parking functions are generated depth-first with exact prefix pruning,
//! so only the `(n+1)^(n-1)` leaves that are parking functions are ever
//! reached. Two routes produce the lucky tables: a streaming route that
//! runs [`park`] on every generated vector, and a counting route for the
//! unrestricted variant that parks cars incrementally along the search
//! tree and credits each lucky `(car, spot)` pair with the size of the
//! subtree below it. The counting route is split over the first car's
//! preference and reduced in a fixed order, so its output does not depend
//! on the number of threads.

pub mod cache;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{ExactInt, ExactRational};
use crate::parking::{park, PreferenceVector};

/// Default largest `n` for the unrestricted variant.
pub const DEFAULT_LIMIT_ALL: usize = 9;
/// Largest `n` for the unrestricted variant with `allow_long`.
pub const LONG_LIMIT_ALL: usize = 11;
/// Default largest `n` for the monotone variants (C_15 is about 9.7 million).
pub const DEFAULT_LIMIT_MONOTONE: usize = 15;
pub const LONG_LIMIT_MONOTONE: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    All,
    WeaklyIncreasing,
    WeaklyDecreasing,
}

impl Variant {
    pub const ALL: [Variant; 3] = [
        Variant::All,
        Variant::WeaklyIncreasing,
        Variant::WeaklyDecreasing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::All => "all",
            Variant::WeaklyIncreasing => "weakly_increasing",
            Variant::WeaklyDecreasing => "weakly_decreasing",
        }
    }

    pub fn limit(self, allow_long: bool) -> usize {
        match (self, allow_long) {
            (Variant::All, false) => DEFAULT_LIMIT_ALL,
            (Variant::All, true) => LONG_LIMIT_ALL,
            (_, false) => DEFAULT_LIMIT_MONOTONE,
            (_, true) => LONG_LIMIT_MONOTONE,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Variant::All),
            "weakly_increasing" | "increasing" | "inc" => Ok(Variant::WeaklyIncreasing),
            "weakly_decreasing" | "decreasing" | "dec" => Ok(Variant::WeaklyDecreasing),
            _ => Err(Error::InvalidArgument(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Raise the enumeration limits.
    pub allow_long: bool,
}

fn check_limit(n: usize, variant: Variant, allow_long: bool) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let limit = variant.limit(allow_long);
    if n > limit {
        return Err(Error::LimitExceeded {
            n,
            limit,
            variant: variant.name(),
        });
    }
    Ok(())
}

/// Lexicographic stream of the parking functions of one variant.
///
/// A prefix of length `m` is kept only when some completion is a parking
/// function of the variant: for unrestricted and weakly-decreasing vectors
/// that is `#{entries <= k} + (n - m) >= k` for every `k`; for
/// weakly-increasing vectors it is `prefix[i] <= i`.
pub struct ParkingFunctions {
    n: usize,
    variant: Variant,
    prefs: Vec<usize>,
    counts: Vec<usize>,
    started: bool,
    done: bool,
}

pub fn enumerate_parking_functions(
    n: usize,
    variant: Variant,
    allow_long: bool,
) -> Result<ParkingFunctions> {
    check_limit(n, variant, allow_long)?;
    Ok(ParkingFunctions {
        n,
        variant,
        prefs: Vec::with_capacity(n),
        counts: vec![0; n + 1],
        started: false,
        done: false,
    })
}

impl ParkingFunctions {
    fn lower(&self, depth: usize) -> usize {
        match self.variant {
            Variant::WeaklyIncreasing if depth > 0 => self.prefs[depth - 1],
            _ => 1,
        }
    }

    fn upper(&self, depth: usize) -> usize {
        match self.variant {
            Variant::WeaklyDecreasing if depth > 0 => self.prefs[depth - 1],
            _ => self.n,
        }
    }

    fn push(&mut self, v: usize) {
        self.prefs.push(v);
        self.counts[v] += 1;
    }

    fn pop(&mut self) -> Option<usize> {
        let v = self.prefs.pop()?;
        self.counts[v] -= 1;
        Some(v)
    }

    fn extendable(&self) -> bool {
        let m = self.prefs.len();
        match self.variant {
            Variant::WeaklyIncreasing => self.prefs.iter().enumerate().all(|(i, &v)| v <= i + 1),
            _ => {
                let remaining = self.n - m;
                let mut cum = 0;
                (1..=self.n).all(|k| {
                    cum += self.counts[k];
                    cum + remaining >= k
                })
            }
        }
    }

    /// Completes the current (extendable) prefix with the least values.
    fn fill(&mut self) {
        while self.prefs.len() < self.n {
            let v = self.lower(self.prefs.len());
            self.push(v);
            debug_assert!(self.extendable());
        }
    }
}

impl Iterator for ParkingFunctions {
    type Item = PreferenceVector;

    fn next(&mut self) -> Option<PreferenceVector> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(PreferenceVector::from_trusted(self.prefs.clone()));
        }
        while let Some(cur) = self.pop() {
            let depth = self.prefs.len();
            // extendability is monotone in the appended value, so only the
            // successor needs checking
            if cur < self.upper(depth) {
                self.push(cur + 1);
                if self.extendable() {
                    self.fill();
                    return Some(PreferenceVector::from_trusted(self.prefs.clone()));
                }
                self.pop();
            }
        }
        self.done = true;
        None
    }
}

/// `q[i][j]`: parking functions where car `i` prefers spot `j` and parks there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuckyTable {
    pub n: usize,
    pub variant: Variant,
    pub q: Vec<Vec<ExactInt>>,
}

impl LuckyTable {
    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> &ExactInt {
        &self.q[i - 1][j - 1]
    }

    /// Entry `k` counts parking functions whose car `k + 1` is lucky.
    pub fn row_sums(&self) -> Vec<ExactInt> {
        self.q.iter().map(|row| row.iter().sum()).collect()
    }

    /// Entry `k` counts parking functions whose spot `k + 1` is lucky.
    pub fn column_sums(&self) -> Vec<ExactInt> {
        (0..self.n)
            .map(|j| self.q.iter().map(|row| &row[j]).sum())
            .collect()
    }

    pub fn total(&self) -> ExactInt {
        self.q.iter().flatten().sum()
    }
}

pub fn row_sums(t: &LuckyTable) -> Vec<ExactInt> {
    t.row_sums()
}

pub fn column_sums(t: &LuckyTable) -> Vec<ExactInt> {
    t.column_sums()
}

/// `counts[k - 1]` parking functions have exactly `k` lucky cars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuckyDistribution {
    pub n: usize,
    pub variant: Variant,
    pub counts: Vec<ExactInt>,
}

impl LuckyDistribution {
    /// Number with exactly `k` lucky cars; zero outside `1..=n`.
    pub fn c(&self, k: usize) -> ExactInt {
        if k == 0 || k > self.n {
            BigInt::zero()
        } else {
            self.counts[k - 1].clone()
        }
    }

    pub fn total(&self) -> ExactInt {
        self.counts.iter().sum()
    }

    /// `E[X (X-1) ... (X-l+1)]` for `X` the number of lucky cars.
    pub fn falling_factorial_moment(&self, l: usize) -> ExactRational {
        let weighted: BigInt = (1..=self.n)
            .map(|k| {
                let falling: BigInt = (0..l).map(|t| BigInt::from(k as i64 - t as i64)).product();
                falling * self.c(k)
            })
            .sum();
        BigRational::new(weighted, self.total())
    }

    pub fn mean(&self) -> ExactRational {
        self.falling_factorial_moment(1)
    }

    pub fn variance(&self) -> ExactRational {
        let m1 = self.falling_factorial_moment(1);
        let m2 = self.falling_factorial_moment(2);
        &m2 + &m1 - &m1 * &m1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub table: LuckyTable,
    pub distribution: LuckyDistribution,
    /// Parking functions visited.
    pub leaves: u64,
}

#[derive(Clone, Debug)]
struct Accum {
    n: usize,
    q: Vec<u64>,
    dist: Vec<u64>,
    leaves: u64,
}

impl Accum {
    fn new(n: usize) -> Self {
        Accum {
            n,
            q: vec![0; n * n],
            dist: vec![0; n + 1],
            leaves: 0,
        }
    }

    fn merge(&mut self, other: &Accum) {
        for (a, b) in self.q.iter_mut().zip(&other.q) {
            *a += b;
        }
        for (a, b) in self.dist.iter_mut().zip(&other.dist) {
            *a += b;
        }
        self.leaves += other.leaves;
    }

    fn into_result(self, variant: Variant) -> OracleResult {
        let n = self.n;
        let q = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.q[i * n + j])).collect())
            .collect();
        // c_0 is always zero since the first car is always lucky
        debug_assert_eq!(self.dist[0], 0);
        let counts = self.dist[1..].iter().map(|&c| BigInt::from(c)).collect();
        OracleResult {
            table: LuckyTable { n, variant, q },
            distribution: LuckyDistribution { n, variant, counts },
            leaves: self.leaves,
        }
    }
}

/// Counts the parking functions extending a prefix of `depth` parked cars
/// (occupied spots in `occ`, `lucky` of them lucky), crediting `acc`.
fn count_subtree(n: usize, depth: usize, occ: u32, lucky: usize, acc: &mut Accum) -> u64 {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if depth + 1 == n {
        // one spot left; the last car parks there from any preference up to it
        let free = (!occ & full).trailing_zeros() as usize;
        acc.q[(n - 1) * n + free] += 1;
        acc.dist[lucky + 1] += 1;
        acc.dist[lucky] += free as u64;
        acc.leaves += free as u64 + 1;
        return free as u64 + 1;
    }
    let mut total = 0;
    for v in 0..n {
        let avail = !occ & full & (u32::MAX << v);
        if avail == 0 {
            break;
        }
        let spot = avail.trailing_zeros() as usize;
        let is_lucky = spot == v;
        let below = count_subtree(n, depth + 1, occ | 1 << spot, lucky + is_lucky as usize, acc);
        if is_lucky {
            acc.q[depth * n + v] += below;
        }
        total += below;
    }
    total
}

fn count_from_first(n: usize, first: usize) -> Accum {
    let mut acc = Accum::new(n);
    let below = if n == 1 {
        count_subtree(n, 0, 0, 0, &mut acc)
    } else {
        count_subtree(n, 1, 1 << first, 1, &mut acc)
    };
    if n > 1 {
        acc.q[first] += below;
    }
    acc
}

/// Progress hook: `(finished subtrees, total subtrees)`.
pub type Progress<'a> = &'a (dyn Fn(usize, usize) + Sync);

fn run_counting(n: usize, opts: &OracleOptions, progress: Option<Progress<'_>>) -> Result<Accum> {
    let finished = AtomicUsize::new(0);
    let firsts = if n == 1 { 1 } else { n };
    let work = || -> Vec<Accum> {
        (0..firsts)
            .into_par_iter()
            .map(|first| {
                let acc = count_from_first(n, first);
                let done = finished.fetch_add(1, Ordering::SeqCst) + 1;
                if let Some(report) = progress {
                    report(done, firsts);
                }
                acc
            })
            .collect()
    };
    let parts = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let mut total = Accum::new(n);
    for part in &parts {
        total.merge(part);
    }
    Ok(total)
}

fn run_streaming(n: usize, variant: Variant, allow_long: bool) -> Result<Accum> {
    let mut acc = Accum::new(n);
    for p in enumerate_parking_functions(n, variant, allow_long)? {
        let out = park(&p);
        debug_assert!(out.success);
        for &car in &out.lucky_cars {
            acc.q[(car - 1) * n + p.pref(car) - 1] += 1;
        }
        acc.dist[out.lucky_count()] += 1;
        acc.leaves += 1;
    }
    Ok(acc)
}

/// Full oracle run: lucky table, lucky-count distribution and leaf count.
pub fn run_oracle(n: usize, variant: Variant, opts: &OracleOptions) -> Result<OracleResult> {
    run_oracle_with_progress(n, variant, opts, None)
}

pub fn run_oracle_with_progress(
    n: usize,
    variant: Variant,
    opts: &OracleOptions,
    progress: Option<Progress<'_>>,
) -> Result<OracleResult> {
    check_limit(n, variant, opts.allow_long)?;
    let acc = match variant {
        Variant::All => run_counting(n, opts, progress)?,
        _ => run_streaming(n, variant, opts.allow_long)?,
    };
    Ok(acc.into_result(variant))
}

/// Same result as [`run_oracle`], always by simulating every parking function.
pub fn run_oracle_by_simulation(n: usize, variant: Variant, allow_long: bool) -> Result<OracleResult> {
    check_limit(n, variant, allow_long)?;
    Ok(run_streaming(n, variant, allow_long)?.into_result(variant))
}

pub fn compute_lucky_table(n: usize, variant: Variant) -> Result<LuckyTable> {
    Ok(run_oracle(n, variant, &OracleOptions::default())?.table)
}

pub fn compute_lucky_distribution(n: usize) -> Result<LuckyDistribution> {
    Ok(run_oracle(n, Variant::All, &OracleOptions::default())?.distribution)
}

/// `hist[mask]` parking functions have exactly the cars in `mask` lucky
/// (bit `i - 1` for car `i`).
pub fn lucky_mask_histogram(n: usize) -> Result<Vec<u64>> {
    if n > 16 {
        return Err(Error::InvalidArgument("mask histogram needs n <= 16".into()));
    }
    let mut hist = vec![0u64; 1 << n];
    for p in enumerate_parking_functions(n, Variant::All, false)? {
        hist[park(&p).lucky_mask() as usize] += 1;
    }
    Ok(hist)
}

/// Parking functions where every car in `lucky` is lucky and every car in
/// `unlucky` is not, read off a mask histogram.
pub fn count_with_restrictions(hist: &[u64], lucky: u64, unlucky: u64) -> u64 {
    hist.iter()
        .enumerate()
        .filter(|(mask, _)| {
            let m = *mask as u64;
            m & lucky == lucky && m & unlucky == 0
        })
        .map(|(_, &c)| c)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::satisfies_sorted_criterion;

    fn vecs(n: usize, variant: Variant) -> Vec<Vec<usize>> {
        enumerate_parking_functions(n, variant, false)
            .unwrap()
            .map(PreferenceVector::into_inner)
            .collect()
    }

    fn brute_force(n: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = c % n + 1;
                c /= n;
            }
            if satisfies_sorted_criterion(&v) && keep(&v) {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn n2_stream_is_lexicographic() {
        assert_eq!(vecs(2, Variant::All), vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(vecs(3, Variant::All).len(), 16);
        assert_eq!(vecs(4, Variant::WeaklyDecreasing).len(), 14);
    }

    #[test]
    fn stream_matches_brute_force_filter() {
        for n in 1..=6 {
            assert_eq!(vecs(n, Variant::All), brute_force(n, |_| true), "n = {n}");
            assert_eq!(
                vecs(n, Variant::WeaklyIncreasing),
                brute_force(n, |v| v.windows(2).all(|w| w[0] <= w[1]))
            );
            assert_eq!(
                vecs(n, Variant::WeaklyDecreasing),
                brute_force(n, |v| v.windows(2).all(|w| w[0] >= w[1]))
            );
        }
    }

    #[test]
    fn n2_table_by_hand() {
        let t = compute_lucky_table(2, Variant::All).unwrap();
        let expect: Vec<Vec<BigInt>> = vec![
            vec![2.into(), 1.into()],
            vec![1.into(), 1.into()],
        ];
        assert_eq!(t.q, expect);
    }

    #[test]
    fn small_distributions() {
        let d = compute_lucky_distribution(3).unwrap();
        assert_eq!(d.counts, vec![BigInt::from(2), 8.into(), 6.into()]);
        let d = compute_lucky_distribution(2).unwrap();
        assert_eq!(d.counts, vec![BigInt::from(1), 2.into()]);
        let d = compute_lucky_distribution(1).unwrap();
        assert_eq!(d.counts, vec![BigInt::from(1)]);
    }

    #[test]
    fn counting_route_matches_simulation() {
        for n in 1..=6 {
            let fast = run_oracle(n, Variant::All, &OracleOptions::default()).unwrap();
            let slow = run_oracle_by_simulation(n, Variant::All, false).unwrap();
            assert_eq!(fast, slow, "n = {n}");
        }
    }

    #[test]
    fn leaf_count_is_exact() {
        for n in 1..=8 {
            let r = run_oracle(n, Variant::All, &OracleOptions::default()).unwrap();
            assert_eq!(r.leaves, (n as u64 + 1).pow(n as u32 - 1));
        }
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let one = run_oracle(6, Variant::All, &OracleOptions { threads: Some(1), allow_long: false }).unwrap();
        let three = run_oracle(6, Variant::All, &OracleOptions { threads: Some(3), allow_long: false }).unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            run_oracle(10, Variant::All, &OracleOptions::default()),
            Err(Error::LimitExceeded { n: 10, limit: 9, .. })
        ));
        assert!(enumerate_parking_functions(10, Variant::All, true).is_ok());
        assert!(enumerate_parking_functions(0, Variant::All, false).is_err());
        assert!(enumerate_parking_functions(12, Variant::WeaklyDecreasing, false).is_ok());
    }

    #[test]
    fn mask_histogram_totals() {
        let hist = lucky_mask_histogram(4).unwrap();
        assert_eq!(hist.iter().sum::<u64>(), 125);
        assert_eq!(count_with_restrictions(&hist, 0, 0), 125);
        // car 1 is always lucky
        assert_eq!(count_with_restrictions(&hist, 0, 1), 0);
    }

    #[test]
    fn moments_n2() {
        let d = compute_lucky_distribution(2).unwrap();
        assert_eq!(d.mean(), BigRational::new(5.into(), 3.into()));
        assert_eq!(d.falling_factorial_moment(2), BigRational::new(4.into(), 3.into()));
        assert_eq!(d.variance(), BigRational::new(2.into(), 9.into()));
    }
}
