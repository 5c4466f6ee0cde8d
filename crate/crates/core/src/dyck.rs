//! Dyck paths and their bijections with monotone parking functions.
//!
//! A path of size `n` runs from `(0,0)` to `(n,n)` with unit North and East
//! steps and never drops below `y = x`. Columns are spots `1..=n` from left
//! to right. For the weakly-increasing correspondence rows are cars
//! `1..=n` from bottom to top; for the weakly-decreasing one rows are cars
//! `1..=n` from top to bottom. In both, a car prefers the column whose left
//! edge holds the North step of its row.
//!
//! A peak is a North step directly followed by an East step. The peak with
//! corner `(j-1, n-i+1)` is exactly the event "car `i` prefers spot `j` and
//! parks there" for the weakly-decreasing parking function of the path.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::parking::{classify_order, is_parking_function, OrderClass, PreferenceVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    North,
    East,
}

impl Step {
    fn flipped(self) -> Step {
        match self {
            Step::North => Step::East,
            Step::East => Step::North,
        }
    }

    fn letter(self) -> char {
        match self {
            Step::North => 'N',
            Step::East => 'E',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

/// North-East corner of a path, with its car and spot labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Peak {
    pub car: usize,
    pub spot: usize,
    /// Lattice point between the North and the East step.
    pub corner: (usize, usize),
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: i64 = 0;
        for (k, s) in steps.iter().enumerate() {
            height += if *s == Step::North { 1 } else { -1 };
            if height < 0 {
                return Err(Error::InvalidPath(format!(
                    "drops below the diagonal after step {}",
                    k + 1
                )));
            }
        }
        if height != 0 {
            return Err(Error::InvalidPath(
                "unequal numbers of North and East steps".into(),
            ));
        }
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// `(NE)^n`
    pub fn staircase(n: usize) -> Self {
        DyckPath {
            steps: (0..n).flat_map(|_| [Step::North, Step::East]).collect(),
        }
    }

    /// `N^n E^n`
    pub fn tent(n: usize) -> Self {
        let mut steps = vec![Step::North; n];
        steps.extend(std::iter::repeat_n(Step::East, n));
        DyckPath { steps }
    }

    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Lattice points visited, starting at the origin (`2n + 1` of them).
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut pts = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = (0, 0);
        pts.push((x, y));
        for s in &self.steps {
            match s {
                Step::North => y += 1,
                Step::East => x += 1,
            }
            pts.push((x, y));
        }
        pts
    }

    /// x-coordinate of the North step in each row, bottom row first.
    fn north_columns(&self) -> Vec<usize> {
        let mut x = 0;
        let mut cols = Vec::with_capacity(self.size());
        for s in &self.steps {
            match s {
                Step::North => cols.push(x),
                Step::East => x += 1,
            }
        }
        cols
    }

    /// Text picture of the path; `|` marks North steps and `_` East steps.
    pub fn render_grid(&self) -> String {
        let n = self.size();
        let pts = self.points();
        let mut north = vec![None; n + 1];
        let mut east = vec![vec![false; n]; n + 1];
        for (k, s) in self.steps.iter().enumerate() {
            let (x, y) = pts[k];
            match s {
                Step::North => north[y + 1] = Some(x),
                Step::East => east[y][x] = true,
            }
        }
        let mut out = String::new();
        // line `r` shows the North step of row r and East steps at height r - 1
        // above it line n + 1 carries the East steps at height n
        for r in (1..=n + 1).rev() {
            let mut line = String::new();
            for c in 0..=n {
                line.push(if r <= n && north[r] == Some(c) { '|' } else { ' ' });
                if c < n {
                    line.push(if east[r - 1][c] { '_' } else { ' ' });
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'N' => Ok(Step::North),
                'E' => Ok(Step::East),
                other => Err(Error::InvalidPath(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// All Dyck paths of size `n` in lexicographic order (`N` before `E`).
pub struct DyckPaths {
    n: usize,
    steps: Vec<Step>,
    started: bool,
    done: bool,
}

pub fn enumerate_dyck(n: usize) -> DyckPaths {
    DyckPaths {
        n,
        steps: Vec::with_capacity(2 * n),
        started: false,
        done: false,
    }
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.steps = DyckPath::tent(self.n).steps;
            return Some(DyckPath { steps: self.steps.clone() });
        }
        let len = self.steps.len();
        let mut norths: usize = self.steps.iter().filter(|s| **s == Step::North).count();
        let mut easts = len - norths;
        // walk back, keeping counts for the prefix before position k
        for k in (0..len).rev() {
            match self.steps[k] {
                Step::North => norths -= 1,
                Step::East => easts -= 1,
            }
            if self.steps[k] == Step::North && easts < norths {
                self.steps.truncate(k);
                self.steps.push(Step::East);
                let rest_n = self.n - norths;
                let rest_e = self.n - easts - 1;
                self.steps.extend(std::iter::repeat_n(Step::North, rest_n));
                self.steps.extend(std::iter::repeat_n(Step::East, rest_e));
                return Some(DyckPath { steps: self.steps.clone() });
            }
        }
        self.done = true;
        None
    }
}

/// Weakly-increasing parking function read with rows numbered bottom to top.
pub fn dyck_to_increasing(p: &DyckPath) -> Result<PreferenceVector> {
    PreferenceVector::new(p.north_columns().into_iter().map(|x| x + 1).collect())
}

/// Weakly-decreasing parking function read with rows numbered top to bottom.
pub fn dyck_to_decreasing(p: &DyckPath) -> Result<PreferenceVector> {
    PreferenceVector::new(p.north_columns().into_iter().rev().map(|x| x + 1).collect())
}

fn path_from_north_columns(cols: &[usize]) -> Result<DyckPath> {
    let n = cols.len();
    let mut steps = Vec::with_capacity(2 * n);
    let mut x = 0;
    for &c in cols {
        while x < c {
            steps.push(Step::East);
            x += 1;
        }
        steps.push(Step::North);
    }
    while x < n {
        steps.push(Step::East);
        x += 1;
    }
    DyckPath::new(steps)
}

fn require_parking_function(p: &PreferenceVector) -> Result<()> {
    if !is_parking_function(p) {
        return Err(Error::InvalidArgument(format!("{p} is not a parking function")));
    }
    Ok(())
}

pub fn increasing_to_dyck(p: &PreferenceVector) -> Result<DyckPath> {
    if !matches!(classify_order(p), OrderClass::WeaklyIncreasing | OrderClass::Both) {
        return Err(Error::InvalidArgument(format!("{p} is not weakly increasing")));
    }
    require_parking_function(p)?;
    let cols: Vec<usize> = p.as_slice().iter().map(|v| v - 1).collect();
    path_from_north_columns(&cols)
}

pub fn decreasing_to_dyck(p: &PreferenceVector) -> Result<DyckPath> {
    if !matches!(classify_order(p), OrderClass::WeaklyDecreasing | OrderClass::Both) {
        return Err(Error::InvalidArgument(format!("{p} is not weakly decreasing")));
    }
    require_parking_function(p)?;
    let cols: Vec<usize> = p.as_slice().iter().rev().map(|v| v - 1).collect();
    path_from_north_columns(&cols)
}

pub fn peaks(p: &DyckPath) -> Vec<Peak> {
    let n = p.size();
    let pts = p.points();
    p.steps
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == Step::North && w[1] == Step::East)
        .map(|(k, _)| {
            let (x, y) = pts[k + 1];
            Peak {
                car: n - y + 1,
                spot: x + 1,
                corner: (x, y),
            }
        })
        .collect()
}

pub fn has_peak_in_column(p: &DyckPath, j: usize) -> bool {
    peaks(p).iter().any(|pk| pk.spot == j)
}

/// Mirror image across `x + y = n`; peak `(car i, spot j)` becomes
/// `(car j, spot i)`.
pub fn reflect_antidiagonal(p: &DyckPath) -> DyckPath {
    DyckPath {
        steps: p.steps.iter().rev().map(|s| s.flipped()).collect(),
    }
}

/// Splits a path with a peak in column `j` into `(big, small, k)` where
/// `small` has size `k`, `big` has size `n - 1 - k` and `0 <= k <= n - j`.
///
/// Let `(j-1, l)` be the first point of the path on `x = j-1`; the path
/// leaves it with a North step and next meets the line through it parallel
/// to the diagonal at `(s, t)`, entering with an East step. The excursion
/// strictly between those two steps is `small`; the path with the whole
/// excursion cut out is `big`, and `k = s - j`.
pub fn split_at_column(p: &DyckPath, j: usize) -> Result<(DyckPath, DyckPath, usize)> {
    if j == 0 || j > p.size() || !has_peak_in_column(p, j) {
        return Err(Error::NoPeakInColumn(j));
    }
    let pts = p.points();
    let first = pts
        .iter()
        .position(|&(x, _)| x == j - 1)
        .ok_or(Error::NoPeakInColumn(j))?;
    let (x0, y0) = pts[first];
    let level = y0 as i64 - x0 as i64;
    if p.steps[first] != Step::North {
        return Err(Error::Invariant(format!(
            "column {j} is entered without a North step"
        )));
    }
    let back = (first + 1..pts.len())
        .find(|&b| pts[b].1 as i64 - pts[b].0 as i64 == level)
        .ok_or_else(|| Error::Invariant("excursion never returns".into()))?;
    let small = DyckPath::new(p.steps[first + 1..back - 1].to_vec())?;
    let mut big_steps = p.steps[..first].to_vec();
    big_steps.extend_from_slice(&p.steps[back..]);
    let big = DyckPath::new(big_steps)?;
    let k = pts[back].0 - j;
    debug_assert_eq!(k, small.size());
    Ok((big, small, k))
}

/// Inverse of [`split_at_column`].
pub fn merge(big: &DyckPath, small: &DyckPath, j: usize) -> Result<DyckPath> {
    if j == 0 {
        return Err(Error::InvalidArgument("column index starts at 1".into()));
    }
    if j - 1 > big.size() {
        return Err(Error::InvalidArgument(format!(
            "a path of size {} never reaches x = {}; need k <= n - j",
            big.size(),
            j - 1
        )));
    }
    let at = big
        .points()
        .iter()
        .position(|&(x, _)| x == j - 1)
        .expect("every path reaches each column line up to its size");
    let mut steps = Vec::with_capacity(big.steps.len() + small.steps.len() + 2);
    steps.extend_from_slice(&big.steps[..at]);
    steps.push(Step::North);
    steps.extend_from_slice(&small.steps);
    steps.push(Step::East);
    steps.extend_from_slice(&big.steps[at..]);
    DyckPath::new(steps)
}
