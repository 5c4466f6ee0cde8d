//! The parking process on a one-way street with `n` spots.
//!
//! Cars arrive in order; each takes the first free spot at or after its
//! preference, or leaves the street if there is none. Cars and spots are
//! numbered from 1 in every public type.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Preferences of cars `1..=n`, each a spot in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceVector(Vec<usize>);

impl PreferenceVector {
    pub fn new(prefs: Vec<usize>) -> Result<Self> {
        let n = prefs.len();
        if n == 0 {
            return Err(Error::InvalidArgument("preference vector is empty".into()));
        }
        if let Some((car, &p)) = prefs.iter().enumerate().find(|(_, &p)| p < 1 || p > n) {
            return Err(Error::InvalidArgument(format!(
                "car {} prefers spot {p}, outside 1..={n}",
                car + 1
            )));
        }
        Ok(PreferenceVector(prefs))
    }

    /// Skips validation; callers guarantee every entry lies in `1..=len`.
    pub(crate) fn from_trusted(prefs: Vec<usize>) -> Self {
        debug_assert!(prefs.iter().all(|&p| p >= 1 && p <= prefs.len()));
        PreferenceVector(prefs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Preference of car `car` (1-based).
    pub fn pref(&self, car: usize) -> usize {
        self.0[car - 1]
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for PreferenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for PreferenceVector {
    type Err = Error;

    /// Accepts whitespace or comma separated integers, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let prefs = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("not a spot number: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PreferenceVector::new(prefs)
    }
}

/// Where a car ended up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CarResult {
    Parked(usize),
    Exited,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParkingOutcome {
    pub success: bool,
    /// `assignment[j - 1]` is the car parked in spot `j`, if any.
    pub assignment: Vec<Option<usize>>,
    /// `car_spot[i - 1]` is where car `i` went.
    pub car_spot: Vec<CarResult>,
    pub lucky_cars: Vec<usize>,
    pub lucky_spots: Vec<usize>,
}

impl ParkingOutcome {
    pub fn lucky_count(&self) -> usize {
        self.lucky_cars.len()
    }

    /// Bit `i - 1` set when car `i` is lucky.
    pub fn lucky_mask(&self) -> u64 {
        self.lucky_cars.iter().fold(0, |m, &c| m | 1 << (c - 1))
    }

    pub fn exited_cars(&self) -> Vec<usize> {
        self.car_spot
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == CarResult::Exited)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

pub fn park(p: &PreferenceVector) -> ParkingOutcome {
    let n = p.len();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut car_spot = Vec::with_capacity(n);
    let mut lucky_cars = Vec::new();
    for (idx, &pref) in p.as_slice().iter().enumerate() {
        let car = idx + 1;
        match (pref..=n).find(|&s| assignment[s - 1].is_none()) {
            Some(spot) => {
                assignment[spot - 1] = Some(car);
                car_spot.push(CarResult::Parked(spot));
                if spot == pref {
                    lucky_cars.push(car);
                }
            }
            None => car_spot.push(CarResult::Exited),
        }
    }
    let lucky_spots = assignment
        .iter()
        .enumerate()
        .filter_map(|(s, car)| car.filter(|&c| p.pref(c) == s + 1).map(|_| s + 1))
        .collect();
    let success = car_spot.iter().all(|r| *r != CarResult::Exited);
    ParkingOutcome {
        success,
        assignment,
        car_spot,
        lucky_cars,
        lucky_spots,
    }
}

/// Sorted criterion: the `k`-th smallest preference is at most `k`.
pub fn satisfies_sorted_criterion(prefs: &[usize]) -> bool {
    let mut sorted = prefs.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(k, &v)| v <= k + 1)
}

pub fn is_parking_function(p: &PreferenceVector) -> bool {
    let by_simulation = park(p).success;
    debug_assert_eq!(by_simulation, satisfies_sorted_criterion(p.as_slice()));
    by_simulation
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderClass {
    WeaklyIncreasing,
    WeaklyDecreasing,
    Both,
    Neither,
}

pub fn classify_order(p: &PreferenceVector) -> OrderClass {
    let s = p.as_slice();
    let inc = s.windows(2).all(|w| w[0] <= w[1]);
    let dec = s.windows(2).all(|w| w[0] >= w[1]);
    match (inc, dec) {
        (true, true) => OrderClass::Both,
        (true, false) => OrderClass::WeaklyIncreasing,
        (false, true) => OrderClass::WeaklyDecreasing,
        (false, false) => OrderClass::Neither,
    }
}
