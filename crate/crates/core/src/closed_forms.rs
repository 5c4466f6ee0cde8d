//! Closed-form counts for lucky cars and lucky spots.
//!
//! Nothing here enumerates parking functions; every value is computed from
//! a formula so that it can be compared against the oracle. Divisions are
//! carried out over the rationals and the result is checked to be an
//! integer before it is returned.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{
    binomial, catalan, expect_integer, factorial, harmonic, int, parking_function_count, pow,
    pow_signed, ratio, rational_from_int, rational_to_f64, ExactInt, ExactPoly, ExactRational,
};

fn check_index(what: &str, idx: usize, n: usize) -> Result<()> {
    if n == 0 || idx < 1 || idx > n {
        return Err(Error::InvalidArgument(format!(
            "{what} = {idx} outside 1..={n}"
        )));
    }
    Ok(())
}

/// Cars required to be lucky (`lucky`) or unlucky (`unlucky`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionSets {
    pub n: usize,
    pub lucky: BTreeSet<usize>,
    pub unlucky: BTreeSet<usize>,
}

impl RestrictionSets {
    pub fn new(
        n: usize,
        lucky: impl IntoIterator<Item = usize>,
        unlucky: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let lucky: BTreeSet<_> = lucky.into_iter().collect();
        let unlucky: BTreeSet<_> = unlucky.into_iter().collect();
        for &c in lucky.iter().chain(&unlucky) {
            check_index("car", c, n)?;
        }
        if let Some(c) = lucky.intersection(&unlucky).next() {
            return Err(Error::InvalidArgument(format!(
                "car {c} is required to be both lucky and unlucky"
            )));
        }
        Ok(RestrictionSets { n, lucky, unlucky })
    }

    /// Bit masks (bit `i - 1` for car `i`) of the lucky and unlucky sets.
    pub fn masks(&self) -> (u64, u64) {
        let mask = |s: &BTreeSet<usize>| s.iter().fold(0u64, |m, &c| m | 1 << (c - 1));
        (mask(&self.lucky), mask(&self.unlucky))
    }
}

/// Parking functions in which the cars of `lucky` are lucky and those of
/// `unlucky` are not: `prod(n+2-i) * prod(i-1) * (n+1)^(n-|L|-|U|-1)`.
pub fn restricted_count(r: &RestrictionSets) -> Result<ExactInt> {
    let n = r.n as i64;
    let lucky: BigInt = r.lucky.iter().map(|&i| int(n + 2 - i as i64)).product();
    let unlucky: BigInt = r.unlucky.iter().map(|&i| int(i as i64 - 1)).product();
    let exp = n - r.lucky.len() as i64 - r.unlucky.len() as i64 - 1;
    let value = rational_from_int(lucky * unlucky) * pow_signed(n + 1, exp)?;
    expect_integer(&value, "restricted count")
}

/// `f(x) = (1/(n+1)) prod_i ((n+2-i) x + (i-1))`; the coefficient of `x^k`
/// counts parking functions with exactly `k` lucky cars.
pub fn lucky_polynomial(n: usize) -> Result<ExactPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let n = n as i64;
    let product = (1..=n).fold(ExactPoly::constant(BigRational::one()), |acc, i| {
        &acc * &ExactPoly::linear(ratio(n + 2 - i, 1), ratio(i - 1, 1))
    });
    Ok(product.scale(&ratio(1, n + 1)))
}

/// `E[X (X-1) ... (X-l+1)]` for the number `X` of lucky cars, as
/// `f^(l)(1) / (n+1)^(n-1)`. Zero once `l` exceeds `n`.
pub fn factorial_moment(n: usize, l: usize) -> Result<ExactRational> {
    let f = lucky_polynomial(n)?;
    let at_one = f.nth_derivative(l).evaluate(&BigRational::one());
    Ok(at_one / rational_from_int(parking_function_count(n as u64)))
}

fn mean_closed(n: i64) -> ExactRational {
    ratio(n * (n + 3), 2 * (n + 1))
}

fn variance_closed(n: i64) -> ExactRational {
    BigRational::new(
        int((n - 1) * n * (n + 4)),
        int(6) * int(n + 1) * int(n + 1),
    )
}

/// Expected number of lucky cars, `n(n+3) / (2(n+1))`, checked against the
/// first factorial moment.
pub fn mean_lucky(n: usize) -> Result<ExactRational> {
    let closed = mean_closed(n as i64);
    let derived = factorial_moment(n, 1)?;
    if closed != derived {
        return Err(Error::Invariant(format!(
            "mean at n = {n}: closed form {closed} vs polynomial {derived}"
        )));
    }
    Ok(closed)
}

/// Variance of the number of lucky cars, `(n-1) n (n+4) / (6 (n+1)^2)`,
/// checked against the first two factorial moments.
pub fn variance_lucky(n: usize) -> Result<ExactRational> {
    let closed = variance_closed(n as i64);
    let m1 = factorial_moment(n, 1)?;
    let m2 = factorial_moment(n, 2)?;
    let derived = &m2 + &m1 - &m1 * &m1;
    if closed != derived {
        return Err(Error::Invariant(format!(
            "variance at n = {n}: closed form {closed} vs polynomial {derived}"
        )));
    }
    Ok(closed)
}

/// `c_1 = (n-1)!`
pub fn c_one(n: usize) -> ExactInt {
    factorial(n as u64 - 1)
}

/// `c_2 = (n+1)(n-1)! H_(n-1) - (n-1)(n-1)!` for `n >= 2`.
pub fn c_two(n: usize) -> Result<ExactInt> {
    if n < 2 {
        return Err(Error::InvalidArgument("c_2 needs n >= 2".into()));
    }
    let f = rational_from_int(factorial(n as u64 - 1));
    let v = ratio(n as i64 + 1, 1) * &f * harmonic(n as u64 - 1)? - ratio(n as i64 - 1, 1) * &f;
    expect_integer(&v, "c_2")
}

/// `c_(n-1) = (n+1)! H_n - 2n * n!` for `n >= 2`.
pub fn c_penultimate(n: usize) -> Result<ExactInt> {
    if n < 2 {
        return Err(Error::InvalidArgument("c_(n-1) needs n >= 2".into()));
    }
    let v = rational_from_int(factorial(n as u64 + 1)) * harmonic(n as u64)?
        - rational_from_int(int(2 * n as i64) * factorial(n as u64));
    expect_integer(&v, "c_(n-1)")
}

/// `c_n = n!`
pub fn c_all(n: usize) -> ExactInt {
    factorial(n as u64)
}

/// Preferences for `s` cars on `t >= s` spots with every car parking:
/// `(t+1-s)(t+1)^(s-1)`.
pub fn partial_pf_count(s: usize, t: usize) -> Result<ExactInt> {
    if s > t {
        return Err(Error::InvalidArgument(format!(
            "partial parking needs s <= t, got s = {s}, t = {t}"
        )));
    }
    let (s, t) = (s as i64, t as i64);
    let v = ratio(t + 1 - s, 1) * pow_signed(t + 1, s - 1)?;
    expect_integer(&v, "partial parking count")
}

/// Last car prefers spot `j` and parks there.
pub fn q_bottom(n: usize, j: usize) -> Result<ExactInt> {
    check_index("spot", j, n)?;
    let (ni, ji) = (n as i64, j as i64);
    Ok(binomial(ni - 1, ji - 1)
        * parking_function_count(j as u64 - 1)
        * parking_function_count((n - j) as u64))
}

/// First car prefers spot `j` (and is therefore lucky).
pub fn q_top(n: usize, j: usize) -> Result<ExactInt> {
    check_index("spot", j, n)?;
    (j..=n).map(|k| q_bottom(n, k)).sum()
}

/// Car `i` prefers the last spot and parks there: `n^(n-2)`.
pub fn q_right(n: usize, i: usize) -> Result<ExactInt> {
    check_index("car", i, n)?;
    Ok(parking_function_count(n as u64 - 1))
}

/// Car `i` prefers spot 1 and parks there: `(n+1)^(n-i-1) n^(i-2) (2n+1-i)`.
pub fn q_left(n: usize, i: usize) -> Result<ExactInt> {
    check_index("car", i, n)?;
    let (n, i) = (n as i64, i as i64);
    let v = pow_signed(n + 1, n - i - 1)? * pow_signed(n, i - 2)? * ratio(2 * n + 1 - i, 1);
    expect_integer(&v, "left border")
}

/// `q_n(i, j)` on the border of the table. Where several border formulas
/// apply (the corners) all of them are evaluated and must agree.
pub fn q_border(n: usize, i: usize, j: usize) -> Result<ExactInt> {
    check_index("car", i, n)?;
    check_index("spot", j, n)?;
    let mut values = Vec::new();
    if i == n {
        values.push(("bottom", q_bottom(n, j)?));
    }
    if i == 1 {
        values.push(("top", q_top(n, j)?));
    }
    if j == n {
        values.push(("right", q_right(n, i)?));
    }
    if j == 1 {
        values.push(("left", q_left(n, i)?));
    }
    let Some((_, first)) = values.first().cloned() else {
        return Err(Error::InvalidArgument(format!(
            "({i}, {j}) is an interior cell for n = {n}"
        )));
    };
    if let Some((name, v)) = values.iter().find(|(_, v)| *v != first) {
        return Err(Error::Invariant(format!(
            "border formulas disagree at n = {n}, ({i}, {j}): {name} gives {v}, {} gives {first}",
            values[0].0
        )));
    }
    Ok(first)
}

pub fn is_border(n: usize, i: usize, j: usize) -> bool {
    i == 1 || i == n || j == 1 || j == n
}

/// Parking functions whose car `i` is lucky: `(n+2-i)(n+1)^(n-2)`.
pub fn car_lucky_count(n: usize, i: usize) -> Result<ExactInt> {
    check_index("car", i, n)?;
    let (n, i) = (n as i64, i as i64);
    let v = ratio(n + 2 - i, 1) * pow_signed(n + 1, n - 2)?;
    expect_integer(&v, "car lucky count")
}

/// Lucky cars summed over all parking functions of length `n`:
/// `n(n+3)/2 * (n+1)^(n-2)`.
pub fn total_lucky(n: usize) -> Result<ExactInt> {
    (1..=n).map(|i| car_lucky_count(n, i)).sum()
}

/// The spots with a known closed form for their lucky count at `n`.
pub fn spot_has_closed_form(n: usize, j: usize) -> bool {
    j >= 1 && j <= n && (j <= 5 || j == n)
}

fn spot_small_j(n: i64, j: usize) -> Result<ExactRational> {
    let lead = pow_signed(n + 1, n - 1)?;
    let v = match j {
        1 => lead,
        2 => ratio(3, 4) * lead - ratio(1, 4) * pow_signed(n - 1, n - 1)?,
        3 => ratio(2, 3) * lead - ratio(2 * n - 1, 3) * pow_signed(n - 2, n - 2)?,
        4 => {
            ratio(5, 8) * lead - ratio(13 * n * n - 26 * n + 9, 8) * pow_signed(n - 3, n - 3)?
        }
        5 => {
            ratio(3, 5) * lead
                - ratio(118 * n * n * n - 531 * n * n + 659 * n - 192, 30)
                    * pow_signed(n - 4, n - 4)?
        }
        _ => unreachable!(),
    };
    Ok(v)
}

/// Parking functions whose spot `j` is lucky, for `j <= 5` or `j = n`.
///
/// Other columns have no closed form and are rejected; callers fall back
/// to the oracle explicitly.
pub fn spot_lucky_count(n: usize, j: usize) -> Result<ExactInt> {
    check_index("spot", j, n)?;
    if !spot_has_closed_form(n, j) {
        return Err(Error::NoClosedForm { n, j });
    }
    let mut values = Vec::new();
    if j <= 5 {
        values.push(expect_integer(&spot_small_j(n as i64, j)?, "spot lucky count")?);
    }
    if j == n {
        values.push(pow(n as i64, n as u32 - 1));
    }
    if values.len() == 2 && values[0] != values[1] {
        return Err(Error::Invariant(format!(
            "spot {j} at n = {n}: {} vs {}",
            values[0], values[1]
        )));
    }
    Ok(values.swap_remove(0))
}

/// Exact rational form of `spot_lucky_count(n, j) / (n+1)^(n-1)`.
pub fn spot_lucky_probability(n: usize, j: usize) -> Result<ExactRational> {
    Ok(BigRational::new(
        spot_lucky_count(n, j)?,
        parking_function_count(n as u64),
    ))
}

/// Limit of the probability that spot `j` is lucky, `a - b e^(-j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticConstant {
    pub j: usize,
    /// `a = (j+1)/(2j)`
    pub rational_part: ExactRational,
    /// `b = r_j`
    pub exp_coefficient: ExactRational,
    pub numeric: f64,
}

impl AsymptoticConstant {
    pub fn new(j: usize, rational_part: ExactRational, exp_coefficient: ExactRational) -> Self {
        let numeric = rational_to_f64(&rational_part)
            - rational_to_f64(&exp_coefficient) * (-(j as f64)).exp();
        AsymptoticConstant {
            j,
            rational_part,
            exp_coefficient,
            numeric,
        }
    }
}

pub fn rho_asymptotic(j: usize) -> Result<AsymptoticConstant> {
    let (a, b) = match j {
        1 => (ratio(1, 1), ratio(0, 1)),
        2 => (ratio(3, 4), ratio(1, 4)),
        3 => (ratio(2, 3), ratio(2, 3)),
        4 => (ratio(5, 8), ratio(13, 8)),
        5 => (ratio(3, 5), ratio(59, 15)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "asymptotic constant known only for 1 <= j <= 5, got {j}"
            )))
        }
    };
    Ok(AsymptoticConstant::new(j, a, b))
}

/// Weakly-increasing parking functions whose car (equivalently spot) `i`
/// is lucky: `C_(i-1) C_(n-i+1)`.
pub fn increasing_lucky_count(n: usize, i: usize) -> Result<ExactInt> {
    check_index("car", i, n)?;
    Ok(catalan(i as u64 - 1) * catalan((n - i + 1) as u64))
}

/// `3n / (n+2)`
pub fn increasing_expected(n: usize) -> ExactRational {
    ratio(3 * n as i64, n as i64 + 2)
}

/// Lattice paths from `(0,0)` to `(k, l)` staying weakly above `y = x`:
/// `((l-k+1)/(l+1)) C(k+l, k)`.
pub fn ballot_paths(k: usize, l: usize) -> Result<ExactInt> {
    if l < k {
        return Err(Error::InvalidArgument(format!(
            "ballot paths need l >= k, got k = {k}, l = {l}"
        )));
    }
    let (k, l) = (k as i64, l as i64);
    let v = ratio(l - k + 1, l + 1) * rational_from_int(binomial(k + l, k));
    expect_integer(&v, "ballot path count")
}

/// Weakly-decreasing parking functions where car `i` prefers spot `j` and
/// parks there; zero when `i + j > n + 1`.
pub fn decreasing_q(n: usize, i: usize, j: usize) -> Result<ExactInt> {
    check_index("car", i, n)?;
    check_index("spot", j, n)?;
    if i + j > n + 1 {
        return Ok(BigInt::zero());
    }
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let d = n - i - j + 2;
    let v = BigRational::new(int(d * d), int((n - i + 1) * (n - j + 1)))
        * rational_from_int(binomial(n - i + j - 1, j - 1) * binomial(n - j + i - 1, i - 1));
    expect_integer(&v, "decreasing q")
}

/// Column sum of [`decreasing_q`].
pub fn decreasing_spot_count_by_rows(n: usize, j: usize) -> Result<ExactInt> {
    check_index("spot", j, n)?;
    (1..=n + 1 - j).map(|i| decreasing_q(n, i, j)).sum()
}

/// `sum_(k=0)^(n-j) C_(n-1-k) C_k`
pub fn decreasing_spot_count_by_catalan(n: usize, j: usize) -> Result<ExactInt> {
    check_index("spot", j, n)?;
    Ok((0..=(n - j) as u64)
        .map(|k| catalan(n as u64 - 1 - k) * catalan(k))
        .sum())
}

/// Weakly-decreasing parking functions whose spot `j` is lucky. Both
/// expressions are evaluated; a disagreement is an invariant violation.
pub fn decreasing_spot_count(n: usize, j: usize) -> Result<ExactInt> {
    let by_rows = decreasing_spot_count_by_rows(n, j)?;
    let by_catalan = decreasing_spot_count_by_catalan(n, j)?;
    if by_rows != by_catalan {
        return Err(Error::Invariant(format!(
            "decreasing spot count at n = {n}, j = {j}: {by_rows} vs {by_catalan}"
        )));
    }
    Ok(by_rows)
}

/// Lucky spots summed over all weakly-decreasing parking functions,
/// `C(2n, n) / 2`.
pub fn decreasing_total(n: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let v = BigRational::new(binomial(2 * n as i64, n as i64), int(2));
    expect_integer(&v, "decreasing total")
}

/// `(n+1)/2`, checked against `decreasing_total(n) / C_n`.
pub fn decreasing_expected(n: usize) -> Result<ExactRational> {
    let expected = ratio(n as i64 + 1, 2);
    let total = decreasing_total(n)?;
    if &expected * rational_from_int(catalan(n as u64)) != rational_from_int(total.clone()) {
        return Err(Error::Invariant(format!(
            "decreasing expectation at n = {n}: {expected} * C_n != {total}"
        )));
    }
    Ok(expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ratio(n, d)
    }

    #[test]
    fn restricted_examples() {
        let r = |n, l: &[usize], u: &[usize]| {
            restricted_count(&RestrictionSets::new(n, l.to_vec(), u.to_vec()).unwrap())
                .unwrap()
        };
        assert_eq!(r(3, &[], &[]), int(16));
        assert_eq!(r(3, &[1], &[]), int(16));
        assert_eq!(r(4, &[1, 2, 3, 4], &[]), int(24));
        assert_eq!(r(3, &[2], &[1]), int(0));
        assert!(RestrictionSets::new(3, [1], [1]).is_err());
        assert!(RestrictionSets::new(3, [4], []).is_err());
    }

    #[test]
    fn lucky_polynomial_examples() {
        assert_eq!(lucky_polynomial(2).unwrap(), ExactPoly::from_ints(&[0, 1, 2]));
        assert_eq!(lucky_polynomial(3).unwrap(), ExactPoly::from_ints(&[0, 2, 8, 6]));
        let f7 = lucky_polynomial(7).unwrap();
        let expect = rational_from_int(factorial(8)) * harmonic(7).unwrap()
            - rational_from_int(int(14) * factorial(7));
        assert_eq!(f7.coeff(6), expect);
    }

    #[test]
    fn moments() {
        assert_eq!(factorial_moment(2, 1).unwrap(), q(5, 3));
        assert_eq!(factorial_moment(3, 1).unwrap(), q(9, 4));
        assert_eq!(factorial_moment(2, 2).unwrap(), q(4, 3));
        assert_eq!(factorial_moment(2, 3).unwrap(), q(0, 1));
        assert_eq!(mean_lucky(2).unwrap(), q(5, 3));
        assert_eq!(variance_lucky(2).unwrap(), q(2, 9));
        assert_eq!(mean_lucky(3).unwrap(), q(9, 4));
        assert_eq!(variance_lucky(1).unwrap(), q(0, 1));
        for n in 1..=12 {
            mean_lucky(n).unwrap();
            variance_lucky(n).unwrap();
        }
    }

    #[test]
    fn c_identities_match_polynomial() {
        for n in 2..=9 {
            let f = lucky_polynomial(n).unwrap();
            let c = |k: usize| expect_integer(&f.coeff(k), "c").unwrap();
            assert_eq!(c(1), c_one(n), "n = {n}");
            assert_eq!(c(2), c_two(n).unwrap(), "n = {n}");
            assert_eq!(c(n - 1), c_penultimate(n).unwrap(), "n = {n}");
            assert_eq!(c(n), c_all(n), "n = {n}");
            let total: ExactRational = f.coeffs().iter().sum();
            assert_eq!(total, rational_from_int(parking_function_count(n as u64)));
        }
    }

    #[test]
    fn partial_counts() {
        for n in 1..=6 {
            assert_eq!(partial_pf_count(n, n).unwrap(), parking_function_count(n as u64));
        }
        assert_eq!(partial_pf_count(2, 3).unwrap(), int(8));
        assert_eq!(partial_pf_count(1, 5).unwrap(), int(5));
        assert_eq!(partial_pf_count(0, 4).unwrap(), int(1));
        assert!(partial_pf_count(3, 2).is_err());
    }

    #[test]
    fn partial_counts_match_brute_force() {
        for t in 1..=5usize {
            for s in 0..=t {
                let mut parked = 0;
                for code in 0..t.pow(s as u32) {
                    let mut c = code;
                    let mut occ = vec![false; t];
                    let mut ok = true;
                    for _ in 0..s {
                        let pref = c % t;
                        c /= t;
                        match (pref..t).find(|&x| !occ[x]) {
                            Some(x) => occ[x] = true,
                            None => ok = false,
                        }
                    }
                    parked += ok as i64;
                }
                assert_eq!(partial_pf_count(s, t).unwrap(), int(parked), "s = {s}, t = {t}");
            }
        }
    }

    #[test]
    fn border_examples() {
        assert_eq!(q_border(7, 7, 4).unwrap(), int(5120));
        assert_eq!(q_border(7, 3, 1).unwrap(), int(43008));
        assert_eq!(q_border(7, 5, 7).unwrap(), int(16807));
        assert_eq!(q_border(7, 1, 6).unwrap(), int(24583));
        assert_eq!(q_border(7, 1, 1).unwrap(), int(65536));
        assert!(q_border(7, 3, 3).is_err());
        for n in 1..=12 {
            for &(i, j) in &[(1, 1), (1, n), (n, 1), (n, n)] {
                q_border(n, i, j).unwrap();
            }
        }
    }

    #[test]
    fn car_counts() {
        assert_eq!(car_lucky_count(7, 1).unwrap(), int(262144));
        assert_eq!(car_lucky_count(3, 2).unwrap(), int(12));
        for n in 1..=10usize {
            let last = car_lucky_count(n, n).unwrap();
            assert_eq!(
                BigRational::new(last, parking_function_count(n as u64)),
                q(2, n as i64 + 1)
            );
        }
        assert_eq!(total_lucky(1).unwrap(), int(1));
        assert_eq!(total_lucky(2).unwrap(), int(5));
        assert_eq!(total_lucky(3).unwrap(), int(36));
        assert_eq!(total_lucky(7).unwrap(), int(1146880));
    }

    #[test]
    fn spot_counts() {
        assert_eq!(spot_lucky_count(3, 2).unwrap(), int(11));
        assert_eq!(spot_lucky_count(5, 4).unwrap(), int(708));
        assert_eq!(spot_lucky_count(6, 5).unwrap(), int(8733));
        assert_eq!(spot_lucky_count(9, 9).unwrap(), int(43046721));
        for n in 1..=5 {
            spot_lucky_count(n, n).unwrap();
        }
        assert!(matches!(spot_lucky_count(8, 6), Err(Error::NoClosedForm { n: 8, j: 6 })));
        assert!(spot_lucky_count(3, 4).is_err());
    }

    #[test]
    fn rho_values() {
        let table = [0.716166, 0.633475, 0.595237, 0.573497];
        assert_eq!(rho_asymptotic(1).unwrap().numeric, 1.0);
        for (k, &v) in table.iter().enumerate() {
            let rho = rho_asymptotic(k + 2).unwrap();
            assert!((rho.numeric - v).abs() < 1e-6, "j = {}: {}", k + 2, rho.numeric);
        }
        assert!(rho_asymptotic(6).is_err());
    }

    #[test]
    fn increasing_examples() {
        assert_eq!(increasing_lucky_count(8, 3).unwrap(), int(264));
        for n in 1..=10 {
            assert_eq!(increasing_lucky_count(n, 1).unwrap(), catalan(n as u64));
        }
        assert_eq!(increasing_expected(4), q(2, 1));
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(ballot_paths(3, 3).unwrap(), int(5));
        assert_eq!(ballot_paths(2, 4).unwrap(), int(9));
        assert_eq!(ballot_paths(0, 6).unwrap(), int(1));
        assert!(ballot_paths(4, 2).is_err());
    }

    #[test]
    fn ballot_matches_dynamic_programming() {
        for k in 0..=8usize {
            for l in k..=10usize {
                // paths[x][y] with y >= x
                let mut paths = vec![vec![0u64; l + 1]; k + 1];
                paths[0][0] = 1;
                for x in 0..=k {
                    for y in x..=l {
                        if x == 0 && y == 0 {
                            continue;
                        }
                        let from_below = if y > 0 && y - 1 >= x { paths[x][y - 1] } else { 0 };
                        let from_left = if x > 0 { paths[x - 1][y] } else { 0 };
                        paths[x][y] = from_below + from_left;
                    }
                }
                assert_eq!(ballot_paths(k, l).unwrap(), int(paths[k][l] as i64), "k={k} l={l}");
            }
        }
    }

    #[test]
    fn decreasing_examples() {
        assert_eq!(decreasing_q(7, 2, 3).unwrap(), int(56));
        assert_eq!(decreasing_q(7, 3, 3).unwrap(), int(81));
        assert_eq!(decreasing_q(7, 5, 4).unwrap(), int(0));
        assert_eq!(decreasing_spot_count(7, 4).unwrap(), int(227));
        assert_eq!(decreasing_spot_count(7, 1).unwrap(), int(429));
        for n in 1..=12 {
            assert_eq!(decreasing_spot_count(n, n).unwrap(), catalan(n as u64 - 1));
        }
        assert_eq!(decreasing_total(7).unwrap(), int(1716));
        assert_eq!(decreasing_expected(7).unwrap(), q(4, 1));
        assert_eq!(decreasing_total(1).unwrap(), int(1));
        assert_eq!(decreasing_expected(1).unwrap(), q(1, 1));
        assert_eq!(decreasing_expected(4).unwrap(), q(5, 2));
    }

    #[test]
    fn decreasing_symmetry_and_dual_sums() {
        for n in 1..=12 {
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(decreasing_q(n, i, j).unwrap(), decreasing_q(n, j, i).unwrap());
                }
                decreasing_spot_count(n, i).unwrap();
            }
        }
    }
}
