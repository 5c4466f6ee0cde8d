//! Exact integers, rationals and dense rational polynomials, plus the
//! counting primitives (binomials, Catalan and Narayana numbers, harmonic
//! numbers) the rest of the crate is written against.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_from_int(v: ExactInt) -> ExactRational {
    BigRational::from_integer(v)
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: i64, exp: u32) -> ExactInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `base^exp` for any integer exponent, as an exact rational.
///
/// `0^0` is 1; a zero base with a negative exponent is rejected.
pub fn pow_signed(base: i64, exp: i64) -> Result<ExactRational> {
    if exp >= 0 {
        return Ok(rational_from_int(pow(base, exp as u32)));
    }
    if base == 0 {
        return Err(Error::InvalidArgument("0 raised to a negative power".into()));
    }
    Ok(rational_from_int(pow(base, (-exp) as u32)).recip())
}

pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// C(m, k), zero outside `0..=m`.
pub fn binomial(m: i64, k: i64) -> ExactInt {
    if m < 0 || k < 0 || k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        // acc = C(m, t) here; the product C(m, t) * (m - t) is divisible by t + 1.
        acc = acc * (m - t) / (t + 1);
    }
    acc
}

pub fn catalan(n: u64) -> ExactInt {
    binomial(2 * n as i64, n as i64) / (n + 1)
}

/// Narayana number N(n, k): Dyck paths of size `n` with exactly `k` peaks.
pub fn narayana(n: u64, k: u64) -> Result<ExactInt> {
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!(
            "narayana({n}, {k}) requires 1 <= k <= n"
        )));
    }
    let (n, k) = (n as i64, k as i64);
    let num = binomial(n - 1, k - 1) * binomial(n, k - 1);
    let (q, r) = num.div_rem(&BigInt::from(k));
    debug_assert!(r.is_zero());
    Ok(q)
}

pub fn harmonic(n: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("harmonic(0) is undefined".into()));
    }
    Ok((1..=n as i64).fold(BigRational::zero(), |acc, k| acc + ratio(1, k)))
}

/// Number of parking functions of length `m`, `(m+1)^(m-1)`; 1 for `m = 0`.
pub fn parking_function_count(m: u64) -> ExactInt {
    if m == 0 {
        return BigInt::one();
    }
    pow(m as i64 + 1, m as u32 - 1)
}

/// Returns the integer value of `r`, or an invariant error naming `what`.
pub fn expect_integer(r: &ExactRational, what: &str) -> Result<ExactInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Invariant(format!("{what} evaluated to non-integer {r}")))
    }
}

/// Nearest `f64` to an arbitrarily large exact rational.
///
/// The quotient is formed with roughly 64 significant bits before rounding,
/// so the result is accurate to a couple of ulps even when numerator and
/// denominator are far outside `f64` range.
pub fn rational_to_f64(r: &ExactRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().abs();
    let shift = 64 - (num.bits() as i64 - den.bits() as i64);
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let mantissa = q.to_f64().unwrap_or(f64::INFINITY);
    let value = scale_by_pow2(mantissa, -shift);
    if negative {
        -value
    } else {
        value
    }
}

fn scale_by_pow2(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Dense polynomial with exact rational coefficients, lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial
/// is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactPoly {
    coeffs: Vec<ExactRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational_from_int(int(c))).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `a*x + b`
    pub fn linear(a: ExactRational, b: ExactRational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coefficient(&self) -> ExactRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn evaluate(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Renders with `var` as the indeterminate, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

/// The unique polynomial of degree below `points.len()` through every point.
pub fn lagrange_interpolate(points: &[(ExactRational, ExactRational)]) -> Result<ExactPoly> {
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "interpolation needs at least one point".into(),
        ));
    }
    for (a, (xa, _)) in points.iter().enumerate() {
        if points[..a].iter().any(|(xb, _)| xb == xa) {
            return Err(Error::DuplicateNode(xa.to_string()));
        }
    }
    let mut result = ExactPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = ExactPoly::constant(BigRational::one());
        let mut denom = BigRational::one();
        for (k, (xk, _)) in points.iter().enumerate() {
            if k == i {
                continue;
            }
            basis = &basis * &ExactPoly::linear(BigRational::one(), -xk);
            denom *= xi - xk;
        }
        result = &result + &basis.scale(&(yi / denom));
    }
    Ok(result)
}

/// True when `r` has a positive denominator and is in lowest terms.
pub fn is_normalized(r: &ExactRational) -> bool {
    r.denom().sign() == Sign::Plus && r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ratio(n, d)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(6, 3), int(20));
        assert_eq!(binomial(7, -1), int(0));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(binomial(0, 0), int(1));
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), int(1));
        assert_eq!(catalan(6), int(132));
        assert_eq!(catalan(7), int(429));
    }

    #[test]
    fn catalan_matches_brute_force_path_count() {
        // count ±1 walks of length 2n that never dip below zero
        fn walks(n: u32) -> u64 {
            (0u32..1 << (2 * n))
                .filter(|bits| {
                    let mut h = 0i32;
                    for s in 0..2 * n {
                        h += if bits >> s & 1 == 1 { 1 } else { -1 };
                        if h < 0 {
                            return false;
                        }
                    }
                    h == 0
                })
                .count() as u64
        }
        for n in 0..=7 {
            assert_eq!(catalan(n as u64), int(walks(n) as i64), "n = {n}");
        }
    }

    #[test]
    fn narayana_values() {
        assert_eq!(narayana(4, 1).unwrap(), int(1));
        assert_eq!(narayana(4, 2).unwrap(), int(6));
        let total: ExactInt = (1..=7).map(|k| narayana(7, k).unwrap()).sum();
        assert_eq!(total, int(429));
        assert!(narayana(4, 0).is_err());
        assert!(narayana(4, 5).is_err());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), q(1, 1));
        assert_eq!(harmonic(3).unwrap(), q(11, 6));
        assert!(harmonic(0).is_err());
        // c_2 at n = 3 from the harmonic identity
        let n = 3i64;
        let c2 = rational_from_int(int(n + 1) * factorial(n as u64 - 1)) * harmonic(2).unwrap()
            - rational_from_int(int(n - 1) * factorial(n as u64 - 1));
        assert_eq!(c2, q(8, 1));
    }

    #[test]
    fn interpolation_examples() {
        let p = lagrange_interpolate(&[(q(0, 1), q(1, 1)), (q(1, 1), q(1, 1))]).unwrap();
        assert_eq!(p, ExactPoly::from_ints(&[1]));
        let p = lagrange_interpolate(&[(q(1, 1), q(1, 4)), (q(2, 1), q(1, 4))]).unwrap();
        assert_eq!(p, ExactPoly::constant(q(1, 4)));
        let p = lagrange_interpolate(&[(q(3, 1), q(5, 3)), (q(4, 1), q(7, 3)), (q(5, 1), q(3, 1))])
            .unwrap();
        assert_eq!(p, ExactPoly::new(vec![q(-1, 3), q(2, 3)]));
        assert!(matches!(
            lagrange_interpolate(&[(q(1, 1), q(1, 1)), (q(1, 1), q(2, 1))]),
            Err(Error::DuplicateNode(_))
        ));
        assert!(lagrange_interpolate(&[]).is_err());
    }

    #[test]
    fn poly_basics() {
        let p = ExactPoly::from_ints(&[1, 0, 3, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(ExactPoly::zero().degree(), None);
        assert_eq!(ExactPoly::from_ints(&[0, 0]), ExactPoly::zero());
        assert_eq!(p.derivative(), ExactPoly::from_ints(&[0, 6]));
        assert_eq!(p.evaluate(&q(2, 1)), q(13, 1));
        assert_eq!(p.display_in("n"), "3*n^2 + 1");
        assert_eq!(ExactPoly::new(vec![q(-1, 3), q(2, 3)]).display_in("n"), "2/3*n - 1/3");
    }

    #[test]
    fn rational_to_f64_handles_huge_operands() {
        let big = pow(10, 400);
        let r = BigRational::new(big.clone() * 3, big * 7);
        assert!((rational_to_f64(&r) - 3.0 / 7.0).abs() < 1e-16);
        let r = BigRational::new(int(-1), pow(2, 2000));
        assert_eq!(rational_to_f64(&r), 0.0);
        assert!((rational_to_f64(&q(-22, 7)) + 22.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn pow_signed_conventions() {
        assert_eq!(pow_signed(1, -1).unwrap(), q(1, 1));
        assert_eq!(pow_signed(0, 0).unwrap(), q(1, 1));
        assert_eq!(pow_signed(8, -1).unwrap(), q(1, 8));
        assert!(pow_signed(0, -2).is_err());
    }

    fn small_rational() -> impl Strategy<Value = ExactRational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d))
    }

    fn small_poly() -> impl Strategy<Value = ExactPoly> {
        prop::collection::vec(small_rational(), 0..7).prop_map(ExactPoly::new)
    }

    proptest! {
        #[test]
        fn binomial_symmetry(m in 0i64..60, k in 0i64..60) {
            prop_assume!(k <= m);
            prop_assert_eq!(binomial(m, k), binomial(m, m - k));
        }

        #[test]
        fn catalan_convolution(n in 1u64..30) {
            let conv: ExactInt = (0..n).map(|k| catalan(k) * catalan(n - 1 - k)).sum();
            prop_assert_eq!(catalan(n), conv);
        }

        #[test]
        fn derivative_matches_difference_quotient(p in small_poly(), x in small_rational()) {
            // p(x + h) as a polynomial in h; its linear coefficient is p'(x)
            let shifted = p.coeffs().iter().enumerate().fold(ExactPoly::zero(), |acc, (k, c)| {
                let base = ExactPoly::linear(BigRational::one(), x.clone());
                let term = (0..k).fold(ExactPoly::constant(BigRational::one()), |t, _| &t * &base);
                &acc + &term.scale(c)
            });
            let quotient = &shifted - &ExactPoly::constant(p.evaluate(&x));
            prop_assert!(quotient.coeff(0).is_zero());
            prop_assert_eq!(quotient.coeff(1), p.derivative().evaluate(&x));
        }

        #[test]
        fn interpolation_reproduces_points(ys in prop::collection::vec(small_rational(), 1..7), offset in -5i64..5) {
            let pts: Vec<_> = ys.iter().enumerate().map(|(i, y)| (ratio(i as i64 * 2 + offset, 1), y.clone())).collect();
            let p = lagrange_interpolate(&pts).unwrap();
            prop_assert!(p.degree().map_or(true, |d| d < pts.len()));
            for (x, y) in &pts {
                prop_assert_eq!(&p.evaluate(x), y);
            }
            for c in p.coeffs() {
                prop_assert!(is_normalized(c));
            }
        }
    }
}
