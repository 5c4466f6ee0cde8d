//! Fitting the correction term in spot-lucky counts.
//!
//! For each spot `j` the count is expected to take the form
//!
//! ```text
//! S_j(n) = (j+1)/(2j) (n+1)^(n-1) - f_j(n) (n-j+1)^(n-j+1)
//! ```
//!
//! with `f_j` a polynomial of degree `j - 2`. Given exact values of
//! `S_j(n)` this module solves for `f_j(n)` at each `n`, interpolates
//! through the first `j - 1` of them and checks the polynomial against
//! every remaining sample. Everything is exact; a sample that disagrees
//! refutes the fit instead of being averaged away.

use std::fmt;

use crate::closed_forms::AsymptoticConstant;
use crate::error::{Error, Result};
use crate::numeric::{
    lagrange_interpolate, pow, pow_signed, ratio, rational_from_int, ExactInt, ExactPoly,
    ExactRational,
};
use crate::oracle::{run_oracle, OracleOptions, Variant};
use crate::reference::spot_lucky_reference;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleSource {
    ClosedForm,
    Oracle,
    Embedded,
}

impl SampleSource {
    pub fn name(self) -> &'static str {
        match self {
            SampleSource::ClosedForm => "closed-form",
            SampleSource::Oracle => "oracle",
            SampleSource::Embedded => "embedded",
        }
    }
}

impl fmt::Display for SampleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub n: usize,
    pub value: ExactInt,
    pub source: SampleSource,
}

/// Outcome of the degree check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeClaim {
    /// Degree at most `j - 2` and at least one held-out sample matched.
    Verified,
    /// No held-out sample was available.
    Unverified,
    /// Held-out samples at these `n` disagree with the interpolant.
    Refuted(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionFit {
    pub j: usize,
    pub f_poly: ExactPoly,
    pub degree_claim: DegreeClaim,
    /// Coefficient of `n^(j-2)` in `f_poly`.
    pub r_j: ExactRational,
    pub predicted_rho: AsymptoticConstant,
    pub samples_used: Vec<Sample>,
    /// Samples the interpolant was built from; the rest were held out.
    pub support: Vec<usize>,
}

impl CorrectionFit {
    pub fn degree_claim_holds(&self) -> bool {
        self.degree_claim == DegreeClaim::Verified
    }

    pub fn is_exploratory(&self) -> bool {
        self.degree_claim == DegreeClaim::Unverified
    }

    pub fn held_out(&self) -> Vec<usize> {
        self.samples_used
            .iter()
            .map(|s| s.n)
            .filter(|n| !self.support.contains(n))
            .collect()
    }
}

/// `(j+1) / (2j)`
pub fn leading_constant(j: usize) -> ExactRational {
    ratio(j as i64 + 1, 2 * j as i64)
}

/// `f_j(n) = ((j+1)/(2j) (n+1)^(n-1) - S) / (n-j+1)^(n-j+1)` for each sample.
pub fn extract_f_values(j: usize, samples: &[Sample]) -> Result<Vec<(usize, ExactRational)>> {
    if j == 0 {
        return Err(Error::InvalidArgument("spot index starts at 1".into()));
    }
    samples
        .iter()
        .map(|s| {
            if s.n < j {
                return Err(Error::InvalidArgument(format!(
                    "sample n = {} is below j = {j}",
                    s.n
                )));
            }
            let n = s.n as i64;
            let m = n - j as i64 + 1;
            let lead = leading_constant(j) * rational_from_int(pow(n + 1, s.n as u32 - 1));
            let f = (lead - rational_from_int(s.value.clone())) / pow_signed(m, m)?;
            Ok((s.n, f))
        })
        .collect()
}

/// Exact values of `S_j(n)` for `n = j..=10`: the oracle up to `oracle_nmax`,
/// stored reference values beyond it.
pub fn gather_samples(j: usize, oracle_nmax: usize) -> Result<Vec<Sample>> {
    gather_samples_with(j, oracle_nmax, |n| {
        let opts = OracleOptions {
            threads: None,
            allow_long: n > Variant::All.limit(false),
        };
        Ok(run_oracle(n, Variant::All, &opts)?.table.column_sums())
    })
}

/// As [`gather_samples`], with the caller supplying column sums for `n`.
pub fn gather_samples_with(
    j: usize,
    oracle_nmax: usize,
    mut column_sums: impl FnMut(usize) -> Result<Vec<ExactInt>>,
) -> Result<Vec<Sample>> {
    let mut out = Vec::new();
    for n in j.max(1)..=10.max(oracle_nmax) {
        if n <= oracle_nmax {
            let sums = column_sums(n)?;
            out.push(Sample {
                n,
                value: sums[j - 1].clone(),
                source: SampleSource::Oracle,
            });
        } else if let Some(value) = spot_lucky_reference(n, j) {
            out.push(Sample {
                n,
                value,
                source: SampleSource::Embedded,
            });
        }
    }
    Ok(out)
}

pub fn fit_correction(j: usize, samples: &[Sample]) -> Result<CorrectionFit> {
    let mut samples = samples.to_vec();
    samples.sort_by_key(|s| s.n);
    if samples.windows(2).any(|w| w[0].n == w[1].n) {
        return Err(Error::InvalidArgument("samples repeat a value of n".into()));
    }
    let needed = j.saturating_sub(1);
    if samples.len() < needed.max(1) {
        return Err(Error::InvalidArgument(format!(
            "fitting j = {j} needs at least {} samples, got {}",
            needed.max(1),
            samples.len()
        )));
    }
    let values = extract_f_values(j, &samples)?;
    let as_point = |(n, f): &(usize, ExactRational)| (ratio(*n as i64, 1), f.clone());
    // f_1 has degree "-1": it must vanish everywhere
    let f_poly = if needed == 0 {
        ExactPoly::zero()
    } else {
        lagrange_interpolate(&values[..needed].iter().map(as_point).collect::<Vec<_>>())?
    };
    let support: Vec<usize> = values[..needed].iter().map(|(n, _)| *n).collect();
    let mismatched: Vec<usize> = values[needed..]
        .iter()
        .filter(|(n, f)| f_poly.evaluate(&ratio(*n as i64, 1)) != *f)
        .map(|(n, _)| *n)
        .collect();
    let degree_ok = f_poly.degree().is_none_or(|d| d + 2 <= j);
    let degree_claim = if !mismatched.is_empty() || !degree_ok {
        DegreeClaim::Refuted(mismatched)
    } else if values.len() == needed {
        DegreeClaim::Unverified
    } else {
        DegreeClaim::Verified
    };
    let r_j = if j >= 2 { f_poly.coeff(j - 2) } else { ratio(0, 1) };
    let predicted_rho = AsymptoticConstant::new(j, leading_constant(j), r_j.clone());
    Ok(CorrectionFit {
        j,
        f_poly,
        degree_claim,
        r_j,
        predicted_rho,
        samples_used: samples,
        support,
    })
}

/// `n^(j-2) (n-j+1)^(n-j+1) / (n+1)^(n-1)`, which tends to `e^(-j)`.
pub fn correction_ratio(n: usize, j: usize) -> Result<ExactRational> {
    if j == 0 || n < j {
        return Err(Error::InvalidArgument(format!("need 1 <= j <= n, got n = {n}, j = {j}")));
    }
    let n = n as i64;
    let m = n - j as i64 + 1;
    Ok(pow_signed(n, j as i64 - 2)? * pow_signed(m, m)? / pow_signed(n + 1, n - 1)?)
}
