//! Where numbers come from: enumeration (through the cache), closed forms
//! and stored reference values, cross-checked cell by cell.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::time::Instant;

use lucky_core::closed_forms::{
    decreasing_q, decreasing_spot_count, increasing_lucky_count, is_border, lucky_polynomial,
    q_border, spot_has_closed_form, spot_lucky_count, total_lucky,
};
use lucky_core::numeric::{expect_integer, narayana};
use lucky_core::oracle::cache::CacheEntry;
use lucky_core::oracle::{run_oracle_with_progress, OracleOptions};
use lucky_core::reference::{spot_lucky_reference, Q7, Q7_DECREASING};
use lucky_core::{ExactInt, LuckyDistribution, LuckyTable, Variant};

use crate::config::Settings;
use crate::{CliError, CliResult, Source};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Oracle,
    ClosedForm,
    Embedded,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::ClosedForm => "closed-form",
            Provenance::Embedded => "embedded",
        }
    }
}

/// One printed number and every source that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub value: Option<ExactInt>,
    pub sources: Vec<Provenance>,
}

impl Cell {
    pub fn missing() -> Self {
        Cell { value: None, sources: Vec::new() }
    }

    pub fn tag(&self) -> String {
        if self.sources.is_empty() {
            return "none".into();
        }
        self.sources.iter().map(|p| p.name()).collect::<Vec<_>>().join("=")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("-"),
        }
    }
}

/// Candidate values for one cell.
#[derive(Default)]
pub struct Candidates {
    pub oracle: Option<ExactInt>,
    pub closed: Option<ExactInt>,
    pub embedded: Option<ExactInt>,
}

impl Candidates {
    /// Keeps the sources allowed by `source`, failing if two of them disagree.
    pub fn resolve(self, source: Source, label: &str) -> CliResult<Cell> {
        let mut found: Vec<(Provenance, ExactInt)> = Vec::new();
        if source != Source::Closed {
            if let Some(v) = self.oracle {
                found.push((Provenance::Oracle, v));
            }
        }
        if source != Source::Oracle {
            if let Some(v) = self.closed {
                found.push((Provenance::ClosedForm, v));
            }
        }
        if source == Source::Both {
            if let Some(v) = self.embedded {
                found.push((Provenance::Embedded, v));
            }
        }
        let Some((_, first)) = found.first().cloned() else {
            return Ok(Cell::missing());
        };
        if let Some((p, v)) = found.iter().find(|(_, v)| *v != first) {
            let listing = found
                .iter()
                .map(|(p, v)| format!("{} {v}", p.name()))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(CliError::negative(format!(
                "{label}: sources disagree ({listing}; first mismatch {} {v})",
                p.name()
            )));
        }
        Ok(Cell {
            value: Some(first),
            sources: found.into_iter().map(|(p, _)| p).collect(),
        })
    }
}

pub struct Data {
    pub settings: Settings,
    memo: RefCell<HashMap<(Variant, usize), CacheEntry>>,
}

impl Data {
    pub fn new(settings: Settings) -> Self {
        Data { settings, memo: RefCell::new(HashMap::new()) }
    }

    pub fn options(&self) -> OracleOptions {
        OracleOptions {
            threads: self.settings.threads,
            allow_long: self.settings.allow_long,
        }
    }

    pub fn within_limit(&self, n: usize, variant: Variant) -> bool {
        n >= 1 && n <= variant.limit(self.settings.allow_long)
    }

    /// Enumeration result for `(variant, n)`, from the cache when present.
    pub fn oracle(&self, n: usize, variant: Variant) -> CliResult<CacheEntry> {
        if let Some(e) = self.memo.borrow().get(&(variant, n)) {
            return Ok(e.clone());
        }
        let cached = match &self.settings.cache {
            Some(c) => c.load(variant, n)?,
            None => None,
        };
        let entry = match cached {
            Some(e) => e,
            None => {
                let start = Instant::now();
                let report = |done: usize, total: usize| {
                    let mut err = std::io::stderr().lock();
                    let _ = write!(err, "\renumerating {variant} n={n}: {done}/{total} subtrees");
                    if done == total {
                        let _ = writeln!(err);
                    }
                };
                let noisy = variant == Variant::All && n >= 10;
                let result = run_oracle_with_progress(
                    n,
                    variant,
                    &self.options(),
                    if noisy { Some(&report) } else { None },
                )?;
                let entry = CacheEntry::from_result(&result, start.elapsed().as_secs_f64());
                if let Some(c) = &self.settings.cache {
                    c.store(&entry)?;
                }
                entry
            }
        };
        self.memo.borrow_mut().insert((variant, n), entry.clone());
        Ok(entry)
    }

    pub fn table(&self, n: usize, variant: Variant) -> CliResult<LuckyTable> {
        Ok(self.oracle(n, variant)?.table())
    }

    pub fn distribution(&self, n: usize, variant: Variant) -> CliResult<LuckyDistribution> {
        Ok(self.oracle(n, variant)?.distribution())
    }

    fn oracle_if(&self, source: Source, n: usize, variant: Variant) -> CliResult<Option<CacheEntry>> {
        match source {
            Source::Closed => Ok(None),
            Source::Oracle => Ok(Some(self.oracle(n, variant)?)),
            Source::Both if self.within_limit(n, variant) => Ok(Some(self.oracle(n, variant)?)),
            Source::Both => Ok(None),
        }
    }

    /// `q[i][j]` for every cell; `None` marks a cell no allowed source covers.
    pub fn q_cells(&self, n: usize, variant: Variant, source: Source) -> CliResult<Vec<Vec<Cell>>> {
        let oracle = self.oracle_if(source, n, variant)?.map(|e| e.table());
        let mut rows = Vec::with_capacity(n);
        for i in 1..=n {
            let mut row = Vec::with_capacity(n);
            for j in 1..=n {
                let cand = Candidates {
                    oracle: oracle.as_ref().map(|t| t.get(i, j).clone()),
                    closed: q_closed(n, variant, i, j)?,
                    embedded: q_embedded(n, variant, i, j),
                };
                row.push(cand.resolve(source, &format!("q({i},{j}) at n = {n}"))?);
            }
            rows.push(row);
        }
        require_complete(&rows, n, variant, source)?;
        Ok(rows)
    }

    /// Parking functions with spot `j` lucky, `j = 1..=n`.
    pub fn column_cells(&self, n: usize, variant: Variant, source: Source) -> CliResult<Vec<Cell>> {
        let oracle = self.oracle_if(source, n, variant)?.map(|e| e.table().column_sums());
        let row = (1..=n)
            .map(|j| {
                Candidates {
                    oracle: oracle.as_ref().map(|c| c[j - 1].clone()),
                    closed: column_closed(n, variant, j)?,
                    embedded: (variant == Variant::All).then(|| spot_lucky_reference(n, j)).flatten(),
                }
                .resolve(source, &format!("spot {j} lucky at n = {n}"))
            })
            .collect::<CliResult<Vec<_>>>()?;
        require_complete(std::slice::from_ref(&row), n, variant, source)?;
        Ok(row)
    }

    /// Parking functions with exactly `k` lucky cars, `k = 1..=n`.
    pub fn distribution_cells(&self, n: usize, variant: Variant, source: Source) -> CliResult<Vec<Cell>> {
        let oracle = self.oracle_if(source, n, variant)?.map(|e| e.distribution());
        let poly = if variant == Variant::All && source != Source::Oracle {
            Some(lucky_polynomial(n)?)
        } else {
            None
        };
        let row = (1..=n)
            .map(|k| {
                let closed = match variant {
                    Variant::All => poly
                        .as_ref()
                        .map(|p| expect_integer(&p.coeff(k), "lucky polynomial coefficient"))
                        .transpose()?,
                    Variant::WeaklyDecreasing => Some(narayana(n as u64, k as u64)?),
                    Variant::WeaklyIncreasing => None,
                };
                Candidates {
                    oracle: oracle.as_ref().map(|d| d.c(k)),
                    closed,
                    embedded: None,
                }
                .resolve(source, &format!("c_{k} at n = {n}"))
            })
            .collect::<CliResult<Vec<_>>>()?;
        require_complete(std::slice::from_ref(&row), n, variant, source)?;
        Ok(row)
    }

    /// Total lucky cars over all parking functions of length `n`.
    pub fn total_lucky_cell(&self, n: usize, source: Source) -> CliResult<Cell> {
        let oracle = self
            .oracle_if(source, n, Variant::All)?
            .map(|e| e.table().total());
        Candidates {
            oracle,
            closed: Some(total_lucky(n)?),
            embedded: None,
        }
        .resolve(source, &format!("total lucky at n = {n}"))
    }
}

fn require_complete(rows: &[Vec<Cell>], n: usize, variant: Variant, source: Source) -> CliResult<()> {
    // closed-form-only output shows uncovered cells as `-`
    if source == Source::Closed || rows.iter().flatten().all(|c| c.value.is_some()) {
        return Ok(());
    }
    let limit = variant.limit(false);
    Err(CliError::usage(format!(
        "n = {n} is beyond the enumeration limit {limit} for {variant} and no other source covers every cell; pass --allow-long"
    )))
}

pub fn q_closed(n: usize, variant: Variant, i: usize, j: usize) -> CliResult<Option<ExactInt>> {
    Ok(match variant {
        Variant::All if is_border(n, i, j) => Some(q_border(n, i, j)?),
        Variant::All => None,
        // a lucky car in a weakly increasing parking function sits in its own index
        Variant::WeaklyIncreasing if i == j => Some(increasing_lucky_count(n, i)?),
        Variant::WeaklyIncreasing => Some(ExactInt::from(0)),
        Variant::WeaklyDecreasing => Some(decreasing_q(n, i, j)?),
    })
}

pub fn q_embedded(n: usize, variant: Variant, i: usize, j: usize) -> Option<ExactInt> {
    match (variant, n) {
        (Variant::All, 7) => Some(Q7[i - 1][j - 1].into()),
        (Variant::WeaklyDecreasing, 7) => Some(Q7_DECREASING[i - 1][j - 1].into()),
        _ => None,
    }
}

pub fn column_closed(n: usize, variant: Variant, j: usize) -> CliResult<Option<ExactInt>> {
    Ok(match variant {
        Variant::All if spot_has_closed_form(n, j) => Some(spot_lucky_count(n, j)?),
        Variant::All => None,
        Variant::WeaklyIncreasing => Some(increasing_lucky_count(n, j)?),
        Variant::WeaklyDecreasing => Some(decreasing_spot_count(n, j)?),
    })
}
