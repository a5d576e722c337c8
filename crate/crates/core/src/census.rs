//! Exhaustive census of `m x n` crossing functions.
//!
//! Diagrams are enumerated in the integer order of their row-major bit
//! strings. The index space is cut into shards by its high bits; each shard
//! counts per-diagram statistics for its own range and every isotopy class
//! whose least member falls inside it, so partial rows merge by plain
//! addition and set union, and the result does not depend on the number of
//! workers.

use std::collections::BTreeSet;
use std::io::Write;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::CrossingMatrix;
use crate::error::{Result, WeaveError};
use crate::hyperbolicity::{hyperbolic_flag, no_adjacent_comparable_unchecked};
use crate::isotopy::{homeo_canonical_form_with_budget, orbit, DEFAULT_ORBIT_BUDGET};

/// Default limit on `m * n` for enumeration.
pub const DEFAULT_CEILING: usize = 25;

/// Hard limit on `m * n`; the counters and bounds are exact below it.
pub const MAX_CEILING: usize = 40;

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub ceiling: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub orbit_budget: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            ceiling: DEFAULT_CEILING,
            jobs: None,
            orbit_budget: DEFAULT_ORBIT_BUDGET,
        }
    }
}

/// Census statistics for one shape. Serializes to the CSV columns
/// `m,n,total,n_hyp,n_nc,classes_isotopy,classes_isotopy_hyp,classes_homeo_hyp,upper_bound,lower_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub m: usize,
    pub n: usize,
    pub total: u64,
    /// Crossing functions representing hyperbolic weaves.
    pub n_hyp: u64,
    /// Crossing functions with no adjacent comparable pair; 0 unless
    /// `m, n >= 2`.
    pub n_nc: u64,
    pub classes_isotopy: u64,
    pub classes_isotopy_hyp: u64,
    pub classes_homeo_hyp: u64,
    /// `(2^m - 2)^n`.
    pub upper_bound: u64,
    /// `2^(mn) - 2m 2^((m-2)n) 3^n - 2n 2^(m(n-2)) 3^m`, possibly negative;
    /// 0 unless `m, n >= 2`.
    pub lower_bound: i64,
    /// Sum of the sizes of all isotopy classes; equals `total`.
    #[serde(skip)]
    pub orbit_size_sum: u64,
}

pub const CSV_HEADER: &str = "m,n,total,n_hyp,n_nc,classes_isotopy,classes_isotopy_hyp,classes_homeo_hyp,upper_bound,lower_bound";

/// `(2^m - 2)^n`.
pub fn upper_bound(m: usize, n: usize) -> u128 {
    let base = (1u128 << m) - 2;
    base.pow(n as u32)
}

/// The lower bound on the number of diagrams with no adjacent comparable
/// pair; defined for `m, n >= 2`.
pub fn lower_bound(m: usize, n: usize) -> Option<i128> {
    if m < 2 || n < 2 {
        return None;
    }
    let (m, n) = (m as u32, n as u32);
    let pow2 = |e: u32| 1i128 << e;
    let total = pow2(m * n);
    let rows = 2 * m as i128 * pow2((m - 2) * n) * 3i128.pow(n);
    let cols = 2 * n as i128 * pow2(m * (n - 2)) * 3i128.pow(m);
    Some(total - rows - cols)
}

fn check_ceiling(m: usize, n: usize, ceiling: usize) -> Result<()> {
    let ceiling = ceiling.min(MAX_CEILING);
    if m * n > ceiling || m > crate::diagram::MAX_DIM || n > crate::diagram::MAX_DIM {
        return Err(WeaveError::CeilingExceeded { m, n, ceiling });
    }
    Ok(())
}

/// Every `m x n` diagram exactly once, in integer order of the row-major
/// bit string.
pub fn enumerate(m: usize, n: usize) -> Result<impl Iterator<Item = CrossingMatrix>> {
    enumerate_with_ceiling(m, n, DEFAULT_CEILING)
}

pub fn enumerate_with_ceiling(
    m: usize,
    n: usize,
    ceiling: usize,
) -> Result<impl Iterator<Item = CrossingMatrix>> {
    check_ceiling(m, n, ceiling)?;
    let total = 1u128 << (m * n);
    Ok((0..total).map(move |idx| CrossingMatrix::from_index(m, n, idx)))
}

#[derive(Debug, Default)]
struct Partial {
    n_hyp: u64,
    n_nc: u64,
    classes: u64,
    classes_hyp: u64,
    orbit_size_sum: u64,
    homeo: BTreeSet<CrossingMatrix>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.n_hyp += other.n_hyp;
        self.n_nc += other.n_nc;
        self.classes += other.classes;
        self.classes_hyp += other.classes_hyp;
        self.orbit_size_sum += other.orbit_size_sum;
        self.homeo.extend(other.homeo);
        self
    }
}

fn run_shard(m: usize, n: usize, lo: u64, hi: u64, budget: usize) -> Result<Partial> {
    let mut part = Partial::default();
    let width = (hi - lo) as usize;
    let mut visited = vec![0u64; width.div_ceil(64)];
    let nc_defined = m >= 2 && n >= 2;
    for idx in lo..hi {
        let matrix = CrossingMatrix::from_index(m, n, idx as u128);
        let hyperbolic = hyperbolic_flag(&matrix);
        part.n_hyp += hyperbolic as u64;
        if nc_defined && no_adjacent_comparable_unchecked(&matrix) {
            part.n_nc += 1;
        }
        let local = (idx - lo) as usize;
        if visited[local / 64] >> (local % 64) & 1 == 1 {
            continue;
        }
        // First unvisited diagram of its class inside this shard. Members
        // below `lo` mean the class belongs to an earlier shard.
        let orbit = orbit(&matrix, Some(budget))?;
        let mut owned = true;
        for member in orbit.members() {
            let k = member.index() as u64;
            if k < lo {
                owned = false;
            } else if k < hi {
                let kl = (k - lo) as usize;
                visited[kl / 64] |= 1 << (kl % 64);
            }
        }
        if owned {
            part.classes += 1;
            part.orbit_size_sum += orbit.len() as u64;
            if hyperbolic {
                part.classes_hyp += 1;
                part.homeo
                    .insert(homeo_canonical_form_with_budget(&matrix, budget)?.matrix);
            }
        }
    }
    Ok(part)
}

/// Shard boundaries from the high bits of the index space.
fn shard_ranges(total: u64, jobs: usize) -> Vec<(u64, u64)> {
    let shards = (jobs.max(1).next_power_of_two() as u64).min(total.max(1));
    let step = total / shards;
    (0..shards)
        .map(|s| (s * step, if s + 1 == shards { total } else { (s + 1) * step }))
        .collect()
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

pub fn census(m: usize, n: usize) -> Result<CensusRow> {
    census_with(m, n, &CensusConfig::default())
}

pub fn census_with(m: usize, n: usize, config: &CensusConfig) -> Result<CensusRow> {
    check_ceiling(m, n, config.ceiling)?;
    if m == 0 || n == 0 {
        return Err(WeaveError::Degenerate {
            required: "at least one warp and one weft",
            m,
            n,
        });
    }
    let total = 1u64 << (m * n);
    let jobs = config.jobs.unwrap_or_else(rayon::current_num_threads);
    let ranges = shard_ranges(total, jobs);
    let budget = config.orbit_budget;
    let merged = with_pool(config.jobs, || {
        ranges
            .par_iter()
            .map(|&(lo, hi)| run_shard(m, n, lo, hi, budget))
            .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))
    })?;
    Ok(CensusRow {
        m,
        n,
        total,
        n_hyp: merged.n_hyp,
        n_nc: merged.n_nc,
        classes_isotopy: merged.classes,
        classes_isotopy_hyp: merged.classes_hyp,
        classes_homeo_hyp: merged.homeo.len() as u64,
        upper_bound: upper_bound(m, n) as u64,
        lower_bound: lower_bound(m, n).unwrap_or(0) as i64,
        orbit_size_sum: merged.orbit_size_sum,
    })
}

/// Number of hyperbolic `m x n` crossing functions, without class counts.
pub fn count_hyperbolic(m: usize, n: usize, config: &CensusConfig) -> Result<u64> {
    check_ceiling(m, n, config.ceiling)?;
    if m == 0 || n == 0 {
        return Ok(0);
    }
    let total = 1u64 << (m * n);
    let jobs = config.jobs.unwrap_or_else(rayon::current_num_threads);
    let ranges = shard_ranges(total, jobs * 8);
    Ok(with_pool(config.jobs, || {
        ranges
            .par_iter()
            .map(|&(lo, hi)| {
                (lo..hi)
                    .filter(|&i| hyperbolic_flag(&CrossingMatrix::from_index(m, n, i as u128)))
                    .count() as u64
            })
            .sum()
    }))
}

/// Checks the counting bounds on a census row: `n_hyp <= (2^m - 2)^n`
/// always, and for `m, n >= 2` also
/// `max(0, lower_bound) <= n_nc <= n_hyp`.
pub fn bound_check(row: &CensusRow) -> bool {
    if row.n_hyp as u128 > upper_bound(row.m, row.n) {
        return false;
    }
    match lower_bound(row.m, row.n) {
        Some(lb) => row.n_nc as i128 >= lb.max(0) && row.n_nc <= row.n_hyp,
        None => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrendRow {
    pub n: usize,
    /// `n_hyp(2, n) / 2^(2n)`.
    #[serde(serialize_with = "ratio_str")]
    pub two_by_n: Ratio<u64>,
    /// `n_hyp(n, n) / 2^(n^2)`.
    #[serde(serialize_with = "ratio_str")]
    pub square: Ratio<u64>,
}

fn ratio_str<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl TrendRow {
    /// `n_hyp(2, n) / 2^(2n) <= (1 - 2^(1-2))^n = 2^-n`.
    pub fn within_bound(&self) -> bool {
        self.two_by_n <= Ratio::new(1, 1u64 << self.n)
    }
}

/// Exact proportions of hyperbolic crossing functions for `n = 1..=max_n`,
/// on `2 x n` and on `n x n` diagrams.
pub fn proportion_trend(max_n: usize, config: &CensusConfig) -> Result<Vec<TrendRow>> {
    check_ceiling(max_n, max_n, config.ceiling)?;
    (1..=max_n)
        .map(|n| {
            let two = count_hyperbolic(2, n, config)?;
            let square = count_hyperbolic(n, n, config)?;
            Ok(TrendRow {
                n,
                two_by_n: Ratio::new(two, 1u64 << (2 * n)),
                square: Ratio::new(square, 1u64 << (n * n)),
            })
        })
        .collect()
}

/// Writes census rows as CSV with the fixed header.
pub fn write_csv<W: Write>(rows: &[CensusRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
