//! Benchmark harness: paired plain/bounded timings over grid workloads.
//!
//! A *cell* is one combination of grid size, distance bucket and delay
//! level. Per cell the harness builds a deterministic grid, samples
//! routing requests (untimed), then solves every request once in Plain
//! and once in Bounded mode on a monotonic nanosecond clock, alternating
//! which mode goes first. Ratios `t_plain / t_bounded` are summarized
//! per group with trimmed percentile statistics.

mod csv_io;
mod run;
mod sample;
mod summary;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csp::AlgorithmId;
use crate::graph::{GraphError, GridSpec, NodeId};

pub use csv_io::{
    read_measurements, write_measurements, write_requests, write_summaries, RequestRecord,
};
pub use run::{run_cell, run_plan};
pub use sample::{sample_request, RequestSampler, SampledRequest};
pub use summary::{percentile, summarize, verify_equality, GroupBy, Mismatch, RatioSummary};

/// Distance bucket: source/destination pairs whose least-hop distance lies
/// in `(lo% , hi%]` of the grid's longest least-hop distance `2(N-1)`.
/// The full range `0-100` stands for unconstrained random pairs, the way
/// the distance dimension is aggregated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bucket {
    lo_pct: u8,
    hi_pct: u8,
}

impl Bucket {
    pub fn new(lo_pct: u8, hi_pct: u8) -> Result<Self, BenchError> {
        if lo_pct >= hi_pct || hi_pct > 100 || !lo_pct.is_multiple_of(10) || !hi_pct.is_multiple_of(10) {
            return Err(BenchError::InvalidBucket { lo_pct, hi_pct });
        }
        Ok(Self { lo_pct, hi_pct })
    }

    /// The ten standard deciles `0-10`, `10-20`, ..., `90-100`.
    pub fn deciles() -> Vec<Bucket> {
        (0..10)
            .map(|i| Bucket { lo_pct: i * 10, hi_pct: (i + 1) * 10 })
            .collect()
    }

    /// The whole range, i.e. random pairs without a distance constraint.
    pub fn aggregate() -> Bucket {
        Bucket { lo_pct: 0, hi_pct: 100 }
    }

    pub fn is_aggregate(self) -> bool {
        self.lo_pct == 0 && self.hi_pct == 100
    }

    pub fn lo_pct(self) -> u8 {
        self.lo_pct
    }

    pub fn hi_pct(self) -> u8 {
        self.hi_pct
    }

    /// Half-open hop range `(lo, hi]` scaled to the grid diameter.
    pub fn contains_hops(self, spec: GridSpec, hops: u32) -> bool {
        let longest = spec.max_hop_distance() as f64;
        let h = hops as f64;
        h > longest * (self.lo_pct as f64 / 100.0) && h <= longest * (self.hi_pct as f64 / 100.0)
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo_pct, self.hi_pct)
    }
}

impl FromStr for Bucket {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let parse = || -> Option<(u8, u8)> {
            let (lo, hi) = s.split_once('-')?;
            Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
        };
        let (lo, hi) = parse().ok_or(BenchError::MalformedBucket { text: s.to_string() })?;
        Bucket::new(lo, hi)
    }
}

/// Tightness of the delay constraint relative to the request's own
/// least-delay (`d_min`) and least-cost-path (`d_lc`) delays.
///
/// `Level(i)` draws the bound from the i-th of seven equal sub-ranges of
/// `[d_min, d_lc]` (the last one closed at `d_lc`, where the least-cost
/// path becomes feasible). `Infeasible` draws from `[d_min / 2, d_min)`,
/// below which no feasible path exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DelayLevel {
    Infeasible,
    Level(u8),
}

impl DelayLevel {
    /// All eight levels: infeasible plus 1..=7.
    pub fn all() -> Vec<DelayLevel> {
        let mut v = vec![DelayLevel::Infeasible];
        v.extend((1..=7).map(DelayLevel::Level));
        v
    }

    pub fn level(i: u8) -> Result<DelayLevel, BenchError> {
        if (1..=7).contains(&i) {
            Ok(DelayLevel::Level(i))
        } else {
            Err(BenchError::MalformedLevel { text: i.to_string() })
        }
    }

    /// Stable numeric code: 0 for infeasible, the index otherwise.
    pub fn code(self) -> u8 {
        match self {
            DelayLevel::Infeasible => 0,
            DelayLevel::Level(i) => i,
        }
    }
}

impl fmt::Display for DelayLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DelayLevel::Infeasible => f.write_str("infeasible"),
            DelayLevel::Level(i) => write!(f, "{i}"),
        }
    }
}

impl FromStr for DelayLevel {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        if s == "infeasible" {
            return Ok(DelayLevel::Infeasible);
        }
        s.parse::<u8>()
            .map_err(|_| BenchError::MalformedLevel { text: s.to_string() })
            .and_then(DelayLevel::level)
    }
}

impl Serialize for DelayLevel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DelayLevel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Everything needed to reproduce one experiment run.
#[derive(Clone, Debug)]
pub struct Plan {
    pub algorithms: Vec<AlgorithmId>,
    pub grid_sizes: Vec<u32>,
    pub buckets: Vec<Bucket>,
    pub levels: Vec<DelayLevel>,
    /// Requests per bucketed cell, warm-up prefix included.
    pub requests_per_cell: usize,
    pub warmup_per_cell: usize,
    /// Requests per aggregate (`0-100` bucket) cell.
    pub aggregate_requests: usize,
    pub aggregate_warmup: usize,
    pub graphs_per_cell: usize,
    pub master_seed: u64,
    /// Worker threads over cells; timing inside a cell is always
    /// sequential.
    pub jobs: usize,
    /// Print per-cell progress to stderr.
    pub progress: bool,
}

impl Default for Plan {
    fn default() -> Self {
        Self {
            algorithms: AlgorithmId::ALL.to_vec(),
            grid_sizes: (6..=20).collect(),
            buckets: Bucket::deciles(),
            levels: DelayLevel::all(),
            requests_per_cell: 5000,
            warmup_per_cell: 500,
            aggregate_requests: 50_000,
            aggregate_warmup: 5000,
            graphs_per_cell: 1,
            master_seed: 0,
            jobs: 1,
            progress: false,
        }
    }
}

impl Plan {
    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |msg: &str| Err(BenchError::InvalidPlan { message: msg.to_string() });
        if self.algorithms.is_empty() {
            return fail("at least one algorithm is required");
        }
        if self.grid_sizes.is_empty() || self.grid_sizes.iter().any(|&n| n < 2) {
            return fail("grid sizes must be non-empty and at least 2");
        }
        if self.buckets.is_empty() || self.levels.is_empty() {
            return fail("buckets and levels must be non-empty");
        }
        if self.warmup_per_cell >= self.requests_per_cell
            || self.aggregate_warmup >= self.aggregate_requests
        {
            return fail("warm-up must be smaller than the request count");
        }
        if self.graphs_per_cell == 0 || self.jobs == 0 {
            return fail("graphs-per-cell and jobs must be positive");
        }
        Ok(())
    }

    /// Request and warm-up counts for a cell with this bucket.
    pub fn cell_counts(&self, bucket: Bucket) -> (usize, usize) {
        if bucket.is_aggregate() {
            (self.aggregate_requests, self.aggregate_warmup)
        } else {
            (self.requests_per_cell, self.warmup_per_cell)
        }
    }
}

/// One paired measurement. Field order is the measurement CSV column
/// order. `request_id` is the request's absolute index within its cell,
/// warm-up included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub algorithm: AlgorithmId,
    pub grid_n: u32,
    pub bucket_lo_pct: u8,
    pub bucket_hi_pct: u8,
    pub delay_level: DelayLevel,
    pub request_id: u64,
    pub src: NodeId,
    pub dst: NodeId,
    pub delay_bound: f64,
    pub t_plain_ns: u64,
    pub t_bounded_ns: u64,
    pub plain_pushes: u64,
    pub plain_pops: u64,
    pub bounded_pushes: u64,
    pub bounded_pops: u64,
    pub outputs_equal: bool,
    pub path_cost: Option<f64>,
    pub path_delay: Option<f64>,
}

impl MeasurementRecord {
    pub fn ratio(&self) -> f64 {
        self.t_plain_ns as f64 / self.t_bounded_ns as f64
    }

    pub fn bucket(&self) -> Bucket {
        Bucket { lo_pct: self.bucket_lo_pct, hi_pct: self.bucket_hi_pct }
    }
}

/// Deterministic sub-stream seeding: all randomness flows from the master
/// seed through named streams, so adding algorithms or levels never
/// perturbs the draws of existing ones.
pub fn derive_seed(master: u64, stream: &str, salts: &[u64]) -> u64 {
    fn splitmix64(mut x: u64) -> u64 {
        x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let mut h = splitmix64(master ^ 0x6A09_E667_F3BC_C908);
    for b in stream.bytes() {
        h = splitmix64(h ^ u64::from(b));
    }
    for &s in salts {
        h = splitmix64(h ^ s);
    }
    h
}

/// The grid used by run and gen for a given master seed, size and graph
/// index; shared across buckets and levels so request workloads on one
/// grid size are paired.
pub fn grid_spec_for(master: u64, n: u32, graph_idx: usize) -> GridSpec {
    GridSpec::new(n, derive_seed(master, "weights", &[u64::from(n), graph_idx as u64]))
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid bucket {lo_pct}-{hi_pct}: bounds must be multiples of 10 with lo < hi <= 100")]
    InvalidBucket { lo_pct: u8, hi_pct: u8 },
    #[error("malformed bucket `{text}` (expected `lo-hi` or `all`)")]
    MalformedBucket { text: String },
    #[error("malformed delay level `{text}` (expected `infeasible` or 1..7)")]
    MalformedLevel { text: String },
    #[error("invalid plan: {message}")]
    InvalidPlan { message: String },
    #[error("request sampling budget exhausted for n={grid_n} bucket={bucket} level={level}")]
    SamplingExhausted { grid_n: u32, bucket: Bucket, level: DelayLevel },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bucket_parsing_and_ranges() {
        let b: Bucket = "0-10".parse().unwrap();
        assert_eq!((b.lo_pct(), b.hi_pct()), (0, 10));
        assert!("5-15".parse::<Bucket>().is_err());
        assert!("30-20".parse::<Bucket>().is_err());
        assert!("0-110".parse::<Bucket>().is_err());
        assert!("x".parse::<Bucket>().is_err());

        let spec = GridSpec::new(6, 0);
        assert!(b.contains_hops(spec, 1));
        assert!(!b.contains_hops(spec, 0));
        assert!(!b.contains_hops(spec, 2));
        let top: Bucket = "90-100".parse().unwrap();
        assert!(top.contains_hops(spec, 10));
        assert!(!top.contains_hops(spec, 9));
    }

    #[test]
    fn level_parsing() {
        assert_eq!("infeasible".parse::<DelayLevel>().unwrap(), DelayLevel::Infeasible);
        assert_eq!("3".parse::<DelayLevel>().unwrap(), DelayLevel::Level(3));
        assert!("0".parse::<DelayLevel>().is_err());
        assert!("8".parse::<DelayLevel>().is_err());
        assert_eq!(DelayLevel::all().len(), 8);
    }

    #[test]
    fn derived_seeds_are_stream_separated() {
        let a = derive_seed(7, "weights", &[6]);
        let b = derive_seed(7, "pairs", &[6]);
        let c = derive_seed(8, "weights", &[6]);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(7, "weights", &[6]));
    }

    #[test]
    fn plan_validation_catches_bad_counts() {
        let mut plan = Plan::default();
        plan.warmup_per_cell = plan.requests_per_cell;
        assert!(plan.validate().is_err());
        assert!(Plan::default().validate().is_ok());
    }
}
