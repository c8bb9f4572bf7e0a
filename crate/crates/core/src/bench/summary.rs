//! Runtime-ratio statistics and output-equality verification.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::csp::AlgorithmId;

use super::{BenchError, DelayLevel, MeasurementRecord};

/// Grouping dimension for [`summarize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupBy {
    DelayLevel,
    Bucket,
    GridSize,
    All,
}

impl GroupBy {
    pub fn dimension_name(self) -> &'static str {
        match self {
            GroupBy::DelayLevel => "delay-level",
            GroupBy::Bucket => "bucket",
            GroupBy::GridSize => "grid-size",
            GroupBy::All => "all",
        }
    }
}

impl fmt::Display for GroupBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.dimension_name())
    }
}

impl FromStr for GroupBy {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "delay-level" => Ok(GroupBy::DelayLevel),
            "bucket" => Ok(GroupBy::Bucket),
            "grid-size" => Ok(GroupBy::GridSize),
            "all" => Ok(GroupBy::All),
            _ => Err(BenchError::InvalidPlan {
                message: format!(
                    "unknown grouping `{s}` (expected delay-level, bucket, grid-size or all)"
                ),
            }),
        }
    }
}

/// Trimmed ratio statistics of one (algorithm, group value) cell. Field
/// order is the summary CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSummary {
    pub algorithm: AlgorithmId,
    pub group_dimension: String,
    pub group_value: String,
    pub count: usize,
    pub mean: f64,
    pub p10: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub p90: f64,
}

/// Percentile by linear interpolation between closest ranks; `sorted`
/// must be ascending and non-empty.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of empty slice");
    let rank = q / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = rank - lo as f64;
        sorted[lo] * (1.0 - frac) + sorted[hi] * frac
    }
}

fn group_rank(group_by: GroupBy, r: &MeasurementRecord) -> (u32, String) {
    match group_by {
        GroupBy::DelayLevel => (u32::from(r.delay_level.code()), r.delay_level.to_string()),
        GroupBy::Bucket => (u32::from(r.bucket_lo_pct), r.bucket().to_string()),
        GroupBy::GridSize => (r.grid_n, r.grid_n.to_string()),
        GroupBy::All => (0, "all".to_string()),
    }
}

/// Per (algorithm, group value): runtime ratios trimmed to `[p1, p99]`,
/// then mean and the 10/25/50/75/90 percentiles of what remains. Output
/// order is algorithms in declaration order, then group values ascending.
pub fn summarize(records: &[MeasurementRecord], group_by: GroupBy) -> Vec<RatioSummary> {
    let alg_rank = |a: AlgorithmId| AlgorithmId::ALL.iter().position(|&x| x == a).unwrap();
    let mut groups: BTreeMap<(usize, u32, String), Vec<f64>> = BTreeMap::new();
    for r in records {
        let (rank, label) = group_rank(group_by, r);
        groups
            .entry((alg_rank(r.algorithm), rank, label))
            .or_default()
            .push(r.ratio());
    }

    let mut out = Vec::with_capacity(groups.len());
    for ((alg_idx, _, label), mut ratios) in groups {
        ratios.sort_by(|a, b| a.partial_cmp(b).expect("ratios are finite"));
        let lo = percentile(&ratios, 1.0);
        let hi = percentile(&ratios, 99.0);
        let kept: Vec<f64> = ratios.iter().copied().filter(|&x| x >= lo && x <= hi).collect();
        let mean = kept.iter().sum::<f64>() / kept.len() as f64;
        out.push(RatioSummary {
            algorithm: AlgorithmId::ALL[alg_idx],
            group_dimension: group_by.dimension_name().to_string(),
            group_value: label,
            count: kept.len(),
            mean,
            p10: percentile(&kept, 10.0),
            p25: percentile(&kept, 25.0),
            p50: percentile(&kept, 50.0),
            p75: percentile(&kept, 75.0),
            p90: percentile(&kept, 90.0),
        });
    }
    out
}

/// One output-equality violation.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub algorithm: AlgorithmId,
    pub grid_n: u32,
    pub bucket: String,
    pub delay_level: DelayLevel,
    pub request_id: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mismatch: algorithm={} n={} bucket={} level={} request={}",
            self.algorithm, self.grid_n, self.bucket, self.delay_level, self.request_id
        )
    }
}

/// Lists every record whose plain and bounded outputs differed; an empty
/// report is the pass condition.
pub fn verify_equality(records: &[MeasurementRecord]) -> Vec<Mismatch> {
    records
        .iter()
        .filter(|r| !r.outputs_equal)
        .map(|r| Mismatch {
            algorithm: r.algorithm,
            grid_n: r.grid_n,
            bucket: r.bucket().to_string(),
            delay_level: r.delay_level,
            request_id: r.request_id,
        })
        .collect()
}
