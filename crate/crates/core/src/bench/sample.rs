//! Request generation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::csp::CspRequest;
use crate::engine::{dijkstra, WeightFn};
use crate::graph::{hop_distance, path_attrs, Graph, GridSpec, NodeId};

use super::{BenchError, Bucket, DelayLevel};

/// A request together with the two untimed reference distances that place
/// its delay bound: the least-delay distance `d_min` and the delay of the
/// least-cost path `d_lc`.
#[derive(Clone, Debug)]
pub struct SampledRequest {
    pub request: CspRequest,
    pub d_min: f64,
    pub d_lc: f64,
}

/// One sampling attempt: source uniform over all nodes, destination
/// uniform over the nodes in the bucket's hop range, reference distances
/// from untimed unbounded searches, delay bound uniform in the level's
/// range. `None` asks the caller to retry: the candidate set was empty,
/// the pair unreachable, or `d_lc == d_min` (the levels have no width).
pub fn sample_request(
    g: &Graph,
    bucket: Bucket,
    level: DelayLevel,
    pair_rng: &mut ChaCha12Rng,
    delta_rng: &mut ChaCha12Rng,
) -> Option<SampledRequest> {
    let spec = g.grid_spec().expect("request sampling needs a grid graph");
    let src = NodeId(pair_rng.random_range(0..g.node_count() as u32));
    attempt(g, spec, bucket, level, src, false, pair_rng, delta_rng)
}

#[allow(clippy::too_many_arguments)]
fn attempt(
    g: &Graph,
    spec: GridSpec,
    bucket: Bucket,
    level: DelayLevel,
    src: NodeId,
    allow_degenerate: bool,
    pair_rng: &mut ChaCha12Rng,
    delta_rng: &mut ChaCha12Rng,
) -> Option<SampledRequest> {
    let candidates: Vec<NodeId> = g
        .nodes()
        .filter(|&v| bucket.contains_hops(spec, hop_distance(spec, src, v)))
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let dst = candidates[pair_rng.random_range(0..candidates.len())];
    debug_assert_ne!(src, dst, "hop range excludes zero");

    let d_min = dijkstra(g, src, WeightFn::Delay, Some(dst)).dist(dst);
    if !d_min.is_finite() {
        return None;
    }
    let least_cost = dijkstra(g, src, WeightFn::Cost, Some(dst))
        .extract_path(dst)
        .expect("dst reachable");
    let d_lc = path_attrs(g, &least_cost).expect("engine path").delay;
    if d_lc == d_min && !allow_degenerate {
        return None;
    }

    let delay_bound = match level {
        DelayLevel::Infeasible => delta_rng.random_range(0.5 * d_min..d_min),
        DelayLevel::Level(i) => {
            let width = (d_lc - d_min) / 7.0;
            let lo = d_min + f64::from(i - 1) * width;
            if width == 0.0 {
                // Degenerate pair: the whole feasible range is one point.
                d_min
            } else if i == 7 {
                // The loosest level's top edge is closed: the least-cost
                // path is feasible exactly there.
                delta_rng.random_range(lo..=d_lc)
            } else {
                delta_rng.random_range(lo..lo + width)
            }
        }
    };
    let request = CspRequest::new(src, dst, delay_bound).expect("positive bound, src != dst");
    Some(SampledRequest { request, d_min, d_lc })
}

/// Repeated-draw sampler for one (bucket, level) workload.
///
/// Sources are drawn uniformly over the nodes that have at least one
/// in-bucket destination (the conditional distribution of "draw any node,
/// redraw while its candidate set is empty"). A pair whose `d_lc` equals
/// `d_min` is redrawn a few times; buckets made up entirely of such pairs
/// (short-hop buckets on small grids, where the single cheapest hop is
/// also the least-delay one) would never yield otherwise, so after the
/// strict tries the pair is accepted and every feasible level collapses
/// to the point `d_min`.
pub struct RequestSampler {
    spec: GridSpec,
    bucket: Bucket,
    level: DelayLevel,
    src_pool: Vec<NodeId>,
    pair_rng: ChaCha12Rng,
    delta_rng: ChaCha12Rng,
}

/// Strict attempts per request before degenerate pairs are accepted.
const STRICT_TRIES: usize = 8;

impl RequestSampler {
    pub fn new(
        spec: GridSpec,
        bucket: Bucket,
        level: DelayLevel,
        pair_seed: u64,
        delta_seed: u64,
    ) -> Result<Self, BenchError> {
        let nodes = spec.node_count() as u32;
        let src_pool: Vec<NodeId> = (0..nodes)
            .map(NodeId)
            .filter(|&src| {
                (0..nodes)
                    .map(NodeId)
                    .any(|v| bucket.contains_hops(spec, hop_distance(spec, src, v)))
            })
            .collect();
        if src_pool.is_empty() {
            return Err(BenchError::InvalidPlan {
                message: format!("bucket {bucket} contains no pairs on an n={} grid", spec.n),
            });
        }
        Ok(Self {
            spec,
            bucket,
            level,
            src_pool,
            pair_rng: ChaCha12Rng::seed_from_u64(pair_seed),
            delta_rng: ChaCha12Rng::seed_from_u64(delta_seed),
        })
    }

    /// Draws the next request on `g`, decrementing `budget` per attempt.
    pub fn sample(&mut self, g: &Graph, budget: &mut usize) -> Result<SampledRequest, BenchError> {
        let mut tries = 0;
        loop {
            if *budget == 0 {
                return Err(BenchError::SamplingExhausted {
                    grid_n: self.spec.n,
                    bucket: self.bucket,
                    level: self.level,
                });
            }
            *budget -= 1;
            let src = self.src_pool[self.pair_rng.random_range(0..self.src_pool.len())];
            if let Some(sampled) = attempt(
                g,
                self.spec,
                self.bucket,
                self.level,
                src,
                tries >= STRICT_TRIES,
                &mut self.pair_rng,
                &mut self.delta_rng,
            ) {
                return Ok(sampled);
            }
            tries += 1;
        }
    }
}
