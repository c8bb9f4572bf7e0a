//! Shortest-path search engines.
//!
//! All engines share the same scheme: a scalar weight function over the
//! two edge metrics, an optional bound, and a result holding per-node
//! distances, predecessors and operation counters. A finite bound makes an
//! engine discard any relaxation whose tentative distance exceeds it, so
//! the search settles exactly the nodes whose true distance is within the
//! bound and terminates early instead of exploring the rest of the graph.

mod bellman_ford;
mod chong;
mod dijkstra;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeWeights, NodeId, Path};

pub use bellman_ford::bellman_ford;
pub use chong::{chong_ksp, chong_ksp_traced, KspLabel, KspResult};
pub use dijkstra::{
    bounded_dijkstra, bounded_dijkstra_reverse, bounded_dijkstra_traced, dijkstra,
};

/// Scalar weight function evaluated per edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightFn {
    Cost,
    Delay,
    /// `cost + lambda * delay` with `lambda >= 0`; strictly positive on
    /// every edge because both metrics are.
    Linear(f64),
}

impl WeightFn {
    #[inline]
    pub fn eval(self, w: EdgeWeights) -> f64 {
        match self {
            WeightFn::Cost => w.cost,
            WeightFn::Delay => w.delay,
            WeightFn::Linear(lambda) => w.cost + lambda * w.delay,
        }
    }
}

/// Search bound. Finite bounds are strictly positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    Unbounded,
    Finite(f64),
}

impl Bound {
    /// Inclusive-keep comparison: a tentative distance is kept iff it does
    /// not exceed the bound, so a path landing exactly on the bound is
    /// still discovered.
    #[inline]
    pub fn permits(self, tentative: f64) -> bool {
        match self {
            Bound::Unbounded => true,
            Bound::Finite(b) => tentative <= b,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Bound::Finite(_))
    }
}

/// Operation counters of a single search.
///
/// `pushes` counts queue insertions caused by applied relaxations (the
/// root seed is structural and not counted), so `pushes == relax_applied`
/// for the heap-based engines. `pruned_by_bound` counts relaxations that
/// improved a tentative distance but exceeded the bound, i.e. exactly the
/// queue insertions the bound avoided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub pushes: u64,
    pub pops: u64,
    pub relax_attempts: u64,
    pub relax_applied: u64,
    pub pruned_by_bound: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.pushes += other.pushes;
        self.pops += other.pops;
        self.relax_attempts += other.relax_attempts;
        self.relax_applied += other.relax_applied;
        self.pruned_by_bound += other.pruned_by_bound;
    }
}

/// Per-node distance and predecessor table produced by a search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    root: NodeId,
    dist: Vec<f64>,
    pred: Vec<Option<NodeId>>,
    stats: SearchStats,
}

impl SearchResult {
    pub(crate) fn new(
        root: NodeId,
        dist: Vec<f64>,
        pred: Vec<Option<NodeId>>,
        stats: SearchStats,
    ) -> Self {
        Self { root, dist, pred, stats }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Distance from the root to `v`; `+inf` if `v` was not reached.
    #[inline]
    pub fn dist(&self, v: NodeId) -> f64 {
        self.dist[v.index()]
    }

    #[inline]
    pub fn pred(&self, v: NodeId) -> Option<NodeId> {
        self.pred[v.index()]
    }

    #[inline]
    pub fn reached(&self, v: NodeId) -> bool {
        self.dist[v.index()].is_finite()
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn node_count(&self) -> usize {
        self.dist.len()
    }

    /// Reconstructs the root-to-`v` node sequence by following
    /// predecessors; `None` iff `v` was not reached.
    pub fn extract_path(&self, v: NodeId) -> Option<Path> {
        if !self.reached(v) {
            return None;
        }
        let mut nodes = vec![v];
        let mut cur = v;
        while let Some(p) = self.pred[cur.index()] {
            nodes.push(p);
            cur = p;
            debug_assert!(nodes.len() <= self.dist.len(), "predecessor chain too long");
        }
        debug_assert_eq!(cur, self.root);
        nodes.reverse();
        Some(Path::new(nodes))
    }
}

/// Reconstructs the path from `v` back to the root of `r`.
pub fn extract_path(r: &SearchResult, v: NodeId) -> Option<Path> {
    r.extract_path(v)
}

/// Neighbor expansion direction. `Reverse` walks incoming edges, which is
/// equivalent to searching `reverse_view(g)` but without materializing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Reverse,
}
