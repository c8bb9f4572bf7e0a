//! Mode-aware engine access shared by all CSP algorithms.
//!
//! Algorithms never call engines directly. They go through [`Subroutines`],
//! which in Bounded mode forwards the cut-off into the engine and in Plain
//! mode runs the engine unbounded and applies the identical inclusive
//! cut-off to the results afterwards. Either way the algorithm observes
//! the same filtered distance/predecessor tables, which is what makes the
//! two modes return identical paths by construction.

use crate::engine::{
    bounded_dijkstra, bounded_dijkstra_reverse, Bound, SearchResult, WeightFn,
};
use crate::graph::{Graph, NodeId, Path};

use super::{EngineCall, EngineMode, MetricKind, SearchScope, Telemetry};

pub(crate) struct Subroutines<'g> {
    g: &'g Graph,
    mode: EngineMode,
    telemetry: Telemetry,
}

impl<'g> Subroutines<'g> {
    pub(crate) fn new(g: &'g Graph, mode: EngineMode) -> Self {
        Self {
            g,
            mode,
            telemetry: Telemetry::default(),
        }
    }

    pub(crate) fn graph(&self) -> &'g Graph {
        self.g
    }

    pub(crate) fn into_telemetry(self) -> Telemetry {
        self.telemetry
    }

    /// Merges counters of a non-engine search (e.g. H_MCOP's forward pass)
    /// into the rollup without recording an engine call.
    pub(crate) fn absorb_stats(&mut self, stats: &crate::engine::SearchStats) {
        self.telemetry.stats.merge(stats);
    }

    fn record(&mut self, metric: MetricKind, scope: SearchScope, bounded: bool, r: &SearchResult) {
        self.telemetry.calls.push(EngineCall { metric, scope, bounded });
        self.telemetry.stats.merge(r.stats());
    }

    fn engine_bound(&self, cutoff: f64) -> Bound {
        match self.mode {
            EngineMode::Plain => Bound::Unbounded,
            EngineMode::Bounded => Bound::Finite(cutoff),
        }
    }

    /// Result filter applied by the algorithm itself; only active in Plain
    /// mode, where the engine ran unbounded.
    fn view_cutoff(&self, cutoff: f64) -> Option<f64> {
        match self.mode {
            EngineMode::Plain => Some(cutoff),
            EngineMode::Bounded => None,
        }
    }

    fn metric_of(w: WeightFn) -> MetricKind {
        match w {
            WeightFn::Cost => MetricKind::Cost,
            WeightFn::Delay => MetricKind::Delay,
            WeightFn::Linear(_) => MetricKind::Combined,
        }
    }

    /// Single-destination run with a cut-off: the path is returned iff its
    /// weight does not exceed `cutoff`.
    pub(crate) fn sp_with_cutoff(
        &mut self,
        w: WeightFn,
        src: NodeId,
        dst: NodeId,
        cutoff: f64,
    ) -> Option<(Path, f64)> {
        let bound = self.engine_bound(cutoff);
        let bounded = bound.is_finite();
        let r = bounded_dijkstra(self.g, src, w, bound, Some(dst));
        self.record(Self::metric_of(w), SearchScope::Sp, bounded, &r);
        let dist = r.dist(dst);
        if dist > cutoff {
            // Unbounded run found it but the algorithm rejects it; the
            // bounded run never reaches here with a finite dist.
            return None;
        }
        r.extract_path(dst).map(|p| (p, dist))
    }

    /// Unbounded single-destination run (least-cost and combined-metric
    /// runs are never bounded).
    pub(crate) fn sp_unbounded(
        &mut self,
        w: WeightFn,
        src: NodeId,
        dst: NodeId,
    ) -> Option<(Path, f64)> {
        let r = bounded_dijkstra(self.g, src, w, Bound::Unbounded, Some(dst));
        self.record(Self::metric_of(w), SearchScope::Sp, false, &r);
        let dist = r.dist(dst);
        r.extract_path(dst).map(|p| (p, dist))
    }

    /// Tree of distances *towards* `root` over incoming edges, filtered at
    /// `cutoff`: nodes beyond the cut-off read as unreached.
    pub(crate) fn reverse_spt(&mut self, w: WeightFn, root: NodeId, cutoff: f64) -> SptView {
        let bound = self.engine_bound(cutoff);
        let bounded = bound.is_finite();
        let r = bounded_dijkstra_reverse(self.g, root, w, bound, None);
        self.record(Self::metric_of(w), SearchScope::Spt, bounded, &r);
        SptView {
            result: r,
            cutoff: self.view_cutoff(cutoff),
        }
    }
}

/// A reverse-tree result with the mode-appropriate cut-off applied at
/// access time. `dist(v)` is the engine distance `v -> root`; in Plain
/// mode distances beyond the cut-off (and their predecessors) read as
/// unreached, mirroring what the bounded engine produces directly.
pub(crate) struct SptView {
    result: SearchResult,
    cutoff: Option<f64>,
}

impl SptView {
    #[inline]
    pub(crate) fn dist(&self, v: NodeId) -> f64 {
        let d = self.result.dist(v);
        match self.cutoff {
            Some(c) if d > c => f64::INFINITY,
            _ => d,
        }
    }

    #[inline]
    pub(crate) fn reached(&self, v: NodeId) -> bool {
        self.dist(v).is_finite()
    }

    /// Next hop from `v` towards the tree root. Predecessor chains of
    /// reached nodes have strictly decreasing distance, so they never
    /// leave the filtered view.
    #[inline]
    pub(crate) fn next_hop(&self, v: NodeId) -> Option<NodeId> {
        if self.reached(v) {
            self.result.pred(v)
        } else {
            None
        }
    }

    /// Forward path `v -> ... -> root`, or `None` if `v` is filtered out.
    pub(crate) fn path_to_root(&self, v: NodeId) -> Option<Path> {
        if !self.reached(v) {
            return None;
        }
        // The engine path is root-first; the forward orientation is the
        // reverse of it.
        let mut p = self.result.extract_path(v)?;
        p.nodes.reverse();
        Some(p)
    }
}
