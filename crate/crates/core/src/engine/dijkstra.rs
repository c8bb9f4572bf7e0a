//! Dijkstra SP/SPT with optional bound.
//!
//! The queue is a binary min-heap with lazy deletion and a visited flag;
//! there is no decrease-key. Entries with equal keys pop in insertion
//! order (FIFO), so a bounded run explores exactly like the unbounded run
//! up to the relaxations the bound discards. That makes the bounded
//! distance table equal to the unbounded one filtered at the bound, and
//! the bounded push/pop counts never exceed the unbounded ones.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::{Graph, NodeId};

use super::{Bound, Direction, SearchResult, SearchStats, WeightFn};

/// Min-heap entry ordered by key, ties broken FIFO by sequence number.
#[derive(Clone, Copy, Debug)]
struct QueueEntry {
    key: f64,
    seq: u64,
    node: NodeId,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.seq == other.seq
    }
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the smallest key
        // (and among equal keys the smallest sequence number) on top.
        other
            .key
            .partial_cmp(&self.key)
            .expect("finite keys")
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact shortest distances from `root` under `w`.
///
/// With a target the search returns the moment the target is popped; its
/// distance is then final while other entries may still be tentative.
/// Without a target the search settles every reachable node.
pub fn dijkstra(g: &Graph, root: NodeId, w: WeightFn, target: Option<NodeId>) -> SearchResult {
    search(g, root, w, Bound::Unbounded, target, Direction::Forward, |_| {})
}

/// Dijkstra that discards any relaxation whose tentative distance exceeds
/// the bound. Every node whose true distance is within the bound gets its
/// exact distance; all others stay unreached. With `Bound::Unbounded` the
/// result and stats equal [`dijkstra`]'s exactly.
pub fn bounded_dijkstra(
    g: &Graph,
    root: NodeId,
    w: WeightFn,
    bound: Bound,
    target: Option<NodeId>,
) -> SearchResult {
    search(g, root, w, bound, target, Direction::Forward, |_| {})
}

/// [`bounded_dijkstra`] over incoming edges: distances *towards* `root`.
/// Equivalent to searching `reverse_view(g)` from `root`.
pub fn bounded_dijkstra_reverse(
    g: &Graph,
    root: NodeId,
    w: WeightFn,
    bound: Bound,
    target: Option<NodeId>,
) -> SearchResult {
    search(g, root, w, bound, target, Direction::Reverse, |_| {})
}

/// [`bounded_dijkstra`] that also reports the keys of non-stale pops in
/// order, for checking that settlements are monotone.
pub fn bounded_dijkstra_traced(
    g: &Graph,
    root: NodeId,
    w: WeightFn,
    bound: Bound,
    target: Option<NodeId>,
) -> (SearchResult, Vec<f64>) {
    let mut trace = Vec::new();
    let result = search(g, root, w, bound, target, Direction::Forward, |key| {
        trace.push(key)
    });
    (result, trace)
}

pub(crate) fn search<F: FnMut(f64)>(
    g: &Graph,
    root: NodeId,
    w: WeightFn,
    bound: Bound,
    target: Option<NodeId>,
    dir: Direction,
    mut on_settle: F,
) -> SearchResult {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<NodeId>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut stats = SearchStats::default();
    let mut heap = BinaryHeap::new();
    let mut seq: u64 = 0;

    dist[root.index()] = 0.0;
    heap.push(QueueEntry { key: 0.0, seq, node: root });

    while let Some(entry) = heap.pop() {
        stats.pops += 1;
        let node = entry.node;
        if target == Some(node) {
            on_settle(entry.key);
            return SearchResult::new(root, dist, pred, stats);
        }
        if visited[node.index()] {
            continue;
        }
        visited[node.index()] = true;
        on_settle(entry.key);
        let base = dist[node.index()];

        macro_rules! relax {
            ($to:expr, $weights:expr) => {{
                stats.relax_attempts += 1;
                let tentative = base + w.eval($weights);
                if tentative < dist[$to.index()] {
                    if bound.permits(tentative) {
                        dist[$to.index()] = tentative;
                        pred[$to.index()] = Some(node);
                        seq += 1;
                        heap.push(QueueEntry { key: tentative, seq, node: $to });
                        stats.pushes += 1;
                        stats.relax_applied += 1;
                    } else {
                        stats.pruned_by_bound += 1;
                    }
                }
            }};
        }
        match dir {
            Direction::Forward => {
                for e in g.out_edges(node) {
                    relax!(e.dst, e.weights);
                }
            }
            Direction::Reverse => {
                for e in g.in_edges(node) {
                    relax!(e.src, e.weights);
                }
            }
        }
    }
    SearchResult::new(root, dist, pred, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{t1, A, B, D, S};
    use crate::graph::{reverse_view, Path};

    #[test]
    fn sp_by_cost_and_delay() {
        let g = t1();
        let by_cost = dijkstra(&g, S, WeightFn::Cost, Some(D));
        assert_eq!(by_cost.dist(D), 2.0);
        assert_eq!(by_cost.extract_path(D), Some(Path::new(vec![S, A, D])));

        let by_delay = dijkstra(&g, S, WeightFn::Delay, Some(D));
        assert_eq!(by_delay.dist(D), 2.0);
        assert_eq!(by_delay.extract_path(D), Some(Path::new(vec![S, B, D])));
    }

    #[test]
    fn target_equal_to_root() {
        let g = t1();
        let r = dijkstra(&g, S, WeightFn::Cost, Some(S));
        assert_eq!(r.dist(S), 0.0);
        assert_eq!(r.extract_path(S), Some(Path::new(vec![S])));
    }

    #[test]
    fn bound_below_shortest_yields_absent_path() {
        let g = t1();
        let r = bounded_dijkstra(&g, S, WeightFn::Cost, Bound::Finite(1.5), Some(D));
        assert_eq!(r.dist(D), f64::INFINITY);
        assert_eq!(r.extract_path(D), None);
    }

    #[test]
    fn bound_above_shortest_keeps_exact_path() {
        let g = t1();
        let r = bounded_dijkstra(&g, S, WeightFn::Cost, Bound::Finite(3.0), Some(D));
        assert_eq!(r.dist(D), 2.0);
        assert_eq!(r.extract_path(D), Some(Path::new(vec![S, A, D])));
    }

    #[test]
    fn bounded_spt_settles_everything_within_bound() {
        let g = t1();
        let r = bounded_dijkstra(&g, S, WeightFn::Delay, Bound::Finite(2.0), None);
        assert_eq!(r.dist(S), 0.0);
        assert_eq!(r.dist(B), 1.0);
        assert_eq!(r.dist(D), 2.0);
        assert_eq!(r.dist(A), 2.0);
    }

    #[test]
    fn unbounded_bound_matches_dijkstra_bit_for_bit() {
        let g = t1();
        let plain = dijkstra(&g, S, WeightFn::Cost, None);
        let bounded = bounded_dijkstra(&g, S, WeightFn::Cost, Bound::Unbounded, None);
        assert_eq!(plain, bounded);
        assert_eq!(plain.stats().pruned_by_bound, 0);
    }

    #[test]
    fn inclusive_keep_at_the_bound() {
        // Shortest cost to D is exactly 2; a bound of 2 must keep it.
        let g = t1();
        let r = bounded_dijkstra(&g, S, WeightFn::Cost, Bound::Finite(2.0), Some(D));
        assert_eq!(r.dist(D), 2.0);
    }

    #[test]
    fn reverse_search_equals_forward_on_reversed_graph() {
        let g = t1();
        let rev = reverse_view(&g);
        for w in [WeightFn::Cost, WeightFn::Delay, WeightFn::Linear(0.7)] {
            for bound in [Bound::Unbounded, Bound::Finite(2.5)] {
                let direct = bounded_dijkstra_reverse(&g, D, w, bound, None);
                let via_view = bounded_dijkstra(&rev, D, w, bound, None);
                assert_eq!(direct, via_view);
            }
        }
    }

    #[test]
    fn stats_invariants() {
        let g = t1();
        let r = dijkstra(&g, S, WeightFn::Cost, None);
        let s = r.stats();
        assert_eq!(s.pushes, s.relax_applied);
        assert!(s.relax_applied <= s.relax_attempts);
    }

    #[test]
    fn unreached_nodes_have_no_predecessor() {
        let g = t1();
        let r = bounded_dijkstra(&g, S, WeightFn::Cost, Bound::Finite(1.0), None);
        assert!(r.reached(A));
        assert!(!r.reached(D));
        assert_eq!(r.pred(D), None);
    }
}
