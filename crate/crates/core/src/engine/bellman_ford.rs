//! Bellman-Ford with the same bound-discard rule as the Dijkstra engine.

use crate::graph::{Graph, NodeId};

use super::{Bound, SearchResult, SearchStats, WeightFn};

/// Iterative relaxation to a fixpoint: at most `node_count - 1` rounds
/// over the edge list in its fixed global order, exiting early once a
/// round applies no relaxation. With a finite bound any tentative
/// distance exceeding it is discarded, so the distance table equals the
/// bounded Dijkstra one for the same inputs.
///
/// There is no queue; `pushes` and `pops` stay zero.
pub fn bellman_ford(g: &Graph, root: NodeId, w: WeightFn, bound: Bound) -> SearchResult {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<NodeId>> = vec![None; n];
    let mut stats = SearchStats::default();
    dist[root.index()] = 0.0;

    for _round in 1..n {
        let mut changed = false;
        for edge in g.edges() {
            stats.relax_attempts += 1;
            let tentative = dist[edge.src.index()] + w.eval(edge.weights);
            if tentative < dist[edge.dst.index()] {
                if bound.permits(tentative) {
                    dist[edge.dst.index()] = tentative;
                    pred[edge.dst.index()] = Some(edge.src);
                    stats.relax_applied += 1;
                    changed = true;
                } else {
                    stats.pruned_by_bound += 1;
                }
            }
        }
        if !changed {
            break;
        }
    }
    SearchResult::new(root, dist, pred, stats)
}
