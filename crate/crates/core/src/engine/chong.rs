//! Chong's k-shortest-paths: Dijkstra-style label expansion that keeps,
//! at each node, the k best labels found instead of a single distance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::{Graph, NodeId, Path};

use super::{Bound, SearchStats, WeightFn};

/// One of the up-to-k labels kept at a node. `parent` links to the label
/// this one was expanded from, as (node, index into that node's list).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KspLabel {
    pub dist: f64,
    pub parent: Option<(NodeId, u32)>,
}

/// Per-node ordered label lists produced by [`chong_ksp`].
#[derive(Clone, Debug, PartialEq)]
pub struct KspResult {
    root: NodeId,
    k: usize,
    labels: Vec<Vec<KspLabel>>,
    stats: SearchStats,
}

impl KspResult {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Accepted labels of `v` in nondecreasing distance order.
    pub fn labels(&self, v: NodeId) -> &[KspLabel] {
        &self.labels[v.index()]
    }

    pub fn dists(&self, v: NodeId) -> Vec<f64> {
        self.labels[v.index()].iter().map(|l| l.dist).collect()
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    /// Path of the `i`-th best label at `v`, root first.
    pub fn extract_path(&self, v: NodeId, i: usize) -> Option<Path> {
        let mut nodes = Vec::new();
        let mut cur = (v, i as u32);
        loop {
            nodes.push(cur.0);
            let label = self.labels[cur.0.index()].get(cur.1 as usize)?;
            match label.parent {
                Some(p) => cur = p,
                None => break,
            }
        }
        nodes.reverse();
        Some(Path::new(nodes))
    }
}

#[derive(Clone, Copy, Debug)]
struct LabelEntry {
    key: f64,
    seq: u64,
    node: NodeId,
    parent: Option<(NodeId, u32)>,
}

impl PartialEq for LabelEntry {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.seq == other.seq
    }
}

impl Eq for LabelEntry {}

impl Ord for LabelEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .partial_cmp(&self.key)
            .expect("finite keys")
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for LabelEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Computes, per node, the k smallest loop-free label distances.
///
/// Labels pop in nondecreasing key order; a node accepts its first k pops
/// and discards the rest, so each node is expanded at most k times.
/// Expansions that would revisit a node already on the label's own path
/// are skipped, keeping every reconstructible path simple. With a finite
/// bound, labels exceeding it are discarded at creation, which leaves the
/// surviving lists equal to the unbounded lists filtered at the bound.
/// With a target, the search stops once the target holds k labels.
///
/// Panics if `k == 0`.
pub fn chong_ksp(
    g: &Graph,
    root: NodeId,
    k: usize,
    w: WeightFn,
    bound: Bound,
    target: Option<NodeId>,
) -> KspResult {
    run(g, root, k, w, bound, target, |_| {})
}

/// [`chong_ksp`] reporting accepted pop keys in order.
pub fn chong_ksp_traced(
    g: &Graph,
    root: NodeId,
    k: usize,
    w: WeightFn,
    bound: Bound,
    target: Option<NodeId>,
) -> (KspResult, Vec<f64>) {
    let mut trace = Vec::new();
    let result = run(g, root, k, w, bound, target, |key| trace.push(key));
    (result, trace)
}

fn run<F: FnMut(f64)>(
    g: &Graph,
    root: NodeId,
    k: usize,
    w: WeightFn,
    bound: Bound,
    target: Option<NodeId>,
    mut on_accept: F,
) -> KspResult {
    assert!(k >= 1, "k must be at least 1");
    let n = g.node_count();
    let mut labels: Vec<Vec<KspLabel>> = vec![Vec::new(); n];
    let mut stats = SearchStats::default();
    let mut heap = BinaryHeap::new();
    let mut seq: u64 = 0;

    heap.push(LabelEntry { key: 0.0, seq, node: root, parent: None });

    // Is `node` on the path encoded by the label chain starting at `from`?
    let on_chain = |labels: &[Vec<KspLabel>], from: (NodeId, u32), node: NodeId| -> bool {
        let mut cur = from;
        loop {
            if cur.0 == node {
                return true;
            }
            match labels[cur.0.index()][cur.1 as usize].parent {
                Some(p) => cur = p,
                None => return false,
            }
        }
    };

    while let Some(entry) = heap.pop() {
        stats.pops += 1;
        let node = entry.node;
        if labels[node.index()].len() >= k {
            continue;
        }
        let label_idx = labels[node.index()].len() as u32;
        labels[node.index()].push(KspLabel { dist: entry.key, parent: entry.parent });
        on_accept(entry.key);
        if target == Some(node) && labels[node.index()].len() == k {
            break;
        }

        for e in g.out_edges(node) {
            stats.relax_attempts += 1;
            if labels[e.dst.index()].len() >= k {
                continue;
            }
            if on_chain(&labels, (node, label_idx), e.dst) {
                continue;
            }
            let tentative = entry.key + w.eval(e.weights);
            if bound.permits(tentative) {
                seq += 1;
                heap.push(LabelEntry {
                    key: tentative,
                    seq,
                    node: e.dst,
                    parent: Some((node, label_idx)),
                });
                stats.pushes += 1;
                stats.relax_applied += 1;
            } else {
                stats.pruned_by_bound += 1;
            }
        }
    }
    KspResult { root, k, labels, stats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::dijkstra;
    use crate::graph::tests::{t1, B, D, S};
    use crate::graph::{Edge, EdgeWeights};

    #[test]
    fn two_best_costs_at_destination() {
        let g = t1();
        let r = chong_ksp(&g, S, 2, WeightFn::Cost, Bound::Unbounded, None);
        assert_eq!(r.dists(D), vec![2.0, 4.0]);
    }

    #[test]
    fn bound_filters_label_lists() {
        let g = t1();
        let r = chong_ksp(&g, S, 2, WeightFn::Cost, Bound::Finite(3.0), None);
        assert_eq!(r.dists(D), vec![2.0]);
    }

    #[test]
    fn k1_equals_dijkstra_everywhere() {
        let g = t1();
        let ksp = chong_ksp(&g, S, 1, WeightFn::Cost, Bound::Unbounded, None);
        let dj = dijkstra(&g, S, WeightFn::Cost, None);
        for v in g.nodes() {
            let expected = if dj.reached(v) { vec![dj.dist(v)] } else { vec![] };
            assert_eq!(ksp.dists(v), expected);
        }
    }

    #[test]
    fn paths_are_reconstructible_and_simple() {
        let g = t1();
        let r = chong_ksp(&g, S, 3, WeightFn::Cost, Bound::Unbounded, None);
        for i in 0..r.labels(D).len() {
            let p = r.extract_path(D, i).unwrap();
            assert_eq!(p.first(), Some(S));
            assert_eq!(p.last(), Some(D));
            let mut sorted = p.nodes.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), p.nodes.len(), "path repeats a node");
        }
        assert_eq!(r.dists(D), vec![2.0, 4.0, 5.0]);
    }

    #[test]
    fn loops_are_excluded_on_cyclic_graphs() {
        // Triangle with a cheap cycle near the root; walks could loop,
        // the second-best label at `end` must still be a simple path.
        let e = |src: u32, dst: u32, cost: f64| Edge {
            src: NodeId(src),
            dst: NodeId(dst),
            weights: EdgeWeights { cost, delay: 1.0 },
        };
        let g = Graph::new(
            3,
            vec![e(0, 1, 0.1), e(1, 0, 0.1), e(0, 2, 10.0), e(1, 2, 5.0)],
        )
        .unwrap();
        let r = chong_ksp(&g, NodeId(0), 2, WeightFn::Cost, Bound::Unbounded, None);
        // Simple paths to node 2: 0->2 (10) and 0->1->2 (5.1); the looping
        // walk 0->1->0->2 (10.2) must not appear.
        assert_eq!(r.dists(NodeId(2)), vec![5.1, 10.0]);
        assert_eq!(r.labels(NodeId(0)).len(), 1, "root cannot be revisited");
    }

    #[test]
    fn labels_nondecreasing_and_within_k() {
        let g = t1();
        let r = chong_ksp(&g, S, 2, WeightFn::Delay, Bound::Unbounded, None);
        for v in g.nodes() {
            let d = r.dists(v);
            assert!(d.len() <= 2);
            assert!(d.windows(2).all(|w| w[0] <= w[1]));
        }
        assert_eq!(r.dists(B), vec![1.0]); // only one simple path reaches B
    }
}
