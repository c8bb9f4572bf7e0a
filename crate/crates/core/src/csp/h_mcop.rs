//! H_MCOP specialized to a single delay constraint.
//!
//! Backward stage: reverse least-delay tree from the destination giving
//! the remaining delay `R(v)` to reach it. Forward stage: a one-label-per-
//! node search from the source where a candidate label is *promising* iff
//! its delay plus `R(v)` still fits the bound. Promising labels are keyed
//! by accumulated cost, non-promising ones by projected delay, and any
//! promising label beats any non-promising one. Keys are nondecreasing
//! along expansions (`R` satisfies the triangle inequality), so the first
//! pop of a node settles it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::engine::{SearchStats, WeightFn};
use crate::graph::{NodeId, Path};

use super::subroutines::SptView;
use super::{make_solution, CspRequest, CspSolution, Subroutines};

pub(super) fn run(subs: &mut Subroutines, req: &CspRequest) -> Option<CspSolution> {
    let remaining = subs.reverse_spt(WeightFn::Delay, req.dst, req.delay_bound);
    if !remaining.reached(req.src) {
        return None;
    }
    let (forward, stats) = forward_search(subs, req, &remaining);
    subs.absorb_stats(&stats);
    match forward {
        Some((path, delay)) if delay <= req.delay_bound => {
            Some(make_solution(subs.graph(), path))
        }
        // The pure least-delay path is feasible whenever we get here.
        _ => {
            let fallback = remaining.path_to_root(req.src).expect("src is reached");
            Some(make_solution(subs.graph(), fallback))
        }
    }
}

#[derive(Clone, Copy)]
struct Label {
    cost: f64,
    delay: f64,
    key: (u8, f64), // (0 = promising, 1 = not) then scalar key
    pred: Option<NodeId>,
}

#[derive(Clone, Copy)]
struct Entry {
    key: (u8, f64),
    seq: u64,
    node: NodeId,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.seq == other.seq
    }
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .partial_cmp(&self.key)
            .expect("keys never NaN")
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Returns the destination label's path and delay, if the destination
/// settled with a consistent label.
fn forward_search(
    subs: &Subroutines,
    req: &CspRequest,
    remaining: &SptView,
) -> (Option<(Path, f64)>, SearchStats) {
    let g = subs.graph();
    let n = g.node_count();
    let mut labels: Vec<Option<Label>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut stats = SearchStats::default();
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    let classify = |delay: f64, v: NodeId, cost: f64| -> (u8, f64) {
        let projected = delay + remaining.dist(v);
        if projected <= req.delay_bound {
            (0, cost)
        } else {
            (1, projected)
        }
    };

    let src_key = classify(0.0, req.src, 0.0);
    labels[req.src.index()] = Some(Label { cost: 0.0, delay: 0.0, key: src_key, pred: None });
    heap.push(Entry { key: src_key, seq, node: req.src });

    while let Some(entry) = heap.pop() {
        stats.pops += 1;
        let node = entry.node;
        if settled[node.index()] {
            continue;
        }
        let label = labels[node.index()].expect("queued nodes have labels");
        if entry.key != label.key {
            continue; // stale entry
        }
        settled[node.index()] = true;
        if node == req.dst {
            break;
        }
        for e in g.out_edges(node) {
            stats.relax_attempts += 1;
            let cost = label.cost + e.weights.cost;
            let delay = label.delay + e.weights.delay;
            let key = classify(delay, e.dst, cost);
            let better = match labels[e.dst.index()] {
                None => true,
                Some(existing) => key < existing.key,
            };
            if better {
                labels[e.dst.index()] = Some(Label { cost, delay, key, pred: Some(node) });
                seq += 1;
                heap.push(Entry { key, seq, node: e.dst });
                stats.pushes += 1;
                stats.relax_applied += 1;
            }
        }
    }

    let dst_label = match labels[req.dst.index()] {
        Some(l) if settled[req.dst.index()] => l,
        _ => return (None, stats),
    };
    let mut nodes = vec![req.dst];
    let mut cur = req.dst;
    while let Some(p) = labels[cur.index()].and_then(|l| l.pred) {
        nodes.push(p);
        cur = p;
        debug_assert!(nodes.len() <= n, "label chain too long");
    }
    nodes.reverse();
    (Some((Path::new(nodes), dst_label.delay)), stats)
}
