//! IAK: least-cost path with a least-delay completion.
//!
//! Runs the (never bounded) least-cost search; if that path violates the
//! delay bound, walks its prefixes from longest to shortest and completes
//! the first prefix whose remaining delay budget covers the least-delay
//! tail to the destination, skipping completions that would revisit a
//! prefix node.

use crate::engine::WeightFn;
use crate::graph::path_attrs;

use super::{make_solution, CspRequest, CspSolution, Subroutines};

pub(super) fn run(subs: &mut Subroutines, req: &CspRequest) -> Option<CspSolution> {
    let (least_cost, _) = subs.sp_unbounded(WeightFn::Cost, req.src, req.dst)?;
    let attrs = path_attrs(subs.graph(), &least_cost).expect("engine path");
    if attrs.delay <= req.delay_bound {
        return Some(CspSolution { path: least_cost, attrs });
    }

    let delay_tree = subs.reverse_spt(WeightFn::Delay, req.dst, req.delay_bound);

    // Cumulative delay along the least-cost path.
    let g = subs.graph();
    let mut prefix_delay = Vec::with_capacity(least_cost.nodes.len());
    let mut acc = 0.0;
    prefix_delay.push(acc);
    for pair in least_cost.nodes.windows(2) {
        acc += g.hop_weights(pair[0], pair[1]).expect("path edge").delay;
        prefix_delay.push(acc);
    }

    let mut on_prefix = vec![false; g.node_count()];
    for &v in &least_cost.nodes {
        on_prefix[v.index()] = true;
    }

    for i in (0..least_cost.nodes.len()).rev() {
        let end = least_cost.nodes[i];
        // Nodes beyond position i are not part of this candidate; the
        // marks now cover exactly nodes[0..i]. The tail is simple, so the
        // join node itself cannot repeat.
        on_prefix[end.index()] = false;
        let budget_used = prefix_delay[i] + delay_tree.dist(end);
        if budget_used > req.delay_bound {
            continue;
        }
        let tail = delay_tree.path_to_root(end).expect("end is reached");
        if tail.nodes[1..].iter().any(|v| on_prefix[v.index()]) {
            continue;
        }
        let mut nodes = least_cost.nodes[..i].to_vec();
        nodes.extend(tail.nodes);
        return Some(make_solution(g, crate::graph::Path::new(nodes)));
    }
    None
}
