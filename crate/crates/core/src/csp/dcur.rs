//! DCUR: delay-constrained unicast routing.
//!
//! Two reverse trees rooted at the destination — least-delay (bounded by
//! the request's delay bound) and least-cost (bounded by the cost of the
//! least-delay source path, and only computed when the request is
//! feasible) — then a hop-by-hop walk from the source. At every node the
//! walk prefers the cost-tree direction whenever the remaining delay
//! budget provably still suffices, falling back to the delay-tree
//! direction otherwise. Loops are cut out of the walk and the node whose
//! cost-direction choice closed the loop is forced onto the delay
//! direction from then on.

use crate::engine::WeightFn;
use crate::graph::Path;

use super::subroutines::SptView;
use super::{make_solution, CspRequest, CspSolution, Subroutines};

pub(super) fn run(subs: &mut Subroutines, req: &CspRequest) -> Option<CspSolution> {
    let delay_tree = subs.reverse_spt(WeightFn::Delay, req.dst, req.delay_bound);
    if !delay_tree.reached(req.src) {
        return None;
    }
    let least_delay_path = delay_tree.path_to_root(req.src).expect("src is reached");
    let least_delay_cost = crate::graph::path_attrs(subs.graph(), &least_delay_path)
        .expect("engine path")
        .cost;
    let cost_tree = subs.reverse_spt(WeightFn::Cost, req.dst, least_delay_cost);

    let (path, _hops) = walk(subs, req, &delay_tree, &cost_tree);
    Some(make_solution(subs.graph(), path))
}

/// The walk itself; also reports its hop count so tests can check the
/// termination bound.
pub(super) fn walk(
    subs: &Subroutines,
    req: &CspRequest,
    delay_tree: &SptView,
    cost_tree: &SptView,
) -> (Path, usize) {
    let g = subs.graph();
    let n = g.node_count();
    // Position of each node on the current walk, for O(1) loop detection.
    let mut position: Vec<Option<u32>> = vec![None; n];
    let mut banned = vec![false; n];
    // Set when a loop event cannot be pinned on a fresh node; the rest of
    // the walk then follows the delay tree only, which cannot loop.
    let mut all_delay = false;
    let mut nodes = vec![req.src];
    let mut prefix_delay = vec![0.0f64];
    // Direction used to enter nodes[i] (true = cost tree); index 0 unused.
    let mut entered_by_cost = vec![false];
    position[req.src.index()] = Some(0);

    let mut hops = 0usize;
    loop {
        let here = *nodes.last().unwrap();
        if here == req.dst {
            break;
        }
        hops += 1;
        let delay_so_far = *prefix_delay.last().unwrap();

        let mut via_cost = false;
        let mut next = None;
        if !all_delay && !banned[here.index()] {
            if let Some(hop) = cost_tree.next_hop(here) {
                let hop_delay = g.hop_weights(here, hop).expect("tree edge").delay;
                if delay_so_far + hop_delay + delay_tree.dist(hop) <= req.delay_bound {
                    via_cost = true;
                    next = Some(hop);
                }
            }
        }
        let next = next.unwrap_or_else(|| {
            delay_tree
                .next_hop(here)
                .expect("walk stays inside the delay tree")
        });

        if let Some(pos) = position[next.index()] {
            // Loop: drop everything after the first visit of `next` and
            // force the most recent cost-direction chooser in the removed
            // cycle (including the closing hop) onto the delay direction.
            // Banning only the revisited node would let the identical
            // cycle re-form; banning a fresh node each time guarantees
            // progress.
            let pos = pos as usize;
            let mut culprit = if via_cost { Some(here) } else { None };
            if culprit.is_none() {
                for i in (pos + 1..nodes.len()).rev() {
                    if entered_by_cost[i] && !banned[nodes[i - 1].index()] {
                        culprit = Some(nodes[i - 1]);
                        break;
                    }
                }
            }
            match culprit {
                Some(c) => banned[c.index()] = true,
                None => all_delay = true,
            }
            for dropped in &nodes[pos + 1..] {
                position[dropped.index()] = None;
            }
            nodes.truncate(pos + 1);
            prefix_delay.truncate(pos + 1);
            entered_by_cost.truncate(pos + 1);
        } else {
            let hop_delay = g.hop_weights(here, next).expect("tree edge").delay;
            position[next.index()] = Some(nodes.len() as u32);
            prefix_delay.push(delay_so_far + hop_delay);
            nodes.push(next);
            entered_by_cost.push(via_cost);
        }
        assert!(
            hops <= 4 * n * n + 4 * n,
            "walk failed to terminate within the hop budget"
        );
    }
    (Path::new(nodes), hops)
}
