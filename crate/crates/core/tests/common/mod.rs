//! Shared fixtures for the integration suites: a small hand-checked
//! graph, random graph generation, and an exhaustive simple-path oracle
//! that is independent of every engine under test.

use bdroute_core::engine::WeightFn;
use bdroute_core::graph::{Edge, EdgeWeights, Graph, NodeId};
use rand::rngs::StdRng;
use rand::Rng;

/// Four-node fixture: s=0, a=1, b=2, d=3 with edges
/// s->a(1,2), a->d(1,2), s->b(2,1), b->d(2,1), s->d(5,5).
#[allow(dead_code)]
pub fn t1() -> Graph {
    let e = |src: u32, dst: u32, cost: f64, delay: f64| Edge {
        src: NodeId(src),
        dst: NodeId(dst),
        weights: EdgeWeights { cost, delay },
    };
    Graph::new(
        4,
        vec![
            e(0, 1, 1.0, 2.0),
            e(1, 3, 1.0, 2.0),
            e(0, 2, 2.0, 1.0),
            e(2, 3, 2.0, 1.0),
            e(0, 3, 5.0, 5.0),
        ],
    )
    .unwrap()
}

/// Random directed graph with `2..=max_nodes` nodes and positive weights.
/// Dense enough that most pairs are connected, sparse enough that
/// exhaustive path enumeration stays cheap.
pub fn random_graph(rng: &mut StdRng, max_nodes: usize) -> Graph {
    let n = rng.random_range(2..=max_nodes);
    let edge_count = rng.random_range(n..=3 * n);
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let src = rng.random_range(0..n as u32);
        let mut dst = rng.random_range(0..n as u32);
        if src == dst {
            dst = (dst + 1) % n as u32;
        }
        edges.push(Edge {
            src: NodeId(src),
            dst: NodeId(dst),
            weights: EdgeWeights {
                cost: rng.random_range(0.5..3.0),
                delay: rng.random_range(0.5..3.0),
            },
        });
    }
    Graph::new(n, edges).unwrap()
}

/// Exact shortest distances from `root` by enumerating every simple path
/// with a depth-first walk. Oracle only; shares no code with the engines.
#[allow(dead_code)]
pub fn enumerated_distances(g: &Graph, root: NodeId, w: WeightFn) -> Vec<f64> {
    fn visit(
        g: &Graph,
        w: WeightFn,
        node: NodeId,
        dist_here: f64,
        on_path: &mut Vec<bool>,
        best: &mut Vec<f64>,
    ) {
        if dist_here < best[node.index()] {
            best[node.index()] = dist_here;
        }
        on_path[node.index()] = true;
        for e in g.out_edges(node) {
            if !on_path[e.dst.index()] {
                visit(g, w, e.dst, dist_here + w.eval(e.weights), on_path, best);
            }
        }
        on_path[node.index()] = false;
    }

    let mut best = vec![f64::INFINITY; g.node_count()];
    let mut on_path = vec![false; g.node_count()];
    visit(g, w, root, 0.0, &mut on_path, &mut best);
    best
}

/// All simple-path weights from `root` to `target`, ascending.
#[allow(dead_code)]
pub fn enumerated_path_weights(g: &Graph, root: NodeId, target: NodeId, w: WeightFn) -> Vec<f64> {
    fn visit(
        g: &Graph,
        w: WeightFn,
        target: NodeId,
        node: NodeId,
        dist_here: f64,
        on_path: &mut Vec<bool>,
        out: &mut Vec<f64>,
    ) {
        if node == target {
            out.push(dist_here);
            return;
        }
        on_path[node.index()] = true;
        for e in g.out_edges(node) {
            if !on_path[e.dst.index()] {
                visit(g, w, target, e.dst, dist_here + w.eval(e.weights), on_path, out);
            }
        }
        on_path[node.index()] = false;
    }

    let mut out = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    visit(g, w, target, root, 0.0, &mut on_path, &mut out);
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}
