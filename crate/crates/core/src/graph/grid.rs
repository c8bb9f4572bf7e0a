//! Grid topology generation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::{Edge, EdgeWeights, Graph, GraphError, NodeId};

/// Parameters of an `n x n` four-neighbor grid with random edge weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    /// Side length; the grid has `n * n` nodes.
    pub n: u32,
    /// Seed of the weight generator; equal specs produce bit-identical graphs.
    pub weight_seed: u64,
}

impl GridSpec {
    pub fn new(n: u32, weight_seed: u64) -> Self {
        Self { n, weight_seed }
    }

    pub fn node_count(self) -> usize {
        (self.n as usize) * (self.n as usize)
    }

    /// Longest least-hop distance between any node pair: `2 * (n - 1)`.
    pub fn max_hop_distance(self) -> u32 {
        2 * (self.n - 1)
    }

    /// Row-major coordinates of `v`.
    pub fn coords(self, v: NodeId) -> (u32, u32) {
        (v.0 / self.n, v.0 % self.n)
    }

    pub fn node_at(self, row: u32, col: u32) -> NodeId {
        NodeId(row * self.n + col)
    }
}

/// Builds the `n x n` grid described by `spec`.
///
/// Nodes are indexed row-major. Each undirected neighbor pair becomes two
/// directed edges sharing a single weight draw; cost and delay are drawn
/// independently, uniform in `[1, 2]`.
pub fn build_grid(spec: GridSpec) -> Result<Graph, GraphError> {
    if spec.n < 2 {
        return Err(GraphError::GridTooSmall { n: spec.n });
    }
    let n = spec.n;
    let mut rng = ChaCha12Rng::seed_from_u64(spec.weight_seed);
    let mut draw = || -> EdgeWeights {
        EdgeWeights {
            cost: rng.random_range(1.0..=2.0),
            delay: rng.random_range(1.0..=2.0),
        }
    };
    let mut edges = Vec::with_capacity(4 * n as usize * (n as usize - 1));
    for row in 0..n {
        for col in 0..n {
            let here = spec.node_at(row, col);
            if col + 1 < n {
                let right = spec.node_at(row, col + 1);
                let w = draw();
                edges.push(Edge { src: here, dst: right, weights: w });
                edges.push(Edge { src: right, dst: here, weights: w });
            }
            if row + 1 < n {
                let down = spec.node_at(row + 1, col);
                let w = draw();
                edges.push(Edge { src: here, dst: down, weights: w });
                edges.push(Edge { src: down, dst: here, weights: w });
            }
        }
    }
    Graph::with_provenance(spec.node_count(), edges, Some(spec))
}

/// Least-hop distance between two grid nodes: the Manhattan distance of
/// their row-major coordinates.
pub fn hop_distance(spec: GridSpec, u: NodeId, v: NodeId) -> u32 {
    let (ur, uc) = spec.coords(u);
    let (vr, vc) = spec.coords(v);
    ur.abs_diff(vr) + uc.abs_diff(vc)
}
