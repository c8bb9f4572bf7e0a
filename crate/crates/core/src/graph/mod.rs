//! Immutable weighted directed multigraphs.
//!
//! Every edge carries two strictly positive weights (`cost`, `delay`).
//! A [`Graph`] is validated once at construction and never mutated
//! afterwards, so it can be shared freely across concurrent searches.

mod grid;
mod io;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub use grid::{build_grid, hop_distance, GridSpec};
pub use io::{load_graph, save_graph};

/// Dense node index into the owning graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The two additive metrics attached to every edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeWeights {
    pub cost: f64,
    pub delay: f64,
}

impl EdgeWeights {
    pub fn new(cost: f64, delay: f64) -> Result<Self, GraphError> {
        for value in [cost, delay] {
            if !(value.is_finite() && value > 0.0) {
                return Err(GraphError::InvalidWeight { value });
            }
        }
        Ok(Self { cost, delay })
    }
}

/// A directed edge with its weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub weights: EdgeWeights,
}

/// Immutable directed multigraph with per-node out- and in-adjacency.
///
/// Structural equality (`==`) compares node count and the edge list;
/// adjacency indexes are derived and grid provenance is metadata.
#[derive(Clone, Debug)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    grid: Option<GridSpec>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.edges == other.edges
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list, validating every edge.
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        Self::with_provenance(node_count, edges, None)
    }

    pub(crate) fn with_provenance(
        node_count: usize,
        edges: Vec<Edge>,
        grid: Option<GridSpec>,
    ) -> Result<Self, GraphError> {
        let mut out_adj = vec![Vec::new(); node_count];
        let mut in_adj = vec![Vec::new(); node_count];
        for (i, edge) in edges.iter().enumerate() {
            for endpoint in [edge.src, edge.dst] {
                if endpoint.index() >= node_count {
                    return Err(GraphError::NodeOutOfRange {
                        node: endpoint,
                        node_count,
                    });
                }
            }
            if edge.src == edge.dst {
                return Err(GraphError::SelfLoop { node: edge.src });
            }
            // Re-validate weights so graphs built from raw `Edge` values
            // cannot smuggle in non-positive entries.
            EdgeWeights::new(edge.weights.cost, edge.weights.delay)?;
            out_adj[edge.src.index()].push(i as u32);
            in_adj[edge.dst.index()].push(i as u32);
        }
        Ok(Self {
            node_count,
            edges,
            out_adj,
            in_adj,
            grid,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count as u32).map(NodeId)
    }

    /// Outgoing edges of `v`, in edge-list order.
    pub fn out_edges(&self, v: NodeId) -> impl Iterator<Item = &Edge> {
        self.out_adj[v.index()].iter().map(|&i| &self.edges[i as usize])
    }

    /// Incoming edges of `v`, in edge-list order.
    pub fn in_edges(&self, v: NodeId) -> impl Iterator<Item = &Edge> {
        self.in_adj[v.index()].iter().map(|&i| &self.edges[i as usize])
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_adj[v.index()].len()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_adj[v.index()].len()
    }

    /// Grid parameters this graph was generated from, if any.
    pub fn grid_spec(&self) -> Option<GridSpec> {
        self.grid
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.index() < self.node_count
    }

    /// Per-metric cheapest weights for the hop `u -> v`.
    ///
    /// Parallel edges are resolved independently per metric, so the result
    /// is the componentwise minimum. `None` if the nodes are not adjacent.
    pub fn hop_weights(&self, u: NodeId, v: NodeId) -> Option<EdgeWeights> {
        let mut best: Option<EdgeWeights> = None;
        for edge in self.out_edges(u) {
            if edge.dst != v {
                continue;
            }
            best = Some(match best {
                None => edge.weights,
                Some(b) => EdgeWeights {
                    cost: b.cost.min(edge.weights.cost),
                    delay: b.delay.min(edge.weights.delay),
                },
            });
        }
        best
    }
}

/// Flips the direction of every edge, preserving weights.
/// Grid provenance is dropped: the result is no longer the canonical
/// output of `build_grid`.
pub fn reverse_view(g: &Graph) -> Graph {
    let edges = g
        .edges
        .iter()
        .map(|e| Edge {
            src: e.dst,
            dst: e.src,
            weights: e.weights,
        })
        .collect();
    Graph::with_provenance(g.node_count, edges, None).expect("reversing preserves validity")
}

/// A simple path given as its node sequence; edges are implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub nodes: Vec<NodeId>,
}

impl Path {
    pub fn new(nodes: Vec<NodeId>) -> Self {
        Self { nodes }
    }

    /// Number of edges, i.e. one less than the number of nodes.
    pub fn hop_count(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<NodeId> {
        self.nodes.first().copied()
    }

    pub fn last(&self) -> Option<NodeId> {
        self.nodes.last().copied()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in &self.nodes {
            if !first {
                write!(f, "->")?;
            }
            write!(f, "{n}")?;
            first = false;
        }
        Ok(())
    }
}

/// Componentwise sums of edge weights along a path.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PathAttrs {
    pub cost: f64,
    pub delay: f64,
}

impl std::ops::Add for PathAttrs {
    type Output = PathAttrs;
    fn add(self, rhs: PathAttrs) -> PathAttrs {
        PathAttrs {
            cost: self.cost + rhs.cost,
            delay: self.delay + rhs.delay,
        }
    }
}

/// Evaluates the cost and delay of `p` in `g`.
///
/// The single-node path has attributes `(0, 0)`. Non-adjacent consecutive
/// nodes and repeated nodes are rejected.
pub fn path_attrs(g: &Graph, p: &Path) -> Result<PathAttrs, GraphError> {
    if p.nodes.is_empty() {
        return Err(GraphError::EmptyPath);
    }
    let mut seen = vec![false; g.node_count()];
    let mut attrs = PathAttrs::default();
    for (i, &node) in p.nodes.iter().enumerate() {
        if !g.contains(node) {
            return Err(GraphError::NodeOutOfRange {
                node,
                node_count: g.node_count(),
            });
        }
        if seen[node.index()] {
            return Err(GraphError::RepeatedNode { node });
        }
        seen[node.index()] = true;
        if i > 0 {
            let prev = p.nodes[i - 1];
            let hop = g
                .hop_weights(prev, node)
                .ok_or(GraphError::NotAdjacent { from: prev, to: node })?;
            attrs.cost += hop.cost;
            attrs.delay += hop.delay;
        }
    }
    Ok(attrs)
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge weight {value} is not strictly positive and finite")]
    InvalidWeight { value: f64 },
    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("self-loop at node {node}")]
    SelfLoop { node: NodeId },
    #[error("grid side length {n} is too small (minimum 2)")]
    GridTooSmall { n: u32 },
    #[error("path visits node {node} twice")]
    RepeatedNode { node: NodeId },
    #[error("nodes {from} and {to} are not adjacent")]
    NotAdjacent { from: NodeId, to: NodeId },
    #[error("a path must contain at least one node")]
    EmptyPath,
    #[error("graph file parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
