//! Plain-text graph file format.
//!
//! ```text
//! graph <node_count>
//! grid <n> <seed>              (optional provenance line)
//! edge <src> <dst> <cost> <delay>
//! ```
//!
//! Weights are printed as the shortest decimal that round-trips, so
//! `load_graph(save_graph(g)) == g` is exact.

use std::fmt::Write as _;

use super::{Edge, EdgeWeights, Graph, GraphError, GridSpec, NodeId};

pub fn save_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}", g.node_count()).unwrap();
    if let Some(spec) = g.grid_spec() {
        writeln!(out, "grid {} {}", spec.n, spec.weight_seed).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "edge {} {} {} {}", e.src, e.dst, e.weights.cost, e.weights.delay).unwrap();
    }
    out
}

pub fn load_graph(text: &str) -> Result<Graph, GraphError> {
    let err = |line: usize, message: &str| GraphError::Parse {
        line,
        message: message.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("graph") {
        return Err(err(line_no, "expected `graph <node_count>` header"));
    }
    let node_count: usize = fields
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(line_no, "malformed node count"))?;
    if fields.next().is_some() {
        return Err(err(line_no, "trailing fields in header"));
    }

    let mut grid: Option<GridSpec> = None;
    let mut edges = Vec::new();
    for (line_no, line) in lines {
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("grid") => {
                let n: u32 = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(line_no, "malformed grid side length"))?;
                let seed: u64 = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(line_no, "malformed grid seed"))?;
                if (n as usize) * (n as usize) != node_count {
                    return Err(err(line_no, "grid line inconsistent with node count"));
                }
                grid = Some(GridSpec::new(n, seed));
            }
            Some("edge") => {
                let mut next = |what: &str| -> Result<f64, GraphError> {
                    fields
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(line_no, what))
                };
                let src = next("malformed source node")?;
                let dst = next("malformed destination node")?;
                let cost = next("malformed cost")?;
                let delay = next("malformed delay")?;
                if src.fract() != 0.0 || dst.fract() != 0.0 || src < 0.0 || dst < 0.0 {
                    return Err(err(line_no, "node ids must be non-negative integers"));
                }
                edges.push(Edge {
                    src: NodeId(src as u32),
                    dst: NodeId(dst as u32),
                    weights: EdgeWeights { cost, delay },
                });
            }
            _ => return Err(err(line_no, "unknown directive")),
        }
    }
    // Graph construction re-checks ranges, self-loops and weight positivity.
    Graph::with_provenance(node_count, edges, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::t1;
    use crate::graph::{build_grid, GridSpec};

    #[test]
    fn round_trip_t1() {
        let g = t1();
        let text = save_graph(&g);
        assert_eq!(text.lines().count(), 6); // header + 5 edges
        let back = load_graph(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn round_trip_grid_keeps_provenance() {
        let g = build_grid(GridSpec::new(3, 77)).unwrap();
        let back = load_graph(&save_graph(&g)).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.grid_spec(), Some(GridSpec::new(3, 77)));
    }

    #[test]
    fn rejects_self_loop_line() {
        let text = "graph 2\nedge 0 0 1.0 1.0\n";
        assert!(matches!(load_graph(text), Err(GraphError::SelfLoop { .. })));
    }

    #[test]
    fn rejects_non_positive_weight() {
        let text = "graph 2\nedge 0 1 -1.0 1.0\n";
        assert!(matches!(load_graph(text), Err(GraphError::InvalidWeight { .. })));
    }

    #[test]
    fn rejects_out_of_range_index() {
        let text = "graph 2\nedge 0 5 1.0 1.0\n";
        assert!(matches!(load_graph(text), Err(GraphError::NodeOutOfRange { .. })));
    }

    #[test]
    fn rejects_malformed_header() {
        assert!(matches!(load_graph("grap 2\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(load_graph(""), Err(GraphError::Parse { .. })));
        assert!(matches!(load_graph("graph x\n"), Err(GraphError::Parse { .. })));
    }
}
