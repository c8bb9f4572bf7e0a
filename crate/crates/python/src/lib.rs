//! Python bindings: graphs, the search engines and the CSP solvers.
//!
//! Build with `cargo build -p bdroute-python --release`, then import the
//! produced cdylib as `bdroute` (see python/smoke_test.py, which copies
//! and renames it).

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bdroute_core::csp::{solve as csp_solve, AlgorithmId, CspRequest, EngineMode};
use bdroute_core::engine::{
    bounded_dijkstra, bounded_dijkstra_reverse, chong_ksp, Bound as SearchBound, WeightFn,
};
use bdroute_core::graph::{
    build_grid, hop_distance, load_graph, path_attrs, reverse_view, save_graph, Graph, GridSpec,
    NodeId, Path,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Either a metric name ("cost" / "delay") or a multiplier `lam` meaning
/// `cost + lam * delay`.
#[derive(FromPyObject)]
enum MetricArg {
    #[pyo3(transparent)]
    Name(String),
    #[pyo3(transparent)]
    Lambda(f64),
}

impl MetricArg {
    fn weight_fn(&self) -> PyResult<WeightFn> {
        match self {
            MetricArg::Name(s) => match s.as_str() {
                "cost" => Ok(WeightFn::Cost),
                "delay" => Ok(WeightFn::Delay),
                other => Err(value_err(format!(
                    "unknown metric `{other}` (expected \"cost\", \"delay\" or a float)"
                ))),
            },
            MetricArg::Lambda(lam) => {
                if *lam >= 0.0 && lam.is_finite() {
                    Ok(WeightFn::Linear(*lam))
                } else {
                    Err(value_err("metric multiplier must be finite and non-negative"))
                }
            }
        }
    }
}

fn to_bound(bound: Option<f64>) -> PyResult<SearchBound> {
    match bound {
        None => Ok(SearchBound::Unbounded),
        Some(b) if b.is_finite() && b > 0.0 => Ok(SearchBound::Finite(b)),
        Some(b) => Err(value_err(format!("bound {b} must be finite and positive"))),
    }
}

fn node(g: &Graph, v: u32) -> PyResult<NodeId> {
    let id = NodeId(v);
    if g.contains(id) {
        Ok(id)
    } else {
        Err(value_err(format!(
            "node {v} out of range for graph with {} nodes",
            g.node_count()
        )))
    }
}

fn path_nodes(p: &Path) -> Vec<u32> {
    p.nodes.iter().map(|n| n.0).collect()
}

/// Immutable weighted directed graph with per-edge (cost, delay).
#[pyclass(frozen, name = "Graph", module = "bdroute")]
struct PyGraph {
    inner: Arc<Graph>,
}

#[pymethods]
impl PyGraph {
    /// Build the deterministic n-by-n grid with weights uniform in [1, 2].
    #[staticmethod]
    fn grid(n: u32, seed: u64) -> PyResult<Self> {
        let g = build_grid(GridSpec::new(n, seed)).map_err(value_err)?;
        Ok(Self { inner: Arc::new(g) })
    }

    /// Parse the plain-text graph format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let g = load_graph(text).map_err(value_err)?;
        Ok(Self { inner: Arc::new(g) })
    }

    /// Serialize to the plain-text graph format.
    fn to_text(&self) -> String {
        save_graph(&self.inner)
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    /// Edges as (src, dst, cost, delay) tuples.
    fn edges(&self) -> Vec<(u32, u32, f64, f64)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.src.0, e.dst.0, e.weights.cost, e.weights.delay))
            .collect()
    }

    /// A copy with every edge direction flipped.
    fn reversed(&self) -> Self {
        Self { inner: Arc::new(reverse_view(&self.inner)) }
    }

    /// Least-hop (Manhattan) distance; grid-built graphs only.
    fn hop_distance(&self, u: u32, v: u32) -> PyResult<u32> {
        let spec = self
            .inner
            .grid_spec()
            .ok_or_else(|| value_err("hop_distance needs a grid-built graph"))?;
        Ok(hop_distance(spec, node(&self.inner, u)?, node(&self.inner, v)?))
    }

    /// (cost, delay) sums along a node sequence.
    fn path_attrs(&self, nodes: Vec<u32>) -> PyResult<(f64, f64)> {
        let path = Path::new(nodes.into_iter().map(NodeId).collect());
        let attrs = path_attrs(&self.inner, &path).map_err(value_err)?;
        Ok((attrs.cost, attrs.delay))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(nodes={}, edges={})",
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

/// Shortest `src -> dst` path under the metric; `None` if unreachable or
/// beyond `bound`. Returns (node list, distance).
#[pyfunction]
#[pyo3(signature = (g, src, dst, metric=MetricArg::Name("cost".to_string()), bound=None))]
fn shortest_path(
    g: &PyGraph,
    src: u32,
    dst: u32,
    metric: MetricArg,
    bound: Option<f64>,
) -> PyResult<Option<(Vec<u32>, f64)>> {
    let graph = &g.inner;
    let w = metric.weight_fn()?;
    let dst = node(graph, dst)?;
    let result = bounded_dijkstra(graph, node(graph, src)?, w, to_bound(bound)?, Some(dst));
    Ok(result.extract_path(dst).map(|p| (path_nodes(&p), result.dist(dst))))
}

/// Per-node distances from `root` (or towards it with `reverse=True`);
/// unreached nodes read as `inf`.
#[pyfunction]
#[pyo3(signature = (g, root, metric=MetricArg::Name("delay".to_string()), bound=None, reverse=false))]
fn shortest_path_tree(
    g: &PyGraph,
    root: u32,
    metric: MetricArg,
    bound: Option<f64>,
    reverse: bool,
) -> PyResult<Vec<f64>> {
    let graph = &g.inner;
    let w = metric.weight_fn()?;
    let b = to_bound(bound)?;
    let root = node(graph, root)?;
    let result = if reverse {
        bounded_dijkstra_reverse(graph, root, w, b, None)
    } else {
        bounded_dijkstra(graph, root, w, b, None)
    };
    Ok(graph.nodes().map(|v| result.dist(v)).collect())
}

/// The up-to-k best label distances at `dst` for paths from `src`.
#[pyfunction]
#[pyo3(signature = (g, src, dst, k, metric=MetricArg::Name("cost".to_string()), bound=None))]
fn k_shortest(
    g: &PyGraph,
    src: u32,
    dst: u32,
    k: usize,
    metric: MetricArg,
    bound: Option<f64>,
) -> PyResult<Vec<f64>> {
    if k == 0 {
        return Err(value_err("k must be at least 1"));
    }
    let graph = &g.inner;
    let dst = node(graph, dst)?;
    let result = chong_ksp(
        graph,
        node(graph, src)?,
        k,
        metric.weight_fn()?,
        to_bound(bound)?,
        Some(dst),
    );
    Ok(result.dists(dst))
}

/// Solve a delay-constrained least-cost request with one of the overlay
/// algorithms; `mode` is "bounded" or "plain" and never changes the
/// returned path. `None` means infeasible.
#[pyfunction]
#[pyo3(signature = (g, algorithm, src, dst, delay_bound, mode="bounded"))]
fn solve(
    py: Python<'_>,
    g: &PyGraph,
    algorithm: &str,
    src: u32,
    dst: u32,
    delay_bound: f64,
    mode: &str,
) -> PyResult<Option<Py<PyAny>>> {
    let graph = &g.inner;
    let alg: AlgorithmId = algorithm.parse().map_err(value_err)?;
    let mode = match mode {
        "bounded" => EngineMode::Bounded,
        "plain" => EngineMode::Plain,
        other => return Err(value_err(format!("unknown mode `{other}`"))),
    };
    let req =
        CspRequest::new(node(graph, src)?, node(graph, dst)?, delay_bound).map_err(value_err)?;
    match csp_solve(alg, graph, &req, mode) {
        None => Ok(None),
        Some(sol) => {
            let dict = pyo3::types::PyDict::new(py);
            dict.set_item("path", path_nodes(&sol.path))?;
            dict.set_item("cost", sol.attrs.cost)?;
            dict.set_item("delay", sol.attrs.delay)?;
            Ok(Some(dict.into_any().unbind()))
        }
    }
}

/// The available algorithm ids.
#[pyfunction]
fn algorithms() -> Vec<&'static str> {
    AlgorithmId::ALL.iter().map(|a| a.name()).collect()
}

#[pymodule]
fn bdroute(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(shortest_path, m)?)?;
    m.add_function(wrap_pyfunction!(shortest_path_tree, m)?)?;
    m.add_function(wrap_pyfunction!(k_shortest, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(algorithms, m)?)?;
    Ok(())
}
