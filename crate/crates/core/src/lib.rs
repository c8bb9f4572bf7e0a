//! Constrained shortest-path (CSP) routing toolkit.
//!
//! The crate is organized in four layers:
//!
//! * [`graph`] — immutable weighted directed multigraphs, grid generation,
//!   path evaluation and a plain-text file format.
//! * [`engine`] — the search engines: Dijkstra (SP and SPT), Bellman-Ford
//!   and Chong's k-shortest-paths, each with a bound-aware variant that
//!   discards relaxations exceeding a caller-supplied bound and thereby
//!   terminates early.
//! * [`csp`] — six delay-constrained least-cost overlay algorithms (LDP,
//!   FB, LARAC, DCUR, IAK, H_MCOP) that provision bounds to the engines.
//!   Every algorithm runs in `Plain` mode (unbounded subroutines plus an
//!   external filter) or `Bounded` mode (the bound is pushed into the
//!   engine); both modes return identical paths by construction.
//! * [`bench`] — a microbenchmark harness that generates routing requests
//!   over grid workloads, times both modes back to back and summarizes the
//!   runtime ratios with trimmed percentile statistics.

pub mod bench;
pub mod csp;
pub mod engine;
pub mod graph;

pub use csp::{AlgorithmId, CspRequest, CspSolution, EngineMode};
pub use engine::{Bound, SearchResult, SearchStats, WeightFn};
pub use graph::{EdgeWeights, Graph, GridSpec, NodeId, Path, PathAttrs};
