//! Delay-constrained least-cost (CSP) overlay algorithms.
//!
//! Each algorithm combines shortest-path subroutine runs into a feasible
//! cheapest-possible path. In [`EngineMode::Plain`] every subroutine runs
//! unbounded and the algorithm applies the delay/cost cut-offs externally
//! on the results; in [`EngineMode::Bounded`] the same cut-offs are handed
//! to the engines as bounds instead. Both modes see identical filtered
//! tables, so they return the identical path (or both return nothing) —
//! only the amount of search work differs.

mod dcur;
mod fb;
mod h_mcop;
mod iak;
mod larac;
mod ldp;
mod subroutines;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::SearchStats;
use crate::graph::{Graph, NodeId, Path, PathAttrs};

pub(crate) use subroutines::Subroutines;

/// A routing request: cheapest `src -> dst` path with delay at most
/// `delay_bound`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CspRequest {
    pub src: NodeId,
    pub dst: NodeId,
    pub delay_bound: f64,
}

impl CspRequest {
    pub fn new(src: NodeId, dst: NodeId, delay_bound: f64) -> Result<Self, CspError> {
        if src == dst {
            return Err(CspError::DegenerateRequest);
        }
        if !(delay_bound.is_finite() && delay_bound > 0.0) {
            return Err(CspError::InvalidDelayBound { value: delay_bound });
        }
        Ok(Self { src, dst, delay_bound })
    }
}

/// A feasible answer to a [`CspRequest`].
#[derive(Clone, Debug, PartialEq)]
pub struct CspSolution {
    pub path: Path,
    pub attrs: PathAttrs,
}

/// Whether subroutines receive the bound or the algorithm filters
/// unbounded results itself. Plain mode never passes a finite bound to an
/// engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineMode {
    Plain,
    Bounded,
}

/// Stable identifiers of the implemented algorithms; these strings are
/// part of the CLI and CSV interfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmId {
    Ldp,
    Fb,
    Larac,
    Dcur,
    Iak,
    HMcop,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::Ldp,
        AlgorithmId::Fb,
        AlgorithmId::Larac,
        AlgorithmId::Dcur,
        AlgorithmId::Iak,
        AlgorithmId::HMcop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Ldp => "ldp",
            AlgorithmId::Fb => "fb",
            AlgorithmId::Larac => "larac",
            AlgorithmId::Dcur => "dcur",
            AlgorithmId::Iak => "iak",
            AlgorithmId::HMcop => "h_mcop",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = CspError;

    fn from_str(s: &str) -> Result<Self, CspError> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| CspError::UnknownAlgorithm { name: s.to_string() })
    }
}

/// What kind of subroutine run an algorithm issued.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchScope {
    /// Single-destination run.
    Sp,
    /// Full tree run.
    Spt,
}

/// Which metric a subroutine optimized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricKind {
    Cost,
    Delay,
    Combined,
}

/// One engine invocation, recorded for auditing bound provisioning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineCall {
    pub metric: MetricKind,
    pub scope: SearchScope,
    pub bounded: bool,
}

/// Engine calls and summed operation counters of one solve.
#[derive(Clone, Debug, Default)]
pub struct Telemetry {
    pub calls: Vec<EngineCall>,
    pub stats: SearchStats,
}

impl Telemetry {
    pub fn bounded_calls(&self, metric: MetricKind, scope: SearchScope) -> usize {
        self.calls
            .iter()
            .filter(|c| c.bounded && c.metric == metric && c.scope == scope)
            .count()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CspError {
    #[error("unknown algorithm id `{name}`")]
    UnknownAlgorithm { name: String },
    #[error("request source and destination must differ")]
    DegenerateRequest,
    #[error("delay bound {value} must be finite and positive")]
    InvalidDelayBound { value: f64 },
}

/// Solves `req` on `g` with the given algorithm. `None` means the request
/// is infeasible (or the destination unreachable).
pub fn solve(alg: AlgorithmId, g: &Graph, req: &CspRequest, mode: EngineMode) -> Option<CspSolution> {
    solve_instrumented(alg, g, req, mode).0
}

/// [`solve`] that also returns the engine-call telemetry of the run.
pub fn solve_instrumented(
    alg: AlgorithmId,
    g: &Graph,
    req: &CspRequest,
    mode: EngineMode,
) -> (Option<CspSolution>, Telemetry) {
    let mut subs = Subroutines::new(g, mode);
    let solution = match alg {
        AlgorithmId::Ldp => ldp::run(&mut subs, req),
        AlgorithmId::Fb => fb::run(&mut subs, req),
        AlgorithmId::Larac => larac::run(&mut subs, req),
        AlgorithmId::Dcur => dcur::run(&mut subs, req),
        AlgorithmId::Iak => iak::run(&mut subs, req),
        AlgorithmId::HMcop => h_mcop::run(&mut subs, req),
    };
    (solution, subs.into_telemetry())
}

/// String-keyed dispatch used by the CLI and bindings.
pub fn solve_by_name(
    name: &str,
    g: &Graph,
    req: &CspRequest,
    mode: EngineMode,
) -> Result<Option<CspSolution>, CspError> {
    Ok(solve(name.parse()?, g, req, mode))
}

/// Least-delay path if it meets the bound.
pub fn ldp(g: &Graph, req: &CspRequest, mode: EngineMode) -> Option<CspSolution> {
    solve(AlgorithmId::Ldp, g, req, mode)
}

/// Least-cost path when feasible, else the least-delay fallback.
pub fn fb(g: &Graph, req: &CspRequest, mode: EngineMode) -> Option<CspSolution> {
    solve(AlgorithmId::Fb, g, req, mode)
}

/// Lagrangian relaxation over the aggregated metric.
pub fn larac(g: &Graph, req: &CspRequest, mode: EngineMode) -> Option<CspSolution> {
    solve(AlgorithmId::Larac, g, req, mode)
}

/// Delay-constrained unicast routing over the two reverse trees.
pub fn dcur(g: &Graph, req: &CspRequest, mode: EngineMode) -> Option<CspSolution> {
    solve(AlgorithmId::Dcur, g, req, mode)
}

/// Least-cost path with a least-delay completion.
pub fn iak(g: &Graph, req: &CspRequest, mode: EngineMode) -> Option<CspSolution> {
    solve(AlgorithmId::Iak, g, req, mode)
}

/// Two-stage look-ahead search specialized to one delay constraint.
pub fn h_mcop(g: &Graph, req: &CspRequest, mode: EngineMode) -> Option<CspSolution> {
    solve(AlgorithmId::HMcop, g, req, mode)
}

pub(crate) fn make_solution(g: &Graph, path: Path) -> CspSolution {
    let attrs = crate::graph::path_attrs(g, &path).expect("engine-produced paths are valid");
    CspSolution { path, attrs }
}
