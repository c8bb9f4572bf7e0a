//! FB (fallback): the least-cost path when feasible, otherwise the
//! least-delay path when feasible. The least-cost run is never bounded;
//! the least-delay run only happens when the least-cost path is
//! infeasible.

use crate::engine::WeightFn;
use crate::graph::path_attrs;

use super::{make_solution, CspRequest, CspSolution, Subroutines};

pub(super) fn run(subs: &mut Subroutines, req: &CspRequest) -> Option<CspSolution> {
    if let Some((path, _)) = subs.sp_unbounded(WeightFn::Cost, req.src, req.dst) {
        let attrs = path_attrs(subs.graph(), &path).expect("engine path");
        if attrs.delay <= req.delay_bound {
            return Some(CspSolution { path, attrs });
        }
    } else {
        return None; // destination unreachable
    }
    let (path, _) = subs.sp_with_cutoff(WeightFn::Delay, req.src, req.dst, req.delay_bound)?;
    Some(make_solution(subs.graph(), path))
}
