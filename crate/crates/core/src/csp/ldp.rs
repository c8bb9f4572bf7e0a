//! LDP: return the least-delay path when it meets the delay bound.

use crate::engine::WeightFn;

use super::{make_solution, CspRequest, CspSolution, Subroutines};

pub(super) fn run(subs: &mut Subroutines, req: &CspRequest) -> Option<CspSolution> {
    let (path, _) = subs.sp_with_cutoff(WeightFn::Delay, req.src, req.dst, req.delay_bound)?;
    Some(make_solution(subs.graph(), path))
}
