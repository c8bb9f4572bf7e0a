//! LARAC: Lagrangian relaxation over the aggregated weight
//! `cost + lambda * delay`.
//!
//! Keeps an infeasible cheap path `pc` and a feasible path `pd`; the
//! multiplier that equalizes their aggregated weights drives the next
//! combined-metric run. Only the initial least-delay run is bounded; the
//! least-cost and combined runs never are.

use crate::engine::WeightFn;
use crate::graph::{path_attrs, Path, PathAttrs};

use super::{make_solution, CspRequest, CspSolution, Subroutines};

const MAX_ITERATIONS: usize = 50;
const REL_TOLERANCE: f64 = 1e-9;

pub(super) fn run(subs: &mut Subroutines, req: &CspRequest) -> Option<CspSolution> {
    let attrs_of = |subs: &Subroutines, p: &Path| path_attrs(subs.graph(), p).expect("engine path");

    let (pc, _) = subs.sp_unbounded(WeightFn::Cost, req.src, req.dst)?;
    let mut pc_attrs = attrs_of(subs, &pc);
    if pc_attrs.delay <= req.delay_bound {
        return Some(CspSolution { path: pc, attrs: pc_attrs });
    }

    let (mut pd, _) = subs.sp_with_cutoff(WeightFn::Delay, req.src, req.dst, req.delay_bound)?;
    let mut pd_attrs = attrs_of(subs, &pd);

    for _ in 0..MAX_ITERATIONS {
        let lambda = (pc_attrs.cost - pd_attrs.cost) / (pd_attrs.delay - pc_attrs.delay);
        debug_assert!(lambda >= 0.0, "multiplier must stay non-negative");
        let aggregated = |a: PathAttrs| a.cost + lambda * a.delay;

        let (relaxed, _) = subs.sp_unbounded(WeightFn::Linear(lambda), req.src, req.dst)?;
        let relaxed_attrs = attrs_of(subs, &relaxed);

        let target = aggregated(pc_attrs);
        if (target - aggregated(relaxed_attrs)).abs() <= REL_TOLERANCE * target.abs().max(1.0) {
            break;
        }
        if relaxed_attrs.delay <= req.delay_bound {
            pd = relaxed;
            pd_attrs = relaxed_attrs;
        } else {
            pc_attrs = relaxed_attrs;
        }
    }
    Some(make_solution(subs.graph(), pd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::{solve, AlgorithmId, EngineMode};
    use crate::graph::tests::{t1, A, B, D, S};

    fn larac(delay_bound: f64, mode: EngineMode) -> Option<CspSolution> {
        let g = t1();
        let req = CspRequest::new(S, D, delay_bound).unwrap();
        solve(AlgorithmId::Larac, &g, &req, mode)
    }

    #[test]
    fn converges_to_feasible_path() {
        // lambda = 1 equalizes the aggregated weights, so the relaxed run
        // cannot beat them and the feasible path is returned.
        for mode in [EngineMode::Plain, EngineMode::Bounded] {
            let sol = larac(3.0, mode).unwrap();
            assert_eq!(sol.path.nodes, vec![S, B, D]);
            assert_eq!(sol.attrs.cost, 4.0);
        }
    }

    #[test]
    fn returns_least_cost_immediately_when_feasible() {
        for mode in [EngineMode::Plain, EngineMode::Bounded] {
            let sol = larac(4.0, mode).unwrap();
            assert_eq!(sol.path.nodes, vec![S, A, D]);
        }
    }

    #[test]
    fn absent_when_infeasible() {
        for mode in [EngineMode::Plain, EngineMode::Bounded] {
            assert_eq!(larac(1.0, mode), None);
        }
    }

    #[test]
    fn returned_cost_never_exceeds_least_delay_cost() {
        let g = t1();
        for delta in [2.0, 2.5, 3.0, 3.5, 4.0, 10.0] {
            let req = CspRequest::new(S, D, delta).unwrap();
            let sol = solve(AlgorithmId::Larac, &g, &req, EngineMode::Bounded).unwrap();
            assert!(sol.attrs.cost <= 4.0 + 1e-12);
            assert!(sol.attrs.delay <= delta);
        }
    }
}
