"""End-to-end pipeline: ordering, parameter selection, dispatch, verification."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import SolverFailure
from .graph import Graph, degeneracy_ordering
from .layered import (
    DiagnosticsReport,
    LayerPlan,
    LayerStats,
    build_layer_plan,
    run_diagnostics,
    solve_layered,
)
from .plan import Branch, SolvePlan, base3_decompose, select_params
from .small_t import solve_small_t
from .verify import VerifyReport, rebalance_strict, verify

log = logging.getLogger(__name__)


@dataclass
class SolveResult:
    plan: SolvePlan
    layered: bool
    coloring: list[int] | None = None
    report: VerifyReport | None = None
    failure: SolverFailure | None = None
    layer_plan: LayerPlan | None = None
    stats: list[LayerStats] | None = None
    diagnostics: DiagnosticsReport | None = None

    @property
    def success(self) -> bool:
        return self.failure is None and self.coloring is not None

    @property
    def valid(self) -> bool:
        return self.success and self.report is not None and self.report.valid


def solve(
    g: Graph,
    k: int,
    *,
    force_layered: bool = False,
    rebalance: bool = False,
    diagnostics: bool = True,
    debug: bool | None = None,
) -> SolveResult:
    """Compute an equitable tree-k-coloring of ``g``.

    Solver failures (only possible when the instance is outside the
    guaranteed regime) are returned in ``failure`` rather than raised.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n < 1:
        raise ValueError("graph has no vertices")
    ordering = degeneracy_ordering(g)
    plan = select_params(g.n, ordering.d, g.max_degree, k)
    layered = plan.branch is Branch.LAYERED or force_layered
    result = SolveResult(plan=plan, layered=layered)
    log.info("n=%d k=%d d=%d delta=%d t=%d pair=(%d,%d) branch=%s",
             plan.n, k, plan.d, plan.delta, plan.t, plan.alpha, plan.beta, plan.branch.value)

    try:
        if layered:
            base3 = plan.base3 or base3_decompose(plan.t, plan.alpha)
            result.layer_plan = build_layer_plan(g, plan, base3)
            run = solve_layered(g, plan, result.layer_plan, debug=debug)
            result.stats = run.stats
            state = run.state
        else:
            state = solve_small_t(g, ordering, plan, debug=debug)
        result.coloring = state.as_list()
    except SolverFailure as exc:
        log.info("solver failure: %s", exc)
        result.failure = exc

    if diagnostics and result.layer_plan is not None:
        result.diagnostics = run_diagnostics(g, plan, result.layer_plan, stats=result.stats)

    if result.coloring is not None:
        if rebalance:
            result.coloring, result.report = rebalance_strict(g, result.coloring, k)
        else:
            result.report = verify(g, result.coloring, k)
    return result
