"""Degenerate-order coloring with a single-swap repair, for small class caps."""
from __future__ import annotations

import logging

from .coloring import PartialColoring
from .errors import NoMoveAvailable
from .graph import DegeneracyOrdering, Graph
from .plan import SolvePlan

log = logging.getLogger(__name__)


def solve_small_t(
    g: Graph,
    ordering: DegeneracyOrdering,
    plan: SolvePlan,
    debug: bool | None = None,
) -> PartialColoring:
    """Color ``g`` in degenerate order keeping every class a forest of at most ``t`` vertices.

    A vertex goes straight into the smallest class holding at most one of its
    neighbours and fewer than ``t`` vertices. When all such classes are full,
    a donor vertex with at most one neighbour in a non-full class is shifted
    there and the current vertex takes its place.
    """
    k, t = plan.k, plan.t
    state = PartialColoring(g, k, debug=debug)

    if g.m == 0:
        for i, v in enumerate(ordering.order):
            state.place(v, i % k)
        return state

    for v in ordering.order:
        counts = state.neighbor_class_counts(v)
        s2 = [c for c in range(k) if counts.get(c, 0) >= 2]
        assert len(s2) <= sum(counts.values()) // 2
        s2_set = set(s2)
        s1 = [c for c in range(k) if c not in s2_set]

        open_s1 = [c for c in s1 if state.size(c) < t]
        if open_s1:
            state.place(v, min(open_s1, key=lambda c: (state.size(c), c)))
            continue

        # every s1 class is full; pick the repair class and a donor
        assert s2, "all classes full before the last vertex"
        m2_candidates = [c for c in s2 if state.size(c) <= t - 1]
        assert m2_candidates, "counting guarantees a non-full class"
        m2 = min(m2_candidates)
        donor = None
        for c in s1:
            for w in state.members[c]:
                if not state.frozen[w] and state.neighbor_count(w, m2) <= 1:
                    donor = w
                    break
            if donor is not None:
                break
        if donor is None:
            raise NoMoveAvailable(
                f"no donor vertex for {v}",
                vertex=v,
                colored=state.n_colored,
                sizes=state.sizes(),
                repair_class=m2,
            )
        m1 = state.color[donor]
        state.move(donor, m2)
        state.place(v, m1)
        log.debug("swap: %d -> class %d, %d -> class %d", donor, m2, v, m1)
    return state
