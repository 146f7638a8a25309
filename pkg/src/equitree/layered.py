"""Layered coloring for large class caps.

The vertex set is cut into layers ``C_1, ..., C_{m+1}``. Each of the first
``m`` layers takes a block ``A_i`` of high residual degree vertices plus the
closure ``B_i`` of vertices with many neighbours in what is already taken.
Layer one is colored greedily under cap ``L_1``; every later layer freezes
what came before and inserts vertices by shifting witnesses along paths of
the class digraph toward an under-full class.
"""
from __future__ import annotations

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import PartialColoring
from .errors import (
    EmptyY0,
    NoAugmentingClass,
    NoClassAvailable,
    NotEnoughVertices,
)
from .graph import Graph, degeneracy_ordering, induced_edge_count, max_degree
from .plan import Base3Plan, SolvePlan, base3_decompose, cap_ratio_violations

log = logging.getLogger(__name__)


@dataclass
class LayerPlan:
    m: int
    a: list[list[int]]  # A_1 .. A_{m+1}; A_{m+1} is the remainder
    b: list[list[int]]  # B_1 .. B_{m+1}; B_{m+1} is empty
    deltas: list[int]  # residual max degree after H_1 .. H_m
    threshold: int

    def layer(self, i: int) -> list[int]:
        """Vertices of C_i (1-based)."""
        return self.a[i - 1] + self.b[i - 1]

    def prefix(self, i: int) -> set[int]:
        """Vertex set of H_i."""
        out: set[int] = set()
        for j in range(1, i + 1):
            out.update(self.layer(j))
        return out


def _extract_max_degree(g: Graph, taken: list[bool], count: int) -> list[int]:
    # residual degrees in G - taken, repeatedly removing a max-degree vertex (lowest id on ties)
    deg = {}
    for v in range(g.n):
        if not taken[v]:
            deg[v] = sum(1 for w in g.adj[v] if not taken[w])
    heap = [(-dv, v) for v, dv in deg.items()]
    heapq.heapify(heap)
    out: list[int] = []
    gone: set[int] = set()
    while len(out) < count:
        negd, v = heapq.heappop(heap)
        if v in gone or -negd != deg[v]:
            continue
        gone.add(v)
        out.append(v)
        for w in g.adj[v]:
            if w in deg and w not in gone:
                deg[w] -= 1
                heapq.heappush(heap, (-deg[w], w))
    return out


def build_layer_plan(g: Graph, plan: SolvePlan, base3: Base3Plan | None = None) -> LayerPlan:
    base3 = base3 or plan.base3 or base3_decompose(plan.t, plan.alpha)
    k = plan.k
    threshold = (2 * plan.alpha - 4) * plan.d
    taken = [False] * g.n
    n_taken = 0
    a_layers: list[list[int]] = []
    b_layers: list[list[int]] = []
    deltas: list[int] = []

    for i in range(1, base3.m + 1):
        need = (base3.ell[i] - base3.ell[i - 1]) * k
        if g.n - n_taken < need:
            raise NotEnoughVertices(
                f"layer {i} needs {need} vertices, only {g.n - n_taken} left",
                layer=i, need=need, available=g.n - n_taken,
            )
        a_i = _extract_max_degree(g, taken, need)
        for v in a_i:
            taken[v] = True
        n_taken += len(a_i)

        # closure: always absorb the lowest-id qualifying vertex
        inside = [0] * g.n
        for v in range(g.n):
            if not taken[v]:
                inside[v] = sum(1 for w in g.adj[v] if taken[w])
        ready = [v for v in range(g.n) if not taken[v] and inside[v] >= threshold]
        heapq.heapify(ready)
        b_i: list[int] = []
        while ready:
            v = heapq.heappop(ready)
            if taken[v]:
                continue
            taken[v] = True
            n_taken += 1
            b_i.append(v)
            for w in g.adj[v]:
                if not taken[w]:
                    inside[w] += 1
                    if inside[w] == threshold:
                        heapq.heappush(ready, w)
        a_layers.append(a_i)
        b_layers.append(b_i)
        deltas.append(max_degree(g, {v for v in range(g.n) if taken[v]}))

    a_layers.append([v for v in range(g.n) if not taken[v]])
    b_layers.append([])
    return LayerPlan(m=base3.m, a=a_layers, b=b_layers, deltas=deltas, threshold=threshold)


def color_layer_one(g: Graph, layer_plan: LayerPlan, state: PartialColoring, cap: int) -> None:
    """Greedy coloring of C_1 in degenerate order under class cap ``cap``."""
    for u in degeneracy_ordering(g, layer_plan.layer(1)).order:
        counts = state.neighbor_class_counts(u)
        best = None
        for c in range(state.k):
            if counts.get(c, 0) <= 1 and state.size(c) < cap:
                if best is None or state.size(c) < state.size(best):
                    best = c
        if best is None:
            raise NoClassAvailable(
                f"no class accepts vertex {u} in layer 1",
                vertex=u, layer=1, cap=cap, sizes=state.sizes(),
            )
        state.place(u, best)


@dataclass
class WitnessLayering:
    order: list[int] = field(default_factory=list)  # classes in discovery order
    depth: dict[int, int] = field(default_factory=dict)
    parent: dict[int, int | None] = field(default_factory=dict)
    witness: dict[int, int | None] = field(default_factory=dict)
    found: int | None = None

    @property
    def y(self) -> int:
        return len(self.order)

    @property
    def layers(self) -> list[list[int]]:
        out: list[list[int]] = []
        for c in self.order:
            j = self.depth[c]
            while len(out) <= j:
                out.append([])
            out[j].append(c)
        return out

    def path_to(self, c: int) -> list[int]:
        """Class sequence from ``c`` down to its root in Y_0."""
        path = [c]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path

    def _add(self, c: int, depth: int, parent: int | None, witness: int | None) -> None:
        self.order.append(c)
        self.depth[c] = depth
        self.parent[c] = parent
        self.witness[c] = witness


def build_witness_layering(
    state: PartialColoring,
    cap: int,
    roots: list[int] | None = None,
    stop=None,
) -> WitnessLayering:
    """Breadth-first layering of the class digraph toward under-full classes.

    ``X -> Y`` is an arc when some unfrozen ``x`` in ``X`` has at most one
    neighbour in ``Y``; that ``x`` is recorded as the witness. ``roots``
    overrides the default root layer (classes smaller than ``cap``). When
    ``stop`` is given the search ends at the first discovered class it
    accepts, which is stored in ``found``.
    """
    if roots is None:
        roots = [c for c in range(state.k) if state.size(c) < cap]
    if not roots:
        raise EmptyY0(f"no class below cap {cap}", cap=cap, sizes=state.sizes())
    lay = WitnessLayering()
    for c in roots:
        lay._add(c, 0, None, None)
        if stop is not None and stop(c):
            lay.found = c
            return lay
    adj, color, frozen = state.g.adj, state.color, state.frozen
    head = 0
    while head < len(lay.order):
        target = lay.order[head]
        head += 1
        hits: dict[int, int] = {}
        for y in state.members[target]:
            for w in adj[y]:
                if color[w] is not None:
                    hits[w] = hits.get(w, 0) + 1
        for x_class in range(state.k):
            if x_class in lay.depth:
                continue
            for x in state.members[x_class]:
                if not frozen[x] and hits.get(x, 0) <= 1:
                    lay._add(x_class, lay.depth[target] + 1, target, x)
                    if stop is not None and stop(x_class):
                        lay.found = x_class
                        return lay
                    break
    return lay


def switch_witnesses(state: PartialColoring, layering: WitnessLayering, path: list[int]) -> None:
    """Shift one vertex along ``path`` (top class first, root last).

    Moves run from the root end upward so each receiving class has only
    shrunk before its witness arrives.
    """
    for i in range(len(path) - 1, 0, -1):
        src, dst = path[i - 1], path[i]
        state.move(layering.witness[src], dst)


@dataclass
class LayerStats:
    layer: int
    cap: int
    vertices: int
    augmentations: int = 0
    longest_path: int = 0
    max_y: int = 0
    max_class: int = 0
    frozen_conserved: bool = True


def color_layer_i(
    g: Graph,
    layer_plan: LayerPlan,
    i: int,
    state: PartialColoring,
    cap: int,
) -> LayerStats:
    """Color C_i (i >= 2) without recoloring any frozen vertex."""
    stats = LayerStats(layer=i, cap=cap, vertices=len(layer_plan.layer(i)))
    for u in degeneracy_ordering(g, layer_plan.layer(i)).order:
        lay = build_witness_layering(
            state, cap, stop=lambda c, u=u: state.neighbor_count(u, c) <= 1
        )
        stats.max_y = max(stats.max_y, lay.y)
        if lay.found is None:
            raise NoAugmentingClass(
                f"no reachable class accepts vertex {u} in layer {i}",
                vertex=u, layer=i, y=lay.y, cap=cap, sizes=state.sizes(),
            )
        path = lay.path_to(lay.found)
        if len(path) > 1:
            stats.augmentations += 1
            stats.longest_path = max(stats.longest_path, len(path) - 1)
        switch_witnesses(state, lay, path)
        state.place(u, lay.found)
    return stats


@dataclass
class LayeredRun:
    state: PartialColoring
    layer_plan: LayerPlan
    base3: Base3Plan
    stats: list[LayerStats]


def solve_layered(
    g: Graph,
    plan: SolvePlan,
    layer_plan: LayerPlan | None = None,
    debug: bool | None = None,
) -> LayeredRun:
    base3 = plan.base3 or base3_decompose(plan.t, plan.alpha)
    if layer_plan is None:
        layer_plan = build_layer_plan(g, plan, base3)
    state = PartialColoring(g, plan.k, debug=debug)
    stats = []

    cap = base3.cap(1)
    color_layer_one(g, layer_plan, state, cap)
    first = LayerStats(layer=1, cap=cap, vertices=len(layer_plan.layer(1)))
    first.max_class = max(state.sizes(), default=0)
    stats.append(first)
    state.freeze(layer_plan.layer(1))

    for i in range(2, base3.m + 2):
        frozen_before = [(v, state.color[v]) for v in range(g.n) if state.frozen[v]]
        st = color_layer_i(g, layer_plan, i, state, base3.cap(i))
        st.frozen_conserved = all(state.color[v] == c for v, c in frozen_before)
        st.max_class = max(state.sizes(), default=0)
        stats.append(st)
        state.freeze(layer_plan.layer(i))
        log.debug("layer %d done: %s", i, st)
    return LayeredRun(state=state, layer_plan=layer_plan, base3=base3, stats=stats)


@dataclass(frozen=True)
class Check:
    name: str
    layer: int | None
    ok: bool
    lhs: Fraction
    rhs: Fraction

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "layer": self.layer,
            "ok": self.ok,
            "lhs": [self.lhs.numerator, self.lhs.denominator],
            "rhs": [self.rhs.numerator, self.rhs.denominator],
        }


@dataclass
class DiagnosticsReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def violations(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "violations": len(self.violations),
            "checks": [c.to_dict() for c in self.checks],
        }


def run_diagnostics(
    g: Graph,
    plan: SolvePlan,
    layer_plan: LayerPlan,
    base3: Base3Plan | None = None,
    stats: list[LayerStats] | None = None,
) -> DiagnosticsReport:
    """Evaluate the layer bookkeeping identities and bounds in exact arithmetic."""
    base3 = base3 or plan.base3 or base3_decompose(plan.t, plan.alpha)
    a2 = 2 * plan.alpha
    k, d, t, delta = plan.k, plan.d, plan.t, plan.delta
    ell = base3.ell
    report = DiagnosticsReport()

    def add(name, layer, lhs, rhs, ok):
        report.checks.append(Check(name, layer, bool(ok), Fraction(lhs), Fraction(rhs)))

    h: set[int] = set()
    b_total = 0
    for i in range(1, layer_plan.m + 1):
        h.update(layer_plan.layer(i))
        b_total += len(layer_plan.b[i - 1])
        e_h = induced_edge_count(g, h)
        size_eq = ell[i] * k + b_total
        add("layer_size_identity", i, len(h), size_eq, len(h) == size_eq)
        add("closure_edge_lower", i, e_h, (a2 - 4) * d * b_total, e_h >= (a2 - 4) * d * b_total)
        if h:
            add("degenerate_edge_upper", i, e_h, d * len(h), e_h < d * len(h))
        b_bound = Fraction(ell[i] * k, a2 - 5)
        add("closure_size_bound", i, b_total, b_bound, b_total < b_bound)
        h_bound = Fraction((a2 - 4) * ell[i] * k, a2 - 5)
        add("prefix_size_bound", i, len(h), h_bound, len(h) < h_bound)
        prev = delta if i == 1 else layer_plan.deltas[i - 2]
        add("residual_degree_monotone", i, layer_plan.deltas[i - 1], prev,
            layer_plan.deltas[i - 1] <= prev)

    weighted = ell[1] * delta + sum(
        (ell[i + 1] - ell[i]) * layer_plan.deltas[i - 1] for i in range(1, layer_plan.m + 1)
    )
    bound = 2 * delta + Fraction(10, 3) * d * t
    add("residual_degree_sum", None, weighted, bound, weighted <= bound)

    bad = set(cap_ratio_violations(base3))
    for i in range(2, base3.m + 2):
        add("cap_ratio", i, 2 * base3.cap(i - 1), base3.cap(i), i not in bad)

    for st in stats or []:
        add("cap_ladder", st.layer, st.max_class, st.cap, st.max_class <= st.cap)
        add("frozen_conserved", st.layer, int(st.frozen_conserved), 1, st.frozen_conserved)
    return report
