"""Independent validation of colorings, plus best-effort strict rebalancing."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .coloring import PartialColoring
from .graph import Graph, induces_forest
from .layered import build_witness_layering, switch_witnesses
from .plan import ceil_div


@dataclass
class VerifyReport:
    all_colored: bool
    colors_in_range: bool
    sizes: list[int]
    forest: list[bool]
    cap: int
    cap_ok: bool
    spread: int
    strictly_equitable: bool
    reasons: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.reasons

    @property
    def verdict(self) -> str:
        return "Valid" if self.valid else "Invalid"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "valid": self.valid,
            "all_colored": self.all_colored,
            "colors_in_range": self.colors_in_range,
            "class_sizes": self.sizes,
            "forest": self.forest,
            "cap": self.cap,
            "cap_ok": self.cap_ok,
            "spread": self.spread,
            "strictly_equitable": self.strictly_equitable,
            "reasons": self.reasons,
        }


def verify(g: Graph, coloring: Sequence[int | None], k: int) -> VerifyReport:
    """Check that ``coloring`` is a tree-k-coloring with every class at most ``ceil(n/k)``."""
    reasons = []
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(coloring) != g.n:
        reasons.append(f"coloring has {len(coloring)} entries for {g.n} vertices")
    all_colored = len(coloring) == g.n and all(c is not None for c in coloring)
    if not all_colored:
        reasons.append("some vertices are uncolored")
    def ok(c):
        return isinstance(c, int) and not isinstance(c, bool) and 0 <= c < k

    in_range = all(c is None or ok(c) for c in coloring)
    if not in_range:
        reasons.append("color outside 0..k-1")

    classes: list[list[int]] = [[] for _ in range(k)]
    for v, c in enumerate(coloring[: g.n]):
        if ok(c):
            classes[c].append(v)
    sizes = [len(cls) for cls in classes]
    forest = [induces_forest(g, cls) for cls in classes]
    for c, ok in enumerate(forest):
        if not ok:
            reasons.append(f"class {c} contains a cycle")
    cap = ceil_div(g.n, k)
    cap_ok = all(s <= cap for s in sizes)
    if not cap_ok:
        reasons.append(f"class size {max(sizes)} exceeds cap {cap}")
    spread = max(sizes) - min(sizes)
    return VerifyReport(
        all_colored=all_colored,
        colors_in_range=in_range,
        sizes=sizes,
        forest=forest,
        cap=cap,
        cap_ok=cap_ok,
        spread=spread,
        strictly_equitable=spread <= 1,
        reasons=reasons,
    )


def rebalance_strict(g: Graph, coloring: Sequence[int], k: int) -> tuple[list[int], VerifyReport]:
    """Shrink the size spread by shifting witnesses from largest to smallest classes.

    Stops once the spread is at most one or no largest class can reach a
    smallest one in the class digraph. Never makes the coloring worse.
    """
    state = PartialColoring(g, k)
    for v, c in enumerate(coloring):
        # trusted input: bypass the placement rule, only bookkeeping matters
        state._append(v, c)
        state.n_colored += 1
    while True:
        sizes = state.sizes()
        lo, hi = min(sizes), max(sizes)
        if hi - lo <= 1:
            break
        roots = [c for c in range(k) if sizes[c] == lo]
        lay = build_witness_layering(state, hi, roots=roots, stop=lambda c: sizes[c] == hi)
        if lay.found is None:
            break
        switch_witnesses(state, lay, lay.path_to(lay.found))
    out = [c for c in state.color]
    return out, verify(g, out, k)
