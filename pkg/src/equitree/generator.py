"""Seeded generation of d-degenerate graphs with a maximum-degree cap.

Randomness comes from SplitMix64 so any implementation can reproduce an
instance from its seed:

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                      (all mod 2**64)

A bounded draw in ``[0, n)`` is ``(next() * n) >> 64``.

Vertex ``i`` is joined to ``b`` earlier vertices whose degree is still
below the cap. ``b`` is ``d`` (``dist="fixed"``) or a draw in ``[0, d]``
(``dist="uniform"``), clipped to ``i``. The open vertices live in a list
that gains vertices at the end and loses saturated ones by swap-removal;
neighbours are drawn as list indices, redrawing duplicates. If no more
than ``b`` vertices are open, all of them are taken.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, degeneracy_ordering, write_edge_list

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return (self.next() * n) >> 64


@dataclass(frozen=True)
class GenSpec:
    n: int
    d: int
    dmax: int
    seed: int = 0
    dist: str = "fixed"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if self.dmax < self.d:
            raise ValueError("dmax must be >= d")
        if self.dist not in ("fixed", "uniform"):
            raise ValueError(f"unknown back-degree distribution {self.dist!r}")


def generate(spec: GenSpec) -> Graph:
    rng = SplitMix64(spec.seed)
    deg = [0] * spec.n
    edges: list[tuple[int, int]] = []
    open_: list[int] = []
    slot: dict[int, int] = {}

    def drop(v: int) -> None:
        i = slot.pop(v)
        last = open_.pop()
        if last != v:
            open_[i] = last
            slot[last] = i

    for i in range(spec.n):
        b = spec.d if spec.dist == "fixed" else rng.below(spec.d + 1)
        b = min(b, i)
        if len(open_) <= b:
            chosen = list(open_)
        else:
            picked: set[int] = set()
            chosen = []
            while len(chosen) < b:
                j = rng.below(len(open_))
                if j not in picked:
                    picked.add(j)
                    chosen.append(open_[j])
        for w in chosen:
            edges.append((w, i))
            deg[w] += 1
            deg[i] += 1
        for w in chosen:
            if deg[w] >= spec.dmax:
                drop(w)
        if deg[i] < spec.dmax:
            slot[i] = len(open_)
            open_.append(i)
    return Graph.from_edges(spec.n, edges)


def generate_text(spec: GenSpec) -> str:
    g = generate(spec)
    realized_d = degeneracy_ordering(g).d
    header = (
        f"gen n={spec.n} d={spec.d} dmax={spec.dmax} seed={spec.seed} "
        f"realized_d={realized_d} realized_delta={g.max_degree} dist={spec.dist}"
    )
    return write_edge_list(g, comment=header)
