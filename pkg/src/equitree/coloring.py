"""Mutable partial coloring shared by the solvers."""
from __future__ import annotations

import os
from collections import Counter

from .errors import FrozenVertex, InvariantBroken, PreconditionViolated
from .graph import Graph, induces_forest


def debug_checks_enabled() -> bool:
    return os.environ.get("EQUITREE_DEBUG_CHECKS", "") not in ("", "0")


class PartialColoring:
    """Vertex-to-class assignment with per-class member arrays.

    Placement and moves are only allowed when the vertex has at most one
    neighbour in the target class, which keeps every class a forest. Frozen
    vertices can never change class.
    """

    def __init__(self, g: Graph, k: int, debug: bool | None = None):
        self.g = g
        self.k = k
        self.color: list[int | None] = [None] * g.n
        self.members: list[list[int]] = [[] for _ in range(k)]
        self._slot: list[int] = [-1] * g.n
        self.frozen: list[bool] = [False] * g.n
        self.n_colored = 0
        self.n_mutations = 0
        self.debug = debug_checks_enabled() if debug is None else debug

    def size(self, c: int) -> int:
        return len(self.members[c])

    def sizes(self) -> list[int]:
        return [len(mem) for mem in self.members]

    def neighbor_count(self, u: int, c: int) -> int:
        color = self.color
        return sum(1 for w in self.g.adj[u] if color[w] == c)

    def neighbor_class_counts(self, u: int) -> Counter:
        color = self.color
        return Counter(color[w] for w in self.g.adj[u] if color[w] is not None)

    def freeze(self, vertices) -> None:
        for v in vertices:
            self.frozen[v] = True

    def place(self, u: int, c: int) -> None:
        if self.color[u] is not None:
            raise PreconditionViolated(f"vertex {u} is already colored")
        if self.neighbor_count(u, c) > 1:
            raise PreconditionViolated(f"vertex {u} has >= 2 neighbours in class {c}")
        self._append(u, c)
        self.n_colored += 1
        self._after_mutation(c)

    def move(self, x: int, to: int) -> None:
        src = self.color[x]
        if src is None:
            raise PreconditionViolated(f"vertex {x} is not colored")
        if self.frozen[x]:
            raise FrozenVertex(f"vertex {x} is frozen")
        if src == to:
            raise PreconditionViolated(f"vertex {x} already in class {to}")
        if self.neighbor_count(x, to) > 1:
            raise PreconditionViolated(f"vertex {x} has >= 2 neighbours in class {to}")
        self._remove(x)
        self._append(x, to)
        self._after_mutation(src, to)

    def _append(self, v: int, c: int) -> None:
        self.color[v] = c
        self._slot[v] = len(self.members[c])
        self.members[c].append(v)

    def _remove(self, v: int) -> None:
        c = self.color[v]
        mem = self.members[c]
        i = self._slot[v]
        last = mem.pop()
        if last != v:
            mem[i] = last
            self._slot[last] = i
        self.color[v] = None
        self._slot[v] = -1

    def _after_mutation(self, *classes: int) -> None:
        self.n_mutations += 1
        if not self.debug:
            return
        for c in classes:
            mem = self.members[c]
            for i, v in enumerate(mem):
                if self.color[v] != c or self._slot[v] != i:
                    raise InvariantBroken(f"membership of class {c} out of sync at vertex {v}")
            if not induces_forest(self.g, mem):
                raise InvariantBroken(f"class {c} no longer induces a forest")
        if sum(len(mem) for mem in self.members) != self.n_colored:
            raise InvariantBroken("class sizes do not add up to the colored count")

    def as_list(self) -> list[int | None]:
        return list(self.color)
