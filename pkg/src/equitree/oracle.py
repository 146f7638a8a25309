"""Exhaustive search for equitable tree-colorings of small graphs."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .graph import Graph
from .plan import ceil_div

MAX_ORACLE_N = 20

FOUND = "Found"
NOT_EXIST = "NotExist"
BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class OracleResult:
    status: str
    coloring: list[int] | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _RollbackUnionFind:
    """Union by size, no path compression, so unions can be undone in LIFO order."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append((rb, ra))
        return True

    def rollback(self, mark: int) -> None:
        while len(self.history) > mark:
            rb, ra = self.history.pop()
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]


def oracle_solve(g: Graph, k: int, mode: str = "cap", node_limit: int = 2_000_000) -> OracleResult:
    """Decide whether ``g`` has a tree-k-coloring meeting the size rule of ``mode``.

    ``mode="cap"`` bounds every class by ``ceil(n/k)``; ``mode="strict"``
    requires class sizes in ``{floor(n/k), ceil(n/k)}``.
    """
    if g.n > MAX_ORACLE_N:
        raise ValueError(f"oracle is limited to n <= {MAX_ORACLE_N}")
    if k < 1:
        raise ValueError("k must be >= 1")
    if mode not in ("cap", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    n = g.n
    q, r = divmod(n, k)
    strict = mode == "strict"
    cap = ceil_div(n, k)
    full_allowed = r if (strict and r) else k
    color = [-1] * n
    sizes = [0] * k
    uf = _RollbackUnionFind(n)
    nodes = 0
    n_full = 0

    def search(v: int, used: int) -> bool:
        nonlocal nodes, n_full
        if v == n:
            return True
        remaining = n - v
        if strict and sum(max(0, q - s) for s in sizes) > remaining:
            return False
        for c in range(min(used + 1, k)):
            if sizes[c] >= cap:
                continue
            if strict and r and sizes[c] == q and n_full >= full_allowed:
                continue
            nodes += 1
            if nodes > node_limit:
                raise BudgetExceeded(f"more than {node_limit} search nodes")
            mark = len(uf.history)
            ok = True
            for u in g.adj[v]:
                if u < v and color[u] == c and not uf.union(u, v):
                    ok = False
                    break
            if ok:
                color[v] = c
                sizes[c] += 1
                became_full = strict and r and sizes[c] == q + 1
                if became_full:
                    n_full += 1
                if search(v + 1, max(used, c + 1)):
                    return True
                if became_full:
                    n_full -= 1
                sizes[c] -= 1
                color[v] = -1
            uf.rollback(mark)
        return False

    try:
        found = search(0, 0)
    except BudgetExceeded:
        return OracleResult(BUDGET_EXCEEDED, nodes=nodes)
    if found:
        return OracleResult(FOUND, coloring=list(color), nodes=nodes)
    return OracleResult(NOT_EXIST, nodes=nodes)


def oracle_min_k(g: Graph, mode: str = "cap", node_limit: int = 2_000_000) -> tuple[int, OracleResult]:
    """Smallest k admitting a coloring; raises :class:`BudgetExceeded` if a search runs out."""
    for k in range(1, max(g.n, 1) + 1):
        res = oracle_solve(g, k, mode=mode, node_limit=node_limit)
        if res.status == BUDGET_EXCEEDED:
            raise BudgetExceeded(f"budget exhausted at k={k}")
        if res.found:
            return k, res
    raise AssertionError("k = n always admits a coloring")
