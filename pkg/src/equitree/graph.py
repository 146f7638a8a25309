"""Simple undirected graphs, edge-list I/O and degeneracy orderings.

Vertices are the integers ``0..n-1``. A :class:`Graph` is immutable once
built; all queries recompute from the adjacency lists.
"""
from __future__ import annotations

import heapq
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import BadToken, DuplicateEdge, SelfLoop, VertexOutOfRange


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]


def parse_edge_list(text: str | bytes) -> Graph:
    """Parse the edge-list format.

    An optional ``v <n>`` line may precede the edges; ``#`` lines are
    comments. Without a header the vertex count is ``max id + 1``.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    declared: int | None = None
    seen_edge_or_header = False
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "v":
            if seen_edge_or_header or len(tokens) != 2 or not tokens[1].isdigit():
                raise BadToken(lineno, f"misplaced or malformed header {line!r}")
            declared = int(tokens[1])
            seen_edge_or_header = True
            continue
        seen_edge_or_header = True
        if len(tokens) != 2 or not all(tok.isdigit() for tok in tokens):
            raise BadToken(lineno, f"expected '<u> <v>', got {line!r}")
        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise SelfLoop(lineno, f"self-loop at vertex {u}")
        if declared is not None and max(u, v) >= declared:
            raise VertexOutOfRange(lineno, f"vertex {max(u, v)} >= declared n={declared}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(lineno, f"duplicate edge {key[0]}-{key[1]}")
        seen.add(key)
        edges.append(key)
    if declared is None:
        declared = max((v for e in edges for v in e), default=-1) + 1
    return Graph.from_edges(declared, edges)


def write_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment is not None:
        lines.append(f"# {comment}")
    lines.append(f"v {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DegeneracyOrdering:
    order: tuple[int, ...]
    pos: dict[int, int]
    back_degree: dict[int, int]
    d: int


def degeneracy_ordering(g: Graph, vertices: Iterable[int] | None = None) -> DegeneracyOrdering:
    """Smallest-last ordering of ``g`` (or of the subgraph induced by ``vertices``).

    Repeatedly deletes a minimum-degree vertex, lowest id first on ties; the
    ordering is the reversed deletion sequence, so every vertex has at most
    ``d`` neighbours before it.
    """
    if vertices is None:
        verts = list(range(g.n))
        inside = None
    else:
        verts = sorted(set(vertices))
        inside = set(verts)
    deg = {}
    for v in verts:
        deg[v] = len(g.adj[v]) if inside is None else sum(1 for w in g.adj[v] if w in inside)
    heap = [(deg[v], v) for v in verts]
    heapq.heapify(heap)
    removed: set[int] = set()
    deletion: list[int] = []
    back: dict[int, int] = {}
    while heap:
        dv, v = heapq.heappop(heap)
        if v in removed or dv != deg[v]:
            continue
        removed.add(v)
        deletion.append(v)
        back[v] = dv
        for w in g.adj[v]:
            if w in removed or (inside is not None and w not in inside):
                continue
            deg[w] -= 1
            heapq.heappush(heap, (deg[w], w))
    order = tuple(reversed(deletion))
    return DegeneracyOrdering(
        order=order,
        pos={v: i for i, v in enumerate(order)},
        back_degree=back,
        d=max(back.values(), default=0),
    )


def neighbors_in(g: Graph, v: int, s) -> int:
    """Number of neighbours of ``v`` inside the vertex set ``s``."""
    return sum(1 for w in g.adj[v] if w in s)


def induces_forest(g: Graph, s: Iterable[int], method: str = "union_find") -> bool:
    """Whether the subgraph induced by ``s`` is acyclic."""
    s = set(s)
    if len(s) <= 2:
        return True
    if method == "union_find":
        return _forest_union_find(g, s)
    if method == "dfs":
        return _forest_dfs(g, s)
    raise ValueError(f"unknown method {method!r}")


def _forest_union_find(g: Graph, s: set[int]) -> bool:
    parent = {v: v for v in s}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in s:
        for w in g.adj[u]:
            if w > u and w in s:
                ru, rw = find(u), find(w)
                if ru == rw:
                    return False
                parent[ru] = rw
    return True


def _forest_dfs(g: Graph, s: set[int]) -> bool:
    visited: set[int] = set()
    for root in s:
        if root in visited:
            continue
        visited.add(root)
        stack = [(root, -1)]
        while stack:
            v, parent = stack.pop()
            for w in g.adj[v]:
                if w not in s or w == parent:
                    continue
                if w in visited:
                    return False
                visited.add(w)
                stack.append((w, v))
    return True


def induced_edge_count(g: Graph, s) -> int:
    return sum(1 for u in s for w in g.adj[u] if w > u and w in s)


def max_degree(g: Graph, excluded=frozenset()) -> int:
    """Maximum degree of ``g`` minus the vertices in ``excluded``."""
    best = 0
    for v in range(g.n):
        if v in excluded:
            continue
        best = max(best, sum(1 for w in g.adj[v] if w not in excluded))
    return best
