"""Undirected simple graphs on vertices 1..I, their cycles and spanning trees."""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

MAX_VERTICES = 12


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


def _edge(i: int, j: int) -> tuple[int, int]:
    i, j = int(i), int(j)
    if i == j:
        raise GraphError(f"loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are stored as ``(i, j)`` with ``i < j``."""

    n_vertices: int
    edges: frozenset

    def __post_init__(self):
        if self.n_vertices < 1:
            raise GraphError("a graph needs at least one vertex")
        clean = frozenset(_edge(*e) for e in self.edges)
        for i, j in clean:
            if not (1 <= i <= self.n_vertices and 1 <= j <= self.n_vertices):
                raise GraphError(f"edge {(i, j)} has a vertex outside 1..{self.n_vertices}")
        object.__setattr__(self, "edges", clean)

    @classmethod
    def complete(cls, I: int) -> "Graph":
        return cls(I, frozenset(combinations(range(1, I + 1), 2)))

    @classmethod
    def from_edges(cls, edges, n_vertices: int | None = None) -> "Graph":
        edges = list(edges)
        seen = set()
        for e in edges:
            key = _edge(*e)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        if n_vertices is None:
            n_vertices = max((max(e) for e in seen), default=1)
        return cls(n_vertices, frozenset(seen))

    @property
    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> list[int]:
        out = [j for i, j in self.edges if i == v] + [i for i, j in self.edges if j == v]
        return sorted(out)

    def adjacency(self) -> dict[int, list[int]]:
        return {v: self.neighbors(v) for v in range(1, self.n_vertices + 1)}

    def is_connected(self) -> bool:
        return _n_components(self.n_vertices, self.edges) == 1


def parse_graph(text: str, n_vertices: int | None = None) -> Graph:
    """Parse an edge list, one ``i j`` pair per line; ``#`` starts a comment."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex labels, got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: vertex labels must be integers") from None
        if i < 1 or j < 1:
            raise GraphError(f"line {lineno}: vertices are 1-based")
        edges.append((i, j))
    if not edges:
        raise GraphError("edge list is empty")
    return Graph.from_edges(edges, n_vertices)


def load_graph(path: str | os.PathLike) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def format_graph(g: Graph) -> str:
    return "".join(f"{i} {j}\n" for i, j in g.sorted_edges)


def _n_components(n: int, edges) -> int:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            count -= 1
    return count


def enumerate_cycles(g: Graph) -> list[tuple[int, ...]]:
    """All simple cycles of length >= 3, each once.

    A cycle is returned as its vertex sequence starting at the lowest vertex,
    with the smaller of that vertex's two cycle neighbours second.
    """
    if g.n_vertices > MAX_VERTICES:
        raise GraphError(f"cycle enumeration is limited to {MAX_VERTICES} vertices")
    adj = g.adjacency()
    found = []

    def extend(path, on_path):
        last = path[-1]
        for w in adj[last]:
            if w == path[0] and len(path) >= 3 and path[1] < path[-1]:
                found.append(tuple(path))
            elif w > path[0] and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                on_path.discard(w)
                path.pop()

    for v in range(1, g.n_vertices + 1):
        extend([v], {v})
    return sorted(found, key=lambda c: (len(c), c))


def canonical_cycle(vertices) -> tuple[int, ...]:
    """Rotate and reflect a vertex sequence into canonical form."""
    vs = [int(v) for v in vertices]
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise GraphError("a cycle needs at least three distinct vertices")
    k = vs.index(min(vs))
    vs = vs[k:] + vs[:k]
    if vs[1] > vs[-1]:
        vs = [vs[0]] + vs[1:][::-1]
    return tuple(vs)


def spanning_trees(g: Graph) -> list[frozenset]:
    """Every spanning tree of a connected graph, as a set of edges."""
    if g.n_vertices > MAX_VERTICES:
        raise GraphError(f"spanning tree enumeration is limited to {MAX_VERTICES} vertices")
    if not g.is_connected():
        raise DisconnectedGraphError("graph is not connected")
    edges = g.sorted_edges
    n = g.n_vertices
    need = n - 1
    out = []

    def grow(k, chosen, parent):
        if len(chosen) == need:
            out.append(frozenset(chosen))
            return
        if len(edges) - k < need - len(chosen):
            return

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        i, j = edges[k]
        ri, rj = find(i), find(j)
        if ri != rj:
            p2 = list(parent)
            p2[ri] = rj
            grow(k + 1, chosen + [edges[k]], p2)
        # skipping edge k is only useful if the rest can still connect everything
        if _n_components(n, chosen + edges[k + 1:]) == 1:
            grow(k + 1, chosen, parent)

    grow(0, [], list(range(n + 1)))
    return out


def matrix_tree_count(g: Graph) -> int:
    """Number of spanning trees from an exact Laplacian cofactor."""
    n = g.n_vertices
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for i, j in g.edges:
        lap[i - 1][i - 1] += 1
        lap[j - 1][j - 1] += 1
        lap[i - 1][j - 1] -= 1
        lap[j - 1][i - 1] -= 1
    minor = [row[1:] for row in lap[1:]]
    return int(DomainMatrix([[ZZ(v) for v in row] for row in minor], (n - 1, n - 1), ZZ).det())


def tree_path(tree, u: int, v: int) -> list[int]:
    """Vertex path from ``u`` to ``v`` inside a tree."""
    adj: dict[int, list[int]] = {}
    for i, j in tree:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    prev = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj.get(x, []):
            if y not in prev:
                prev[y] = x
                stack.append(y)
    if v not in prev:
        raise GraphError(f"{u} and {v} are not joined in the tree")
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    return path[::-1]
