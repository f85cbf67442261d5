"""Immutable simple undirected graphs with dense vertex and edge ids."""
from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

# A vertex subset. Plain frozensets give O(1) membership and are hashable,
# which is all the algorithms here need.
VertexSet = frozenset


class GraphError(ValueError):
    """Malformed graph input (self-loop, duplicate edge, bad vertex id)."""


class NotConnectedError(ValueError):
    def __init__(self, msg="graph not connected"):
        super().__init__(msg)


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    Edge ids are assigned in input order and never change.  Each edge is
    stored as ``(min(u, v), max(u, v))``.  Instances are treated as immutable:
    every transformation returns a new graph.
    """

    __slots__ = ("n", "edges", "adj", "_index", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        n = int(n)
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        norm = []
        index = {}
        for i, e in enumerate(edges):
            if len(e) != 2:
                raise GraphError(f"edge #{i} {tuple(e)!r} is not a pair")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge #{i} ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"edge #{i} ({u}, {v}) is a self-loop")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphError(
                    f"edge #{i} ({u}, {v}) duplicates edge #{index[key]} {key}")
            index[key] = len(norm)
            norm.append(key)
        nbrs = [[] for _ in range(n)]
        for u, v in norm:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = tuple(norm)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._index = index

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[(u, v) if u < v else (v, u)]
        except KeyError:
            raise KeyError(f"no edge ({u}, {v})") from None

    def incident(self, v: int):
        """Yield ``(neighbour, edge_id)`` pairs around ``v``."""
        for w in self.adj[v]:
            yield w, self._index[(v, w) if v < w else (w, v)]

    def path_edges(self, path: Sequence[int]) -> list[int]:
        return [self.edge_id(path[i], path[i + 1]) for i in range(len(path) - 1)]

    @cached_property
    def csr(self):
        """``(indptr, nbr, eid)`` int64 arrays for the numba kernels."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for v in range(self.n):
            indptr[v + 1] = indptr[v] + len(self.adj[v])
        nbr = np.empty(2 * self.m, dtype=np.int64)
        eid = np.empty(2 * self.m, dtype=np.int64)
        k = 0
        for v in range(self.n):
            for w, e in self.incident(v):
                nbr[k] = w
                eid[k] = e
                k += 1
        return indptr, nbr, eid

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices: Iterable[int]):
        """Induced subgraph on ``vertices``.

        Returns ``(sub, old_of_new, edge_old_of_new)``: the new graph with
        vertices relabelled ``0..k-1`` in ascending order of old id, the list
        mapping new vertex ids to old ones, and the list mapping new edge ids
        to old edge ids.  Edges keep their relative input order.
        """
        keep = sorted(set(vertices))
        new_of_old = {v: i for i, v in enumerate(keep)}
        sub_edges = []
        emap = []
        for e, (u, v) in enumerate(self.edges):
            if u in new_of_old and v in new_of_old:
                sub_edges.append((new_of_old[u], new_of_old[v]))
                emap.append(e)
        return Graph(len(keep), sub_edges), keep, emap

    def edge_subgraph(self, edge_ids: Iterable[int]) -> Graph:
        """Spanning subgraph (same vertex set) keeping only ``edge_ids``."""
        keep = sorted(set(edge_ids))
        return Graph(self.n, [self.edges[e] for e in keep])

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    # -- serialisation -------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        if not isinstance(data, dict) or "edges" not in data:
            raise GraphError("graph JSON needs an 'edges' list")
        edges = data["edges"]
        n = data.get("n")
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, edges)

    @classmethod
    def from_json(cls, text: str) -> Graph:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid graph JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> Graph:
        """Parse one ``u v`` pair per line; ``#`` starts a comment."""
        edges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, edges)


def load_graph(path: str) -> Graph:
    """Read a graph from a JSON file or a ``u v`` edge-list file."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return Graph.from_json(text)
    return Graph.from_text(text)
