"""Open ears on a host subgraph and their balanced colourings.

Colourings here are partial: a dict from edge id of the ambient graph to a
colour id, covering exactly the edges of the current host subgraph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import Graph, VertexSet
from .metrics import is_biconnected

DEFAULT_EAR_CAP = 2_000_000


class EarError(ValueError):
    pass


@dataclass(frozen=True)
class Ear:
    """Path ``(x_0, ..., x_m)`` with distinct foots in the host, internals outside."""

    path: tuple
    host: frozenset = frozenset()

    def __post_init__(self):
        path = tuple(int(v) for v in self.path)
        object.__setattr__(self, "path", path)
        if len(path) < 2:
            raise EarError("an ear needs at least one edge")
        if path[0] == path[-1]:
            raise EarError(f"foots coincide at {path[0]}")
        if len(set(path)) != len(path):
            raise EarError(f"ear {path} repeats a vertex")
        if self.host:
            if path[0] not in self.host or path[-1] not in self.host:
                raise EarError(f"foots of {path} are not both in the host")
            inside = [v for v in path[1:-1] if v in self.host]
            if inside:
                raise EarError(f"internal vertices {inside} lie in the host")

    @property
    def length(self) -> int:
        return len(self.path) - 1

    @property
    def is_even(self) -> bool:
        return self.length % 2 == 0

    @property
    def parity(self) -> str:
        return "even" if self.is_even else "odd"

    @property
    def foots(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def internals(self) -> tuple:
        return self.path[1:-1]

    @property
    def tip(self):
        return self.path[self.length // 2] if self.is_even else None

    def reversed(self) -> Ear:
        return Ear(self.path[::-1], self.host)

    def edges(self, g: Graph) -> list[int]:
        return g.path_edges(self.path)

    def check_on(self, g: Graph) -> None:
        for u, v in zip(self.path, self.path[1:]):
            if not g.has_edge(u, v):
                raise EarError(f"ear step ({u}, {v}) is not an edge")

    def to_dict(self):
        return {"path": list(self.path), "parity": self.parity, "tip": self.tip}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data, host: Iterable[int] = ()) -> Ear:
        return cls(tuple(data["path"]), VertexSet(host))


@dataclass(frozen=True)
class EarClassification:
    removable: bool
    clean_removable: bool


@dataclass(frozen=True)
class BalancedColouringSpec:
    """Colour choices for one balanced ear colouring.

    ``None`` fields are filled with defaults: ``c_old`` and ``t2`` become the
    smallest host colour outside ``exclude``, ``t1`` a fresh colour, and
    ``fresh_base`` the first id above everything in use.
    """

    c_old: int | None = None
    t1: int | None = None
    t2: int | None = None
    fresh_base: int | None = None
    exclude: frozenset = frozenset()


def find_largest_ear(g: Graph, h: Iterable[int], anchor: Ear | None = None,
                     avoid: Iterable[int] = (), cap: int = DEFAULT_EAR_CAP) -> Ear:
    """Longest open ear on ``h`` with at least one internal vertex.

    Exhaustive search over simple paths through vertices outside ``h`` (and
    outside ``avoid``), pruned by the number of vertices still available.
    With ``anchor``, one foot must be an internal vertex of that ear.  Ties go
    to the first ear met in order of increasing start foot and neighbour ids.
    The search stops after ``cap`` extension steps and keeps the best so far.
    """
    host = VertexSet(h)
    blocked = set(host) | set(avoid)
    outside = [v for v in g.vertices() if v not in blocked]
    if not outside:
        raise EarError("host spans graph")
    if anchor is not None:
        starts = sorted(set(anchor.internals) & host)
        if not starts:
            raise EarError("anchor ear has no internal vertex in the host")
    else:
        starts = sorted(host)
    best: list = []
    budget = [cap]
    free = len(outside)
    onpath = set()

    def dfs(path):
        nonlocal best
        x = path[-1]
        for w in g.adj[x]:
            if w in host:
                if w != path[0] and len(path) >= 2 and len(path) + 1 > len(best):
                    best = path + [w]
            elif w not in blocked and w not in onpath:
                # a path through all remaining free vertices plus the closing foot
                if len(path) + 1 + (free - len(onpath) - 1) + 1 <= len(best):
                    continue
                budget[0] -= 1
                if budget[0] < 0:
                    return
                onpath.add(w)
                path.append(w)
                dfs(path)
                path.pop()
                onpath.discard(w)

    for a in starts:
        if len(best) == free + 2:
            break
        dfs([a])
        if budget[0] < 0:
            break
    if not best:
        if anchor is not None:
            raise EarError(f"no ear with a foot inside {anchor.path}")
        raise EarError("no ear on the host; graph not 2-connected")
    return Ear(tuple(best), host)


def all_ears(g: Graph, h: Iterable[int], avoid: Iterable[int] = ()) -> list[Ear]:
    """Every open ear on ``h`` with an internal vertex, each listed once."""
    host = VertexSet(h)
    blocked = set(host) | set(avoid)
    found = set()

    def dfs(path, onpath):
        x = path[-1]
        for w in g.adj[x]:
            if w in host:
                if w != path[0] and len(path) >= 2:
                    p = tuple(path + [w])
                    found.add(min(p, p[::-1]))
            elif w not in blocked and w not in onpath:
                onpath.add(w)
                path.append(w)
                dfs(path, onpath)
                path.pop()
                onpath.discard(w)

    for a in sorted(host):
        dfs([a], set())
    return [Ear(p, host) for p in sorted(found)]


def classify_ear(g: Graph, e: Ear, ignore: Iterable[int] = ()) -> EarClassification:
    """Removable: ``g`` stays 2-connected without the ear's internals.

    A chord has no internals; it counts as removable when deleting the edge
    itself keeps ``g`` 2-connected.  Vertices in ``ignore`` are treated as
    absent from ``g``.
    """
    ignore = set(ignore)
    if e.length == 1:
        eid = g.edge_id(*e.foots)
        rest = g.edge_subgraph(i for i in range(g.m) if i != eid)
        ok = is_biconnected(rest, removed=ignore)
        return EarClassification(ok, ok)
    ok = is_biconnected(g, removed=ignore | set(e.internals))
    clean = ok and all(g.degree(v) == 2 for v in e.internals)
    return EarClassification(ok, clean)


def _host_colours(colouring: Mapping[int, int]) -> set:
    return set(colouring.values())


def colour_odd_ear(g: Graph, colouring: Mapping[int, int], e: Ear,
                   spec: BalancedColouringSpec = BalancedColouringSpec()) -> dict:
    """Balanced colouring of an odd ear of length ``2k + 1``.

    Edge ``j`` and edge ``j + k + 1`` share fresh colour ``c_j`` for
    ``j < k``; the middle edge reuses the host colour ``c_old``.
    """
    if e.is_even:
        raise EarError(f"ear of length {e.length} is not odd")
    used = _host_colours(colouring)
    c_old = spec.c_old
    if c_old is None:
        pool = sorted(used - set(spec.exclude))
        if not pool:
            raise EarError("no host colour available for the middle edge")
        c_old = pool[0]
    if c_old not in used:
        raise EarError(f"c_old={c_old} is not a host colour")
    if c_old in spec.exclude:
        raise EarError(f"c_old={c_old} is excluded")
    k = e.length // 2
    base = spec.fresh_base if spec.fresh_base is not None else max(used, default=-1) + 1
    fresh = list(range(base, base + k))
    if set(fresh) & used:
        raise EarError("fresh colours collide with host colours")
    out = dict(colouring)
    for j, eid in enumerate(e.edges(g)):
        if eid in out:
            raise EarError(f"edge {eid} of the ear is already coloured")
        out[eid] = fresh[j] if j < k else c_old if j == k else fresh[j - k - 1]
    return out


def colour_even_ear(g: Graph, colouring: Mapping[int, int], e: Ear,
                    spec: BalancedColouringSpec = BalancedColouringSpec()) -> dict:
    """Balanced colouring of an even ear of length ``2k``.

    Edge ``j`` and edge ``j + k + 1`` share fresh colour ``c_j`` for
    ``j <= k - 2``; the two tip edges get ``t1`` (towards ``x_0``) and ``t2``.
    """
    if not e.is_even:
        raise EarError(f"ear of length {e.length} is not even")
    used = _host_colours(colouring)
    k = e.length // 2
    t1, t2 = spec.t1, spec.t2
    top = max(used | {x for x in (t1, t2) if x is not None}, default=-1)
    if t2 is None:
        pool = sorted(used - set(spec.exclude) - {t1})
        if not pool:
            raise EarError("no host colour available for the second tip edge")
        t2 = pool[0]
    if t1 is None:
        top += 1
        t1 = top
    if t1 == t2:
        raise EarError(f"tip colours coincide ({t1})")
    base = spec.fresh_base if spec.fresh_base is not None else max(top, t2) + 1
    fresh = list(range(base, base + k - 1))
    if set(fresh) & (used | {t1, t2}):
        raise EarError("tip colour or host colour among the balanced colours")
    out = dict(colouring)
    for j, eid in enumerate(e.edges(g)):
        if eid in out:
            raise EarError(f"edge {eid} of the ear is already coloured")
        if j <= k - 2:
            out[eid] = fresh[j]
        elif j == k - 1:
            out[eid] = t1
        elif j == k:
            out[eid] = t2
        else:
            out[eid] = fresh[j - k - 1]
    return out


def fresh_count(before: Mapping[int, int], after: Mapping[int, int]) -> int:
    return len(set(after.values()) - set(before.values()))
