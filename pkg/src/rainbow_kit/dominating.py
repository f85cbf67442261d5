"""Connected step-dominating sets and the dominating-set colouring extension."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .colouring import EdgeColouring, spanning_tree_colouring
from .graph import Graph, NotConnectedError, VertexSet
from .metrics import (bfs_parents, closed_neighbourhood, distances_from, girth,
                      is_bridgeless, is_connected)


class GrowthError(RuntimeError):
    """A connectivity or girth assumption was contradicted during growth."""


class BudgetOverrun(RuntimeError):
    """An extension step needed more fresh colours than it is allowed."""


@dataclass(frozen=True)
class GrowthParams:
    l: int = 1
    kappa: int = 1
    g: int | None = None
    delta: int | None = None

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("l must be >= 0")
        if self.kappa < 1:
            raise ValueError("kappa must be >= 1")


@dataclass(frozen=True)
class DominatingSet:
    vertices: frozenset
    step_radius: int
    trace: tuple = ()

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    def to_dict(self):
        return {
            "vertices": sorted(self.vertices),
            "l": self.step_radius,
            "trace": [[v] + list(p) for v, p in self.trace],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data):
        trace = tuple((t[0], tuple(t[1:])) for t in data.get("trace", []))
        return cls(VertexSet(data["vertices"]), int(data["l"]), trace)


def domination_radius(g: Graph, d: Iterable[int]) -> int:
    """Largest distance from a vertex of ``g`` to ``d``."""
    return max(distances_from(g, d))


def is_connected_set(g: Graph, d: Iterable[int]) -> bool:
    d = set(d)
    if not d:
        return False
    start = next(iter(d))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for w in g.adj[x]:
            if w in d and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(d)


def check_dominating(g: Graph, d: DominatingSet, radius: int | None = None) -> None:
    r = d.step_radius if radius is None else radius
    if not is_connected_set(g, d.vertices):
        raise AssertionError("dominating set does not induce a connected subgraph")
    got = domination_radius(g, d.vertices)
    if got > r:
        raise AssertionError(f"set only {got}-step dominates, needed {r}")


def start_vertex(g: Graph) -> int:
    return max(g.vertices(), key=lambda v: (g.degree(v), -v))


def _grow(g: Graph, l: int, ball_floor, what: str):
    """Shared growth loop: add shortest paths to vertices at distance 2l+1."""
    if g.n == 0:
        raise ValueError("empty graph")
    if not is_connected(g):
        raise NotConnectedError()
    u = start_vertex(g)
    d = {u}
    trace = []
    while True:
        dist, parent = bfs_parents(g, d)
        far = [v for v in g.vertices() if dist[v] == 2 * l + 1]
        if not far:
            break
        v = far[0]
        if not trace:
            ball_u = len(closed_neighbourhood(g, [u], l))
            if ball_u < ball_floor:
                raise GrowthError(
                    f"start vertex {u} has only {ball_u} vertices within distance {l}, "
                    f"below {ball_floor}; graph is not {what}")
        ball = len(closed_neighbourhood(g, [v], l))
        if ball < ball_floor:
            raise GrowthError(
                f"vertex {v} has only {ball} vertices within distance {l}, below "
                f"{ball_floor}; graph is not {what}")
        chain = [v]
        x = v
        while dist[x] > 0:
            x = parent[x]
            chain.append(x)
        d.update(chain[:-1])
        trace.append((v, tuple(chain[1:])))
    return d, trace


def grow_2l_step_dominating(g: Graph, p: GrowthParams) -> DominatingSet:
    """Greedy connected 2l-step dominating set for a kappa-connected graph.

    Starting from a maximum-degree vertex, repeatedly pick the lowest-id vertex
    at distance exactly ``2l + 1`` and add a shortest path from it back to the
    set.  Each added endpoint brings a radius-``l`` ball of at least
    ``kappa * l + 1`` fresh vertices, which bounds the number of rounds.
    """
    l, kappa = p.l, p.kappa
    d, trace = _grow(g, l, kappa * l + 1, f"{kappa}-connected")
    t = len(trace)
    n = g.n
    if t and (kappa * l + 1) * (t + 1) > n:
        raise GrowthError(f"{t} rounds violate (kappa*l+1)(t+1) <= n; graph is not {kappa}-connected")
    assert len(d) == (2 * l + 1) * t + 1
    bound = Fraction((2 * l + 1) * n, kappa * l + 1)
    if len(d) > bound:
        raise GrowthError(f"|D|={len(d)} exceeds {bound}; graph is not {kappa}-connected")
    out = DominatingSet(VertexSet(d), 2 * l, tuple(trace))
    check_dominating(g, out)
    return out


def ball_floor(delta: int, g: int) -> Fraction:
    """Lower bound ``(delta (delta-1)^g - 2) / (delta - 2)`` on radius-g balls."""
    if delta < 3:
        raise ValueError("needs delta >= 3")
    return Fraction(delta * (delta - 1) ** g - 2, delta - 2)


def grow_girth_dominating(g: Graph, p: GrowthParams) -> DominatingSet:
    """Greedy connected 2g-step dominating set for high-girth graphs.

    Same loop as :func:`grow_2l_step_dominating` with ``l = p.g``; girth at
    least ``2g + 1`` makes every radius-g ball a tree of at least
    :func:`ball_floor` vertices.
    """
    if p.g is None or p.g < 1:
        raise ValueError("girth variant needs g >= 1")
    half = p.g
    delta = min(g.degree(v) for v in g.vertices()) if p.delta is None else p.delta
    real_delta = min(g.degree(v) for v in g.vertices())
    problems = []
    if delta < 3 or real_delta < delta:
        problems.append(f"minimum degree {real_delta} (need >= {max(3, delta)})")
    gi = girth(g)
    if gi < 2 * half + 1:
        problems.append(f"girth {gi} (need >= {2 * half + 1})")
    if problems:
        raise ValueError("girth growth precondition violated: " + "; ".join(problems))
    floor = ball_floor(delta, half)
    d, trace = _grow(g, half, floor, f"of minimum degree {delta} and girth >= {2 * half + 1}")
    bound = Fraction(2 * half + 1) * g.n / floor - 2 * half
    if len(d) > bound:
        raise GrowthError(f"|D|={len(d)} exceeds {bound}")
    out = DominatingSet(VertexSet(d), 2 * half, tuple(trace))
    check_dominating(g, out)
    return out


# ---------------------------------------------------------------------------
# colouring extension


def host_colours(g: Graph, d: Iterable[int], c: EdgeColouring) -> dict:
    """Map host edge ids of ``G[d]`` to the colours ``c`` gives them."""
    sub, _, emap = g.induced(d)
    if len(c) != sub.m:
        raise ValueError(f"colouring has {len(c)} edges but G[D] has {sub.m}")
    return {emap[i]: c[i] for i in range(sub.m)}


def induced_colouring(g: Graph, d: Iterable[int], by_host: dict) -> EdgeColouring:
    """Inverse of :func:`host_colours` with colour ids compacted."""
    sub, _, emap = g.induced(d)
    return EdgeColouring.from_list([by_host[e] for e in emap])


def extend_colouring_one_step(g: Graph, d: DominatingSet, c: EdgeColouring,
                              check: bool = True):
    """Grow a connected l-step dominating set to an (l-1)-step one.

    ``c`` colours ``G[D]`` (edge ids as in ``g.induced(D)``).  Every vertex of
    ``N(D)`` is covered by an ear of length at most ``2l + 1`` built from the
    BFS forest of ``D``: down the tree from ``x``, across one non-tree edge
    (which exists because ``x``'s tree edge is not a bridge), and up another
    branch until the ear meets a vertex already in the set.

    Ear edges use ``2l + 1`` fresh colours.  Each new vertex ``v`` keeps a
    threshold ``tau(v)`` and two rainbow routes back to ``D``: one coloured
    within fresh indices ``1..tau`` and one within ``tau+1..2l+1``.  For two
    new vertices with ``tau(x) <= tau(y)``, the low route of ``x``, a rainbow
    path inside ``G[D]`` and the high route of ``y`` form a rainbow walk.
    Remaining edges of the induced subgraph reuse fresh colour 1.

    Returns ``(DominatingSet with l - 1, EdgeColouring of G[D'])``.
    """
    l = d.step_radius
    if l < 1:
        raise ValueError("extension needs step radius l >= 1")
    if not is_bridgeless(g):
        raise ValueError("graph not bridgeless")
    base = set(d.vertices)
    if check:
        check_dominating(g, d)
    old = host_colours(g, base, c)
    h = c.num_colours
    top = 2 * l + 1

    dist, parent = bfs_parents(g, base)
    children = [[] for _ in g.vertices()]
    for v in g.vertices():
        if parent[v] >= 0:
            children[parent[v]].append(v)

    covered = set(base)
    tau = {v: 0 for v in base}
    fresh = {}  # host edge id -> fresh index 1..top
    trace = []
    frontier = sorted(v for v in g.vertices() if dist[v] == 1)
    for x in frontier:
        if x in covered:
            continue
        s = parent[x]
        subtree = set()
        stack = [x]
        while stack:
            y = stack.pop()
            subtree.add(y)
            stack.extend(children[y])
        best = None
        for a in sorted(subtree):
            for b in g.adj[a]:
                if b in subtree or (a == x and b == s):
                    continue
                key = (dist[a] + 1 + dist[b], a, b)
                if best is None or key < best:
                    best = key
        if best is None:
            raise ValueError(f"edge ({s}, {x}) is a bridge; graph not bridgeless")
        _, a, b = best
        down = [a]
        while down[-1] != x:
            down.append(parent[down[-1]])
        seq = [s] + down[::-1]
        alpha = len(seq) - 1
        up = [b]
        while dist[up[-1]] > 0:
            up.append(parent[up[-1]])
        seq += up
        q = next(j for j in range(1, len(seq)) if seq[j] in covered)
        seq = seq[:q + 1]
        w = seq[q]
        split = min(alpha, q)
        tw = tau[w]
        mirrored = tw > top - tw
        tw_eff = top - tw if mirrored else tw
        if tw_eff + q > top:
            raise BudgetOverrun(
                f"ear {seq} of length {q} cannot be coloured within {top} fresh colours")
        for j in range(1, q + 1):
            e = g.edge_id(seq[j - 1], seq[j])
            idx = top + 1 - j if j <= split else tw_eff + 1 + q - j
            fresh[e] = top + 1 - idx if mirrored else idx
        for j in range(1, q):
            t = top - j if j <= split else tw_eff + q - j
            t = top - t if mirrored else t
            if min(t, top - t) > dist[seq[j]]:
                raise AssertionError(f"threshold invariant broken at vertex {seq[j]}")
            tau[seq[j]] = t
            covered.add(seq[j])
        trace.append((x, tuple(seq)))

    new_set = VertexSet(covered)
    by_host = {}
    sub, _, emap = g.induced(new_set)
    for e in emap:
        if e in old:
            by_host[e] = old[e]
        elif e in fresh:
            by_host[e] = h + fresh[e] - 1
        else:
            by_host[e] = h
    col = induced_colouring(g, new_set, by_host)
    added = col.num_colours - h
    if added > top:
        raise BudgetOverrun(f"step used {added} fresh colours, budget {top}")
    out = DominatingSet(new_set, l - 1, tuple(trace))
    if check:
        check_dominating(g, out)
    return out, col


def tightened(g: Graph, d: DominatingSet) -> DominatingSet:
    """Same set with ``step_radius`` lowered to its BFS-measured value."""
    r = domination_radius(g, d.vertices)
    return d if r >= d.step_radius else DominatingSet(d.vertices, r, d.trace)


def dominate_and_colour(g: Graph, d: DominatingSet, c: EdgeColouring | None = None,
                        log: list | None = None, check: bool = True,
                        tighten: bool = True) -> EdgeColouring:
    """Rainbow colour all of ``g`` from a coloured connected l-step dominating set.

    Applies :func:`extend_colouring_one_step` for ``l, l-1, ..., 1``, adding
    at most ``l(l + 2)`` colours in total.  Without ``c`` a spanning tree of
    ``G[D]`` is rainbow coloured first (``|D| - 1`` colours).  ``log``, if
    given, receives ``(l, fresh_colours_added)`` per step.  With ``tighten``
    the extension starts from the measured domination radius, which can only
    lower the count.
    """
    if c is None:
        sub, _, _ = g.induced(d.vertices)
        c = spanning_tree_colouring(sub)
    cur, col = (tightened(g, d) if tighten else d), c
    while cur.step_radius > 0:
        before = col.num_colours
        nxt, col = extend_colouring_one_step(g, cur, col, check=check)
        if log is not None:
            log.append((cur.step_radius, col.num_colours - before))
        cur = nxt
    if len(cur.vertices) != g.n:
        raise AssertionError("0-step dominating set must be the whole vertex set")
    return col
