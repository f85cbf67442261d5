"""Distances, shells, connectivity and chordality on :class:`Graph`."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, NotConnectedError, VertexSet

UNREACHABLE = math.inf


# ---------------------------------------------------------------------------
# distances


def distances_from(g: Graph, source: Iterable[int] | int) -> list:
    """Hop distance from every vertex to the set ``source``.

    Unreachable vertices get :data:`UNREACHABLE`.
    """
    if isinstance(source, int):
        source = (source,)
    dist = [UNREACHABLE] * g.n
    queue = deque()
    for s in source:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    if not queue:
        raise ValueError("source set is empty")
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] is UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def bfs_parents(g: Graph, source: Iterable[int]) -> tuple[list, list]:
    """Distances plus a BFS-forest parent per vertex (``-1`` on roots).

    Vertices are scanned in id order, so each vertex's parent is its
    lowest-id neighbour one step closer to ``source``.
    """
    dist = [UNREACHABLE] * g.n
    parent = [-1] * g.n
    frontier = sorted(set(source))
    for s in frontier:
        dist[s] = 0
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if dist[w] is UNREACHABLE:
                    dist[w] = d
                    parent[w] = u
                    nxt.append(w)
        frontier = sorted(nxt)
    return dist, parent


def neighbourhood_shell(g: Graph, s: Iterable[int], i: int) -> VertexSet:
    """Vertices at distance exactly ``i`` from ``s``."""
    dist = distances_from(g, s)
    return VertexSet(v for v in g.vertices() if dist[v] == i)


def closed_neighbourhood(g: Graph, s: Iterable[int], i: int) -> VertexSet:
    """Vertices at distance at most ``i`` from ``s``."""
    dist = distances_from(g, s)
    return VertexSet(v for v in g.vertices() if dist[v] <= i)


def open_neighbourhood(g: Graph, s: Iterable[int]) -> VertexSet:
    return neighbourhood_shell(g, s, 1)


def all_pairs_distances(g: Graph) -> list[list]:
    return [distances_from(g, v) for v in g.vertices()]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return UNREACHABLE not in distances_from(g, 0)


def components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``g`` minus ``removed``, each sorted."""
    gone = set(removed)
    seen = set(gone)
    comps = []
    for s in g.vertices():
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def eccentricities(g: Graph) -> list[int]:
    ecc = []
    for v in g.vertices():
        d = max(distances_from(g, v))
        if d is UNREACHABLE:
            raise NotConnectedError()
        ecc.append(d)
    return ecc


def diameter(g: Graph) -> int:
    return max(eccentricities(g)) if g.n else 0


def girth(g: Graph):
    """Length of a shortest cycle, or ``math.inf`` for forests."""
    best = math.inf
    for r in g.vertices():
        dist = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


# ---------------------------------------------------------------------------
# cut vertices and bridges


def _lowpoints(g: Graph, removed=frozenset()):
    """Iterative Tarjan DFS. Returns (articulation points, bridges, #roots)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut = set()
    bridges = []
    timer = 0
    roots = 0
    for root in g.vertices():
        if disc[root] != -1 or root in removed:
            continue
        roots += 1
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        # stack of (vertex, parent edge id, iterator over incident edges)
        stack = [(root, -1, iter(list(g.incident(root))))]
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for w, e in it:
                if w in removed or e == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        children += 1
                    stack.append((w, e, iter(list(g.incident(w)))))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    bridges.append(pe)
                if p != root and low[u] >= disc[p]:
                    cut.add(p)
        if children > 1:
            cut.add(root)
    return cut, bridges, roots


def articulation_points(g: Graph) -> set[int]:
    return _lowpoints(g)[0]


def bridges(g: Graph) -> list[int]:
    """Edge ids of all bridges."""
    return sorted(_lowpoints(g)[1])


def is_bridgeless(g: Graph) -> bool:
    return is_connected(g) and not _lowpoints(g)[1]


def is_biconnected(g: Graph, removed: Iterable[int] = ()) -> bool:
    """2-vertex-connected (at least 3 vertices, connected, no cut vertex).

    ``removed`` vertices are ignored, which lets callers test ``G - X``
    without building a new graph.
    """
    removed = frozenset(removed)
    if g.n - len(removed) < 3:
        return False
    cut, _, roots = _lowpoints(g, removed)
    return roots == 1 and not cut


# ---------------------------------------------------------------------------
# max-flow connectivity


class _UnitFlow:
    """Residual network for small unit-capacity max-flow problems."""

    def __init__(self, size):
        self.head = [[] for _ in range(size)]
        self.to = []
        self.cap = []

    def arc(self, u, v, c):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def maxflow(self, s, t, limit=math.inf):
        flow = 0
        to, cap, head = self.to, self.cap, self.head
        while flow < limit:
            pred = {s: -1}
            queue = deque([s])
            while queue and t not in pred:
                u = queue.popleft()
                for a in head[u]:
                    if cap[a] > 0 and to[a] not in pred:
                        pred[to[a]] = a
                        queue.append(to[a])
            if t not in pred:
                break
            v = t
            while v != s:
                a = pred[v]
                cap[a] -= 1
                cap[a ^ 1] += 1
                v = to[a ^ 1]
            flow += 1
        return flow


def local_edge_connectivity(g: Graph, s: int, t: int, limit=math.inf) -> int:
    net = _UnitFlow(g.n)
    for u, v in g.edges:
        net.arc(u, v, 1)
        net.arc(v, u, 1)
    return net.maxflow(s, t, limit)


def local_vertex_connectivity(g: Graph, s: int, t: int, limit=math.inf) -> int:
    """Max number of internally disjoint s-t paths; ``s``, ``t`` non-adjacent."""
    if g.has_edge(s, t):
        raise ValueError("local vertex connectivity needs non-adjacent vertices")
    big = g.n
    net = _UnitFlow(2 * g.n)
    for v in g.vertices():
        net.arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges:
        net.arc(2 * u + 1, 2 * v, 1)
        net.arc(2 * v + 1, 2 * u, 1)
    return net.maxflow(2 * s + 1, 2 * t, limit)


def edge_connectivity(g: Graph) -> int:
    if g.n < 2:
        return 0
    best = min(g.degree(v) for v in g.vertices())
    for t in range(1, g.n):
        best = min(best, local_edge_connectivity(g, 0, t, best))
        if best == 0:
            break
    return best


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity by the Esfahanian-Hakimi pair reduction."""
    n = g.n
    if n < 2:
        return 0
    if not is_connected(g):
        return 0
    if g.is_complete():
        return n - 1
    v = min(g.vertices(), key=lambda x: (g.degree(x), x))
    best = g.degree(v)
    nb = set(g.adj[v])
    for w in g.vertices():
        if w != v and w not in nb:
            best = min(best, local_vertex_connectivity(g, v, w, best))
    nbl = sorted(nb)
    for i, x in enumerate(nbl):
        for y in nbl[i + 1:]:
            if not g.has_edge(x, y):
                best = min(best, local_vertex_connectivity(g, x, y, best))
    return best


# ---------------------------------------------------------------------------
# metrics bundle


@dataclass(frozen=True)
class GraphMetrics:
    diameter: int
    radius: int
    girth: float  # int, or math.inf for forests
    min_degree: int
    vertex_connectivity: int
    edge_connectivity: int

    def as_dict(self):
        return {
            "diameter": self.diameter,
            "radius": self.radius,
            "girth": None if self.girth == math.inf else int(self.girth),
            "min_degree": self.min_degree,
            "kappa": self.vertex_connectivity,
            "lambda": self.edge_connectivity,
        }


def compute_metrics(g: Graph) -> GraphMetrics:
    if g.n < 2:
        raise ValueError("metrics need at least 2 vertices")
    if not is_connected(g):
        raise NotConnectedError()
    ecc = eccentricities(g)
    return GraphMetrics(
        diameter=max(ecc),
        radius=min(ecc),
        girth=girth(g),
        min_degree=min(g.degree(v) for v in g.vertices()),
        vertex_connectivity=vertex_connectivity(g),
        edge_connectivity=edge_connectivity(g),
    )


# ---------------------------------------------------------------------------
# chordality and separators


def is_clique(g: Graph, vs: Iterable[int]) -> bool:
    vs = list(vs)
    return all(g.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])


def maximum_cardinality_search(g: Graph) -> list[int]:
    """MCS visiting order (ties to lowest id)."""
    weight = [0] * g.n
    done = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((x for x in g.vertices() if not done[x]), key=lambda x: (weight[x], -x))
        done[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not done[w]:
                weight[w] += 1
    return order


def is_perfect_elimination_ordering(g: Graph, order) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.n:
        return False
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        u = min(later, key=pos.__getitem__)
        nu = set(g.adj[u])
        if any(w != u and w not in nu for w in later):
            return False
    return True


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality test; returns ``(True, peo)`` or ``(False, None)``."""
    peo = maximum_cardinality_search(g)[::-1]
    if is_perfect_elimination_ordering(g, peo):
        return True, peo
    return False, None


def minimal_separator_in_neighbourhood(g: Graph, d: Iterable[int]) -> VertexSet:
    """A minimal separator contained in ``N(d)``.

    ``d`` must induce a connected subgraph that does not 1-step dominate
    ``g``.  The separator is ``N(C_d)`` where ``C_d`` is the component of
    ``G - N(C)`` holding ``d`` and ``C`` is the component of ``G - N(d)``
    holding the lowest-id vertex at distance >= 2 from ``d``.  Both ``C_d``
    and the component of ``C`` are full components, so the result is minimal.
    """
    d = set(d)
    if not d:
        raise ValueError("dominating set is empty")
    dist = distances_from(g, d)
    far = [v for v in g.vertices() if dist[v] >= 2]
    if not far:
        raise ValueError("set is already 1-step dominating; no separator inside N(D)")
    u = far[0]
    if dist[u] is UNREACHABLE:
        raise NotConnectedError()
    nd = {v for v in g.vertices() if dist[v] == 1}
    comp_u = _component(g, u, nd)
    s_prime = {w for x in comp_u for w in g.adj[x] if w not in comp_u}
    comp_d = _component(g, next(iter(d)), s_prime)
    sep = {w for x in comp_d for w in g.adj[x] if w not in comp_d}
    return VertexSet(sep)


def _component(g: Graph, start: int, blocked: set) -> set:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for w in g.adj[x]:
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return seen
