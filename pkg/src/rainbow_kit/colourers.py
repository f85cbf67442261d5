"""End-to-end rainbow colourers with their guaranteed colour bounds."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .colouring import EdgeColouring, spanning_tree_colouring, verify_rainbow_connected
from .dominating import (BudgetOverrun, DominatingSet, GrowthParams, dominate_and_colour,
                         grow_2l_step_dominating, grow_girth_dominating, induced_colouring,
                         start_vertex)
from .ears import (DEFAULT_EAR_CAP, BalancedColouringSpec, Ear, EarError, classify_ear,
                   colour_even_ear, colour_odd_ear, find_largest_ear)
from .graph import Graph
from .metrics import (compute_metrics, distances_from, girth, is_biconnected, is_chordal,
                      is_clique, is_connected, minimal_separator_in_neighbourhood,
                      vertex_connectivity)


class PreconditionError(ValueError):
    """The input is outside the graph class an algorithm is stated for."""


# ---------------------------------------------------------------------------
# bounds


def two_connected_bound(n: int) -> Fraction:
    return Fraction(-(-n // 2) + 1)


def chordal_bound(n: int, kappa: int) -> Fraction:
    return Fraction(n, kappa) + 3


def kappa_bound(n: int, kappa: int, l: int) -> Fraction:
    return Fraction((2 * l + 1) * n, kappa * l + 1) + 2 * l * (2 * l + 2) - 1


def girth_regime(delta: int, gi) -> tuple[int, int] | None:
    """``(g, additive)`` for the first applicable high-girth regime, else None."""
    if delta >= 5 and gi >= 5:
        return 2, 19
    if delta >= 3 and gi >= 7:
        return 3, 41
    return None


def girth_bound(n: int, delta: int, additive: int) -> Fraction:
    return Fraction(n, delta) + additive


def epsilon_l(eps) -> int:
    """``l = ceil(1/eps)``; ``eps`` is read through its decimal string."""
    e = Fraction(str(eps))
    if not 0 < e < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return math.ceil(1 / e)


def epsilon_additive(eps) -> tuple[int, Fraction]:
    """Additive term ``2l(2l+2) - 1`` and its ceiling ``23 / eps^2``."""
    l = epsilon_l(eps)
    return 2 * l * (2 * l + 2) - 1, Fraction(23) / Fraction(str(eps)) ** 2


def _finish(g: Graph, col: EdgeColouring, bound: Fraction, what: str) -> EdgeColouring:
    cert = verify_rainbow_connected(g, col)
    if not cert.complete:
        raise AssertionError(f"{what}: colouring is not rainbow, e.g. pair {cert.failures[0]}")
    if col.num_colours > bound:
        raise BudgetOverrun(f"{what}: {col.num_colours} colours exceed the bound {bound}")
    return col


def _require_connected(g: Graph):
    if g.n == 0:
        raise PreconditionError("empty graph")
    if not is_connected(g):
        raise PreconditionError("graph not connected")


# ---------------------------------------------------------------------------
# 2-connected graphs


@dataclass
class _Work:
    """Stripped graph: the ambient graph minus some vertices and edges."""

    g: Graph
    edges: set
    gone: set

    def graph(self) -> tuple[Graph, list[int]]:
        keep = sorted(self.edges)
        return Graph(self.g.n, [self.g.edges[e] for e in keep]), keep


def _strip(w: _Work, stack: list, trace: list) -> None:
    """Drop redundant edges and removable odd chains until none is left."""
    while True:
        cur, keep = w.graph()
        for i in range(cur.m):
            rest = Graph(cur.n, [cur.edges[j] for j in range(cur.m) if j != i])
            if is_biconnected(rest, removed=w.gone):
                w.edges.discard(keep[i])
                stack.append(("edge", keep[i]))
                trace.append(("strip-edge", cur.edges[i]))
                break
        else:
            ear = _removable_odd_chain(cur, w.gone)
            if ear is None:
                return
            for e in w.g.path_edges(ear.path):
                w.edges.discard(e)
            w.gone.update(ear.internals)
            stack.append(("ear", ear))
            trace.append(("strip-ear", ear.path))


def _removable_odd_chain(cur: Graph, gone: set) -> Ear | None:
    """A maximal degree-2 chain of odd length whose removal keeps 2-connectivity."""
    branch = [v for v in cur.vertices() if v not in gone and cur.degree(v) >= 3]
    seen = set()
    for a in branch:
        for b in cur.adj[a]:
            path = [a, b]
            while cur.degree(path[-1]) == 2:
                x = path[-1]
                path.append(cur.adj[x][0] if cur.adj[x][1] == path[-2] else cur.adj[x][1])
            key = (min(path[0], path[-1]), max(path[0], path[-1]), frozenset(path[1:-1]))
            if key in seen or len(path) < 4 or (len(path) - 1) % 2 == 0:
                seen.add(key)
                continue
            seen.add(key)
            if path[0] != path[-1] and is_biconnected(cur, removed=gone | set(path[1:-1])):
                return Ear(tuple(path))
    return None


def _start_cycle(cur: Graph, gone: set) -> list[int]:
    """Shortest cycle through an edge at the first max-degree vertex."""
    live = [v for v in cur.vertices() if v not in gone]
    u = max(live, key=lambda v: (cur.degree(v), -v))
    v = cur.adj[u][0]
    parent = {v: None}
    queue = [v]
    for x in queue:
        for y in cur.adj[x]:
            if (x, y) in ((v, u),) or y in parent:
                continue
            parent[y] = x
            queue.append(y)
    cycle = [u]
    x = parent[u]
    while x is not None:
        cycle.append(x)
        x = parent[x]
    return cycle


def _rainbow_on(g: Graph, col: dict, vertices) -> bool:
    keep = sorted(col)
    sub = Graph(g.n, [g.edges[e] for e in keep])
    vs = sorted(vertices)
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    return verify_rainbow_connected(sub, [col[e] for e in keep], pairs).complete


def _components_without(g: Graph, col: dict, banned: int, vertices) -> dict:
    """Component label of each host vertex once edges coloured ``banned`` are cut."""
    adj = {v: [] for v in vertices}
    for e, c in col.items():
        if c != banned:
            a, b = g.edges[e]
            adj[a].append(b)
            adj[b].append(a)
    label = {}
    for s in sorted(vertices):
        if s in label:
            continue
        label[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in label:
                    label[y] = s
                    stack.append(y)
    return label


def _balanced_colours(g: Graph, col: dict, ear: Ear, before: set) -> list[int]:
    cols = [col[e] for e in ear.edges(g)]
    return [c for c in dict.fromkeys(cols) if c not in before and cols.count(c) == 2]


def _fresh(col: dict) -> int:
    return max(col.values(), default=-1) + 1


def _grow_chain(g: Graph, cur: Graph, host: set, col: dict, p1: Ear, avoid: set,
                cap: int, trace: list):
    """Extend ``host`` by the chain ``P_1, ..., P_{l+1}`` at no extra colour.

    Returns ``(new_host, new_colouring)`` or ``None`` when the construction
    does not go through on this instance.
    """
    t_new = _fresh(col)
    t_old = min(col.values())
    cols = colour_even_ear(g, col, p1, BalancedColouringSpec(t1=t_new, t2=t_old))
    hc = set(host) | set(p1.internals)
    chain = [p1]
    befores = [set(col.values())]
    while True:
        try:
            nxt = find_largest_ear(cur, hc, anchor=chain[-1], avoid=avoid, cap=cap)
        except EarError:
            trace.append(("chain-stuck", [p.path for p in chain]))
            return None
        if nxt.is_even:
            break
        befores.append(set(cols.values()))
        cols = colour_odd_ear(g, cols, nxt, BalancedColouringSpec(exclude=frozenset({t_new})))
        hc |= set(nxt.internals)
        chain.append(nxt)
    last = chain[-1]
    tip1 = p1.tip
    f1, f2 = nxt.foots
    for c in _balanced_colours(g, cols, last, befores[-1]):
        label = _components_without(g, cols, c, hc)
        if label[f1] == label[f2]:
            continue
        ear = nxt if label[f1] == label[tip1] else nxt.reversed()
        out = colour_even_ear(g, cols, ear, BalancedColouringSpec(t1=c, t2=t_new))
        trace.append(("chain-cut", [p.path for p in chain] + [ear.path], c))
        return hc | set(ear.internals), out
    k = p1.length // 2
    sides = {p1.path[k - 1], p1.path[k + 1]}
    if len(chain) == 1 and nxt.length == 2 and set(nxt.foots) == sides:
        a = p1.path[k - 1]
        out = dict(cols)
        out[g.edge_id(nxt.tip, a)] = t_old
        out[g.edge_id(nxt.tip, p1.path[k + 1])] = t_new
        trace.append(("chain-square", [p1.path, nxt.path]))
        return hc | set(nxt.internals), out
    trace.append(("chain-no-case", [p.path for p in chain] + [nxt.path]))
    return None


def colour_two_connected(g: Graph, cap: int = DEFAULT_EAR_CAP, trace: list | None = None,
                         check: bool = True) -> EdgeColouring:
    """Rainbow colouring of a 2-connected graph with at most ``ceil(n/2) + 1`` colours.

    1. Strip edges whose removal keeps the graph 2-connected and removable
       odd ears (which are then degree-2 chains); both are restored at the end.
    2. Grow a host ``H`` from a cycle coloured with ``ceil(|C|/2)`` colours by
       largest ears: odd ears get a balanced colouring, clean-removable even
       ears are set aside, other even ears start a chain of ears that closes
       at no extra colour cost.
    3. Attach set-aside even ears four at a time with two shared fresh tip
       colours, then the last one to three.

    If a chain does not close, its first ear is attached alone with one
    fresh tip colour; the final bound check then decides.
    """
    if trace is None:
        trace = []
    if g.n < 3 or not is_biconnected(g):
        raise PreconditionError("graph not 2-connected")
    bound = two_connected_bound(g.n)
    w = _Work(g, set(range(g.m)), set())
    stack: list = []
    _strip(w, stack, trace)
    cur, _ = w.graph()

    cycle = _start_cycle(cur, w.gone)
    half = -(-len(cycle) // 2)
    col = {}
    for i in range(len(cycle)):
        col[g.edge_id(cycle[i], cycle[(i + 1) % len(cycle)])] = i % half
    host = set(cycle)
    trace.append(("cycle", cycle))
    aside: list[Ear] = []
    debt = 0
    while True:
        avoid = set(w.gone).union(*(q.internals for q in aside))
        if all(v in host or v in avoid for v in g.vertices()):
            break
        p1 = find_largest_ear(cur, host, avoid=avoid, cap=cap)
        if not p1.is_even:
            col = colour_odd_ear(g, col, p1)
            host |= set(p1.internals)
            trace.append(("odd", p1.path))
            continue
        if classify_ear(cur, p1, ignore=w.gone).clean_removable:
            aside.append(p1)
            trace.append(("aside", p1.path))
            continue
        grown = _grow_chain(g, cur, host, col, p1, avoid, cap, trace)
        if grown is None:
            col = colour_even_ear(g, col, p1, BalancedColouringSpec(t1=_fresh(col)))
            host |= set(p1.internals)
            debt += 1
            trace.append(("even-alone", p1.path))
        else:
            host, col = grown
        if check and not _rainbow_on(g, col, host):
            raise AssertionError(f"host lost rainbow connectivity after {trace[-1]}")

    while aside:
        batch, aside = aside[:4], aside[4:]
        if len(batch) == 1:
            t1, t2 = _fresh(col), min(col.values())
        else:
            t1 = _fresh(col)
            t2 = t1 + 1
        for q in batch:
            col = colour_even_ear(g, col, q, BalancedColouringSpec(
                t1=t1, t2=t2, fresh_base=max(_fresh(col), t1 + 1, t2 + 1)))
            host |= set(q.internals)
        trace.append(("tips", [q.path for q in batch], t1, t2))

    for kind, item in reversed(stack):
        if kind == "ear":
            col = colour_odd_ear(g, col, item, BalancedColouringSpec(c_old=min(col.values())))
            host |= set(item.internals)
    filler = min(col.values())
    full = EdgeColouring.from_list([col.get(e, filler) for e in range(g.m)])
    trace.append(("debt", debt))
    try:
        return _finish(g, full, bound, "two-connected colourer")
    except (AssertionError, BudgetOverrun) as exc:
        raise type(exc)(f"{exc}; trace={trace}") from None


# ---------------------------------------------------------------------------
# chordal graphs


def colour_chordal(g: Graph, kappa: int, log: list | None = None) -> EdgeColouring:
    """Rainbow colouring of a kappa-connected chordal graph, at most n/kappa + 3 colours.

    A connected set ``D`` grows from one vertex by whole minimal separators
    inside ``N(D)``; every separator is a clique of at least ``kappa``
    vertices and all new edges inside ``D`` share one fresh colour, so ``D``
    stays rainbow coloured with at most ``|D| / kappa`` colours.  Once ``D``
    dominates, one extension step adds at most three colours.

    ``log`` receives ``(|D|, colours)`` after each growth round.
    """
    _require_connected(g)
    ok, _ = is_chordal(g)
    if not ok:
        raise PreconditionError("graph not chordal")
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    bound = chordal_bound(g.n, kappa)
    if g.n == 1:
        return EdgeColouring((), 0)
    if g.is_complete():
        return _finish(g, EdgeColouring((0,) * g.m, 1), bound, "chordal colourer")
    if kappa == 1:
        return _finish(g, spanning_tree_colouring(g), bound, "chordal colourer")
    d = {start_vertex(g)}
    by_host: dict = {}
    used = 0
    while max(distances_from(g, d)) > 1:
        s = minimal_separator_in_neighbourhood(g, d)
        if not is_clique(g, s):
            raise AssertionError(f"minimal separator {sorted(s)} is not a clique")
        if len(s) < kappa:
            raise PreconditionError(
                f"separator {sorted(s)} has {len(s)} < {kappa} vertices; graph not {kappa}-connected")
        for x in s:
            for y, e in g.incident(x):
                if (y in d or y in s) and e not in by_host:
                    by_host[e] = used
        used += 1
        d |= s
        if Fraction(used) > Fraction(len(d), kappa):
            raise AssertionError(f"{used} colours on |D|={len(d)} exceeds |D|/kappa")
        if log is not None:
            log.append((len(d), used))
    c = induced_colouring(g, d, by_host) if len(d) > 1 else EdgeColouring((), 0)
    col = dominate_and_colour(g, DominatingSet(frozenset(d), 1), c)
    return _finish(g, col, bound, "chordal colourer")


# ---------------------------------------------------------------------------
# dominating-set pipelines


def colour_kappa_pipeline(g: Graph, kappa: int, l: int) -> EdgeColouring:
    """Rainbow colouring of a kappa-connected graph via a 2l-step dominating set.

    Uses at most ``(2l+1) n / (kappa l + 1) + 2l(2l+2) - 1`` colours.
    """
    if kappa == 1:
        raise PreconditionError("kappa = 1: use the spanning-tree colouring instead")
    if kappa < 1 or l < 0:
        raise ValueError("needs kappa >= 2 and l >= 0")
    _require_connected(g)
    bound = kappa_bound(g.n, kappa, l)
    d = grow_2l_step_dominating(g, GrowthParams(l=l, kappa=kappa))
    sub, _, _ = g.induced(d.vertices)
    col = dominate_and_colour(g, d, spanning_tree_colouring(sub))
    return _finish(g, col, bound, "kappa pipeline")


def colour_epsilon(g: Graph, kappa: int, eps) -> EdgeColouring:
    """:func:`colour_kappa_pipeline` with ``l = ceil(1/eps)``."""
    return colour_kappa_pipeline(g, kappa, epsilon_l(eps))


def colour_girth_pipeline(g: Graph) -> EdgeColouring:
    """Rainbow colouring of a high-girth graph with at most ``n/delta + 19`` or ``+ 41`` colours.

    Needs minimum degree at least 5 and girth at least 5, or minimum degree
    at least 3 and girth at least 7; the first regime is tried first.
    """
    _require_connected(g)
    delta = min(g.degree(v) for v in g.vertices())
    gi = girth(g)
    regime = girth_regime(delta, gi)
    if regime is None:
        raise PreconditionError(
            f"girth pipeline needs girth >= 7 with min degree >= 3 or girth >= 5 with "
            f"min degree >= 5; got girth {gi} (< 7) and min degree {delta} (< 5)"
            if delta < 5 and gi < 7 else
            f"girth pipeline preconditions fail: min degree {delta}, girth {gi}")
    half, additive = regime
    bound = girth_bound(g.n, delta, additive)
    d = grow_girth_dominating(g, GrowthParams(g=half, delta=delta))
    sub, _, _ = g.induced(d.vertices)
    col = dominate_and_colour(g, d, spanning_tree_colouring(sub))
    return _finish(g, col, bound, "girth pipeline")


def colour_spanning_tree(g: Graph) -> EdgeColouring:
    _require_connected(g)
    return _finish(g, spanning_tree_colouring(g), Fraction(max(g.n - 1, 0)), "spanning tree")


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    algorithm: str
    n: int
    kappa: int | None = None
    lam: int | None = None
    delta: int | None = None
    girth: float | None = None
    diameter: int | None = None
    bound: Fraction | None = None
    colours_used: int | None = None
    verified: bool = False
    runtime_ms: float = 0.0
    seed: int | None = None
    instance: str = ""
    family: str = ""
    rc: int | None = None
    error: str = ""
    colouring: EdgeColouring | None = field(default=None, repr=False, compare=False)

    CSV_COLUMNS = ("algorithm", "n", "kappa", "lambda", "delta", "girth", "diameter",
                   "bound_num", "bound_den", "colours_used", "verified", "runtime_ms", "seed",
                   "instance", "family", "rc", "error")

    @property
    def within_bound(self) -> bool:
        if self.bound is None:
            return True
        return self.colours_used is not None and self.colours_used <= self.bound

    @property
    def ok(self) -> bool:
        if self.error:
            return False
        if self.colours_used is None:
            return True
        return self.verified and self.within_bound

    def row(self) -> dict:
        gi = self.girth
        return {
            "algorithm": self.algorithm, "n": self.n, "kappa": self.kappa, "lambda": self.lam,
            "delta": self.delta, "girth": "inf" if gi == math.inf else gi,
            "diameter": self.diameter,
            "bound_num": None if self.bound is None else self.bound.numerator,
            "bound_den": None if self.bound is None else self.bound.denominator,
            "colours_used": self.colours_used, "verified": self.verified,
            "runtime_ms": round(self.runtime_ms, 3), "seed": self.seed,
            "instance": self.instance, "family": self.family, "rc": self.rc,
            "error": self.error,
        }


ALGORITHMS = ("two-connected", "chordal", "kappa", "girth", "spanning-tree")


def claimed_bound(name: str, n: int, kappa: int, l: int = 1, delta: int | None = None,
                  gi=None) -> Fraction | None:
    if name == "two-connected":
        return two_connected_bound(n)
    if name == "chordal":
        return chordal_bound(n, kappa)
    if name == "kappa":
        return kappa_bound(n, kappa, l)
    if name == "girth":
        regime = girth_regime(delta, gi)
        return None if regime is None else girth_bound(n, delta, regime[1])
    if name == "spanning-tree":
        return Fraction(n - 1)
    raise ValueError(f"unknown algorithm {name!r}")


def colour_with(name: str, g: Graph, kappa: int | None = None, l: int = 1,
                cap: int = DEFAULT_EAR_CAP, check: bool = True) -> EdgeColouring:
    """Dispatch to a colourer by its name in :data:`ALGORITHMS`."""
    if kappa is None and name in ("chordal", "kappa"):
        kappa = vertex_connectivity(g)
    if name == "two-connected":
        return colour_two_connected(g, cap=cap, check=check)
    if name == "chordal":
        return colour_chordal(g, kappa)
    if name == "kappa":
        return colour_kappa_pipeline(g, kappa, l)
    if name == "girth":
        return colour_girth_pipeline(g)
    if name == "spanning-tree":
        return colour_spanning_tree(g)
    raise ValueError(f"unknown algorithm {name!r}")


def run_algorithm(name: str, g: Graph, kappa: int | None = None, l: int = 1,
                  seed: int | None = None, instance: str = "", family: str = "",
                  metrics=None, cap: int = DEFAULT_EAR_CAP) -> BoundReport:
    """Run one colourer, verify it and fill a :class:`BoundReport`.

    Failures are recorded in ``error``; nothing is raised.
    """
    rep = BoundReport(name, g.n, seed=seed, instance=instance, family=family)
    try:
        m = metrics if metrics is not None else compute_metrics(g)
        rep.kappa = m.vertex_connectivity
        rep.lam = m.edge_connectivity
        rep.delta = m.min_degree
        rep.girth = m.girth
        rep.diameter = m.diameter
    except Exception as exc:  # metrics are informational
        rep.error = f"metrics: {exc}"
        return rep
    k = rep.kappa if kappa is None else kappa
    t0 = time.perf_counter()
    try:
        rep.bound = claimed_bound(name, g.n, k, l, rep.delta, rep.girth)
        col = colour_with(name, g, k, l, cap=cap, check=False)
    except Exception as exc:
        rep.runtime_ms = (time.perf_counter() - t0) * 1000
        rep.error = f"{type(exc).__name__}: {str(exc)[:300]}"
        return rep
    rep.runtime_ms = (time.perf_counter() - t0) * 1000
    rep.colours_used = col.num_colours
    rep.colouring = col
    rep.verified = verify_rainbow_connected(g, col).complete
    if rep.colours_used < rep.diameter:
        rep.error = "colour count below the diameter lower bound"
    return rep


def conjecture_probe(reports) -> list[tuple[str, Fraction]]:
    """``colours_used - n/kappa`` per successful report; informational only."""
    out = []
    for r in reports:
        if r.colours_used is not None and r.kappa:
            out.append((r.instance or r.algorithm, r.colours_used - Fraction(r.n, r.kappa)))
    return out
