"""Edge colourings, the rainbow-connectivity verifier and the exact rc oracle."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .graph import Graph, NotConnectedError
from .metrics import UNREACHABLE, all_pairs_distances, diameter, distances_from, is_connected


class ColouringError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeColouring:
    """Total map edge id -> colour id with dense ids ``0..num_colours-1``."""

    colour_of: tuple
    num_colours: int

    def __post_init__(self):
        cols = tuple(int(c) for c in self.colour_of)
        object.__setattr__(self, "colour_of", cols)
        for e, c in enumerate(cols):
            if c < 0:
                raise ColouringError(f"edge {e} is uncoloured")
        used = set(cols)
        if used != set(range(self.num_colours)):
            raise ColouringError(
                f"colour ids {sorted(used)} are not exactly 0..{self.num_colours - 1}")

    @classmethod
    def from_list(cls, colours: Sequence[int]) -> EdgeColouring:
        """Relabel arbitrary non-negative colour ids to dense ids.

        Ids keep their relative order, so an already dense list is unchanged.
        """
        for e, c in enumerate(colours):
            if c is None or c < 0:
                raise ColouringError(f"edge {e} is uncoloured")
        relabel = {c: i for i, c in enumerate(sorted(set(colours)))}
        return cls(tuple(relabel[c] for c in colours), len(relabel))

    def __len__(self):
        return len(self.colour_of)

    def __getitem__(self, e):
        return self.colour_of[e]

    def colours_on(self, edge_ids: Iterable[int]) -> set:
        return {self.colour_of[e] for e in edge_ids}

    def permuted(self, perm: Sequence[int]) -> EdgeColouring:
        return EdgeColouring(tuple(perm[c] for c in self.colour_of), self.num_colours)

    def to_dict(self):
        return {"num_colours": self.num_colours, "colour_of": list(self.colour_of)}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data) -> EdgeColouring:
        cols = data["colour_of"]
        col = cls.from_list(cols)
        if "num_colours" in data and data["num_colours"] != col.num_colours:
            raise ColouringError(
                f"num_colours {data['num_colours']} disagrees with {col.num_colours} distinct ids")
        return col


@dataclass
class RainbowCertificate:
    """One rainbow witness path per vertex pair, or the pairs that have none."""

    paths: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.complete

    def to_dict(self):
        return {
            "complete": self.complete,
            "paths": [[u, v, p] for (u, v), p in sorted(self.paths.items())],
            "failures": [list(pr) for pr in self.failures],
        }


def _colour_array(g: Graph, c) -> list:
    cols = list(c.colour_of) if isinstance(c, EdgeColouring) else list(c)
    if len(cols) != g.m:
        raise ColouringError(f"colouring covers {len(cols)} edges, graph has {g.m}")
    for e, col in enumerate(cols):
        if col is None or col < 0:
            raise ColouringError(f"edge {e} {g.edges[e]} is uncoloured")
    return cols


def _reach(g: Graph, cols: list, source: int, need, dense: bool):
    if dense:
        indptr, nbr, eid = g.csr
        hit, sv, sp = kernels.rainbow_reach(
            indptr, nbr, eid, np.asarray(cols, dtype=np.int64), source,
            np.asarray(need, dtype=np.bool_))
        return hit, sv, sp
    adj_inc = [list(g.incident(v)) for v in g.vertices()]
    return kernels.rainbow_reach_bigmask(adj_inc, cols, source, need)


def verify_rainbow_connected(g: Graph, c, pairs: Iterable[tuple] | None = None,
                             ) -> RainbowCertificate:
    """Exact check that every pair (or every listed pair) has a rainbow path.

    ``c`` is an :class:`EdgeColouring` or a per-edge list of colour ids.
    Witness paths are shortest rainbow paths.
    """
    cols = _colour_array(g, c)
    if cols:
        relabel = {x: i for i, x in enumerate(sorted(set(cols)))}
        cols = [relabel[x] for x in cols]
    dense = (max(cols, default=0) + 1) <= kernels.MAX_MASK_COLOURS
    if pairs is None:
        wanted = {s: [t for t in range(s + 1, g.n)] for s in range(g.n)}
    else:
        wanted = {}
        for u, v in pairs:
            u, v = (u, v) if u < v else (v, u)
            if u != v:
                wanted.setdefault(u, []).append(v)
    cert = RainbowCertificate()
    for s in sorted(wanted):
        targets = wanted[s]
        if not targets:
            continue
        need = [False] * g.n
        for t in targets:
            need[t] = True
        hit, sv, sp = _reach(g, cols, s, need, dense)
        for t in sorted(set(targets)):
            i = int(hit[t])
            if i < 0:
                cert.failures.append((s, t))
                continue
            path = []
            while i >= 0:
                path.append(int(sv[i]))
                i = int(sp[i])
            cert.paths[(s, t)] = path[::-1]
    return cert


def is_rainbow_path(g: Graph, c, path: Sequence[int]) -> bool:
    cols = _colour_array(g, c)
    if len(set(path)) != len(path):
        return False
    try:
        es = g.path_edges(path)
    except KeyError:
        return False
    seen = [cols[e] for e in es]
    return len(set(seen)) == len(seen)


def check_certificate(g: Graph, c, cert: RainbowCertificate) -> bool:
    """Independent re-check of every witness path in ``cert``."""
    for (u, v), p in cert.paths.items():
        if p[0] != u or p[-1] != v or not is_rainbow_path(g, c, p):
            return False
    return True


# ---------------------------------------------------------------------------
# bounds and the exact oracle


def rc_bounds(g: Graph) -> tuple[int, int]:
    """Trivial sandwich ``diameter <= rc <= n - 1``."""
    if not is_connected(g):
        raise NotConnectedError()
    return diameter(g), max(g.n - 1, 0)


@dataclass(frozen=True)
class SearchBudget:
    max_edges: int = 14
    max_nodes: int = 20_000_000


@dataclass(frozen=True)
class RcResult:
    rc_value: int | None
    witness: EdgeColouring | None
    lower_bound_used: int
    conclusive: bool = True
    inconclusive_above: int | None = None
    nodes: int = 0

    def to_dict(self):
        return {
            "rc": self.rc_value,
            "conclusive": self.conclusive,
            "inconclusive_above": self.inconclusive_above,
            "lower_bound": self.lower_bound_used,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


class BudgetExceeded(RuntimeError):
    pass


def bfs_edge_order(g: Graph) -> list[int]:
    """Edges in the order a BFS from the max-degree vertex first touches them."""
    if g.m == 0:
        return []
    start = max(g.vertices(), key=lambda v: (g.degree(v), -v))
    order = []
    taken = set()
    seen = {start}
    queue = [start]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for w, e in g.incident(u):
            if e not in taken:
                taken.add(e)
                order.append(e)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return order


def _search(g: Graph, k: int, max_nodes: int):
    dist = np.asarray(all_pairs_distances(g), dtype=np.int64)
    indptr, nbr, eid = g.csr
    order = np.asarray(bfs_edge_order(g), dtype=np.int64)
    status, colour, nodes = kernels.rc_search(indptr, nbr, eid, order, int(k), dist,
                                              int(max_nodes))
    return int(status), [int(x) for x in colour], int(nodes)


def rc_at_most(g: Graph, k: int, max_nodes: int = SearchBudget.max_nodes):
    """Exhaustive search for a rainbow colouring with at most ``k`` colours.

    Returns an :class:`EdgeColouring` or ``None``; raises
    :class:`BudgetExceeded` when the node budget runs out first.
    """
    if not is_connected(g):
        raise NotConnectedError()
    status, colour, _ = _search(g, k, max_nodes)
    if status < 0:
        raise BudgetExceeded(f"node budget {max_nodes} exhausted at k={k}")
    if status == 0:
        return None
    return EdgeColouring.from_list(colour)


def rc_exact(g: Graph, budget: SearchBudget = SearchBudget()) -> RcResult:
    """Exact rainbow connection number by increasing ``k`` from the diameter."""
    if not is_connected(g):
        raise NotConnectedError()
    if g.m > budget.max_edges:
        raise ValueError(f"graph has {g.m} edges, above the rc_exact cap of {budget.max_edges}")
    if g.n <= 1:
        return RcResult(0, EdgeColouring((), 0), 0)
    lower, upper = rc_bounds(g)
    total = 0
    for k in range(max(lower, 1), upper + 1):
        status, colour, nodes = _search(g, k, budget.max_nodes)
        total += nodes
        if status < 0:
            return RcResult(None, None, lower, conclusive=False,
                            inconclusive_above=k - 1, nodes=total)
        if status == 1:
            witness = EdgeColouring.from_list(colour)
            if not verify_rainbow_connected(g, witness).complete:
                raise AssertionError("rc search produced a colouring the verifier rejects")
            return RcResult(k, witness, lower, nodes=total)
    raise AssertionError("no rainbow colouring with n-1 colours; graph must be disconnected")


# ---------------------------------------------------------------------------
# helpers shared by the constructive colourers


def spanning_tree_edges(g: Graph, root: int = 0) -> list[int]:
    """Edge ids of a BFS spanning tree of a connected graph."""
    dist = distances_from(g, root)
    if UNREACHABLE in dist:
        raise NotConnectedError()
    seen = {root}
    queue = [root]
    tree = []
    for u in queue:
        for w, e in g.incident(u):
            if w not in seen:
                seen.add(w)
                tree.append(e)
                queue.append(w)
    return tree


def spanning_tree_colouring(g: Graph) -> EdgeColouring:
    """Distinct colours on a spanning tree, colour 0 on every other edge."""
    if g.m == 0:
        return EdgeColouring((), 0)
    tree = spanning_tree_edges(g)
    cols = [0] * g.m
    for i, e in enumerate(tree):
        cols[e] = i
    return EdgeColouring.from_list(cols)
