"""Deterministic and seeded-random graph families."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph
from .metrics import is_chordal, is_connected, vertex_connectivity


class GeneratorError(ValueError):
    pass


def cycle(n: int) -> Graph:
    if n < 3:
        raise GeneratorError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GeneratorError("a path needs at least 1 vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def theta(*lengths: int) -> Graph:
    """Two hubs (0 and 1) joined by internally disjoint paths of the given lengths."""
    if len(lengths) < 2 or sum(1 for x in lengths if x < 2) > 1 or min(lengths) < 1:
        raise GeneratorError("theta graph needs >= 2 paths, at most one of length 1")
    edges = []
    nxt = 2
    for L in lengths:
        prev = 0
        for _ in range(L - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, edges)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def lcf(n: int, jumps, repeats: int) -> Graph:
    """Cubic Hamiltonian graph from LCF notation ``jumps^repeats``."""
    edges = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i) for i in range(n)}
    seq = list(jumps) * repeats
    for i in range(n):
        j = (i + seq[i]) % n
        edges.add((min(i, j), max(i, j)))
    return Graph(n, sorted(edges))


def layered_tight(k: int, d: int) -> Graph:
    """Layered graph with diameter ``d`` whose degrees are at least ``3k - 1``.

    Layers are cliques and consecutive layers are completely joined; sizes
    come from :func:`layer_sizes`.  Vertex ids are layer-major.
    """
    if k < 3:
        raise GeneratorError(f"k={k} gives lambda={3 * k - 1} < 8; need k >= 3")
    if d < 1:
        raise GeneratorError("d must be >= 1")
    sizes = layer_sizes(k, d)
    layers = []
    nxt = 0
    for s in sizes:
        layers.append(list(range(nxt, nxt + s)))
        nxt += s
    edges = []
    for i, layer in enumerate(layers):
        edges.extend((a, b) for x, a in enumerate(layer) for b in layer[x + 1:])
        if i + 1 < len(layers):
            edges.extend((a, b) for a in layer for b in layers[i + 1])
    return Graph(nxt, edges)


def layer_sizes(k: int, d: int) -> list[int]:
    """Sizes of ``V_0..V_d``: ``2k`` for layers 1 and d, ``k`` otherwise.

    For ``d == 1`` layer 1 is both "layer 1" and "layer d"; it gets ``2k`` and
    ``V_0`` gets ``2k`` as well so that ``n = k(d + 3)`` still holds.
    """
    if d == 1:
        return [2 * k, 2 * k]
    return [k] + [2 * k if i in (1, d) else k for i in range(1, d + 1)]


# ---------------------------------------------------------------------------
# named graphs


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def heawood() -> Graph:
    return lcf(14, [5, -5], 7)


def mcgee() -> Graph:
    return lcf(24, [12, 7, -7], 8)


def foster_cage() -> Graph:
    """The (5,5)-cage with automorphism group of order 30, as a Z_15 bicirculant.

    Vertices ``a_x = x`` and ``b_x = 15 + x`` for ``x`` in Z_15 with
    ``a_x ~ a_{x+6}``, ``b_x ~ b_{x+3}`` and ``a_x ~ b_{x+4}, b_{x+5}, b_{x+9}``.
    """
    edges = []
    for x in range(15):
        edges.append((x, (x + 6) % 15))
        edges.append((15 + x, 15 + (x + 3) % 15))
        for j in (4, 5, 9):
            edges.append((x, 15 + (x + j) % 15))
    return Graph(30, edges)


CATALOGUE = {
    "petersen": petersen,
    "heawood": heawood,
    "mcgee": mcgee,
    "foster": foster_cage,
    "foster-cage": foster_cage,
}


def named(name: str) -> Graph:
    key = name.strip().lower().replace("_", "-")
    if key not in CATALOGUE:
        raise GeneratorError(f"unknown named graph {name!r}; known: {sorted(CATALOGUE)}")
    return CATALOGUE[key]()


# ---------------------------------------------------------------------------
# random families


def random_two_connected(n: int, rng: random.Random, max_extra: int | None = None) -> Graph:
    """Random 2-connected graph on ``n`` vertices built from random open ears.

    Starts from a random cycle and attaches ears (possibly chords) between
    distinct existing vertices until ``n`` vertices are used; then adds up to
    ``max_extra`` random chords.  Every 2-connected graph arises this way.
    """
    if n < 3:
        raise GeneratorError("2-connected graphs need n >= 3")
    c0 = rng.randint(3, n)
    edges = set()
    for i in range(c0):
        a, b = i, (i + 1) % c0
        edges.add((min(a, b), max(a, b)))
    used = c0
    while used < n:
        internal = rng.randint(1, n - used)
        a, b = rng.sample(range(used), 2)
        chain = [a] + list(range(used, used + internal)) + [b]
        used += internal
        for x, y in zip(chain, chain[1:]):
            edges.add((min(x, y), max(x, y)))
    extra = rng.randint(0, n // 3 if max_extra is None else max_extra)
    for _ in range(extra):
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges))


def random_k_connected(n: int, kappa: int, rng: random.Random, max_attempts: int = 500,
                       extra_p: float = 0.0) -> Graph:
    """Union of random Hamiltonian cycles and matchings, rejected until kappa is met."""
    if kappa >= n:
        raise GeneratorError(f"kappa={kappa} impossible on n={n} vertices")
    for attempt in range(1, max_attempts + 1):
        edges = set()
        layers = (kappa + 1) // 2
        for _ in range(layers):
            perm = list(range(n))
            rng.shuffle(perm)
            for i in range(n):
                a, b = perm[i], perm[(i + 1) % n]
                edges.add((min(a, b), max(a, b)))
        if kappa % 2 == 1:
            perm = list(range(n))
            rng.shuffle(perm)
            for i in range(0, n - 1, 2):
                a, b = perm[i], perm[i + 1]
                edges.add((min(a, b), max(a, b)))
            if n % 2 == 1:
                a, b = perm[-1], perm[0]
                edges.add((min(a, b), max(a, b)))
        if extra_p > 0:
            for a in range(n):
                for b in range(a + 1, n):
                    if rng.random() < extra_p:
                        edges.add((a, b))
        g = Graph(n, sorted(edges))
        if vertex_connectivity(g) >= kappa:
            return g
    raise GeneratorError(
        f"no {kappa}-connected graph on {n} vertices after {max_attempts} attempts")


def k_tree(k: int, n: int, rng: random.Random) -> Graph:
    """Random k-tree: a (k+1)-clique grown by attaching vertices to k-cliques."""
    if n < k + 1:
        raise GeneratorError(f"a {k}-tree needs at least {k + 1} vertices")
    base = list(range(k + 1))
    edges = [(a, b) for i, a in enumerate(base) for b in base[i + 1:]]
    cliques = [tuple(c for c in base if c != skip) for skip in base]
    for v in range(k + 1, n):
        host = cliques[rng.randrange(len(cliques))]
        edges.extend((u, v) for u in host)
        for skip in host:
            cliques.append(tuple(sorted([u for u in host if u != skip] + [v])))
    return Graph(n, edges)


def random_connected(n: int, p: float, rng: random.Random, max_attempts: int = 1000) -> Graph:
    for _ in range(max_attempts):
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
        g = Graph(n, edges)
        if is_connected(g):
            return g
    raise GeneratorError(f"no connected G({n}, {p}) after {max_attempts} attempts")


def random_bridgeless(n: int, rng: random.Random) -> Graph:
    """Random 2-edge-connected graph from open and closed ears.

    Closed ears (cycles hanging off one vertex) create cut vertices, so the
    result is bridgeless but not necessarily 2-connected.
    """
    if n < 3:
        raise GeneratorError("bridgeless graphs need n >= 3")
    c0 = rng.randint(3, n)
    edges = set()
    for i in range(c0):
        a, b = i, (i + 1) % c0
        edges.add((min(a, b), max(a, b)))
    used = c0
    while used < n:
        left = n - used
        closed = left >= 2 and rng.random() < 0.4
        internal = rng.randint(2 if closed else 1, left)
        if closed:
            a = b = rng.randrange(used)
        else:
            a, b = rng.sample(range(used), 2)
        chain = [a] + list(range(used, used + internal)) + [b]
        used += internal
        for x, y in zip(chain, chain[1:]):
            edges.add((min(x, y), max(x, y)))
    for _ in range(rng.randint(0, n // 4)):
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    return Graph(n, sorted(edges))


# ---------------------------------------------------------------------------
# family specs


FAMILIES = ("layered-tight", "cycle", "path", "complete", "star", "theta",
            "random-k-connected", "random-2-connected", "random-bridgeless", "k-tree",
            "named-cage", "hypercube")
RANDOM_FAMILIES = ("random-k-connected", "random-2-connected", "random-bridgeless", "k-tree")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GeneratorError(f"unknown family {self.family!r}; known: {list(FAMILIES)}")
        p = self.params
        need = {
            "layered-tight": ("k", "d"), "cycle": ("n",), "path": ("n",), "complete": ("n",),
            "star": ("leaves",), "theta": ("lengths",), "random-k-connected": ("n", "kappa"),
            "random-2-connected": ("n",), "random-bridgeless": ("n",), "k-tree": ("k", "n"),
            "named-cage": ("name",), "hypercube": ("d",),
        }[self.family]
        missing = [x for x in need if x not in p]
        if missing:
            raise GeneratorError(f"family {self.family} needs parameters {missing}")
        if self.family == "layered-tight" and int(p["k"]) < 3:
            raise GeneratorError("layered-tight needs lambda = 3k - 1 >= 8, i.e. k >= 3")

    @property
    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inner})"


def gen_family(spec: FamilySpec, seed: int | None = None) -> Graph:
    p = spec.params
    seed = p.get("seed", seed)
    rng = random.Random(seed)
    f = spec.family
    if f == "layered-tight":
        return layered_tight(int(p["k"]), int(p["d"]))
    if f == "cycle":
        return cycle(int(p["n"]))
    if f == "path":
        return path(int(p["n"]))
    if f == "complete":
        return complete(int(p["n"]))
    if f == "star":
        return star(int(p["leaves"]))
    if f == "theta":
        return theta(*[int(x) for x in p["lengths"]])
    if f == "hypercube":
        return hypercube(int(p["d"]))
    if f == "random-k-connected":
        return random_k_connected(int(p["n"]), int(p["kappa"]), rng,
                                  extra_p=float(p.get("p", 0.0)))
    if f == "random-2-connected":
        return random_two_connected(int(p["n"]), rng)
    if f == "random-bridgeless":
        return random_bridgeless(int(p["n"]), rng)
    if f == "k-tree":
        g = k_tree(int(p["k"]), int(p["n"]), rng)
        assert is_chordal(g)[0]
        return g
    if f == "named-cage":
        return named(str(p["name"]))
    raise GeneratorError(f)
