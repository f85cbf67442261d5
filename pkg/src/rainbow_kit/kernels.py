"""Hot search loops: rainbow reachability and exact rc backtracking.

Both kernels are written against plain int64 numpy arrays so the same source
runs compiled (numba) or interpreted.  Colour sets are int64 bitmasks, which
limits the array kernels to :data:`MAX_MASK_COLOURS` colours; callers fall
back to :func:`rainbow_reach_bigmask` above that.
"""
import numpy as np

from ._jit import njit

MAX_MASK_COLOURS = 62


@njit(cache=True)
def _slot(tab_v, tab_m, v, mask):
    cap = tab_v.shape[0]
    h = (mask ^ (mask >> 17) ^ (mask >> 37) ^ (v * 40503)) & (cap - 1)
    while tab_v[h] != -1:
        if tab_v[h] == v and tab_m[h] == mask:
            return h
        h = (h + 1) & (cap - 1)
    return h


@njit(cache=True)
def rainbow_reach(indptr, nbr, eid, colour, source, need):
    """Breadth-first search over (vertex, used-colour-set) states from ``source``.

    A rainbow walk contains a rainbow path between its ends, so states need
    not be simple paths.  Stops once every vertex flagged in ``need`` is hit.

    Returns ``(hit, state_v, state_parent)``: ``hit[t]`` is the index of the
    first state reaching ``t`` (or -1) and following ``state_parent`` from it
    back to state 0 spells a shortest rainbow walk, which is a path.
    """
    n = indptr.shape[0] - 1
    hit = np.full(n, -1, dtype=np.int64)
    remaining = 0
    for t in range(n):
        if need[t] and t != source:
            remaining += 1
    cap = 256
    sv = np.empty(cap, dtype=np.int64)
    sm = np.empty(cap, dtype=np.int64)
    sp = np.empty(cap, dtype=np.int64)
    tcap = 1024
    tab_v = np.full(tcap, -1, dtype=np.int64)
    tab_m = np.zeros(tcap, dtype=np.int64)
    sv[0] = source
    sm[0] = 0
    sp[0] = -1
    size = 1
    h = _slot(tab_v, tab_m, source, 0)
    tab_v[h] = source
    tab_m[h] = 0
    hit[source] = 0
    lo = 0
    hi = 1
    while remaining > 0 and lo < hi:
        for i in range(lo, hi):
            v = sv[i]
            mask = sm[i]
            for j in range(indptr[v], indptr[v + 1]):
                bit = np.int64(1) << colour[eid[j]]
                if mask & bit:
                    continue
                w = nbr[j]
                nm = mask | bit
                h = _slot(tab_v, tab_m, w, nm)
                if tab_v[h] != -1:
                    continue
                tab_v[h] = w
                tab_m[h] = nm
                if size == cap:
                    cap *= 2
                    sv2 = np.empty(cap, dtype=np.int64)
                    sm2 = np.empty(cap, dtype=np.int64)
                    sp2 = np.empty(cap, dtype=np.int64)
                    sv2[:size] = sv[:size]
                    sm2[:size] = sm[:size]
                    sp2[:size] = sp[:size]
                    sv, sm, sp = sv2, sm2, sp2
                sv[size] = w
                sm[size] = nm
                sp[size] = i
                if hit[w] == -1:
                    hit[w] = size
                    if need[w]:
                        remaining -= 1
                size += 1
                if 2 * size > tcap:
                    old_v = tab_v
                    old_m = tab_m
                    tcap *= 4
                    tab_v = np.full(tcap, -1, dtype=np.int64)
                    tab_m = np.zeros(tcap, dtype=np.int64)
                    for q in range(old_v.shape[0]):
                        if old_v[q] != -1:
                            h2 = _slot(tab_v, tab_m, old_v[q], old_m[q])
                            tab_v[h2] = old_v[q]
                            tab_m[h2] = old_m[q]
                if remaining == 0:
                    break
            if remaining == 0:
                break
        lo = hi
        hi = size
    return hit, sv[:size], sp[:size]


def rainbow_reach_bigmask(adj_inc, colour, source, need):
    """Same search as :func:`rainbow_reach` with unbounded Python-int masks.

    ``adj_inc[v]`` is a list of ``(neighbour, edge_id)`` pairs.
    """
    n = len(adj_inc)
    hit = [-1] * n
    remaining = sum(1 for t in range(n) if need[t] and t != source)
    sv = [source]
    sm = [0]
    sp = [-1]
    seen = {(source, 0)}
    hit[source] = 0
    lo, hi = 0, 1
    while remaining and lo < hi:
        for i in range(lo, hi):
            v, mask = sv[i], sm[i]
            for w, e in adj_inc[v]:
                bit = 1 << colour[e]
                if mask & bit:
                    continue
                key = (w, mask | bit)
                if key in seen:
                    continue
                seen.add(key)
                sv.append(w)
                sm.append(key[1])
                sp.append(i)
                if hit[w] == -1:
                    hit[w] = len(sv) - 1
                    if need[w]:
                        remaining -= 1
                        if not remaining:
                            break
            if not remaining:
                break
        lo, hi = hi, len(sv)
    return hit, sv, sp


# ---------------------------------------------------------------------------
# exact rc


@njit(cache=True)
def _find_witness(a, b, k, colour, indptr, nbr, eid, dist, out, onpath,
                  pathv, pathe, ptr):
    """DFS for an a-b path of length <= k whose coloured edges are distinct.

    Uncoloured edges (-1) are wildcards.  Writes edge ids into ``out`` and
    returns the length, or -1 if no such path exists.
    """
    if dist[a, b] > k:
        return -1
    depth = 0
    pathv[0] = a
    ptr[0] = indptr[a]
    onpath[a] = True
    mask = np.int64(0)
    while depth >= 0:
        x = pathv[depth]
        if x == b:
            for i in range(depth):
                out[i] = pathe[i]
            for i in range(depth + 1):
                onpath[pathv[i]] = False
            return depth
        advanced = False
        while ptr[depth] < indptr[x + 1]:
            j = ptr[depth]
            ptr[depth] += 1
            w = nbr[j]
            if onpath[w]:
                continue
            if depth + 1 + dist[w, b] > k:
                continue
            c = colour[eid[j]]
            if c >= 0:
                if (mask >> c) & 1:
                    continue
                mask |= np.int64(1) << c
            pathe[depth] = eid[j]
            depth += 1
            pathv[depth] = w
            ptr[depth] = indptr[w]
            onpath[w] = True
            advanced = True
            break
        if not advanced:
            onpath[x] = False
            depth -= 1
            if depth >= 0:
                c = colour[pathe[depth]]
                if c >= 0:
                    mask &= ~(np.int64(1) << c)
    return -1


@njit(cache=True)
def rc_search(indptr, nbr, eid, order, k, dist, max_nodes):
    """Is there a rainbow colouring with at most ``k`` colours?

    Edges are coloured in ``order``; the first gets colour 0 and a colour
    ``c + 1`` is only tried once ``c`` is in use, which quotients out colour
    permutations.  Every vertex pair keeps a witness path that stays feasible
    under the current partial colouring (coloured edges distinct, length at
    most ``k``); a branch dies as soon as some pair has none.

    Returns ``(status, colour, nodes)`` with status 1 (found), 0 (no
    colouring exists) or -1 (``max_nodes`` exhausted).
    """
    n = indptr.shape[0] - 1
    m = order.shape[0]
    colour = np.full(m, -1, dtype=np.int64)
    npairs = n * (n - 1) // 2
    kk = max(k, 1)
    wit = np.zeros((max(npairs, 1), kk), dtype=np.int64)
    wlen = np.zeros(max(npairs, 1), dtype=np.int64)
    pa = np.zeros(max(npairs, 1), dtype=np.int64)
    pb = np.zeros(max(npairs, 1), dtype=np.int64)
    onpath = np.zeros(n, dtype=np.bool_)
    pathv = np.zeros(kk + 1, dtype=np.int64)
    pathe = np.zeros(kk + 1, dtype=np.int64)
    ptr = np.zeros(kk + 1, dtype=np.int64)
    out = np.zeros(kk + 1, dtype=np.int64)
    p = 0
    for a in range(n):
        for b in range(a + 1, n):
            pa[p] = a
            pb[p] = b
            L = _find_witness(a, b, k, colour, indptr, nbr, eid, dist, out,
                              onpath, pathv, pathe, ptr)
            if L < 0:
                return 0, colour, 0
            for i in range(L):
                wit[p, i] = out[i]
            wlen[p] = L
            p += 1
    if m == 0:
        return 1, colour, 0
    tryc = np.zeros(m + 1, dtype=np.int64)
    maxu = np.full(m + 1, -1, dtype=np.int64)
    nodes = 0
    pos = 0
    while True:
        if pos == m:
            return 1, colour, nodes
        if pos < 0:
            return 0, colour, nodes
        e = order[pos]
        limit = min(k - 1, maxu[pos] + 1)
        placed = False
        while tryc[pos] <= limit:
            c = tryc[pos]
            tryc[pos] += 1
            nodes += 1
            if nodes > max_nodes:
                return -1, colour, nodes
            colour[e] = c
            ok = True
            for q in range(npairs):
                L = wlen[q]
                has_e = False
                same = 0
                for i in range(L):
                    f = wit[q, i]
                    if f == e:
                        has_e = True
                    if colour[f] == c:
                        same += 1
                if has_e and same > 1:
                    L2 = _find_witness(pa[q], pb[q], k, colour, indptr, nbr, eid,
                                       dist, out, onpath, pathv, pathe, ptr)
                    if L2 < 0:
                        ok = False
                        break
                    for i in range(L2):
                        wit[q, i] = out[i]
                    wlen[q] = L2
            if ok:
                placed = True
                break
            colour[e] = -1
        if placed:
            maxu[pos + 1] = max(maxu[pos], colour[e])
            pos += 1
            tryc[pos] = 0
        else:
            colour[e] = -1
            pos -= 1
            if pos >= 0:
                colour[order[pos]] = -1
