import itertools
import random

import networkx as nx
import pytest

from conftest import random_graphs, to_nx
from rainbow_kit import generators as gen
from rainbow_kit.colouring import verify_rainbow_connected
from rainbow_kit.ears import (BalancedColouringSpec, Ear, EarClassification, EarError, all_ears, classify_ear,
                              colour_even_ear, colour_odd_ear, find_largest_ear, fresh_count)
from rainbow_kit.graph import Graph


def cycle_with_ear(n, j, length):
    """C_n on 0..n-1 plus an ear of ``length`` edges from 0 to j through new vertices."""
    path = [0] + list(range(n, n + length - 1)) + [j]
    edges = [(i, (i + 1) % n) for i in range(n)] + list(zip(path, path[1:]))
    g = Graph(n + length - 1, edges)
    host = {g.edge_id(i, (i + 1) % n): i % ((n + 1) // 2) for i in range(n)}
    return g, Ear(tuple(path), frozenset(range(n))), host


def as_list(g, col):
    return [col[e] for e in range(g.m)]


def test_ear_validation():
    Ear((0, 5, 1), frozenset({0, 1}))
    with pytest.raises(EarError, match="coincide"):
        Ear((0, 5, 0))
    with pytest.raises(EarError, match="repeats"):
        Ear((0, 5, 6, 5, 1))
    with pytest.raises(EarError, match="lie in the host"):
        Ear((0, 2, 1), frozenset({0, 1, 2}))
    with pytest.raises(EarError, match="not both in the host"):
        Ear((0, 5, 6), frozenset({0, 1}))
    with pytest.raises(EarError, match="not an edge"):
        Ear((0, 2, 1)).check_on(gen.path(3))


def test_ear_properties_and_json():
    e = Ear((3, 7, 8, 9, 4))
    assert e.length == 4 and e.is_even and e.tip == 8 and e.foots == (3, 4)
    assert e.internals == (7, 8, 9) and e.reversed().path == (4, 9, 8, 7, 3)
    assert Ear((0, 1)).tip is None and Ear((0, 5, 6, 1)).parity == "odd"
    assert e.to_dict() == {"path": [3, 7, 8, 9, 4], "parity": "even", "tip": 8}
    assert Ear.from_dict(e.to_dict()) == e


def test_largest_ear_theta():
    g = gen.theta(2, 2, 2)
    e = find_largest_ear(g, {0, 1, 2, 3})
    assert e.length == 2 and e.internals == (4,)


def test_largest_ear_c8_with_chord():
    g = Graph(8, [(i, (i + 1) % 8) for i in range(8)] + [(0, 3)])
    h = {0, 1, 2, 3}
    e = find_largest_ear(g, h)
    assert max(x.length for x in all_ears(g, h)) == e.length == 5
    assert set(e.internals) == {4, 5, 6, 7}


def test_largest_ear_k4():
    e = find_largest_ear(gen.complete(4), {0, 1, 2})
    assert e.length == 2 and e.internals == (3,)


def test_largest_ear_errors_and_anchor():
    with pytest.raises(EarError, match="host spans graph"):
        find_largest_ear(gen.cycle(4), range(4))
    g = gen.theta(3, 3, 3)
    first = find_largest_ear(g, {0, 1, 2, 3, 4, 5})
    assert first.length == 3
    h = {0, 1, 2, 3, 4, 5, 7}
    e = find_largest_ear(g, h, anchor=first)
    assert 7 in e.foots and e.internals == (6,)
    with pytest.raises(EarError, match="no internal vertex in the host"):
        find_largest_ear(g, {0, 1, 2, 3, 4, 5}, anchor=first)
    with pytest.raises(EarError, match="no ear with a foot inside"):
        find_largest_ear(gen.theta(3, 2), {0, 1, 2, 3}, anchor=Ear((0, 2, 3, 1)))


@pytest.mark.parametrize("g", [g for g in random_graphs(41, 60, n_range=(4, 9), p_range=(0.3, 0.7))
                               if nx.is_biconnected(to_nx(g))])
def test_largest_ear_matches_enumeration(g):
    cyc = nx.cycle_basis(to_nx(g))[0]
    if len(cyc) == g.n:
        return
    ears = all_ears(g, cyc)
    e = find_largest_ear(g, cyc)
    assert e.length == max(x.length for x in ears)
    assert min(e.path, e.path[::-1]) in {x.path for x in ears}
    e.check_on(g)


def test_classify_examples():
    g = Graph(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)])
    assert classify_ear(g, Ear((0, 1, 2, 3))) == EarClassification(True, True)
    t = gen.theta(2, 2, 2)
    for mid in (2, 3, 4):
        assert classify_ear(t, Ear((0, mid, 1))) == EarClassification(True, True)
    c5 = gen.cycle(5)
    assert not classify_ear(c5, Ear((0, 1, 2, 3, 4))).removable
    assert not classify_ear(c5, Ear((0, 1))).removable


def test_classify_removable_but_not_clean():
    # the ear's internal vertex 4 also carries the chord 2-4
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 3), (2, 4)])
    c = classify_ear(g, Ear((0, 4, 5, 3)))
    assert c.removable and not c.clean_removable


def test_classify_ignores_absent_vertices():
    g = Graph(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3), (5, 6)])
    assert not classify_ear(g, Ear((0, 1, 2, 3))).removable
    assert classify_ear(g, Ear((0, 1, 2, 3)), ignore={6}).clean_removable


def test_classify_matches_networkx(rng):
    for g in random_graphs(8, 40, n_range=(5, 8), p_range=(0.4, 0.8)):
        h = to_nx(g)
        if not nx.is_biconnected(h):
            continue
        cyc = nx.cycle_basis(h)[0]
        for e in all_ears(g, cyc)[:6]:
            rest = h.copy()
            rest.remove_nodes_from(e.internals)
            if e.length == 1:
                rest.remove_edge(*e.foots)
            ok = rest.number_of_nodes() >= 3 and nx.is_biconnected(rest)
            got = classify_ear(g, e)
            assert got.removable == ok
            assert got.clean_removable == (ok and all(h.degree(v) == 2 for v in e.internals))


def test_odd_chord_uses_no_fresh_colour():
    g, e, host = cycle_with_ear(4, 2, 1)
    out = colour_odd_ear(g, host, e)
    assert fresh_count(host, out) == 0 and out[g.edge_id(0, 2)] == 0
    assert verify_rainbow_connected(g, as_list(g, out)).complete


def test_odd_ear_on_c4_and_c6():
    g, e, host = cycle_with_ear(4, 1, 3)
    out = colour_odd_ear(g, host, e)
    assert fresh_count(host, out) == 1 and len(set(out.values())) == 3
    assert verify_rainbow_connected(g, as_list(g, out)).complete
    g, e, host = cycle_with_ear(6, 3, 5)
    out = colour_odd_ear(g, host, e)
    assert fresh_count(host, out) == 2 and len(set(out.values())) == 5
    assert verify_rainbow_connected(g, as_list(g, out)).complete


def test_odd_ear_mirrored_pattern():
    g, e, host = cycle_with_ear(5, 2, 7)
    out = colour_odd_ear(g, host, e, BalancedColouringSpec(c_old=1))
    cols = [out[x] for x in e.edges(g)]
    assert cols[3] == 1 and cols[:3] == cols[4:]
    assert len(set(cols[:3])) == 3 and not set(cols[:3]) & set(host.values())


def test_odd_ear_errors():
    g, e, host = cycle_with_ear(4, 1, 3)
    with pytest.raises(EarError, match="not a host colour"):
        colour_odd_ear(g, host, e, BalancedColouringSpec(c_old=7))
    with pytest.raises(EarError, match="excluded"):
        colour_odd_ear(g, host, e, BalancedColouringSpec(c_old=0, exclude=frozenset({0})))
    with pytest.raises(EarError, match="not odd"):
        colour_odd_ear(*cycle_with_ear(4, 1, 2)[:1], host, Ear((0, 4, 1)))


def test_even_ear_length_two():
    g, e, host = cycle_with_ear(4, 2, 2)
    out = colour_even_ear(g, host, e, BalancedColouringSpec(t1=5, t2=0))
    assert [out[x] for x in e.edges(g)] == [5, 0]


def test_even_ear_length_four_counts():
    g, e, host = cycle_with_ear(4, 2, 4)
    out = colour_even_ear(g, host, e)
    assert fresh_count(host, out) == 2
    cols = [out[x] for x in e.edges(g)]
    assert cols[0] == cols[3] and cols[2] in host.values() and cols[1] not in host.values()


def test_even_ear_tip_exception():
    g, e, host = cycle_with_ear(4, 2, 4)
    assert g.n == 7 and e.tip == 5
    out = colour_even_ear(g, host, e, BalancedColouringSpec(t1=0, t2=1))
    assert fresh_count(host, out) == 1
    cert = verify_rainbow_connected(g, as_list(g, out))
    assert cert.failures == [(1, 5)]


def test_even_ear_errors():
    g, e, host = cycle_with_ear(4, 2, 4)
    with pytest.raises(EarError, match="coincide"):
        colour_even_ear(g, host, e, BalancedColouringSpec(t1=0, t2=0))
    with pytest.raises(EarError, match="balanced"):
        colour_even_ear(g, host, e, BalancedColouringSpec(t1=2, t2=0, fresh_base=2))
    with pytest.raises(EarError, match="already coloured"):
        colour_even_ear(g, {**host, g.edge_id(0, 4): 0}, e)


@pytest.mark.parametrize("n,j,length", [(n, j, L) for n in range(4, 9) for j in range(1, n // 2 + 1)
                                        for L in range(2, 8, 2)])
def test_even_ear_partial_verification(n, j, length):
    g, e, host = cycle_with_ear(n, j, length)
    rng = random.Random(n * 100 + j * 10 + length)
    old = sorted(set(host.values()))
    for t1, t2 in [(None, None), (None, rng.choice(old))] + list(itertools.permutations(old, 2))[:3]:
        spec = BalancedColouringSpec(t1=t1, t2=t2)
        out = colour_even_ear(g, host, e, spec)
        real_t1 = out[e.edges(g)[length // 2 - 1]]
        real_t2 = out[e.edges(g)[length // 2]]
        t = len({real_t1, real_t2} - set(old))
        assert fresh_count(host, out) == (length - 2) // 2 + t
        cert = verify_rainbow_connected(g, as_list(g, out))
        assert all(e.tip in pair and (set(pair) - {e.tip}) <= set(range(n))
                   for pair in cert.failures)
