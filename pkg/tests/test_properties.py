"""Randomised properties over small graphs."""
import itertools
import random

import networkx as nx
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from conftest import to_nx
from rainbow_kit import generators as gen
from rainbow_kit.colourers import colour_two_connected
from rainbow_kit.colouring import EdgeColouring, check_certificate, verify_rainbow_connected
from rainbow_kit.dominating import (DominatingSet, GrowthParams, dominate_and_colour,
                                    domination_radius, grow_2l_step_dominating)
from rainbow_kit.graph import Graph
from rainbow_kit.metrics import compute_metrics

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=2, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph(n, chosen)


@st.composite
def two_connected(draw):
    n = draw(st.integers(3, 11))
    seed = draw(st.integers(0, 10**6))
    return gen.random_two_connected(n, random.Random(seed))


@SETTINGS
@given(graphs(), st.data())
def test_certificates_check_out(g, data):
    k = data.draw(st.integers(1, 4))
    cols = data.draw(st.lists(st.integers(0, k - 1), min_size=g.m, max_size=g.m))
    cert = verify_rainbow_connected(g, cols)
    assert check_certificate(g, cols, cert)
    assert len(cert.paths) + len(cert.failures) == g.n * (g.n - 1) // 2


@SETTINGS
@given(graphs(min_n=3))
def test_distinct_colours_connect_every_connected_graph(g):
    assume(nx.is_connected(to_nx(g)))
    assert verify_rainbow_connected(g, EdgeColouring(tuple(range(g.m)), g.m)).complete


@SETTINGS
@given(graphs(min_n=3))
def test_metrics_against_networkx(g):
    h = to_nx(g)
    assume(nx.is_connected(h))
    m = compute_metrics(g)
    assert m.vertex_connectivity == nx.node_connectivity(h)
    assert m.edge_connectivity == nx.edge_connectivity(h)
    assert m.diameter == nx.diameter(h)


@SETTINGS
@given(two_connected())
def test_two_connected_bound(g):
    c = colour_two_connected(g)
    assert c.num_colours <= (g.n + 1) // 2 + 1
    assert verify_rainbow_connected(g, c).complete


@SETTINGS
@given(two_connected(), st.integers(1, 2))
def test_growth_then_colouring(g, l):
    kappa = compute_metrics(g).vertex_connectivity
    d = grow_2l_step_dominating(g, GrowthParams(l=l, kappa=kappa))
    assert domination_radius(g, d.vertices) <= 2 * l
    assert len(d) * (kappa * l + 1) <= (2 * l + 1) * g.n
    c = dominate_and_colour(g, d)
    assert verify_rainbow_connected(g, c).complete
    assert c.num_colours <= len(d) - 1 + 2 * l * (2 * l + 2)


@SETTINGS
@given(two_connected())
def test_dominating_json_round_trip(g):
    d = grow_2l_step_dominating(g, GrowthParams(l=1, kappa=2))
    assert DominatingSet.from_dict(d.to_dict()) == d
