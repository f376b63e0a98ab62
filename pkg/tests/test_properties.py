import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualprism.datasets import random_graph
from dualprism.errors import DegenerateGraph, DimensionTooSmall, DisconnectedGraph
from dualprism.graph import Graph, complete_graph, cycle_graph, max_degree, path_graph
from dualprism.properties import (
    PropertyProfile,
    bfs_distances,
    diameter_bounds,
    fiedler_value,
    graph_diameter_bounds,
    property_delta,
    property_profile,
)
from dualprism.spectral import laplacian_spectrum, zero_eigenvalue_multiplicity

from oracles import jacobi_eigenvalues, nx_profile


def test_cycle6_profile():
    prof = property_profile(cycle_graph(6))
    assert prof.connected and prof.components == 1
    assert prof.diameter == 3 and prof.radius == 3
    assert prof.periphery_size == 6
    assert prof.aspl == pytest.approx((6 * 1 + 6 * 2 + 3 * 3) / 15)
    assert prof.aspl == pytest.approx(1.8)


def test_two_disjoint_edges():
    prof = property_profile(Graph(4, [(0, 1), (2, 3)]))
    assert not prof.connected and prof.components == 2
    assert math.isinf(prof.diameter) and math.isinf(prof.radius)
    assert prof.aspl == 1.0
    assert abs(prof.fiedler) <= 1e-6


def test_single_node_and_empty():
    prof = property_profile(Graph(1))
    assert prof.connected and prof.diameter == 0 and prof.radius == 0
    assert math.isnan(prof.fiedler)
    with pytest.raises(DegenerateGraph):
        property_profile(Graph(0))


def test_fiedler_examples():
    for n in (3, 5, 8):
        assert fiedler_value(laplacian_spectrum(complete_graph(n))) == pytest.approx(n, abs=1e-10)
    assert fiedler_value(laplacian_spectrum(Graph(4, [(0, 1)]))) == pytest.approx(0, abs=1e-6)
    p3 = laplacian_spectrum(path_graph(3))
    # 3x3 brute force: P3 spectrum is {0, 1, 3}
    np.testing.assert_allclose(jacobi_eigenvalues(np.array([[1, -1, 0], [-1, 2, -1], [0, -1, 1]])), [0, 1, 3], atol=1e-12)
    assert fiedler_value(p3) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DimensionTooSmall):
        fiedler_value(laplacian_spectrum(Graph(1)))


def test_diameter_bounds_examples():
    lo, hi = diameter_bounds(4, 3, 4.0)
    assert lo == 0.25
    assert hi == 2 * math.ceil(math.sqrt(1.5) * 2) == 6
    lo, _ = diameter_bounds(3, 2, 1.0)
    assert lo == pytest.approx(4 / 3)
    with pytest.raises(DisconnectedGraph):
        diameter_bounds(4, 1, 0.0)


def test_diameter_bounds_sandwich_random():
    rng = np.random.default_rng(0)
    checked = 0
    while checked < 100:
        n = int(rng.integers(2, 40))
        g = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        prof = property_profile(g)
        if not prof.connected:
            continue
        lo, hi = graph_diameter_bounds(g)
        assert lo <= prof.diameter <= hi
        checked += 1


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 25), st.floats(0, 1), st.integers(0, 2**31))
def test_profile_matches_networkx(n, p, seed):
    g = random_graph(n, p, seed)
    prof = property_profile(g)
    ref = nx_profile(g)
    for k, v in ref.items():
        assert getattr(prof, k) == pytest.approx(v), k
    assert prof.components == zero_eigenvalue_multiplicity(laplacian_spectrum(g))
    if prof.connected:
        assert prof.radius <= prof.diameter <= 2 * prof.radius
        assert prof.periphery_size >= 1
        if n >= 2:
            assert prof.fiedler > 1e-6
    else:
        assert abs(prof.fiedler) <= 1e-6
    if g.num_edges:
        assert prof.aspl >= 1
        # ASPL is 1 exactly when every component is a clique
        cliques = all(
            g.has_edge(i, j)
            for i in range(n) for j in range(i + 1, n)
            if bfs_distances(g, i)[j] >= 0
        )
        assert (prof.aspl == 1) == cliques


def _profile(**kw):
    base = dict(connected=True, components=1, diameter=2, radius=1,
                periphery_size=11, aspl=1.42, fiedler=1.0)
    base.update(kw)
    return PropertyProfile(**base)


def test_property_delta_identical():
    d = property_delta(_profile(), _profile())
    assert d.connectivity == "preserved" and d.preserved
    assert d.components == d.diameter == d.radius == d.periphery_size == 0
    assert d.aspl == 0 and d.fiedler == 0


def test_property_delta_broken_and_restored():
    broken = _profile(connected=False, components=2, diameter=math.inf, radius=math.inf, fiedler=0.0)
    d = property_delta(_profile(), broken)
    assert d.connectivity == "broken"
    assert math.isinf(d.diameter) and d.diameter > 0
    assert property_delta(broken, _profile()).connectivity == "restored"
    assert property_delta(broken, broken).diameter == 0


def test_property_delta_dropedge_row_shape():
    # original row (2, 1, 11, 1.42) vs the DropEdge row (3, 2, 8, 1.64)
    after = _profile(diameter=3, radius=2, periphery_size=8, aspl=1.64)
    d = property_delta(_profile(), after)
    assert d.diameter == 1 and d.radius == 1 and d.periphery_size == -3
    assert d.aspl == pytest.approx(0.22)


def test_max_degree_used_in_bounds():
    g = complete_graph(4)
    assert graph_diameter_bounds(g) == pytest.approx(diameter_bounds(4, max_degree(g), 4.0))
