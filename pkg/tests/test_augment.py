import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualprism.augment import (
    AugmentConfig,
    band_indices,
    binarize,
    dp_augment,
    drop_edge,
    drop_node,
    num_augmented,
)
from dualprism.datasets import random_graph
from dualprism.errors import ConfigError, DegenerateGraph
from dualprism.graph import Graph, complete_graph, path_graph, toy_graph
from dualprism.properties import property_profile
from dualprism.spectral import laplacian_spectrum


def ego_graph(n, p, seed):
    """Hub joined to every leaf, leaves joined to each other with probability p."""
    r = np.random.default_rng(seed)
    edges = [(0, k) for k in range(1, n)]
    edges += [(i, j) for i in range(1, n) for j in range(i + 1, n) if r.random() < p]
    return Graph(n, edges)


@pytest.mark.parametrize("kwargs", [
    {"r_f": 1.5}, {"r_f": -0.1}, {"r_a": 2.0}, {"sigma": -1.0}, {"tau": 0.0},
    {"aug_type": "shuffle"}, {"band": "middle"}, {"noise_mode": "x"}, {"seed": -1},
])
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        AugmentConfig(**kwargs)


def test_num_augmented_floors():
    assert num_augmented(10, 0.25) == 2
    assert num_augmented(8, 0.5) == 4
    assert num_augmented(7, 1.0) == 7
    assert num_augmented(3, 0.0) == 0


def test_band_indices():
    np.testing.assert_array_equal(band_indices(8, 3, "high"), [7, 6, 5])
    np.testing.assert_array_equal(band_indices(8, 3, "low"), [0, 1, 2])
    assert band_indices(8, 0).size == 0


def test_binarize_examples():
    g = toy_graph()
    from dualprism.graph import adjacency
    assert binarize(adjacency(g), 0.5).edges == g.edges
    assert binarize(np.full((4, 4), 0.4) - np.diag([0.4] * 4), 0.5).num_edges == 0
    w = np.array([[0, 0.49, 0.51], [0.49, 0, 0.51], [0.51, 0.51, 0]])
    assert binarize(w, 0.5).edges == {(0, 2), (1, 2)}


def test_binarize_tie_goes_to_no_edge():
    w = np.array([[0.0, 0.5 + 1e-13], [0.5 + 1e-13, 0.0]])
    assert binarize(w, 0.5).num_edges == 0


def test_binarize_ignores_diagonal():
    w = np.eye(3) * 5
    assert binarize(w).num_edges == 0


@pytest.mark.parametrize("aug_type", ["noise", "mask"])
def test_zero_probability_is_identity(aug_type, er_graphs):
    cfg = AugmentConfig(aug_type, r_f=0.8, r_a=0.0, sigma=3.0)
    for g in er_graphs[:30]:
        rec = dp_augment(g, cfg)
        assert rec.augmented.edges == g.edges
        assert rec.edges_dropped == rec.edges_added == 0
        assert rec.delta_l2 == 0.0


def test_zero_sigma_is_identity(er_graphs):
    cfg = AugmentConfig("noise", r_f=1.0, r_a=1.0, sigma=0.0)
    for g in er_graphs[:30]:
        assert dp_augment(g, cfg).augmented.edges == g.edges


def test_full_mask_gives_edgeless_graph(er_graphs):
    cfg = AugmentConfig("mask", r_f=1.0, r_a=1.0)
    for g in er_graphs[:30]:
        rec = dp_augment(g, cfg, keep_laplacian=True)
        assert rec.augmented.num_edges == 0
        assert rec.augmented.n == g.n
        assert np.abs(rec.pre_binarization_laplacian).max() <= 1e-10


def test_label_and_features_pass_through():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], label=3, features=b"blob")
    rec = dp_augment(g, AugmentConfig("mask", 0.6, 1.0))
    assert rec.augmented.label == 3
    assert rec.augmented.features == b"blob"


def test_degenerate_graph():
    with pytest.raises(DegenerateGraph):
        dp_augment(Graph(0), AugmentConfig())


def test_rng_consumption_order():
    g = random_graph(15, 0.4, 3)
    cfg = AugmentConfig("noise", r_f=0.6, r_a=0.5, sigma=1.5, seed=99)
    rec = dp_augment(g, cfg)
    lam = laplacian_spectrum(g).eigenvalues
    rng = np.random.default_rng(99)
    n_a = 9
    m = rng.random(n_a) < 0.5
    eps = rng.standard_normal(n_a)
    expected = lam.copy()
    for i in range(1, n_a + 1):  # i-th largest eigenvalue
        k = 15 - i
        if m[i - 1]:
            expected[k] = max(0.0, lam[k] + 1.5 * eps[i - 1])
    np.testing.assert_array_equal(rec.new_eigenvalues, expected)


def test_mask_zeroes_exactly_the_selected_top_eigenvalues():
    g = random_graph(12, 0.5, 4)
    rec = dp_augment(g, AugmentConfig("mask", r_f=0.25, r_a=1.0))
    lam = rec.original_eigenvalues
    np.testing.assert_array_equal(rec.new_eigenvalues[:9], lam[:9])
    np.testing.assert_array_equal(rec.new_eigenvalues[9:], 0.0)
    np.testing.assert_array_equal(rec.perturbed, [9, 10, 11])


def test_relative_noise_mode():
    g = random_graph(10, 0.5, 5)
    cfg = AugmentConfig("noise", r_f=0.5, r_a=1.0, sigma=0.3, seed=2, noise_mode="relative")
    rec = dp_augment(g, cfg)
    rng = np.random.default_rng(2)
    rng.random(5)
    eps = rng.standard_normal(5)
    lam = rec.original_eigenvalues
    for i in range(5):
        k = 9 - i
        assert rec.new_eigenvalues[k] == max(0.0, 1 + 0.3 * eps[i]) * lam[k]


def test_low_band_leaves_high_band_untouched():
    g = random_graph(10, 0.5, 6)
    rec = dp_augment(g, AugmentConfig("mask", r_f=0.3, r_a=1.0, band="low"))
    np.testing.assert_array_equal(rec.new_eigenvalues[3:], rec.original_eigenvalues[3:])


def test_determinism(toy):
    cfg = AugmentConfig("noise", 0.5, 0.5, 2.0, seed=7)
    a, b = dp_augment(toy, cfg), dp_augment(toy, cfg)
    assert a.augmented == b.augmented
    assert np.array_equal(a.new_eigenvalues, b.new_eigenvalues)
    assert a.delta_l2 == b.delta_l2


@settings(max_examples=80, deadline=None)
@given(
    st.integers(1, 30), st.floats(0, 1), st.integers(0, 2**31),
    st.sampled_from(["noise", "mask"]), st.floats(0, 1), st.floats(0, 1), st.floats(0, 5),
)
def test_dp_invariants(n, p, seed, aug_type, r_f, r_a, sigma):
    g = random_graph(n, p, seed)
    rec = dp_augment(g, AugmentConfig(aug_type, r_f, r_a, sigma, seed=seed))
    n_a = num_augmented(n, r_f)
    lam, new = rec.original_eigenvalues, rec.new_eigenvalues
    assert np.array_equal(new[: n - n_a], lam[: n - n_a])
    assert np.all(new >= 0)
    top = np.sum((lam[n - n_a:] - new[n - n_a:]) ** 2)
    assert rec.delta_l2 ** 2 == pytest.approx(top, rel=1e-12, abs=1e-300)
    assert all(i != j for i, j in rec.augmented.edges)
    assert rec.edges_dropped == len(g.edges - rec.augmented.edges)
    assert rec.edges_added == len(rec.augmented.edges - g.edges)


def test_noise_delta_monotone_in_sigma():
    g = random_graph(20, 0.3, 11)
    means = []
    for sigma in (0.1, 0.5, 1.0, 2.0):
        cfg = AugmentConfig("noise", 0.5, 0.5, sigma)
        vals = [dp_augment(g, cfg, np.random.default_rng(s)).delta_l2 for s in range(200)]
        means.append(np.mean(vals))
    assert all(a <= b for a, b in zip(means, means[1:]))


def test_reference_configs_change_edges_but_keep_distances():
    noise = AugmentConfig("noise", r_f=0.5, r_a=0.5, sigma=7.0)
    mask = AugmentConfig("mask", r_f=0.4, r_a=0.3)
    stats = {"noise": [], "mask": [], "drop-edge": []}
    for s in range(100):
        g = ego_graph(12, 0.5, s)
        before = property_profile(g)
        recs = {
            "noise": dp_augment(g, noise, np.random.default_rng(s)),
            "mask": dp_augment(g, mask, np.random.default_rng(s)),
            "drop-edge": drop_edge(g, 0.2, np.random.default_rng(s)),
        }
        for k, rec in recs.items():
            after = property_profile(rec.augmented)
            stats[k].append((
                rec.edges_changed,
                before.connected == after.connected,
                before.diameter == after.diameter,
                before.radius == after.radius,
            ))
    arr = {k: np.array(v, dtype=float).mean(axis=0) for k, v in stats.items()}
    for k in ("noise", "mask"):
        assert arr[k][0] > 0
        assert arr[k][2] > arr["drop-edge"][2]
        assert arr[k][3] > arr["drop-edge"][3]


def test_drop_edge_examples(toy, rng):
    assert drop_edge(toy, 0.0, rng).augmented.edges == toy.edges
    full = drop_edge(toy, 1.0, rng)
    assert full.augmented.num_edges == 0 and full.augmented.n == 8
    rec = drop_edge(toy, 0.2, rng)
    assert rec.edges_dropped == 2
    assert toy.num_edges - rec.augmented.num_edges == 2
    assert rec.augmented.edges <= toy.edges
    with pytest.raises(ConfigError):
        drop_edge(toy, 1.2, rng)


def test_drop_edge_is_uniform():
    g = complete_graph(5)
    counts = np.zeros(10)
    edges = g.sorted_edges()
    for s in range(2000):
        rec = drop_edge(g, 0.3, np.random.default_rng(s))
        for k, e in enumerate(edges):
            counts[k] += e not in rec.augmented.edges
    # 3 of 10 dropped each time: expected 600 per edge, binomial sd ~ 20.5
    assert np.all(np.abs(counts - 600) < 5 * 20.5)


def test_drop_node_examples(rng):
    k4 = complete_graph(4)
    assert drop_node(k4, 0.0, rng).augmented == k4
    rec = drop_node(k4, 0.25, rng)
    assert rec.augmented.edges == complete_graph(3).edges and rec.augmented.n == 3
    assert rec.edges_dropped == 3


def test_drop_node_cut_vertex():
    p3 = path_graph(3)
    for s in range(100):
        rec = drop_node(p3, 1 / 3, np.random.default_rng(s))
        if rec.kept_nodes == (0, 2):
            assert rec.augmented.n == 2 and rec.augmented.num_edges == 0
            assert property_profile(rec.augmented).components == 2
            return
    pytest.fail("middle node never sampled")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 25), st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**31))
def test_baseline_sanity(n, p, ratio, seed):
    g = random_graph(n, p, seed)
    rng = np.random.default_rng(seed)
    assert drop_edge(g, ratio, rng).augmented.edges <= g.edges
    rec = drop_node(g, ratio, rng)
    assert rec.augmented.n == n - math.floor(ratio * n)
    old = {(rec.kept_nodes[i], rec.kept_nodes[j]) for i, j in rec.augmented.edges}
    assert old <= g.edges
