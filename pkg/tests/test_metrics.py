import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexgraph.graph_model import Graph, all_graphs, apply_vertex_permutation
from simplexgraph.isomorphism import is_isomorphic
from simplexgraph.metrics import (
    ScaleError,
    SizeMismatchError,
    ggd,
    ggd_exact,
    ggd_heuristic,
    isomorphism_classes,
    mapping_cost,
    telomorph_distance,
)

from conftest import C4, PAW, complete, cycle, path, star
from oracles import brute_ggd, brute_isomorphic


def _same_size_graphs(n, m):
    return [g for g in all_graphs(n) if g.m == m]


# frozen from oracles.brute_ggd (all 4! vertex bijections x all 4! edge bijections)
GGD_C4_PAW = 0.5


def test_ggd_c4_paw_frozen(backend):
    assert brute_ggd(C4, PAW) == pytest.approx(GGD_C4_PAW, abs=1e-12)
    r = ggd_exact(C4, PAW)
    assert r.distance == pytest.approx(GGD_C4_PAW, abs=1e-12)
    assert r.exact
    assert r.recompute(C4, PAW) == pytest.approx(r.distance, abs=1e-12)
    assert r.normalized == pytest.approx(GGD_C4_PAW / 8)
    assert ggd_exact(PAW, C4).distance == pytest.approx(GGD_C4_PAW, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4])
def test_ggd_matches_brute_force(n, backend):
    for m in range(n * (n - 1) // 2 + 1):
        classes = isomorphism_classes(n, m)
        for g, h in itertools.product(classes, repeat=2):
            assert ggd_exact(g, h).distance == pytest.approx(brute_ggd(g, h), abs=1e-12)


def test_ggd_matches_brute_force_n5_sample(rng):
    for m in (3, 4, 5):
        classes = isomorphism_classes(5, m)
        for _ in range(4):
            g, h = (classes[i] for i in rng.choice(len(classes), 2))
            assert ggd_exact(g, h).distance == pytest.approx(brute_ggd(g, h), abs=1e-12)


def test_ggd_zero_on_isomorphic(rng):
    for g in (C4, PAW, cycle(6), star(5)):
        h = apply_vertex_permutation(g, rng.permutation(g.n))
        r = ggd_exact(g, h)
        assert r.distance <= 1e-9
        assert apply_vertex_permutation(g, r.optimal_mapping) == h


@pytest.mark.parametrize("n", [2, 3, 4])
def test_identity_of_indiscernibles(n):
    for m in range(n * (n - 1) // 2 + 1):
        gs = _same_size_graphs(n, m)
        for g, h in itertools.combinations_with_replacement(gs, 2):
            d = ggd_exact(g, h).distance
            if brute_isomorphic(g, h):
                assert d <= 1e-9
            else:
                assert d > 1e-6


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.data())
def test_symmetry_and_relabeling_invariance(n, data):
    pairs = n * (n - 1) // 2
    m = data.draw(st.integers(0, pairs))
    e1 = data.draw(st.lists(st.sampled_from(list(itertools.combinations(range(n), 2))), min_size=m, max_size=m, unique=True))
    e2 = data.draw(st.lists(st.sampled_from(list(itertools.combinations(range(n), 2))), min_size=m, max_size=m, unique=True))
    g, h = Graph(n, tuple(e1)), Graph(n, tuple(e2))
    d = ggd_exact(g, h).distance
    assert abs(d - ggd_exact(h, g).distance) < 1e-9
    p, q = data.draw(st.permutations(range(n))), data.draw(st.permutations(range(n)))
    d2 = ggd_exact(apply_vertex_permutation(g, p), apply_vertex_permutation(h, q)).distance
    assert abs(d - d2) < 1e-9


def test_ggd_optimal_mapping_attains_distance(rng):
    for _ in range(10):
        g = Graph(5, tuple(itertools.combinations(range(5), 2))[:6])
        h = apply_vertex_permutation(Graph(5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2))), rng.permutation(5))
        r = ggd_exact(g, h)
        assert mapping_cost(g, h, r.optimal_mapping) == pytest.approx(r.distance, abs=1e-12)
        # no other bijection does better
        best = min(mapping_cost(g, h, pi) for pi in itertools.permutations(range(5)))
        assert r.distance <= best + 1e-12


def test_heuristic_never_below_exact(rng):
    for n in (4, 5):
        for _ in range(10):
            m = int(rng.integers(1, n * (n - 1) // 2))
            gs = _same_size_graphs(n, m)
            g, h = (gs[i] for i in rng.choice(len(gs), 2))
            ex = ggd_exact(g, h)
            he = ggd_heuristic(g, h, restarts=8, seed=3)
            assert not he.exact
            assert he.distance >= ex.distance - 1e-12
            assert he.recompute(g, h) == pytest.approx(he.distance, abs=1e-12)


def test_heuristic_finds_zero_on_relabeled_copy():
    h = apply_vertex_permutation(C4, (2, 0, 3, 1))
    assert ggd_heuristic(C4, h).distance <= 1e-9


def test_ggd_dispatch_and_errors():
    assert ggd(C4, PAW, "exact").distance == pytest.approx(0.5)
    assert ggd(C4, PAW, "heuristic").distance >= 0.5 - 1e-12
    with pytest.raises(ValueError):
        ggd(C4, PAW, "fast")
    with pytest.raises(SizeMismatchError):
        ggd_exact(C4, path(4))
    with pytest.raises(SizeMismatchError):
        ggd_exact(C4, cycle(5))
    with pytest.raises(ScaleError):
        ggd_exact(cycle(10), cycle(10))


def test_ggd_trivial_sizes():
    assert ggd_exact(Graph(0, ()), Graph(0, ())).distance == 0.0
    assert ggd_exact(Graph(3, ()), Graph(3, ())).distance == 0.0
    assert ggd_heuristic(Graph(0, ()), Graph(0, ())).distance == 0.0


# --- isomorphism classes and telomorphism --------------------------------------

@pytest.mark.parametrize(
    "n,counts",
    [(3, [1, 1, 1, 1]), (4, [1, 1, 2, 3, 2, 1, 1])],
)
def test_isomorphism_class_counts(n, counts):
    assert [len(isomorphism_classes(n, m)) for m in range(len(counts))] == counts


def test_isomorphism_classes_total_n5():
    assert sum(len(isomorphism_classes(5, m)) for m in range(11)) == 34


def test_classes_pairwise_non_isomorphic():
    reps = isomorphism_classes(5, 5)
    for g, h in itertools.combinations(reps, 2):
        assert not is_isomorphic(g, h).decision


def test_telomorph_single_class_is_zero():
    d, w = telomorph_distance(path(2))
    assert d == 0.0 and w == path(2)
    d, w = telomorph_distance(complete(3))
    assert d == 0.0 and w == complete(3)


def test_telomorph_c4_frozen():
    # n=4, m=4 has two classes (C4 and the paw), at brute-force GGD 0.5
    d, w = telomorph_distance(C4)
    assert d == pytest.approx(brute_ggd(C4, PAW), abs=1e-12)
    assert is_isomorphic(w, PAW).decision
    d, w = telomorph_distance(PAW)
    assert d == pytest.approx(0.5, abs=1e-12)
    assert is_isomorphic(w, C4).decision


def test_telomorph_is_max_over_classes():
    g = path(4)
    d, w = telomorph_distance(g)
    others = [brute_ggd(g, h) for h in isomorphism_classes(4, 3)]
    assert d == pytest.approx(max(others), abs=1e-12)
    assert ggd_exact(g, w).distance == pytest.approx(d, abs=1e-12)


def test_telomorph_errors():
    with pytest.raises(ScaleError):
        telomorph_distance(cycle(8))
    with pytest.raises(ValueError):
        telomorph_distance(C4, mode="heuristic")
