import random
from itertools import combinations, product

import pytest

from wlplanar import families
from wlplanar.errors import PreconditionError
from wlplanar.graph import Graph, connected_components, permute, separates
from wlplanar.oracle import (
    brute_force_isomorphic,
    enumerate_separators,
    naive_colour_refinement,
    pebble_game_equivalent,
    verify_mapping,
)


def random_graph(n, p, rng):
    return Graph.from_edges(
        n, [e for e in combinations(range(n), 2) if rng.random() < p]
    )


def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


# ---------------------------------------------------------------------------
# brute_force_isomorphic
# ---------------------------------------------------------------------------


def test_c6_not_isomorphic_to_two_triangles():
    assert not brute_force_isomorphic(families.cycle(6), two_triangles())


def test_permuted_graph_has_verified_witness():
    rng = random.Random(0)
    for _ in range(30):
        g = random_graph(rng.randint(1, 9), rng.random(), rng)
        pi = list(range(g.n))
        rng.shuffle(pi)
        h = permute(g, pi)
        witness = brute_force_isomorphic(g, h)
        assert witness
        assert verify_mapping(g, h, witness.mapping)


def test_k4_minus_edge_vs_c4():
    k4e = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert not brute_force_isomorphic(k4e, families.cycle(4))


def test_symmetric_and_reflexive():
    rng = random.Random(1)
    for _ in range(20):
        g = random_graph(rng.randint(1, 8), rng.random(), rng)
        h = random_graph(g.n, rng.random(), rng)
        assert bool(brute_force_isomorphic(g, g))
        assert bool(brute_force_isomorphic(g, h)) == bool(brute_force_isomorphic(h, g))


def test_pinned_mapping_respected():
    g = families.path(3)  # automorphism must fix the middle
    w = brute_force_isomorphic(g, g, pinned=((0,), (2,)))
    assert w and w.mapping[0] == 2
    assert not brute_force_isomorphic(g, g, pinned=((1,), (0,)))


def test_size_cap_enforced():
    g = families.path(13)
    with pytest.raises(PreconditionError):
        brute_force_isomorphic(g, g)


# ---------------------------------------------------------------------------
# pebble game
# ---------------------------------------------------------------------------


def test_identity_position_survives():
    g = families.cycle(5)
    for r in range(4):
        assert pebble_game_equivalent(g, (0, 1), g, (0, 1), 2, r)


def test_different_order_fails_immediately():
    assert not pebble_game_equivalent(
        families.path(3), (0,), families.path(4), (0,), 1, 0
    )


def test_c6_vs_two_triangles_some_position_dies():
    g, h = families.cycle(6), two_triangles()
    died = False
    for a in product(range(6), repeat=2):
        for b in product(range(6), repeat=2):
            if not pebble_game_equivalent(g, a, h, b, 2, 2):
                died = True
                break
        if died:
            break
    assert died


def test_pruning_only_removes_survivals():
    # Pruning restricts the bijections available, so pruned survival must
    # imply unpruned survival.  The converse fails for small round budgets
    # (refinement classes overconstrain early rounds), hence prune=False is
    # the ground-truth default.
    rng = random.Random(2)
    graphs = [random_graph(4, rng.random(), rng) for _ in range(6)]
    graphs += [families.cycle(4), families.path(4), families.complete(4)]
    for g in graphs:
        for h in graphs:
            if g.n != h.n:
                continue
            for _ in range(8):
                a = tuple(rng.randrange(g.n) for _ in range(2))
                b = tuple(rng.randrange(h.n) for _ in range(2))
                r = rng.randint(0, 3)
                if pebble_game_equivalent(g, a, h, b, 2, r, prune=True):
                    assert pebble_game_equivalent(g, a, h, b, 2, r)


# ---------------------------------------------------------------------------
# separator enumeration
# ---------------------------------------------------------------------------


def test_k4_has_no_small_separators():
    assert enumerate_separators(families.complete(4), {0, 1, 2, 3}) == []


def test_p3_separators():
    assert enumerate_separators(families.path(3), {0, 2}) == [frozenset({1})]


def test_triangle_has_no_separators():
    assert enumerate_separators(families.complete(3), {0, 1, 2}) == []


def test_enumeration_is_powerset_filter():
    rng = random.Random(4)
    for _ in range(25):
        g = random_graph(rng.randint(2, 8), rng.random(), rng)
        x = set(rng.sample(range(g.n), rng.randint(1, g.n)))
        expect = []
        for size in (0, 1, 2):
            for s in combinations(range(g.n), size):
                if separates(g, frozenset(s), x):
                    expect.append(frozenset(s))
        assert enumerate_separators(g, x) == expect


# ---------------------------------------------------------------------------
# naive colour refinement
# ---------------------------------------------------------------------------


def test_regular_connected_graph_single_class():
    for g in (families.cycle(7), families.complete(5), families.prism(4)):
        assert naive_colour_refinement(g) == [frozenset(range(g.n))]


def test_star_two_classes():
    classes = naive_colour_refinement(families.star(3))
    assert sorted(len(c) for c in classes) == [1, 3]


def test_path_partition():
    classes = naive_colour_refinement(families.path(4))
    assert sorted(sorted(c) for c in classes) == [[0, 3], [1, 2]]
