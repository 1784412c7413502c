import random
from itertools import combinations

import networkx as nx
import pytest

from wlplanar import families
from wlplanar.errors import ParseError, ValidationError
from wlplanar.graph import (
    Graph,
    atomic_type,
    connected_components,
    is_k_connected,
    parse_graph,
    permute,
    separates,
    serialize_graph,
)


def random_graph(n, p, rng):
    return Graph.from_edges(
        n, [e for e in combinations(range(n), 2) if rng.random() < p]
    )


# ---------------------------------------------------------------------------
# parse / serialize
# ---------------------------------------------------------------------------


def test_parse_edge_list_path():
    g = parse_graph("3\n0 1\n1 2")
    assert g.n == 3
    assert g.edges == ((0, 1), (1, 2))


def test_parse_rejects_loop():
    with pytest.raises(ValidationError):
        parse_graph("2\n0 0")


def test_parse_comments_and_duplicates():
    g = parse_graph("# a path\n3\n0 1\n1 0\n1 2\n")
    assert g.edges == ((0, 1), (1, 2))


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_graph("3\n0 1\nnonsense")
    assert "line 3" in str(err.value)


def test_serialize_k1():
    assert serialize_graph(Graph.from_edges(1, [])) == "1\n"


def test_serialize_sorted_edges():
    g = Graph.from_edges(3, [(1, 2), (0, 1)])
    assert serialize_graph(g) == "3\n0 1\n1 2\n"


def test_graph6_k4_matches_reference():
    k4 = families.complete(4)
    assert serialize_graph(k4, "graph6").strip() == "C~"
    assert nx.to_graph6_bytes(nx.complete_graph(4), header=False).decode().strip() == "C~"


@pytest.mark.parametrize("seed", range(10))
def test_graph6_round_trip_against_networkx(seed):
    rng = random.Random(seed)
    for _ in range(10):
        n = rng.randint(0, 40)
        g = random_graph(n, rng.random(), rng)
        s = serialize_graph(g, "graph6").strip()
        # reference decoder agrees with ours
        h = nx.from_graph6_bytes(s.encode())
        assert set(h.edges()) == {tuple(e) for e in g.edges}
        assert parse_graph(s, "graph6") == g


def test_graph6_header_is_optional():
    s = ">>graph6<<C~"
    assert parse_graph(s, "graph6") == families.complete(4)


@pytest.mark.parametrize("fmt", ["edge-list", "graph6"])
def test_round_trip_random_graphs(fmt):
    rng = random.Random(7)
    for _ in range(100):
        g = random_graph(rng.randint(0, 15), rng.random(), rng)
        assert parse_graph(serialize_graph(g, fmt), fmt) == g


# ---------------------------------------------------------------------------
# components / separators / connectivity
# ---------------------------------------------------------------------------


def test_components_two_triangles():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    comps = connected_components(g)
    assert sorted(sorted(c) for c in comps) == [[0, 1, 2], [3, 4, 5]]


def test_components_k4_and_edgeless():
    assert len(connected_components(families.complete(4))) == 1
    assert len(connected_components(Graph.from_edges(5, []))) == 5


def test_separates_path():
    g = families.path(3)
    assert separates(g, {1}, {0, 2})
    assert not separates(g, {0}, {1, 2})


def test_separates_k4_never_with_two():
    g = families.complete(4)
    for s in combinations(range(4), 2):
        assert not separates(g, set(s), set(range(4)) - set(s))
    for s in range(4):
        assert not separates(g, {s}, set(range(4)) - {s})


def test_separates_superset_of_targets_is_false():
    g = families.path(3)
    assert not separates(g, {0, 1, 2}, {0, 2})
    assert not separates(g, {0, 2}, {0, 2})


def brute_separates(g, s, x):
    s = set(s)
    comps = connected_components(g, removed=s)
    return sum(1 for c in comps if c & (set(x) - s)) >= 2


def test_separates_matches_brute_force_and_monotonicity():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng.randint(2, 8), rng.random(), rng)
        verts = list(range(g.n))
        s = set(rng.sample(verts, rng.randint(0, min(3, g.n))))
        x = set(rng.sample(verts, rng.randint(0, g.n)))
        assert separates(g, s, x) == brute_separates(g, s, x)
        if separates(g, s, x):
            extra = [v for v in verts if v not in s and v not in x]
            if extra:
                s2 = s | {rng.choice(extra)}
                assert separates(g, s2, x) == brute_separates(g, s2, x)


def brute_k_connected(g, k):
    if g.n <= k:
        return False
    from wlplanar.graph import is_connected

    if not is_connected(g):
        return False
    for size in range(1, k):
        for s in combinations(range(g.n), size):
            comps = connected_components(g, removed=set(s))
            if len(comps) != 1:
                return False
    return True


def test_k_connected_examples():
    assert is_k_connected(families.complete(4), 3)
    assert not is_k_connected(families.cycle(5), 3)
    assert not is_k_connected(families.complete(3), 3)  # order must exceed k
    assert is_k_connected(families.cycle(5), 2)
    assert not is_k_connected(families.path(4), 2)


def test_k_connected_matches_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        g = random_graph(rng.randint(1, 7), rng.random(), rng)
        for k in (1, 2, 3):
            assert is_k_connected(g, k) == brute_k_connected(g, k), (g.edges, k)


# ---------------------------------------------------------------------------
# atomic types
# ---------------------------------------------------------------------------


def test_atomic_type_edge():
    g = families.complete(2)
    t = atomic_type(g, (0, 1))
    assert t.adjacencies == frozenset({(1, 2)})
    assert t.equalities == frozenset()


def test_atomic_type_repeat():
    g = families.path(3)
    t = atomic_type(g, (1, 1))
    assert t.equalities == frozenset({(1, 2)})
    assert t.adjacencies == frozenset()


def test_atomic_type_c4_triple():
    g = families.cycle(4)  # 0-1-2-3-0
    t = atomic_type(g, (0, 1, 3))
    assert t.adjacencies == frozenset({(1, 2), (1, 3)})
    assert t.equalities == frozenset()


def test_atomic_type_permutation_invariant():
    rng = random.Random(5)
    for _ in range(50):
        g = random_graph(rng.randint(2, 9), rng.random(), rng)
        pi = list(range(g.n))
        rng.shuffle(pi)
        h = permute(g, pi)
        tup = tuple(rng.randrange(g.n) for _ in range(rng.randint(1, 3)))
        assert atomic_type(g, tup) == atomic_type(h, tuple(pi[v] for v in tup))
