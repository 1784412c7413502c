import random

import networkx as nx
import pytest

from wlplanar import families
from wlplanar.errors import PreconditionError
from wlplanar.graph import Graph, is_k_connected, permute
from wlplanar.planar import (
    NonPlanarWitness,
    RotationSystem,
    angle_system,
    angle_walk,
    faces,
    identification_lines,
    identify_vertices,
    planar_embed,
    rotation_lines,
    whitney_is_facial,
)


def cube():
    edges = [(a, b) for a in range(8) for b in range(a + 1, 8)
             if bin(a ^ b).count("1") == 1]
    return Graph.from_edges(8, edges)


def octahedron():
    # K2,2,2: opposite pairs (0,1), (2,3), (4,5)
    edges = [(a, b) for a in range(6) for b in range(a + 1, 6)
             if {a, b} not in ({0, 1}, {2, 3}, {4, 5})]
    return Graph.from_edges(6, edges)


def small_3connected_corpus():
    return [
        families.complete(4),
        octahedron(),
        cube(),
        families.wheel(5),
        families.wheel(6),
        families.wheel(7),
        families.prism(3),
        families.prism(4),
        families.prism(5),
    ]


def normalize_cycle(cyc):
    cyc = list(cyc)
    best = None
    for seq in (cyc, cyc[::-1]):
        for i in range(len(seq)):
            rot = tuple(seq[i:] + seq[:i])
            if best is None or rot < best:
                best = rot
    return best


# ---------------------------------------------------------------------------
# embeddings and faces
# ---------------------------------------------------------------------------


def test_k4_has_four_faces():
    g = families.complete(4)
    rs = planar_embed(g)
    assert isinstance(rs, RotationSystem)
    assert len(faces(g, rs)) == 4


def test_c6_has_two_faces():
    g = families.cycle(6)
    rs = planar_embed(g)
    assert len(faces(g, rs)) == 2


def test_single_edge_one_degenerate_walk():
    g = families.path(2)
    rs = planar_embed(g)
    walks = faces(g, rs)
    assert len(walks) == 1
    assert len(walks[0]) == 2


def test_k5_yields_witness():
    w = planar_embed(families.complete(5))
    assert isinstance(w, NonPlanarWitness)
    sub = nx.Graph(list(w.edges))
    assert not nx.check_planarity(sub)[0]


def test_k33_yields_witness():
    g = Graph.from_edges(6, [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)])
    assert isinstance(planar_embed(g), NonPlanarWitness)


def test_disconnected_refused():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionError):
        planar_embed(g)


def test_euler_and_edge_partition_on_corpus():
    graphs = small_3connected_corpus() + [
        families.cycle(6),
        families.path(5),
        families.maximal_planar_random(30, seed=2),
        families.planar_random(25, seed=3),
    ]
    for g in graphs:
        rs = planar_embed(g)
        walks = faces(g, rs)
        assert g.n - g.m + len(walks) == 2, "Euler count failed"
        assert sum(len(w) for w in walks) == 2 * g.m


# ---------------------------------------------------------------------------
# Whitney criterion
# ---------------------------------------------------------------------------


def test_k4_triangles_facial():
    g = families.complete(4)
    assert whitney_is_facial(g, (0, 1, 2))


def test_cube_equator_not_facial():
    g = cube()
    hexagon = (0, 1, 3, 7, 6, 4)
    # induced 6-cycle whose removal isolates the two antipodal vertices 2, 5
    assert whitney_is_facial(g, hexagon) is False


def test_octahedron_face_triangle():
    g = octahedron()
    tri = next(
        (a, b, c)
        for a in range(6) for b in range(6) for c in range(6)
        if a < b < c and g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
    )
    assert whitney_is_facial(g, tri)


def test_whitney_rejects_non_cycles():
    g = families.complete(4)
    with pytest.raises(PreconditionError):
        whitney_is_facial(g, (0, 1))
    with pytest.raises(PreconditionError):
        whitney_is_facial(g, (0, 1, 0))


def all_cycles(g):
    nxg = nx.Graph(list(g.edges))
    nxg.add_nodes_from(range(g.n))
    return [c for c in nx.simple_cycles(nxg) if len(c) >= 3]


@pytest.mark.parametrize("g", small_3connected_corpus(), ids=lambda g: f"n{g.n}m{g.m}")
def test_whitney_cycles_equal_traced_faces(g):
    rs = planar_embed(g)
    traced = {normalize_cycle(w) for w in faces(g, rs)}
    positive = {
        normalize_cycle(c) for c in all_cycles(g) if whitney_is_facial(g, c)
    }
    assert positive == traced


# ---------------------------------------------------------------------------
# angle systems
# ---------------------------------------------------------------------------


def test_k4_has_24_angles():
    g = families.complete(4)
    asys = angle_system(g, planar_embed(g))
    assert len(asys.angles) == 24


def test_octahedron_has_48_angles():
    g = octahedron()
    asys = angle_system(g, planar_embed(g))
    assert len(asys.angles) == 48


def test_angle_count_is_four_m():
    for g in small_3connected_corpus():
        asys = angle_system(g, planar_embed(g))
        assert len(asys.angles) == 4 * g.m


def test_c6_refused():
    g = families.cycle(6)
    with pytest.raises(PreconditionError):
        angle_system(g, planar_embed(g))


def test_successors_are_bijections():
    for g in small_3connected_corpus():
        asys = angle_system(g, planar_embed(g))
        for succ in (asys.aligned_next, asys.wedge_next):
            assert set(succ) == set(asys.angles)
            assert set(succ.values()) == set(asys.angles)


def test_wedge_orbit_length_is_middle_degree():
    # the wedge successor rotates around the middle vertex, one notch per
    # step, so its orbit through an angle has the middle vertex's degree
    for g in small_3connected_corpus():
        asys = angle_system(g, planar_embed(g))
        for a in sorted(asys.angles)[:12]:
            cur, steps = asys.wedge_next[a], 1
            while cur != a:
                assert cur[1] == a[1]
                cur = asys.wedge_next[cur]
                steps += 1
            assert steps == g.degree(a[1])


def test_wedge_after_reversal_is_involution():
    for g in small_3connected_corpus():
        asys = angle_system(g, planar_embed(g))
        for a in asys.angles:
            b = asys.wedge_next[(a[2], a[1], a[0])]
            assert asys.wedge_next[(b[2], b[1], b[0])] == a


def test_wedge_signature_matches_definition():
    g = families.complete(4)
    asys = angle_system(g, planar_embed(g))
    for a in asys.angles:
        w = asys.wedge_next[a]
        assert w[0] == a[2] and w[1] == a[1] and w[2] != a[0]


def test_aligned_cycles_around_triangular_faces():
    g = families.complete(4)
    asys = angle_system(g, planar_embed(g))
    for a in asys.angles:
        assert angle_walk(asys, a, "AAA") == a


def test_angle_walk_identity_and_errors():
    g = families.complete(4)
    asys = angle_system(g, planar_embed(g))
    a = next(iter(asys.angles))
    assert angle_walk(asys, a, "") == a
    with pytest.raises(PreconditionError):
        angle_walk(asys, (0, 0, 0), "A")
    with pytest.raises(PreconditionError):
        angle_walk(asys, a, "AX")


# ---------------------------------------------------------------------------
# vertex identification
# ---------------------------------------------------------------------------


def check_identification(g, v1, v2):
    im = identify_vertices(g, v1, v2)
    rs = planar_embed(g)
    asys = angle_system(g, rs)
    assert set(im.directions) == set(range(g.n)) - set(im.anchor)
    strings = list(im.directions.values())
    assert len(set(strings)) == len(strings), "collision in direction strings"
    for w, delta in im.directions.items():
        assert len(delta) <= g.n
        assert angle_walk(asys, im.anchor, delta)[2] == w
    return im


def test_k4_identification():
    g = families.complete(4)
    im = check_identification(g, 0, 1)
    assert len(im.directions) == 1  # only one non-anchor vertex


def test_wheel_identification_every_edge():
    g = families.wheel(6)
    for u, v in g.edges:
        check_identification(g, u, v)
        check_identification(g, v, u)


def test_octahedron_identification():
    g = octahedron()
    for u, v in g.edges[:4]:
        im = check_identification(g, u, v)
        assert len(im.directions) == 3


def test_identification_on_random_triangulations():
    rng = random.Random(9)
    for seed in range(3):
        g = families.maximal_planar_random(rng.randint(8, 20), seed=seed)
        assert is_k_connected(g, 3)
        u, v = g.edges[rng.randrange(g.m)]
        check_identification(g, u, v)


def test_identification_requires_edge():
    g = families.wheel(5)
    non_edge = next(
        (a, b) for a in range(g.n) for b in range(g.n)
        if a != b and not g.has_edge(a, b)
    )
    with pytest.raises(PreconditionError):
        identify_vertices(g, *non_edge)


def test_serialization_round_shapes():
    g = families.complete(4)
    rs = planar_embed(g)
    lines = rotation_lines(rs).strip().splitlines()
    assert len(lines) == 4 and lines[0].startswith("rot 0:")
    im = identify_vertices(g, 0, 1)
    id_lines = identification_lines(im).strip().splitlines()
    assert id_lines[0].startswith("anchor:")


def test_permutation_gives_same_angle_count():
    rng = random.Random(4)
    g = families.prism(4)
    pi = list(range(g.n))
    rng.shuffle(pi)
    h = permute(g, pi)
    a1 = angle_system(g, planar_embed(g))
    a2 = angle_system(h, planar_embed(h))
    assert len(a1.angles) == len(a2.angles)
    mapped = {(pi[a], pi[b], pi[c]) for a, b, c in a1.angles}
    assert mapped == set(a2.angles)
