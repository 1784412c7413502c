"""Planarity, combinatorial embeddings, facial walks, the Whitney criterion,
angle systems, and direction-string vertex identification for 3-connected
planar graphs.

An angle is an ordered triple (w, v, w') of consecutive boundary vertices at v
in some facial walk; both traversal orientations of every walk contribute, so
an edge's two directed versions each carry one angle per incident face.  The
aligned successor continues the same oriented walk; the wedge successor of
(v1, v2, v3) is the unique angle (v3, v2, x) with x != v1, read from the other
face at the edge v2v3.  Note the wedge map rotates around the middle vertex:
its orbits have length deg(v2), it is not an involution.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

from .errors import PreconditionError, ValidationError
from .graph import Graph, is_connected, is_k_connected

Angle = tuple[int, int, int]


@dataclass(frozen=True)
class RotationSystem:
    """Per-vertex cyclic order of incident neighbours."""

    rotation: tuple[tuple[int, ...], ...]

    def order_at(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]


@dataclass(frozen=True)
class NonPlanarWitness:
    """Edge set of a K5 or K3,3 topological subgraph."""

    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class AngleSystem:
    angles: frozenset[Angle]
    aligned_next: dict[Angle, Angle]
    wedge_next: dict[Angle, Angle]


@dataclass(frozen=True)
class IdentificationMap:
    anchor: tuple[int, int, int]
    directions: dict[int, str]


def planar_embed(g: Graph):
    """Rotation system of a planar embedding, or a NonPlanarWitness."""
    if not is_connected(g):
        raise PreconditionError("planar_embed requires a connected graph")
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    ok, cert = nx.check_planarity(nxg, counterexample=True)
    if not ok:
        witness = tuple(sorted(tuple(sorted(e)) for e in cert.edges()))
        return NonPlanarWitness(witness)
    data = cert.get_data()
    return RotationSystem(tuple(tuple(data.get(v, ())) for v in range(g.n)))


def _validate_rotation(g: Graph, rs: RotationSystem) -> None:
    if len(rs.rotation) != g.n:
        raise ValidationError("rotation system has wrong vertex count")
    for v in range(g.n):
        if set(rs.rotation[v]) != set(g.adjacency[v]) or len(rs.rotation[v]) != g.degree(v):
            raise ValidationError(f"rotation at {v} is not a cyclic order of its neighbours")


def faces(g: Graph, rs: RotationSystem) -> list[tuple[int, ...]]:
    """Facial walks: each directed edge lies on exactly one closed walk.  The
    walk for a single edge traverses it in both directions (closed walk of
    length 2)."""
    _validate_rotation(g, rs)
    succ = {}
    for v in range(g.n):
        order = rs.rotation[v]
        for i, u in enumerate(order):
            succ[(v, u)] = order[(i + 1) % len(order)]
    walks = []
    seen: set[tuple[int, int]] = set()
    for u, v in sorted(succ):
        if (u, v) in seen:
            continue
        walk = []
        a, b = u, v
        while (a, b) not in seen:
            seen.add((a, b))
            walk.append(a)
            a, b = b, succ[(b, a)]
        walks.append(tuple(walk))
    return walks


def euler_face_count(g: Graph, rs: RotationSystem) -> int:
    return len(faces(g, rs))


def _as_cycle(g: Graph, c) -> tuple[int, ...]:
    cyc = tuple(c)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise PreconditionError(f"{c!r} is not a cycle")
    for i, v in enumerate(cyc):
        if not g.has_edge(v, cyc[(i + 1) % len(cyc)]):
            raise PreconditionError(f"{c!r} is not a cycle: missing edge")
    return cyc


def whitney_is_facial(g: Graph, c) -> bool:
    """Facial-cycle criterion for 3-connected planar graphs: the cycle is
    induced and its removal leaves a connected (possibly empty) graph."""
    cyc = _as_cycle(g, c)
    cset = set(cyc)
    k = len(cyc)
    induced_edges = sum(1 for u in cyc for w in g.adjacency[u] if w in cset) // 2
    if induced_edges != k:
        return False  # a chord makes it non-induced
    rest = [v for v in range(g.n) if v not in cset]
    if not rest:
        return True
    seen = {rest[0]}
    queue = deque([rest[0]])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in cset and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(rest)


# ---------------------------------------------------------------------------
# Angle systems
# ---------------------------------------------------------------------------


def angle_system(g: Graph, rs: RotationSystem) -> AngleSystem:
    """Angles from both orientations of every facial walk, with the aligned
    and wedge successor maps.  Requires g 3-connected (uniqueness of the
    successors needs it)."""
    if not is_k_connected(g, 3):
        raise PreconditionError("angle systems need a 3-connected graph")
    walks = faces(g, rs)
    angles: set[Angle] = set()
    aligned: dict[Angle, Angle] = {}
    for walk in walks:
        for oriented in (walk, walk[::-1]):
            L = len(oriented)
            for i in range(L):
                a = (oriented[i], oriented[(i + 1) % L], oriented[(i + 2) % L])
                b = (oriented[(i + 1) % L], oriented[(i + 2) % L], oriented[(i + 3) % L])
                angles.add(a)
                aligned[a] = b
    by_first_two: dict[tuple[int, int], list[int]] = {}
    for a in angles:
        by_first_two.setdefault((a[0], a[1]), []).append(a[2])
    wedge: dict[Angle, Angle] = {}
    for a in angles:
        cands = [x for x in by_first_two[(a[2], a[1])] if x != a[0]]
        if len(cands) != 1:
            raise ValidationError(f"wedge successor of {a} is not unique: {cands}")
        wedge[a] = (a[2], a[1], cands[0])
    frozen = frozenset(angles)
    if set(aligned) != angles or set(aligned.values()) != angles:
        raise ValidationError("aligned successor is not a bijection on the angles")
    if set(wedge.values()) != angles:
        raise ValidationError("wedge successor is not a bijection on the angles")
    return AngleSystem(frozen, aligned, wedge)


def angle_walk(asys: AngleSystem, start: Angle, delta: str) -> Angle:
    """Fold the successor maps over a direction string of 'A' and 'W'."""
    if start not in asys.angles:
        raise PreconditionError(f"{start} is not an angle")
    cur = start
    for ch in delta:
        if ch == "A":
            cur = asys.aligned_next[cur]
        elif ch == "W":
            cur = asys.wedge_next[cur]
        else:
            raise PreconditionError(f"direction letter {ch!r} not in {{A, W}}")
    return cur


def identify_vertices(g: Graph, v1: int, v2: int) -> IdentificationMap:
    """Per-vertex direction strings from the anchor angle (v1, v2, v3), v3
    the least vertex completing an angle; each string is the
    lexicographically-least shortest walk ending at its vertex as third
    coordinate."""
    if not g.has_edge(v1, v2):
        raise PreconditionError(f"({v1},{v2}) is not an edge")
    rs = planar_embed(g)
    if isinstance(rs, NonPlanarWitness):
        raise PreconditionError("identify_vertices needs a planar graph")
    asys = angle_system(g, rs)
    thirds = sorted(a[2] for a in asys.angles if a[0] == v1 and a[1] == v2)
    v3 = thirds[0]
    anchor = (v1, v2, v3)
    skip = {v1, v2, v3}
    directions: dict[int, str] = {}
    seen = {anchor}
    queue = deque([(anchor, "")])
    while queue and len(directions) < g.n - len(skip):
        cur, word = queue.popleft()
        w = cur[2]
        if w not in skip and w not in directions:
            directions[w] = word
        for letter, nxt in (("A", asys.aligned_next[cur]), ("W", asys.wedge_next[cur])):
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + letter))
    missing = set(range(g.n)) - skip - set(directions)
    if missing:
        raise ValidationError(f"angle walks never reach {sorted(missing)}")
    return IdentificationMap(anchor, directions)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def rotation_lines(rs: RotationSystem) -> str:
    out = []
    for v, order in enumerate(rs.rotation):
        out.append(f"rot {v}: {','.join(map(str, order))}")
    return "\n".join(out) + "\n"


def identification_lines(im: IdentificationMap) -> str:
    out = [f"anchor: {im.anchor[0]},{im.anchor[1]},{im.anchor[2]}"]
    for w in sorted(im.directions):
        out.append(f"id {w}: {im.directions[w]}")
    return "\n".join(out) + "\n"
