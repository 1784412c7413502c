"""Seeded graph family generators for tests, experiments and the CLI.

maximal-planar-random grows a triangulation by repeated random face splits, so
its graphs always have m = 3n - 6 edges; planar-random then deletes a random
edge subset while keeping the graph connected.  cfi-pair emits the twisted and
untwisted gadget graphs over a base graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import UsageError
from .graph import Graph

FAMILIES = (
    "path",
    "cycle",
    "grid",
    "wheel",
    "complete",
    "star",
    "prism",
    "maximal-planar-random",
    "planar-random",
    "cfi-pair",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...]
    seed: int = 0


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise UsageError("grid needs positive dimensions")
    def vid(r, c):
        return r * cols + c
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph.from_edges(rows * cols, edges)


def wheel(n: int) -> Graph:
    """Hub vertex 0 plus an (n-1)-cycle of spokes; n is the total order."""
    if n < 4:
        raise UsageError("wheel needs n >= 4")
    rim = n - 1
    edges = [(0, i) for i in range(1, n)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph.from_edges(n, edges)


def prism(k: int) -> Graph:
    """Two k-cycles joined by a perfect matching (circular ladder)."""
    if k < 3:
        raise UsageError("prism needs k >= 3")
    edges = []
    for i in range(k):
        edges.append((i, (i + 1) % k))
        edges.append((k + i, k + (i + 1) % k))
        edges.append((i, k + i))
    return Graph.from_edges(2 * k, edges)


def maximal_planar_random(n: int, seed: int = 0) -> Graph:
    """Random planar triangulation: start from K3 and split a random face with
    a fresh vertex until n vertices exist."""
    if n < 3:
        raise UsageError("maximal-planar-random needs n >= 3")
    rng = random.Random(seed)
    edges = {(0, 1), (0, 2), (1, 2)}
    # both sides of the starting triangle count as faces (sphere embedding)
    faces = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        idx = rng.randrange(len(faces))
        a, b, c = faces[idx]
        faces[idx] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
        edges |= {tuple(sorted((a, v))), tuple(sorted((b, v))), tuple(sorted((c, v)))}
    return Graph.from_edges(n, edges)


def planar_random(n: int, seed: int = 0, keep_fraction: float | None = None) -> Graph:
    """Connected planar graph: random triangulation minus a random edge subset,
    skipping deletions that would disconnect it."""
    rng = random.Random(seed)
    g = maximal_planar_random(n, seed=rng.randrange(2 ** 32))
    if keep_fraction is None:
        keep_fraction = rng.uniform(0.35, 0.95)
    target = max(n - 1, int(round(keep_fraction * g.m)))
    adj = [set(s) for s in g.adjacency]

    def still_connected(u, v):
        # BFS from u avoiding the removed edge
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if x == u and w == v:
                    continue
                if w not in seen:
                    if w == v:
                        return True
                    seen.add(w)
                    stack.append(w)
        return False

    order = list(g.edges)
    rng.shuffle(order)
    m = g.m
    for u, v in order:
        if m <= target:
            break
        adj[u].discard(v)
        adj[v].discard(u)
        if still_connected(u, v):
            m -= 1
        else:
            adj[u].add(v)
            adj[v].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def cfi_pair(base: Graph) -> tuple[Graph, Graph]:
    """Untwisted/twisted even-subset gadget pair over `base`.

    Per base vertex v, one gadget vertex for every even subset of its incident
    edges; per base edge, two connector vertices.  A gadget vertex joins the
    "in" connector of the edges in its subset and the "out" connector of the
    others; the twisted graph swaps the connectors of one edge on one side.
    """
    incident = {v: [e for e in base.edges if v in e] for v in range(base.n)}
    ids: dict[object, int] = {}

    def vid(key):
        if key not in ids:
            ids[key] = len(ids)
        return ids[key]

    def even_subsets(edges):
        out = []
        for r in range(0, len(edges) + 1, 2):
            out.extend(combinations(edges, r))
        return out

    for e in base.edges:
        vid(("edge", e, 0))
        vid(("edge", e, 1))
    for v in range(base.n):
        for s in even_subsets(incident[v]):
            vid(("vx", v, frozenset(s)))

    def build(twist_edge, twist_vertex):
        edges = []
        for v in range(base.n):
            for s in even_subsets(incident[v]):
                gv = vid(("vx", v, frozenset(s)))
                for e in incident[v]:
                    side = 1 if e in s else 0
                    if e == twist_edge and v == twist_vertex:
                        side = 1 - side
                    edges.append((gv, vid(("edge", e, side))))
        return Graph.from_edges(len(ids), edges)

    untwisted = build(None, None)
    e0 = base.edges[0]
    twisted = build(e0, e0[0])
    return untwisted, twisted


def generate(spec: FamilySpec):
    """Build the graph (or graph pair for cfi-pair) described by `spec`."""
    fam, p = spec.family, spec.params
    try:
        if fam == "path":
            return path(p[0])
        if fam == "cycle":
            return cycle(p[0])
        if fam == "grid":
            return grid(p[0], p[1])
        if fam == "wheel":
            return wheel(p[0])
        if fam == "complete":
            return complete(p[0])
        if fam == "star":
            return star(p[0])
        if fam == "prism":
            return prism(p[0])
        if fam == "maximal-planar-random":
            return maximal_planar_random(p[0], seed=spec.seed)
        if fam == "planar-random":
            return planar_random(p[0], seed=spec.seed)
        if fam == "cfi-pair":
            k = p[0] if p else 4
            return cfi_pair(complete(k))
    except IndexError:
        raise UsageError(f"family {fam!r} is missing size parameters")
    raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
