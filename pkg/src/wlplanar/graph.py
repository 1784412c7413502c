"""Immutable simple undirected graphs with dense 0-based vertex ids, plus I/O
and the connectivity / separator / atomic-type primitives everything else
builds on.

Edge-list format: first line is the vertex count, then one "u v" pair per
line; lines starting with '#' are comments. graph6 is the standard 6-bit
encoding (optional ">>graph6<<" header).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError, ValidationError

GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph. `edges` is sorted with u < v; `adjacency[v]`
    is the frozen neighbour set of v."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValidationError(f"loop at vertex {u} is not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        adj = [set() for _ in range(n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        return Graph(n, tuple(sorted(norm)), tuple(frozenset(s) for s in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def vertices(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class AtomicType:
    """Equality/adjacency pattern of an ordered vertex tuple; index pairs are
    1-based with i < j."""

    k: int
    equalities: frozenset[tuple[int, int]]
    adjacencies: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class SeparatorQuery:
    separator: frozenset[int]
    targets: frozenset[int]

    def holds(self, g: Graph) -> bool:
        return separates(g, self.separator, self.targets)


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def permute(g: Graph, pi: Sequence[int]) -> Graph:
    """Relabel vertices: vertex v becomes pi[v]."""
    return Graph.from_edges(g.n, [(pi[u], pi[v]) for u, v in g.edges])


def induced_subgraph(g: Graph, verts: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on `verts`; returns it with the sorted original ids,
    new id i corresponding to old id result[1][i]."""
    old = tuple(sorted(set(verts)))
    pos = {v: i for i, v in enumerate(old)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return Graph.from_edges(len(old), edges), old


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "graph6":
        return _parse_graph6(text)
    raise ParseError(f"unknown format {format!r}")


def serialize_graph(g: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        lines = [str(g.n)]
        lines.extend(f"{u} {v}" for u, v in g.edges)
        return "\n".join(lines) + "\n"
    if format == "graph6":
        return _to_graph6(g) + "\n"
    raise ParseError(f"unknown format {format!r}")


def _parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise ParseError(f"expected vertex count, got {line!r}", lineno)
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {line!r}", lineno)
        if u == v:
            raise ValidationError(f"line {lineno}: loop at vertex {u}")
        if n is not None and not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range in {line!r}", lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("empty input: missing vertex count header")
    return Graph.from_edges(n, edges)


def _graph6_pairs(n: int):
    # Upper-triangle bit order of the standard encoding: (0,1),(0,2),(1,2),(0,3),...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def _parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise ParseError("empty graph6 input")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise ParseError("graph6 byte out of range")
    if data[0] <= 62:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] <= 62:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        raise ParseError("unsupported graph6 size header")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) < need:
        raise ParseError(f"graph6 body too short for n={n}")
    bits = []
    for b in body[:need]:
        bits.extend(((b >> shift) & 1) for shift in range(5, -1, -1))
    edges = [(i, j) for (i, j), bit in zip(_graph6_pairs(n), bits) if bit]
    return Graph.from_edges(n, edges)


def _to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise ValidationError("graph too large for graph6 serialization")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _graph6_pairs(n)]
    while len(bits) % 6:
        bits.append(0)
    out = []
    for i in range(0, len(bits), 6):
        b = 0
        for bit in bits[i:i + 6]:
            b = (b << 1) | bit
        out.append(b + 63)
    return "".join(chr(c) for c in head + out)


# ---------------------------------------------------------------------------
# Connectivity and separators
# ---------------------------------------------------------------------------


def _component_of(g: Graph, start: int, removed: frozenset[int] | set[int]) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen and w not in removed:
                seen.add(w)
                queue.append(w)
    return seen


def connected_components(g: Graph, removed: frozenset[int] | set[int] = frozenset()) -> list[set[int]]:
    """Maximal connected vertex sets of g minus `removed`, each sorted-first order."""
    out = []
    seen: set[int] = set()
    for v in range(g.n):
        if v in seen or v in removed:
            continue
        comp = _component_of(g, v, removed)
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(_component_of(g, 0, frozenset())) == g.n


def separates(g: Graph, s: Iterable[int], x: Iterable[int]) -> bool:
    """True iff at least two components of g minus s contain a vertex of x
    outside s.  In particular s containing all of x never separates."""
    s = frozenset(s)
    targets = set(x) - s
    hit_component = None
    for v in sorted(targets):
        if hit_component is not None and v in hit_component:
            continue
        comp = _component_of(g, v, s)
        if hit_component is None:
            hit_component = comp
        elif v not in hit_component:
            return True
    return False


def articulation_points(g: Graph, within: Iterable[int] | None = None) -> set[int]:
    """Cut vertices, via iterative lowpoint DFS; optionally restricted to the
    induced subgraph on `within`."""
    allowed = set(within) if within is not None else None

    def neighbours(u):
        if allowed is None:
            return g.adjacency[u]
        return [w for w in g.adjacency[u] if w in allowed]

    verts = range(g.n) if allowed is None else sorted(allowed)
    index = {}
    low = {}
    cuts: set[int] = set()
    counter = 0
    for root in verts:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, None, iter(neighbours(root)))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in index:
                    low[u] = min(low[u], index[w])
                else:
                    index[w] = low[w] = counter
                    counter += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(neighbours(w))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[u])
                    if parent != root and low[u] >= index[parent]:
                        cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    return cuts


def is_k_connected(g: Graph, k: int) -> bool:
    """k-connectivity for k in {1,2,3}: order must exceed k and no cut set of
    size < k exists."""
    if k not in (1, 2, 3):
        raise PreconditionError(f"k must be 1, 2 or 3, got {k}")
    if g.n <= k:
        return False
    if not is_connected(g):
        return False
    if k == 1:
        return True
    if articulation_points(g):
        return False
    if k == 2:
        return True
    all_verts = set(range(g.n))
    for v in range(g.n):
        rest = all_verts - {v}
        if articulation_points(g, within=rest):
            return False
        # removing v must also leave the graph connected (guard for stars etc.,
        # already implied by no articulation point, kept cheap)
    return True


# ---------------------------------------------------------------------------
# Atomic types
# ---------------------------------------------------------------------------


def atomic_type(g: Graph, tup: Sequence[int]) -> AtomicType:
    k = len(tup)
    eq = []
    adj = []
    for i, j in combinations(range(k), 2):
        if tup[i] == tup[j]:
            eq.append((i + 1, j + 1))
        elif g.has_edge(tup[i], tup[j]):
            adj.append((i + 1, j + 1))
    return AtomicType(k, frozenset(eq), frozenset(adj))


def atp_code(g: Graph, tup: Sequence[int]) -> int:
    """Dense integer encoding of atomic_type, 2 bits per index pair
    (equal, adjacent), pairs in combinations order."""
    code = 0
    for i, j in combinations(range(len(tup)), 2):
        code <<= 2
        if tup[i] == tup[j]:
            code |= 2
        elif g.has_edge(tup[i], tup[j]):
            code |= 1
    return code
