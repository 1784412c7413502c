"""Blocks, torsos, the Tutte-style block decomposition, balanced log-height
tree decompositions, and the combined log-height block decomposition with its
validator.

A block is a vertex set whose torso is 3-connected (proper) or a triangle /
edge (degenerate, orders 3 and 2) with adhesion at most 2 / 1.  Cycle pieces
are decomposed into triangle fans (apex at the smallest vertex of the cycle),
so every bag of the block decomposition is a block.  The log-height
construction rebalances the block tree with a required-set recursion: scatter
nodes separate the up-to-3 required vertices, size-balanced nodes halve the
piece, and ports (the severed tree neighbours) are threaded through the
required sets so that every tree edge ends up inside a bag.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import PreconditionError, ValidationError
from .graph import Graph, connected_components, induced_subgraph, is_connected, is_k_connected
from .limits import DEFAULT_LIMITS


@dataclass(frozen=True)
class BagUnit:
    kind: str                     # "block" | "separator" | "vertex"
    members: frozenset[int]


@dataclass(frozen=True)
class BlockResolution:
    kind: str                     # proper | degenerate3 | degenerate2 | separator | invalid
    members: frozenset[int]
    torso_edges: frozenset[tuple[int, int]]


@dataclass
class RootedDecomposition:
    root: int
    parents: dict[int, int | None]
    bags: dict[int, frozenset[int]]
    units: dict[int, tuple[BagUnit, ...]] | None = None
    blocks: dict[int, BlockResolution] | None = None

    def nodes(self) -> list[int]:
        return sorted(self.parents)

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {t: [] for t in self.parents}
        for t, p in self.parents.items():
            if p is not None:
                ch[p].append(t)
        return ch

    def height(self) -> int:
        ch = self.children()
        best = 0
        stack = [(self.root, 0)]
        while stack:
            t, d = stack.pop()
            best = max(best, d)
            for c in ch[t]:
                stack.append((c, d + 1))
        return best

    def width(self) -> int:
        return max(len(b) for b in self.bags.values()) - 1

    def adhesion(self) -> int:
        best = 0
        for t, p in self.parents.items():
            if p is not None:
                best = max(best, len(self.bags[t] & self.bags[p]))
        return best

    def subtree_union(self, t: int) -> frozenset[int]:
        ch = self.children()
        out: set[int] = set()
        stack = [t]
        while stack:
            u = stack.pop()
            out |= self.bags[u]
            stack.extend(ch[u])
        return frozenset(out)


@dataclass
class ValidationReport:
    entries: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str = "") -> None:
        self.entries.append((name, passed, witness))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def format_lines(self) -> str:
        out = []
        for name, ok, witness in self.entries:
            line = f"{'PASS' if ok else 'FAIL'} {name}"
            if witness and not ok:
                line += f" [{witness}]"
            out.append(line)
        return "\n".join(out) + "\n"


def serialize_decomposition(d: RootedDecomposition) -> str:
    out = []
    for t in d.nodes():
        p = d.parents[t]
        bag = ",".join(map(str, sorted(d.bags[t])))
        out.append(f"node {t} parent {'-' if p is None else p} bag {bag}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Balanced nodes (weighted centroids)
# ---------------------------------------------------------------------------


def _check_tree(tree: Graph) -> None:
    if tree.n == 0:
        raise PreconditionError("tree is empty")
    if tree.m != tree.n - 1 or not is_connected(tree):
        raise PreconditionError("graph is not a tree")


def find_balanced_node(tree: Graph, weights) -> int:
    """Smallest node t such that every component of tree minus t has weight
    at most half the total."""
    _check_tree(tree)
    if isinstance(weights, dict):
        w = [weights.get(v, 0) for v in range(tree.n)]
    else:
        w = [weights[v] for v in range(tree.n)]
    total = sum(w)
    # subtree sums from root 0, iterative post-order
    parent = {0: None}
    order = [0]
    for v in order:
        for u in tree.adjacency[v]:
            if u not in parent:
                parent[u] = v
                order.append(u)
    sub = list(w)
    for v in reversed(order[1:]):
        sub[parent[v]] += sub[v]
    best = None
    for t in range(tree.n):
        worst = total - sub[t]  # the component towards the root
        for u in tree.adjacency[t]:
            if parent.get(u) == t:
                worst = max(worst, sub[u])
        if 2 * worst <= total:
            best = t
            break
    assert best is not None, "a balanced node always exists"
    return best


def _balanced_in_piece(adj: dict[int, set[int]], verts: list[int], weights: dict[int, int],
                       prefer: set[int] | None = None) -> int:
    """Balanced node of a tree piece given by an adjacency dict restricted to
    `verts`; when `prefer` contains a valid node, the smallest preferred one
    wins."""
    vset = set(verts)
    total = sum(weights.get(v, 0) for v in verts)
    root = verts[0]
    parent = {root: None}
    order = [root]
    for v in order:
        for u in adj[v]:
            if u in vset and u not in parent:
                parent[u] = v
                order.append(u)
    sub = {v: weights.get(v, 0) for v in verts}
    for v in reversed(order[1:]):
        sub[parent[v]] += sub[v]

    def valid(t):
        worst = total - sub[t]
        for u in adj[t]:
            if u in vset and parent.get(u) == t:
                worst = max(worst, sub[u])
        return 2 * worst <= total

    if prefer:
        for t in sorted(prefer):
            if valid(t):
                return t
    for t in sorted(verts):
        if valid(t):
            return t
    raise AssertionError("a balanced node always exists")


# ---------------------------------------------------------------------------
# Log-height tree decomposition of a tree
# ---------------------------------------------------------------------------


class _LogdecBuilder:
    def __init__(self, tree: Graph):
        self.tree = tree
        self.parents: dict[int, int | None] = {}
        self.bags: dict[int, frozenset[int]] = {}
        self.counter = 0

    def new_node(self, parent: int | None, bag) -> int:
        t = self.counter
        self.counter += 1
        self.parents[t] = parent
        self.bags[t] = frozenset(bag)
        return t

    def attach(self, node: int, parent: int) -> None:
        self.parents[node] = parent

    def add_to_bag(self, node: int, extra) -> None:
        self.bags[node] = self.bags[node] | frozenset(extra)


def _piece_components(adj, removed_vertex, verts):
    vset = set(verts)
    comps = []
    seen = {removed_vertex}
    for v in verts:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for wv in adj[u]:
                if wv in vset and wv not in seen:
                    seen.add(wv)
                    comp.append(wv)
                    queue.append(wv)
        comps.append(sorted(comp))
    return sorted(comps, key=lambda c: c[0])


def tree_logdec(tree: Graph, b) -> RootedDecomposition:
    """Rooted tree decomposition of `tree` with B inside the root bag,
    |root \\ B| <= 1, width <= 3, adhesion <= 3, logarithmic height, and
    connected subtree remainders."""
    _check_tree(tree)
    b = frozenset(b)
    if len(b) > 3:
        raise PreconditionError("required set B must have at most 3 nodes")
    if not b <= set(range(tree.n)):
        raise PreconditionError("B must consist of tree nodes")
    builder = _LogdecBuilder(tree)
    adj = {v: set(tree.adjacency[v]) for v in range(tree.n)}
    root = _logdec_rec(builder, adj, sorted(range(tree.n)), b, parent_adds=len(b) <= 2)
    d = RootedDecomposition(root, builder.parents, builder.bags)
    _enforce_connected_remainders(tree, d)
    _contract_equal_bags(d)
    assert b <= d.bags[d.root] and len(d.bags[d.root] - b) <= 1
    return d


def _logdec_rec(builder: _LogdecBuilder, adj, verts: list[int], b: frozenset[int],
                parent_adds: bool) -> int:
    """Returns the root node id of a decomposition of the tree piece `verts`.
    When parent_adds is set, the returned root bag has at most 3 vertices so
    the caller may add one more."""
    n = len(verts)
    vset = set(verts)
    assert b <= vset
    if n <= 4:
        if len(vset - b) <= 1 and (n <= 3 or not parent_adds):
            return builder.new_node(None, vset)
        r = builder.new_node(None, b)
        builder.new_node(r, vset)
        return r

    if len(b) == 3:
        # scatter the three required nodes; prefer a balancer inside B so the
        # root bag stays small when the parent needs to extend it
        char = {v: (1 if v in b else 0) for v in verts}
        bal = _balanced_in_piece(adj, verts, char, prefer=set(b))
        if parent_adds and bal not in b:
            top = builder.new_node(None, b)
            r = builder.new_node(top, b | {bal})
            result = top
        else:
            top = None
            r = builder.new_node(None, b | {bal})
            result = r
        for comp in _piece_components(adj, bal, verts):
            cset = set(comp)
            port = next(u for u in sorted(adj[bal]) if u in cset)
            b_child = (b & cset) | {port}
            child = _logdec_rec(builder, adj, comp, frozenset(b_child), parent_adds=True)
            builder.add_to_bag(child, {bal})
            builder.attach(child, r)
        return result

    # |B| <= 2: halve by size
    size = {v: 1 for v in verts}
    bal = _balanced_in_piece(adj, verts, size)
    r = builder.new_node(None, b | {bal})
    for comp in _piece_components(adj, bal, verts):
        cset = set(comp)
        port = next(u for u in sorted(adj[bal]) if u in cset)
        b_child = frozenset((b & cset) | {port})
        if len(b_child) <= 2:
            child = _logdec_rec(builder, adj, comp, b_child, parent_adds=True)
            builder.add_to_bag(child, {bal})
            builder.attach(child, r)
        elif not parent_adds:
            # at most one such child exists; absorb its port into the root bag
            builder.add_to_bag(r, {port})
            child = _logdec_rec(builder, adj, comp, b_child, parent_adds=False)
            builder.attach(child, r)
        else:
            spacer = builder.new_node(r, b_child | {bal})
            child = _logdec_rec(builder, adj, comp, b_child, parent_adds=False)
            builder.attach(child, spacer)
    return r


def _components_within(g: Graph, allowed: set[int]) -> list[set[int]]:
    comps = []
    seen: set[int] = set()
    for v in sorted(allowed):
        if v in seen:
            continue
        comp = {v}
        seen.add(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def _enforce_connected_remainders(g: Graph, d: RootedDecomposition) -> None:
    """Split child subtrees whose bag-union minus the parent bag induces a
    disconnected subgraph of g: one copy per component, bags intersected with
    the component plus the parent bag."""
    ch = d.children()
    next_id = max(d.parents) + 1

    def subtree_nodes(u):
        out, walk = [], [u]
        while walk:
            x = walk.pop()
            out.append(x)
            walk.extend(ch[x])
        return out

    stack = [d.root]
    while stack:
        t = stack.pop()
        new_children = []
        for u in ch[t]:
            nodes_u = subtree_nodes(u)
            outside = set().union(*(d.bags[x] for x in nodes_u)) - d.bags[t]
            comps = _components_within(g, outside) if outside else []
            if len(comps) <= 1:
                new_children.append(u)
                continue
            for comp in sorted(comps, key=min):
                keep = frozenset(comp) | d.bags[t]
                mapping = {x: next_id + i for i, x in enumerate(nodes_u)}
                next_id += len(nodes_u)
                for x in nodes_u:
                    nid = mapping[x]
                    d.bags[nid] = d.bags[x] & keep
                    d.parents[nid] = t if x == u else mapping[d.parents[x]]
                    ch[nid] = []
                for x in nodes_u:
                    if x != u:
                        ch[mapping[d.parents[x]]].append(mapping[x])
                new_children.append(mapping[u])
            for x in nodes_u:
                del d.parents[x]
                del d.bags[x]
                del ch[x]
        ch[t] = new_children
        stack.extend(new_children)


def _contract_equal_bags(d: RootedDecomposition) -> None:
    """Contract parent-child pairs with identical bags (restores adhesion
    <= width)."""
    ch = d.children()
    queue = deque(t for t, p in d.parents.items() if p is not None)
    while queue:
        t = queue.popleft()
        if t not in d.parents:
            continue
        p = d.parents[t]
        if p is None or d.bags[t] != d.bags[p]:
            continue
        for c in ch[t]:
            d.parents[c] = p
            ch[p].append(c)
            queue.append(c)
        ch[p].remove(t)
        del d.parents[t]
        del d.bags[t]
        del ch[t]


# ---------------------------------------------------------------------------
# Torso and adhesion of vertex sets
# ---------------------------------------------------------------------------


def adhesion_of_set(g: Graph, members) -> int:
    members = frozenset(members)
    worst = 0
    for comp in connected_components(g, removed=members):
        nb = set()
        for v in comp:
            nb |= g.adjacency[v] & members
        worst = max(worst, len(nb))
    return worst


def torso_edges(g: Graph, members) -> frozenset[tuple[int, int]]:
    """Edges of the torso: real edges inside the set plus a virtual edge for
    every outside component attaching at exactly two member vertices."""
    members = frozenset(members)
    edges = {(u, v) for u, v in g.edges if u in members and v in members}
    for comp in connected_components(g, removed=members):
        nb = set()
        for v in comp:
            nb |= g.adjacency[v] & members
        if len(nb) == 2:
            a, b = sorted(nb)
            edges.add((a, b))
    return frozenset(edges)


def _torso_graph(g: Graph, members) -> tuple[Graph, tuple[int, ...]]:
    members = tuple(sorted(set(members)))
    pos = {v: i for i, v in enumerate(members)}
    edges = [(pos[u], pos[v]) for u, v in torso_edges(g, members)]
    return Graph.from_edges(len(members), edges), members


# ---------------------------------------------------------------------------
# Vertex-disjoint path counting (for block detection)
# ---------------------------------------------------------------------------


def _disjoint_paths_at_least(adj: list[set[int]], s: int, t: int, need: int) -> bool:
    """At least `need` internally vertex-disjoint s-t paths, by unit-capacity
    augmentation on the node-split graph (in(v)=2v, out(v)=2v+1)."""
    if s == t:
        return True
    n = len(adj)
    cap: dict[tuple[int, int], int] = {}
    succ: dict[int, set[int]] = {}

    def add_arc(a, b):
        cap[(a, b)] = cap.get((a, b), 0) + 1
        cap.setdefault((b, a), 0)
        succ.setdefault(a, set()).add(b)
        succ.setdefault(b, set()).add(a)

    for v in range(n):
        if v != s and v != t:
            add_arc(2 * v, 2 * v + 1)
    for v in range(n):
        for w in adj[v]:
            add_arc(2 * v + 1, 2 * w)
    src, snk = 2 * s + 1, 2 * t
    flow = 0
    while flow < need:
        parent: dict[int, int | None] = {src: None}
        queue = deque([src])
        while queue and snk not in parent:
            x = queue.popleft()
            for y in succ.get(x, ()):
                if y not in parent and cap.get((x, y), 0) > 0:
                    parent[y] = x
                    queue.append(y)
        if snk not in parent:
            return False
        x = snk
        while parent[x] is not None:
            p = parent[x]
            cap[(p, x)] -= 1
            cap[(x, p)] += 1
            x = p
        flow += 1
    return True


# ---------------------------------------------------------------------------
# Blocks from vertex triples
# ---------------------------------------------------------------------------


def _pair_unseparable(g: Graph, adjlist, x: int, y: int) -> bool:
    """No vertex set of size <= 2 separates x from y: adjacent or 3 disjoint
    paths."""
    if x == y or g.has_edge(x, y):
        return True
    return _disjoint_paths_at_least(adjlist, x, y, 3)


def block_from_triple(g: Graph, b1: int, b2: int, b3: int) -> BlockResolution:
    """Resolve a vertex triple into the block it determines: the degenerate
    block it spells out, or the unique proper block through three distinct
    vertices (all v not cut off from the triple by any 2-separator), or
    invalid."""
    invalid = BlockResolution("invalid", frozenset(), frozenset())
    for v in (b1, b2, b3):
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} out of range")
    distinct = sorted({b1, b2, b3})
    if len(distinct) == 1:
        return invalid
    if len(distinct) == 2:
        u, w = distinct
        t = torso_edges(g, distinct)
        if (u, w) in t and adhesion_of_set(g, distinct) <= 1:
            return BlockResolution("degenerate2", frozenset(distinct), t)
        return invalid
    members3 = frozenset(distinct)
    t3 = torso_edges(g, members3)
    if len(t3) == 3 and adhesion_of_set(g, members3) <= 2:
        return BlockResolution("degenerate3", members3, t3)
    adjlist = [set(s) for s in g.adjacency]
    if not all(_pair_unseparable(g, adjlist, x, y) for x, y in combinations(distinct, 2)):
        return invalid
    b4 = None
    for v in range(g.n):
        if v not in members3 and all(_pair_unseparable(g, adjlist, v, x) for x in distinct):
            b4 = v
            break
    if b4 is None:
        return invalid
    # members: vertices with a fan of 3 disjoint paths to the triple,
    # detected against a virtual sink adjacent to the three anchors
    sink = g.n
    ext = [set(s) for s in g.adjacency] + [set(distinct)]
    for x in distinct:
        ext[x].add(sink)
    members = set(distinct)
    for v in range(g.n):
        if v not in members3 and _disjoint_paths_at_least(ext, v, sink, 3):
            members.add(v)
    return BlockResolution("proper", frozenset(members), torso_edges(g, members))


# ---------------------------------------------------------------------------
# Splitting a 2-connected graph into 3-connected pieces and cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitPiece:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]     # includes virtual pairs
    virtual: frozenset[tuple[int, int]]
    kind: str                             # "triconnected" | "cycle"


@dataclass
class SplitTree:
    pieces: list[SplitPiece]
    pair_members: dict[tuple[int, int], list[int]]
    pair_real: dict[tuple[int, int], bool]


def _local_articulations(adj: dict[int, set[int]], skip: int | None = None):
    """Articulation vertices of the graph given by `adj`, optionally with one
    vertex removed; iterative lowpoint DFS."""
    verts = [v for v in adj if v != skip]
    if not verts:
        return set()
    allowed = set(verts)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts: set[int] = set()
    counter = 0
    for root in verts:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, None, iter(sorted(adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in allowed or w == parent:
                    continue
                if w in index:
                    low[u] = min(low[u], index[w])
                else:
                    index[w] = low[w] = counter
                    counter += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(sorted(adj[w]))))
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


def _find_two_cut(adj: dict[int, set[int]]) -> tuple[int, int] | None:
    """A separating vertex pair of a 2-connected graph on >= 4 vertices, or
    None when 3-connected.  Degree-2 vertices give one immediately."""
    for v in sorted(adj):
        if len(adj[v]) == 2:
            a, b = sorted(adj[v])
            return (a, b) if a < b else (b, a)
    for u in sorted(adj):
        arts = _local_articulations(adj, skip=u)
        if arts:
            w = min(arts)
            return (u, w) if u < w else (w, u)
    return None


def _split_components(adj: dict[int, set[int]], pair: tuple[int, int]) -> list[list[int]]:
    u, w = pair
    comps = []
    seen = {u, w}
    for v in sorted(adj):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return sorted(comps, key=lambda c: c[0])


def split_two_connected(vertices, edges) -> SplitTree:
    """Recursive split-pair decomposition of a 2-connected graph into
    3-connected pieces and cycles, with virtual edges marking the cuts."""
    edges = {tuple(sorted(e)) for e in edges}
    pieces: list[SplitPiece] = []
    pair_real: dict[tuple[int, int], bool] = {}
    work = [(frozenset(edges), frozenset())]
    while work:
        piece_edges, piece_virtual = work.pop()
        adj: dict[int, set[int]] = {}
        for a, b in piece_edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        verts = tuple(sorted(adj))
        if all(len(adj[v]) == 2 for v in adj):
            pieces.append(SplitPiece(verts, piece_edges, piece_virtual, "cycle"))
            continue
        pair = _find_two_cut(adj)
        if pair is None:
            pieces.append(SplitPiece(verts, piece_edges, piece_virtual, "triconnected"))
            continue
        pair_real[pair] = pair in piece_edges and pair not in piece_virtual
        for comp in _split_components(adj, pair):
            cset = set(comp) | set(pair)
            sub_edges = {e for e in piece_edges if e[0] in cset and e[1] in cset and e != pair}
            sub_edges.add(pair)
            sub_virtual = (piece_virtual & frozenset(sub_edges)) | {pair}
            work.append((frozenset(sub_edges), frozenset(sub_virtual)))
    pair_members = {
        pair: [i for i, p in enumerate(pieces) if pair in p.edges]
        for pair in pair_real
    }
    return SplitTree(pieces, pair_members, pair_real)


def biconnected_components(g: Graph) -> list[list[tuple[int, int]]]:
    """Edge sets of the biconnected components (bridges are single-edge
    components), via the classic edge-stack lowpoint DFS."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    comps: list[list[tuple[int, int]]] = []
    estack: list[tuple[int, int]] = []
    for root in range(g.n):
        if root in index:
            continue
        stack = [(root, None, iter(sorted(g.adjacency[root])))]
        index[root] = low[root] = counter
        counter += 1
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in index:
                    if index[w] < index[u]:
                        estack.append((u, w))
                        low[u] = min(low[u], index[w])
                else:
                    estack.append((u, w))
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append((w, u, iter(sorted(g.adjacency[w]))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[u])
                    if low[u] >= index[parent]:
                        comp = []
                        while True:
                            e = estack.pop()
                            comp.append(tuple(sorted(e)))
                            if e == (parent, u):
                                break
                        comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# Tutte-style decomposition into blocks
# ---------------------------------------------------------------------------


def _cycle_order(piece: SplitPiece) -> list[int]:
    adj = {v: [] for v in piece.vertices}
    for a, b in piece.edges:
        adj[a].append(b)
        adj[b].append(a)
    start = min(piece.vertices)
    order = [start, min(adj[start])]
    while len(order) < len(piece.vertices):
        prev, cur = order[-2], order[-1]
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        order.append(nxt)
    return order


def tutte_block_decomposition(g: Graph) -> RootedDecomposition:
    """Small tree decomposition of adhesion <= 2 whose bags are blocks:
    3-connected split pieces stay whole, cycles are fanned into triangles
    from their smallest vertex, bridges become order-2 blocks."""
    if not is_connected(g):
        raise PreconditionError("block decomposition requires a connected graph")
    if g.n > DEFAULT_LIMITS.tutte_max_n:
        raise PreconditionError(f"block decomposition capped at n={DEFAULT_LIMITS.tutte_max_n}")
    if g.n == 0:
        raise PreconditionError("empty graph")
    node_members: list[frozenset[int]] = []
    node_torso: list[frozenset[tuple[int, int]]] = []
    node_kind: list[str] = []
    links: list[tuple[int, int]] = []

    def new_node(members, torso, kind) -> int:
        node_members.append(frozenset(members))
        node_torso.append(frozenset(torso))
        node_kind.append(kind)
        return len(node_members) - 1

    if g.n == 1:
        new_node({0}, set(), "vertex")
    for comp_edges in sorted(biconnected_components(g), key=min):
        if len(comp_edges) == 1:
            e = comp_edges[0]
            new_node(set(e), {e}, "degenerate2")
            continue
        tree = split_two_connected({v for e in comp_edges for v in e}, comp_edges)
        piece_rep: list[dict[tuple[int, int], int]] = []  # piece idx -> edge -> node
        for piece in tree.pieces:
            if piece.kind == "triconnected":
                node = new_node(piece.vertices, piece.edges, "proper")
                piece_rep.append({e: node for e in piece.edges})
            else:
                order = _cycle_order(piece)
                L = len(order)
                if L == 3:
                    tri = new_node(order, {tuple(sorted((order[i], order[(i + 1) % 3]))) for i in range(3)}, "degenerate3")
                    piece_rep.append({e: tri for e in piece.edges})
                    continue
                tri_nodes = []
                for i in range(1, L - 1):
                    members = (order[0], order[i], order[i + 1])
                    torso = {tuple(sorted(p)) for p in combinations(members, 2)}
                    tri_nodes.append(new_node(members, torso, "degenerate3"))
                for a, b in zip(tri_nodes, tri_nodes[1:]):
                    links.append((a, b))
                rep: dict[tuple[int, int], int] = {}
                for i in range(1, L - 1):
                    rep[tuple(sorted((order[i], order[i + 1])))] = tri_nodes[i - 1]
                rep[tuple(sorted((order[0], order[1])))] = tri_nodes[0]
                rep[tuple(sorted((order[0], order[L - 1])))] = tri_nodes[-1]
                # chords of the fan live in their two triangles; attach at the
                # earlier one for determinism
                for i in range(1, L - 1):
                    rep.setdefault(tuple(sorted((order[0], order[i]))), tri_nodes[max(0, i - 2)])
                piece_rep.append(rep)
        for pair, members in tree.pair_members.items():
            reps = sorted(piece_rep[i][pair] for i in members)
            for a, b in zip(reps, reps[1:]):
                links.append((a, b))

    # connect blocks sharing a cut vertex (blocks of different biconnected
    # components); also covers isolated chains of bridges
    by_vertex: dict[int, list[int]] = {}
    for i, members in enumerate(node_members):
        for v in members:
            by_vertex.setdefault(v, []).append(i)
    adj_nodes: dict[int, set[int]] = {i: set() for i in range(len(node_members))}
    for a, b in links:
        adj_nodes[a].add(b)
        adj_nodes[b].add(a)
    # union-find over current links, then join cross-component blocks per vertex
    parent_uf = list(range(len(node_members)))

    def find(x):
        while parent_uf[x] != x:
            parent_uf[x] = parent_uf[parent_uf[x]]
            x = parent_uf[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent_uf[ry] = rx
            return True
        return False

    for a, b in links:
        union(a, b)
    for v in sorted(by_vertex):
        nodes = sorted(by_vertex[v])
        for other in nodes[1:]:
            if union(nodes[0], other):
                links.append((nodes[0], other))
                adj_nodes[nodes[0]].add(other)
                adj_nodes[other].add(nodes[0])

    root = min(range(len(node_members)), key=lambda i: (sorted(node_members[i]), i))
    parents: dict[int, int | None] = {root: None}
    order = [root]
    for t in order:
        for u in sorted(adj_nodes[t]):
            if u not in parents:
                parents[u] = t
                order.append(u)
    if len(parents) != len(node_members):
        raise ValidationError("block tree failed to connect")
    bags = {i: node_members[i] for i in range(len(node_members))}
    units = {i: (BagUnit("block" if node_kind[i] != "vertex" else "vertex", node_members[i]),)
             for i in range(len(node_members))}
    blocks = {
        i: BlockResolution(node_kind[i], node_members[i], node_torso[i])
        for i in range(len(node_members))
    }
    return RootedDecomposition(root, parents, bags, units=units, blocks=blocks)


# ---------------------------------------------------------------------------
# Block separators
# ---------------------------------------------------------------------------


def _is_separator_among_blocks(g: Graph, blocks: list[frozenset[int]], s: frozenset[int]) -> bool:
    cands = sorted({b for b in blocks if s <= b}, key=sorted)
    if len(cands) < 2:
        return False
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(connected_components(g, removed=s)):
        for v in comp:
            comp_of[v] = i

    def remainder_component(b):
        rest = b - s
        if not rest:
            return None
        comps = {comp_of[v] for v in rest}
        return comps.pop() if len(comps) == 1 else None

    for b1, b2 in combinations(cands, 2):
        if (b1 & b2) != s:
            continue
        c1, c2 = remainder_component(b1), remainder_component(b2)
        if c1 is not None and c2 is not None and c1 != c2:
            return True
    return False


def is_block_separator(g: Graph, s1: int, s2: int) -> bool:
    """True iff the set {s1, s2} (a singleton when s1 == s2) is the
    intersection of two distinct blocks whose remainders lie in different
    components of the graph minus the set."""
    s = frozenset({s1, s2})
    home = [c for c in connected_components(g) if s <= c]
    if not home:
        return False
    sub, old = induced_subgraph(g, home[0])
    tutte = tutte_block_decomposition(sub)
    blocks = [frozenset(old[v] for v in b) for b in tutte.bags.values()]
    return _is_separator_among_blocks(g, blocks, s)


# ---------------------------------------------------------------------------
# Combined log-height block decomposition
# ---------------------------------------------------------------------------


def log_block_decomposition(g: Graph) -> RootedDecomposition:
    """Rebalance the block decomposition to logarithmic height: bags become
    unions of at most 4 blocks (for nodes where a block first appears) and
    block separators (for blocks kept alive towards descendants that contain
    a tree-neighbour)."""
    tutte = tutte_block_decomposition(g)
    n_blocks = len(tutte.parents)
    tree_edges = [(t, p) for t, p in tutte.parents.items() if p is not None]
    T = Graph.from_edges(n_blocks, tree_edges)
    logdec = tree_logdec(T, frozenset())
    ch = logdec.children()
    depth: dict[int, int] = {logdec.root: 0}
    order = [logdec.root]
    for t in order:
        for u in ch[t]:
            depth[u] = depth[t] + 1
            order.append(u)

    minstar: dict[int, int] = {}
    for tstar in logdec.parents:
        for t in logdec.bags[tstar]:
            cur = minstar.get(t)
            if cur is None or depth[tstar] < depth[cur]:
                minstar[t] = tstar

    def is_ancestor(a: int, b: int) -> bool:
        while depth[b] > depth[a]:
            b = logdec.parents[b]
        return a == b

    bags: dict[int, frozenset[int]] = {}
    units: dict[int, tuple[BagUnit, ...]] = {}
    for tstar in logdec.parents:
        collected: list[BagUnit] = []
        for t in sorted(logdec.bags[tstar]):
            if minstar[t] == tstar:
                kind = "vertex" if tutte.blocks[t].kind == "vertex" else "block"
                collected.append(BagUnit(kind, tutte.bags[t]))
            else:
                activators = [
                    u for u in sorted(T.adjacency[t]) if is_ancestor(tstar, minstar[u])
                ]
                if activators:
                    assert len(activators) == 1, "activator must be unique"
                    u = activators[0]
                    sep = tutte.bags[t] & tutte.bags[u]
                    collected.append(BagUnit("separator", sep))
        bags[tstar] = frozenset().union(*(un.members for un in collected)) if collected else frozenset()
        units[tstar] = tuple(collected)
    return RootedDecomposition(
        logdec.root, dict(logdec.parents), bags, units=units
    )


# ---------------------------------------------------------------------------
# Validator
# ---------------------------------------------------------------------------


def _check_tree_axioms(g: Graph, d: RootedDecomposition):
    nodes = set(d.parents)
    if d.root not in nodes:
        return False, "root is not a node"
    ch = d.children()
    # parents must describe a tree reaching every node
    seen = {d.root}
    order = [d.root]
    for t in order:
        for u in ch[t]:
            if u in seen:
                return False, f"node {u} reached twice"
            seen.add(u)
            order.append(u)
    if seen != nodes:
        return False, "decomposition tree is disconnected"
    occ: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for t in nodes:
        for v in d.bags[t]:
            if not 0 <= v < g.n:
                return False, f"bag of {t} contains foreign vertex {v}"
            occ[v].append(t)
    for v in range(g.n):
        if not occ[v]:
            return False, f"vertex {v} in no bag"
        allowed = set(occ[v])
        start = occ[v][0]
        seen_v = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            nbrs = list(ch[x])
            if d.parents[x] is not None:
                nbrs.append(d.parents[x])
            for y in nbrs:
                if y in allowed and y not in seen_v:
                    seen_v.add(y)
                    queue.append(y)
        if seen_v != allowed:
            return False, f"occurrences of vertex {v} are disconnected"
    occ_sets = {v: set(ts) for v, ts in occ.items()}
    for u, v in g.edges:
        if not any(t in occ_sets[v] for t in occ[u]):
            return False, f"edge ({u},{v}) in no bag"
    return True, ""


def _verify_block_unit(g: Graph, members: frozenset[int], cross_check: bool):
    size = len(members)
    if size == 1:
        return (g.n == 1, "order-1 block in a larger graph")
    te = torso_edges(g, members)
    ad = adhesion_of_set(g, members)
    if size == 2:
        ok = len(te) == 1 and ad <= 1
        return ok, f"order-2 block check failed (torso {len(te)} edges, adhesion {ad})"
    if size == 3:
        ok = len(te) == 3 and ad <= 2
        return ok, f"order-3 block check failed (torso {len(te)} edges, adhesion {ad})"
    if ad > 2:
        return False, f"proper block adhesion {ad} > 2"
    torso, _ = _torso_graph(g, members)
    if not is_k_connected(torso, 3):
        return False, "proper block torso is not 3-connected"
    if cross_check:
        triple = sorted(members)[:3]
        res = block_from_triple(g, *triple)
        if res.kind != "proper" or res.members != members:
            return False, "triple resolution disagrees with recorded members"
    return True, ""


def _discover_units(g: Graph, bag: frozenset[int], blocks: list[frozenset[int]]) -> bool:
    """Can `bag` be written as a union of at most 4 blocks/block separators?
    Exhaustive over candidates; used when a decomposition carries no
    provenance."""
    cands = [b for b in set(blocks) if b <= bag]
    seps = set()
    for b1, b2 in combinations(sorted(set(blocks), key=sorted), 2):
        s = b1 & b2
        if s and s <= bag and len(s) <= 2 and _is_separator_among_blocks(g, blocks, s):
            seps.add(s)
    cands.extend(seps)
    if len(cands) > 40:
        return False
    for r in range(1, 5):
        for combo in combinations(cands, r):
            if frozenset().union(*combo) == bag:
                return True
    return not bag  # the empty bag is a union of zero units


def validate_decomposition(g: Graph, d: RootedDecomposition) -> ValidationReport:
    """Checks: tree-decomposition axioms, logarithmic height, bag structure
    (unions of at most 4 verified blocks/separators), adhesion at most 6, and
    connectedness of every subtree remainder."""
    rep = ValidationReport()
    ok, witness = _check_tree_axioms(g, d)
    rep.add("tree-decomposition", ok, witness)
    if not ok:
        # remaining checks would be meaningless
        for name in ("height", "bag-structure", "adhesion", "connected-remainders"):
            rep.add(name, False, "skipped: not a tree decomposition")
        return rep

    bound = math.ceil(2 * math.log2(g.n)) if g.n >= 2 else 0
    h = d.height()
    rep.add("height", h <= bound, f"height {h} > {bound}")

    cross_check = g.n <= 120
    tutte_blocks: list[frozenset[int]] | None = None

    def blocks_of_g():
        nonlocal tutte_blocks
        if tutte_blocks is None:
            tutte_blocks = [frozenset(b) for b in tutte_block_decomposition(g).bags.values()]
        return tutte_blocks

    bag_ok = True
    bag_witness = ""
    unit_cache: dict[tuple[str, frozenset[int]], tuple[bool, str]] = {}
    if d.units is not None:
        for t in d.nodes():
            units = d.units.get(t, ())
            if len(units) > 4:
                bag_ok, bag_witness = False, f"node {t} has {len(units)} units"
                break
            union = frozenset().union(*(u.members for u in units)) if units else frozenset()
            if union != d.bags[t]:
                bag_ok, bag_witness = False, f"node {t} bag is not the union of its units"
                break
            for un in units:
                key = (un.kind, un.members)
                if key not in unit_cache:
                    if un.kind in ("block", "vertex"):
                        unit_cache[key] = _verify_block_unit(g, un.members, cross_check)
                    elif un.kind == "separator":
                        if len(un.members) in (1, 2):
                            s = sorted(un.members)
                            good = _is_separator_among_blocks(g, blocks_of_g(), frozenset(un.members))
                            unit_cache[key] = (good, f"{s} is not a block separator")
                        else:
                            unit_cache[key] = (False, f"separator of size {len(un.members)}")
                    else:
                        unit_cache[key] = (False, f"unknown unit kind {un.kind}")
                good, why = unit_cache[key]
                if not good:
                    bag_ok, bag_witness = False, f"node {t}: {why}"
                    break
            if not bag_ok:
                break
    else:
        for t in d.nodes():
            if not _discover_units(g, d.bags[t], blocks_of_g()):
                bag_ok, bag_witness = False, f"node {t} bag is not a union of <= 4 blocks/separators"
                break
    rep.add("bag-structure", bag_ok, bag_witness)

    ad = d.adhesion()
    rep.add("adhesion", ad <= 6, f"adhesion {ad} > 6")

    ch = d.children()
    unions: dict[int, set[int]] = {}
    for t in reversed(list(_bfs_order(d))):
        u = set(d.bags[t])
        for c in ch[t]:
            u |= unions[c]
        unions[t] = u
    remainder_ok = True
    remainder_witness = ""
    for t in d.nodes():
        for c in ch[t]:
            outside = unions[c] - d.bags[t]
            if outside and len(_components_within(g, outside)) > 1:
                remainder_ok = False
                remainder_witness = f"child {c} of {t} has a disconnected remainder"
                break
        if not remainder_ok:
            break
    rep.add("connected-remainders", remainder_ok, remainder_witness)
    return rep


def _bfs_order(d: RootedDecomposition) -> list[int]:
    ch = d.children()
    order = [d.root]
    for t in order:
        order.extend(ch[t])
    return order
