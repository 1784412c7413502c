"""Brute-force ground truth: isomorphism with witness, the bijective pebble
game, exhaustive separator search, and naive colour refinement.

These are deliberately independent of the production paths they cross-check:
the game evaluates the per-round multiset condition directly (the "exists a
bijection" step is a bipartite matching), and colour refinement here is the
classic neighbour-multiset loop, not the tuple engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError
from .graph import Graph, atp_code, connected_components, separates
from .limits import DEFAULT_LIMITS


@dataclass(frozen=True)
class IsoWitness:
    mapping: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.mapping is not None


@dataclass(frozen=True)
class GamePosition:
    left: tuple[int, ...]
    right: tuple[int, ...]
    rounds: int


# ---------------------------------------------------------------------------
# Isomorphism by backtracking
# ---------------------------------------------------------------------------


def verify_mapping(g: Graph, h: Graph, mapping) -> bool:
    if len(mapping) != g.n:
        return False
    if sorted(mapping) != list(range(h.n)):
        return False
    for u in range(g.n):
        if {mapping[w] for w in g.adjacency[u]} != set(h.adjacency[mapping[u]]):
            return False
    return True


def brute_force_isomorphic(
    g: Graph,
    h: Graph,
    pinned: tuple[tuple[int, ...], tuple[int, ...]] | None = None,
    max_n: int | None = None,
) -> IsoWitness:
    """Backtracking search for an isomorphism g -> h, most-constrained vertex
    first, candidates filtered by joint refinement colours.  `pinned` fixes an
    ordered tuple of g-vertices to an ordered tuple of h-vertices."""
    cap = max_n if max_n is not None else DEFAULT_LIMITS.oracle_max_n
    if g.n > cap or h.n > cap:
        raise PreconditionError(f"oracle size cap {cap} exceeded: {g.n}, {h.n}")
    if g.n != h.n or g.m != h.m:
        return IsoWitness(None)
    if sorted(map(g.degree, range(g.n))) != sorted(map(h.degree, range(h.n))):
        return IsoWitness(None)

    colours_g, colours_h = _joint_refinement(g, h)
    if colours_g is None:
        return IsoWitness(None)
    h_by_colour: dict[int, list[int]] = {}
    for v in range(h.n):
        h_by_colour.setdefault(colours_h[v], []).append(v)

    mapping: list[int | None] = [None] * g.n
    used = [False] * h.n

    if pinned is not None:
        src, dst = pinned
        if len(src) != len(dst):
            return IsoWitness(None)
        for a, b in zip(src, dst):
            if mapping[a] is None:
                if used[b] or colours_g[a] != colours_h[b]:
                    return IsoWitness(None)
                mapping[a] = b
                used[b] = True
            elif mapping[a] != b:
                return IsoWitness(None)

    def candidates(u):
        out = []
        for v in h_by_colour.get(colours_g[u], ()):
            if used[v]:
                continue
            ok = True
            for w in range(g.n):
                mw = mapping[w]
                if mw is not None and w != u and g.has_edge(u, w) != h.has_edge(v, mw):
                    ok = False
                    break
            if ok:
                out.append(v)
        return out

    def search() -> bool:
        best_u, best_cands = None, None
        for u in range(g.n):
            if mapping[u] is None:
                cands = candidates(u)
                if best_cands is None or len(cands) < len(best_cands):
                    best_u, best_cands = u, cands
                    if not cands:
                        return False
        if best_u is None:
            return True
        for v in best_cands:
            mapping[best_u] = v
            used[v] = True
            if search():
                return True
            mapping[best_u] = None
            used[v] = False
        return False

    if search():
        result = tuple(mapping)  # type: ignore[arg-type]
        assert verify_mapping(g, h, result)
        return IsoWitness(result)
    return IsoWitness(None)


def _joint_refinement(g: Graph, h: Graph):
    """Shared colour-refinement colours for both graphs; (None, None) when the
    colour histograms ever differ (then the graphs are non-isomorphic)."""
    cg = [0] * g.n
    ch = [0] * h.n
    while True:
        sig_g = [(cg[v], tuple(sorted(cg[w] for w in g.adjacency[v]))) for v in range(g.n)]
        sig_h = [(ch[v], tuple(sorted(ch[w] for w in h.adjacency[v]))) for v in range(h.n)]
        table = {s: i for i, s in enumerate(sorted(set(sig_g) | set(sig_h)))}
        ng = [table[s] for s in sig_g]
        nh = [table[s] for s in sig_h]
        if sorted(ng) != sorted(nh):
            return None, None
        if ng == cg and nh == ch:
            return cg, ch
        cg, ch = ng, nh


# ---------------------------------------------------------------------------
# Bijective pebble game
# ---------------------------------------------------------------------------


def _bipartite_has_perfect_matching(ok: list[list[bool]]) -> bool:
    n = len(ok)
    match_right: list[int | None] = [None] * n

    def augment(u, seen):
        for v in range(n):
            if ok[u][v] and v not in seen:
                seen.add(v)
                if match_right[v] is None or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    for u in range(n):
        if not augment(u, set()):
            return False
    return True


class _PebbleGame:
    """Survival tables for the bijective k-pebble game on a fixed graph pair.

    survive_r holds exactly when the two pebbled tuples get equal colours in
    the r-th refinement round: at r=0 their atomic types agree, and at r+1
    there additionally is a bijection f matching every extension vertex v to
    f(v) with equal extended atomic types and, for every pebble index, the
    replaced positions surviving r rounds.
    """

    def __init__(self, g: Graph, h: Graph, k: int, prune: bool):
        self.g, self.h, self.k = g, h, k
        self.tables: list[dict[tuple, bool]] = []
        self.prune_classes = None
        if prune and g.n == h.n:
            cg, ch = _joint_refinement(g, h)
            if cg is None:
                self.prune_classes = "mismatch"
            else:
                self.prune_classes = (cg, ch)

    def survives(self, left: tuple[int, ...], right: tuple[int, ...], rounds: int) -> bool:
        if self.g.n != self.h.n:
            return False
        while len(self.tables) <= rounds:
            self._build(len(self.tables))
        return self.tables[rounds][(left, right)]

    def _positions(self):
        from itertools import product

        tuples_g = list(product(range(self.g.n), repeat=self.k))
        tuples_h = list(product(range(self.h.n), repeat=self.k))
        return [(a, b) for a in tuples_g for b in tuples_h]

    def _build(self, r: int) -> None:
        g, h, k = self.g, self.h, self.k
        table: dict[tuple, bool] = {}
        if r == 0:
            for a, b in self._positions():
                table[(a, b)] = atp_code(g, a) == atp_code(h, b)
            self.tables.append(table)
            return
        prev = self.tables[r - 1]
        n = g.n
        for a, b in self._positions():
            if not prev[(a, b)]:
                table[(a, b)] = False
                continue
            ok = [[False] * n for _ in range(n)]
            for v in range(n):
                for w in range(n):
                    if self.prune_classes == "mismatch":
                        break
                    if isinstance(self.prune_classes, tuple):
                        cg, ch = self.prune_classes
                        if cg[v] != ch[w]:
                            continue
                    if atp_code(g, a + (v,)) != atp_code(h, b + (w,)):
                        continue
                    good = True
                    for j in range(k):
                        ra = a[:j] + (v,) + a[j + 1:]
                        rb = b[:j] + (w,) + b[j + 1:]
                        if not prev[(ra, rb)]:
                            good = False
                            break
                    ok[v][w] = good
            table[(a, b)] = _bipartite_has_perfect_matching(ok)
        self.tables.append(table)


_game_cache: dict[tuple, _PebbleGame] = {}


def pebble_game_equivalent(
    g: Graph,
    u: tuple[int, ...],
    h: Graph,
    v: tuple[int, ...],
    k: int,
    rounds: int,
    prune: bool = False,
) -> bool:
    lim = DEFAULT_LIMITS
    if g.n > lim.pebble_max_n or h.n > lim.pebble_max_n:
        raise PreconditionError(f"pebble game size cap {lim.pebble_max_n} exceeded")
    if k > lim.pebble_max_k:
        raise PreconditionError(f"pebble game dimension cap {lim.pebble_max_k} exceeded")
    if rounds > lim.pebble_max_rounds:
        raise PreconditionError(f"pebble game round cap {lim.pebble_max_rounds} exceeded")
    if len(u) != k or len(v) != k:
        raise PreconditionError("pebbled tuples must have length k")
    key = (g, h, k, prune)
    game = _game_cache.get(key)
    if game is None:
        game = _PebbleGame(g, h, k, prune)
        if len(_game_cache) > 64:
            _game_cache.clear()
        _game_cache[key] = game
    return game.survives(tuple(u), tuple(v), rounds)


# ---------------------------------------------------------------------------
# Separator enumeration and naive refinement
# ---------------------------------------------------------------------------


def enumerate_separators(g: Graph, x, max_size: int = 2) -> list[frozenset[int]]:
    """Every S with |S| <= max_size separating x, minimal or not."""
    if max_size > 2:
        raise PreconditionError("separator enumeration is capped at size 2")
    x = frozenset(x)
    out = []
    for size in range(max_size + 1):
        for s in combinations(range(g.n), size):
            if separates(g, frozenset(s), x):
                out.append(frozenset(s))
    return out


def naive_colour_refinement(g: Graph) -> list[frozenset[int]]:
    """Coarsest stable partition under iterated neighbour-colour multisets,
    returned as colour classes sorted by smallest member."""
    colours = [0] * g.n
    while True:
        sigs = [
            (colours[v], tuple(sorted(colours[w] for w in g.adjacency[v])))
            for v in range(g.n)
        ]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if new == colours:
            break
        colours = new
    classes: dict[int, set[int]] = {}
    for v, c in enumerate(colours):
        classes.setdefault(c, set()).add(v)
    return [frozenset(c) for c in sorted(classes.values(), key=min)]
