"""k-dimensional Weisfeiler-Leman refinement with per-round traces.

Round counting: round 0 is the atomic-type colouring; round i+1 refines round
i by the signature (previous colour, multiset over all vertices v of the
extended atomic type together with the colours of the k tuples obtained by
substituting v for each coordinate, last coordinate first).  The stable index
is the smallest i whose partition equals round i+1's.

Colour ids are dense and canonical per round (assigned in sorted order of the
signature digests), so histograms are comparable across separate runs of
isomorphic graphs; wl_joint additionally shares the signature table between
two graphs so that colour ids are directly comparable across them.  Signatures
are reduced to 128-bit blake2b digests before renumbering, which keeps one
round's data linear in the number of tuples.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .errors import NotStableError, PreconditionError, ResourceCapError
from .graph import Graph
from .limits import DEFAULT_LIMITS


@dataclass
class ColouringTrace:
    k: int
    n: int
    rounds: list[np.ndarray]            # per round, colour id per tuple index
    histograms: list[dict[int, int]]    # per round, colour -> count
    stable_index: int | None            # None when truncated by max_rounds

    @property
    def num_rounds(self) -> int:
        return len(self.rounds)

    def tuple_index(self, tup) -> int:
        idx = 0
        for u in tup:
            idx = idx * self.n + u
        return idx

    def colour_of(self, rnd: int, tup) -> int:
        """Colour of a tuple at round `rnd`; rounds past stability repeat the
        stable colouring."""
        if rnd >= len(self.rounds):
            if self.stable_index is None:
                raise NotStableError(f"trace truncated before round {rnd}")
            rnd = len(self.rounds) - 1
        return int(self.rounds[rnd][self.tuple_index(tup)])

    def num_classes(self, rnd: int) -> int:
        return len(self.histograms[min(rnd, len(self.rounds) - 1)])


@dataclass(frozen=True)
class TupleSignature:
    previous_colour: int
    entries: tuple  # sorted tuple of (extended atp code, tuple of k colours)


def stable_round(trace: ColouringTrace) -> int:
    if trace.stable_index is None:
        raise NotStableError("trace was truncated by max_rounds before stability")
    return trace.stable_index


def colour_histogram(trace: ColouringTrace, rnd: int) -> dict[int, int]:
    if rnd < 0 or rnd >= len(trace.rounds):
        raise PreconditionError(f"round {rnd} outside trace of {len(trace.rounds)} rounds")
    return dict(trace.histograms[rnd])


def trace_csv(trace: ColouringTrace) -> str:
    lines = ["round,colour,count"]
    for i, hist in enumerate(trace.histograms):
        for colour in sorted(hist):
            lines.append(f"{i},{colour},{hist[colour]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Engine internals
# ---------------------------------------------------------------------------


class _GraphState:
    def __init__(self, g: Graph, k: int):
        self.g = g
        self.k = k
        self.n = g.n
        self.size = g.n ** k
        # loops are absent, so adjacency alone encodes the (equal, adjacent)
        # bit pair except for the equal case, patched in by scatter
        self.adj8 = np.zeros((g.n, g.n), dtype=np.int16)
        for u, v in g.edges:
            self.adj8[u, v] = 1
            self.adj8[v, u] = 1
        self.strides = [g.n ** (k - 1 - j) for j in range(k)]
        self.chunk = max(1, (1 << 22) // max(1, g.n))

    def coords(self, idx: np.ndarray) -> list[np.ndarray]:
        return [(idx // s) % self.n for s in self.strides]

    def _pair_bits(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """(equal<<1 | adjacent) per position, as int64."""
        bits = self.adj8[a, b].astype(np.int64)
        bits[a == b] = 2
        return bits

    def round0_codes(self) -> np.ndarray:
        """Atomic-type code per k-tuple (vectorized analogue of graph.atp_code)."""
        k = self.k
        if self.size == 0:
            return np.zeros(0, dtype=np.int64)
        idx = np.arange(self.size, dtype=np.int64)
        us = self.coords(idx)
        code = np.zeros(self.size, dtype=np.int64)
        for i in range(k):
            for j in range(i + 1, k):
                code = (code << 2) | self._pair_bits(us[i], us[j])
        return code

    def _replacement_layouts(self, colours: np.ndarray) -> list[np.ndarray]:
        """For each coordinate j, the colours reshaped so that axis j is last:
        layout[j][r, v] is the colour of the tuple with coordinate j set to v
        and the remaining coordinates packed into row r."""
        n, k = self.n, self.k
        grid = colours.reshape((n,) * k)
        layouts = []
        for j in range(k):
            axes = [i for i in range(k) if i != j] + [j]
            layouts.append(np.ascontiguousarray(grid.transpose(axes)).reshape(-1, n))
        return layouts

    def signature_digests(self, colours: np.ndarray, num_colours: int) -> np.ndarray:
        """(size, 2) int64 view of the 128-bit digest of each tuple's signature."""
        n, k = self.n, self.k
        out = np.empty((self.size, 2), dtype=np.int64)
        bits_c = max(1, int(num_colours - 1).bit_length())
        fixed_bits = k * (k + 1)  # 2 bits per index pair of the extended tuple
        narrow = fixed_bits + k * bits_c <= 63
        colours64 = colours.astype(np.int64)
        layouts = self._replacement_layouts(colours64)
        blake = hashlib.blake2b
        for start in range(0, self.size, self.chunk):
            idx = np.arange(start, min(start + self.chunk, self.size), dtype=np.int64)
            us = self.coords(idx)
            rowsel = np.arange(len(idx))
            base = np.zeros(len(idx), dtype=np.int64)
            for i in range(k):
                for j in range(i + 1, k):
                    base = (base << 2) | self._pair_bits(us[i], us[j])
            var = np.zeros((len(idx), n), dtype=np.int16)
            for i in range(k):
                vals = self.adj8[us[i]].copy()
                vals[rowsel, us[i]] = 2
                np.left_shift(var, 2, out=var)
                np.bitwise_or(var, vals, out=var)
            rows_idx = []
            for j in range(k - 1, -1, -1):  # last coordinate replaced first
                s = self.strides[j]
                rows_idx.append((idx // (s * n)) * s + (idx % s))
            if narrow:
                packed = np.empty((len(idx), n), dtype=np.int64)
                np.left_shift(base[:, None], 2 * k, out=packed)
                np.bitwise_or(packed, var, out=packed)
                for j, row in zip(range(k - 1, -1, -1), rows_idx):
                    np.left_shift(packed, bits_c, out=packed)
                    np.bitwise_or(packed, layouts[j][row], out=packed)
                packed.sort(axis=1)
                rows = np.concatenate([colours64[idx][:, None], packed], axis=1)
            else:
                # split the entry across two int64 words and sort rows by
                # (hi, lo) with two stable argsorts
                hi_slots = max(0, (63 - fixed_bits) // bits_c)
                hi = (base[:, None] << np.int64(2 * k)) | var
                lo = np.zeros_like(hi)
                for pos, (j, row) in enumerate(zip(range(k - 1, -1, -1), rows_idx)):
                    target = hi if pos < hi_slots else lo
                    np.left_shift(target, bits_c, out=target)
                    np.bitwise_or(target, layouts[j][row], out=target)
                order = np.argsort(lo, axis=1, kind="stable")
                hi = np.take_along_axis(hi, order, axis=1)
                lo = np.take_along_axis(lo, order, axis=1)
                order = np.argsort(hi, axis=1, kind="stable")
                hi = np.take_along_axis(hi, order, axis=1)
                lo = np.take_along_axis(lo, order, axis=1)
                rows = np.concatenate([colours64[idx][:, None], hi, lo], axis=1)
            buf = memoryview(np.ascontiguousarray(rows)).cast("B")
            rb = rows.shape[1] * 8
            for i in range(rows.shape[0]):
                d = blake(buf[i * rb:(i + 1) * rb], digest_size=16).digest()
                out[start + i] = np.frombuffer(d, dtype=np.int64)
        return out


def _renumber_joint(arrays: list[np.ndarray]) -> tuple[list[np.ndarray], int]:
    """Dense canonical ids shared across the given digest/code arrays."""
    twod = [a if a.ndim == 2 else a[:, None] for a in arrays]
    stacked = np.concatenate(twod, axis=0) if len(twod) > 1 else twod[0]
    view = np.ascontiguousarray(stacked).view(
        np.dtype((np.void, stacked.dtype.itemsize * stacked.shape[1]))
    ).ravel()
    _, inverse = np.unique(view, return_inverse=True)
    inverse = inverse.astype(np.int64)
    out = []
    offset = 0
    for a in arrays:
        size = a.shape[0]
        out.append(inverse[offset:offset + size])
        offset += size
    count = int(inverse.max()) + 1 if inverse.size else 0
    return out, count


def _check_caps(gs: list[Graph], k: int, cap_tuples: int | None):
    lim = DEFAULT_LIMITS
    if not (1 <= k <= lim.max_wl_dimension):
        raise PreconditionError(f"k must be in 1..{lim.max_wl_dimension}, got {k}")
    cap = cap_tuples if cap_tuples is not None else lim.cap_tuples
    for g in gs:
        if g.n ** k > cap:
            raise ResourceCapError(
                f"n^k = {g.n ** k} exceeds the tuple cap {cap}"
            )


def _histogram(colours: np.ndarray) -> dict[int, int]:
    if colours.size == 0:
        return {}
    counts = np.bincount(colours)
    return {int(c): int(counts[c]) for c in np.nonzero(counts)[0]}


def _run(gs: list[Graph], k: int, max_rounds: int | None, cap_tuples: int | None):
    """Shared engine: one or two graphs refined against a joint colour table.

    Returns (per-graph rounds, per-graph histograms, per-graph stable index,
    joint-stable flag)."""
    _check_caps(gs, k, cap_tuples)
    states = [_GraphState(g, k) for g in gs]
    codes = [st.round0_codes() for st in states]
    colours, num = _renumber_joint(codes)
    rounds = [[c.astype(np.int32)] for c in colours]
    hists = [[_histogram(r[0])] for r in rounds]
    per_counts = [[len(h[0])] for h in hists]
    total = sum(st.size for st in states)
    joint_stable = False
    rnd = 0
    while True:
        if num >= total:
            joint_stable = True  # discrete partition cannot refine further
            break
        if max_rounds is not None and rnd >= max_rounds:
            break
        digests = [st.signature_digests(rounds[i][-1], num) for i, st in enumerate(states)]
        new_colours, new_num = _renumber_joint(digests)
        if new_num == num:
            joint_stable = True
            break
        for i in range(len(states)):
            c32 = new_colours[i].astype(np.int32)
            rounds[i].append(c32)
            hists[i].append(_histogram(c32))
            per_counts[i].append(len(hists[i][-1]))
        num = new_num
        rnd += 1
    stable = []
    for i in range(len(states)):
        counts = per_counts[i]
        s = None
        for j in range(len(counts) - 1):
            if counts[j] == counts[j + 1]:
                s = j
                break
        if s is None:
            if joint_stable:
                s = len(counts) - 1
            elif counts and counts[-1] == states[i].size:
                s = len(counts) - 1
        stable.append(s)
    return rounds, hists, stable, joint_stable


def wl_run(
    g: Graph, k: int, max_rounds: int | None = None, *, cap_tuples: int | None = None
) -> ColouringTrace:
    rounds, hists, stable, _ = _run([g], k, max_rounds, cap_tuples)
    return ColouringTrace(k, g.n, rounds[0], hists[0], stable[0])


def wl_joint(
    g: Graph,
    h: Graph,
    k: int,
    max_rounds: int | None = None,
    *,
    cap_tuples: int | None = None,
) -> tuple[ColouringTrace, ColouringTrace, int | None]:
    rounds, hists, stable, joint_stable = _run([g, h], k, max_rounds, cap_tuples)
    tg = ColouringTrace(k, g.n, rounds[0], hists[0], stable[0])
    th = ColouringTrace(k, h.n, rounds[1], hists[1], stable[1])
    distinguishing = None
    for i in range(max(len(hists[0]), len(hists[1]))):
        ha = hists[0][min(i, len(hists[0]) - 1)]
        hb = hists[1][min(i, len(hists[1]) - 1)]
        if ha != hb:
            distinguishing = i
            break
    return tg, th, distinguishing


def tuple_signature(g: Graph, trace: ColouringTrace, rnd: int, tup) -> TupleSignature:
    """Reference signature of a tuple at round `rnd` (feeds round rnd+1)."""
    from .graph import atp_code

    k = trace.k
    entries = []
    for v in range(g.n):
        ext = atp_code(g, tuple(tup) + (v,))
        cols = []
        for j in range(k - 1, -1, -1):
            repl = tuple(tup[:j]) + (v,) + tuple(tup[j + 1:])
            cols.append(trace.colour_of(rnd, repl))
        entries.append((ext, tuple(cols)))
    return TupleSignature(trace.colour_of(rnd, tup), tuple(sorted(entries)))


def dump_tuples(g: Graph, trace: ColouringTrace, rnd: int) -> str:
    """Debug dump: one line per tuple with its colour at round `rnd`."""
    from itertools import product

    lines = []
    for tup in product(range(g.n), repeat=trace.k):
        lines.append(f"{' '.join(map(str, tup))}\t{trace.colour_of(rnd, tup)}")
    return "\n".join(lines) + "\n"
