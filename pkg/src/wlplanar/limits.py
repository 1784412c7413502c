"""Resource caps, kept as configuration rather than in-code constants."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Limits:
    max_wl_dimension: int = 3
    cap_tuples: int = 2 ** 27          # maximum n**k per WL run
    oracle_max_n: int = 12             # brute-force isomorphism default cap
    pebble_max_n: int = 7
    pebble_max_k: int = 2
    pebble_max_rounds: int = 4
    tutte_max_n: int = 1000


DEFAULT_LIMITS = Limits()
