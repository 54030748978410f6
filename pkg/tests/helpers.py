"""Shared helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hanoiduel import Ending, GameConfig, Weights, parse, replay


def rational_triples(seed: int, count: int, lo: int = -6, hi: int = 6,
                     max_den: int = 4) -> list[Weights]:
    """Deterministic stream of rational weight triples."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        parts = tuple(
            Fraction(rng.randint(lo, hi), rng.randint(1, max_den))
            for _ in range(3)
        )
        out.append(Weights(*parts))
    return out


def nonuniform_triples(seed: int, count: int) -> list[Weights]:
    rng_seed = seed
    out: list[Weights] = []
    while len(out) < count:
        batch = rational_triples(rng_seed, count)
        out.extend(w for w in batch if not w.is_uniform)
        rng_seed += 1
    return out[:count]


def replay_text(cfg: GameConfig, text: str, weights: Weights | None = None):
    return replay(cfg, None, parse(text), weights)


def applicable_endings(disks: int) -> list[Ending]:
    """Endings that a board with this many disks can be configured with."""
    return [
        e
        for e in Ending
        if not (disks == 1 and e in (Ending.RETURN_LARGEST, Ending.RETURN_SMALLEST))
    ]
