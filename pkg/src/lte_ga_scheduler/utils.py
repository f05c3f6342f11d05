"""General utility functions."""
from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal
from typing import TypeAlias

import numpy as np

SeedLike: TypeAlias = "int | np.random.SeedSequence | np.random.Generator"
"""Anything `numpy.random.default_rng()` accepts, minus `None`."""


def case_insensitive_string_compare(a: str, b: str, /) -> bool:
    """Compare `a` and `b`, stripping whitespace and ignoring case."""
    return a.strip().lower() == b.strip().lower()


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Return a generator for `seed`.

    A `Generator` instance is passed through untouched so callers can
    share one stream across several draws.
    """
    return np.random.default_rng(seed)


def derive_seed(*entropy: int) -> int:
    """Deterministically mix integers into a single 63-bit seed.

    Used to give every TTI and every repeat its own independent GA
    stream from one configured base seed.
    """
    state = np.random.SeedSequence(list(entropy)).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])


def format_real(value: float, decimals: int) -> str:
    """Format `value` with a fixed number of decimals, rounding half to even.

    Rounds the exact binary value of the float, so the output is the
    same on every platform.
    """
    quantum = Decimal(1).scaleb(-decimals)
    rounded = Decimal(value).quantize(quantum, rounding=ROUND_HALF_EVEN)
    if rounded == 0:
        rounded = abs(rounded)
    return f"{rounded:f}"
