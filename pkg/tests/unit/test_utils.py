"""Tests for utils.py."""
from __future__ import annotations

import numpy as np
import pytest

from lte_ga_scheduler import utils


@pytest.mark.parametrize(
    ("value", "decimals", "expected"),
    [
        (0.5, 0, "0"),
        (1.5, 0, "2"),
        (2.5, 0, "2"),
        (0.125, 2, "0.12"),
        (0.375, 2, "0.38"),
        (-0.0, 3, "0.000"),
        (-1e-9, 6, "0.000000"),
        (1234.5, 6, "1234.500000"),
    ],
)
def test_format_real_rounds_half_to_even(value: float, decimals: int, expected: str) -> None:
    """Ties go to the even digit, negative zero loses its sign."""
    assert utils.format_real(value, decimals) == expected


def test_derive_seed_is_deterministic_and_mixes_entropy() -> None:
    """Same entropy gives the same seed, any change gives another one."""
    assert utils.derive_seed(1, 2, 3) == utils.derive_seed(1, 2, 3)
    assert utils.derive_seed(1, 2, 3) != utils.derive_seed(1, 2, 4)
    assert utils.derive_seed(1, 2, 3) != utils.derive_seed(1, 3, 2)
    assert 0 <= utils.derive_seed(7) < 2**63


def test_make_rng_passes_generators_through() -> None:
    """A generator is shared, not reseeded."""
    rng = np.random.default_rng(0)
    assert utils.make_rng(rng) is rng
    assert utils.make_rng(5).integers(1000) == np.random.default_rng(5).integers(1000)


def test_case_insensitive_string_compare() -> None:
    """Whitespace and case are ignored."""
    assert utils.case_insensitive_string_compare(" Test ", "test")
    assert not utils.case_insensitive_string_compare("local", "test")
