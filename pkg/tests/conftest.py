"""Shared fixtures and the small shape pool used across test modules."""

import pytest

from ratherm import FieldConfig, HermiteData

RAT = FieldConfig.rationals()
GF13 = FieldConfig.prime(13)

# (n_vec, k) pairs small enough that every route runs in exact arithmetic
# in well under a second.
SHAPES = [
    ((2, 1), 2),
    ((3, 1), 2),
    ((2, 2), 3),
    ((5,), 3),
    ((1, 1, 1), 2),
    ((4, 2), 4),
    ((2, 2, 1), 3),
]


@pytest.fixture
def golden():
    """The worked unattainable instance: u=(1,2), multiplicities (2,1), k=2."""
    return HermiteData((1, 2), (2, 1), ((1, 0), (0,)), 2, RAT)
