"""Pytest fixtures for bredoncalc tests."""

import pytest

from bredoncalc import DihedralGroup


@pytest.fixture(params=[3, 5], ids=lambda p: f"p={p}")
def p(request) -> int:
    """The small odd primes every structural check runs at."""
    return request.param


@pytest.fixture
def group(p: int) -> DihedralGroup:
    return DihedralGroup(p)
