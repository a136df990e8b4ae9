"""Tests for the cross-validation grid.

The default grid always runs. Set BREDONCALC_FULL_GRID=1 to also run the wider one.
"""

import os

import pytest

import bredoncalc
from bredoncalc.verify import Case, CaseResult, GridConfig, cases, render, run_case, run_grid

full_grid = pytest.mark.skipif(
    not os.environ.get("BREDONCALC_FULL_GRID"), reason="BREDONCALC_FULL_GRID not set"
)


class TestCases:
    """Tests for grid enumeration."""

    def test_smallest_grid(self):
        """One prime, ℓ = 0, m = 1: five routes for each coefficient and variance."""
        assert len(cases(GridConfig(primes=(3,), max_l=0, max_m=1))) == 20

    def test_coefficients_filter(self):
        """Dropping A̲ halves the grid."""
        config = GridConfig(primes=(3,), max_l=0, max_m=1, coefficients=("constant",))
        assert len(cases(config)) == 10

    def test_negative_ell_skips_chains(self):
        """Chain routes stop at ℓ = 0; spectral and cofiber routes go below."""
        grid = cases(GridConfig(primes=(3,), max_l=1, max_m=1))
        assert len(grid) == 48
        negative = {c.kind for c in grid if c.ell < 0}
        assert negative == {"orbit-spectral", "sphere-cofiber"}

    def test_fixed_order(self):
        """Enumeration is sorted."""
        grid = cases(GridConfig(primes=(3,), max_l=1, max_m=2))
        assert grid == sorted(grid)

    def test_rejects_bad_prime(self):
        """Every prime in the config is checked."""
        with pytest.raises(bredoncalc.ParameterError):
            GridConfig(primes=(3, 4))


class TestRun:
    """Tests for running cases."""

    def test_single_case(self):
        """S^γ by chains matches the formula."""
        result = run_case(Case("sphere-chain", 3, "constant", "covariant", 0, 1))
        assert result.ok
        assert str(result) == "PASS sphere-chain p=3 constant covariant l=0 m=1"

    def test_errors_become_failures(self):
        """A case that raises is reported as failed."""
        result = run_case(Case("sphere-chain", 3, "constant", "covariant", -1, 1))
        assert not result.ok
        assert result.detail.startswith("  error:")

    async def test_small_grid(self):
        """The smallest grid passes."""
        results = await run_grid(GridConfig(primes=(3,), max_l=0, max_m=1, concurrency=2))
        assert len(results) == 20
        assert all(r.ok for r in results), render(results)
        assert [r.case for r in results] == cases(GridConfig(primes=(3,), max_l=0, max_m=1))

    def test_render_summary(self):
        """The report ends with the pass/fail tally."""
        passed = CaseResult(Case("sign-chain", 3, "constant", "covariant", 0, 0), True)
        failed = CaseResult(
            Case("sign-chain", 3, "constant", "covariant", 1, 0), False, "  degree 0: x"
        )
        text = render([passed, failed])
        assert text.endswith("1 passed, 1 failed\n")
        assert "FAIL sign-chain p=3 constant covariant l=1 m=0\n  degree 0: x" in text

    async def test_default_grid(self):
        """Every route agrees for p = 3, 5 and |ℓ|, m up to 3."""
        results = await run_grid(GridConfig())
        assert results
        assert all(r.ok for r in results), render(results)

    @full_grid
    async def test_wide_grid(self):
        """Every route agrees for p up to 7 and |ℓ|, m up to 5."""
        results = await run_grid(GridConfig(primes=(3, 5, 7), max_l=5, max_m=5))
        assert all(r.ok for r in results), render(results)
