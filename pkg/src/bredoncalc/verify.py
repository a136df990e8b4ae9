"""Cross-validation grid: every route against the closed forms.

Each case is a plain synchronous computation. `run_grid` fans them out over
worker threads with `asyncio.to_thread`, bounded by a semaphore, and returns
the results in a fixed order so the report is deterministic.
"""

import asyncio
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal

from bredoncalc.cells import build_orbit_space, build_representation_sphere
from bredoncalc.dihedral import Variance, validate_prime
from bredoncalc.formulas import compare, orbit_space_formula, sphere_formula
from bredoncalc.groups import GradedGroup
from bredoncalc.homology import COEFFICIENTS, Coefficients, bredon
from bredoncalc.logging import logger
from bredoncalc.spectral import assemble, build_E1, cofiber_assemble, turn_page

CaseKind = Literal["sign-chain", "sphere-chain", "orbit-chain", "orbit-spectral", "sphere-cofiber"]
VARIANCES: tuple[Variance, ...] = ("covariant", "contravariant")


@dataclass(frozen=True)
class GridConfig:
    """Which cases to run and how many at once."""

    primes: tuple[int, ...] = (3, 5)
    max_l: int = 3
    max_m: int = 3
    coefficients: tuple[Coefficients, ...] = COEFFICIENTS
    variances: tuple[Variance, ...] = VARIANCES
    concurrency: int = 4  # worker threads in flight

    def __post_init__(self) -> None:
        for p in self.primes:
            validate_prime(p)


@dataclass(frozen=True, order=True)
class Case:
    kind: CaseKind
    p: int
    coeff: Coefficients
    variance: Variance
    ell: int
    m: int

    def __str__(self) -> str:
        return f"{self.kind} p={self.p} {self.coeff} {self.variance} l={self.ell} m={self.m}"


@dataclass(frozen=True)
class CaseResult:
    case: Case
    ok: bool
    detail: str = field(default="", compare=False)

    def __str__(self) -> str:
        line = f"{'PASS' if self.ok else 'FAIL'} {self.case}"
        return line if self.ok else f"{line}\n{self.detail}"


def cases(config: GridConfig) -> list[Case]:
    """Enumerate the grid in a fixed order.

    Chain routes cover ℓ ≥ 0; the spectral and cofiber routes also cover
    −max_l ≤ ℓ < 0.
    """
    found = []
    for p in config.primes:
        for coeff in config.coefficients:
            for variance in config.variances:
                for ell in range(config.max_l + 1):
                    found.append(Case("sign-chain", p, coeff, variance, ell, 0))
                for ell in range(-config.max_l, config.max_l + 1):
                    for m in range(1, config.max_m + 1):
                        if ell >= 0:
                            found.append(Case("sphere-chain", p, coeff, variance, ell, m))
                            found.append(Case("orbit-chain", p, coeff, variance, ell, m))
                        found.append(Case("orbit-spectral", p, coeff, variance, ell, m))
                        found.append(Case("sphere-cofiber", p, coeff, variance, ell, m))
    return sorted(found)


def _computed(case: Case) -> GradedGroup:
    p, coeff, variance, ell, m = case.p, case.coeff, case.variance, case.ell, case.m
    routes: dict[CaseKind, Callable[[], GradedGroup]] = {
        "sign-chain": lambda: bredon(build_representation_sphere(p, ell, 0), coeff, "G", variance),
        "sphere-chain": lambda: bredon(
            build_representation_sphere(p, ell, m), coeff, "G", variance
        ),
        "orbit-chain": lambda: bredon(build_orbit_space(p, ell, m), coeff, "G", variance),
        "orbit-spectral": lambda: assemble(turn_page(build_E1(ell, m, coeff, variance, p=p))),
        "sphere-cofiber": lambda: cofiber_assemble(ell, m, coeff, variance, p=p),
    }
    return routes[case.kind]()


def _expected(case: Case) -> GradedGroup:
    if case.kind.startswith("orbit"):
        return orbit_space_formula(case.ell, case.m, case.coeff, case.variance, p=case.p)
    return sphere_formula(case.ell, case.m, case.coeff, case.variance, p=case.p)


def run_case(case: Case) -> CaseResult:
    """Run one case; exceptions count as failures."""
    try:
        report = compare(_computed(case), _expected(case))
    except Exception as e:
        logger.warning("Case raised: case=%s, error=%s", case, e)
        return CaseResult(case, False, f"  error: {e}")
    return CaseResult(case, report.ok, "\n".join(f"  {line}" for line in str(report).splitlines()))


async def run_grid(config: GridConfig | None = None) -> list[CaseResult]:
    """Run every case of the grid concurrently.

    Returns:
        Results in case order
    """
    config = config or GridConfig()
    semaphore = asyncio.Semaphore(config.concurrency)

    async def run_one(case: Case) -> CaseResult:
        async with semaphore:
            return await asyncio.to_thread(run_case, case)

    grid = cases(config)
    results = await asyncio.gather(*(run_one(case) for case in grid))
    logger.debug(
        "Grid complete: cases=%d, failed=%d", len(results), sum(1 for r in results if not r.ok)
    )
    return sorted(results, key=lambda r: r.case)


def render(results: list[CaseResult]) -> str:
    failed = sum(1 for r in results if not r.ok)
    lines = [str(r) for r in results]
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"
