"""The filtration spectral sequence for Σ^{ℓα}S(mγ)₊ and the cofiber route.

The orbit-sphere filtration has 2m columns. Column s holds B_{ℓ+⌈s/2⌉}[⌊s/2⌋]
(𝓑 with Burnside coefficients, B^ or 𝓑^ in cohomology). Positions use the
chart convention s + t = n − ℓ, so each page records `offset = ℓ`.

d¹ pairs column 2k with column 2k−1 (k = 1, …, m−1). Both columns hold the same
block, and the map is multiplication by p, except on the J/I summand of 𝓑
where it is the identity, and on 𝓑_0 where it is the block [[1, 0], [(p−1)/2, p]].
The E² page is declared collapsed; `higher_differential_candidates` lists
where a longer differential could still hit.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Literal

import numpy as np

import bredoncalc.exceptions as exc
from bredoncalc.cells import build_orbit_space
from bredoncalc.dihedral import LevelName, Variance, validate_prime
from bredoncalc.formulas import (
    b_group,
    orbit_space_families,
    script_b,
)
from bredoncalc.groups import FGAbelianGroup, GradedGroup, homomorphism_homology
from bredoncalc.homology import (
    Coefficients,
    IntegerChainComplex,
    check_coefficients,
    check_variance,
    evaluate_level,
    homology,
)
from bredoncalc.logging import logger

Descriptor = Literal["iso", "mult-p", "burnside-p-block", "zero"]
Position = tuple[int, int]


@dataclass(frozen=True)
class Differential:
    """One d^r between two positions, with its matrix on canonical generators."""

    source: Position
    target: Position
    descriptor: Descriptor
    matrix: tuple[tuple[int, ...], ...]  # (target generators, source generators)

    def to_json(self) -> dict[str, Any]:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "descriptor": self.descriptor,
            "matrix": [list(row) for row in self.matrix],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Differential":
        return cls(
            source=(int(data["source"][0]), int(data["source"][1])),
            target=(int(data["target"][0]), int(data["target"][1])),
            descriptor=data["descriptor"],
            matrix=tuple(tuple(int(x) for x in row) for row in data["matrix"]),
        )


@dataclass(frozen=True, eq=False)
class SpectralPage:
    """One page E^r of the filtration spectral sequence."""

    r: int
    p: int
    ell: int
    m: int
    coeff: Coefficients
    variance: Variance
    entries: Mapping[Position, FGAbelianGroup]  # nonzero entries only
    differentials: tuple[Differential, ...]  # empty once the page has collapsed

    @property
    def offset(self) -> int:
        """Chart total s + t plus offset is the true degree."""
        return self.ell

    @property
    def columns(self) -> range:
        return range(2 * self.m)

    def __getitem__(self, position: Position) -> FGAbelianGroup:
        return self.entries.get(position, FGAbelianGroup())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectralPage):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __hash__(self) -> int:
        return hash((self.r, self.p, self.ell, self.m, self.coeff, self.variance))

    def row_range(self) -> range:
        ts = [t for _, t in self.entries] or [0]
        return range(min(ts), max(ts) + 1)

    def to_json(self) -> dict[str, Any]:
        return {
            "page": self.r,
            "p": self.p,
            "ell": self.ell,
            "m": self.m,
            "coeff": self.coeff,
            "variance": self.variance,
            "offset": self.offset,
            "entries": [
                {"s": s, "t": t, **group.to_json()}
                for (s, t), group in sorted(self.entries.items())
            ],
            "differentials": [d.to_json() for d in self.differentials],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SpectralPage":
        """Rebuild a page from `to_json` output.

        Raises:
            SpectralSequenceError: If the recorded offset disagrees with ℓ
        """
        if int(data["offset"]) != int(data["ell"]):
            raise exc.SpectralSequenceError(
                f"offset {data['offset']} does not match ell {data['ell']}"
            )
        return _page(
            r=int(data["page"]),
            p=int(data["p"]),
            ell=int(data["ell"]),
            m=int(data["m"]),
            coeff=data["coeff"],
            variance=data["variance"],
            entries={
                (int(e["s"]), int(e["t"])): FGAbelianGroup.from_json(e) for e in data["entries"]
            },
            differentials=tuple(Differential.from_json(d) for d in data["differentials"]),
        )


def _page(
    *,
    r: int,
    p: int,
    ell: int,
    m: int,
    coeff: Coefficients,
    variance: Variance,
    entries: Mapping[Position, FGAbelianGroup],
    differentials: tuple[Differential, ...] = (),
) -> SpectralPage:
    return SpectralPage(
        r=r,
        p=p,
        ell=ell,
        m=m,
        coeff=coeff,
        variance=variance,
        entries=MappingProxyType(
            {pos: g for pos, g in sorted(entries.items()) if not g.is_zero}
        ),
        differentials=differentials,
    )


def _check_page_query(m: int, coeff: Coefficients, variance: Variance, p: int) -> None:
    validate_prime(p)
    check_coefficients(coeff)
    check_variance(variance)
    if m < 1:
        raise exc.ValidationError("m", f"the filtration needs m ≥ 1, got {m}")


def _column_index(s: int, ell: int) -> int:
    """The block index ℓ + ⌈s/2⌉ of column s."""
    return ell + (s + 1) // 2


def _block(index: int, n: int, coeff: Coefficients, variance: Variance) -> FGAbelianGroup:
    return (b_group if coeff == "constant" else script_b)(index, n, variance)


def _position(s: int, n: int, ell: int) -> Position:
    """Chart position of block degree n in column s."""
    return s, n + s // 2 - ell - s


def build_E1(
    ell: int, m: int, coeff: Coefficients, variance: Variance = "covariant", *, p: int
) -> SpectralPage:
    """The E¹ page for Σ^{ℓα}S(mγ)₊ with its d¹ differentials.

    Raises:
        ValidationError: If m < 1 or the coefficients or variance are unknown
    """
    _check_page_query(m, coeff, variance, p)
    entries: dict[Position, FGAbelianGroup] = {}
    for s in range(2 * m):
        index = _column_index(s, ell)
        for n in range(-abs(index), abs(index) + 1):
            group = _block(index, n, coeff, variance)
            if not group.is_zero:
                entries[_position(s, n, ell)] = group

    differentials = []
    for k in range(1, m):
        index = ell + k
        even, odd = 2 * k, 2 * k - 1
        for n in range(-abs(index), abs(index) + 1):
            group = _block(index, n, coeff, variance)
            if group.is_zero:
                continue
            descriptor, matrix = _d1_matrix(group, n, index, coeff, variance, p)
            source, target = _position(even, n, ell), _position(odd, n, ell)
            if variance == "contravariant":
                source, target = target, source
            differentials.append(Differential(source, target, descriptor, matrix))
    page = _page(
        r=1,
        p=p,
        ell=ell,
        m=m,
        coeff=coeff,
        variance=variance,
        entries=entries,
        differentials=tuple(differentials),
    )
    logger.debug(
        "Built E1: ell=%d, m=%d, coeff=%s, variance=%s, entries=%d, d1=%d",
        ell,
        m,
        coeff,
        variance,
        len(page.entries),
        len(page.differentials),
    )
    return page


def _d1_matrix(
    group: FGAbelianGroup,
    n: int,
    index: int,
    coeff: Coefficients,
    variance: Variance,
    p: int,
) -> tuple[Descriptor, tuple[tuple[int, ...], ...]]:
    if coeff == "burnside" and n == 0:
        if index == 0:
            block = ((1, 0), ((p - 1) // 2, p))
            if variance == "contravariant":
                block = tuple(zip(*block))
            return "burnside-p-block", block
        return "iso", ((1,),)
    size = group.generator_count
    return "mult-p", tuple(tuple(p if i == j else 0 for j in range(size)) for i in range(size))


def turn_page(page: SpectralPage) -> SpectralPage:
    """Take homology with respect to d¹ and return the collapsed E² page.

    Raises:
        SpectralSequenceError: If the page is not E¹ or a differential leaves
            the recorded entries
    """
    if page.r != 1:
        raise exc.SpectralSequenceError(f"only E1 can be turned, got E{page.r}")
    entries = dict(page.entries)
    for d in page.differentials:
        if d.source not in page.entries or d.target not in page.entries:
            raise exc.SpectralSequenceError("differential between empty positions", d.source)
        try:
            kernel, cokernel = homomorphism_homology(
                np.array(d.matrix, dtype=object), page[d.source], page[d.target]
            )
        except exc.ValidationError as e:
            raise exc.SpectralSequenceError(str(e), d.source) from None
        entries[d.source] = kernel
        entries[d.target] = cokernel
    turned = _page(
        r=2,
        p=page.p,
        ell=page.ell,
        m=page.m,
        coeff=page.coeff,
        variance=page.variance,
        entries=entries,
    )
    candidates = higher_differential_candidates(turned)
    if candidates:
        logger.warning(
            "Declared collapse at E2 with %d unexcluded higher differentials: %s",
            len(candidates),
            candidates,
        )
    return turned


def higher_differential_candidates(page: SpectralPage) -> list[tuple[Position, Position, int]]:
    """Positions where some d_r, r ≥ max(2, page), is not ruled out.

    A d_r is ruled out when its target lies outside the page or when every
    homomorphism from source to target vanishes.
    """
    step = 1 if page.variance == "covariant" else -1
    found = []
    for (s, t), source in page.entries.items():
        for r in range(max(2, page.r), 2 * page.m):
            target = (s - step * r, t + step * (r - 1))
            if target in page.entries and source.admits_nonzero_map_to(page.entries[target]):
                found.append(((s, t), target, r))
    return found


def _family(s: int, m: int) -> str:
    if s == 0:
        return "base"
    if s == 2 * m - 1:
        return "top"
    return "interval"


def assemble(
    page: SpectralPage,
    *,
    chart_degrees: bool = False,
    columns: range | None = None,
) -> GradedGroup:
    """Add up a collapsed page along total degree.

    Each family (base column, top column, interior columns) may contribute at
    most one entry per total degree; families are summed directly.

    Args:
        page: An E² page from `turn_page`
        chart_degrees: Report chart totals s + t instead of true degrees
        columns: Only assemble these columns

    Raises:
        SpectralSequenceError: If the page still carries differentials, or a
            family meets itself in one total degree
    """
    if page.differentials:
        raise exc.SpectralSequenceError("page still has differentials; turn it first")
    offset = 0 if chart_degrees else page.offset
    seen: dict[tuple[str, int], Position] = {}
    groups: list[tuple[int, FGAbelianGroup]] = []
    for (s, t), group in page.entries.items():
        if columns is not None and s not in columns:
            continue
        degree = s + t + offset
        key = (_family(s, page.m), degree)
        if key in seen:
            raise exc.SpectralSequenceError(
                f"extension problem in degree {degree}: {seen[key]} and {(s, t)}", (s, t)
            )
        seen[key] = (s, t)
        groups.append((degree, group))
    return GradedGroup.create(groups)


def cofiber_assemble(
    ell: int, m: int, coeff: Coefficients, variance: Variance = "covariant", *, p: int
) -> GradedGroup:
    """S^{ℓα+mγ} from the cofiber sequence Σ^{ℓα}S(mγ)₊ → S^{ℓα} → S^{ℓα+mγ}.

    The top and interval families of the orbit space move up one degree
    through the connecting map. The base family maps to S^{ℓα}: with constant
    coefficients by the transfer ×p (homology, cokernel kept) or the
    restriction, an isomorphism (cohomology, kernel kept); with Burnside
    coefficients the induction has cokernel 𝓑_ℓ and the restriction has
    kernel 𝓑^ℓ.

    Raises:
        ValidationError: If m < 1 or the coefficients or variance are unknown
    """
    _check_page_query(m, coeff, variance, p)
    families = orbit_space_families(ell, m, coeff, variance, p=p)
    base = families.base
    if coeff == "constant":
        # ×p in homology, the identity in cohomology
        factor = p if variance == "covariant" else 1
        parts = []
        for n, group in base.groups.items():
            matrix = np.diag([factor] * group.generator_count).astype(object)
            kernel, cokernel = homomorphism_homology(matrix, group, group)
            parts.append((n, cokernel if variance == "covariant" else kernel))
        base = GradedGroup.create(parts)
    return base + (families.top + families.interval).shift(1)


# Chain-level columns


def _filtered_complex(
    ell: int, m: int, coeff: Coefficients, variance: Variance, p: int, i: int, level: LevelName
) -> IntegerChainComplex:
    if ell < 0:
        raise exc.NoChainModelError(f"{ell}a+{m}g")
    return evaluate_level(build_orbit_space(p, ell, m, i), coeff, level, variance)


def chain_window(
    ell: int,
    m: int,
    coeff: Coefficients,
    variance: Variance = "covariant",
    *,
    p: int,
    lo: int,
    hi: int,
    i: int = 1,
    level: LevelName = "G",
) -> GradedGroup:
    """Homology of the filtration subquotient F_hi / F_{lo−1} of the chain model.

    Raises:
        NoChainModelError: If ℓ < 0
    """
    _check_page_query(m, coeff, variance, p)
    complex_ = _filtered_complex(ell, m, coeff, variance, p, i, level)
    return homology(complex_.window(lo, hi))


def chain_columns(
    ell: int,
    m: int,
    coeff: Coefficients,
    variance: Variance = "covariant",
    *,
    p: int,
    i: int = 1,
    level: LevelName = "G",
) -> SpectralPage:
    """The E¹ entries computed from the chain model, one column at a time.

    Raises:
        NoChainModelError: If ℓ < 0
    """
    _check_page_query(m, coeff, variance, p)
    complex_ = _filtered_complex(ell, m, coeff, variance, p, i, level)
    entries = {}
    for s in range(2 * m):
        for n, group in homology(complex_.window(s, s)).groups.items():
            entries[(s, n - ell - s)] = group
    return _page(r=1, p=p, ell=ell, m=m, coeff=coeff, variance=variance, entries=entries)
