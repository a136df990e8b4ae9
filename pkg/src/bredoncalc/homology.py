"""Levelwise evaluation of equivariant cell complexes and their (co)homology.

`evaluate_level` turns an `EquivariantCellComplex` into an ordinary
`IntegerChainComplex` for one level H and one coefficient system; `homology`
reads off the groups by Smith normal form.

Homology complexes store d_n: C_n → C_{n−1} under key n. Cohomology
complexes store δ: C^{n−1} → C^n under key n, so transposing every matrix
turns one into the other.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Literal

import numpy as np

import bredoncalc.exceptions as exc
from bredoncalc.cells import EquivariantCellComplex
from bredoncalc.dihedral import (
    DihedralGroup,
    GMap,
    GroupElement,
    LevelName,
    Subgroup,
    Variance,
    induced_map,
    pair_basis,
)
from bredoncalc.groups import FGAbelianGroup, GradedGroup
from bredoncalc.logging import logger
from bredoncalc.snf import as_integer_matrix, invariant_factors

Coefficients = Literal["constant", "burnside"]
COEFFICIENTS: tuple[Coefficients, ...] = ("constant", "burnside")


def check_coefficients(coeff: str) -> None:
    if coeff not in COEFFICIENTS:
        raise exc.ValidationError("coeff", f"must be one of {COEFFICIENTS}, got {coeff!r}")


def check_variance(variance: str) -> None:
    if variance not in ("covariant", "contravariant"):
        raise exc.ValidationError(
            "variance", f"must be covariant or contravariant, got {variance!r}"
        )


@dataclass(frozen=True, eq=False)
class IntegerChainComplex:
    """Free abelian groups with labeled bases and integer differentials."""

    name: str
    variance: Variance  # covariant: homology, contravariant: cohomology
    bases: Mapping[int, tuple[str, ...]]
    filtrations: Mapping[int, tuple[int, ...]]  # filtration index per basis element
    differentials: Mapping[int, np.ndarray]

    @classmethod
    def create(
        cls,
        *,
        ranks: Mapping[int, int],
        differentials: Mapping[int, object],
        variance: Variance = "covariant",
        name: str = "",
        labels: Mapping[int, tuple[str, ...]] | None = None,
        filtrations: Mapping[int, tuple[int, ...]] | None = None,
    ) -> "IntegerChainComplex":
        """Create a complex from ranks and differential matrices.

        Raises:
            ValidationError: If a matrix has the wrong shape
        """
        check_variance(variance)
        bases = {
            n: tuple(labels[n]) if labels else tuple(f"e{n}_{k}" for k in range(r))
            for n, r in ranks.items()
        }
        filt = {n: tuple(filtrations[n]) if filtrations else (0,) * r for n, r in ranks.items()}
        matrices = {}
        for n, matrix in differentials.items():
            source, target = (n, n - 1) if variance == "covariant" else (n - 1, n)
            shape = (ranks.get(target, 0), ranks.get(source, 0))
            array = np.array(matrix, dtype=np.int64)
            if array.size == 0:
                array = np.zeros(shape, dtype=np.int64)
            if array.shape != shape:
                raise exc.ValidationError(
                    "differentials", f"matrix {n} must have shape {shape}, got {array.shape}"
                )
            matrices[n] = array
        return cls(
            name=name,
            variance=variance,
            bases=MappingProxyType(bases),
            filtrations=MappingProxyType(filt),
            differentials=MappingProxyType(matrices),
        )

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(n for n in self.bases if self.bases[n]))

    def _matrix(self, key: int) -> np.ndarray:
        if key in self.differentials:
            return self.differentials[key]
        if self.variance == "covariant":
            return np.zeros((self.rank(key - 1), self.rank(key)), dtype=np.int64)
        return np.zeros((self.rank(key), self.rank(key - 1)), dtype=np.int64)

    def outgoing(self, n: int) -> np.ndarray:
        """The differential leaving degree n."""
        return self._matrix(n if self.variance == "covariant" else n + 1)

    def incoming(self, n: int) -> np.ndarray:
        """The differential arriving in degree n."""
        return self._matrix(n + 1 if self.variance == "covariant" else n)

    def window(self, lo: int, hi: int) -> "IntegerChainComplex":
        """The filtration subquotient F_hi / F_{lo−1}."""
        keep = {
            n: [k for k, s in enumerate(self.filtrations[n]) if lo <= s <= hi] for n in self.bases
        }
        matrices = {}
        for key, matrix in self.differentials.items():
            source, target = (key, key - 1) if self.variance == "covariant" else (key - 1, key)
            matrices[key] = matrix[np.ix_(keep.get(target, []), keep.get(source, []))]
        return IntegerChainComplex(
            name=f"{self.name}[{lo},{hi}]",
            variance=self.variance,
            bases=MappingProxyType(
                {n: tuple(self.bases[n][k] for k in ks) for n, ks in keep.items()}
            ),
            filtrations=MappingProxyType(
                {n: tuple(self.filtrations[n][k] for k in ks) for n, ks in keep.items()}
            ),
            differentials=MappingProxyType(matrices),
        )

    def transpose(self) -> "IntegerChainComplex":
        """The dual complex in the other variance, same degrees."""
        return IntegerChainComplex(
            name=f"{self.name}*",
            variance="contravariant" if self.variance == "covariant" else "covariant",
            bases=self.bases,
            filtrations=self.filtrations,
            differentials=MappingProxyType({k: m.T.copy() for k, m in self.differentials.items()}),
        )

    def dual(self) -> "IntegerChainComplex":
        """The transpose of a homology complex, reindexed as a homology complex in degree −n."""
        if self.variance != "covariant":
            raise exc.ValidationError("variance", "dual is taken of a homology complex")
        return IntegerChainComplex(
            name=f"{self.name}^",
            variance="covariant",
            bases=MappingProxyType({-n: b for n, b in self.bases.items()}),
            filtrations=MappingProxyType({-n: f for n, f in self.filtrations.items()}),
            differentials=MappingProxyType(
                {1 - k: m.T.copy() for k, m in self.differentials.items()}
            ),
        )


def homology(complex_: IntegerChainComplex) -> GradedGroup:
    """(Co)homology of an integer chain complex via Smith normal form.

    Raises:
        ChainComplexError: If two consecutive differentials do not compose to zero
    """
    factors: dict[int, tuple[int, ...]] = {}

    def factors_of(key: int) -> tuple[int, ...]:
        if key not in factors:
            factors[key] = invariant_factors(complex_._matrix(key))
        return factors[key]

    covariant = complex_.variance == "covariant"
    groups = {}
    for n in complex_.degrees():
        out_key, in_key = (n, n + 1) if covariant else (n + 1, n)
        out, inc = complex_._matrix(out_key), complex_._matrix(in_key)
        if out.size and inc.size:
            composite = as_integer_matrix(out).dot(as_integer_matrix(inc))
            if np.any(composite != 0):
                raise exc.ChainComplexError(n, "consecutive differentials do not compose to zero")
        incoming = factors_of(in_key)
        free = complex_.rank(n) - len(factors_of(out_key)) - len(incoming)
        groups[n] = FGAbelianGroup.create(free, [d for d in incoming if d > 1])
    return GradedGroup.create(groups)


# Evaluation at a level


def _level_subgroup(group: DihedralGroup, level: LevelName | Subgroup) -> Subgroup:
    return level if isinstance(level, Subgroup) else group.level_subgroup(level)


@lru_cache(maxsize=None)
def _term_block(
    group: DihedralGroup,
    source: Subgroup,
    target: Subgroup,
    element: GroupElement,
    generator: GroupElement,
    level: Subgroup,
    coeff: Coefficients,
    variance: Variance,
) -> np.ndarray:
    f = GMap.from_element(group, source, target, element, generator=generator).restrict(level)
    if coeff == "burnside":
        return induced_map(f, variance=variance)
    source_orbits = f.source.orbits
    target_orbits = f.target.orbits
    target_index = f.target.orbit_index
    if variance == "covariant":
        # orbit sum of O goes to |O|/|O'| times the orbit sum of O'
        block = np.zeros((len(target_orbits), len(source_orbits)), dtype=np.int64)
        for s, orbit in enumerate(source_orbits):
            t = target_index[f.mapping[orbit[0]]]
            block[t, s] += len(orbit) // len(target_orbits[t])
        return block
    block = np.zeros((len(source_orbits), len(target_orbits)), dtype=np.int64)
    for s, orbit in enumerate(source_orbits):
        block[s, target_index[f.mapping[orbit[0]]]] += 1
    return block


def _cell_basis(
    x: EquivariantCellComplex, cell: int, level: Subgroup, coeff: Coefficients
) -> tuple[str, ...]:
    label = x.cells[cell].label
    gset = x.orbit(cell).restrict(level)
    if coeff == "constant":
        return tuple(f"{label}#{orbit[0]}" for orbit in gset.orbits)
    return tuple(f"{label}#{u}/{sub.name}" for u, sub in pair_basis(gset).representatives)


def evaluate_level(
    x: EquivariantCellComplex,
    coeff: Coefficients,
    level: LevelName | Subgroup,
    variance: Variance,
    *,
    reduced: bool | None = None,
) -> IntegerChainComplex:
    """The chain complex of x with coefficients in ℤ̲ or A̲, evaluated at G/H.

    Constant coefficients use H-orbit sums (homology) or H-orbit indicators
    (cohomology) of each cell orbit. Burnside coefficients use the pairs
    (u, L ≤ Stab_H(u)) up to H-conjugacy, with covariant or contravariant
    induced maps for every term of the differential.

    Args:
        x: Cell complex
        coeff: "constant" or "burnside"
        level: Level name or a concrete subgroup
        variance: "covariant" for homology, "contravariant" for cohomology
        reduced: Drop the basepoint (default: exactly when x is based)

    Raises:
        ValidationError: If the coefficients, variance or level are unknown
    """
    check_coefficients(coeff)
    check_variance(variance)
    group = x.group
    H = _level_subgroup(group, level)
    reduced = x.is_based if reduced is None else reduced

    offsets: dict[int, tuple[int, int]] = {}  # cell -> (start, size) within its degree
    labels: dict[int, list[str]] = {}
    filtrations: dict[int, list[int]] = {}
    for cell, info in enumerate(x.cells):
        if reduced and cell == x.basepoint:
            continue
        basis = _cell_basis(x, cell, H, coeff)
        start = len(labels.setdefault(info.dim, []))
        offsets[cell] = (start, len(basis))
        labels[info.dim].extend(basis)
        filtrations.setdefault(info.dim, []).extend([info.filtration] * len(basis))
    ranks = {n: len(b) for n, b in labels.items()}

    covariant = variance == "covariant"
    matrices: dict[int, np.ndarray] = {}
    for n in range(1, x.dimension + 1):
        shape = (ranks.get(n - 1, 0), ranks.get(n, 0))
        matrices[n] = np.zeros(shape if covariant else shape[::-1], dtype=np.int64)
    for cell, terms in enumerate(x.differential):
        if cell not in offsets:
            continue
        n = x.cells[cell].dim
        s0, s_len = offsets[cell]
        for term in terms:
            if term.target not in offsets:
                continue
            t0, t_len = offsets[term.target]
            block = _term_block(
                group,
                x.cells[cell].isotropy,
                x.cells[term.target].isotropy,
                term.element,
                x.generator,
                H,
                coeff,
                variance,
            )
            if covariant:
                matrices[n][t0 : t0 + t_len, s0 : s0 + s_len] += term.coefficient * block
            else:
                matrices[n][s0 : s0 + s_len, t0 : t0 + t_len] += term.coefficient * block
    logger.debug(
        "Evaluated level: complex=%s, level=%s, coeff=%s, variance=%s, ranks=%s",
        x.name,
        H.name,
        coeff,
        variance,
        dict(sorted(ranks.items())),
    )
    return IntegerChainComplex(
        name=f"{x.name}@{H.name}",
        variance=variance,
        bases=MappingProxyType({n: tuple(b) for n, b in sorted(labels.items())}),
        filtrations=MappingProxyType({n: tuple(f) for n, f in sorted(filtrations.items())}),
        differentials=MappingProxyType(matrices),
    )


def bredon(
    x: EquivariantCellComplex,
    coeff: Coefficients,
    level: LevelName | Subgroup = "G",
    variance: Variance = "covariant",
) -> GradedGroup:
    """Bredon (co)homology of x at one level, reduced when x is based."""
    return homology(evaluate_level(x, coeff, level, variance))


def augmentation_matrix(
    x: EquivariantCellComplex,
    level: LevelName | Subgroup,
    degree: int,
    variance: Variance = "covariant",
    *,
    reduced: bool | None = None,
) -> np.ndarray:
    """The levelwise map A̲ → ℤ̲ on chains of one degree.

    A basis pair (u, L) goes to |Stab_H(u) : L| times the orbit of u. The
    matrix has shape (constant rank, Burnside rank).
    """
    check_variance(variance)
    H = _level_subgroup(x.group, level)
    reduced = x.is_based if reduced is None else reduced
    blocks = []
    for cell in x.cells_in_dim(degree):
        if reduced and cell == x.basepoint:
            continue
        gset = x.orbit(cell).restrict(H)
        basis = pair_basis(gset)
        block = np.zeros((len(gset.orbits), basis.rank), dtype=np.int64)
        for col, (u, sub) in enumerate(basis.representatives):
            block[gset.orbit_index[u], col] = gset.stabilizer(u).order // sub.order
        blocks.append(block)
    if not blocks:
        return np.zeros((0, 0), dtype=np.int64)
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    matrix = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for block in blocks:
        matrix[r : r + block.shape[0], c : c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return matrix
