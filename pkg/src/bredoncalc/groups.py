"""Finitely generated abelian groups and graded groups.

Every (co)homology answer in the package is a `GradedGroup`: a finite map
from degree to `FGAbelianGroup` in invariant-factor normal form.
"""

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any

import numpy as np
import sympy

import bredoncalc.exceptions as exc
from bredoncalc.snf import (
    SmithNormalForm,
    as_integer_matrix,
    kernel_basis,
    lattice_basis,
    solve_in_lattice,
)


def _normalize_torsion(orders: Iterable[int]) -> tuple[int, ...]:
    # Split into primary parts, then recombine the k-th largest powers
    powers: dict[int, list[int]] = {}
    for order in orders:
        for q, e in sympy.factorint(order).items():
            powers.setdefault(int(q), []).append(int(q) ** int(e))
    if not powers:
        return ()
    for values in powers.values():
        values.sort(reverse=True)
    length = max(len(values) for values in powers.values())
    factors = [
        math.prod(values[k] for values in powers.values() if k < len(values))
        for k in range(length)
    ]
    return tuple(sorted(factors))


@dataclass(frozen=True)
class FGAbelianGroup:
    """ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k, with d₁ | … | d_k and each dᵢ ≥ 2."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise exc.ValidationError("free_rank", f"must be non-negative, got {self.free_rank}")
        factors = self.invariant_factors
        if any(d < 2 for d in factors):
            raise exc.ValidationError("invariant_factors", f"must all be at least 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise exc.ValidationError(
                "invariant_factors", f"must form a divisibility chain, got {factors}"
            )

    @classmethod
    def create(cls, free_rank: int = 0, torsion: Iterable[int] = ()) -> "FGAbelianGroup":
        """Create a group from a free rank and arbitrary cyclic orders.

        Orders 0 count as free summands, orders ±1 are dropped and the rest
        are normalized to invariant factors.
        """
        orders = [abs(int(d)) for d in torsion]
        free = free_rank + sum(1 for d in orders if d == 0)
        return cls(free_rank=free, invariant_factors=_normalize_torsion(d for d in orders if d > 1))

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FGAbelianGroup":
        """The direct sum of cyclic groups ℤ/d (ℤ for d = 0)."""
        return cls.create(0, orders)

    @classmethod
    def zero(cls) -> "FGAbelianGroup":
        return cls()

    @classmethod
    def free(cls, rank: int = 1) -> "FGAbelianGroup":
        return cls(free_rank=rank)

    @classmethod
    def cyclic(cls, order: int) -> "FGAbelianGroup":
        return cls.from_orders([order])

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def generator_count(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    def cyclic_orders(self) -> tuple[int, ...]:
        """Orders of the canonical generators: 0 for each ℤ, then the invariant factors."""
        return (0,) * self.free_rank + self.invariant_factors

    def torsion_count(self, q: int) -> int:
        """Number of cyclic summands of order divisible by q (the ℤ/q-rank for q prime)."""
        return sum(1 for d in self.invariant_factors if d % q == 0)

    def __add__(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.create(
            self.free_rank + other.free_rank, self.invariant_factors + other.invariant_factors
        )

    def admits_nonzero_map_to(self, other: "FGAbelianGroup") -> bool:
        """True when Hom(self, other) ≠ 0."""
        if self.free_rank and not other.is_zero:
            return True
        return any(
            math.gcd(a, b) > 1 for a in self.invariant_factors for b in other.invariant_factors
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts)

    def to_json(self) -> dict[str, Any]:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "FGAbelianGroup":
        return cls(
            free_rank=int(data["free_rank"]),
            invariant_factors=tuple(int(d) for d in data["invariant_factors"]),
        )


@dataclass(frozen=True, eq=False)
class GradedGroup:
    """A finitely supported map degree → FGAbelianGroup, zero entries dropped."""

    groups: Mapping[int, FGAbelianGroup]  # sorted by degree

    @classmethod
    def create(
        cls, groups: Mapping[int, FGAbelianGroup] | Iterable[tuple[int, FGAbelianGroup]] = ()
    ) -> "GradedGroup":
        """Create a graded group; repeated degrees are summed."""
        items = groups.items() if isinstance(groups, Mapping) else groups
        merged: dict[int, FGAbelianGroup] = {}
        for degree, group in items:
            merged[int(degree)] = merged.get(int(degree), FGAbelianGroup()) + group
        return cls(
            groups=MappingProxyType(
                {n: merged[n] for n in sorted(merged) if not merged[n].is_zero}
            )
        )

    @classmethod
    def zero(cls) -> "GradedGroup":
        return cls.create()

    @classmethod
    def single(cls, degree: int, group: FGAbelianGroup) -> "GradedGroup":
        return cls.create({degree: group})

    def __getitem__(self, degree: int) -> FGAbelianGroup:
        return self.groups.get(degree, FGAbelianGroup())

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.groups)

    @property
    def is_zero(self) -> bool:
        return not self.groups

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return dict(self.groups) == dict(other.groups)

    def __hash__(self) -> int:
        return hash(tuple(self.groups.items()))

    def __add__(self, other: "GradedGroup") -> "GradedGroup":
        return GradedGroup.create([*self.groups.items(), *other.groups.items()])

    def shift(self, k: int) -> "GradedGroup":
        """Raise every degree by k."""
        return GradedGroup.create({n + k: g for n, g in self.groups.items()})

    def negate(self) -> "GradedGroup":
        """Send degree n to −n."""
        return GradedGroup.create({-n: g for n, g in self.groups.items()})

    def to_json(self) -> list[dict[str, Any]]:
        return [{"degree": n, **g.to_json()} for n, g in self.groups.items()]

    @classmethod
    def from_json(cls, entries: Iterable[Mapping[str, Any]]) -> "GradedGroup":
        return cls.create((int(e["degree"]), FGAbelianGroup.from_json(e)) for e in entries)

    def to_csv_rows(self) -> list[tuple[int, int, str]]:
        """Rows (degree, free_rank, invariant factors joined by ';')."""
        return [
            (n, g.free_rank, ";".join(str(d) for d in g.invariant_factors))
            for n, g in self.groups.items()
        ]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return "\n".join(f"{n}: {g}" for n, g in self.groups.items())


def presented_group(relations: object, generators: int) -> FGAbelianGroup:
    """The cokernel ℤ^generators / (column span of relations)."""
    matrix = as_integer_matrix(relations, shape=(generators, 0))
    factors = SmithNormalForm(matrix, transforms=False).diagonal
    nonzero = [d for d in factors if d != 0]
    return FGAbelianGroup.create(generators - len(nonzero), nonzero)


def _relation_matrix(orders: Sequence[int]) -> np.ndarray:
    columns = [i for i, d in enumerate(orders) if d > 0]
    matrix = np.zeros((len(orders), len(columns)), dtype=object)
    for col, i in enumerate(columns):
        matrix[i, col] = orders[i]
    return matrix


def homomorphism_homology(
    matrix: object, source: FGAbelianGroup, target: FGAbelianGroup
) -> tuple[FGAbelianGroup, FGAbelianGroup]:
    """Kernel and cokernel of a homomorphism between two groups.

    The matrix acts on the canonical generators (`cyclic_orders`) and has
    shape (target generators, source generators).

    Returns:
        (kernel, cokernel)

    Raises:
        ValidationError: If the shape is wrong or the matrix does not respect
            the relations of the source
    """
    src = source.cyclic_orders()
    tgt = target.cyclic_orders()
    M = as_integer_matrix(matrix, shape=(len(tgt), len(src)))
    if M.shape != (len(tgt), len(src)):
        raise exc.ValidationError(
            "matrix", f"expected shape {(len(tgt), len(src))}, got {M.shape}"
        )
    target_relations = _relation_matrix(tgt)
    cokernel = presented_group(np.hstack([M, target_relations]), len(tgt))

    # Preimage lattice of the target relations, then divide out source relations
    a = len(src)
    joint = kernel_basis(np.hstack([M, -target_relations]), columns=a + target_relations.shape[1])
    basis = lattice_basis((tuple(joint[:a, c]) for c in range(joint.shape[1])), a)
    source_relations = _relation_matrix(src)
    coords = []
    for c in range(source_relations.shape[1]):
        try:
            coords.append(solve_in_lattice(basis, tuple(source_relations[:, c])))
        except exc.ValidationError:
            raise exc.ValidationError(
                "matrix", "does not define a homomorphism on the source relations"
            ) from None
    relations = np.array(coords, dtype=object).T if coords else None
    kernel = presented_group(relations if relations is not None else [], len(basis))
    return kernel, cokernel
