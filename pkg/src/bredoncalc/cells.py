"""Equivariant cell complexes for S(mγᵢ), S^{ℓα} and their suspensions and smashes.

A complex lists one representative cell per G-orbit. The boundary of a cell
is a formal group-ring combination: each `Term` (c, g, y) stands for
c · g·y, where y is the representative of another orbit. Every coefficient
is ±1 because the CW structures are regular; repeated group elements are
never aggregated.

Within an orbit G/H the points are ordered as in `DihedralGroup.coset_space`
with the rotation generator r = ζʲ, j = i⁻¹ mod p.
"""

import json
from collections.abc import Iterable
from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from typing import Any, Literal

import numpy as np

import bredoncalc.exceptions as exc
from bredoncalc.dihedral import (
    DihedralGroup,
    FiniteGSet,
    GMap,
    GroupElement,
    Subgroup,
    double_cosets,
)
from bredoncalc.logging import logger

CellKind = Literal["a", "b", "c", "sign", "fixed", "cone", "suspension", "product", "basepoint"]


@dataclass(frozen=True)
class OrbitCell:
    """One G-orbit of cells G/H × Dⁿ, named by its representative."""

    label: str
    kind: CellKind
    dim: int
    isotropy: Subgroup
    filtration: int = 0  # index of the filtration quotient the cell lives in
    indices: tuple[int, ...] = ()  # (k, ℓ) for a/b cells, (k,) for c cells, (d,) for sign cells


@dataclass(frozen=True)
class Term:
    """c · g·y in a formal differential; `target` indexes the complex's cells."""

    coefficient: int
    element: GroupElement
    target: int


@dataclass(frozen=True, eq=False)
class EquivariantCellComplex:
    """A D₂ₚ-CW complex given by orbit cells and formal differentials."""

    name: str
    p: int
    gamma_index: int | None  # i of γᵢ; None without an orbit-sphere factor
    cells: tuple[OrbitCell, ...]
    differential: tuple[tuple[Term, ...], ...]  # one term list per cell
    basepoint: int | None = None

    @cached_property
    def group(self) -> DihedralGroup:
        return DihedralGroup(self.p)

    @property
    def j(self) -> int:
        """The inverse of the γ-index mod p (1 without an orbit-sphere factor)."""
        return self.group.inverse_index(self.gamma_index) if self.gamma_index else 1

    @property
    def generator(self) -> GroupElement:
        """ζᵢ = ζʲ, the rotation used to order points within orbits."""
        return self.group.element(self.j)

    @property
    def is_based(self) -> bool:
        return self.basepoint is not None

    @property
    def dimension(self) -> int:
        return max((cell.dim for cell in self.cells), default=-1)

    def index(self, label: str) -> int:
        """Position of the cell with a given label.

        Raises:
            ValidationError: If no cell has that label
        """
        for i, cell in enumerate(self.cells):
            if cell.label == label:
                return i
        raise exc.ValidationError("label", f"no cell named {label!r} in {self.name}")

    def cells_in_dim(self, n: int) -> tuple[int, ...]:
        return tuple(i for i, cell in enumerate(self.cells) if cell.dim == n)

    def orbit(self, cell: int) -> FiniteGSet:
        """The G-set G/H of a cell's orbit, in canonical point order."""
        return self.group.coset_space(self.cells[cell].isotropy, generator=self.generator)

    def term_map(self, cell: int, term: Term) -> GMap:
        """The equivariant map G/H_x → G/H_y, ρH_x ↦ ρgH_y, of one term."""
        return GMap.from_element(
            self.group,
            self.cells[cell].isotropy,
            self.cells[term.target].isotropy,
            term.element,
            generator=self.generator,
        )

    @cached_property
    def points(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """Non-equivariant cells per dimension, as (orbit cell, point) pairs."""
        out: dict[int, list[tuple[int, int]]] = {}
        for i, cell in enumerate(self.cells):
            out.setdefault(cell.dim, []).extend((i, a) for a in range(self.orbit(i).size))
        return {n: tuple(pts) for n, pts in out.items()}

    def cell_counts(self) -> tuple[int, ...]:
        """Number of non-equivariant cells in dimensions 0..dimension."""
        return tuple(len(self.points.get(n, ())) for n in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * count for n, count in enumerate(self.cell_counts()))

    def boundary_matrix(self, n: int) -> np.ndarray:
        """Non-equivariant ∂: Cₙ → Cₙ₋₁, rows indexed by (n−1)-points."""
        rows = {pt: r for r, pt in enumerate(self.points.get(n - 1, ()))}
        cols = self.points.get(n, ())
        matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for col, (x, a) in enumerate(cols):
            for term in self.differential[x]:
                image = self.term_map(x, term).mapping[a]
                matrix[rows[(term.target, image)], col] += term.coefficient
        return matrix

    def action_matrix(self, g: GroupElement, n: int) -> np.ndarray:
        """Permutation matrix of g on the non-equivariant n-cells."""
        pts = self.points.get(n, ())
        where = {pt: r for r, pt in enumerate(pts)}
        matrix = np.zeros((len(pts), len(pts)), dtype=np.int64)
        for col, (x, a) in enumerate(pts):
            matrix[where[(x, self.orbit(x).act(g, a))], col] = 1
        return matrix

    def with_differential(self, label: str, terms: Iterable[Term]) -> "EquivariantCellComplex":
        """Copy with the differential of one cell replaced."""
        i = self.index(label)
        differential = list(self.differential)
        differential[i] = tuple(terms)
        return replace(self, differential=tuple(differential))

    def differential_table(self) -> tuple[tuple[str, int, str, str], ...]:
        """Rows (source, coefficient, element, target), elements in powers of ζᵢ.

        ζᵃτᵇ is written r^{a·i} t^b, so tables of different γ-indices compare
        directly.
        """
        i = self.gamma_index or 1
        rows = []
        for x, terms in enumerate(self.differential):
            for term in terms:
                power = term.element.rot * i % self.p
                rotation = "" if power == 0 else "r" if power == 1 else f"r^{power}"
                element = rotation + ("t" if term.element.flip else "") or "e"
                rows.append(
                    (self.cells[x].label, term.coefficient, element, self.cells[term.target].label)
                )
        return tuple(rows)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "p": self.p,
            "gamma_index": self.gamma_index,
            "basepoint": self.basepoint,
            "cells": [
                {
                    "label": cell.label,
                    "kind": cell.kind,
                    "dim": cell.dim,
                    "isotropy": cell.isotropy.name,
                    "filtration": cell.filtration,
                }
                for cell in self.cells
            ],
            "differential": [list(row) for row in self.differential_table()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def __str__(self) -> str:
        lines = [f"{self.name} (p={self.p}, {len(self.cells)} orbit cells)"]
        for x, cell in enumerate(self.cells):
            mark = " [basepoint]" if x == self.basepoint else ""
            lines.append(f"  {cell.label}: dim {cell.dim}, isotropy {cell.isotropy.name}{mark}")
        for source, coefficient, element, target in self.differential_table():
            sign = "+" if coefficient > 0 else "-"
            lines.append(f"  d {source}: {sign} {element}·{target}")
        return "\n".join(lines)


# Builders


def _check_gamma_index(p: int, i: int) -> None:
    if not 1 <= i <= (p - 1) // 2:
        raise exc.ParameterError("i", f"must lie in [1, {(p - 1) // 2}] for p={p}, got {i}")


@lru_cache(maxsize=None)
def build_orbit_sphere(p: int, i: int, m: int) -> EquivariantCellComplex:
    """The cell complex of the unit sphere S(mγᵢ).

    Cells a_{k,ℓ} and b_{k,ℓ} (1 ≤ k ≤ m, 0 ≤ ℓ ≤ k−1) have dimension k+ℓ−1
    and isotropy ⟨τ⟩ when ℓ = 0, trivial otherwise; c_k has dimension 2k−1
    and trivial isotropy. A-cells come first by (k, ℓ), then B-cells, then
    C-cells.

    Raises:
        ParameterError: If p is not an odd prime or i is out of range
        ValidationError: If m < 1
    """
    group = DihedralGroup(p)
    _check_gamma_index(p, i)
    if m < 1:
        raise exc.ValidationError("m", f"must be at least 1, got {m}")
    r = group.element(group.inverse_index(i))
    tau = group.tau
    e = group.identity
    h = (p + 1) // 2
    T = group.reflection(0)
    free = group.trivial()

    cells: list[OrbitCell] = []
    where: dict[tuple[str, int, int], int] = {}
    for kind in ("a", "b"):
        for k in range(1, m + 1):
            for ell in range(k):
                where[(kind, k, ell)] = len(cells)
                cells.append(
                    OrbitCell(
                        label=f"{kind}[{k},{ell}]",
                        kind=kind,
                        dim=k + ell - 1,
                        isotropy=T if ell == 0 else free,
                        filtration=2 * k - 2 if kind == "a" else 2 * k - 1,
                        indices=(k, ell),
                    )
                )
    for k in range(1, m + 1):
        where[("c", k, 0)] = len(cells)
        cells.append(
            OrbitCell(
                label=f"c[{k}]", kind="c", dim=2 * k - 1, isotropy=free,
                filtration=2 * k - 1, indices=(k,),
            )
        )

    def a(k: int, ell: int) -> int:
        return where[("a", k, ell)]

    def b(k: int, ell: int) -> int:
        return where[("b", k, ell)]

    def c(k: int) -> int:
        return where[("c", k, 0)]

    def n_plus(coefficient: int, target: int) -> list[Term]:
        # coefficient · (1 + r + … + r^{(p−1)/2})
        return [Term(coefficient, r**s, target) for s in range(h)]

    def sigma_tau(coefficient: int, target: int) -> list[Term]:
        # coefficient · (r + … + r^{(p−1)/2}) τ
        return [Term(coefficient, r**s * tau, target) for s in range(1, h)]

    differential: list[tuple[Term, ...]] = [()] * len(cells)
    for kind, own in (("a", a), ("b", b)):
        for k in range(2, m + 1):
            differential[own(k, 0)] = (Term(1, e, a(k - 1, 0)), Term(-1, e, b(k - 1, 0)))
            for ell in range(1, k):
                if k == 2:
                    terms = [Term(-1, e, own(2, 0)), *n_plus(-1, c(1)), *sigma_tau(1, c(1))]
                elif ell == k - 1:
                    terms = [
                        Term(-1, e, own(k, k - 2)),
                        Term((-1) ** (k - 1), tau, own(k, k - 2)),
                        *n_plus(-1, c(k - 1)),
                        *sigma_tau((-1) ** (k - 2), c(k - 1)),
                    ]
                elif ell == 1:
                    terms = [
                        Term(1, e, a(k - 1, 1)),
                        Term(-1, e, b(k - 1, 1)),
                        Term((-1) ** (k - 1), e, own(k, 0)),
                    ]
                else:
                    terms = [
                        Term(1, e, a(k - 1, ell)),
                        Term(-1, e, b(k - 1, ell)),
                        Term((-1) ** (k - ell), e, own(k, ell - 1)),
                        Term((-1) ** (k - 1), tau, own(k, ell - 1)),
                    ]
                differential[own(k, ell)] = tuple(terms)
    rh = r**h
    differential[c(1)] = (Term(1, rh, b(1, 0)), Term(-1, e, a(1, 0)))
    for k in range(2, m + 1):
        differential[c(k)] = (
            Term(-1, e, a(k, k - 1)),
            Term((-1) ** k, tau, a(k, k - 1)),
            Term(1, rh, b(k, k - 1)),
            Term((-1) ** (k - 1), rh * tau, b(k, k - 1)),
        )
    logger.debug("Built orbit sphere: p=%d, i=%d, m=%d, cells=%d", p, i, m, len(cells))
    return EquivariantCellComplex(
        name=f"S({m}g{i})",
        p=p,
        gamma_index=i,
        cells=tuple(cells),
        differential=tuple(differential),
    )


@lru_cache(maxsize=None)
def build_sign_sphere(p: int, ell: int) -> EquivariantCellComplex:
    """The cell complex of S^{ℓα}, based at s₊.

    Two fixed 0-cells s₊ and s₋ and one G/⟨ζ⟩-cell u_d in each dimension
    1 ≤ d ≤ ℓ, with du₁ = s₋ − s₊ and du_d = u_{d−1} + (−1)^{d−1} τu_{d−1}.

    Raises:
        NoChainModelError: If ℓ < 0
    """
    group = DihedralGroup(p)
    if ell < 0:
        raise exc.NoChainModelError(f"{ell}a")
    G = group.full()
    R = group.rotations()
    e = group.identity
    cells = [
        OrbitCell(label="s+", kind="fixed", dim=0, isotropy=G),
        OrbitCell(label="s-", kind="fixed", dim=0, isotropy=G),
    ]
    differential: list[tuple[Term, ...]] = [(), ()]
    for d in range(1, ell + 1):
        cells.append(OrbitCell(label=f"u[{d}]", kind="sign", dim=d, isotropy=R, indices=(d,)))
        if d == 1:
            differential.append((Term(1, e, 1), Term(-1, e, 0)))
        else:
            previous = len(cells) - 2
            differential.append((Term(1, e, previous), Term((-1) ** (d - 1), group.tau, previous)))
    return EquivariantCellComplex(
        name=f"S^({ell}a)",
        p=p,
        gamma_index=None,
        cells=tuple(cells),
        differential=tuple(differential),
        basepoint=0,
    )


def suspension(x: EquivariantCellComplex) -> EquivariantCellComplex:
    """Unreduced suspension with fixed cone points N and S, based at S.

    dΣy = N − S for a 0-cell y and dΣy = −Σ(dy) otherwise.

    Raises:
        ValidationError: If x is already based
    """
    if x.is_based:
        raise exc.ValidationError("x", "unreduced suspension takes an unbased complex")
    G = x.group.full()
    e = x.group.identity
    cells = [
        OrbitCell(label="S", kind="cone", dim=0, isotropy=G),
        OrbitCell(label="N", kind="cone", dim=0, isotropy=G),
    ]
    differential: list[tuple[Term, ...]] = [(), ()]
    for cell, terms in zip(x.cells, x.differential):
        cells.append(
            replace(cell, label=f"Σ{cell.label}", kind="suspension", dim=cell.dim + 1)
        )
        if cell.dim == 0:
            differential.append((Term(1, e, 1), Term(-1, e, 0)))
        else:
            differential.append(
                tuple(Term(-t.coefficient, t.element, t.target + 2) for t in terms)
            )
    return EquivariantCellComplex(
        name=f"Σ{x.name}",
        p=x.p,
        gamma_index=x.gamma_index,
        cells=tuple(cells),
        differential=tuple(differential),
        basepoint=0,
    )


def adjoin_basepoint(x: EquivariantCellComplex) -> EquivariantCellComplex:
    """X₊: a disjoint fixed basepoint, listed first.

    Raises:
        ValidationError: If x is already based
    """
    if x.is_based:
        raise exc.ValidationError("x", "already has a basepoint")
    plus = OrbitCell(label="+", kind="basepoint", dim=0, isotropy=x.group.full())
    differential = [()] + [
        tuple(Term(t.coefficient, t.element, t.target + 1) for t in terms)
        for terms in x.differential
    ]
    return EquivariantCellComplex(
        name=f"{x.name}+",
        p=x.p,
        gamma_index=x.gamma_index,
        cells=(plus, *x.cells),
        differential=tuple(differential),
        basepoint=0,
    )


# product cell index and coset offset for each pair of coset keys
_Placement = dict[tuple[GroupElement, GroupElement], tuple[int, GroupElement]]


def _coset_key(g: GroupElement, subgroup: Subgroup) -> GroupElement:
    return min((g * h for h in subgroup.elements), key=lambda k: k.sort_key)


def _common_gamma(x: EquivariantCellComplex, y: EquivariantCellComplex) -> int | None:
    if x.gamma_index and y.gamma_index and x.gamma_index != y.gamma_index:
        raise exc.ParameterError(
            "gamma_index",
            f"cannot smash factors with γ-indices {x.gamma_index} and {y.gamma_index}",
        )
    return x.gamma_index or y.gamma_index


def smash(
    x: EquivariantCellComplex, y: EquivariantCellComplex, *, add_basepoint: bool = False
) -> EquivariantCellComplex:
    """The smash product X ∧ Y.

    Product orbits G/H_x × G/H_y split over double cosets H_x g H_y into
    cells x × g·y with isotropy H_x ∩ gH_yg⁻¹. The differential follows the
    Leibniz rule d(x × gy) = dx × gy + (−1)^{|x|} x × g·dy; products with a
    basepoint collapse to the new basepoint.

    Args:
        x: Left factor
        y: Right factor
        add_basepoint: Adjoin a disjoint basepoint to an unbased x first

    Raises:
        ValidationError: If a factor is unbased
        ParameterError: If the factors disagree on p or the γ-index
    """
    if add_basepoint and not x.is_based:
        x = adjoin_basepoint(x)
    for name, factor in (("x", x), ("y", y)):
        if not factor.is_based:
            raise exc.ValidationError(name, "smash needs based complexes; adjoin a basepoint first")
    if x.p != y.p:
        raise exc.ParameterError("p", f"cannot smash complexes for p={x.p} and p={y.p}")
    gamma = _common_gamma(x, y)
    group = DihedralGroup(x.p)
    e = group.identity

    cells = [OrbitCell(label="*", kind="basepoint", dim=0, isotropy=group.full())]
    pairs: list[tuple[int, GroupElement, int]] = [(-1, e, -1)]
    lookup: dict[tuple[int, int], _Placement] = {}
    for xi, xc in enumerate(x.cells):
        if xi == x.basepoint:
            continue
        for yi, yc in enumerate(y.cells):
            if yi == y.basepoint:
                continue
            table = lookup.setdefault((xi, yi), {})
            for coset in double_cosets(xc.isotropy, yc.isotropy):
                g = coset.representative
                idx = len(cells)
                label = f"{xc.label}×{yc.label}"
                if not g.is_identity:
                    label = f"{xc.label}×{g}·{yc.label}"
                cells.append(
                    OrbitCell(
                        label=label,
                        kind="product",
                        dim=xc.dim + yc.dim,
                        isotropy=xc.isotropy.intersection(yc.isotropy.conjugate(g)),
                        filtration=xc.filtration + yc.filtration,
                    )
                )
                pairs.append((xi, g, yi))
                for k in group.elements:
                    key = (_coset_key(k, xc.isotropy), _coset_key(k * g, yc.isotropy))
                    table.setdefault(key, (idx, k))

    def lift(xi: int, gx: GroupElement, yi: int, gy: GroupElement, coefficient: int) -> Term | None:
        # the pair (gx·x', gy·y') as k·(product cell)
        if xi == x.basepoint or yi == y.basepoint:
            if x.cells[xi].dim + y.cells[yi].dim == 0:
                return Term(coefficient, e, 0)
            return None
        key = (_coset_key(gx, x.cells[xi].isotropy), _coset_key(gy, y.cells[yi].isotropy))
        idx, k = lookup[(xi, yi)][key]
        return Term(coefficient, k, idx)

    differential: list[tuple[Term, ...]] = [()]
    for xi, g, yi in pairs[1:]:
        terms = []
        for t in x.differential[xi]:
            terms.append(lift(t.target, t.element, yi, g, t.coefficient))
        sign = (-1) ** x.cells[xi].dim
        for t in y.differential[yi]:
            terms.append(lift(xi, e, t.target, g * t.element, sign * t.coefficient))
        differential.append(tuple(t for t in terms if t is not None))
    logger.debug("Smashed complexes: left=%s, right=%s, cells=%d", x.name, y.name, len(cells))
    return EquivariantCellComplex(
        name=f"{x.name}∧{y.name}",
        p=x.p,
        gamma_index=gamma,
        cells=tuple(cells),
        differential=tuple(differential),
        basepoint=0,
    )


@lru_cache(maxsize=None)
def build_representation_sphere(p: int, ell: int, m: int, i: int = 1) -> EquivariantCellComplex:
    """S^{ℓα+mγᵢ} as S^{ℓα} ∧ ΣS(mγᵢ).

    Raises:
        NoChainModelError: If ℓ < 0 or m < 0
    """
    if ell < 0 or m < 0:
        raise exc.NoChainModelError(f"{ell}a+{m}g")
    if m == 0:
        return build_sign_sphere(p, ell)
    sphere = suspension(build_orbit_sphere(p, i, m))
    if ell == 0:
        return sphere
    return smash(build_sign_sphere(p, ell), sphere)


@lru_cache(maxsize=None)
def build_orbit_space(p: int, ell: int, m: int, i: int = 1) -> EquivariantCellComplex:
    """Σ^{ℓα}S(mγᵢ)₊ as S^{ℓα} ∧ S(mγᵢ)₊.

    Raises:
        NoChainModelError: If ℓ < 0
        ValidationError: If m < 1
    """
    if ell < 0:
        raise exc.NoChainModelError(f"{ell}a+{m}g")
    orbit = adjoin_basepoint(build_orbit_sphere(p, i, m))
    if ell == 0:
        return orbit
    return smash(build_sign_sphere(p, ell), orbit)


# Validation


@dataclass(frozen=True)
class ValidationReport:
    """Structural checks on a complex; `failures` is empty when all pass."""

    name: str
    failures: tuple[str, ...]
    cell_counts: tuple[int, ...]
    euler_characteristic: int

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        head = f"{self.name}: cells {self.cell_counts}, χ = {self.euler_characteristic}"
        if self.ok:
            return f"{head}, all checks pass"
        return "\n".join([head, *self.failures])


def validate(x: EquivariantCellComplex) -> ValidationReport:
    """Check regularity, dimensions, isotropy, equivariance and d∘d = 0.

    Never raises; d∘d failures name the source cell and the cell two
    dimensions down where the composite is nonzero.
    """
    failures: list[str] = []
    for xi, terms in enumerate(x.differential):
        source = x.cells[xi]
        for term in terms:
            target = x.cells[term.target]
            if term.coefficient not in (1, -1):
                failures.append(f"coefficient {term.coefficient} in d {source.label} is not ±1")
            if target.dim != source.dim - 1:
                failures.append(f"d {source.label} hits {target.label} of dimension {target.dim}")
            if not source.isotropy.issubgroup(target.isotropy.conjugate(term.element)):
                failures.append(
                    f"d {source.label}: isotropy not contained in that of "
                    f"{term.element}·{target.label}"
                )
    if failures:
        return ValidationReport(x.name, tuple(failures), x.cell_counts(), x.euler_characteristic())

    boundaries = {n: x.boundary_matrix(n) for n in range(1, x.dimension + 1)}
    for n in range(2, x.dimension + 1):
        composite = boundaries[n - 1] @ boundaries[n]
        for row, col in zip(*np.nonzero(composite)):
            src = x.cells[x.points[n][col][0]].label
            tgt = x.cells[x.points[n - 2][row][0]].label
            failures.append(f"d∘d ≠ 0 from {src} to {tgt}")
    for n, matrix in boundaries.items():
        for g in (x.group.zeta, x.group.tau):
            before = x.action_matrix(g, n - 1) @ matrix
            if not np.array_equal(before, matrix @ x.action_matrix(g, n)):
                failures.append(f"boundary in degree {n} does not commute with {g}")
    unique = tuple(dict.fromkeys(failures))
    if unique:
        logger.warning("Complex failed validation: name=%s, failures=%d", x.name, len(unique))
    return ValidationReport(x.name, unique, x.cell_counts(), x.euler_characteristic())
