"""Exact arithmetic for the dihedral group D₂ₚ.

Elements are ζ^a τ^b with ζ^p = τ² = 1 and ζτ = τζ^{-1}. Subgroups are
materialized as explicit element sets and every coset, orbit and Burnside
computation is done by enumeration; the group has at most a few dozen
elements at the sizes this package works with.
"""

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Literal

import numpy as np
import sympy

import bredoncalc.exceptions as exc

LevelName = Literal["e", "Z/2", "Z/p", "G"]
LEVELS: tuple[LevelName, ...] = ("e", "Z/2", "Z/p", "G")

SubgroupTag = Literal["trivial", "reflection", "rotation", "full"]
Variance = Literal["covariant", "contravariant"]


def validate_prime(p: int) -> None:
    """Reject anything that is not an odd prime.

    Raises:
        ParameterError: If p is not an odd prime
    """
    if isinstance(p, bool) or not isinstance(p, int) or p < 3 or not sympy.isprime(p):
        raise exc.ParameterError("p", f"must be an odd prime, got {p!r}")


@dataclass(frozen=True)
class GroupElement:
    """The element ζ^rot τ^flip of D₂ₚ, in normal form."""

    p: int
    rot: int  # exponent of ζ, in [0, p)
    flip: int  # exponent of τ, 0 or 1

    def __post_init__(self) -> None:
        if not 0 <= self.rot < self.p:
            raise exc.ValidationError("rot", f"must lie in [0, {self.p}), got {self.rot}")
        if self.flip not in (0, 1):
            raise exc.ValidationError("flip", f"must be 0 or 1, got {self.flip}")

    @classmethod
    def create(cls, p: int, rot: int = 0, flip: int = 0) -> "GroupElement":
        """Create an element, reducing the exponents to normal form."""
        return cls(p=p, rot=rot % p, flip=flip % 2)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def __pow__(self, n: int) -> "GroupElement":
        result = GroupElement(self.p, 0, 0)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = group_mul(result, base)
        return result

    def inverse(self) -> "GroupElement":
        """Return the inverse element."""
        if self.flip:
            return self
        return GroupElement(self.p, (-self.rot) % self.p, 0)

    @property
    def is_identity(self) -> bool:
        return self.rot == 0 and self.flip == 0

    def order(self) -> int:
        """Return the order of the element."""
        if self.flip:
            return 2
        return 1 if self.rot == 0 else self.p

    @property
    def sort_key(self) -> tuple[int, int]:
        # Rotations first, then reflections, each by exponent
        return (self.flip, self.rot)

    def __str__(self) -> str:
        if self.is_identity:
            return "e"
        rotation = "" if self.rot == 0 else ("z" if self.rot == 1 else f"z^{self.rot}")
        return rotation + ("t" if self.flip else "")


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """Multiply two elements: (a, b)(c, d) = (a + (-1)^b c, b + d).

    Raises:
        ParameterError: If the elements belong to different dihedral groups
    """
    if g.p != h.p:
        raise exc.ParameterError("p", f"cannot multiply elements of D_{2 * g.p} and D_{2 * h.p}")
    sign = -1 if g.flip else 1
    return GroupElement(g.p, (g.rot + sign * h.rot) % g.p, (g.flip + h.flip) % 2)


@dataclass(frozen=True)
class Subgroup:
    """A concrete subgroup of D₂ₚ.

    The reflection subgroups ⟨ζ^a τ⟩ are indexed by a; all are conjugate to
    ⟨τ⟩. Together with the trivial group, ⟨ζ⟩ and the whole group they are
    all the subgroups.
    """

    p: int
    tag: SubgroupTag
    index: int = 0  # a in ⟨ζ^a τ⟩; 0 for the other tags

    @cached_property
    def elements(self) -> frozenset[GroupElement]:
        p = self.p
        if self.tag == "trivial":
            return frozenset({GroupElement(p, 0, 0)})
        if self.tag == "reflection":
            return frozenset({GroupElement(p, 0, 0), GroupElement(p, self.index, 1)})
        if self.tag == "rotation":
            return frozenset(GroupElement(p, a, 0) for a in range(p))
        return frozenset(GroupElement(p, a, b) for b in (0, 1) for a in range(p))

    @property
    def order(self) -> int:
        return {"trivial": 1, "reflection": 2, "rotation": self.p, "full": 2 * self.p}[self.tag]

    @property
    def level(self) -> LevelName:
        """The conjugacy class of the subgroup, as a Mackey functor level."""
        return {"trivial": "e", "reflection": "Z/2", "rotation": "Z/p", "full": "G"}[self.tag]

    @property
    def is_standard(self) -> bool:
        """True for e, ⟨τ⟩, ⟨ζ⟩ and G, the representatives of the four classes."""
        return self.tag != "reflection" or self.index == 0

    @property
    def name(self) -> str:
        if self.tag == "trivial":
            return "e"
        if self.tag == "reflection":
            return f"<{GroupElement(self.p, self.index, 1)}>"
        if self.tag == "rotation":
            return "<z>"
        return "G"

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def issubgroup(self, other: "Subgroup") -> bool:
        """Return True if this subgroup is contained in other."""
        return self.elements <= other.elements

    def conjugate(self, g: GroupElement) -> "Subgroup":
        """Return g·H·g⁻¹."""
        return _conjugate(self, g)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.from_elements(self.p, self.elements & other.elements)

    @classmethod
    def from_elements(cls, p: int, elements: Iterable[GroupElement]) -> "Subgroup":
        """Recognize a subgroup from its element set.

        Raises:
            ValidationError: If the elements do not form a subgroup
        """
        members = frozenset(elements)
        if len(members) == 1:
            return cls(p, "trivial")
        if len(members) == 2 * p:
            return cls(p, "full")
        if len(members) == p and all(g.flip == 0 for g in members):
            return cls(p, "rotation")
        if len(members) == 2:
            reflections = [g for g in members if g.flip]
            if len(reflections) == 1:
                return cls(p, "reflection", reflections[0].rot)
        raise exc.ValidationError("elements", f"{len(members)} elements do not form a subgroup")

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def _conjugate(subgroup: Subgroup, g: GroupElement) -> Subgroup:
    g_inv = g.inverse()
    return Subgroup.from_elements(subgroup.p, (g * h * g_inv for h in subgroup.elements))


@dataclass(frozen=True)
class DihedralGroup:
    """The dihedral group D₂ₚ of order 2p for an odd prime p."""

    p: int

    def __post_init__(self) -> None:
        validate_prime(self.p)

    @property
    def order(self) -> int:
        return 2 * self.p

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self.p, 0, 0)

    @property
    def zeta(self) -> GroupElement:
        return GroupElement(self.p, 1, 0)

    @property
    def tau(self) -> GroupElement:
        return GroupElement(self.p, 0, 1)

    def element(self, rot: int = 0, flip: int = 0) -> GroupElement:
        return GroupElement.create(self.p, rot, flip)

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        """All elements: ζ^a for a = 0..p-1, then ζ^a τ."""
        return tuple(GroupElement(self.p, a, b) for b in (0, 1) for a in range(self.p))

    def inverse_index(self, i: int) -> int:
        """Return j with i·j ≡ 1 mod p."""
        return int(sympy.mod_inverse(i, self.p))

    def trivial(self) -> Subgroup:
        return Subgroup(self.p, "trivial")

    def reflection(self, a: int = 0) -> Subgroup:
        return Subgroup(self.p, "reflection", a % self.p)

    def rotations(self) -> Subgroup:
        return Subgroup(self.p, "rotation")

    def full(self) -> Subgroup:
        return Subgroup(self.p, "full")

    def subgroups(self) -> tuple[Subgroup, ...]:
        """All p + 3 subgroups."""
        return (
            self.trivial(),
            *(self.reflection(a) for a in range(self.p)),
            self.rotations(),
            self.full(),
        )

    def level_subgroup(self, level: LevelName) -> Subgroup:
        """The standard subgroup representing a level: e, ⟨τ⟩, ⟨ζ⟩ or G."""
        match level:
            case "e":
                return self.trivial()
            case "Z/2":
                return self.reflection(0)
            case "Z/p":
                return self.rotations()
            case "G":
                return self.full()
        raise exc.ValidationError("level", f"must be one of {LEVELS}, got {level!r}")

    def coset_representatives(
        self, subgroup: Subgroup, *, generator: GroupElement | None = None
    ) -> tuple[GroupElement, ...]:
        """Representatives of G/H in the canonical cell ordering.

        With r the chosen rotation generator: G/e is r^a then τr^a, G/⟨reflection⟩
        is r^a, G/⟨ζ⟩ is e, τ and G/G is e.
        """
        r = generator if generator is not None else self.zeta
        rotations = tuple(r**a for a in range(self.p))
        match subgroup.order:
            case 1:
                return rotations + tuple(self.tau * x for x in rotations)
            case 2:
                return rotations
            case order if order == self.p:
                return (self.identity, self.tau)
        return (self.identity,)

    def coset_space(
        self,
        subgroup: Subgroup,
        *,
        generator: GroupElement | None = None,
        acting: Subgroup | None = None,
    ) -> "FiniteGSet":
        """The G-set G/H (or its restriction to acting), in canonical point order."""
        return _coset_space(self, subgroup, generator, acting or self.full())

    def point(self, acting: Subgroup | None = None) -> "FiniteGSet":
        """The one-point set."""
        return self.coset_space(self.full(), acting=acting)


@lru_cache(maxsize=None)
def _coset_space(
    group: DihedralGroup,
    subgroup: Subgroup,
    generator: GroupElement | None,
    acting: Subgroup,
) -> "FiniteGSet":
    reps = group.coset_representatives(subgroup, generator=generator)
    coset_of = {rep * h: i for i, rep in enumerate(reps) for h in subgroup.elements}
    if len(coset_of) != group.order:
        raise exc.ValidationError("generator", "does not give distinct coset representatives")
    return FiniteGSet.create(acting, reps, lambda g, x: reps[coset_of[g * x]])


@dataclass(frozen=True)
class DoubleCoset:
    """One double coset HgK."""

    representative: GroupElement
    size: int
    elements: frozenset[GroupElement]


def double_cosets(H: Subgroup, K: Subgroup) -> tuple[DoubleCoset, ...]:
    """Enumerate H\\G/K.

    Representatives are the first uncovered element in canonical order, so the
    double coset of the identity comes first with representative e.

    Raises:
        ParameterError: If H and K live in different groups
    """
    if H.p != K.p:
        raise exc.ParameterError("p", f"subgroups of D_{2 * H.p} and D_{2 * K.p}")
    group = DihedralGroup(H.p)
    covered: set[GroupElement] = set()
    result = []
    for g in group.elements:
        if g in covered:
            continue
        members = frozenset(h * g * k for h in H.elements for k in K.elements)
        covered |= members
        result.append(DoubleCoset(representative=g, size=len(members), elements=members))
    return tuple(result)


@dataclass(frozen=True, eq=False)
class FiniteGSet:
    """A finite set with an action of a subgroup of D₂ₚ, stored as a table."""

    acting: Subgroup
    points: tuple[Hashable, ...]
    table: Mapping[tuple[GroupElement, int], int]  # (g, point index) -> point index

    @classmethod
    def create(
        cls,
        acting: Subgroup,
        points: Iterable[Hashable],
        action: Callable[[GroupElement, Hashable], Hashable],
    ) -> "FiniteGSet":
        """Tabulate an action given as a function on points.

        Raises:
            ValidationError: If the action leaves the point set
        """
        pts = tuple(points)
        index = {pt: i for i, pt in enumerate(pts)}
        if len(index) != len(pts):
            raise exc.ValidationError("points", "must be distinct")
        table: dict[tuple[GroupElement, int], int] = {}
        for g in acting.elements:
            for i, pt in enumerate(pts):
                image = action(g, pt)
                if image not in index:
                    raise exc.ValidationError("action", f"{g} sends {pt} outside the set")
                table[(g, i)] = index[image]
        return cls(acting=acting, points=pts, table=MappingProxyType(table))

    @classmethod
    def transitive(cls, acting: Subgroup, stabilizer: Subgroup) -> "FiniteGSet":
        """The H-set H/L of left cosets, L ≤ H."""
        if not stabilizer.issubgroup(acting):
            raise exc.ValidationError("stabilizer", f"{stabilizer} is not contained in {acting}")
        ordered = sorted(acting.elements, key=lambda g: g.sort_key)
        coset_of: dict[GroupElement, int] = {}
        reps: list[GroupElement] = []
        for g in ordered:
            if g in coset_of:
                continue
            for h in stabilizer.elements:
                coset_of[g * h] = len(reps)
            reps.append(g)
        return cls.create(acting, reps, lambda g, x: reps[coset_of[g * x]])

    @property
    def size(self) -> int:
        return len(self.points)

    def act(self, g: GroupElement, i: int) -> int:
        return self.table[(g, i)]

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbits as sorted point-index tuples, largest first, ties by first point."""
        seen: set[int] = set()
        found = []
        for i in range(self.size):
            if i in seen:
                continue
            orbit = sorted({self.act(g, i) for g in self.acting.elements})
            seen.update(orbit)
            found.append(tuple(orbit))
        return tuple(sorted(found, key=lambda o: (-len(o), o[0])))

    @cached_property
    def orbit_index(self) -> Mapping[int, int]:
        """Point index -> position of its orbit in `orbits`."""
        return MappingProxyType({i: k for k, orbit in enumerate(self.orbits) for i in orbit})

    def stabilizer(self, i: int) -> Subgroup:
        return Subgroup.from_elements(
            self.acting.p, (g for g in self.acting.elements if self.act(g, i) == i)
        )

    def restrict(self, subgroup: Subgroup) -> "FiniteGSet":
        """The same set with the action restricted to a subgroup."""
        if subgroup == self.acting:
            return self
        if not subgroup.issubgroup(self.acting):
            raise exc.ValidationError("subgroup", f"{subgroup} is not contained in {self.acting}")
        return _restrict(self, subgroup)

    def product(self, other: "FiniteGSet") -> "FiniteGSet":
        """The cartesian product with the diagonal action."""
        if other.acting != self.acting:
            raise exc.ParameterError("acting", "product of sets with different acting groups")
        pairs = tuple((i, j) for i in range(self.size) for j in range(other.size))
        return FiniteGSet.create(
            self.acting, pairs, lambda g, ij: (self.act(g, ij[0]), other.act(g, ij[1]))
        )

    def check_action(self) -> tuple[str, ...]:
        """Return violated action axioms (empty when the table is an action)."""
        failures = []
        identity = GroupElement(self.acting.p, 0, 0)
        for i in range(self.size):
            if self.act(identity, i) != i:
                failures.append(f"e moves point {i}")
        for g in self.acting.elements:
            for h in self.acting.elements:
                for i in range(self.size):
                    if self.act(g, self.act(h, i)) != self.act(g * h, i):
                        failures.append(f"({g})({h}) acts differently from {g * h} on point {i}")
        return tuple(failures)


@lru_cache(maxsize=None)
def _restrict(gset: FiniteGSet, subgroup: Subgroup) -> FiniteGSet:
    table = {(g, i): j for (g, i), j in gset.table.items() if g in subgroup.elements}
    return FiniteGSet(acting=subgroup, points=gset.points, table=MappingProxyType(table))


@dataclass(frozen=True, eq=False)
class GMap:
    """An equivariant map between two sets acted on by the same subgroup."""

    source: FiniteGSet
    target: FiniteGSet
    mapping: tuple[int, ...]  # source point index -> target point index

    @classmethod
    def create(cls, source: FiniteGSet, target: FiniteGSet, mapping: Iterable[int]) -> "GMap":
        """Create a map, checking equivariance by enumeration.

        Raises:
            ValidationError: If the map is not equivariant
        """
        images = tuple(mapping)
        if source.acting != target.acting:
            raise exc.ValidationError("f", "source and target have different acting groups")
        if len(images) != source.size:
            raise exc.ValidationError("f", "must assign an image to every source point")
        for g in source.acting.elements:
            for i, image in enumerate(images):
                if images[source.act(g, i)] != target.act(g, image):
                    raise exc.ValidationError("f", f"not equivariant at {g} on point {i}")
        return cls(source=source, target=target, mapping=images)

    @classmethod
    def identity(cls, gset: FiniteGSet) -> "GMap":
        return cls(source=gset, target=gset, mapping=tuple(range(gset.size)))

    @classmethod
    def from_element(
        cls,
        group: DihedralGroup,
        source_isotropy: Subgroup,
        target_isotropy: Subgroup,
        element: GroupElement,
        *,
        generator: GroupElement | None = None,
    ) -> "GMap":
        """The map G/H → G/K, rH ↦ rgK, for g with H ⊂ gKg⁻¹."""
        return _map_from_element(group, source_isotropy, target_isotropy, element, generator)

    def restrict(self, subgroup: Subgroup) -> "GMap":
        return GMap(
            source=self.source.restrict(subgroup),
            target=self.target.restrict(subgroup),
            mapping=self.mapping,
        )

    def compose(self, first: "GMap") -> "GMap":
        """Return self ∘ first."""
        if first.target.size != self.source.size or first.target.acting != self.source.acting:
            raise exc.ValidationError("f", "maps are not composable")
        return GMap(
            source=first.source,
            target=self.target,
            mapping=tuple(self.mapping[j] for j in first.mapping),
        )


@lru_cache(maxsize=None)
def _map_from_element(
    group: DihedralGroup,
    source_isotropy: Subgroup,
    target_isotropy: Subgroup,
    element: GroupElement,
    generator: GroupElement | None,
) -> GMap:
    source = group.coset_space(source_isotropy, generator=generator)
    target = group.coset_space(target_isotropy, generator=generator)
    target_reps = target.points
    coset_of = {rep * k: i for i, rep in enumerate(target_reps) for k in target_isotropy.elements}
    mapping = [coset_of[rep * element] for rep in source.points]
    return GMap.create(source, target, mapping)


# Burnside rings


@lru_cache(maxsize=None)
def burnside_basis(level: Subgroup) -> tuple[Subgroup, ...]:
    """Subgroups of `level` up to conjugacy, by orbit cardinality |H/L| ascending.

    For the standard levels this is (1,), (1, t2), (1, tp) and (1, t2, tp, t2p).
    """
    group = DihedralGroup(level.p)
    reps: list[Subgroup] = []
    for candidate in group.subgroups():
        if not candidate.issubgroup(level):
            continue
        if any(_conjugate_within(level, candidate, rep) for rep in reps):
            continue
        reps.append(candidate)
    return tuple(sorted(reps, key=lambda sub: level.order // sub.order))


def burnside_labels(level: Subgroup) -> tuple[str, ...]:
    """Basis labels: "1" for the point, "t<n>" for the orbit of cardinality n."""
    cards = (level.order // sub.order for sub in burnside_basis(level))
    return tuple("1" if card == 1 else f"t{card}" for card in cards)


def _conjugate_within(ambient: Subgroup, a: Subgroup, b: Subgroup) -> bool:
    return a.order == b.order and any(a.conjugate(h) == b for h in ambient.elements)


def classify_orbit(level: Subgroup, stabilizer: Subgroup) -> int:
    """Index of the Burnside basis element [level/stabilizer]."""
    for index, rep in enumerate(burnside_basis(level)):
        if _conjugate_within(level, stabilizer, rep):
            return index
    raise exc.ValidationError("stabilizer", f"{stabilizer} is not a subgroup of {level}")


def decompose(gset: FiniteGSet) -> tuple[int, ...]:
    """Coordinates of a finite H-set in the Burnside basis of H."""
    coords = [0] * len(burnside_basis(gset.acting))
    for orbit in gset.orbits:
        coords[classify_orbit(gset.acting, gset.stabilizer(orbit[0]))] += 1
    return tuple(coords)


@dataclass(frozen=True)
class BurnsideElement:
    """An element of the Burnside ring A(H), in the orbit basis of `level`."""

    level: Subgroup
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        rank = len(burnside_basis(self.level))
        if len(self.coeffs) != rank:
            raise exc.ValidationError(
                "coeffs", f"A({self.level}) has rank {rank}, got {len(self.coeffs)} coefficients"
            )

    @classmethod
    def zero(cls, level: Subgroup) -> "BurnsideElement":
        return cls(level, (0,) * len(burnside_basis(level)))

    @classmethod
    def basis_element(cls, level: Subgroup, index: int) -> "BurnsideElement":
        coeffs = [0] * len(burnside_basis(level))
        coeffs[index] = 1
        return cls(level, tuple(coeffs))

    @classmethod
    def one(cls, level: Subgroup) -> "BurnsideElement":
        return cls.basis_element(level, 0)

    @classmethod
    def from_labels(cls, level: Subgroup, terms: Mapping[str, int]) -> "BurnsideElement":
        """Build from {"1": a, "t2": b, ...}.

        Raises:
            ValidationError: If a label is not a basis label of the level
        """
        labels = burnside_labels(level)
        coeffs = [0] * len(labels)
        for label, value in terms.items():
            if label not in labels:
                raise exc.ValidationError("terms", f"{label!r} is not one of {labels}")
            coeffs[labels.index(label)] += value
        return cls(level, tuple(coeffs))

    @property
    def labels(self) -> tuple[str, ...]:
        return burnside_labels(self.level)

    def _check_level(self, other: "BurnsideElement") -> None:
        if other.level != self.level:
            raise exc.ParameterError(
                "level", f"elements of A({self.level}) and A({other.level}) do not combine"
            )

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check_level(other)
        return BurnsideElement(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def __mul__(self, other: "BurnsideElement | int") -> "BurnsideElement":
        if isinstance(other, int):
            return BurnsideElement(self.level, tuple(other * a for a in self.coeffs))
        return burnside_mul(self, other)

    __rmul__ = __mul__

    def cardinality(self) -> int:
        """The ring map A(H) → ℤ sending an H-set to its size."""
        return sum(
            c * (self.level.order // sub.order)
            for c, sub in zip(self.coeffs, burnside_basis(self.level))
        )

    def __str__(self) -> str:
        terms = [
            (label if c == 1 else f"{c}{label}") if label != "1" else str(c)
            for c, label in zip(self.coeffs, self.labels)
            if c != 0
        ]
        return " + ".join(terms).replace("+ -", "- ") or "0"


def burnside_mul(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Multiply in A(H) by decomposing products of transitive H-sets.

    Raises:
        ParameterError: If x and y are at different levels
    """
    x._check_level(y)
    result = [0] * len(x.coeffs)
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(y.coeffs):
            if b == 0:
                continue
            for k, c in enumerate(_basis_product(x.level, i, j)):
                result[k] += a * b * c
    return BurnsideElement(x.level, tuple(result))


@lru_cache(maxsize=None)
def _basis_product(level: Subgroup, i: int, j: int) -> tuple[int, ...]:
    basis = burnside_basis(level)
    left = FiniteGSet.transitive(level, basis[i])
    right = FiniteGSet.transitive(level, basis[j])
    return decompose(left.product(right))


# Burnside modules A(S × X) and induced maps


@dataclass(frozen=True)
class PairBasis:
    """Basis of the Burnside module of an H-set X: orbits of pairs (u, L ≤ Stab(u)).

    Representatives run over the orbits of X in canonical order, and within an
    orbit over the Burnside basis of the stabilizer (largest L first).
    """

    gset: FiniteGSet
    representatives: tuple[tuple[int, Subgroup], ...]
    lookup: Mapping[tuple[int, Subgroup], int]

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def index(self, point: int, subgroup: Subgroup) -> int:
        return self.lookup[(point, subgroup)]


@lru_cache(maxsize=None)
def pair_basis(gset: FiniteGSet) -> PairBasis:
    """Enumerate the Burnside-module basis of an H-set."""
    reps: list[tuple[int, Subgroup]] = []
    lookup: dict[tuple[int, Subgroup], int] = {}
    for orbit in gset.orbits:
        u = orbit[0]
        for sub in burnside_basis(gset.stabilizer(u)):
            idx = len(reps)
            reps.append((u, sub))
            for h in gset.acting.elements:
                lookup.setdefault((gset.act(h, u), sub.conjugate(h)), idx)
    return PairBasis(gset=gset, representatives=tuple(reps), lookup=MappingProxyType(lookup))


def induced_map(
    f: GMap, *, variance: Variance = "covariant", level: Subgroup | None = None
) -> np.ndarray:
    """Matrix of f on Burnside modules, evaluated at a level.

    Covariant is post-composition (u, L) ↦ (f(u), L). Contravariant is pullback:
    (y, L) ↦ Σ over L-orbits ω of f⁻¹(y) of (u_ω, L ∩ Stab(u_ω)).

    Args:
        f: An equivariant map
        variance: "covariant" or "contravariant"
        level: Subgroup to restrict to (default: the acting group of f)

    Returns:
        Integer matrix, target-by-source for covariant, source-by-target for
        contravariant.
    """
    if variance not in ("covariant", "contravariant"):
        raise exc.ValidationError(
            "variance", f"must be covariant or contravariant, got {variance!r}"
        )
    if level is not None:
        f = f.restrict(level)
    source = pair_basis(f.source)
    target = pair_basis(f.target)
    if variance == "covariant":
        matrix = np.zeros((target.rank, source.rank), dtype=np.int64)
        for col, (u, sub) in enumerate(source.representatives):
            matrix[target.index(f.mapping[u], sub), col] += 1
        return matrix
    matrix = np.zeros((source.rank, target.rank), dtype=np.int64)
    for col, (y, sub) in enumerate(target.representatives):
        fiber = [u for u, image in enumerate(f.mapping) if image == y]
        seen: set[int] = set()
        for u in fiber:
            if u in seen:
                continue
            seen.update(f.source.act(g, u) for g in sub.elements)
            stab = f.source.stabilizer(u)
            matrix[source.index(u, sub.intersection(stab)), col] += 1
    return matrix
