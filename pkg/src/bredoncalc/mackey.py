"""Mackey functors for D₂ₚ.

A Mackey functor is stored on the four lattice edges e ≤ ⟨τ⟩, e ≤ ⟨ζ⟩,
⟨τ⟩ ≤ G and ⟨ζ⟩ ≤ G. Composites along longer chains are derived on demand.
Levels are named "e", "Z/2", "Z/p" and "G"; every level is a free abelian
group and every map is an integer matrix on the chosen bases.
"""

from collections.abc import Mapping
from dataclasses import dataclass, replace
from types import MappingProxyType

import numpy as np

import bredoncalc.exceptions as exc
from bredoncalc.dihedral import (
    LEVELS,
    BurnsideElement,
    DihedralGroup,
    FiniteGSet,
    GroupElement,
    LevelName,
    Subgroup,
    burnside_basis,
    classify_orbit,
    decompose,
    double_cosets,
)
from bredoncalc.groups import FGAbelianGroup, presented_group
from bredoncalc.logging import logger
from bredoncalc.snf import kernel_basis, lattice_basis, rank, reduce_modulo

Edge = tuple[LevelName, LevelName]  # (lower, upper)

EDGES: tuple[Edge, ...] = (("e", "Z/2"), ("e", "Z/p"), ("Z/2", "G"), ("Z/p", "G"))

_BELOW: Mapping[LevelName, tuple[LevelName, ...]] = MappingProxyType(
    {"e": ("e",), "Z/2": ("e", "Z/2"), "Z/p": ("e", "Z/p"), "G": LEVELS}
)


def _identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class MackeyFunctor:
    """A D₂ₚ-Mackey functor with free levels, stored on the lattice edges."""

    name: str
    p: int
    ranks: Mapping[LevelName, int]
    restrictions: Mapping[Edge, np.ndarray]  # rank(lower) x rank(upper)
    transfers: Mapping[Edge, np.ndarray]  # rank(upper) x rank(lower)
    e_action: Mapping[GroupElement, np.ndarray]  # G acting on the e-level
    rotation_weyl: np.ndarray  # τ acting on the Z/p-level

    @classmethod
    def create(
        cls,
        *,
        name: str,
        p: int,
        ranks: Mapping[LevelName, int],
        restrictions: Mapping[Edge, object],
        transfers: Mapping[Edge, object],
        e_action: Mapping[GroupElement, object] | None = None,
        rotation_weyl: object | None = None,
    ) -> "MackeyFunctor":
        """Create a Mackey functor, checking that every matrix has the right shape.

        Missing Weyl data defaults to the trivial action.

        Raises:
            ValidationError: If a level or edge is missing or a shape is wrong
        """
        group = DihedralGroup(p)
        for level in LEVELS:
            if level not in ranks:
                raise exc.ValidationError("ranks", f"missing level {level}")
        res: dict[Edge, np.ndarray] = {}
        tr: dict[Edge, np.ndarray] = {}
        for edge in EDGES:
            lower, upper = edge
            if edge not in restrictions or edge not in transfers:
                raise exc.ValidationError("edges", f"missing edge {lower} <= {upper}")
            res[edge] = _checked(restrictions[edge], (ranks[lower], ranks[upper]), f"res {edge}")
            tr[edge] = _checked(transfers[edge], (ranks[upper], ranks[lower]), f"tr {edge}")
        actions = {
            g: _checked(
                e_action[g] if e_action is not None else _identity(ranks["e"]),
                (ranks["e"], ranks["e"]),
                f"action of {g}",
            )
            for g in group.elements
        }
        weyl = _checked(
            rotation_weyl if rotation_weyl is not None else _identity(ranks["Z/p"]),
            (ranks["Z/p"], ranks["Z/p"]),
            "rotation_weyl",
        )
        return cls(
            name=name,
            p=p,
            ranks=MappingProxyType(dict(ranks)),
            restrictions=MappingProxyType(res),
            transfers=MappingProxyType(tr),
            e_action=MappingProxyType(actions),
            rotation_weyl=weyl,
        )

    @property
    def levels(self) -> Mapping[LevelName, FGAbelianGroup]:
        return MappingProxyType({level: FGAbelianGroup.free(self.ranks[level]) for level in LEVELS})

    def res(
        self, upper: LevelName, lower: LevelName, *, via: LevelName | None = None
    ) -> np.ndarray:
        """Restriction M(upper) → M(lower), composed along `via` when needed."""
        return self._arrow(self.restrictions, upper, lower, via, restriction=True)

    def tr(self, lower: LevelName, upper: LevelName, *, via: LevelName | None = None) -> np.ndarray:
        """Transfer M(lower) → M(upper), composed along `via` when needed."""
        return self._arrow(self.transfers, upper, lower, via, restriction=False)

    def _arrow(
        self,
        table: Mapping[Edge, np.ndarray],
        upper: LevelName,
        lower: LevelName,
        via: LevelName | None,
        *,
        restriction: bool,
    ) -> np.ndarray:
        if lower not in _BELOW.get(upper, ()):
            raise exc.ValidationError("levels", f"{lower} is not below {upper}")
        if lower == upper:
            return _identity(self.ranks[lower])
        if (lower, upper) in table:
            return table[(lower, upper)]
        # only e ≤ G is a composite
        middle = via or "Z/2"
        if middle not in ("Z/2", "Z/p"):
            raise exc.ValidationError("via", f"must be Z/2 or Z/p, got {middle!r}")
        if restriction:
            return table[(lower, middle)] @ table[(middle, upper)]
        return table[(middle, upper)] @ table[(lower, middle)]

    def conjugation(self, level: LevelName, g: GroupElement) -> np.ndarray:
        """c_g on a level H with gHg⁻¹ = H."""
        match level:
            case "e":
                return self.e_action[g]
            case "Z/p" if g.flip:
                return self.rotation_weyl
        return _identity(self.ranks[level])

    def with_transfer(self, lower: LevelName, upper: LevelName, matrix: object) -> "MackeyFunctor":
        """Copy with one stored transfer replaced."""
        edge = (lower, upper)
        if edge not in EDGES:
            raise exc.ValidationError("edge", f"{lower} <= {upper} is not a lattice edge")
        transfers = dict(self.transfers)
        transfers[edge] = _checked(matrix, self.transfers[edge].shape, f"tr {edge}")
        return replace(self, transfers=MappingProxyType(transfers))

    def with_restriction(
        self, upper: LevelName, lower: LevelName, matrix: object
    ) -> "MackeyFunctor":
        """Copy with one stored restriction replaced."""
        edge = (lower, upper)
        if edge not in EDGES:
            raise exc.ValidationError("edge", f"{lower} <= {upper} is not a lattice edge")
        restrictions = dict(self.restrictions)
        restrictions[edge] = _checked(matrix, self.restrictions[edge].shape, f"res {edge}")
        return replace(self, restrictions=MappingProxyType(restrictions))


def _checked(matrix: object, shape: tuple[int, ...], what: str) -> np.ndarray:
    array = np.array(matrix, dtype=np.int64)
    if array.size == 0:
        array = array.reshape(shape)
    if array.shape != tuple(shape):
        raise exc.ValidationError(
            "matrix", f"{what} must have shape {tuple(shape)}, got {array.shape}"
        )
    return array


# Constructions


def constant_Z(p: int) -> MackeyFunctor:
    """The constant functor ℤ̲: restrictions 1, transfers multiplication by the index."""
    ranks = {level: 1 for level in LEVELS}
    one = [[1]]
    return MackeyFunctor.create(
        name="constant",
        p=p,
        ranks=ranks,
        restrictions={edge: one for edge in EDGES},
        transfers={
            ("e", "Z/2"): [[2]],
            ("e", "Z/p"): [[p]],
            ("Z/2", "G"): [[p]],
            ("Z/p", "G"): [[2]],
        },
    )


def burnside_A(p: int) -> MackeyFunctor:
    """The Burnside functor A̲, built by decomposing restricted and induced G-sets."""
    group = DihedralGroup(p)
    subgroups = {level: group.level_subgroup(level) for level in LEVELS}
    ranks = {level: len(burnside_basis(sub)) for level, sub in subgroups.items()}
    restrictions = {}
    transfers = {}
    for lower, upper in EDGES:
        H, K = subgroups[upper], subgroups[lower]
        res = np.zeros((ranks[lower], ranks[upper]), dtype=np.int64)
        for j, L in enumerate(burnside_basis(H)):
            res[:, j] = decompose(FiniteGSet.transitive(H, L).restrict(K))
        tr = np.zeros((ranks[upper], ranks[lower]), dtype=np.int64)
        for j, L in enumerate(burnside_basis(K)):
            tr[classify_orbit(H, L), j] = 1
        restrictions[(lower, upper)] = res
        transfers[(lower, upper)] = tr
    R = subgroups["Z/p"]
    weyl = np.zeros((ranks["Z/p"], ranks["Z/p"]), dtype=np.int64)
    for j, L in enumerate(burnside_basis(R)):
        weyl[classify_orbit(R, L.conjugate(group.tau)), j] = 1
    logger.debug("Built Burnside functor: p=%d, ranks=%s", p, ranks)
    return MackeyFunctor.create(
        name="burnside",
        p=p,
        ranks=ranks,
        restrictions=restrictions,
        transfers=transfers,
        rotation_weyl=weyl,
    )


def fixed_point_functor(gset: FiniteGSet, *, name: str | None = None) -> MackeyFunctor:
    """The fixed-point functor of the permutation module ℤ[X].

    The level at H has the H-orbit sums of X as basis, in the orbit order of
    `FiniteGSet.orbits`. Restriction is inclusion of fixed points and transfer
    sums over cosets.

    Raises:
        ValidationError: If X is not acted on by the whole group
    """
    p = gset.acting.p
    group = DihedralGroup(p)
    if gset.acting != group.full():
        raise exc.ValidationError("gset", "must carry an action of the whole group")
    subgroups = {level: group.level_subgroup(level) for level in LEVELS}
    orbits = {level: gset.restrict(sub).orbits for level, sub in subgroups.items()}
    ranks = {level: len(orbits[level]) for level in LEVELS}
    restrictions = {}
    transfers = {}
    for lower, upper in EDGES:
        H = subgroups[upper]
        K = subgroups[lower]
        upper_index = gset.restrict(H).orbit_index
        res = np.zeros((ranks[lower], ranks[upper]), dtype=np.int64)
        for i, orbit in enumerate(orbits[lower]):
            res[i, upper_index[orbit[0]]] = 1
        tr = np.zeros((ranks[upper], ranks[lower]), dtype=np.int64)
        for j, orbit in enumerate(orbits[lower]):
            # Σ over H of h·(orbit sum), divided by |K| which fixes the orbit sum
            counts = np.zeros(gset.size, dtype=np.int64)
            for h in H.elements:
                for x in orbit:
                    counts[gset.act(h, x)] += 1
            for i, upper_orbit in enumerate(orbits[upper]):
                tr[i, j] = counts[upper_orbit[0]] // K.order
        restrictions[(lower, upper)] = res
        transfers[(lower, upper)] = tr
    e_index = gset.restrict(subgroups["e"]).orbit_index
    actions = {}
    for g in group.elements:
        action = np.zeros((ranks["e"], ranks["e"]), dtype=np.int64)
        for x in range(gset.size):
            action[e_index[gset.act(g, x)], e_index[x]] = 1
        actions[g] = action
    r_index = gset.restrict(subgroups["Z/p"]).orbit_index
    weyl = np.zeros((ranks["Z/p"], ranks["Z/p"]), dtype=np.int64)
    for j, orbit in enumerate(orbits["Z/p"]):
        weyl[r_index[gset.act(group.tau, orbit[0])], j] = 1
    return MackeyFunctor.create(
        name=name or f"fixed-point({gset.size} points)",
        p=p,
        ranks=ranks,
        restrictions=restrictions,
        transfers=transfers,
        e_action=actions,
        rotation_weyl=weyl,
    )


# Axioms


@dataclass(frozen=True)
class MackeyReport:
    """Outcome of `check_mackey_axioms`; empty violations means every axiom holds."""

    functor: str
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return f"{self.functor}: all Mackey axioms hold"
        return "\n".join([f"{self.functor}: {len(self.violations)} violations", *self.violations])


def check_mackey_axioms(functor: MackeyFunctor) -> MackeyReport:
    """Check composition, the Weyl actions and the double coset formula.

    Never raises; every failing identity is named in the report.
    """
    violations = [
        *_composition_violations(functor),
        *_weyl_violations(functor),
        *_double_coset_violations(functor),
    ]
    if violations:
        logger.debug(
            "Mackey check failed: functor=%s, violations=%d", functor.name, len(violations)
        )
    return MackeyReport(functor=functor.name, violations=tuple(violations))


def _composition_violations(M: MackeyFunctor) -> list[str]:
    out = []
    if not np.array_equal(M.res("G", "e", via="Z/2"), M.res("G", "e", via="Z/p")):
        out.append("res[G->e] via Z/2 differs from res[G->e] via Z/p")
    if not np.array_equal(M.tr("e", "G", via="Z/2"), M.tr("e", "G", via="Z/p")):
        out.append("tr[e->G] via Z/2 differs from tr[e->G] via Z/p")
    return out


def _weyl_violations(M: MackeyFunctor) -> list[str]:
    group = DihedralGroup(M.p)
    out = []
    if not np.array_equal(M.e_action[group.identity], _identity(M.ranks["e"])):
        out.append("identity acts nontrivially on the e-level")
    for g in group.elements:
        for h in group.elements:
            if not np.array_equal(M.e_action[g] @ M.e_action[h], M.e_action[g * h]):
                out.append(f"e-level action is not multiplicative at ({g}, {h})")
    if not np.array_equal(M.rotation_weyl @ M.rotation_weyl, _identity(M.ranks["Z/p"])):
        out.append("Weyl action on Z/p does not square to the identity")
    for level in ("Z/2", "Z/p"):
        H = group.level_subgroup(level)
        for h in H.elements:
            act = M.e_action[h]
            if not np.array_equal(act @ M.res(level, "e"), M.res(level, "e")):
                out.append(f"res[{level}->e] lands outside the {h}-fixed part")
            if not np.array_equal(M.tr("e", level) @ act, M.tr("e", level)):
                out.append(f"tr[e->{level}] is not {h}-invariant")
    tau = M.e_action[group.tau]
    if not np.array_equal(tau @ M.res("Z/p", "e"), M.res("Z/p", "e") @ M.rotation_weyl):
        out.append("res[Z/p->e] does not commute with the Weyl action")
    if not np.array_equal(M.tr("e", "Z/p") @ tau, M.rotation_weyl @ M.tr("e", "Z/p")):
        out.append("tr[e->Z/p] does not commute with the Weyl action")
    if not np.array_equal(M.rotation_weyl @ M.res("G", "Z/p"), M.res("G", "Z/p")):
        out.append("res[G->Z/p] lands outside the Weyl-fixed part")
    if not np.array_equal(M.tr("Z/p", "G") @ M.rotation_weyl, M.tr("Z/p", "G")):
        out.append("tr[Z/p->G] is not Weyl-invariant")
    return out


def _double_coset_violations(M: MackeyFunctor) -> list[str]:
    # res^H_K tr^H_L = Σ_{x ∈ K\H/L} tr^K_{K∩xLx⁻¹} c_x res^L_{x⁻¹Kx∩L}
    group = DihedralGroup(M.p)
    out = []
    for h_name in ("Z/2", "Z/p", "G"):
        H = group.level_subgroup(h_name)
        for k_name in _BELOW[h_name]:
            for l_name in _BELOW[h_name]:
                K = group.level_subgroup(k_name)
                L = group.level_subgroup(l_name)
                lhs = M.res(h_name, k_name) @ M.tr(l_name, h_name)
                rhs = np.zeros_like(lhs)
                for coset in double_cosets(K, L):
                    x = coset.representative
                    if x not in H:
                        continue
                    A = K.intersection(L.conjugate(x))
                    B = K.conjugate(x.inverse()).intersection(L)
                    conjugated = M.conjugation(B.level, x) @ M.res(l_name, B.level)
                    rhs += M.tr(A.level, k_name) @ conjugated
                if not np.array_equal(lhs, rhs):
                    out.append(
                        f"double coset formula fails for res[{h_name}->{k_name}] "
                        f"tr[{l_name}->{h_name}]"
                    )
    return out


# Augmentation and the I/J groups


@dataclass(frozen=True, eq=False)
class AugmentationQuotient:
    """The quotient functor and the levelwise projections onto it."""

    functor: MackeyFunctor
    projections: Mapping[LevelName, np.ndarray]  # 1 x rank of the source level


def augmentation_quotient(functor: MackeyFunctor) -> AugmentationQuotient:
    """Quotient of A̲ by its augmentation ideal, exhibited as ℤ̲.

    The projection at level H sends an H-set to its cardinality. Applied to ℤ̲
    it returns ℤ̲ with identity projections.

    Raises:
        ValidationError: If the functor is neither Burnside nor constant
        MackeyAxiomError: If the projections fail to commute with res and tr
    """
    group = DihedralGroup(functor.p)
    target = constant_Z(functor.p)
    if functor.name == "constant":
        projections = {level: _identity(1) for level in LEVELS}
    elif functor.name == "burnside":
        projections = {}
        for level in LEVELS:
            H = group.level_subgroup(level)
            projections[level] = np.array(
                [[H.order // L.order for L in burnside_basis(H)]], dtype=np.int64
            )
    else:
        raise exc.ValidationError(
            "functor", f"augmentation is defined for burnside or constant, got {functor.name!r}"
        )
    violations = []
    for lower, upper in EDGES:
        res_before = projections[lower] @ functor.res(upper, lower)
        if not np.array_equal(res_before, target.res(upper, lower) @ projections[upper]):
            violations.append(f"projection does not commute with res[{upper}->{lower}]")
        tr_before = projections[upper] @ functor.tr(lower, upper)
        if not np.array_equal(tr_before, target.tr(lower, upper) @ projections[lower]):
            violations.append(f"projection does not commute with tr[{lower}->{upper}]")
    if violations:
        raise exc.MackeyAxiomError(functor.name, tuple(violations))
    return AugmentationQuotient(functor=target, projections=MappingProxyType(projections))


@dataclass(frozen=True)
class DistinguishedGroup:
    """A group together with generators written in a Burnside basis."""

    name: str
    group: FGAbelianGroup
    generators: tuple[BurnsideElement, ...]

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"{self.name} = {self.group}, generated by {gens}"


def _kernel_group(name: str, matrix: np.ndarray, level: Subgroup) -> DistinguishedGroup:
    columns = matrix.shape[1]
    basis = kernel_basis(matrix, columns=columns)
    rows = lattice_basis((tuple(basis[:, c]) for c in range(basis.shape[1])), columns)
    if any(np.any(matrix.astype(object).dot(np.array(v, dtype=object)) != 0) for v in rows):
        raise exc.MackeyAxiomError(name, ("kernel generator is not in the kernel",))
    if len(rows) != columns - _rank(matrix):
        raise exc.MackeyAxiomError(name, ("kernel has the wrong rank",))
    return DistinguishedGroup(
        name=name,
        group=FGAbelianGroup.free(len(rows)),
        generators=tuple(BurnsideElement(level, v) for v in rows),
    )


def _cokernel_group(name: str, matrix: np.ndarray, level: Subgroup) -> DistinguishedGroup:
    rows = matrix.shape[0]
    image = lattice_basis((tuple(matrix[:, c]) for c in range(matrix.shape[1])), rows)
    reduced = [reduce_modulo(tuple(int(i == k) for i in range(rows)), image) for k in range(rows)]
    generators = lattice_basis((v for v in reduced if any(v)), rows)
    group = presented_group(matrix.astype(object), rows)
    if group.generator_count != len(generators):
        raise exc.MackeyAxiomError(name, ("cokernel generators do not match the presentation",))
    return DistinguishedGroup(
        name=name,
        group=group,
        generators=tuple(BurnsideElement(level, v) for v in generators),
    )


def _rank(matrix: np.ndarray) -> int:
    return rank(matrix.astype(object))


def ij_groups(p: int) -> tuple[DistinguishedGroup, ...]:
    """The groups I_{ℤ/2}, J_{ℤ/2}, I^{ℤ/p}_{D₂ₚ} and J^{ℤ/p}_{D₂ₚ}.

    I is the kernel of restriction to the smaller level, J the cokernel of the
    transfer from it. Generators are in the Burnside basis of the larger level.
    """
    A = burnside_A(p)
    group = DihedralGroup(p)
    T = group.level_subgroup("Z/2")
    G = group.full()
    return (
        _kernel_group("I_Z/2", A.res("Z/2", "e"), T),
        _cokernel_group("J_Z/2", A.tr("e", "Z/2"), T),
        _kernel_group("I^Z/p_G", A.res("G", "Z/p"), G),
        _cokernel_group("J^Z/p_G", A.tr("Z/p", "G"), G),
    )


# Diagram


def _format_matrix(matrix: np.ndarray) -> str:
    return "[" + ", ".join("[" + ", ".join(str(int(x)) for x in row) + "]" for row in matrix) + "]"


def render_diagram(functor: MackeyFunctor) -> str:
    """Four-corner text diagram followed by every stored and derived arrow.

    The trivial level sits at the top and D₂ₚ at the bottom.
    """
    levels = functor.levels
    top = f"e: {levels['e']}"
    left = f"Z/2: {levels['Z/2']}"
    right = f"Z/p: {levels['Z/p']}"
    bottom = f"G: {levels['G']}"
    width = len(left) + 8 + len(right)
    lines = [
        f"{functor.name} (p={functor.p})",
        top.center(width),
        "/  \\".center(width),
        f"{left}{' ' * 8}{right}",
        "\\  /".center(width),
        bottom.center(width),
        "",
    ]
    for lower, upper in (*EDGES, ("e", "G")):
        lines.append(f"res {upper} -> {lower}: {_format_matrix(functor.res(upper, lower))}")
        lines.append(f"tr  {lower} -> {upper}: {_format_matrix(functor.tr(lower, upper))}")
    group = DihedralGroup(functor.p)
    lines.append(f"Weyl on e: zeta -> {_format_matrix(functor.e_action[group.zeta])}")
    lines.append(f"Weyl on e: tau -> {_format_matrix(functor.e_action[group.tau])}")
    lines.append(f"Weyl on Z/p: tau -> {_format_matrix(functor.rotation_weyl)}")
    return "\n".join(lines)
