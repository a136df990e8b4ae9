"""Tests for dihedral group arithmetic, G-sets and Burnside rings."""

import itertools

import numpy as np
import pytest

import bredoncalc
from bredoncalc import BurnsideElement, DihedralGroup, FiniteGSet, GroupElement
from bredoncalc.dihedral import (
    GMap,
    burnside_basis,
    burnside_labels,
    burnside_mul,
    decompose,
    double_cosets,
    group_mul,
    induced_map,
)


class TestGroupElement:
    """Tests for the normal form ζ^a τ^b."""

    def test_multiplication_is_associative(self, group: DihedralGroup):
        """(gh)k = g(hk) for every triple."""
        for g, h, k in itertools.product(group.elements, repeat=3):
            assert (g * h) * k == g * (h * k)

    def test_defining_relations(self, group: DihedralGroup):
        """ζ^p = τ² = e and ζτ = τζ^{-1}."""
        zeta, tau = group.zeta, group.tau
        assert (zeta**group.p).is_identity
        assert (tau * tau).is_identity
        assert zeta * tau == tau * zeta ** (group.p - 1)

    def test_inverse(self, group: DihedralGroup):
        """Every element times its inverse is the identity."""
        for g in group.elements:
            assert (g * g.inverse()).is_identity

    def test_orders(self, group: DihedralGroup):
        """Rotations have order p, reflections order 2."""
        assert group.identity.order() == 1
        assert group.zeta.order() == group.p
        assert group.element(2, 1).order() == 2

    def test_create_reduces_exponents(self):
        """create() reduces rotation mod p and flip mod 2."""
        assert GroupElement.create(3, 7, 3) == GroupElement(3, 1, 1)

    def test_str(self):
        """Elements print as words in z and t."""
        assert str(GroupElement(5, 0, 0)) == "e"
        assert str(GroupElement(5, 1, 0)) == "z"
        assert str(GroupElement(5, 2, 1)) == "z^2t"

    def test_mixed_groups(self):
        """Multiplying elements of different dihedral groups is rejected."""
        with pytest.raises(bredoncalc.ParameterError) as exc_info:
            group_mul(GroupElement(3, 1, 0), GroupElement(5, 1, 0))
        assert exc_info.value.field == "p"


class TestDihedralGroup:
    """Tests for subgroups and coset spaces."""

    @pytest.mark.parametrize("bad", [1, 2, 4, 9, 15])
    def test_rejects_non_odd_primes(self, bad: int):
        """Only odd primes define a group."""
        with pytest.raises(bredoncalc.ParameterError) as exc_info:
            DihedralGroup(bad)
        assert exc_info.value.field == "p"

    def test_subgroup_count(self, group: DihedralGroup):
        """D₂ₚ has p + 3 subgroups."""
        assert len(group.subgroups()) == group.p + 3

    def test_subgroup_names(self, group: DihedralGroup):
        """The standard levels print as e, <t>, <z> and G."""
        names = [group.level_subgroup(level).name for level in ("e", "Z/2", "Z/p", "G")]
        assert names == ["e", "<t>", "<z>", "G"]

    def test_reflections_are_conjugate(self, group: DihedralGroup):
        """Every reflection subgroup is conjugate to ⟨τ⟩."""
        T = group.reflection(0)
        for a in range(group.p):
            assert any(T.conjugate(g) == group.reflection(a) for g in group.elements)

    def test_coset_space_stabilizers(self, group: DihedralGroup):
        """The first point of G/H is fixed exactly by H."""
        for sub in (group.trivial(), group.reflection(), group.rotations(), group.full()):
            space = group.coset_space(sub)
            assert space.size == group.order // sub.order
            assert space.stabilizer(0) == sub
            assert space.check_action() == ()

    def test_transitive_set(self, group: DihedralGroup):
        """H/L has one orbit of size |H|/|L|."""
        gset = FiniteGSet.transitive(group.full(), group.reflection())
        assert gset.orbits == (tuple(range(group.p)),)

    def test_product_orbits(self, group: DihedralGroup):
        """G/⟨τ⟩ × G/⟨τ⟩ is G/⟨τ⟩ plus (p−1)/2 free orbits."""
        space = group.coset_space(group.reflection())
        product = space.product(space)
        sizes = sorted(len(orbit) for orbit in product.orbits)
        assert sizes == [group.p] + [2 * group.p] * ((group.p - 1) // 2)


class TestDoubleCosets:
    """Tests for double coset enumeration."""

    def test_double_cosets_partition_the_group(self, group: DihedralGroup):
        """For every H, K the double cosets partition G."""
        for H, K in itertools.product(group.subgroups(), repeat=2):
            cosets = double_cosets(H, K)
            assert sum(c.size for c in cosets) == group.order
            assert frozenset().union(*(c.elements for c in cosets)) == frozenset(group.elements)

    def test_identity_comes_first(self, group: DihedralGroup):
        """The double coset of e is listed first with representative e."""
        cosets = double_cosets(group.reflection(), group.rotations())
        assert cosets[0].representative.is_identity

    def test_reflection_double_cosets(self, group: DihedralGroup):
        """⟨τ⟩\\G/⟨τ⟩ has (p+1)/2 elements."""
        T = group.reflection()
        assert len(double_cosets(T, T)) == (group.p + 1) // 2


class TestGMap:
    """Tests for equivariant maps."""

    def test_rejects_non_equivariant_map(self, group: DihedralGroup):
        """Sending all of G/⟨τ⟩ to one point of G/⟨ζ⟩ is not equivariant."""
        source = group.coset_space(group.reflection())
        target = group.coset_space(group.rotations())
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            GMap.create(source, target, [0] * source.size)
        assert exc_info.value.field == "f"

    def test_projection_is_equivariant(self, group: DihedralGroup):
        """G/e → G/⟨τ⟩, ρ ↦ ρ⟨τ⟩ passes the equivariance check."""
        f = GMap.from_element(group, group.trivial(), group.reflection(), group.identity)
        assert f.source.size == 2 * group.p
        assert f.target.size == group.p


class TestBurnsideRing:
    """Tests for Burnside ring arithmetic."""

    def test_labels(self):
        """The labels at the D₆-level are 1, t2, t3, t6."""
        G = DihedralGroup(3).full()
        assert burnside_labels(G) == ("1", "t2", "t3", "t6")

    def test_basis_ranks(self, group: DihedralGroup):
        """A(e), A(⟨τ⟩), A(⟨ζ⟩), A(G) have ranks 1, 2, 2, 4."""
        ranks = [len(burnside_basis(group.level_subgroup(lv))) for lv in ("e", "Z/2", "Z/p", "G")]
        assert ranks == [1, 2, 2, 4]

    def test_products_at_d6(self):
        """t2·t2 = 2t2, t2·t3 = t6 and t3·t3 = t3 + t6 in A(D₆)."""
        G = DihedralGroup(3).full()
        t2 = BurnsideElement.from_labels(G, {"t2": 1})
        t3 = BurnsideElement.from_labels(G, {"t3": 1})
        assert t2 * t2 == BurnsideElement.from_labels(G, {"t2": 2})
        assert t2 * t3 == BurnsideElement.from_labels(G, {"t6": 1})
        assert t3 * t3 == BurnsideElement.from_labels(G, {"t3": 1, "t6": 1})

    def test_commutative_with_unit(self, group: DihedralGroup):
        """Basis products commute and 1 is the unit."""
        G = group.full()
        basis = [BurnsideElement.basis_element(G, i) for i in range(4)]
        one = BurnsideElement.one(G)
        for x, y in itertools.product(basis, repeat=2):
            assert burnside_mul(x, y) == burnside_mul(y, x)
        for x in basis:
            assert one * x == x

    def test_cardinality_is_multiplicative(self, group: DihedralGroup):
        """|X × Y| = |X|·|Y|."""
        G = group.full()
        basis = [BurnsideElement.basis_element(G, i) for i in range(4)]
        for x, y in itertools.product(basis, repeat=2):
            assert (x * y).cardinality() == x.cardinality() * y.cardinality()

    def test_decompose_point(self, group: DihedralGroup):
        """The one-point set is the unit."""
        assert decompose(group.point()) == (1, 0, 0, 0)

    def test_str(self):
        """Elements print with their labels."""
        G = DihedralGroup(3).full()
        assert str(BurnsideElement.from_labels(G, {"1": 2, "t3": 1})) == "2 + t3"
        assert str(BurnsideElement.zero(G)) == "0"

    def test_unknown_label(self):
        """from_labels() rejects labels outside the basis."""
        G = DihedralGroup(3).full()
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            BurnsideElement.from_labels(G, {"t5": 1})
        assert exc_info.value.field == "terms"

    def test_mixed_levels(self, group: DihedralGroup):
        """Elements at different levels do not multiply."""
        x = BurnsideElement.one(group.full())
        y = BurnsideElement.one(group.reflection())
        with pytest.raises(bredoncalc.ParameterError) as exc_info:
            burnside_mul(x, y)
        assert exc_info.value.field == "level"


class TestInducedMap:
    """Tests for maps of Burnside modules."""

    def _maps(self, group: DihedralGroup) -> tuple[GMap, GMap]:
        f = GMap.from_element(group, group.trivial(), group.reflection(), group.identity)
        g = GMap.from_element(group, group.reflection(), group.full(), group.identity)
        return f, g

    def test_pullback_to_reflection_is_restriction(self, group: DihedralGroup):
        """Pullback along G/⟨τ⟩ → G/G is res^G_⟨τ⟩ on A(G)."""
        _, g = self._maps(group)
        p = group.p
        expected = np.array([[1, 0, 1, 0], [0, 1, (p - 1) // 2, p]])
        assert np.array_equal(induced_map(g, variance="contravariant"), expected)

    def test_covariant_functoriality(self, group: DihedralGroup):
        """(g∘f)_* = g_* f_*."""
        f, g = self._maps(group)
        composite = induced_map(g.compose(f))
        assert np.array_equal(composite, induced_map(g) @ induced_map(f))

    def test_contravariant_functoriality(self, group: DihedralGroup):
        """(g∘f)^* = f^* g^*."""
        f, g = self._maps(group)
        composite = induced_map(g.compose(f), variance="contravariant")
        pull_f = induced_map(f, variance="contravariant")
        product = pull_f @ induced_map(g, variance="contravariant")
        assert np.array_equal(composite, product)
        assert composite.tolist() == [[1, 2, group.p, 2 * group.p]]

    def test_identity(self, group: DihedralGroup):
        """The identity map induces the identity matrix in both variances."""
        space = group.coset_space(group.reflection())
        identity = GMap.identity(space)
        for variance in ("covariant", "contravariant"):
            assert np.array_equal(induced_map(identity, variance=variance), np.eye(2, dtype=int))

    def test_unknown_variance(self, group: DihedralGroup):
        """Only covariant and contravariant are accepted."""
        f, _ = self._maps(group)
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            induced_map(f, variance="sideways")  # type: ignore[arg-type]
        assert exc_info.value.field == "variance"
