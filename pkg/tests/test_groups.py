"""Tests for finitely generated abelian groups and graded groups."""

import pytest

import bredoncalc
from bredoncalc import FGAbelianGroup, GradedGroup
from bredoncalc.groups import homomorphism_homology, presented_group

Z = FGAbelianGroup.free()
Z2 = FGAbelianGroup.cyclic(2)
Z3 = FGAbelianGroup.cyclic(3)


class TestFGAbelianGroup:
    """Tests for invariant-factor normal form."""

    def test_chinese_remainder(self):
        """ℤ/2 ⊕ ℤ/3 is ℤ/6."""
        assert FGAbelianGroup.create(0, [2, 3]) == FGAbelianGroup.cyclic(6)

    def test_divisibility_chain(self):
        """ℤ/2 ⊕ ℤ/4 stays split."""
        assert FGAbelianGroup.create(0, [4, 2]).invariant_factors == (2, 4)

    def test_trivial_orders_dropped(self):
        """Orders 0 count as free summands and orders 1 vanish."""
        group = FGAbelianGroup.create(1, [0, 1, 2])
        assert group.free_rank == 2
        assert group.invariant_factors == (2,)

    def test_direct_sum(self):
        """Summands add up."""
        assert Z + Z2 + Z2 == FGAbelianGroup(1, (2, 2))

    def test_str(self):
        """Groups print as sums of Z and Z/d."""
        assert str(FGAbelianGroup(2, (2,))) == "Z^2 + Z/2"
        assert str(FGAbelianGroup()) == "0"
        assert str(Z3) == "Z/3"

    def test_rejects_broken_chain(self):
        """Invariant factors must divide each other."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            FGAbelianGroup(0, (2, 3))
        assert exc_info.value.field == "invariant_factors"

    def test_rejects_negative_rank(self):
        """The free rank is non-negative."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            FGAbelianGroup(-1)
        assert exc_info.value.field == "free_rank"

    def test_torsion_count(self):
        """The ℤ/q-rank counts summands of order divisible by q."""
        group = FGAbelianGroup.create(0, [2, 2, 3])
        assert group.torsion_count(2) == 2
        assert group.torsion_count(3) == 1

    def test_admits_nonzero_map(self):
        """Hom(ℤ/2, ℤ/3) = 0 but Hom(ℤ, ℤ/3) ≠ 0."""
        assert not Z2.admits_nonzero_map_to(Z3)
        assert Z.admits_nonzero_map_to(Z3)
        assert not Z2.admits_nonzero_map_to(Z)

    def test_presented_group(self):
        """ℤ²/⟨(2, 2)⟩ is ℤ ⊕ ℤ/2."""
        assert presented_group([[2], [2]], 2) == FGAbelianGroup(1, (2,))
        assert presented_group([], 3) == FGAbelianGroup.free(3)


class TestHomomorphismHomology:
    """Tests for kernels and cokernels of maps between groups."""

    def test_multiplication_on_z(self):
        """×2 on ℤ has kernel 0 and cokernel ℤ/2."""
        assert homomorphism_homology([[2]], Z, Z) == (FGAbelianGroup(), Z2)

    def test_zero_map(self):
        """The zero map keeps both groups."""
        assert homomorphism_homology([[0]], Z, Z) == (Z, Z)

    def test_multiplication_on_torsion(self):
        """×2 on ℤ/4 has kernel and cokernel ℤ/2."""
        Z4 = FGAbelianGroup.cyclic(4)
        assert homomorphism_homology([[2]], Z4, Z4) == (Z2, Z2)

    def test_multiplication_by_p_on_z2(self):
        """×3 on ℤ/2 is an isomorphism."""
        assert homomorphism_homology([[3]], Z2, Z2) == (FGAbelianGroup(), FGAbelianGroup())

    def test_burnside_block(self):
        """[[1, 0], [1, 3]] on ℤ² has cokernel ℤ/3."""
        free = FGAbelianGroup.free(2)
        assert homomorphism_homology([[1, 0], [1, 3]], free, free) == (FGAbelianGroup(), Z3)

    def test_not_a_homomorphism(self):
        """ℤ/2 → ℤ, 1 ↦ 1 does not respect the relation."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            homomorphism_homology([[1]], Z2, Z)
        assert exc_info.value.field == "matrix"

    def test_wrong_shape(self):
        """The matrix must be target generators by source generators."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            homomorphism_homology([[1, 0]], Z, Z)
        assert exc_info.value.field == "matrix"


class TestGradedGroup:
    """Tests for graded groups."""

    def test_create_merges_degrees(self):
        """Repeated degrees are summed and zero entries dropped."""
        graded = GradedGroup.create([(0, Z), (0, Z2), (3, FGAbelianGroup())])
        assert graded.degrees() == (0,)
        assert graded[0] == FGAbelianGroup(1, (2,))
        assert graded[3] == FGAbelianGroup()

    def test_shift_and_negate(self):
        """shift() raises degrees and negate() reflects them."""
        graded = GradedGroup.create({1: Z2, 3: Z})
        assert graded.shift(2) == GradedGroup.create({3: Z2, 5: Z})
        assert graded.negate() == GradedGroup.create({-1: Z2, -3: Z})

    def test_json(self):
        """JSON entries carry degree, free rank and invariant factors."""
        graded = GradedGroup.create({0: Z3, 1: Z2})
        assert graded.to_json() == [
            {"degree": 0, "free_rank": 0, "invariant_factors": [3]},
            {"degree": 1, "free_rank": 0, "invariant_factors": [2]},
        ]
        assert GradedGroup.from_json(graded.to_json()) == graded

    def test_csv_rows(self):
        """CSV rows join invariant factors with semicolons."""
        graded = GradedGroup.create({2: FGAbelianGroup(1, (2, 2))})
        assert graded.to_csv_rows() == [(2, 1, "2;2")]

    def test_str(self):
        """One line per nonzero degree."""
        assert str(GradedGroup.create({0: Z3, 1: Z2})) == "0: Z/3\n1: Z/2"
        assert str(GradedGroup.zero()) == "0"

    def test_hashable(self):
        """Equal graded groups hash alike."""
        a = GradedGroup.create({0: Z})
        b = GradedGroup.single(0, Z)
        assert a == b
        assert len({a, b}) == 1
