"""Tests for the closed-form answers."""

import pytest

import bredoncalc
from bredoncalc import (
    FGAbelianGroup,
    GradedGroup,
    RODegree,
    bredon,
    build_representation_sphere,
    compare,
    orbit_space_formula,
    sphere_formula,
)
from bredoncalc.formulas import a_interval, b_group, orbit_space_families, script_b, script_c

Z = FGAbelianGroup.free()
Z2 = FGAbelianGroup.cyclic(2)
Z3 = FGAbelianGroup.cyclic(3)


class TestRODegree:
    """Tests for RO(D₂ₚ) degrees."""

    def test_str(self):
        """Degrees print in the query syntax."""
        assert str(RODegree.create(0, -4, 5)) == "-4a+5g"
        assert str(RODegree.create(1, 2, -1)) == "1e+2a-1g"
        assert str(RODegree()) == "0"

    def test_total_multiplicity(self):
        """m adds up the γᵢ-multiplicities."""
        degree = RODegree.create(gammas={1: 2, 2: 1})
        assert degree.m == 3
        assert str(degree) == "2g+1g2"

    def test_m_and_gammas_exclusive(self):
        """m and gammas cannot both be given."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            RODegree.create(m=1, gammas={1: 1})
        assert exc_info.value.field == "m"

    def test_gamma_index_positive(self):
        """γ-indices start at 1."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            RODegree.create(gammas={0: 1})
        assert exc_info.value.field == "gammas"

    def test_gamma_index_in_range(self):
        """γ₃ does not exist for p = 5."""
        with pytest.raises(bredoncalc.ParameterError) as exc_info:
            RODegree.create(gammas={3: 1}).check_prime(5)
        assert exc_info.value.field == "degree"
        RODegree.create(gammas={3: 1}).check_prime(7)


class TestBuildingBlocks:
    """Tests for the graded building blocks."""

    def test_b_homology(self):
        """B_4 is ℤ/2 in degrees 0 and 2 and ℤ in degree 4."""
        assert [b_group(4, n) for n in range(5)] == [Z2, FGAbelianGroup(), Z2, FGAbelianGroup(), Z]

    def test_b_cohomology(self):
        """B^5 is ℤ/2 in degrees 3 and 5."""
        groups = [b_group(5, n, "contravariant") for n in range(6)]
        assert groups == [FGAbelianGroup()] * 3 + [Z2, FGAbelianGroup(), Z2]

    def test_b_negative_is_dual(self):
        """B_{−ℓ} in degree n is B^ℓ in degree −n."""
        assert b_group(-4, -4) == Z
        assert b_group(-4, -3) == Z2

    def test_a_interval(self):
        """₀A_5 is ℤ/p in degrees 3 and 7."""
        degrees = [n for n in range(12) if not a_interval(0, 5, n, p=5).is_zero]
        assert degrees == [3, 7]
        assert a_interval(0, 5, 3, p=5) == FGAbelianGroup.cyclic(5)

    def test_a_interval_cohomology(self):
        """⁰A^5 is ℤ/p in degrees 4 and 8."""
        degrees = [n for n in range(12) if not a_interval(0, 5, n, "contravariant", p=3).is_zero]
        assert degrees == [4, 8]

    def test_script_b_bottom(self):
        """𝓑_0 is ℤ² and 𝓒_0 is ℤ⁴."""
        assert script_b(0, 0) == FGAbelianGroup.free(2)
        assert script_c(0, 0) == FGAbelianGroup.free(4)

    def test_script_b_cumulative(self):
        """𝓑_2 carries the J summand next to the top class."""
        assert script_b(2, 0) == Z
        assert script_b(2, 2) == Z


class TestSphereFormula:
    """Tests for S^{kε+ℓα+mγ}."""

    def test_alpha_plus_gamma(self):
        """S^{α+γ} has ℤ/2 in degree 1 and ℤ in degree 3."""
        assert sphere_formula(1, 1, "constant", p=3) == GradedGroup.create({1: Z2, 3: Z})

    def test_two_alpha_plus_gamma(self):
        """S^{2α+γ} picks up a ℤ/p in degree 2."""
        expected = GradedGroup.create({1: Z2, 2: Z3, 3: Z2})
        assert sphere_formula(2, 1, "constant", p=3) == expected

    def test_burnside_gamma(self):
        """With A̲ coefficients S^γ has ℤ² in degree 0 and ℤ in degree 1."""
        expected = GradedGroup.create({0: FGAbelianGroup.free(2), 1: Z})
        assert sphere_formula(0, 1, "burnside", p=3) == expected

    def test_burnside_gamma_printed(self):
        """The printed interval term adds a ℤ/p in degree ℓ."""
        expected = GradedGroup.create({0: FGAbelianGroup(2, (3,)), 1: Z})
        assert sphere_formula(0, 1, "burnside", p=3, printed=True) == expected

    def test_burnside_sign_sphere_cohomology(self):
        """𝓒^2 is ℤ² in degrees 0 and 2."""
        expected = GradedGroup.create({0: FGAbelianGroup.free(2), 2: FGAbelianGroup.free(2)})
        assert sphere_formula(2, 0, "burnside", "contravariant", p=3) == expected

    def test_epsilon_shifts(self):
        """Adding kε shifts every degree by k."""
        base = sphere_formula(1, 1, "constant", p=3)
        assert sphere_formula(1, 1, "constant", p=3, k=2) == base.shift(2)

    def test_negative_gamma_is_dual(self):
        """S^{−α−γ} has ℤ in degree −3."""
        assert sphere_formula(-1, -1, "constant", p=3) == GradedGroup.single(-3, Z)

    def test_negative_gamma_general(self, p: int):
        """Negative m reads off the negated cohomology of the dual degree."""
        for coeff in ("constant", "burnside"):
            dual = sphere_formula(2, 3, coeff, "contravariant", p=p)
            assert sphere_formula(-2, -3, coeff, p=p) == dual.negate()

    def test_rejects_non_prime(self):
        """p must be an odd prime."""
        with pytest.raises(bredoncalc.ParameterError) as exc_info:
            sphere_formula(0, 1, "constant", p=9)
        assert exc_info.value.field == "p"

    def test_rejects_unknown_coefficients(self):
        """Unknown coefficient systems are rejected."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            sphere_formula(0, 1, "rational", p=3)  # type: ignore[arg-type]
        assert exc_info.value.field == "coeff"


class TestOrbitSpaceFormula:
    """Tests for Σ^{ℓα}S(mγ)₊."""

    def test_unsuspended(self, p: int):
        """S(5γ)₊ has ℤ/p in degrees 3 and 7 and ℤ/2 in degrees 4, 6, 8."""
        Zp = FGAbelianGroup.cyclic(p)
        expected = GradedGroup.create({0: Z, 3: Zp, 4: Z2, 6: Z2, 7: Zp, 8: Z2})
        assert orbit_space_formula(0, 5, "constant", p=p) == expected

    def test_desuspended(self):
        """Σ^{−4α}S(5γ)₊ at p = 5."""
        Z5 = FGAbelianGroup.cyclic(5)
        expected = GradedGroup.create({-4: Z, -3: Z2, -1: Z5, 3: Z5, 4: Z2})
        assert orbit_space_formula(-4, 5, "constant", p=5) == expected

    def test_families(self):
        """The answer splits into base, top and interval families."""
        families = orbit_space_families(0, 5, "constant", p=3)
        assert families.base == GradedGroup.single(0, Z)
        assert families.top.degrees() == (4, 6, 8)
        assert families.interval.degrees() == (3, 7)
        assert families.total == orbit_space_formula(0, 5, "constant", p=3)

    def test_rejects_empty_sphere(self):
        """m must be at least 1."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            orbit_space_formula(0, 0, "constant", p=3)
        assert exc_info.value.field == "m"


class TestAgreesWithChains:
    """Spot checks of the formulas against the chain model."""

    @pytest.mark.parametrize("variance", ["covariant", "contravariant"])
    @pytest.mark.parametrize("coeff", ["constant", "burnside"])
    def test_gamma_sphere(self, p: int, coeff: str, variance: str):
        """S^γ agrees in every coefficient system and variance."""
        chains = bredon(build_representation_sphere(p, 0, 1), coeff, variance=variance)
        assert compare(chains, sphere_formula(0, 1, coeff, variance, p=p)).ok

    def test_burnside_sign_sphere(self):
        """S^{4α} with A̲ coefficients is 𝓒_4."""
        chains = bredon(build_representation_sphere(3, 4, 0), "burnside")
        assert compare(chains, sphere_formula(4, 0, "burnside", p=3)).ok


class TestCompare:
    """Tests for per-degree comparison."""

    def test_mismatch(self):
        """Differences are reported degree by degree."""
        report = compare(GradedGroup.single(0, Z), GradedGroup.create({0: Z2, 2: Z}))
        assert not report.ok
        assert [m.degree for m in report.mismatches] == [0, 2]
        assert str(report).splitlines()[0] == "degree 0: computed Z, expected Z/2"

    def test_agreement(self):
        """Equal groups agree."""
        report = compare(GradedGroup.single(1, Z2), GradedGroup.single(1, Z2))
        assert report.ok
        assert str(report) == "agree"
        assert report.to_json() == {"ok": True, "mismatches": []}
