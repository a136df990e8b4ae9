"""Tests for equivariant cell complexes."""

import pytest

import bredoncalc
from bredoncalc import (
    build_orbit_space,
    build_orbit_sphere,
    build_representation_sphere,
    build_sign_sphere,
    smash,
    validate,
)
from bredoncalc.cells import Term, adjoin_basepoint, suspension


class TestOrbitSphere:
    """Tests for the cell structure of S(mγᵢ)."""

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_validates(self, p: int, m: int):
        """Every orbit sphere passes the structural checks."""
        report = validate(build_orbit_sphere(p, 1, m))
        assert report.ok, str(report)

    def test_validates_other_gamma(self):
        """γ₂ at p = 5 has a valid model too."""
        assert validate(build_orbit_sphere(5, 2, 3)).ok

    def test_cell_counts(self):
        """S(2γ) at p = 3 has 6, 12, 12, 6 cells."""
        x = build_orbit_sphere(3, 1, 2)
        assert x.cell_counts() == (6, 12, 12, 6)
        assert x.euler_characteristic() == 0

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_euler_characteristic(self, p: int, m: int):
        """S(mγ) is a sphere of odd dimension 2m − 1."""
        x = build_orbit_sphere(p, 1, m)
        assert x.dimension == 2 * m - 1
        assert x.euler_characteristic() == 0

    def test_labels_and_isotropy(self, group):
        """a[k,0] cells are G/⟨τ⟩-cells, the rest are free."""
        x = build_orbit_sphere(group.p, 1, 2)
        assert x.cells[x.index("a[1,0]")].isotropy == group.reflection()
        assert x.cells[x.index("a[2,1]")].isotropy == group.trivial()
        assert x.cells[x.index("c[2]")].dim == 3

    def test_bottom_differential(self):
        """dc₁ = r^{(p+1)/2} b₁₀ − a₁₀."""
        table = build_orbit_sphere(3, 1, 1).differential_table()
        assert table == (("c[1]", 1, "r^2", "b[1,0]"), ("c[1]", -1, "e", "a[1,0]"))

    def test_periodicity(self):
        """Tables for γ₁ and γ₂ agree when written in powers of r."""
        first = build_orbit_sphere(5, 1, 3).differential_table()
        second = build_orbit_sphere(5, 2, 3).differential_table()
        assert first == second

    def test_filtration(self):
        """A-cells of layer k sit in filtration 2k − 2, B- and C-cells in 2k − 1."""
        x = build_orbit_sphere(3, 1, 2)
        assert x.cells[x.index("a[2,1]")].filtration == 2
        assert x.cells[x.index("b[2,0]")].filtration == 3
        assert x.cells[x.index("c[1]")].filtration == 1

    def test_gamma_out_of_range(self):
        """γ₃ does not exist for p = 5."""
        with pytest.raises(bredoncalc.ParameterError) as exc_info:
            build_orbit_sphere(5, 3, 1)
        assert exc_info.value.field == "i"

    def test_empty_sphere(self):
        """m = 0 has no orbit sphere."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            build_orbit_sphere(3, 1, 0)
        assert exc_info.value.field == "m"

    def test_unknown_label(self):
        """index() rejects unknown labels."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            build_orbit_sphere(3, 1, 1).index("z[9]")
        assert exc_info.value.field == "label"


class TestFaultInjection:
    """Tests that validation catches broken differentials."""

    def test_extra_term_breaks_d_squared(self):
        """Doubling the a-term of dc₁ makes d∘d nonzero on a[2,1]."""
        x = build_orbit_sphere(3, 1, 2)
        e = x.group.identity
        b10, a10 = x.index("b[1,0]"), x.index("a[1,0]")
        broken = x.with_differential(
            "c[1]", [Term(1, x.generator**2, b10), Term(-1, e, a10), Term(-1, e, a10)]
        )
        report = validate(broken)
        assert not report.ok
        assert "d∘d ≠ 0 from a[2,1] to a[1,0]" in report.failures

    def test_irregular_coefficient(self):
        """Coefficients other than ±1 are flagged."""
        x = build_orbit_sphere(3, 1, 1)
        broken = x.with_differential("c[1]", [Term(2, x.group.identity, x.index("a[1,0]"))])
        report = validate(broken)
        assert "coefficient 2 in d c[1] is not ±1" in report.failures


class TestSignSphere:
    """Tests for S^{ℓα}."""

    @pytest.mark.parametrize("ell", [0, 1, 2, 3])
    def test_validates(self, p: int, ell: int):
        """Sign spheres pass the structural checks."""
        assert validate(build_sign_sphere(p, ell)).ok

    def test_cells(self):
        """Two fixed points, then one G/⟨ζ⟩-cell per dimension."""
        x = build_sign_sphere(3, 2)
        assert [c.label for c in x.cells] == ["s+", "s-", "u[1]", "u[2]"]
        assert x.is_based
        assert x.cell_counts() == (2, 2, 2)

    def test_negative_multiplicity(self):
        """Negative ℓ has no cellular model."""
        with pytest.raises(bredoncalc.NoChainModelError):
            build_sign_sphere(3, -1)


class TestConstructions:
    """Tests for suspension, basepoints and smash products."""

    def test_suspension_adds_cone_points(self):
        """ΣS(γ) has two fixed 0-cells and is based."""
        x = suspension(build_orbit_sphere(3, 1, 1))
        assert x.cells[0].label == "S" and x.cells[1].label == "N"
        assert x.is_based
        assert validate(x).ok

    def test_suspension_of_based(self):
        """Unreduced suspension takes unbased complexes only."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            suspension(build_sign_sphere(3, 1))
        assert exc_info.value.field == "x"

    def test_adjoin_basepoint_twice(self):
        """A based complex gets no second basepoint."""
        x = adjoin_basepoint(build_orbit_sphere(3, 1, 1))
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            adjoin_basepoint(x)
        assert exc_info.value.field == "x"

    def test_smash_needs_basepoints(self):
        """Both factors of a smash product are based."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            smash(build_orbit_sphere(3, 1, 1), build_sign_sphere(3, 1))
        assert exc_info.value.field == "x"

    def test_smash_adds_basepoint(self):
        """add_basepoint=True smashes with X₊."""
        x = smash(build_orbit_sphere(3, 1, 1), build_sign_sphere(3, 1), add_basepoint=True)
        assert x.is_based
        assert validate(x).ok

    def test_smash_mixed_primes(self):
        """Factors for different primes do not smash."""
        with pytest.raises(bredoncalc.ParameterError) as exc_info:
            smash(build_sign_sphere(3, 1), build_sign_sphere(5, 1))
        assert exc_info.value.field == "p"

    @pytest.mark.parametrize(("ell", "m"), [(0, 1), (1, 1), (2, 1), (1, 2)])
    def test_representation_spheres_validate(self, ell: int, m: int):
        """S^{ℓα+mγ} passes the structural checks."""
        report = validate(build_representation_sphere(3, ell, m))
        assert report.ok, str(report)

    @pytest.mark.parametrize(("ell", "m"), [(0, 2), (1, 1), (2, 2)])
    def test_orbit_spaces_validate(self, ell: int, m: int):
        """Σ^{ℓα}S(mγ)₊ passes the structural checks."""
        report = validate(build_orbit_space(3, ell, m))
        assert report.ok, str(report)

    def test_representation_sphere_dimension(self):
        """S^{ℓα+mγ} has top cells in dimension ℓ + 2m."""
        assert build_representation_sphere(3, 2, 1).dimension == 4
        assert build_representation_sphere(5, 1, 2).dimension == 5

    def test_no_model_for_negative_degrees(self):
        """Negative ℓ or m has no cellular model."""
        with pytest.raises(bredoncalc.NoChainModelError):
            build_representation_sphere(3, -1, 1)
        with pytest.raises(bredoncalc.NoChainModelError):
            build_orbit_space(3, -2, 1)

    def test_json(self):
        """to_json() lists cells and differential rows."""
        data = build_orbit_sphere(3, 1, 1).to_json()
        assert [c["label"] for c in data["cells"]] == ["a[1,0]", "b[1,0]", "c[1]"]
        assert data["differential"][0] == ["c[1]", 1, "r^2", "b[1,0]"]
