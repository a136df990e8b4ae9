"""Closed-form answers for representation spheres and orbit spaces.

Graded building blocks, all of finite support:

- B_ℓ / B^ℓ: the constant-coefficient (co)homology of the sign sphere S^{ℓα}
- ₛA_t / ˢA^t: a string of ℤ/p in every fourth degree strictly between 2s and 2t−1
- 𝓑 / 𝓒: the Burnside-coefficient sign-sphere groups at the ℤ/2- and the
  D₂ₚ-level, read cumulatively (𝓑_0 ≅ ℤ², 𝓒_0 ≅ ℤ⁴)

Negative ℓ is handled by duality: X_ℓ in degree n is X^{−ℓ} in degree −n.
A shift [k] raises every degree by k in homology and in cohomology.
"""

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any

import bredoncalc.exceptions as exc
from bredoncalc.dihedral import Variance, validate_prime
from bredoncalc.groups import FGAbelianGroup, GradedGroup
from bredoncalc.homology import Coefficients, check_coefficients, check_variance

Z = FGAbelianGroup.free()
Z2 = FGAbelianGroup.cyclic(2)


def _other(variance: Variance) -> Variance:
    return "contravariant" if variance == "covariant" else "covariant"


@dataclass(frozen=True)
class RODegree:
    """An element kε + ℓα + Σᵢ mᵢγᵢ of RO(D₂ₚ)."""

    k: int = 0
    ell: int = 0
    gammas: tuple[tuple[int, int], ...] = ()  # (i, mᵢ), sorted, nonzero mᵢ only

    @classmethod
    def create(
        cls, k: int = 0, ell: int = 0, m: int = 0, *, gammas: Mapping[int, int] | None = None
    ) -> "RODegree":
        """Create a degree from m copies of γ₁ or from explicit multiplicities.

        Raises:
            ValidationError: If both m and gammas are given, or a γ-index is below 1
        """
        if gammas is not None and m:
            raise exc.ValidationError("m", "give either m or gammas, not both")
        multiplicities = dict(gammas) if gammas is not None else {1: m}
        for i in multiplicities:
            if i < 1:
                raise exc.ValidationError("gammas", f"γ-index must be at least 1, got {i}")
        return cls(
            k=k,
            ell=ell,
            gammas=tuple(sorted((i, mi) for i, mi in multiplicities.items() if mi)),
        )

    @property
    def m(self) -> int:
        """Total γ-multiplicity; the answers depend on the γᵢ only through it."""
        return sum(mi for _, mi in self.gammas)

    def check_prime(self, p: int) -> None:
        """Check that every γ-index is in range for D₂ₚ.

        Raises:
            ParameterError: If p is not an odd prime or an index exceeds (p−1)/2
        """
        validate_prime(p)
        for i, _ in self.gammas:
            if i > (p - 1) // 2:
                raise exc.ParameterError("degree", f"γ{i} does not exist for p={p}")

    def __str__(self) -> str:
        parts = []
        if self.k:
            parts.append(f"{self.k}e")
        if self.ell:
            parts.append(f"{self.ell}a")
        parts.extend(f"{mi}g" if i == 1 else f"{mi}g{i}" for i, mi in self.gammas)
        if not parts:
            return "0"
        text = parts[0]
        for part in parts[1:]:
            text += part if part.startswith("-") else f"+{part}"
        return text


# Building blocks, one degree at a time


def b_group(ell: int, n: int, variance: Variance = "covariant") -> FGAbelianGroup:
    """B_ℓ (homology) or B^ℓ (cohomology) in degree n."""
    check_variance(variance)
    if ell < 0:
        return b_group(-ell, -n, _other(variance))
    if n == ell and ell % 2 == 0:
        return Z
    if variance == "covariant" and n % 2 == 0 and 0 <= n < ell:
        return Z2
    if variance == "contravariant" and n % 2 == 1 and 3 <= n <= ell:
        return Z2
    return FGAbelianGroup()


def a_interval(
    s: int, t: int, n: int, variance: Variance = "covariant", *, p: int
) -> FGAbelianGroup:
    """ₛA_t (homology) or ˢA^t (cohomology) in degree n.

    ℤ/p when 2s < n < 2t − 1 and n ≡ 3 (homology) or 0 (cohomology) mod 4.
    """
    check_variance(variance)
    residue = 3 if variance == "covariant" else 0
    if 2 * s < n < 2 * t - 1 and n % 4 == residue:
        return FGAbelianGroup.cyclic(p)
    return FGAbelianGroup()


def script_b(ell: int, n: int, variance: Variance = "covariant") -> FGAbelianGroup:
    """𝓑_ℓ or 𝓑^ℓ in degree n: the ℤ/2-level Burnside groups of S^{ℓα}.

    The cases are cumulative: the J (homology) or I (cohomology) summand in
    degree 0 is always present, so 𝓑_0 ≅ ℤ².
    """
    check_variance(variance)
    if ell < 0:
        return script_b(-ell, -n, _other(variance))
    group = FGAbelianGroup()
    if n == 0:
        group += Z
    if n == ell and ell % 2 == 0:
        group += Z
    if variance == "covariant" and n % 2 == 0 and 0 < n < ell:
        group += Z2
    if variance == "contravariant" and n % 2 == 1 and 3 <= n <= ell:
        group += Z2
    return group


def script_c(ell: int, n: int, variance: Variance = "covariant") -> FGAbelianGroup:
    """𝓒_ℓ or 𝓒^ℓ in degree n: the D₂ₚ-level Burnside groups of S^{ℓα}."""
    group = script_b(ell, n, variance)
    return group + group


def _support(ell: int) -> range:
    return range(-abs(ell), abs(ell) + 1)


def sign_sphere_groups(
    ell: int, coeff: Coefficients, variance: Variance = "covariant"
) -> GradedGroup:
    """Reduced Bredon (co)homology of S^{ℓα} at the D₂ₚ-level."""
    check_coefficients(coeff)
    block = b_group if coeff == "constant" else script_c
    return GradedGroup.create((n, block(ell, n, variance)) for n in _support(ell))


def b_graded(ell: int, variance: Variance = "covariant") -> GradedGroup:
    return GradedGroup.create((n, b_group(ell, n, variance)) for n in _support(ell))


def script_b_graded(ell: int, variance: Variance = "covariant") -> GradedGroup:
    return GradedGroup.create((n, script_b(ell, n, variance)) for n in _support(ell))


def a_graded(s: int, t: int, variance: Variance = "covariant", *, p: int) -> GradedGroup:
    return GradedGroup.create(
        (n, a_interval(s, t, n, variance, p=p)) for n in range(2 * s, 2 * t)
    )


def with_epsilon(groups: GradedGroup, k: int) -> GradedGroup:
    """Add kε to the grading: a pure shift by k in either variance."""
    return groups.shift(k)


# Spheres and orbit spaces


@dataclass(frozen=True)
class OrbitSpaceFamilies:
    """The three summand families of the (co)homology of Σ^{ℓα}S(mγ)₊."""

    base: GradedGroup  # B_ℓ or 𝓑_ℓ: the bottom cell
    top: GradedGroup  # B_{ℓ+m}[m−1] or 𝓑_{ℓ+m}[m−1]: the top cell
    interval: GradedGroup  # ₗA_{ℓ+m}[−ℓ] or ˡA^{ℓ+m}[−ℓ]

    @property
    def total(self) -> GradedGroup:
        return self.base + self.top + self.interval


def _check_query(p: int, coeff: Coefficients, variance: Variance) -> None:
    validate_prime(p)
    check_coefficients(coeff)
    check_variance(variance)


def orbit_space_families(
    ell: int, m: int, coeff: Coefficients, variance: Variance = "covariant", *, p: int
) -> OrbitSpaceFamilies:
    """Split the D₂ₚ-level answer for Σ^{ℓα}S(mγ)₊ into its three families.

    Raises:
        ValidationError: If m < 1 or the coefficients or variance are unknown
        ParameterError: If p is not an odd prime
    """
    _check_query(p, coeff, variance)
    if m < 1:
        raise exc.ValidationError("m", f"orbit spaces need m ≥ 1, got {m}")
    block = b_graded if coeff == "constant" else script_b_graded
    return OrbitSpaceFamilies(
        base=block(ell, variance),
        top=block(ell + m, variance).shift(m - 1),
        interval=a_graded(ell, ell + m, variance, p=p).shift(-ell),
    )


def orbit_space_formula(
    ell: int,
    m: int,
    coeff: Coefficients,
    variance: Variance = "covariant",
    *,
    p: int,
    k: int = 0,
) -> GradedGroup:
    """Reduced Bredon (co)homology of Σ^{kε+ℓα}S(mγ)₊ at the D₂ₚ-level."""
    return with_epsilon(orbit_space_families(ell, m, coeff, variance, p=p).total, k)


def sphere_formula(
    ell: int,
    m: int,
    coeff: Coefficients,
    variance: Variance = "covariant",
    *,
    p: int,
    k: int = 0,
    printed: bool = False,
) -> GradedGroup:
    """Reduced Bredon (co)homology of S^{kε+ℓα+mγ} at the D₂ₚ-level.

    For m > 0 this is a sum of interval and sign-sphere summands; m = 0 is the
    sign sphere; m < 0 is read off the dual degree.

    Args:
        ell: α-multiplicity
        m: Total γ-multiplicity
        coeff: "constant" or "burnside"
        variance: "covariant" for homology, "contravariant" for cohomology
        p: The odd prime
        k: ε-multiplicity
        printed: With Burnside coefficients in homology, use the ₍ℓ−1₎A interval
            term instead of ₗA; the two differ by a ℤ/p in degree ℓ for even ℓ

    Raises:
        ValidationError: If the coefficients or variance are unknown
        ParameterError: If p is not an odd prime
    """
    _check_query(p, coeff, variance)
    if m < 0:
        dual = sphere_formula(-ell, -m, coeff, _other(variance), p=p, printed=printed)
        return with_epsilon(dual.negate(), k)
    if m == 0:
        return with_epsilon(sign_sphere_groups(ell, coeff, variance), k)

    covariant = variance == "covariant"
    if coeff == "constant":
        lower = ell - 1 if covariant else ell
        groups = a_graded(lower, ell + m, variance, p=p).shift(1 - ell) + b_graded(
            ell + m, variance
        ).shift(m)
    else:
        lower = ell - 1 if covariant and printed else ell
        groups = (
            script_b_graded(ell, variance)
            + a_graded(lower, ell + m, variance, p=p).shift(1 - ell)
            + script_b_graded(ell + m, variance).shift(m)
        )
    return with_epsilon(groups, k)


# Comparison


@dataclass(frozen=True)
class DegreeMismatch:
    degree: int
    computed: FGAbelianGroup
    expected: FGAbelianGroup


@dataclass(frozen=True)
class DiffReport:
    """Per-degree differences between two graded groups."""

    mismatches: tuple[DegreeMismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __str__(self) -> str:
        if self.ok:
            return "agree"
        return "\n".join(
            f"degree {d.degree}: computed {d.computed}, expected {d.expected}"
            for d in self.mismatches
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "mismatches": [
                {
                    "degree": d.degree,
                    "computed": d.computed.to_json(),
                    "expected": d.expected.to_json(),
                }
                for d in self.mismatches
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def compare(computed: GradedGroup, expected: GradedGroup) -> DiffReport:
    """Report every degree where the two graded groups differ."""
    degrees: Iterable[int] = sorted(set(computed.degrees()) | set(expected.degrees()))
    return DiffReport(
        mismatches=tuple(
            DegreeMismatch(n, computed[n], expected[n])
            for n in degrees
            if computed[n] != expected[n]
        )
    )
