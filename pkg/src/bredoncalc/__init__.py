"""bredoncalc - RO(D₂ₚ)-graded Bredon (co)homology.

Computes the Bredon homology and cohomology of representation spheres
S^{kε+ℓα+mγ} and orbit spaces Σ^{ℓα}S(mγ)₊ of the dihedral group D₂ₚ with
constant ℤ and Burnside ring coefficients, by explicit equivariant chain
complexes, closed formulas, a filtration spectral sequence and a cofiber
sequence, and checks the routes against one another.
"""

from bredoncalc.cells import (
    EquivariantCellComplex,
    build_orbit_space,
    build_orbit_sphere,
    build_representation_sphere,
    build_sign_sphere,
    smash,
    validate,
)
from bredoncalc.dihedral import (
    BurnsideElement,
    DihedralGroup,
    FiniteGSet,
    GroupElement,
    burnside_mul,
    double_cosets,
    group_mul,
    induced_map,
)
from bredoncalc.exceptions import (
    BredonCalcError,
    ChainComplexError,
    DegreeParseError,
    MackeyAxiomError,
    NoChainModelError,
    ParameterError,
    SpectralSequenceError,
    ValidationError,
)
from bredoncalc.formulas import (
    RODegree,
    compare,
    orbit_space_formula,
    sphere_formula,
)
from bredoncalc.groups import FGAbelianGroup, GradedGroup
from bredoncalc.homology import IntegerChainComplex, bredon, evaluate_level, homology
from bredoncalc.mackey import (
    MackeyFunctor,
    augmentation_quotient,
    burnside_A,
    check_mackey_axioms,
    constant_Z,
    fixed_point_functor,
    ij_groups,
)
from bredoncalc.snf import smith_normal_form
from bredoncalc.spectral import SpectralPage, assemble, build_E1, cofiber_assemble, turn_page

__all__ = [
    # Group core
    "DihedralGroup",
    "GroupElement",
    "FiniteGSet",
    "BurnsideElement",
    "group_mul",
    "double_cosets",
    "burnside_mul",
    "induced_map",
    # Abelian groups
    "FGAbelianGroup",
    "GradedGroup",
    "smith_normal_form",
    # Mackey functors
    "MackeyFunctor",
    "constant_Z",
    "burnside_A",
    "fixed_point_functor",
    "check_mackey_axioms",
    "augmentation_quotient",
    "ij_groups",
    # Cell complexes
    "EquivariantCellComplex",
    "build_orbit_sphere",
    "build_sign_sphere",
    "build_representation_sphere",
    "build_orbit_space",
    "smash",
    "validate",
    # Homology
    "IntegerChainComplex",
    "evaluate_level",
    "homology",
    "bredon",
    # Closed forms
    "RODegree",
    "sphere_formula",
    "orbit_space_formula",
    "compare",
    # Spectral sequence
    "SpectralPage",
    "build_E1",
    "turn_page",
    "assemble",
    "cofiber_assemble",
    # Exceptions
    "BredonCalcError",
    "ValidationError",
    "ParameterError",
    "DegreeParseError",
    "ChainComplexError",
    "NoChainModelError",
    "MackeyAxiomError",
    "SpectralSequenceError",
]
