"""Exact computations with algebras graded by finite abelian groups.

The package builds graded-simple algebras from twisted-group-algebra data,
constructs multialternating central polynomials, computes graded codimension
sequences exactly over cyclotomic fields, and computes the graded PI-exponent
with a certifying witness chain.
"""

from .algebra import (
    GradedAlgebra,
    WedderburnData,
    build_algebra,
    graded_ideal_closure,
    invert_in_subalgebra,
    is_central,
    is_g_simple,
    subalgebra_unit,
    validate_wedderburn,
)
from .bsz import (
    BlockConstruction,
    BlockSpec,
    basis_partition,
    build_g_simple,
    build_twisted_group_algebra,
    canonical_cocycle,
    group_algebra_idempotents,
    verify_basis_partition,
)
from .codim import (
    CodimRow,
    CodimTable,
    build_table,
    check_sandwich,
    codim_component,
    compositions,
    enumerate_monomials,
    exponent_trend,
    graded_codimension,
    multinomial,
    ordinary_codimension,
)
from .cyclo import CycloScalar, StructureError, cyclotomic_polynomial, root_of_unity
from .exponent import (
    ExponentWitness,
    chain_witness_report,
    graded_exponent,
    is_admissible,
    subspace_product,
)
from .groups import (
    AbelianGroup,
    AlternatingForm,
    GroupElement,
    Subgroup,
    ValidationError,
    disjoint_transversals,
    full_subgroup,
    span_subgroup,
    transversal,
    trivial_subgroup,
)
from .polynomials import (
    CeilingExceeded,
    GradedPolynomial,
    GradedVariable,
    WitnessPolynomial,
    alternate,
    central_alternating_polynomial,
    graded_regev,
    regev_polynomial,
    regev_value_on_matrix_units,
    witness_polynomial,
)
from .specfile import LoadedAlgebra, SpecError, load_spec, parse_scalar, parse_spec

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
