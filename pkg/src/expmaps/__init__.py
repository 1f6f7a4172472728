"""Exact symbolic computation with exponential maps (locally finite
iterative higher derivations) on finitely presented domains over fields
of arbitrary characteristic."""

from importlib import resources

from .algebras import (
    AlgebraElement,
    AlgebraPresentation,
    filtration_degree,
    laurent_embed,
    make_element,
    subalgebra_intersection_bounded,
    subalgebra_membership_bounded,
)
from .catalog import (
    CatalogEntry,
    char_p_square_entry,
    coordinate_maps,
    example2,
    nonexamples,
    russell,
    russell_invariant_suite,
)
from .fields import Coefficient, FieldSpec, binom_residue, field_ops
from .grading import (
    FiltrationContext,
    check_invariant_top_parts,
    compute_grdegU,
    homogenize_map,
    support_set,
    top_part,
)
from .maps import (
    ExponentialMap,
    VerificationReport,
    check_degree_divisibility,
    check_power_support,
    express_in_localization,
    fraction_invariant_witness,
    min_positive_degree,
    verify,
)
from .polynomials import (
    NEG_INF,
    MonomialOrder,
    PolyRing,
    Polynomial,
    VarList,
    WeightVector,
    normal_form,
    poly_arith,
    weighted_homog_factor,
)
from .session import SessionFile, parse_expression, parse_session, render_session

__version__ = "0.1.0"


def builtin_session(name: str) -> str:
    """Text of a shipped session file (e.g. 'russell')."""
    return (
        resources.files("expmaps").joinpath("sessions", f"{name}.session").read_text()
    )
