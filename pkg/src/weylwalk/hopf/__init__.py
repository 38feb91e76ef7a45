"""Exact truncated Hopf-algebra engine (degree <= 2, first order in 1/kappa)."""

from .coeffs import QI, qi
from .models import (
    BasisMap,
    CoproductModel,
    InvalidMap,
    antipode_of,
    antipode_table,
    classical_model,
    coproduct_of,
    get_model,
    identity_map,
    invert_quadratic,
    kappa_model,
    make_basis_map,
    map_coefficients,
    random_quadratic_map,
    transported_coproducts,
    walk_basis_map,
    walk_forward_map,
)
from .poly import DegreeOverflow, Poly, generators
from .tensor import Tensor2
from .phase import (
    DEFAULT_PAIRING,
    PhaseElem,
    PhaseSpace,
    coregular_action,
    pairing,
    pairing_constants_json,
    phase_elem_terms,
    phase_space_commutators,
    spacetime_commutators,
)
from .lie import LieStructure, lie_checks
from .kappa_limit import kappa_classical_limit
from .fuzz import lemma1_fuzz

__all__ = [
    "QI",
    "qi",
    "Poly",
    "generators",
    "DegreeOverflow",
    "Tensor2",
    "BasisMap",
    "CoproductModel",
    "InvalidMap",
    "classical_model",
    "kappa_model",
    "get_model",
    "coproduct_of",
    "antipode_table",
    "antipode_of",
    "identity_map",
    "walk_basis_map",
    "walk_forward_map",
    "make_basis_map",
    "invert_quadratic",
    "random_quadratic_map",
    "map_coefficients",
    "transported_coproducts",
    "PhaseSpace",
    "PhaseElem",
    "DEFAULT_PAIRING",
    "pairing",
    "pairing_constants_json",
    "coregular_action",
    "spacetime_commutators",
    "phase_space_commutators",
    "phase_elem_terms",
    "LieStructure",
    "lie_checks",
    "kappa_classical_limit",
    "lemma1_fuzz",
]
