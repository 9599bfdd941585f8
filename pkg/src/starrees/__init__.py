"""Exact algebra for star configurations of linear forms and their Rees algebras."""

from ._kernels import BACKEND
from .groebner import (
    GroebnerBasis,
    ResourceError,
    buchberger_reduced,
    eliminate,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    normal_form,
    rees_ideal_oracle,
)
from .polyring import MonomialOrder, Poly, PolyRing
from .rees import (
    h_theta,
    ideal_P,
    jacobian_dual,
    linear_relations,
    m_theta,
    minors_ideal_generators,
    primary_decomposition_check,
    rees_defining_ideal,
)
from .scalars import GF, QQ, parse_field
from .star import AbstractRegularSeq, StarConfig, check_Gs, normalize_forms, star_generators
from .taylor import power_generators, regular_case_equations

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GF",
    "QQ",
    "AbstractRegularSeq",
    "GroebnerBasis",
    "MonomialOrder",
    "Poly",
    "PolyRing",
    "ResourceError",
    "StarConfig",
    "buchberger_reduced",
    "check_Gs",
    "eliminate",
    "h_theta",
    "ideal_P",
    "ideal_equal",
    "ideal_intersect",
    "ideal_member",
    "jacobian_dual",
    "linear_relations",
    "m_theta",
    "minors_ideal_generators",
    "normal_form",
    "normalize_forms",
    "parse_field",
    "power_generators",
    "primary_decomposition_check",
    "rees_defining_ideal",
    "rees_ideal_oracle",
    "regular_case_equations",
    "star_generators",
]
