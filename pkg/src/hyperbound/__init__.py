"""Exact point counts, linear-subspace invariants and point-count bounds for
hypersurfaces over small finite fields."""

from .errors import BudgetExceeded, HyperboundError, InternalConsistencyError, PreconditionError
from .gf import FieldSpec, extend, field_of_order
from .projgeom import LinearSubspace, gaussian_binomial, theta
from .homopoly import HomoPoly
from .catalog import Hypersurface, closed_form_count
from .analysis import count_points, max_linear_dim, singular_points, tangent_hyperplane, type_S
from .bounds import compare_thas, main_bound, phi_bound, sss_bound, thas_bound

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "HyperboundError", "InternalConsistencyError", "PreconditionError",
    "FieldSpec", "extend", "field_of_order", "LinearSubspace", "gaussian_binomial", "theta",
    "HomoPoly", "Hypersurface", "closed_form_count", "count_points", "max_linear_dim",
    "singular_points", "tangent_hyperplane", "type_S", "compare_thas", "main_bound",
    "phi_bound", "sss_bound", "thas_bound",
]
