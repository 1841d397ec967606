"""Finite-topology workbench for α^m-closed sets and α^m-continuous maps."""

__version__ = "0.1.0"

from .classifiers import (  # noqa: E402
    ClassVector,
    MapClass,
    SetClass,
    classify_map,
    classify_subset,
    is_alpha_m_closed,
    open_closed_formulation_agrees,
)
from .operators import AlphaMVariant, ClosureKind, FamilyKind, derived_family, generalized_closure, tau_star  # noqa: E402
from .space import (  # noqa: E402
    FiniteSpace,
    PointMap,
    closure,
    compose,
    image,
    interior,
    preimage,
    subspace,
    validate_topology,
)
