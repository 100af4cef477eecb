"""Exact workbench for Hopf-structured path-algebra quotients on Cayley
quivers of (Z/nZ)^t, with representation-type classification."""

from .cyclotomic import (
    CyclotomicContext,
    ExactContext,
    ModularContext,
    Scalar,
    cyclotomic_polynomial,
    make_context,
)
from .cartan import (
    CartanMatrix,
    coker_cardinality,
    named_cartan,
    positive_roots,
    root_system,
    smith_invariant_factors,
)
from .quiver import (
    Arrow,
    BudgetExceededError,
    Quiver,
    build_cayley_quiver,
    classify_components,
    loop_quiver,
    to_dot,
)
from .algebra import (
    AlgebraElement,
    GradedQuotient,
    Path,
    cayley_quotient,
    ideal_generators,
    presentation_quotient,
)

__all__ = [
    "AlgebraElement",
    "Arrow",
    "BudgetExceededError",
    "CartanMatrix",
    "CyclotomicContext",
    "ExactContext",
    "GradedQuotient",
    "ModularContext",
    "Path",
    "Quiver",
    "Scalar",
    "build_cayley_quiver",
    "cayley_quotient",
    "classify_components",
    "coker_cardinality",
    "cyclotomic_polynomial",
    "ideal_generators",
    "loop_quiver",
    "make_context",
    "named_cartan",
    "positive_roots",
    "presentation_quotient",
    "root_system",
    "smith_invariant_factors",
    "to_dot",
]
