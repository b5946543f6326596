"""Reduction calculus for rank/degree pairs and exact checks of the genericity
conditions on elementary transformations."""

from .classify import (
    AdmissibleDiagram,
    ClassificationReport,
    ReductionGraph,
    classify,
    descendants,
    enumerate_cone,
    is_fine,
    is_nice,
    newstead_condition,
    predecessors_via_dual,
    predecessors_via_reduction,
    verify_gcd_lemma,
)
from .linalg import (
    OmegaMatrix,
    ProjectiveConfig,
    RationalMatrix,
    coefficient_identity,
    condition_a,
    condition_a_matrix,
    condition_b,
    determinant,
    git_stable,
    rank,
    sample_generic_transformation,
)
from .pairs import (
    Pair,
    PairError,
    ReductionChain,
    ReductionStep,
    StepKind,
    Window,
    children,
    dual_reduce,
    euler_characteristic,
    moduli_dimension,
    quotient_dimension_identity,
    reduce,
    window_status,
)

__version__ = "0.1.0"
