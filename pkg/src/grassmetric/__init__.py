"""Generalized n-inner products, Grassmannian angles and their duality.

The core objects are :class:`GramNForm` (determinant of ambient inner
products) and :class:`DiagonalNForm` (C-weighted Pluecker products); tuples
of vectors are passed as row matrices.
"""

from .axioms import AxiomReport, SampleConfig, aggregate_verdict, check_all
from .forms import NForm, form_inner, form_norm, generalized_delta, wedge_of_tuple
from .grassmann import (
    AngleResult,
    DualAngleCheck,
    MinorIdentity,
    complementary_minor,
    distance_matrix,
    dual_angle_check,
    dual_n_inner,
    grassmann_distance,
    laplace_identity_check,
    orthogonal_complement,
    pluecker_norm,
    subspace_angle,
)
from .linalg import (
    determinant,
    determinant_oracle,
    nullspace,
    numerical_rank,
    orthonormalize,
    submatrix,
)
from .ninner import (
    DiagonalNForm,
    GramNForm,
    misiak_reduce,
    n_inner,
    n_norm,
    normalize_diagonal,
    pluecker_coordinates,
)
from .subspace import (
    CauchySchwarzVerdict,
    Decomposition,
    Subspace,
    cauchy_schwarz,
    decompose,
    is_orthogonal_to_subspace,
)

__version__ = "0.1.0"
