"""Chern forms, Schur forms, Chern-number bounds and Riemann-Roch from
explicit curvature data.

The package has three layers:

* pointwise linear algebra -- exterior forms at a point (``forms``),
  factored curvature matrices and frame changes (``curvature``);
* characteristic forms -- Chern forms of a curvature (``chern``), Schur
  polynomials and the sampled nonnegativity / inequality-chain engines
  (``schur``);
* closed-form models -- products of projective spaces and tori with exact
  Chern numbers, Todd classes, and Euler characteristics (``models``).

``chernforms.cli`` exposes the same capabilities as a command line tool.
"""

from .errors import ConsistencyError, InputError
from .scalars import EXACT, FLOAT, GaussianRational
from .forms import (
    DEFAULT_TOL,
    MAX_DIM,
    Form,
    VerdictReport,
    conjugate,
    evaluate,
    nonnegative_sampled,
    wedge,
)
from .curvature import (
    CurvatureMatrix,
    CurvatureTensor,
    FactorMatrix,
    bott_chern_curvature,
    change_frame,
    factor_from_tensor,
    griffiths_value,
    random_exact_factor,
    random_invertible,
    random_signed_phase_permutation,
    random_tensor,
    random_unitary,
)
from .chern import ChernFormSet, chern_forms, chern_product, top_coefficient
from .schur import (
    ChainReport,
    ChernPolynomial,
    Partition,
    SchurReport,
    bounds_chain_check,
    evaluate_on_forms,
    partitions,
    schur_polynomial,
    verify_schur_nonnegativity,
)
from .models import (
    CATALOG,
    ModelBoundsReport,
    ModelManifold,
    RingElement,
    chern_number,
    complex_torus,
    euler_characteristic,
    kodaira_leading,
    line_class,
    parse_model,
    point,
    product,
    projective_space,
    rr_polynomial,
    todd_class,
    todd_polynomials,
    todd_series,
    verify_number_bounds,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
