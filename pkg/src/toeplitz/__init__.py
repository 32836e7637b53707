"""Exact arithmetic for the Toeplitz algebra and its compact quantum semigroup structure."""

from .algebra import (
    IDENTITY,
    DiagonalNorm,
    Element,
    Monomial,
    TrigPolynomial,
    adjoint,
    antipode,
    apply,
    basis,
    diagonal_from_eigenvalues,
    gelfand_transform_T0,
    graded_component,
    graded_components,
    index,
    is_compact,
    mul,
    mul_monomial,
    norm_T0,
    symbol,
)
from .coalgebra import (
    TensorElement,
    cqg_witness,
    delta,
    delta2,
    flip,
    mu,
    tensor,
    tensor_mul,
    weak_hopf_axioms,
    weak_hopf_check,
)
from .dual import (
    Functional,
    cesaro_iterate,
    convolve,
    counit,
    diagonal_state,
    evaluate,
    haar,
    haar0,
    in_k_perp,
    is_haar,
)
from .measures import (
    CircleMeasure,
    convolve_measures,
    dirac,
    fourier,
    haar_measure,
    measure_to_functional,
)
from .scalars import Cyclotomic, GaussianRational

__version__ = "0.1.0"
