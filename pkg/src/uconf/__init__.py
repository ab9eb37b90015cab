"""Exact symbolic algebra of vector bundles over finite configuration spaces.

The package realizes, over a finite base of weighted points, the two
interacting products on unordered-configuration bundles (fibrewise and
split-summing), the free symmetric algebra fibres, the kernel-generated
Poisson bracket in closed and recursive form, the convolution algebra
of finitely supported sections, and the polynomial-functional picture
with its double-derivative bracket.  Everything is exact rational
arithmetic; every algebraic law ships as an executable check in
``laws`` and behind ``uconf axioms``.
"""

from .configspace import BaseSpace, Configuration, VACUUM, shuffles, splits2, splits3
from .errors import (
    AlgebraError,
    BasisOutOfRange,
    ConfigMismatch,
    ExprSyntaxError,
    OverlappingConfigurations,
    SamePoint,
    UnknownPoint,
)
from .expr import parse_element, render
from .fibre_algebra import (
    CauchyMonomial,
    FibreElement,
    PointFactor,
    cauchy_mul,
    count_monomials,
    element,
    embed_generator,
    enumerate_monomials,
    hadamard_mul,
    monomial,
    point_factor,
    unit_hadamard,
    unit_monomial,
    zero,
)
from .functionals import (
    Field,
    PolyFunctional,
    evaluate,
    oracle_check,
    pairwise_functional_bracket,
    peierls_bracket,
    render_poly,
    shift_coefficients,
    to_functional,
)
from .modelio import (
    ModelFormatError,
    load_field,
    load_model,
    load_section,
    parse_field,
    parse_model,
    parse_section,
    section_rows,
)
from .poisson import (
    Kernel,
    bracket_fibre,
    bracket_fibre_recursive,
    bracket_with_density,
)
from .sections import (
    Section,
    convolve,
    jacobiator,
    section,
    section_bracket,
    truncate,
    unit_section,
)
from .tensors import (
    Letter,
    TensorElement,
    Word,
    alternate,
    compare_external,
    concat,
    deconcat_cauchy,
    deconcat_hadamard,
    dim_T_fibre,
    dim_TboxT_fibre,
    hadamard_factor_bijection,
    is_symmetric,
    permute_slots,
    shuffle_map,
    symmetrize,
    tensor_element,
    word,
)

__version__ = "0.1.0"
