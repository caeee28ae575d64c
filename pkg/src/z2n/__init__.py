"""Exact computer algebra for Z_2^n-graded commutative algebra and geometry."""

from .degree import Degree, enumerate_degrees, koszul_sign, scalar_product
from .errors import (
    AlgebraMismatch,
    CapTooSmall,
    DegreeViolation,
    DimensionError,
    GrammarError,
    NonInvertible,
    NotInvertible,
    NotLinear,
    NotNatural,
    ParityViolation,
    ParseError,
    ShapeMismatch,
    WrongDegreeComponent,
    Z2nError,
)
from .grassmann import (
    AlgebraMorphism,
    AlgebraSpec,
    GElement,
    apply_morphism,
    body,
    g_invert,
    gmul,
    homogeneous_part,
    lambda_one,
)
from .shape import GradedShape
from .gmatrix import (
    GMatrix,
    epsilon_tilde,
    gl0_dimension,
    identity,
    invert,
    invert_neumann,
    invertibility_criteria,
    is_invertible,
    make_matrix,
    mat_mul,
    scalar_mul,
)
from .points import (
    LambdaPoint,
    Morphism,
    compose,
    evaluate,
    evaluate_taylor,
    make_point,
    point_map,
    reconstruct_linear_map,
    zdr_apply,
)
from .linspace import (
    BlockDiagMap,
    SymAlgebra,
    flat_iso,
    flat_iso_inverse,
    is_linear_morphism,
    manifoldify,
    sym_basis,
    sym_mul,
    vectorify,
)
from .action import (
    ActionReport,
    action_as_morphism,
    canonical_action,
    check_action_axioms,
    left_action,
    module_action,
)
from .textio import format_value, parse, parse_element

__version__ = "0.1.0"
