"""Exact-arithmetic homology engine and existence obstructions for special
generic maps on rational homology spheres."""

from .abelian import (
    FinAbGroup,
    GroupHom,
    LinkingShape,
    canonicalize,
    cyclic,
    direct_sum,
    enumerate_extensions,
    is_double,
    linking_form_alternatives,
)
from .errors import (
    BoundExceededError,
    CriterionNotApplicable,
    InconsistencyError,
    NotExactError,
    SymmetryError,
)
from .exactseq import (
    ExactSequence,
    alternating_order_identity,
    central_square_order,
    splice_random,
    splice_symmetric,
    verify_exactness,
)
from .homology import (
    ChainComplex,
    Coefficients,
    Fp,
    GradedGroup,
    Q,
    Z,
    boundary_sphere_consistency,
    chain_complex,
    change_coefficients,
    euler_characteristic,
    homology,
    is_homology_ball,
    is_homology_sphere,
    lens_cw_complex,
    rationalize,
    sphere_homology,
)
from .sgm import (
    BundleSpec,
    DimensionSetVerdict,
    LensSpec,
    Reason,
    SquareStatus,
    StatusKind,
    bundle_dimension_set,
    bundle_homology,
    catalog_lookup,
    classify,
    euler_parity_obstruction,
    lens_dimension_set,
    lens_homology,
    lens_stably_parallelizable,
    perfect_square,
    square_obstruction,
)
from .steinles import (
    SteinInstance,
    ball_to_sphere,
    forced_middle_order,
    low_degree_transfer,
    middle_homology_skeleton,
    realization_candidates,
    realization_instance,
    realization_parameters,
    sphere_to_ball_check,
)
from .zlinalg import (
    IntMatrix,
    SnfResult,
    cokernel,
    hermite_normal_form,
    image_rank,
    kernel_basis,
    kernel_rank,
    smith_normal_form,
)

__version__ = "0.1.0"
