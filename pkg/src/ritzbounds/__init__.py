"""Submajorization bounds on the change of Ritz values of Hermitian matrices.

The package is organized in layers: self-contained dense linear algebra
(`linalg`), vector majorization (`majorization`), subspace geometry
(`subspaces`), the bound operations themselves (`bounds`), and a
generation/verification harness with a CLI (`harness`, `cli`).
"""

from ._kernels import backend_name as kernel_backend
from .bounds import (
    BoundReport,
    DknCertificate,
    RayleighData,
    SpectralSpread,
    abs_ritz_diff,
    apriori_constant_corollary,
    apriori_invariant_quadratic,
    apriori_mixed_theorem,
    apriori_spread_partial,
    compressed_dkn_certificate,
    conjectured_spread_bounds,
    consecutive_eigenvalue_bound,
    dkn_certificate,
    eigenlist_distance_bound,
    fem_reference_bounds,
    mixed_bound_cos,
    mixed_bound_tan,
    positive_T_distance_bound,
    quadratic_aposteriori,
    rayleigh,
    residual_projection_bound,
    spectral_spread,
    squared_mixed_bounds,
    tan_theta_classical,
    tan_theta_improved,
)
from .harness import (
    InstanceSpec,
    RunReport,
    evaluate_instance,
    generate,
    pad_zeros,
    sweep_theta,
    verify_all,
    worked_example,
)
from .linalg import (
    EigenDecomposition,
    SingularDecomposition,
    adjoint,
    hermitian_eig,
    hermitian_part,
    matmul,
    orthonormalize,
    scale,
    sub,
    svd,
)
from .majorization import (
    MajorizationVerdict,
    NormTable,
    apply_monotone_convex,
    default_tolerance,
    entrywise_div,
    entrywise_mul,
    lemma_props_oracle,
    majorizes,
    sort_asc,
    sort_desc,
    submajorizes,
    uin_norms,
)
from .matio import load_matrix, save_matrix
from .subspaces import (
    compress,
    intersection_dimension,
    invariant_subspace,
    orthocomplement,
    principal_angles,
    projector,
    sin_squared_identity_check,
    subspace_sum,
)

__version__ = "0.1.0"
