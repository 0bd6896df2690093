"""Laplace eigenfunctions on the torus with prescribed vanishing order at 0.

The construction picks an eigenvalue whose lattice shell has more points than
there are Taylor constraints, solves the constraint system exactly over the
integers and certifies the result in exact arithmetic.
"""

from .combinatorics import (
    MultiIndexSet,
    count_multiindices,
    enumerate_multiindices,
    monomial_power,
    multiindex_factorial,
)
from .eigenfunction import (
    DimensionOneError,
    Eigenfunction,
    NoSolutionError,
    VanishingCertificate,
    certify,
    construct,
    evaluate,
    laplacian_residual,
    parseval_norm_sq,
    taylor_moment,
)
from .exactlinalg import (
    EntryGrowthError,
    IntegerMatrix,
    NullspaceBasis,
    build_vanishing_system,
    integer_nullspace,
)
from .numtheory import (
    BudgetExceededError,
    Factorization,
    LatticeShell,
    choose_lambda,
    count_shell_bruteforce,
    enumerate_shell,
    factorize,
    r2_formula,
)
from .ucp import UcpReport, ball_l2, counterexample_report, ucp_ratio_table

__all__ = [
    "BudgetExceededError",
    "DimensionOneError",
    "Eigenfunction",
    "EntryGrowthError",
    "Factorization",
    "IntegerMatrix",
    "LatticeShell",
    "MultiIndexSet",
    "NoSolutionError",
    "NullspaceBasis",
    "UcpReport",
    "VanishingCertificate",
    "ball_l2",
    "build_vanishing_system",
    "certify",
    "choose_lambda",
    "construct",
    "count_multiindices",
    "count_shell_bruteforce",
    "counterexample_report",
    "enumerate_multiindices",
    "enumerate_shell",
    "evaluate",
    "factorize",
    "integer_nullspace",
    "laplacian_residual",
    "monomial_power",
    "multiindex_factorial",
    "parseval_norm_sq",
    "r2_formula",
    "taylor_moment",
    "ucp_ratio_table",
]
