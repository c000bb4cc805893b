"""Rank-one perturbations of inverses and resolvents.

Matrices are NumPy arrays (converted to complex128 on the way in). Vectors
``f`` and functionals ``l`` are 1-D arrays; ``l`` acts by ``l @ u`` without
conjugation.
"""

from ._rankone import (
    DimensionMismatch,
    EigenvalueHit,
    Error,
    InadmissibleProbe,
    InvalidArgument,
    NotRankOne,
    PoleError,
    SingularMatrix,
    SingularPerturbation,
    SpectrumHit,
    ZeroDifference,
    bilinear_value,
    choose_probe,
    denominator,
    discrete,
    find_new_eigenvalues,
    invert,
    laplace,
    perturbed_inverse,
    recover_factors,
    resolvent_difference,
    resolvent_difference_factor_free,
    solve_perturbed,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
