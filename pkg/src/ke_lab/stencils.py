"""Dispatch layer over the finite-difference backends.

Callers use :func:`gradient` and :func:`laplacian`; the implementation is
picked once at import from ``KE_LAB_BACKEND`` (see :mod:`ke_lab.backends`).
Both accept real or complex arrays of dimension 1 or 3 and a scalar spacing
shared by all axes.
"""

import numpy as np

from . import backends
from . import _fd_numpy

if backends.using_numba():
    from . import _fd_numba as _impl
else:
    _impl = _fd_numpy


def gradient(values: np.ndarray, spacing: float, periodic: bool = False):
    """Per-axis fourth-order first derivatives, returned as a tuple."""
    if values.ndim not in (1, 3):
        raise ValueError(f"expected a 1-d or 3-d array, got ndim={values.ndim}")
    return _impl.gradient(values, float(spacing), bool(periodic))


def laplacian(values: np.ndarray, spacing: float, periodic: bool = False) -> np.ndarray:
    """Sum of fourth-order second derivatives over all axes."""
    if values.ndim not in (1, 3):
        raise ValueError(f"expected a 1-d or 3-d array, got ndim={values.ndim}")
    return _impl.laplacian(values, float(spacing), bool(periodic))


def derivative_matrix(n: int, spacing: float, periodic: bool = False) -> np.ndarray:
    """Dense 1-d first-derivative operator with the same stencils.

    Used where an explicit matrix (and its exact transpose) is more
    convenient than the kernel, e.g. the constrained-search objective.
    Built from the numpy kernel columnwise, so it is backend independent.
    """
    cols = np.empty((n, n))
    basis = np.zeros(n)
    for j in range(n):
        basis[j] = 1.0
        cols[:, j] = _fd_numpy._d1_axis(basis, 0, 1.0 / (12.0 * spacing), periodic)
        basis[j] = 0.0
    return cols
