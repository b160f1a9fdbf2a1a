"""Numba kernels for the finite-difference stencils (hot path).

Same difference-form arithmetic as ``_fd_numpy``; only the loop structure
differs.  Kernels are dtype-generic, so complex orbital fields compile their
own specialization on first use.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _d1_line(f, out, inv12h, periodic):
    n = f.shape[0]
    if periodic:
        for i in range(n):
            ip1 = i + 1 if i + 1 < n else i + 1 - n
            ip2 = i + 2 if i + 2 < n else i + 2 - n
            im1 = i - 1 if i - 1 >= 0 else i - 1 + n
            im2 = i - 2 if i - 2 >= 0 else i - 2 + n
            out[i] = (8.0 * (f[ip1] - f[im1]) - (f[ip2] - f[im2])) * inv12h
    else:
        d0 = f[1] - f[0]
        d1 = f[2] - f[1]
        d2 = f[3] - f[2]
        d3 = f[4] - f[3]
        out[0] = (25.0 * d0 - 23.0 * d1 + 13.0 * d2 - 3.0 * d3) * inv12h
        out[1] = (3.0 * d0 + 13.0 * d1 - 5.0 * d2 + d3) * inv12h
        for i in range(2, n - 2):
            out[i] = (8.0 * (f[i + 1] - f[i - 1]) - (f[i + 2] - f[i - 2])) * inv12h
        e0 = f[n - 1] - f[n - 2]
        e1 = f[n - 2] - f[n - 3]
        e2 = f[n - 3] - f[n - 4]
        e3 = f[n - 4] - f[n - 5]
        out[n - 1] = (25.0 * e0 - 23.0 * e1 + 13.0 * e2 - 3.0 * e3) * inv12h
        out[n - 2] = (3.0 * e0 + 13.0 * e1 - 5.0 * e2 + e3) * inv12h


@njit(cache=True)
def _d2_line(f, out, inv12h2, periodic):
    n = f.shape[0]
    if periodic:
        for i in range(n):
            ip1 = i + 1 if i + 1 < n else i + 1 - n
            ip2 = i + 2 if i + 2 < n else i + 2 - n
            im1 = i - 1 if i - 1 >= 0 else i - 1 + n
            im2 = i - 2 if i - 2 >= 0 else i - 2 + n
            out[i] = (
                (f[im1] - f[im2])
                - 15.0 * (f[i] - f[im1])
                + 15.0 * (f[ip1] - f[i])
                - (f[ip2] - f[ip1])
            ) * inv12h2
    else:
        d0 = f[1] - f[0]
        d1 = f[2] - f[1]
        d2 = f[3] - f[2]
        d3 = f[4] - f[3]
        d4 = f[5] - f[4]
        out[0] = (-45.0 * d0 + 109.0 * d1 - 105.0 * d2 + 51.0 * d3 - 10.0 * d4) * inv12h2
        out[1] = (-10.0 * d0 + 5.0 * d1 + 9.0 * d2 - 5.0 * d3 + d4) * inv12h2
        for i in range(2, n - 2):
            out[i] = (
                (f[i - 1] - f[i - 2])
                - 15.0 * (f[i] - f[i - 1])
                + 15.0 * (f[i + 1] - f[i])
                - (f[i + 2] - f[i + 1])
            ) * inv12h2
        e0 = f[n - 2] - f[n - 1]
        e1 = f[n - 3] - f[n - 2]
        e2 = f[n - 4] - f[n - 3]
        e3 = f[n - 5] - f[n - 4]
        e4 = f[n - 6] - f[n - 5]
        out[n - 1] = (-45.0 * e0 + 109.0 * e1 - 105.0 * e2 + 51.0 * e3 - 10.0 * e4) * inv12h2
        out[n - 2] = (-10.0 * e0 + 5.0 * e1 + 9.0 * e2 - 5.0 * e3 + e4) * inv12h2


@njit(cache=True)
def _gradient_3d(f, inv12h, periodic, gx, gy, gz):
    n0, n1, n2 = f.shape
    for i in range(n0):
        for j in range(n1):
            _d1_line(f[i, j, :], gz[i, j, :], inv12h, periodic)
    for i in range(n0):
        for k in range(n2):
            _d1_line(f[i, :, k], gy[i, :, k], inv12h, periodic)
    for j in range(n1):
        for k in range(n2):
            _d1_line(f[:, j, k], gx[:, j, k], inv12h, periodic)


@njit(cache=True)
def _laplacian_3d(f, inv12h2, periodic, out):
    n0, n1, n2 = f.shape
    for i in range(n0):
        for j in range(n1):
            _d2_line(f[i, j, :], out[i, j, :], inv12h2, periodic)
    buf1 = np.empty(n1, dtype=f.dtype)
    for i in range(n0):
        for k in range(n2):
            _d2_line(f[i, :, k], buf1, inv12h2, periodic)
            for j in range(n1):
                out[i, j, k] += buf1[j]
    buf0 = np.empty(n0, dtype=f.dtype)
    for j in range(n1):
        for k in range(n2):
            _d2_line(f[:, j, k], buf0, inv12h2, periodic)
            for i in range(n0):
                out[i, j, k] += buf0[i]


def gradient(values: np.ndarray, spacing: float, periodic: bool):
    inv12h = 1.0 / (12.0 * spacing)
    if values.ndim == 1:
        out = np.empty_like(values)
        _d1_line(values, out, inv12h, periodic)
        return (out,)
    gx = np.empty_like(values)
    gy = np.empty_like(values)
    gz = np.empty_like(values)
    _gradient_3d(values, inv12h, periodic, gx, gy, gz)
    return (gx, gy, gz)


def laplacian(values: np.ndarray, spacing: float, periodic: bool) -> np.ndarray:
    inv12h2 = 1.0 / (12.0 * spacing * spacing)
    if values.ndim == 1:
        out = np.empty_like(values)
        _d2_line(values, out, inv12h2, periodic)
        return out
    out = np.empty_like(values)
    _laplacian_3d(values, inv12h2, periodic, out)
    return out
