"""Fourier helpers for 2pi-periodic even profiles.

Profiles are stored as real cosine coefficients w_n, n = 0..N, so that
w(z) = sum_n w_n cos(n z).  Complex Fourier modes e^{i n z}, n = -N..N, are
used for the linear-operator matrices; index n maps to row/column n + N.
"""

import numpy as np
from scipy.linalg import toeplitz


def grid(npoints):
    """Equispaced points on [0, 2pi)."""
    return 2.0 * np.pi * np.arange(npoints) / npoints


def eval_cosine_series(coeffs, z, deriv=0):
    """Evaluate d^deriv/dz^deriv of sum_n coeffs[n] cos(n z) at points z."""
    n = np.arange(len(coeffs))
    z = np.asarray(z, dtype=float)
    if deriv % 4 == 0:
        basis, sign = np.cos(np.outer(z, n)), 1.0
    elif deriv % 4 == 1:
        basis, sign = np.sin(np.outer(z, n)), -1.0
    elif deriv % 4 == 2:
        basis, sign = np.cos(np.outer(z, n)), -1.0
    else:
        basis, sign = np.sin(np.outer(z, n)), 1.0
    return sign * (basis @ (n**deriv * coeffs))


def fourier_coefficients(values):
    """Complex Fourier coefficients c_m of samples on grid(len(values)).

    c_m multiplies e^{i m z}; returned array is indexable by m modulo the
    sample count, exact for trigonometric polynomials of bandwidth
    < len(values)/2.
    """
    return np.fft.fft(values) / len(values)


def convolution_matrix(values, n_trunc):
    """Toeplitz matrix of multiplication by f on modes e^{i n z}, |n| <= n_trunc.

    ``values`` must sample f on a grid fine enough that the coefficients up to
    |m| <= 2*n_trunc are unaliased: for f of bandwidth B that means
    len(values) >= B + 2*n_trunc + 1.
    """
    m = len(values)
    if m < 2 * n_trunc + 1:
        raise ValueError(f"{m} samples cannot resolve modes up to {2 * n_trunc}")
    ch = fourier_coefficients(values)
    col = ch[np.arange(0, 2 * n_trunc + 1) % m]          # c_0, c_1, ..., c_{2K}
    row = ch[(-np.arange(0, 2 * n_trunc + 1)) % m]       # c_0, c_{-1}, ...
    return toeplitz(col, row)


def modes(n_trunc):
    """Mode indices n = -N..N in storage order."""
    return np.arange(-n_trunc, n_trunc + 1)
