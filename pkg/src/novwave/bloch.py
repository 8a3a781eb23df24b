"""Bloch operators of the linearized Novikov equation and their Hill spectra.

Linearizing about a profile w with speed c in the frame z = k(x - ct) gives
V_t = A[w] V with

    A[w] = k (1 - k^2 d_zz)^{-1} L[w],
    L[w] = c d_z - c k^2 d_z^3 - 8 w w' - 4 w^2 d_z
           + 3 k^2 (w'w'' + w w'' d_z + w w' d_z^2)
           + k^2 (w^2 d_z^3 + 2 w w''').

Whole-line spectra decompose over Bloch frequencies xi in [-1/2, 1/2): the
operator A_xi[w] = e^{-i xi z} A[w] e^{i xi z} acts on 2pi-periodic functions
and is represented here as a dense matrix on Fourier modes e^{i n z},
|n| <= N.  For the constant state w = w0 the matrix is diagonal with entries
i*Omega_{n, xi},

    Omega_{n,xi} = (n+xi)((n+xi)^2 - 1) k^3 (c0 - w0^2) / (1 + k^2 (n+xi)^2).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .spectral import convolution_matrix, grid, modes
from .waveform import equilibrium

DEFAULT_TRUNCATION = 32


@dataclass(frozen=True)
class BlochMatrix:
    """Dense Fourier-space representation of A_xi[w] at truncation N."""

    xi: float
    N: int
    entries: np.ndarray

    @property
    def modes(self):
        return modes(self.N)


@dataclass(frozen=True)
class SpectrumSlice:
    """Eigenvalues of one Bloch matrix, sorted by (Im, Re)."""

    xi: float
    eigenvalues: np.ndarray

    def origin_nearest(self, count=3):
        """The ``count`` eigenvalues of smallest modulus, sorted by (Im, Re)."""
        sel = self.eigenvalues[np.argsort(np.abs(self.eigenvalues), kind="stable")][:count]
        return _sort_eigs(sel)


def _sort_eigs(vals):
    order = np.lexsort((vals.real, vals.imag))
    return vals[order]


def _profile_fields(p, n_samples):
    z = grid(n_samples)
    return p(z), p(z, 1), p(z, 2), p(z, 3)


def build_L_matrix(p, xi, N=DEFAULT_TRUNCATION):
    """Fourier-space matrix of L_xi[w] = e^{-i xi z} L[w] e^{i xi z}.

    Derivatives become the diagonal symbol i(n + xi); each variable
    coefficient becomes the Toeplitz convolution matrix of its Fourier
    coefficients, computed on a grid oversampled past the bandwidth of
    profile-times-profile products so the entries are alias-free.
    """
    if N < 2:
        raise ValueError(f"matrix truncation N={N} too small")
    nsamp = 4 * p.truncation + 2 * N + 5
    w, wz, wzz, wzzz = _profile_fields(p, nsamp)
    k, c = p.params.k, p.c
    d = 1j * (modes(N) + xi)

    def conv(values):
        return convolution_matrix(values, N)

    m_w2 = conv(w * w)
    left = (
        -conv(8.0 * w * wz)
        + 3.0 * k * k * conv(wz * wzz)
        + 2.0 * k * k * conv(w * wzzz)
    )
    first = (-4.0 * m_w2 + 3.0 * k * k * conv(w * wzz)) * d[None, :]
    second = 3.0 * k * k * conv(w * wz) * (d * d)[None, :]
    third = k * k * m_w2 * (d**3)[None, :]
    diag = np.diag(c * d - c * k * k * d**3)
    return diag + left + first + second + third


def build_bloch_matrix(p, xi, N=DEFAULT_TRUNCATION):
    """A_xi[w]: left-multiply L_xi[w] by the diagonal k / (1 + k^2 (n+xi)^2)."""
    k = p.params.k
    ell = k / (1.0 + k * k * (modes(N) + xi) ** 2)
    entries = ell[:, None] * build_L_matrix(p, xi, N)
    return BlochMatrix(xi=xi, N=N, entries=entries)


def constant_state_frequency(n, xi, b, k):
    """Omega_{n, xi}: real dispersion frequency of the constant state."""
    eq = equilibrium(b, k)
    mu = n + xi
    return mu * (mu * mu - 1.0) * k**3 * (eq.c0 - eq.w0**2) / (1.0 + k * k * mu * mu)


def constant_state_eigenvalue(n, xi, b, k):
    """i*Omega_{n, xi}: eigenvalue of A_xi[w0] on the mode e^{i n z}."""
    return 1j * constant_state_frequency(n, xi, b, k)


def spectrum_slice(p, xi, N=DEFAULT_TRUNCATION):
    """All 2N+1 eigenvalues of the Bloch matrix, deterministically sorted."""
    m = build_bloch_matrix(p, xi, N)
    try:
        vals = np.linalg.eigvals(m.entries)
    except np.linalg.LinAlgError as exc:   # pragma: no cover - LAPACK failure
        cond = np.linalg.cond(m.entries)
        raise RuntimeError(f"eigensolver failed (matrix condition {cond:.3e})") from exc
    return SpectrumSlice(xi=xi, eigenvalues=_sort_eigs(vals))


def spectrum_sweep(p, xi_grid, N=DEFAULT_TRUNCATION, workers=1):
    """Spectrum slices for each xi in grid order; evaluation may be threaded
    but the output order is deterministic."""
    xi_grid = list(xi_grid)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda x: spectrum_slice(p, x, N), xi_grid))
    return [spectrum_slice(p, xi, N) for xi in xi_grid]


def origin_ball_radius(b, k, xi, N=DEFAULT_TRUNCATION):
    """Half the modulus of the fourth-smallest constant-state eigenvalue at xi.

    Used to delimit the neighborhood of the spectral-plane origin in which the
    three continuing eigenvalue curves live.
    """
    om = np.abs([constant_state_frequency(n, xi, b, k) for n in range(-N, N + 1)])
    return 0.5 * np.sort(om)[3]


@dataclass(frozen=True)
class CollisionReport:
    """Ordering check of the constant-state frequencies around the origin."""

    xi: float
    omegas: dict
    chain: list
    strict: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    advisory: str | None = None

    @property
    def is_strict(self):
        return not self.violations


def collision_check(b, k, xi, n_range=4):
    """Verify the strict interlacing of Omega_{n, xi} for xi in (0, 1/2].

    For k^2 < 3 the frequencies obey
      ... < Omega_{-2} < Omega_{0} < 0 < Omega_{-1} < Omega_{1} < Omega_{2} < ...
    so curves never collide away from the origin; for k^2 >= 3 an advisory
    flag is attached instead of a guarantee.
    """
    if not (0.0 < xi <= 0.5):
        raise ValueError("collision check expects xi in (0, 1/2]")
    omegas = {n: constant_state_frequency(n, xi, b, k)
              for n in range(-n_range, n_range + 1)}
    labels = ([f"Omega[{n}]" for n in range(-n_range, -1)]
              + ["Omega[0]", "zero", "Omega[-1]"]
              + [f"Omega[{n}]" for n in range(1, n_range + 1)])
    values = ([omegas[n] for n in range(-n_range, -1)]
              + [omegas[0], 0.0, omegas[-1]]
              + [omegas[n] for n in range(1, n_range + 1)])
    chain = list(zip(labels, values))
    strict = [values[i] < values[i + 1] for i in range(len(values) - 1)]
    violations = [
        f"{labels[i]} = {values[i]:.6g} !< {labels[i + 1]} = {values[i + 1]:.6g}"
        for i, ok in enumerate(strict) if not ok
    ]
    advisory = None
    if k * k >= 3.0:
        advisory = "k^2 >= 3: interlacing away from the origin is not guaranteed"
    return CollisionReport(xi=xi, omegas=omegas, chain=chain, strict=strict,
                           violations=violations, advisory=advisory)


def _match_to_previous(prev, curr):
    """Greedy nearest-neighbor permutation mapping curr onto prev's ordering.

    Returns None (step rejected) when any match distance exceeds half the
    minimal eigenvalue gap of the previous slice."""
    n = len(prev)
    dist = np.abs(curr[None, :] - prev[:, None])
    if n > 1:
        off = np.abs(prev[None, :] - prev[:, None])[~np.eye(n, dtype=bool)]
        prev_gap = float(np.min(off))
    else:
        prev_gap = np.inf
    perm = np.full(n, -1)
    used = np.zeros(n, dtype=bool)
    for i in np.argsort(dist.min(axis=1)):
        row = np.where(used, np.inf, dist[i])
        j = int(np.argmin(row))
        if row[j] > 0.5 * prev_gap:
            return None
        perm[i] = j
        used[j] = True
    return perm


def sweep_to_csv(slices, path):
    """Write slices as CSV rows `xi,re,im,branch_hint` (plotting interface).

    branch_hint indexes eigenvalue curves by nearest-neighbor continuation
    from the first slice; where the matching is ambiguous it falls back to
    the deterministic per-slice sort order.
    """
    lines = ["xi,re,im,branch_hint"]
    prev = None
    hints = None
    for s in slices:
        vals = s.eigenvalues
        if prev is None:
            hints = np.arange(len(vals))
        else:
            perm = _match_to_previous(prev, vals) if len(prev) == len(vals) else None
            if perm is not None:
                new_hints = np.empty(len(vals), dtype=int)
                new_hints[perm] = hints
                hints = new_hints
            else:
                hints = np.arange(len(vals))
        for lam, h in zip(vals, hints):
            lines.append(f"{s.xi:.17g},{lam.real:.17g},{lam.imag:.17g},{h}")
        prev = vals
    data = "\n".join(lines) + "\n"
    with open(path, "w", newline="") as fh:
        fh.write(data)
    return path
