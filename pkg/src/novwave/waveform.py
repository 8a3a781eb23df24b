"""Smooth small-amplitude periodic traveling waves of the Novikov equation.

In the traveling frame z = k(x - ct), a 2pi-periodic even profile w(z) with
speed c solves

    (c - w^2)^{3/2} (w - k^2 w'') = b,        b > 0,

subject to the pointwise conditions w(z)^2 < c and w - k^2 w'' > 0.  The
constant solution w0(b, k) is the local minimum of the effective potential

    V(phi; b, c) = b*phi / (c*sqrt(c - phi^2)) - phi^2/2,

and the small-amplitude family bifurcating from it expands as

    w = w0 + a cos z + a^2 (d1 + d2 cos 2z) + O(a^3),
    c = c0 + a^2 c2 + O(a^4),

with the amplitude parameter a pinned throughout this package to the first
cosine coefficient of w.

Only waves with positive momentum density w - k^2 w'' are constructed.  The
profile equation is invariant under w -> -w together with b -> -b, so the
negative-momentum mirror branch is obtained by negating a constructed
profile; it is not built separately here.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .spectral import eval_cosine_series, grid

EXISTENCE_CONSTANT = 4.0 * 3.0 ** (-0.75)   # inf over k of c0(b,k)/sqrt(b)
DEFAULT_TRUNCATION = 32
DEFAULT_TOL = 1e-12
MAX_NEWTON_ITER = 50
AMPLITUDE_BOUND = 0.2


@dataclass(frozen=True)
class WaveParams:
    """Parameter triple identifying a wave: wavenumber k, quadrature constant b,
    amplitude a (the first cosine coefficient of the profile)."""

    k: float
    b: float = 1.0
    a: float = 0.0

    def __post_init__(self):
        if not (self.k > 0.0):
            raise DomainError(f"wavenumber k must be positive, got {self.k}")
        if not (self.b > 0.0):
            raise DomainError(f"constant b must be positive, got {self.b}")


@dataclass(frozen=True)
class Equilibrium:
    w0: float
    c0: float


@dataclass(frozen=True)
class ExpansionCoefficients:
    d1: float   # second-order mean shift
    d2: float   # second-harmonic coefficient
    d3: float   # constant term of the translated kernel basis element
    c2: float   # speed correction


@dataclass(frozen=True)
class PeriodicProfile:
    """Even 2pi-periodic profile stored as cosine coefficients w_n, n = 0..N."""

    params: WaveParams
    c: float
    coeffs: np.ndarray

    @property
    def truncation(self):
        return len(self.coeffs) - 1

    def __call__(self, z, deriv=0):
        return eval_cosine_series(self.coeffs, z, deriv)

    def check_pointwise_conditions(self, npoints=None):
        """Raise DomainError unless w^2 < c and w - k^2 w'' > 0 on a fine grid."""
        n = npoints or 8 * max(self.truncation, 4)
        z = grid(n)
        w = self(z)
        if np.max(w * w) >= self.c:
            raise DomainError("profile violates w^2 < c")
        m = w - self.params.k**2 * self(z, 2)
        if np.min(m) <= 0.0:
            raise DomainError("profile violates w - k^2 w'' > 0")

    def to_dict(self):
        return {
            "k": self.params.k,
            "b": self.params.b,
            "a": self.params.a,
            "c": self.c,
            "N": self.truncation,
            "coeffs": list(self.coeffs),
        }

    def to_json(self):
        d = self.to_dict()
        parts = [f'"k": {d["k"]:.17g}', f'"b": {d["b"]:.17g}', f'"a": {d["a"]:.17g}',
                 f'"c": {d["c"]:.17g}', f'"N": {d["N"]}',
                 '"coeffs": [' + ", ".join(f"{x:.17g}" for x in d["coeffs"]) + "]"]
        return "{" + ", ".join(parts) + "}"

    @staticmethod
    def from_json(text):
        d = json.loads(text)
        params = WaveParams(k=d["k"], b=d["b"], a=d["a"])
        coeffs = np.asarray(d["coeffs"], dtype=float)
        if len(coeffs) != d["N"] + 1:
            raise ValueError("coefficient count does not match N")
        return PeriodicProfile(params=params, c=d["c"], coeffs=coeffs)


def equilibrium(b, k):
    """Constant solution w0 and critical speed c0 at which cos(z) joins the
    kernel of the linearized profile operator.

    w0 = b^{1/4} (3/(k^2+1))^{-3/8},
    c0 = b^{1/2} (3/(k^2+1))^{-3/4} (k^2+4)/(k^2+1).
    """
    if not (b > 0.0 and k > 0.0):
        raise DomainError("equilibrium requires b > 0 and k > 0")
    r = 3.0 / (k * k + 1.0)
    w0 = b**0.25 * r ** (-0.375)
    c0 = b**0.5 * r ** (-0.75) * (k * k + 4.0) / (k * k + 1.0)
    return Equilibrium(w0=w0, c0=c0)


def expansion_coefficients(b, k):
    """Closed-form small-amplitude expansion coefficients d1, d2, d3, c2."""
    if not (b > 0.0 and k > 0.0):
        raise DomainError("expansion requires b > 0 and k > 0")
    eq = equilibrium(b, k)
    k2 = k * k
    pref = (1.0 + k2) ** 0.625 / (3.0**0.625 * b**0.25 * k2)
    d1 = pref * (5.0 * k2 * k2 - 20.0 * k2 - 16.0) / 48.0
    d2 = pref * (8.0 + 5.0 * k2) / 12.0
    c2 = 5.0 / 72.0 * (k2 + 4.0) ** 2
    d3 = 2.0 * d1 - 5.0 * eq.w0 / (72.0 * eq.c0) * (k2 + 4.0) ** 2
    return ExpansionCoefficients(d1=d1, d2=d2, d3=d3, c2=c2)


def _check_existence_window(c, b):
    if not (c > EXISTENCE_CONSTANT * np.sqrt(b)):
        raise DomainError(
            f"speed c={c} below the existence window {EXISTENCE_CONSTANT:.6f}*sqrt(b)"
        )


def asymptotic_profile(params, N=DEFAULT_TRUNCATION):
    """Second-order small-amplitude profile: coefficients
    [w0 + a^2 d1, a, a^2 d2, 0, ...] with speed c0 + a^2 c2.

    Truncation error of this constructor is O(a^3).
    """
    if N < 2:
        raise ValueError("need at least truncation 2 for the a^2 cos(2z) term")
    eq = equilibrium(params.b, params.k)
    ex = expansion_coefficients(params.b, params.k)
    a = params.a
    coeffs = np.zeros(N + 1)
    coeffs[0] = eq.w0 + a * a * ex.d1
    coeffs[1] = a
    coeffs[2] = a * a * ex.d2
    c = eq.c0 + a * a * ex.c2
    _check_existence_window(c, params.b)
    return PeriodicProfile(params=params, c=c, coeffs=coeffs)


def solve_profile(params, N=DEFAULT_TRUNCATION, tol=DEFAULT_TOL,
                  max_iter=MAX_NEWTON_ITER, amplitude_bound=AMPLITUDE_BOUND):
    """Newton iteration on cosine collocation for the profile equation.

    Unknowns are (w_0..w_N, c); the residual of
    F = (c - w^2)^{3/2} (w - k^2 w'') - b is collocated on 4N equispaced
    points and closed with w_1 = a, solved in the least-squares sense.  The
    initial guess is the asymptotic profile.  a = 0 short-circuits to the
    equilibrium (there the Jacobian is singular: cos(z) spans its kernel).
    """
    if abs(params.a) > amplitude_bound:
        raise DomainError(f"|a| = {abs(params.a)} above solver bound {amplitude_bound}")
    if N < 8:
        raise ValueError("truncation N must be at least 8")
    if not (tol > 0.0):
        raise ValueError("tolerance must be positive")
    b, k, a = params.b, params.k, params.a
    if a == 0.0:
        eq = equilibrium(b, k)
        coeffs = np.zeros(N + 1)
        coeffs[0] = eq.w0
        return PeriodicProfile(params=params, c=eq.c0, coeffs=coeffs)

    start = asymptotic_profile(params, N)
    coeffs = start.coeffs.copy()
    c = start.c
    z = grid(4 * N)
    nvec = np.arange(N + 1)
    cos_t = np.cos(np.outer(z, nvec))
    closure = np.zeros(N + 2)
    closure[1] = 1.0

    residual = np.inf
    for _ in range(max_iter):
        w = cos_t @ coeffs
        wzz = cos_t @ (-(nvec**2) * coeffs)
        if np.max(w * w) >= c:
            raise DomainError("Newton iterate left the domain w^2 < c")
        root = np.sqrt(c - w * w)
        amp32 = root**3
        m = w - k * k * wzz
        F = amp32 * m - b
        residual = np.max(np.abs(F))
        if residual < tol:
            profile = PeriodicProfile(params=params, c=c, coeffs=coeffs)
            _check_existence_window(c, b)
            profile.check_pointwise_conditions()
            return profile
        # d/dw_n F = (-3 w sqrt(c-w^2) m + (c-w^2)^{3/2} (1 + k^2 n^2)) cos(nz)
        jac_w = (-3.0 * w * root * m)[:, None] * cos_t \
            + amp32[:, None] * (cos_t * (1.0 + k * k * nvec**2)[None, :])
        jac_c = (1.5 * root * m)[:, None]
        jac = np.vstack([np.hstack([jac_w, jac_c]), closure])
        rhs = -np.concatenate([F, [coeffs[1] - a]])
        step, *_ = np.linalg.lstsq(jac, rhs, rcond=None)
        coeffs = coeffs + step[: N + 1]
        c = c + step[N + 1]
    raise ConvergenceError(
        f"Newton did not reach tol={tol} in {max_iter} iterations "
        f"(last residual {residual:.3e})",
        residual=residual,
    )


def profile_residual(p, npoints=None):
    """Max-norm residuals of the integrated and differentiated profile forms.

    Returns (resF, resODE) on a fine grid:
      resF   from (c - w^2)^{3/2} (w - k^2 w'') - b,
      resODE from -c w' + c k^2 w''' + 4 w^2 w' - 3 k^2 w w' w'' - k^2 w^2 w'''.
    """
    n = npoints or 8 * max(p.truncation, 4)
    z = grid(n)
    k, b, c = p.params.k, p.params.b, p.c
    w = p(z)
    if np.max(w * w) >= c:
        raise DomainError("profile residual undefined where w^2 >= c")
    wz = p(z, 1)
    wzz = p(z, 2)
    wzzz = p(z, 3)
    res_f = np.max(np.abs((c - w * w) ** 1.5 * (w - k * k * wzz) - b))
    res_ode = np.max(np.abs(
        -c * wz + c * k * k * wzzz + 4.0 * w * w * wz
        - 3.0 * k * k * w * wz * wzz - k * k * w * w * wzzz
    ))
    return res_f, res_ode


def potential(phi, b, c):
    """Effective potential V(phi; b, c) = b phi / (c sqrt(c - phi^2)) - phi^2/2."""
    phi = np.asarray(phi, dtype=float)
    if np.any(phi * phi >= c):
        raise DomainError("potential requires phi^2 < c")
    out = b * phi / (c * np.sqrt(c - phi * phi)) - 0.5 * phi * phi
    return out if out.ndim else float(out)


def quadrature_check(p, npoints=None):
    """Max-norm residual of the first-integral (quadrature) form.

    The orbit constant E is recovered at the grid point of maximal w, where
    w' vanishes; the residual is
    max_z | (w')^2/2 - E - w^2/2 + b w / (c sqrt(c - w^2)) |.
    """
    n = npoints or 8 * max(p.truncation, 4)
    z = grid(n)
    b, c = p.params.b, p.c
    w = p(z)
    if np.max(w * w) >= c:
        raise DomainError("quadrature residual undefined where w^2 >= c")
    wz = p(z, 1)
    expr = 0.5 * wz * wz - 0.5 * w * w + b * w / (c * np.sqrt(c - w * w))
    e_const = expr[np.argmax(w)]
    return float(np.max(np.abs(expr - e_const)))
