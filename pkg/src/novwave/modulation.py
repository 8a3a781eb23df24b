"""Three-dimensional reduction of the Bloch eigenproblem near the origin.

At the constant state, the co-periodic (xi = 0) Bloch operator has a triple
zero eigenvalue with kernel span{cos z, sin z, 1}.  For small amplitude a and
small Bloch frequency xi, the three continuing eigenvalue curves are the
roots of det(S - lambda*G) for a 3x3 pencil of inner products against the
continued basis

    phi1 = cos z + a (d3 + 2 d2 cos 2z) + O(a^2),
    phi2 = sin z + 2 a d2 sin 2z + O(a^2),
    phi3 = 1 + O(a^2).

With lambda = i*xi*X the characteristic polynomial rescales to a real cubic

    Q(X) = q3 X^3 - q2 X^2 - q1 X + q0,

whose discriminant sign decides whether the curves stay on the imaginary
axis (three real roots, modulational stability) or leave it (one real root
plus a complex pair, modulational instability).
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bloch import build_L_matrix
from .errors import ConsistencyError, DegenerateCubicError, DomainError
from .spectral import modes
from .waveform import WaveParams, equilibrium, expansion_coefficients

TRUST_AMPLITUDE = 0.1
CRITICAL_BAND = 1e-12
IMAG_RESIDUE_TOL = 1e-6

STABLE = "Stable"
UNSTABLE = "Unstable"
CRITICAL = "Critical"


@dataclass(frozen=True)
class CriticalBasis:
    """Order-a accurate basis of the critical eigenspace on modes |n| <= 2.

    Each element is a complex coefficient vector over e^{i n z}, n = -2..2.
    phi1 and phi3 are even, phi2 is odd.
    """

    a: float
    phi1: np.ndarray
    phi2: np.ndarray
    phi3: np.ndarray

    def embedded(self, n_trunc):
        """The three vectors zero-padded onto modes |n| <= n_trunc."""
        out = []
        for small in (self.phi1, self.phi2, self.phi3):
            v = np.zeros(2 * n_trunc + 1, dtype=complex)
            v[n_trunc - 2 : n_trunc + 3] = small
            out.append(v)
        return out


@dataclass(frozen=True)
class ReducedMatrix:
    """Pencil M(lambda) = S - lambda*G projected on the critical basis."""

    S: np.ndarray
    G: np.ndarray
    xi: float
    provenance: str    # "asymptotic" | "numeric"


@dataclass(frozen=True)
class ModulationResult:
    k: float
    b: float
    a: float
    xi: float
    q: tuple          # (q0, q1, q2, q3)
    delta: float
    roots: tuple      # three roots of Q, sorted by (Im, Re)
    verdict: str
    growth_rate: float


@dataclass(frozen=True)
class DiscriminantLeadingTerms:
    delta0_coefficient: float   # coefficient of xi^2 in Delta(0, xi)
    lam: float                  # coefficient of a^2 in Delta(a, xi) - Delta(0, xi)


def critical_basis(params):
    """Basis of the critical eigenspace, truncated at O(a^2)."""
    ex = expansion_coefficients(params.b, params.k)
    a = params.a
    # modes ordered n = -2..2
    phi1 = np.array([a * ex.d2, 0.5, a * ex.d3, 0.5, a * ex.d2], dtype=complex)
    phi2 = np.array([1j * a * ex.d2, 0.5j, 0.0, -0.5j, -1j * a * ex.d2], dtype=complex)
    phi3 = np.array([0.0, 0.0, 1.0, 0.0, 0.0], dtype=complex)
    return CriticalBasis(a=a, phi1=phi1, phi2=phi2, phi3=phi3)


def reduced_matrix_asymptotic(params, xi):
    """Leading-order closed-form pencil, with identity Gram.

    Writing alpha = c0 - 4 w0^2 and m1 = 1/(k^2+1), the action matrix is

        S = i xi diag(-2 k alpha m1, -2 k alpha m1, k alpha)
            + a [(2,3) entry  k w0 m1 (2k^2+8)]
            + a i xi [(1,3) = g1, (3,1) = g2]
            + xi^2 [(1,2) = -cc, (2,1) = +cc],

    where cc = k alpha (3 - k^2)/(k^2+1)^2 is the dispersion-curvature
    coupling between the cos z and sin z directions.  Its value (including
    sign) is pinned by the exact second xi-derivative of the constant-state
    frequency Omega_{1,xi} at xi = 0: cc = -(1/2) d^2 Omega_{1,xi}/d xi^2.
    The same curvature constant y1 = 2 k^2/(k^2+1)^2 enters g1:

        g1 = 2 k alpha d3 + k y1 w0 (2k^2+8) - k w0 m1 (3k^2+8),
        g2 = k alpha d3 - k w0 (3k^2+8)/2.

    Entry-wise error is O(a^2 + a xi^2 + xi^3); Gram corrections of size O(a)
    are deliberately dropped (G = I), which is what gives the classifier its
    sign change at k^2 = 3 (see discriminant_leading_terms).
    """
    k = params.k
    a = params.a
    eq = equilibrium(params.b, k)
    ex = expansion_coefficients(params.b, k)
    w0 = eq.w0
    k2 = k * k
    alpha = eq.c0 - 4.0 * w0 * w0
    m1 = 1.0 / (k2 + 1.0)
    y1 = 2.0 * k2 / (k2 + 1.0) ** 2
    cc = k * alpha * (3.0 - k2) / (k2 + 1.0) ** 2
    g1 = 2.0 * k * alpha * ex.d3 + k * y1 * w0 * (2.0 * k2 + 8.0) \
        - k * w0 * m1 * (3.0 * k2 + 8.0)
    g2 = k * alpha * ex.d3 - k * w0 * (3.0 * k2 + 8.0) / 2.0

    S = np.zeros((3, 3), dtype=complex)
    S[0, 0] = S[1, 1] = 1j * xi * (-2.0 * k * alpha * m1)
    S[2, 2] = 1j * xi * k * alpha
    S[1, 2] = a * k * w0 * m1 * (2.0 * k2 + 8.0)
    S[0, 2] = a * 1j * xi * g1
    S[2, 0] = a * 1j * xi * g2
    S[0, 1] = -cc * xi * xi
    S[1, 0] = cc * xi * xi
    return ReducedMatrix(S=S, G=np.eye(3, dtype=complex), xi=xi,
                         provenance="asymptotic")


def reduced_matrix_numeric(p, xi, N=None):
    """Pencil computed by exact Fourier quadrature against the full operator.

    S_ij = <k L_xi phi_j, (1 - k^2 (d_z + i xi)^2)^{-1} phi_i> / <phi_i, phi_i>,
    G_ij = <phi_j, phi_i> / <phi_i, phi_i>;

    the inverse elliptic operator acts diagonally on Fourier modes, and the
    basis Gram is retained exactly (it has O(a) off-diagonal entries coupling
    phi1 and phi3).
    """
    N = N if N is not None else max(2 * p.truncation, 8)
    if N < 4:
        raise ValueError(f"N={N} cannot hold the images of the mode-2 basis")
    k = p.params.k
    basis = critical_basis(p.params).embedded(N)
    L = build_L_matrix(p, xi, N)
    ell = 1.0 / (1.0 + k * k * (modes(N) + xi) ** 2)
    S = np.empty((3, 3), dtype=complex)
    G = np.empty((3, 3), dtype=complex)
    for i in range(3):
        test = ell * basis[i]
        norm = np.vdot(basis[i], basis[i])
        for j in range(3):
            S[i, j] = k * np.vdot(test, L @ basis[j]) / norm
            G[i, j] = np.vdot(basis[i], basis[j]) / norm
    return ReducedMatrix(S=S, G=G, xi=xi, provenance="numeric")


def _pencil_polynomial(S, G):
    """Coefficients p of det(S - lambda G) = p[0] + p[1] l + p[2] l^2 + p[3] l^3."""
    p = np.zeros(4, dtype=complex)
    for r in range(4):
        total = 0.0
        for cols in combinations(range(3), r):
            m = S.astype(complex).copy()
            for j in cols:
                m[:, j] = G[:, j]
            total += np.linalg.det(m)
        p[r] = (-1.0) ** r * total
    return p


def cubic_coefficients(M, xi=None, imag_tol=IMAG_RESIDUE_TOL):
    """Real coefficients (q0, q1, q2, q3) of Q(X) = q3 X^3 - q2 X^2 - q1 X + q0.

    For xi != 0 the characteristic polynomial det(S - lambda G) is rescaled by
    lambda = i*xi*X and divided by i*xi^3; the axis symmetry of the spectrum
    forces the result to be real, and an imaginary residue above
    imag_tol * (coefficient scale) raises ConsistencyError.  At xi = 0 the
    unscaled lambda-cubic -det(S - lambda G) is returned in the same sign
    convention.
    """
    xi = M.xi if xi is None else xi
    p = _pencil_polynomial(M.S, M.G)
    if xi == 0.0:
        r = -p
        raw = np.array([r[0], -r[1], -r[2], r[3]])
    else:
        ix = 1j * xi
        scaled = np.array([p[0], p[1] * ix, p[2] * ix**2, p[3] * ix**3]) / (1j * xi**3)
        raw = np.array([scaled[0], -scaled[1], -scaled[2], scaled[3]])
    scale = float(np.max(np.abs(raw)))
    if scale > 0.0 and float(np.max(np.abs(raw.imag))) > imag_tol * scale:
        raise ConsistencyError(
            f"imaginary residue {np.max(np.abs(raw.imag)):.3e} above "
            f"{imag_tol:.1e} * scale={scale:.3e}; assembly inconsistent or "
            "(a, xi) outside the asymptotic regime"
        )
    q0, q1, q2, q3 = (float(v) for v in raw.real)
    return q0, q1, q2, q3


def discriminant(q0, q1, q2, q3):
    """Discriminant of Q(X) = q3 X^3 - q2 X^2 - q1 X + q0.

    Delta = 18 q3 q2 q1 q0 + q2^2 q1^2 + 4 q2^3 q0 + 4 q3 q1^3 - 27 q3^2 q0^2,
    the standard cubic discriminant carried through this sign convention:
    Delta > 0 gives three distinct real roots, Delta < 0 one real root and a
    complex-conjugate pair.
    """
    if q3 == 0.0:
        raise DegenerateCubicError("leading coefficient q3 vanishes")
    return (18.0 * q3 * q2 * q1 * q0 + q2**2 * q1**2 + 4.0 * q2**3 * q0
            + 4.0 * q3 * q1**3 - 27.0 * q3**2 * q0**2)


def _discriminant_scale(q0, q1, q2, q3):
    return (abs(18.0 * q3 * q2 * q1 * q0) + (q2 * q1) ** 2
            + abs(4.0 * q2**3 * q0) + abs(4.0 * q3 * q1**3)
            + 27.0 * (q3 * q0) ** 2)


def discriminant_leading_terms(b, k):
    """Leading coefficients of the classifier's discriminant expansion
    Delta(a, xi) = Delta(0, xi) + lam * a^2 + O(a^2 (a^2 + xi^2)).

    For the asymptotic pencil the a = 0 cubic has roots
    {sigma1 +/- cc xi, sigma3}, so Delta(0, xi) = 4 cc^2 xi^2
    ((sigma1-sigma3)^2 - cc^2 xi^2)^2 with xi^2-coefficient

        12 sqrt(3) b^3 k^18 (k^2+3)^4 (3-k^2)^2 / (k^2+1)^{19/2},

    and the splitting of the double root at order a^2 gives

        lam = 4 b^{5/2} k^14 (k^2+3)^3 (k^2+4) (20-k^2) (3-k^2)
              / (3^{3/4} (k^2+1)^{25/4}),

    which changes sign exactly at k^2 = 3 (for k^2 < 20).

    Notes
    -----
    Both formulas describe this module's identity-Gram pipeline.  Retaining
    the exact basis Gram instead (as reduced_matrix_numeric does) changes the
    a^2-coefficient to

        4 b^{5/2} k^14 (k^2+3)^3 (k^2+4)^2 (3-k^2)^2
        / (3^{3/4} (k^2+1)^{29/4}),

    which is nonnegative and is what the direct Hill computation measures;
    the demos quantify the comparison.
    """
    if not (b > 0.0 and k > 0.0):
        raise DomainError("leading terms require b > 0 and k > 0")
    k2 = k * k
    delta0 = (12.0 * np.sqrt(3.0) * b**3 * k**18 * (k2 + 3.0) ** 4
              * (3.0 - k2) ** 2 / (k2 + 1.0) ** 9.5)
    lam = (4.0 * b**2.5 * k**14 * (k2 + 3.0) ** 3 * (k2 + 4.0)
           * (20.0 - k2) * (3.0 - k2) / (3.0**0.75 * (k2 + 1.0) ** 6.25))
    return DiscriminantLeadingTerms(delta0_coefficient=delta0, lam=lam)


def _classify_from_cubic(q, xi, k, b, a):
    q0, q1, q2, q3 = q
    delta = discriminant(q0, q1, q2, q3)
    roots = np.roots([q3, -q2, -q1, q0])
    order = np.lexsort((roots.real, roots.imag))
    roots = roots[order]
    band = CRITICAL_BAND * max(_discriminant_scale(q0, q1, q2, q3), 1e-300)
    if delta > band:
        verdict, growth = STABLE, 0.0
    elif delta < -band:
        verdict = UNSTABLE
        beta = float(np.max(np.abs(roots.imag)))
        growth = beta * abs(xi)
    else:
        verdict, growth = CRITICAL, 0.0
    return ModulationResult(k=k, b=b, a=a, xi=xi, q=q, delta=delta,
                            roots=tuple(roots), verdict=verdict,
                            growth_rate=growth)


def classify(params, xi, enforce_trust_region=True):
    """Stability verdict from the asymptotic pencil at (a, xi).

    Pipeline: reduced_matrix_asymptotic -> cubic_coefficients -> discriminant
    -> companion-matrix roots.  Verdict is Stable/Unstable/Critical by the
    sign of the discriminant against a relative critical band of 1e-12; for
    an Unstable verdict the predicted growth rate is |Im X| * |xi|, from
    lambda = i xi X.

    The asymptotic trust region is |a| <= 0.1 and |xi| <= |a| (the a = 0
    constant state is exempt from the xi bound).
    """
    if enforce_trust_region:
        if abs(params.a) > TRUST_AMPLITUDE:
            raise DomainError(f"|a| = {abs(params.a)} outside trust region")
        if params.a != 0.0 and abs(xi) > abs(params.a):
            raise DomainError(f"|xi| = {abs(xi)} above |a| = {abs(params.a)}")
    M = reduced_matrix_asymptotic(params, xi)
    q = cubic_coefficients(M)
    return _classify_from_cubic(q, xi, params.k, params.b, params.a)


def classify_profile(p, xi, N=None):
    """Stability verdict from the numeric (exact-quadrature) pencil."""
    M = reduced_matrix_numeric(p, xi, N)
    q = cubic_coefficients(M)
    return _classify_from_cubic(q, xi, p.params.k, p.params.b, p.params.a)


def results_to_csv(results, path):
    """Write classification rows `k,b,a,xi,delta,verdict,growth_rate`."""
    lines = ["k,b,a,xi,delta,verdict,growth_rate"]
    for r in results:
        lines.append(
            f"{r.k:.17g},{r.b:.17g},{r.a:.17g},{r.xi:.17g},"
            f"{r.delta:.17g},{r.verdict},{r.growth_rate:.17g}"
        )
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def result_to_json(result):
    """JSON report embedding the cubic coefficients and the three roots."""
    q0, q1, q2, q3 = result.q
    roots = ", ".join(
        f'{{"re": {r.real:.17g}, "im": {r.imag:.17g}}}' for r in result.roots
    )
    return (
        "{"
        f'"k": {result.k:.17g}, "b": {result.b:.17g}, "a": {result.a:.17g}, '
        f'"xi": {result.xi:.17g}, "delta": {result.delta:.17g}, '
        f'"verdict": "{result.verdict}", '
        f'"growth_rate": {result.growth_rate:.17g}, '
        f'"q": [{q0:.17g}, {q1:.17g}, {q2:.17g}, {q3:.17g}], '
        f'"roots": [{roots}]'
        "}"
    )
