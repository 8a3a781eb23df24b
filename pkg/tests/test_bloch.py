import numpy as np
import pytest

from novwave.bloch import (build_L_matrix, build_bloch_matrix, collision_check,
                           constant_state_eigenvalue, constant_state_frequency,
                           origin_ball_radius, spectrum_slice, spectrum_sweep,
                           sweep_to_csv)
from novwave.spectral import convolution_matrix, grid, modes
from novwave.waveform import (WaveParams, asymptotic_profile, equilibrium,
                              solve_profile)


def constant_profile(b=1.0, k=1.0, N=32):
    return solve_profile(WaveParams(k=k, b=b, a=0.0), N=N)


def exact_spectrum(b, k, xi, N):
    return np.array([constant_state_eigenvalue(n, xi, b, k) for n in range(-N, N + 1)])


def test_constant_state_matrix_is_diagonal_dispersion():
    p = constant_profile(k=1.0)
    for xi in (0.0, 0.3):
        m = build_bloch_matrix(p, xi, 32).entries
        off = m - np.diag(np.diag(m))
        assert np.max(np.abs(off)) < 1e-11
        expected = exact_spectrum(1.0, 1.0, xi, 32)
        np.testing.assert_allclose(np.diag(m), expected, atol=1e-12)


def test_constant_state_L_symbol():
    # L on e^{i mu z} multiplies by i mu (c0-4w0^2) - k^2 (c0-w0^2)(i mu)^3
    b, k, xi = 1.0, 2.0, 0.17
    eq = equilibrium(b, k)
    p = constant_profile(b, k)
    L = build_L_matrix(p, xi, 16)
    mu = modes(16) + xi
    sym = 1j * mu * (eq.c0 - 4 * eq.w0**2) + k * k * (eq.c0 - eq.w0**2) * 1j * mu**3
    np.testing.assert_allclose(np.diag(L), sym, rtol=1e-13, atol=1e-12)


def test_elliptic_inverse_diagonal_value():
    # row for n = 1 at xi = 0.25, k = 1 carries the factor 1/(1+1.25^2)
    p = constant_profile(k=1.0)
    N = 8
    L = build_L_matrix(p, 0.25, N)
    A = build_bloch_matrix(p, 0.25, N).entries
    row = N + 1
    assert A[row, row] == pytest.approx(L[row, row] / 2.5625, rel=1e-14)


def test_L_matches_printed_small_amplitude_expansion():
    # assembled operator against its first-order expansion in a and xi:
    # L_xi = L0 + i xi L1 - xi^2/2 L2 with
    #   L0 = alpha (D + D^3) + a w0 [(2k^2+8) sin - 3k^2 sin D^2
    #        - (3k^2+8) cos D + 2k^2 cos D^3]
    #   L1 = alpha (1 + 3 D^2) + a w0 [-(3k^2+8) cos - 6k^2 sin D + 6k^2 cos D^2]
    #   L2 = -6 k^2 (c0 - w0^2) D
    # residual must be O(a^2) once xi^3 and a*xi^2 are negligible against a^2
    b, k, a, xi, N = 1.0, 1.0, 0.1, 0.02, 16
    eq = equilibrium(b, k)
    p = asymptotic_profile(WaveParams(k=k, b=b, a=a), N=8)
    L_full = build_L_matrix(p, xi, N)

    z = grid(8 * N + 9)
    mcos = convolution_matrix(np.cos(z), N)
    msin = convolution_matrix(np.sin(z), N)
    D = np.diag(1j * modes(N).astype(complex))
    I = np.eye(2 * N + 1)
    alpha = eq.c0 - 4 * eq.w0**2
    w0 = eq.w0
    L0 = alpha * (D + D @ D @ D) + a * w0 * (
        (2 * k**2 + 8) * msin - 3 * k**2 * msin @ D @ D
        - (3 * k**2 + 8) * mcos @ D + 2 * k**2 * mcos @ D @ D @ D)
    L1 = alpha * (I + 3 * D @ D) + a * w0 * (
        -(3 * k**2 + 8) * mcos - 6 * k**2 * msin @ D + 6 * k**2 * mcos @ D @ D)
    L2 = -6 * k**2 * (eq.c0 - eq.w0**2) * D
    L_exp = L0 + 1j * xi * L1 - 0.5 * xi * xi * L2

    scale = np.max(np.abs(L_full))
    assert np.max(np.abs(L_full - L_exp)) / scale < 5.0 * a * a


def test_L_matrix_matches_matrix_free_application():
    # independent oracle for the whole assembly: apply the operator to a
    # random band-limited v = e^{i xi z} phi(z) by pointwise products on a
    # fine grid, then compare with the matrix action on phi's modes
    rng = np.random.default_rng(21)
    b, k, xi, N = 1.0, 1.3, 0.21, 24
    p = solve_profile(WaveParams(k=k, b=b, a=0.07), N=16)
    L = build_L_matrix(p, xi, N)

    vmodes = np.zeros(2 * N + 1, dtype=complex)
    support = rng.choice(np.arange(-6, 7), size=5, replace=False)
    vmodes[support + N] = rng.normal(size=5) + 1j * rng.normal(size=5)

    z = grid(512)
    mu = support + xi

    def v_deriv(order):
        return sum(vmodes[n + N] * (1j * (n + xi)) ** order * np.exp(1j * (n + xi) * z)
                   for n in support)

    w, wz, wzz, wzzz = p(z), p(z, 1), p(z, 2), p(z, 3)
    c = p.c
    direct = (c * v_deriv(1) - c * k**2 * v_deriv(3)
              - 8 * w * wz * v_deriv(0) - 4 * w**2 * v_deriv(1)
              + 3 * k**2 * (wz * wzz * v_deriv(0) + w * wzz * v_deriv(1)
                            + w * wz * v_deriv(2))
              + k**2 * (w**2 * v_deriv(3) + 2 * w * wzzz * v_deriv(0)))
    out = L @ vmodes
    assembled = sum(out[n + N] * np.exp(1j * (n + xi) * z) for n in range(-N, N + 1))
    scale = np.max(np.abs(direct))
    assert np.max(np.abs(assembled - direct)) / scale < 1e-12


def test_convolution_with_unit_coefficient_is_identity():
    p = constant_profile()
    # with w constant the only convolution inputs are constants; the Bloch
    # matrix has no off-diagonal content at all
    m = build_bloch_matrix(p, 0.1, 8).entries
    assert np.max(np.abs(m - np.diag(np.diag(m)))) < 1e-12


def test_truncation_too_small_raises():
    p = solve_profile(WaveParams(k=1.0, a=0.05), N=32)
    with pytest.raises(ValueError):
        build_L_matrix(p, 0.1, 1)


def test_constant_state_frequency_values():
    assert constant_state_frequency(1, 0.0, 1.0, 1.0) == 0.0
    assert constant_state_frequency(-1, 0.0, 1.0, 1.0) == 0.0
    assert constant_state_frequency(0, 0.0, 1.0, 1.0) == 0.0
    # Omega_{2,0} = 6 (c0 - w0^2)/5 at b = k = 1, with c0 - w0^2 = 1.5 (2/3)^{3/4}
    om = constant_state_frequency(2, 0.0, 1.0, 1.0)
    assert om == pytest.approx(1.2 * 1.5 * (2 / 3) ** 0.75, rel=1e-14)
    assert om == pytest.approx(1.3280183, rel=1e-7)
    # odd symmetry
    assert constant_state_frequency(-3, -0.2, 1.0, 1.3) == pytest.approx(
        -constant_state_frequency(3, 0.2, 1.0, 1.3), rel=1e-14)
    assert constant_state_eigenvalue(2, 0.1, 1.0, 1.0) == pytest.approx(
        1j * constant_state_frequency(2, 0.1, 1.0, 1.0))


def test_spectrum_slice_constant_state_multiset():
    p = constant_profile(b=1.0, k=2.0)
    s = spectrum_slice(p, 0.23, 32)
    exact = np.sort(exact_spectrum(1.0, 2.0, 0.23, 32).imag)
    got = np.sort(s.eigenvalues.imag)
    scale = np.max(np.abs(exact))
    assert np.max(np.abs(got - exact)) / scale < 1e-12
    assert np.max(np.abs(s.eigenvalues.real)) < 1e-12


def test_spectrum_slice_sorted_deterministically():
    p = solve_profile(WaveParams(k=1.0, a=0.05))
    s = spectrum_slice(p, 0.07, 32)
    order = np.lexsort((s.eigenvalues.real, s.eigenvalues.imag))
    assert np.array_equal(order, np.arange(len(order)))


def test_stable_side_origin_eigenvalues_on_axis():
    p = solve_profile(WaveParams(k=1.0, a=0.05))
    near = spectrum_slice(p, 0.01, 32).origin_nearest(3)
    assert np.max(np.abs(near.real)) < 1e-8


def test_short_wave_origin_eigenvalues_also_on_axis():
    # Direct computation: for k^2 > 3 the three origin curves still show no
    # measurable real part at this amplitude; the asymptotic classifier's
    # contrary verdict is exercised in test_modulation and test_acceptance.
    p = solve_profile(WaveParams(k=2.0, a=0.05))
    near = spectrum_slice(p, 0.01, 32).origin_nearest(3)
    assert np.max(np.abs(near.real)) < 1e-8


def test_quadruple_symmetry_of_origin_eigenvalues():
    p = solve_profile(WaveParams(k=1.0, a=0.05))
    for xi in (0.01, 0.1):
        plus = spectrum_slice(p, xi, 32).origin_nearest(7)
        minus = spectrum_slice(p, -xi, 32).origin_nearest(7)

        def key(v):
            return np.lexsort((v.real, v.imag))

        conj_neg = -np.conj(plus)
        assert np.max(np.abs(np.sort(conj_neg.imag) - np.sort(plus.imag))) < 1e-8
        assert np.max(np.abs(np.sort((-minus).imag) - np.sort(plus.imag))) < 1e-8
        assert np.max(np.abs(np.sort(conj_neg.real) - np.sort(plus.real))) < 1e-8


def test_imaginary_axis_confinement_constant_state():
    for k in (1.0, 2.0):
        p = constant_profile(k=k)
        for xi in (0.0, 0.25, 0.49):
            s = spectrum_slice(p, xi, 32)
            assert np.max(np.abs(s.eigenvalues.real)) <= 1e-12


def test_resolution_robustness_of_origin_eigenvalues():
    p32 = solve_profile(WaveParams(k=1.0, a=0.05), N=32)
    near32 = spectrum_slice(p32, 0.01, 32).origin_nearest(7)
    near64 = spectrum_slice(p32, 0.01, 64).origin_nearest(7)
    a = near32[np.lexsort((near32.real, near32.imag))]
    b = near64[np.lexsort((near64.real, near64.imag))]
    assert np.max(np.abs(a - b)) < 1e-9


def test_spectrum_sweep_matches_slices_and_order():
    p = solve_profile(WaveParams(k=1.0, a=0.05))
    xi_grid = [0.0, 0.01, 0.02]
    sweep = spectrum_sweep(p, xi_grid, 32)
    assert [s.xi for s in sweep] == xi_grid
    single = spectrum_slice(p, 0.01, 32)
    np.testing.assert_array_equal(sweep[1].eigenvalues, single.eigenvalues)
    parallel = spectrum_sweep(p, xi_grid, 32, workers=2)
    for a, b in zip(sweep, parallel):
        np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)


def test_sweep_reproduces_dispersion_surface():
    p = constant_profile(k=1.5)
    for s in spectrum_sweep(p, [0.1, 0.35], 24):
        exact = np.sort(exact_spectrum(1.0, 1.5, s.xi, 24).imag)
        np.testing.assert_allclose(np.sort(s.eigenvalues.imag), exact,
                                   atol=1e-12 * np.max(np.abs(exact)))


def test_origin_ball_radius():
    r = origin_ball_radius(1.0, 1.0, 0.0, 32)
    assert r == pytest.approx(0.5 * constant_state_frequency(2, 0.0, 1.0, 1.0))
    # at xi > 0 the fourth-smallest |Omega| comes from n = -2
    r = origin_ball_radius(1.0, 1.0, 0.3, 32)
    mags = np.sort(np.abs([constant_state_frequency(n, 0.3, 1.0, 1.0)
                           for n in range(-32, 33)]))
    assert r == pytest.approx(0.5 * mags[3])
    assert r > 0


def test_collision_chain_strict_below_threshold():
    for k, xi in ((1.0, 0.25), (1.7, 0.49)):
        rep = collision_check(1.0, k, xi)
        assert rep.is_strict and rep.advisory is None
        labels = [c[0] for c in rep.chain]
        assert labels[3:6] == ["Omega[0]", "zero", "Omega[-1]"]


def test_collision_chain_continuity_at_small_xi():
    rep = collision_check(1.0, 1.0, 1e-6)
    for n in (-1, 0, 1):
        assert abs(rep.omegas[n]) < 1e-5


def test_collision_advisory_above_threshold():
    rep = collision_check(1.0, 2.0, 0.25)
    assert rep.advisory is not None
    # for k^2 > 3 the chain genuinely breaks: Omega_{-1} overtakes Omega_1,
    # which is exactly why branch collisions away from the origin become
    # possible there
    assert not rep.is_strict
    assert any("Omega[-1]" in v for v in rep.violations)


def test_collision_xi_domain():
    with pytest.raises(ValueError):
        collision_check(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        collision_check(1.0, 1.0, 0.6)


def test_sweep_csv_deterministic(tmp_path):
    p = solve_profile(WaveParams(k=1.0, a=0.05), N=16)
    slices = spectrum_sweep(p, [0.01, 0.02], 16)
    f1 = tmp_path / "s1.csv"
    f2 = tmp_path / "s2.csv"
    sweep_to_csv(slices, f1)
    sweep_to_csv(slices, f2)
    b1, b2 = f1.read_bytes(), f2.read_bytes()
    assert b1 == b2
    lines = b1.decode().splitlines()
    assert lines[0] == "xi,re,im,branch_hint"
    assert len(lines) == 1 + 2 * 33
    assert b"\r" not in b1
    # branch hints form a permutation of the curve indices in every slice
    for xi in (0.01, 0.02):
        hints = sorted(int(l.split(",")[3]) for l in lines[1:]
                       if l.startswith(f"{xi:.17g},"))
        assert hints == list(range(33))
