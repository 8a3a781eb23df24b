import numpy as np
import pytest

from novwave.spectral import (convolution_matrix, eval_cosine_series,
                              fourier_coefficients, grid, modes)


def test_eval_cosine_series_derivatives():
    coeffs = np.array([0.3, 1.0, -0.2, 0.05])
    z = np.linspace(0, 2 * np.pi, 41)
    w = 0.3 + np.cos(z) - 0.2 * np.cos(2 * z) + 0.05 * np.cos(3 * z)
    wz = -np.sin(z) + 0.4 * np.sin(2 * z) - 0.15 * np.sin(3 * z)
    wzz = -np.cos(z) + 0.8 * np.cos(2 * z) - 0.45 * np.cos(3 * z)
    wzzz = np.sin(z) - 1.6 * np.sin(2 * z) + 1.35 * np.sin(3 * z)
    np.testing.assert_allclose(eval_cosine_series(coeffs, z, 0), w, atol=1e-14)
    np.testing.assert_allclose(eval_cosine_series(coeffs, z, 1), wz, atol=1e-14)
    np.testing.assert_allclose(eval_cosine_series(coeffs, z, 2), wzz, atol=1e-13)
    np.testing.assert_allclose(eval_cosine_series(coeffs, z, 3), wzzz, atol=1e-13)


def test_fourier_coefficients_exact_for_trig_polynomials():
    z = grid(32)
    f = 2.0 + np.cos(z) - 3.0 * np.sin(4 * z)
    ch = fourier_coefficients(f)
    assert ch[0] == pytest.approx(2.0, abs=1e-14)
    assert ch[1] == pytest.approx(0.5, abs=1e-14)
    assert ch[4] == pytest.approx(1.5j, abs=1e-14)
    assert ch[-4] == pytest.approx(-1.5j, abs=1e-14)


def test_convolution_with_one_is_identity():
    z = grid(64)
    m = convolution_matrix(np.ones_like(z), 8)
    np.testing.assert_allclose(m, np.eye(17), atol=1e-14)


def test_convolution_matches_pointwise_product():
    # multiplying in mode space equals sampling the product, for bandwidths
    # that fit inside the truncation
    rng = np.random.default_rng(11)
    n = 12
    z = grid(128)
    f = 1.0 + 0.5 * np.cos(z) - 0.2 * np.sin(2 * z)
    m = convolution_matrix(f, n)
    vmodes = np.zeros(2 * n + 1, dtype=complex)
    for mode, amp in ((3, 0.7 + 0.1j), (-2, -0.4)):
        vmodes[mode + n] += amp
    v_z = sum(vmodes[j + n] * np.exp(1j * j * z) for j in range(-n, n + 1))
    out = m @ vmodes
    out_z = sum(out[j + n] * np.exp(1j * j * z) for j in range(-n, n + 1))
    np.testing.assert_allclose(out_z, f * v_z, atol=1e-13)


def test_convolution_undersampled_raises():
    with pytest.raises(ValueError):
        convolution_matrix(np.ones(8), 8)


def test_modes_ordering():
    assert list(modes(2)) == [-2, -1, 0, 1, 2]
