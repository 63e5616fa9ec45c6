"""Taylor-jet arithmetic against a finite-difference oracle.

The oracle differentiates plain scalar evaluations of the same composite
functions with 4th-order central stencils, so jet propagation (Leibniz and
chain rules up to third order) is checked independently.
"""

import numpy as np
import pytest

from vectorlight.jets import Jet

STEP = 1e-6


def composite(points):
    """A deliberately messy smooth function exercising every jet operation."""
    x, y, z = points[..., 0], points[..., 1], points[..., 2]
    w = 1.0 / (1.0 + 1j * z / 0.7)
    return (
        (x + 1j * y) ** 2
        * np.exp(-(x * x + y * y) * w + 0.3j * z)
        * np.sqrt(1.0 + z * z)
        * np.arctan(z / 1.3)
        + 2.5
        - 0.4 * (x - 0.2) ** 3
    )


def composite_jet(points, order):
    x = Jet.coordinate(points, 0, order)
    y = Jet.coordinate(points, 1, order)
    z = Jet.coordinate(points, 2, order)
    w = (1.0 + (1j / 0.7) * z).reciprocal()
    rho2 = x * x + y * y
    out = (
        (x + 1j * y).ipow(2)
        * (-rho2 * w + 0.3j * z).exp()
        * (1.0 + z * z).sqrt()
        * (z * (1.0 / 1.3)).arctan()
        + 2.5
        - 0.4 * (x - 0.2).ipow(3)
    )
    return out


def fd_gradient(f, points, h=STEP):
    """4th-order central difference; f may return extra trailing axes."""
    sample = f(points)
    out = np.empty(sample.shape + (3,), dtype=complex)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        out[..., i] = (
            -f(points + 2 * e) + 8 * f(points + e) - 8 * f(points - e) + f(points - 2 * e)
        ) / (12 * h)
    return out


def fd_hessian(f, points, h=1e-3):
    # nested stencils: larger step balances eps/h^2 roundoff vs h^4 truncation
    return fd_gradient(lambda p: fd_gradient(f, p, h), points, h)


@pytest.fixture(scope="module")
def probe_points():
    rng = np.random.default_rng(42)
    pts = rng.uniform(-0.8, 0.8, size=(12, 3))
    pts[0] = 0.0
    return pts


def test_jet_value_matches_plain_evaluation(probe_points):
    jet = composite_jet(probe_points, 3)
    assert np.max(np.abs(jet.val - composite(probe_points))) < 1e-13


def test_jet_gradient_matches_fd(probe_points):
    jet = composite_jet(probe_points, 1)
    fd = fd_gradient(composite, probe_points)
    scale = np.max(np.abs(fd))
    assert np.max(np.abs(jet.g - fd)) < 1e-7 * scale


def test_jet_hessian_matches_fd_and_is_symmetric(probe_points):
    jet = composite_jet(probe_points, 2)
    fd = fd_hessian(composite, probe_points)
    scale = np.max(np.abs(fd))
    assert np.max(np.abs(jet.h - fd)) < 1e-5 * scale
    sym_err = np.max(np.abs(jet.h - np.swapaxes(jet.h, -1, -2)))
    assert sym_err < 1e-13 * np.max(np.abs(jet.h))


def test_jet_third_order_matches_fd_of_hessian(probe_points):
    jet = composite_jet(probe_points, 3)
    fd3 = fd_gradient(lambda p: composite_jet(p, 2).h.reshape(p.shape[:-1] + (9,)), probe_points)
    fd3 = fd3.reshape(probe_points.shape[:-1] + (3, 3, 3))
    # fd3[..., i, j, p]: derivative d_p of h_{ij}; jet.t is d_i d_j d_k f
    fd3 = np.moveaxis(fd3, -1, -3)
    scale = np.max(np.abs(fd3))
    assert np.max(np.abs(jet.t - fd3)) < 1e-6 * scale
    for perm in ((0, 2, 1), (1, 0, 2), (2, 1, 0)):
        permuted = np.transpose(
            jet.t, tuple(range(jet.t.ndim - 3)) + tuple(jet.t.ndim - 3 + p for p in perm)
        )
        assert np.max(np.abs(jet.t - permuted)) < 1e-13


def test_partial_shifts_derivative_data(probe_points):
    jet = composite_jet(probe_points, 3)
    dx = jet.partial(0)
    assert dx.order == 2
    assert np.array_equal(dx.val, jet.g[..., 0])
    assert np.array_equal(dx.g, jet.h[..., 0, :])
    assert np.array_equal(dx.h, jet.t[..., 0, :, :])


def test_order_mismatch_and_bad_order_raise():
    a = Jet.constant(1.0, 2, (4,))
    b = Jet.constant(1.0, 1, (4,))
    with pytest.raises(ValueError):
        _ = a * b
    with pytest.raises(ValueError):
        Jet(5, np.zeros(3))
    with pytest.raises(ValueError):
        Jet.constant(1.0, 0, (2,)).partial(0)
    with pytest.raises(ValueError):
        a.ipow(-1)


def test_scalar_arithmetic_broadcast():
    pts = np.zeros((5, 3))
    pts[:, 2] = np.linspace(-1, 1, 5)
    z = Jet.coordinate(pts, 2, 3)
    jet = 2.0 * z - (z / 2.0) + (1.0 - z)
    want = 2.0 * pts[:, 2] - pts[:, 2] / 2.0 + 1.0 - pts[:, 2]
    assert np.max(np.abs(jet.val - want)) < 1e-15
    assert np.max(np.abs(jet.g[:, 2] - 0.5)) < 1e-15
    assert np.max(np.abs(jet.h)) == 0.0
