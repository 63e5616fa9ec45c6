"""Shared fixtures: probe points and the five standard beam types."""

import numpy as np
import pytest

from vectorlight.beams import BeamSpec, make_radial_azimuthal

WAIST = 1.0e-6
WAVELENGTH = 0.729e-6


def make_probe_points(waist=WAIST, wavelength=WAVELENGTH, n_random=16, seed=7):
    """Origin plus random points spanning the focal region."""
    import math

    k = 2.0 * math.pi / wavelength
    zr = 0.5 * k * waist**2
    rng = np.random.default_rng(seed)
    pts = np.empty((1 + n_random, 3))
    pts[0] = 0.0
    pts[1:, :2] = rng.uniform(-1.2 * waist, 1.2 * waist, (n_random, 2))
    pts[1:, 2] = rng.uniform(-0.8 * zr, 0.8 * zr, n_random)
    return pts


def make_five_beams(waist=WAIST, wavelength=WAVELENGTH):
    """The five beam types used throughout the figure scans."""
    return [
        ("lg_plus", BeamSpec.lg(1, 0, sigma=+1, waist=waist, wavelength=wavelength)),
        ("lg_minus", BeamSpec.lg(1, 0, sigma=-1, waist=waist, wavelength=wavelength)),
        ("hg10", BeamSpec.hg(1, 0, sigma=+1, waist=waist, wavelength=wavelength)),
        ("radial", make_radial_azimuthal("radial", waist, wavelength)),
        ("azimuthal", make_radial_azimuthal("azimuthal", waist, wavelength)),
    ]


@pytest.fixture(scope="session")
def probe_points():
    return make_probe_points()


@pytest.fixture(scope="session")
def five_beams():
    return make_five_beams()
