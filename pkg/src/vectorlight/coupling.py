"""Relative electronic transition strengths from field values and gradients.

A transition of multipole order E1 couples to the field components, E2 to the
nine gradients d_i E_j.  Each allowed projection change dm has a fixed table
of complex slot coefficients; the relative strength is the Clebsch-Gordan
weighted contraction of the dm = m2 - m1 table with the sampled field.

Rotating the quantization axis away from the beam axis is implemented by
conjugating each coefficient table with the Cartesian rotation that carries
the beam frame onto the atom frame.  That is algebraically identical to
evaluating the unrotated tables against the field expressed in the atom
frame, which is also the independent oracle used in the tests.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .beams import BeamSpec, FieldSample, field_sample_upto
from .special import HalfInt, clebsch_gordan, halfint, rotation_matrix

__all__ = [
    "Multipole",
    "TransitionSpec",
    "Geometry",
    "CouplingCoefficients",
    "coefficients_for",
    "rotate_coefficients",
    "relative_strength",
    "strength_gradient",
    "averaged_strength",
    "averaged_strength_rms",
]


class Multipole(enum.Enum):
    """Multipole order and total-angular-momentum change of a transition."""

    E1 = "E1"
    E2_DJ1 = "E2_dJ1"
    E2_DJ2 = "E2_dJ2"

    @property
    def delta_j(self) -> int:
        return 2 if self is Multipole.E2_DJ2 else 1

    @property
    def uses_gradient(self) -> bool:
        return self is not Multipole.E1

    @classmethod
    def parse(cls, text: str) -> "Multipole":
        key = text.strip().lower().replace("-", "_")
        for member in cls:
            if member.value.lower() == key or member.name.lower() == key:
                return member
        raise ValueError(f"unknown multipole {text!r}")


@dataclass(frozen=True)
class TransitionSpec:
    """Electronic transition |J1 m1> -> |J2 m2> of a given multipole order.

    Projections must be valid for their J.  Selection-rule violations
    (projection change out of range, triangle rule) are representable and
    evaluate to exactly zero strength rather than raising.
    """

    J1: HalfInt
    m1: HalfInt
    J2: HalfInt
    m2: HalfInt
    multipole: Multipole

    def __post_init__(self):
        for name in ("J1", "m1", "J2", "m2"):
            object.__setattr__(self, name, halfint(getattr(self, name)))
        if not self.m1.is_projection_of(self.J1):
            raise ValueError(f"m1={self.m1} is not a projection of J1={self.J1}")
        if not self.m2.is_projection_of(self.J2):
            raise ValueError(f"m2={self.m2} is not a projection of J2={self.J2}")
        if not isinstance(self.multipole, Multipole):
            object.__setattr__(self, "multipole", Multipole.parse(self.multipole))

    @property
    def delta_m(self) -> HalfInt:
        return self.m2 - self.m1

    def triangle_allowed(self) -> bool:
        dj = HalfInt(2 * self.multipole.delta_j)
        return abs(self.J1 - dj) <= self.J2 <= self.J1 + dj


@dataclass(frozen=True, eq=False)
class Geometry:
    """Quantization-axis orientation: rotation by theta about a unit axis.

    theta = 0 leaves the quantization axis along the beam axis z; the default
    rotation axis is y, tilting the quantization axis within the x-z plane.
    """

    theta: float = 0.0
    axis: np.ndarray = None

    def __post_init__(self):
        axis = (0.0, 1.0, 0.0) if self.axis is None else self.axis
        a = np.asarray(axis, dtype=float)
        if a.shape != (3,):
            raise ValueError("axis must be a 3-vector")
        norm = np.linalg.norm(a)
        if norm == 0.0:
            raise ValueError("axis must be nonzero")
        a = a / norm
        a.flags.writeable = False
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "axis", a)

    def rotation(self) -> np.ndarray:
        return rotation_matrix(self.theta, self.axis)


def _readonly(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class CouplingCoefficients:
    """Per-dm slot-coefficient tables of one multipole order.

    E1 tables are length-3 vectors over field components; E2 tables are 3x3
    matrices over gradient slots (i, j) meaning d_i E_j.  Tables are
    read-only; common radial prefactors are factored out since only relative
    strengths are meaningful.
    """

    multipole: Multipole
    channels: Mapping[int, np.ndarray]

    def __getitem__(self, dm: int) -> np.ndarray:
        return self.channels[dm]

    @property
    def delta_j(self) -> int:
        return self.multipole.delta_j


_SQRT2 = math.sqrt(2.0)
_I = 1.0j

_E1_TABLES = {
    +1: _readonly([1.0, -_I, 0.0]),
    0: _readonly([0.0, 0.0, _SQRT2]),
    -1: _readonly([1.0, +_I, 0.0]),
}

# gradient slot convention: row index i, column index j in d_i E_j
_E2_DJ1_TABLES = {
    +1: _readonly([[0, 0, 1], [0, 0, -_I], [-1, _I, 0]]),
    0: _readonly([[0, _I * _SQRT2, 0], [-_I * _SQRT2, 0, 0], [0, 0, 0]]),
    -1: _readonly([[0, 0, -1], [0, 0, -_I], [1, _I, 0]]),
}

_E2_DJ2_TABLES = {
    +2: _readonly([[1, -_I, 0], [-_I, -1, 0], [0, 0, 0]]),
    +1: _readonly([[0, 0, 1], [0, 0, -_I], [1, -_I, 0]]),
    0: _readonly(math.sqrt(2.0 / 3.0)
                 * np.array([[1, 0, 0], [0, 1, 0], [0, 0, 2.0]])),
    -1: _readonly([[0, 0, 1], [0, 0, _I], [1, _I, 0]]),
    -2: _readonly([[1, _I, 0], [_I, -1, 0], [0, 0, 0]]),
}

_STATIC_TABLES = {
    Multipole.E1: CouplingCoefficients(Multipole.E1, MappingProxyType(_E1_TABLES)),
    Multipole.E2_DJ1: CouplingCoefficients(Multipole.E2_DJ1,
                                           MappingProxyType(_E2_DJ1_TABLES)),
    Multipole.E2_DJ2: CouplingCoefficients(Multipole.E2_DJ2,
                                           MappingProxyType(_E2_DJ2_TABLES)),
}


def coefficients_for(multipole: Multipole) -> CouplingCoefficients:
    """Static slot-coefficient tables with the quantization axis along z."""
    return _STATIC_TABLES[multipole]


def rotate_coefficients(coeffs: CouplingCoefficients,
                        geom: Geometry) -> CouplingCoefficients:
    """Coefficient tables for a quantization axis rotated by the geometry.

    theta = 0 returns the input object unchanged, so unrotated evaluations
    are bit-identical to evaluations with the static tables.
    """
    if geom.theta == 0.0:
        return coeffs
    rot = geom.rotation()
    rotated = {}
    for dm, table in coeffs.channels.items():
        if table.ndim == 1:
            rotated[dm] = _readonly(rot @ table)
        else:
            rotated[dm] = _readonly(rot @ table @ rot.T)
    return CouplingCoefficients(coeffs.multipole, MappingProxyType(rotated))


def _selection(trans: TransitionSpec):
    """CG weight and integer dm of the only contributing channel, or None."""
    if not trans.triangle_allowed():
        return None
    dm = trans.delta_m
    if not dm.is_integer:
        return None
    dmi = int(float(dm))
    if abs(dmi) > trans.multipole.delta_j:
        return None
    cg = clebsch_gordan(trans.J1, trans.m1, trans.multipole.delta_j, dmi,
                        trans.J2, trans.m2)
    if cg == 0.0:
        return None
    return cg, dmi


def relative_strength(sample: FieldSample, trans: TransitionSpec,
                      geom: Geometry = None) -> np.ndarray:
    """Relative transition strength mu at the sampled point(s).

    Although formally a sum over all dm channels, the Clebsch-Gordan factor
    restricts it to the single channel dm = m2 - m1; selection-rule failures
    return exact zeros.
    """
    geom = geom or Geometry()
    data = sample.jacobian if trans.multipole.uses_gradient else sample.electric
    sel = _selection(trans)
    if sel is None:
        shape = data.shape[:-2] if trans.multipole.uses_gradient else data.shape[:-1]
        return np.zeros(shape, dtype=complex)
    cg, dmi = sel
    table = rotate_coefficients(coefficients_for(trans.multipole), geom)[dmi]
    if trans.multipole.uses_gradient:
        return cg * np.einsum("...ij,ij->...", data, table)
    return cg * np.einsum("...j,j->...", data, table)


def strength_gradient(sample: FieldSample, trans: TransitionSpec,
                      geom: Geometry = None) -> np.ndarray:
    """Spatial gradient of mu, shape (..., 3); needs one extra field order."""
    geom = geom or Geometry()
    data = sample.hessian if trans.multipole.uses_gradient else sample.jacobian
    sel = _selection(trans)
    if sel is None:
        extra = 2 if trans.multipole.uses_gradient else 1
        return np.zeros(data.shape[:-extra - 1] + (3,), dtype=complex)
    cg, dmi = sel
    table = rotate_coefficients(coefficients_for(trans.multipole), geom)[dmi]
    if trans.multipole.uses_gradient:
        return cg * np.einsum("...pij,ij->...p", data, table)
    return cg * np.einsum("...pj,j->...p", data, table)


# ---------------------------------------------------------------------------
# wavefunction averaging


def _quadrature_strengths(spec: BeamSpec, center, widths, trans: TransitionSpec,
                          geom: Geometry, order: int):
    """Gauss-Hermite weights and mu values over the thermal-state cloud."""
    if int(order) != order or order < 1:
        raise ValueError("quadrature order must be a positive integer")
    w = np.asarray(widths, dtype=float)
    if w.shape != (3,):
        raise ValueError("widths must be a per-axis triple")
    if np.any(w <= 0.0):
        raise ValueError("widths must be positive")
    nodes, weights = np.polynomial.hermite.hermgauss(int(order))
    # |psi|^2 with per-axis RMS width s gives exp(-q^2 / 2 s^2): substitute
    # q = sqrt(2) s t to reach the Gauss-Hermite weight exp(-t^2)
    qx, qy, qz = np.meshgrid(*(math.sqrt(2.0) * w[a] * nodes for a in range(3)),
                             indexing="ij")
    offs = np.stack([qx.ravel(), qy.ravel(), qz.ravel()], axis=-1)
    w3 = (weights[:, None, None] * weights[None, :, None]
          * weights[None, None, :]).ravel() * math.pi ** -1.5
    pts = np.asarray(center, dtype=float) + offs
    order = 1 if trans.multipole.uses_gradient else 0
    mu = relative_strength(field_sample_upto(spec, pts, order), trans, geom)
    return w3, mu


def averaged_strength(spec: BeamSpec, center, widths, trans: TransitionSpec,
                      geom: Geometry = None, quadrature_order: int = 15) -> complex:
    """mu averaged over a separable Gaussian position distribution.

    `widths` are per-axis RMS widths of the wavepacket probability density.
    """
    w3, mu = _quadrature_strengths(spec, center, widths, trans,
                                   geom or Geometry(), quadrature_order)
    return complex(np.sum(w3 * mu))


def averaged_strength_rms(spec: BeamSpec, center, widths, trans: TransitionSpec,
                          geom: Geometry = None, quadrature_order: int = 15) -> float:
    """Root-mean-square of mu over the same distribution.

    Complements `averaged_strength` where odd symmetry makes the amplitude
    average vanish identically (e.g. at a vortex center) while the cloud
    still overlaps regions of finite strength.
    """
    w3, mu = _quadrature_strengths(spec, center, widths, trans,
                                   geom or Geometry(), quadrature_order)
    return float(math.sqrt(np.sum(w3 * np.abs(mu) ** 2)))
