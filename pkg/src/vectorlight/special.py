"""Exact small-quantum-number angular momentum algebra and orthogonal polynomials.

Clebsch-Gordan coefficients and Wigner rotation matrices are evaluated from
closed-form factorial sums with exact integer arithmetic (Fractions), so the
results are correct to floating-point rounding for the small j used here.
Condon-Shortley phase conventions throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "HalfInt",
    "halfint",
    "laguerre",
    "hermite",
    "clebsch_gordan",
    "wigner_small_d",
    "wigner_d_matrix",
    "rotation_matrix",
    "euler_zyz",
    "wigner_D_matrix",
]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-integer stored exactly as twice its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int):
            raise TypeError("twice must be an int")

    @staticmethod
    def coerce(value) -> "HalfInt":
        """Accept HalfInt, int, Fraction, float or strings like '3/2'."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, (int, np.integer)):
            return HalfInt(2 * int(value))
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise ValueError(f"{value} is not an integer or half-integer")
            return HalfInt(int(doubled))
        if isinstance(value, str):
            text = value.strip()
            if "/" in text:
                num, den = text.split("/")
                return HalfInt.coerce(Fraction(int(num), int(den)))
            return HalfInt.coerce(Fraction(text))
        if isinstance(value, (float, np.floating)):
            doubled = 2.0 * float(value)
            rounded = round(doubled)
            if abs(doubled - rounded) > 1e-9:
                raise ValueError(f"{value} is not an integer or half-integer")
            return HalfInt(int(rounded))
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.coerce(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.coerce(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.coerce(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __float__(self):
        return self.twice / 2.0

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def is_projection_of(self, j: "HalfInt") -> bool:
        """True if self is a valid magnetic quantum number for total j."""
        return abs(self.twice) <= j.twice and (j.twice - self.twice) % 2 == 0


def halfint(value) -> HalfInt:
    return HalfInt.coerce(value)


def laguerre(p: int, alpha: int, x):
    """Generalized Laguerre polynomial L_p^alpha(x) by the three-term recurrence.

    Vectorized over x; p < 0 returns 0 (convenient for derivative ladders).
    """
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    x = np.asarray(x)
    if p < 0:
        return np.zeros_like(x, dtype=x.dtype)
    prev = np.ones_like(x)
    if p == 0:
        return prev
    cur = 1 + alpha - x
    for n in range(1, p):
        prev, cur = cur, ((2 * n + 1 + alpha - x) * cur - (n + alpha) * prev) / (n + 1)
    return cur


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by recurrence, vectorized over x."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 2 * x
    for m in range(1, n):
        prev, cur = cur, 2 * x * cur - 2 * m * prev
    return cur


def _check_jm(tj: int, tm: int, label: str):
    if tj < 0:
        raise ValueError(f"{label}: j must be non-negative")
    if (tj - tm) % 2 != 0:
        raise ValueError(f"{label}: m and j must both be integer or both half-integer")
    if abs(tm) > tj:
        raise ValueError(f"{label}: |m| cannot exceed j")


def _fact(n: int) -> int:
    if n < 0:
        raise ValueError("negative factorial")
    return math.factorial(n)


def clebsch_gordan(j1, m1, j2, m2, j, m) -> float:
    """Clebsch-Gordan coefficient <j1 m1 j2 m2 | j m> (Condon-Shortley).

    Returns exactly 0.0 when m != m1 + m2 or the triangle rule fails.
    Invalid (j, m) pairings raise ValueError.
    """
    tj1, tm1 = halfint(j1).twice, halfint(m1).twice
    tj2, tm2 = halfint(j2).twice, halfint(m2).twice
    tj, tm = halfint(j).twice, halfint(m).twice
    _check_jm(tj1, tm1, "(j1, m1)")
    _check_jm(tj2, tm2, "(j2, m2)")
    _check_jm(tj, tm, "(j, m)")

    if tm1 + tm2 != tm:
        return 0.0
    # Triangle rule, including the requirement that j1 + j2 + j is an integer.
    if (tj1 + tj2 + tj) % 2 != 0:
        return 0.0
    if tj < abs(tj1 - tj2) or tj > tj1 + tj2:
        return 0.0

    # Racah's closed form with exact integer factorials.
    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tj2 + tj) // 2
    c = (-tj1 + tj2 + tj) // 2
    pref2 = Fraction(tj + 1)
    pref2 *= Fraction(_fact(a) * _fact(b) * _fact(c), _fact((tj1 + tj2 + tj) // 2 + 1))
    for tjj, tmm in ((tj, tm), (tj1, tm1), (tj2, tm2)):
        pref2 *= _fact((tjj + tmm) // 2) * _fact((tjj - tmm) // 2)

    k_min = max(0, (tj2 - tj - tm1) // 2, (tj1 + tm2 - tj) // 2)
    k_max = min(a, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        den = (
            _fact(k)
            * _fact(a - k)
            * _fact((tj1 - tm1) // 2 - k)
            * _fact((tj2 + tm2) // 2 - k)
            * _fact((tj - tj2 + tm1) // 2 + k)
            * _fact((tj - tj1 - tm2) // 2 + k)
        )
        total += Fraction(-1 if k % 2 else 1, den)
    if total == 0:
        return 0.0
    return float(total) * math.sqrt(float(pref2))


def wigner_small_d(j, m_out, m_in, theta: float) -> float:
    """Wigner small-d matrix element d^j_{m_out, m_in}(theta).

    Convention d^j_{m', m}(theta) = <j m'| exp(-i theta J_y) |j m>, evaluated
    from the explicit factorial sum.
    """
    tj = halfint(j).twice
    tmo = halfint(m_out).twice
    tmi = halfint(m_in).twice
    _check_jm(tj, tmo, "(j, m_out)")
    _check_jm(tj, tmi, "(j, m_in)")

    pref = math.sqrt(
        _fact((tj + tmo) // 2)
        * _fact((tj - tmo) // 2)
        * _fact((tj + tmi) // 2)
        * _fact((tj - tmi) // 2)
    )
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    dm = (tmo - tmi) // 2  # m_out - m_in, always an integer
    k_min = max(0, -dm)
    k_max = min((tj + tmi) // 2, (tj - tmo) // 2)
    total = 0.0
    for k in range(k_min, k_max + 1):
        den = (
            _fact((tj + tmi) // 2 - k)
            * _fact(k)
            * _fact(dm + k)
            * _fact((tj - tmo) // 2 - k)
        )
        sign = -1.0 if (dm + k) % 2 else 1.0
        total += sign * c ** (tj - dm - 2 * k) * s ** (dm + 2 * k) / den
    return pref * total


def _m_values(tj: int):
    """Magnetic quantum numbers for total j, ordered m = +j ... -j (twice-values)."""
    return list(range(tj, -tj - 1, -2))


def wigner_d_matrix(j, theta: float) -> np.ndarray:
    """Real (2j+1)x(2j+1) matrix of d^j_{m', m}(theta), rows/cols ordered +j..-j."""
    tj = halfint(j).twice
    ms = _m_values(tj)
    out = np.empty((len(ms), len(ms)))
    for i, tmo in enumerate(ms):
        for k, tmi in enumerate(ms):
            out[i, k] = wigner_small_d(HalfInt(tj), HalfInt(tmo), HalfInt(tmi), theta)
    return out


def rotation_matrix(theta: float, axis) -> np.ndarray:
    """Active 3x3 rotation by angle theta about a (unit) axis, via Rodrigues."""
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if not norm > 0:
        raise ValueError("rotation axis must be a nonzero vector")
    a = axis / norm
    cross = np.array(
        [[0.0, -a[2], a[1]], [a[2], 0.0, -a[0]], [-a[1], a[0], 0.0]]
    )
    return (
        math.cos(theta) * np.eye(3)
        + math.sin(theta) * cross
        + (1.0 - math.cos(theta)) * np.outer(a, a)
    )


def euler_zyz(rot: np.ndarray):
    """Decompose an active rotation matrix as Rz(alpha) @ Ry(beta) @ Rz(gamma)."""
    rot = np.asarray(rot, dtype=float)
    if rot.shape != (3, 3):
        raise ValueError("expected a 3x3 rotation matrix")
    sin_beta = math.hypot(rot[0, 2], rot[1, 2])
    beta = math.atan2(sin_beta, rot[2, 2])
    if sin_beta > 1e-12:
        alpha = math.atan2(rot[1, 2], rot[0, 2])
        gamma = math.atan2(rot[2, 1], -rot[2, 0])
    elif rot[2, 2] > 0.0:  # beta ~ 0: only alpha + gamma is determined
        alpha = math.atan2(rot[1, 0], rot[0, 0])
        gamma = 0.0
    else:  # beta ~ pi: only alpha - gamma is determined
        alpha = math.atan2(-rot[1, 0], -rot[0, 0])
        gamma = 0.0
    return alpha, beta, gamma


def wigner_D_matrix(j, theta: float, axis) -> np.ndarray:
    """Complex Wigner D^j for an active rotation by theta about axis.

    Element [i, k] = D^j_{m_i, m_k} = exp(-i m_i alpha) d^j_{m_i m_k}(beta)
    exp(-i m_k gamma) with zyz Euler angles of the rotation; m ordered +j..-j.
    A set of spherical components A_m transforms as A'_m = sum_m' D_{m m'} A_m'.
    """
    tj = halfint(j).twice
    alpha, beta, gamma = euler_zyz(rotation_matrix(theta, axis))
    ms = np.array(_m_values(tj)) / 2.0
    small = wigner_d_matrix(HalfInt(tj), beta)
    return (
        np.exp(-1j * ms[:, None] * alpha) * small * np.exp(-1j * ms[None, :] * gamma)
    )
