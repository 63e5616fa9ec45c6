"""Truncated multivariate Taylor expansions ("jets") in three coordinates.

A Jet carries the value and the first-, second- and third-derivative tensors
of a smooth complex-valued function at a batch of points, with exact
propagation through arithmetic (Leibniz rule) and smooth unary composition
(Faa di Bruno up to third order).  The beam-field evaluator builds closed-form
mode functions out of these, so every spatial derivative it reports is exact
rather than numerical.

Derivative tensors are stored fully symmetrized: g[..., i] = d_i f,
h[..., i, j] = d_i d_j f, t[..., i, j, k] = d_i d_j d_k f.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Jet"]


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]


def _sym_hg(h, g):
    """Symmetrized h_{ij} g_k over the three index slots."""
    return (
        h[..., :, :, None] * g[..., None, None, :]
        + h[..., :, None, :] * g[..., None, :, None]
        + h[..., None, :, :] * g[..., :, None, None]
    )


class Jet:
    """Taylor data of one scalar function over an arbitrary batch shape."""

    __slots__ = ("order", "val", "g", "h", "t")

    def __init__(self, order, val, g=None, h=None, t=None):
        if order not in (0, 1, 2, 3):
            raise ValueError("jet order must be 0..3")
        self.order = order
        self.val = np.asarray(val, dtype=complex)
        shape = self.val.shape
        self.g = g if order < 1 else self._blk(g, shape + (3,))
        self.h = h if order < 2 else self._blk(h, shape + (3, 3))
        self.t = t if order < 3 else self._blk(t, shape + (3, 3, 3))

    @staticmethod
    def _blk(arr, shape):
        if arr is None:
            return np.zeros(shape, dtype=complex)
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != shape:
            raise ValueError(f"expected derivative block of shape {shape}")
        return arr

    # ------------------------------------------------------------ builders

    @classmethod
    def constant(cls, value, order, shape=()):
        return cls(order, np.broadcast_to(np.asarray(value, dtype=complex), shape).copy())

    @classmethod
    def coordinate(cls, points, index, order):
        """Jet of the coordinate function r -> r[index] over points (..., 3)."""
        points = np.asarray(points, dtype=float)
        val = points[..., index].astype(complex)
        jet = cls(order, val)
        if order >= 1:
            jet.g[..., index] = 1.0
        return jet

    # ----------------------------------------------------------- arithmetic

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet order mismatch")
            return other
        return Jet.constant(other, self.order, self.val.shape)

    def __add__(self, other):
        o = self._coerce(other)
        return Jet(
            self.order,
            self.val + o.val,
            None if self.order < 1 else self.g + o.g,
            None if self.order < 2 else self.h + o.h,
            None if self.order < 3 else self.t + o.t,
        )

    __radd__ = __add__

    def __neg__(self):
        return Jet(
            self.order,
            -self.val,
            None if self.order < 1 else -self.g,
            None if self.order < 2 else -self.h,
            None if self.order < 3 else -self.t,
        )

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):  # scalar fast path
            c = complex(other)
            return Jet(
                self.order,
                self.val * c,
                None if self.order < 1 else self.g * c,
                None if self.order < 2 else self.h * c,
                None if self.order < 3 else self.t * c,
            )
        o = self._coerce(other)
        n = self.order
        val = self.val * o.val
        g = h = t = None
        if n >= 1:
            g = self.g * o.val[..., None] + o.g * self.val[..., None]
        if n >= 2:
            h = (
                self.h * o.val[..., None, None]
                + o.h * self.val[..., None, None]
                + _outer(self.g, o.g)
                + _outer(o.g, self.g)
            )
        if n >= 3:
            t = (
                self.t * o.val[..., None, None, None]
                + o.t * self.val[..., None, None, None]
                + _sym_hg(self.h, o.g)
                + _sym_hg(o.h, self.g)
            )
        return Jet(n, val, g, h, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / complex(other))

    # ---------------------------------------------------------- composition

    def compose(self, f0, f1=None, f2=None, f3=None):
        """Jet of f(self) given derivative arrays f^(k) evaluated at self.val."""
        n = self.order
        val = np.asarray(f0, dtype=complex)
        g = h = t = None
        if n >= 1:
            f1 = np.asarray(f1, dtype=complex)
            g = f1[..., None] * self.g
        if n >= 2:
            f2 = np.asarray(f2, dtype=complex)
            gg = _outer(self.g, self.g)
            h = f2[..., None, None] * gg + f1[..., None, None] * self.h
        if n >= 3:
            f3 = np.asarray(f3, dtype=complex)
            ggg = (
                self.g[..., :, None, None]
                * self.g[..., None, :, None]
                * self.g[..., None, None, :]
            )
            t = (
                f3[..., None, None, None] * ggg
                + f2[..., None, None, None] * _sym_hg(self.h, self.g)
                + f1[..., None, None, None] * self.t
            )
        return Jet(n, val, g, h, t)

    def exp(self):
        e = np.exp(self.val)
        return self.compose(e, e, e, e)

    def reciprocal(self):
        r = 1.0 / self.val
        r2 = r * r
        return self.compose(r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2)

    def sqrt(self):
        s = np.sqrt(self.val)
        inv = 0.5 / s
        return self.compose(s, inv, -0.5 * inv / self.val, 0.75 * inv / self.val**2)

    def arctan(self):
        u = self.val
        d1 = 1.0 / (1.0 + u * u)
        d2 = -2.0 * u * d1 * d1
        d3 = (6.0 * u * u - 2.0) * d1 * d1 * d1
        return self.compose(np.arctan(u), d1, d2, d3)

    def ipow(self, n: int):
        if n < 0:
            raise ValueError("negative integer power not supported")
        out = Jet.constant(1.0, self.order, self.val.shape)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -------------------------------------------------------------- access

    def truncate(self, order: int) -> "Jet":
        """View of this jet carrying only derivative blocks up to `order`."""
        if order > self.order:
            raise ValueError("cannot raise jet order by truncation")
        return Jet(
            order,
            self.val,
            None if order < 1 else self.g,
            None if order < 2 else self.h,
            None if order < 3 else self.t,
        )

    def partial(self, index: int) -> "Jet":
        """Jet (one order lower) of the derivative d_index f."""
        if self.order < 1:
            raise ValueError("cannot take a derivative of an order-0 jet")
        n = self.order - 1
        return Jet(
            n,
            self.g[..., index],
            None if n < 1 else self.h[..., index, :],
            None if n < 2 else self.t[..., index, :, :],
            None,
        )
