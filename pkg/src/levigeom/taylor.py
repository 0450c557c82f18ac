"""Second-order truncated Taylor arithmetic in the Wirtinger variables.

A :class:`Taylor` holds an array-valued quantity together with its first and
second partial derivatives with respect to the ``m = 2(n+1)`` independent
variables (z_1, ..., z_{n+1}, conj z_1, ..., conj z_{n+1}) at one point.
Derivative axes are trailing: ``val`` has shape ``S``, ``d1`` shape
``S + (m,)`` and ``d2`` shape ``S + (m, m)``.  Products truncate to the lower
order of the operands, so the result of any expression is exact up to the
order it carries.
"""
from __future__ import annotations

import numpy as np

__all__ = ["Taylor", "stack", "concat", "as_taylor"]


class Taylor:
    __slots__ = ("val", "d1", "d2")

    def __init__(self, val, d1=None, d2=None):
        self.val = np.asarray(val, dtype=complex)
        self.d1 = None if d1 is None else np.asarray(d1, dtype=complex)
        self.d2 = None if (d2 is None or d1 is None) else np.asarray(d2, dtype=complex)

    @property
    def order(self) -> int:
        return 0 if self.d1 is None else (1 if self.d2 is None else 2)

    @property
    def shape(self):
        return self.val.shape

    @property
    def m(self) -> int | None:
        return None if self.d1 is None else self.d1.shape[-1]

    def __repr__(self):
        return f"Taylor(shape={self.shape}, order={self.order})"

    # -- structure ------------------------------------------------------

    def truncate(self, order: int) -> "Taylor":
        if order >= self.order:
            return self
        if order == 0:
            return Taylor(self.val)
        return Taylor(self.val, self.d1)

    def __getitem__(self, idx) -> "Taylor":
        return Taylor(
            self.val[idx],
            None if self.d1 is None else self.d1[idx],
            None if self.d2 is None else self.d2[idx],
        )

    def sum(self, axis: int) -> "Taylor":
        axis = axis % self.val.ndim
        return Taylor(
            self.val.sum(axis),
            None if self.d1 is None else self.d1.sum(axis),
            None if self.d2 is None else self.d2.sum(axis),
        )

    def expand(self, axis: int) -> "Taylor":
        """Insert a length-1 value axis (like ``np.expand_dims``)."""
        axis = axis % (self.val.ndim + 1)
        return Taylor(
            np.expand_dims(self.val, axis),
            None if self.d1 is None else np.expand_dims(self.d1, axis),
            None if self.d2 is None else np.expand_dims(self.d2, axis),
        )

    def transpose(self, *axes) -> "Taylor":
        k = self.val.ndim
        return Taylor(
            self.val.transpose(axes),
            None if self.d1 is None else self.d1.transpose(*axes, k),
            None if self.d2 is None else self.d2.transpose(*axes, k, k + 1),
        )

    def take(self, indices, axis: int) -> "Taylor":
        """``np.take`` along a value axis."""
        axis = axis % self.val.ndim
        return type(self)(*(None if a is None else np.take(a, indices, axis)
                            for a in (self.val, self.d1, self.d2)))

    def partials(self) -> "Taylor":
        """The gradient as a Taylor of one order lower; last value axis is the variable."""
        if self.d1 is None:
            raise ValueError("a value-only Taylor has no partial derivatives")
        return Taylor(self.d1, self.d2)

    def along(self, v) -> "Taylor":
        """Directional derivative sum_b v^b d_b of every component.

        ``v`` is either a constant ambient vector (shape ``(m,)``) or a
        Taylor field whose value axis broadcasts against this one's.
        """
        p = self.partials()
        v = as_taylor(v)
        return (p * v.expand(-2) if v.val.ndim > 1 else p * v).sum(-1)

    # -- arithmetic -----------------------------------------------------

    def __neg__(self):
        if _is_const(self):
            return _Const(-self.val)
        return Taylor(-self.val, None if self.d1 is None else -self.d1,
                      None if self.d2 is None else -self.d2)

    def __add__(self, other):
        o = as_taylor(other)
        if _is_const(self) and _is_const(o):
            return _Const(self.val + o.val)
        k, m = _common(self, o)
        a, b = self.truncate(k), o.truncate(k)
        return Taylor(
            a.val + b.val,
            None if k < 1 else _d(a, 1, m) + _d(b, 1, m),
            None if k < 2 else _d(a, 2, m) + _d(b, 2, m),
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_taylor(other))

    def __rsub__(self, other):
        return as_taylor(other) + (-self)

    def __mul__(self, other):
        o = as_taylor(other)
        if _is_const(self) and _is_const(o):
            return _Const(self.val * o.val)
        k, m = _common(self, o)
        f, g = self.truncate(k), o.truncate(k)
        val = f.val * g.val
        if k == 0:
            return Taylor(val)
        f1, g1 = _d(f, 1, m), _d(g, 1, m)
        fv, gv = f.val[..., None], g.val[..., None]
        d1 = f1 * gv + fv * g1
        if k == 1:
            return Taylor(val, d1)
        f2, g2 = _d(f, 2, m), _d(g, 2, m)
        d2 = (f2 * gv[..., None] + fv[..., None] * g2
              + f1[..., :, None] * g1[..., None, :] + f1[..., None, :] * g1[..., :, None])
        return Taylor(val, d1, d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * as_taylor(other).reciprocal()

    def __rtruediv__(self, other):
        return as_taylor(other) * self.reciprocal()

    def _chain(self, f0, f1, f2) -> "Taylor":
        """Apply a scalar function with value f0, first and second derivatives f1, f2."""
        if _is_const(self):
            return _Const(f0)
        if self.d1 is None:
            return Taylor(f0)
        d1 = f1[..., None] * self.d1
        if self.d2 is None:
            return Taylor(f0, d1)
        d2 = (f2[..., None, None] * self.d1[..., :, None] * self.d1[..., None, :]
              + f1[..., None, None] * self.d2)
        return Taylor(f0, d1, d2)

    def reciprocal(self) -> "Taylor":
        x = self.val
        return self._chain(1 / x, -1 / x**2, 2 / x**3)

    def sqrt(self) -> "Taylor":
        r = np.sqrt(self.val)
        return self._chain(r, 0.5 / r, -0.25 / (r * self.val))

    def conj(self) -> "Taylor":
        """Taylor data of the complex conjugate function.

        d/dz_k conj(f) = conj(d f / d conj(z_k)), so the derivative axes are
        permuted by the hol/antihol swap as well as conjugated.
        """
        if _is_const(self):
            return _Const(np.conj(self.val))
        if self.d1 is None:
            return Taylor(np.conj(self.val))
        p = swap_perm(self.m)
        d1 = np.conj(self.d1[..., p])
        d2 = None if self.d2 is None else np.conj(self.d2[..., p, :][..., p])
        return Taylor(np.conj(self.val), d1, d2)


class _Const(Taylor):
    """A constant: exact to every order, derivative arrays are implicit zeros."""

    __slots__ = ()

    def __getitem__(self, idx):
        return _Const(self.val[idx])

    def sum(self, axis):
        return _Const(self.val.sum(axis % self.val.ndim))

    def expand(self, axis):
        return _Const(np.expand_dims(self.val, axis % (self.val.ndim + 1)))

    def transpose(self, *axes):
        return _Const(self.val.transpose(axes))


def _is_const(t: Taylor) -> bool:
    return type(t) is _Const


def swap_perm(m: int) -> np.ndarray:
    """Index permutation exchanging holomorphic and antiholomorphic slots."""
    h = m // 2
    return np.concatenate([np.arange(h, m), np.arange(h)])


def _common(*ts) -> tuple[int, int | None]:
    """Common truncation order and variable count, ignoring constants."""
    live = [t for t in ts if not _is_const(t)]
    k = min(t.order for t in live)
    m = next((t.m for t in live if t.m is not None), None)
    return k, m


def _d(t: Taylor, k: int, m: int) -> np.ndarray:
    """k-th derivative array of ``t``; explicit zeros for constants."""
    arr = t.d1 if k == 1 else t.d2
    if arr is not None:
        return arr
    return np.zeros(t.val.shape + (m,) * k, dtype=complex)


def as_taylor(x) -> Taylor:
    if isinstance(x, Taylor):
        return x
    return _Const(x)


def stack(items, axis: int = 0) -> Taylor:
    items = [as_taylor(t) for t in items]
    nd = items[0].val.ndim + 1
    axis = axis % nd
    vals = np.stack([t.val for t in items], axis)
    if all(_is_const(t) for t in items):
        return _Const(vals)
    k, m = _common(*items)
    d1 = np.stack([_d(t.truncate(k), 1, m) for t in items], axis) if k >= 1 else None
    d2 = np.stack([_d(t.truncate(k), 2, m) for t in items], axis) if k >= 2 else None
    return Taylor(vals, d1, d2)


def concat(items, axis: int = 0) -> Taylor:
    items = [as_taylor(t) for t in items]
    axis = axis % items[0].val.ndim
    vals = np.concatenate([t.val for t in items], axis)
    if all(_is_const(t) for t in items):
        return _Const(vals)
    k, m = _common(*items)
    d1 = np.concatenate([_d(t.truncate(k), 1, m) for t in items], axis) if k >= 1 else None
    d2 = np.concatenate([_d(t.truncate(k), 2, m) for t in items], axis) if k >= 2 else None
    return Taylor(vals, d1, d2)
