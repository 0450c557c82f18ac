"""Point-wise moving frame of a hypersurface {F = 0} in C^(n+1).

Ambient complex vectors are stored as length ``2(n+1)`` arrays: first the
coefficients of d/dz_h, then those of d/dconj(z_h).  A real vector has its
second half equal to the conjugate of the first.  The pairing is the
C-bilinear extension of the Euclidean metric normalized so that
g(d_h, dbar_k) = delta_hk / 2 and g(d_h, d_k) = 0.

Frame fields are kept as :class:`~levigeom.taylor.Taylor` objects, i.e. as
explicit functions of the jet of F, so their ambient derivatives come out
exactly.  The frame index convention used throughout the package is::

    E = [Z_1, ..., Z_n, conj Z_1, ..., conj Z_n, T]
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dsl.surface import JetF, SurfaceDef, jet
from .errors import DegeneratePoint, NotOnSurface
from .taylor import Taylor, _Const, concat, swap_perm

__all__ = [
    "SurfacePoint", "FramePack", "LocalFrame", "locate", "build_frame", "local_frame",
    "pair", "bar", "bracket", "DEGENERACY_THRESHOLD",
]

DEGENERACY_THRESHOLD = 1e-8


# -- ambient vector algebra ------------------------------------------------


def bar(v):
    """Complex conjugate of an ambient vector (array or Taylor field)."""
    if isinstance(v, Taylor):
        return v.conj().take(swap_perm(v.shape[-1]), -1)
    v = np.asarray(v)
    return np.conj(v[..., swap_perm(v.shape[-1])])


def pair(v, w):
    """g(v, w) = 1/2 sum_h (v^h w^hbar + v^hbar w^h), bilinear, over the last axis."""
    if isinstance(v, Taylor) or isinstance(w, Taylor):
        v = v if isinstance(v, Taylor) else _Const(v)
        w = w if isinstance(w, Taylor) else _Const(w)
        if v.shape[-1] != w.shape[-1]:
            raise ValueError("vectors live in ambient spaces of different dimension")
        return (v * w.take(swap_perm(w.shape[-1]), -1)).sum(-1) * 0.5
    v, w = np.asarray(v), np.asarray(w)
    if v.shape[-1] != w.shape[-1]:
        raise ValueError("vectors live in ambient spaces of different dimension")
    return 0.5 * np.sum(v * w[..., swap_perm(w.shape[-1])], axis=-1)


def bracket(u: Taylor, v: Taylor) -> Taylor:
    """Lie bracket [u, v] = D_u v - D_v u of two Taylor fields."""
    return v.along(u) - u.along(v)


def real_vector(hol) -> np.ndarray:
    """Ambient real vector whose holomorphic components are ``hol``."""
    hol = np.asarray(hol, dtype=complex)
    return np.concatenate([hol, np.conj(hol)])


# -- points ----------------------------------------------------------------


@dataclass(frozen=True)
class SurfacePoint:
    z: np.ndarray
    surface_tol: float
    chart_pivot: int  # 1-based

    def __post_init__(self):
        object.__setattr__(self, "z", np.asarray(self.z, dtype=complex))


def locate(s: SurfaceDef, z, tol: float = 1e-9, pivot: int | None = None) -> SurfacePoint:
    """Certify that ``z`` lies on {F = 0} and choose the chart pivot.

    The pivot defaults to argmax |F_h| (smallest index on ties). A forced
    ``pivot`` is accepted whenever F_pivot is nonzero at ``z``.
    """
    z = np.asarray(z, dtype=complex)[: s.dim]
    jf = jet(s, z, 1)
    if abs(jf.d0) > tol:
        raise NotOnSurface(f"|F(z)| = {abs(jf.d0):.3e} exceeds tolerance {tol:.1e}")
    grad = np.abs(jf.d1[: s.dim])
    if np.sqrt(np.sum(grad**2)) <= DEGENERACY_THRESHOLD:
        raise DegeneratePoint("|dF| vanishes at this point")
    if pivot is None:
        pivot = int(np.argmax(grad)) + 1
    elif not 1 <= pivot <= s.dim or grad[pivot - 1] <= DEGENERACY_THRESHOLD:
        raise DegeneratePoint(f"F_{pivot} vanishes; cannot use it as chart pivot")
    return SurfacePoint(z=z, surface_tol=tol, chart_pivot=pivot)


# -- frame -----------------------------------------------------------------


@dataclass(frozen=True)
class FramePack:
    """Frame values at one point (see the module docstring for layouts)."""

    nu: np.ndarray
    T: np.ndarray
    N: np.ndarray
    Z: np.ndarray  # (n, 2(n+1))
    perm: tuple  # 1-based coordinate order, pivot last
    g: np.ndarray  # g[a, b] = g(Z_a, conj Z_b)
    g_inv: np.ndarray  # g_inv[a, b] = g^{a bbar}; sum_b g_inv[a, b] g[c, b] = delta_ac
    grad_norm: float

    @property
    def n(self) -> int:
        return self.Z.shape[0]

    def eta(self, v) -> complex:
        """The contact form: eta(V) = g(V, T)."""
        return pair(v, self.T)


class LocalFrame:
    """Frame fields near a surface point as exact Taylor data.

    Taylor order is one less than the order of the jet of F it was built
    from, e.g. a third-order jet gives frame fields with exact first and
    second ambient derivatives.
    """

    def __init__(self, jf: JetF, pivot: int):
        N1 = jf.dim
        n = N1 - 1
        m = 2 * N1
        self.jet = jf
        self.n, self.dim, self.m = n, N1, m
        self.z = jf.z
        arrs = [jf.d1, jf.d2, jf.d3][: jf.order]
        dF = Taylor(*arrs) if arrs else None
        self.dF = dF
        Fh, Fhb = dF[:N1], dF[N1:]
        self.Fh, self.Fhb = Fh, Fhb
        self.grad_sq = (Fh * Fhb).sum(0)
        if abs(self.grad_sq.val) <= DEGENERACY_THRESHOLD**2:
            raise DegeneratePoint("|dF| vanishes at this point")
        self.grad_norm = self.grad_sq.sqrt()

        self.nu = concat([Fhb, Fh]) / self.grad_norm
        zeros = _Const(np.zeros(N1))
        self.N = concat([Fhb * np.sqrt(2), zeros]) / self.grad_norm
        self.Nbar = concat([zeros, Fh * np.sqrt(2)]) / self.grad_norm
        self.T = concat([Fhb * 1j, Fh * -1j]) / self.grad_norm

        p = pivot - 1
        sigma = [k for k in range(N1) if k != p] + [p]
        self.pivot = pivot
        self.perm = tuple(k + 1 for k in sigma)
        sel = np.asarray(sigma[:n])
        Fp = Fh[p]
        ratio = Fh.take(sel, 0) / Fp
        unit = np.eye(N1)
        z_hol = _Const(unit[sel]) - ratio.expand(-1) * _Const(unit[p])
        self.Z = concat([z_hol, _Const(np.zeros((n, N1)))], axis=1)
        self.Zbar = bar(self.Z)
        self.E = concat([self.Z, self.Zbar, self.T.expand(0)], axis=0)

        Fa, Fab = Fh.take(sel, 0), Fhb.take(sel, 0)
        eye = _Const(np.eye(n))
        self.G = (eye + Fa.expand(-1) * Fab.expand(0) / (Fp * Fhb[p])) * 0.5
        self.Ginv = (eye - Fab.expand(-1) * Fa.expand(0) / self.grad_sq) * 2.0

    @property
    def order(self) -> int:
        return self.nu.order

    def pack(self) -> FramePack:
        return FramePack(
            nu=self.nu.val.copy(),
            T=self.T.val.copy(),
            N=self.N.val.copy(),
            Z=self.Z.val.copy(),
            perm=self.perm,
            g=self.G.val.copy(),
            g_inv=self.Ginv.val.copy(),
            grad_norm=float(self.grad_norm.val.real),
        )

    # projections of ambient vectors at the point onto H, Hbar and CT
    def proj_hol(self, v) -> np.ndarray:
        """Pi_H v, returned as coefficients c with Pi_H v = c^a Z_a."""
        b = pair(v, self.Zbar.val)
        return self.Ginv.val @ b

    def proj_antihol(self, v) -> np.ndarray:
        """Pi_Hbar v as coefficients d with Pi_Hbar v = d^a conj(Z_a)."""
        b = pair(v, self.Z.val)
        return self.Ginv.val.T @ b


def local_frame(s: SurfaceDef, p: SurfacePoint, order: int = 3) -> LocalFrame:
    return LocalFrame(jet(s, p.z, order), p.chart_pivot)


def build_frame(jf: JetF, p: SurfacePoint) -> FramePack:
    """Frame values from a jet of order >= 1 at a located point."""
    if jf.order < 1:
        raise ValueError("the frame needs at least first derivatives of F")
    return LocalFrame(jf, p.chart_pivot).pack()
