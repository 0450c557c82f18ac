"""The complex connection, covariant derivatives of h and identity residuals.

For a holomorphic tangent field Z the connection is the ambient derivative
with its N component removed, the antiholomorphic case is its conjugate, and
T is parallel.  All directional derivatives are exact chain-rule values
computed from the Taylor data of the frame fields.

Frame index convention (shared with :mod:`levigeom.frame`): ``c`` in
``0..2n`` runs over ``E = [Z_1..Z_n, conj Z_1..conj Z_n, T]``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from .dsl.surface import SurfaceDef
from .frame import FramePack, LocalFrame, SurfacePoint, local_frame, pair
from .taylor import Taylor

__all__ = [
    "PointGeometry", "ConnectionCoeffs", "CovariantGradient", "CodazziReport",
    "christoffel", "covariant_gradient", "codazzi_residuals",
    "connection_metric_residual", "torsion_residuals", "conj_index",
]


def conj_index(n: int) -> np.ndarray:
    """Frame index of the conjugate field: Z_a <-> conj Z_a, T -> T."""
    return np.concatenate([np.arange(n, 2 * n), np.arange(n), [2 * n]])


def _maxabs(x) -> float:
    return float(np.max(np.abs(x), initial=0.0))


def _contract(t: Taylor, E: np.ndarray) -> np.ndarray:
    """Values of E_c(t) for every frame direction c; new leading axis."""
    return np.einsum("cv,...v->c...", E, t.d1)


class PointGeometry:
    """Everything about the connection at one point, computed on demand."""

    def __init__(self, lf: LocalFrame):
        if lf.order < 2:
            raise ValueError("connection data needs a third-order jet of F")
        self.lf = lf
        self.n = lf.n
        self.K = 2 * lf.n + 1
        self.cb = conj_index(lf.n)

    @classmethod
    def at(cls, s: SurfaceDef, p: SurfacePoint) -> "PointGeometry":
        return cls(local_frame(s, p, order=3))

    # -- directional derivatives of frame fields ---------------------------

    def _along_frame(self, field: Taylor) -> Taylor:
        """D_{E_c} field for every c, as a Taylor field one order lower.

        ``field`` has value shape (..., m); the result has shape (K, ..., m).
        """
        E = self.lf.E
        p = field.partials()  # (..., m, m): component, variable
        k = p.val.ndim - 2
        Ex = E
        for _ in range(k + 1):
            Ex = Ex.expand(1)
        return (p.expand(0) * Ex).sum(-1)

    @cached_property
    def DE(self) -> Taylor:
        """DE[c, d] = D_{E_c} E_d."""
        return self._along_frame(self.lf.E)

    @cached_property
    def bracket(self) -> np.ndarray:
        """[E_c, E_d] as ambient vectors at the point."""
        de = self.DE.val
        return de - de.transpose(1, 0, 2)

    @cached_property
    def DN(self) -> np.ndarray:
        return _contract(self.lf.N, self.lf.E.val)

    # -- connection coefficients -------------------------------------------

    def _project_hol(self, v: Taylor) -> Taylor:
        """Coefficients of the H component of ``v`` (trailing ambient axis)."""
        lf = self.lf
        zb = lf.Zbar
        for _ in range(v.val.ndim - 1):
            zb = zb.expand(0)
        b = pair(v.expand(-2), zb)  # (..., n): g(v, conj Z_mu)
        gi = lf.Ginv
        for _ in range(b.val.ndim - 1):
            gi = gi.expand(0)
        return (b.expand(-2) * gi).sum(-1)  # sum_mu Ginv[gamma, mu] b[mu]

    @cached_property
    def gamma(self) -> Taylor:
        """gamma[c, a, g]: nabla_{E_c} Z_a = gamma[c, a, g] Z_g (Taylor, order 1)."""
        n = self.n
        dz = self.DE.take(np.arange(n), 1)  # (K, n, m)
        return self._project_hol(dz)

    @cached_property
    def gamma_antihol_direct(self) -> np.ndarray:
        """Coefficients of nabla_{E_c} conj Z_a along conj Z_g, from its own definition."""
        lf, n = self.lf, self.n
        dzb = self.DE.val[:, n:2 * n]
        b = pair(dzb[:, :, None, :], lf.Z.val[None, None])
        return np.einsum("cam,mg->cag", b, lf.Ginv.val)

    @cached_property
    def gamma_full(self) -> Taylor:
        """G[c, a, d]: nabla_{E_c} E_a = G[c, a, d] E_d over the whole frame."""
        n, K = self.n, self.K
        g = self.gamma
        gbar = g.take(self.cb, 0).conj()  # coefficients for conj Z_a
        m = g.d1.shape[-1]
        val = np.zeros((K, K, K), complex)
        d1 = np.zeros((K, K, K, m), complex)
        hol, anti = slice(0, n), slice(n, 2 * n)
        val[:, hol, hol], d1[:, hol, hol] = g.val, g.d1
        val[:, anti, anti], d1[:, anti, anti] = gbar.val, gbar.d1
        return Taylor(val, d1)

    def nabla_frame(self, c: int, a: int) -> np.ndarray:
        """Ambient vector nabla_{E_c} E_a at the point."""
        return self.gamma_full.val[c, a] @ self.lf.E.val

    # -- second fundamental form and its covariant derivative --------------

    @cached_property
    def h_field(self) -> Taylor:
        """h(E_a, E_b) as a Taylor function of order 1."""
        lf = self.lf
        dnu = lf.nu.partials()  # (m, m)
        dnu_e = (dnu.expand(0) * lf.E.expand(1)).sum(-1)  # (K, m): D_{E_b} nu
        return pair(lf.E.expand(1), dnu_e.expand(0))

    @property
    def h(self) -> np.ndarray:
        return self.h_field.val

    @cached_property
    def nabla_h(self) -> np.ndarray:
        """nabla_h[c, a, b] = (nabla_{E_c} h)(E_a, E_b)."""
        h = self.h
        G = self.gamma_full.val
        dh = _contract(self.h_field, self.lf.E.val)
        return dh - np.einsum("cad,db->cab", G, h) - np.einsum("cbd,ad->cab", G, h)

    # -- curvature -----------------------------------------------------------

    def frame_coeffs(self, v: np.ndarray) -> np.ndarray:
        """Coefficients of tangent ambient vectors ``v`` in the frame E."""
        lf = self.lf
        gi = lf.Ginv.val
        hol = np.einsum("...m,gm->...g", pair(v[..., None, :], lf.Zbar.val), gi)
        anti = np.einsum("...m,mg->...g", pair(v[..., None, :], lf.Z.val), gi)
        t = pair(v, lf.T.val)[..., None]
        return np.concatenate([hol, anti, t], axis=-1)

    @cached_property
    def curvature(self) -> np.ndarray:
        """R[c, d, a, e]: R(E_c, E_d) Z_a = R[c, d, a, e] Z_e, from gamma and its derivatives."""
        g = self.gamma
        gv = g.val
        dg = _contract(g, self.lf.E.val)  # dg[c, d, a, e] = E_c(gamma[d, a, e])
        quad = np.einsum("dag,cge->cdae", gv, gv)
        coeff = self.frame_coeffs(self.bracket)  # (K, K, K)
        return (dg - dg.transpose(1, 0, 2, 3) + quad - quad.transpose(1, 0, 2, 3)
                - np.einsum("cdf,fae->cdae", coeff, gv))

    def curvature_direct(self) -> np.ndarray:
        """Ambient vectors R(E_c, E_d) Z_a from nested covariant derivatives."""
        lf, n = self.lf, self.n
        N, Nbar = lf.N, lf.Nbar
        dz = self.DE.take(np.arange(n), 1)  # (K, n, m), order 1
        nz = dz - pair(dz, Nbar.expand(0).expand(0)).expand(-1) * N.expand(0).expand(0)
        Ev = lf.E.val
        # nabla_{E_c} of the field nabla_{E_d} Z_a
        d_nz = _contract(nz, Ev)  # (c, d, a, m)
        nn = d_nz - pair(d_nz, Nbar.val)[..., None] * N.val
        dz_br = np.einsum("cdv,akv->cdak", self.bracket, lf.Z.d1)
        nbr = dz_br - pair(dz_br, Nbar.val)[..., None] * N.val
        return nn - nn.transpose(1, 0, 2, 3) - nbr

    # -- coefficients as ambient vectors --------------------------------------

    @property
    def blocks(self):
        """(A, B, Abar, t, tbar, h00): h_ab, h_a bbar, h_abar bbar, h_a0, h_abar0, h_00."""
        n, h = self.n, self.h
        return (h[:n, :n], h[:n, n:2 * n], h[n:2 * n, n:2 * n],
                h[:n, 2 * n], h[n:2 * n, 2 * n], h[2 * n, 2 * n])


# -- public result types -----------------------------------------------------


@dataclass(frozen=True)
class ConnectionCoeffs:
    """Christoffel coefficients in the frame.

    ``gamma_hol[c, a, g]``: nabla_{E_c} Z_a = gamma_hol[c, a, g] Z_g.
    ``gamma_antihol[c, a, g]``: nabla_{E_c} conj Z_a = gamma_antihol[c, a, g] conj Z_g.
    ``parallel_residual`` is how far nabla_{E_c} Z_a is from the span of the Z's.
    """

    gamma_hol: np.ndarray
    gamma_antihol: np.ndarray
    base: FramePack
    parallel_residual: float


@dataclass(frozen=True)
class CovariantGradient:
    """Blocks of nabla h. Axis order is (direction, first slot, second slot)."""

    hol_of_hol_antihol: np.ndarray  # [b, a, g] = nabla_b h_{a gbar}
    antihol_of_hol_antihol: np.ndarray  # [b, a, g] = nabla_bbar h_{a gbar}
    T_of_hol_antihol: np.ndarray  # [a, g] = nabla_0 h_{a gbar}
    hol_of_hol_hol: np.ndarray  # [b, a, g] = nabla_b h_{a g}
    T_of_hol_hol: np.ndarray  # [a, g] = nabla_0 h_{a g}
    antihol_of_hol_T: np.ndarray  # [b, a] = nabla_bbar h_{a 0}
    hol_of_hol_T: np.ndarray  # [b, a] = nabla_b h_{a 0}
    T_of_hol_T: np.ndarray  # [a] = nabla_0 h_{a 0}
    hol_of_TT: np.ndarray  # [a] = nabla_a h_{00}
    T_of_TT: complex  # nabla_0 h_{00}
    full: np.ndarray  # [c, a, b] over the whole frame


RESIDUAL_NAMES = (
    "eq_azzo", "eq_gotta", "eq_geog", "eq_noni", "eq_azzo2", "eq_azzo3", "gauss",
    "prop_i", "prop_ii", "prop_iii", "metric_compat", "torsion_hol", "torsion_mixed",
    "parallel_bundle", "bracket_gen", "real_formula",
)


@dataclass(frozen=True)
class CodazziReport:
    """Max-abs residual of each identity at one point (all nonnegative)."""

    eq_azzo: float
    eq_gotta: float
    eq_geog: float
    eq_noni: float
    eq_azzo2: float
    eq_azzo3: float
    gauss: float
    prop_i: float
    prop_ii: float
    prop_iii: float
    metric_compat: float
    torsion_hol: float
    torsion_mixed: float
    parallel_bundle: float
    bracket_gen: float
    real_formula: float

    def to_dict(self) -> dict:
        return asdict(self)

    def worst(self) -> float:
        return max(self.to_dict().values())

    @staticmethod
    def combine(reports) -> "CodazziReport":
        """Entry-wise maximum over several points."""
        reports = list(reports)
        if not reports:
            raise ValueError("no reports to combine")
        return CodazziReport(**{k: max(getattr(r, k) for r in reports) for k in RESIDUAL_NAMES})


# -- operations ----------------------------------------------------------------


def _parallel_residual(pg: PointGeometry) -> float:
    lf, n = pg.lf, pg.n
    dz = pg.DE.val[:, :n]
    nab = dz - pair(dz, lf.Nbar.val)[..., None] * lf.N.val
    recon = np.einsum("cag,gm->cam", pg.gamma.val, lf.Z.val)
    return _maxabs(nab - recon)


def christoffel(s: SurfaceDef, p: SurfacePoint) -> ConnectionCoeffs:
    pg = PointGeometry.at(s, p)
    return _christoffel(pg)


def _christoffel(pg: PointGeometry) -> ConnectionCoeffs:
    return ConnectionCoeffs(
        gamma_hol=pg.gamma.val.copy(),
        gamma_antihol=pg.gamma_antihol_direct.copy(),
        base=pg.lf.pack(),
        parallel_residual=_parallel_residual(pg),
    )


def covariant_gradient(s: SurfaceDef, p: SurfacePoint) -> CovariantGradient:
    return _covariant_gradient(PointGeometry.at(s, p))


def _covariant_gradient(pg: PointGeometry) -> CovariantGradient:
    n = pg.n
    hol, anti, t = slice(0, n), slice(n, 2 * n), 2 * n
    nh = pg.nabla_h
    return CovariantGradient(
        hol_of_hol_antihol=nh[hol, hol, anti],
        antihol_of_hol_antihol=nh[anti, hol, anti],
        T_of_hol_antihol=nh[t, hol, anti],
        hol_of_hol_hol=nh[hol, hol, hol],
        T_of_hol_hol=nh[t, hol, hol],
        antihol_of_hol_T=nh[anti, hol, t],
        hol_of_hol_T=nh[hol, hol, t],
        T_of_hol_T=nh[t, hol, t],
        hol_of_TT=nh[hol, t, t],
        T_of_TT=complex(nh[t, t, t]),
        full=nh,
    )


def _metric_residual(pg: PointGeometry) -> float:
    Ev = pg.lf.E
    gf = pair(Ev.expand(1), Ev.expand(0))  # g(E_a, E_b) as Taylor
    dg = _contract(gf, Ev.val)
    G, gv = pg.gamma_full.val, gf.val
    res = dg - np.einsum("cad,db->cab", G, gv) - np.einsum("cbd,ad->cab", G, gv)
    return _maxabs(res)


def connection_metric_residual(s: SurfaceDef, p: SurfacePoint) -> float:
    """max |U g(V1, conj V2) - g(nabla_U V1, conj V2) - g(V1, nabla_U conj V2)| over the frame."""
    return _metric_residual(PointGeometry.at(s, p))


def _torsion(pg: PointGeometry) -> tuple[float, float]:
    n, K = pg.n, pg.K
    lf = pg.lf
    G = pg.gamma_full.val
    nab = np.einsum("cad,dm->cam", G, lf.E.val)  # nabla_{E_c} E_a
    tor = nab - nab.transpose(1, 0, 2) - pg.bracket  # Tor(E_c, E_a)
    hol = tor[:n, :n]
    B = pg.h[:n, n:2 * n]
    mixed = tor[:n, n:2 * n] - 2j * B[..., None] * lf.T.val
    return _maxabs(hol), _maxabs(mixed)


def torsion_residuals(s: SurfaceDef, p: SurfacePoint) -> dict:
    hol, mixed = _torsion(PointGeometry.at(s, p))
    return {"hol": hol, "mixed": mixed}


def _codazzi(pg: PointGeometry) -> CodazziReport:
    n = pg.n
    lf = pg.lf
    gi = lf.Ginv.val
    gm = lf.G.val
    A, B, Ab, t, tb, h00 = pg.blocks
    nh = pg.nabla_h
    hol, anti, T = slice(0, n), slice(n, 2 * n), 2 * n
    i = 1j

    # nabla_b h_{a gbar} - nabla_gbar h_{ab}, axes (a, b, g)
    lhs = nh[hol, hol, anti].transpose(1, 0, 2) - nh[anti, hol, hol].transpose(1, 2, 0)
    rhs = (i * A[:, :, None] * tb[None, None, :] - i * B[:, None, :] * t[None, :, None]
           - 2 * i * B[None, :, :] * t[:, None, None])
    azzo = _maxabs(lhs - rhs)

    # nabla_bbar h_{a0} - nabla_0 h_{a bbar}, axes (a, b)
    lhs = nh[anti, hol, T].T - nh[T, hol, anti]
    rhs = i * A @ gi @ Ab - i * B @ gi.T @ B + i * B * h00
    gotta = _maxabs(lhs - rhs)

    # nabla_b h_{a0} - nabla_0 h_{ab}
    lhs = nh[hol, hol, T].T - nh[T, hol, hol]
    rhs = i * A * h00 - 2 * i * np.outer(t, t) + i * A @ gi @ B.T - i * B @ gi.T @ A
    geog = _maxabs(lhs - rhs)

    # nabla_a h_00 - nabla_0 h_{a0}
    lhs = nh[hol, T, T] - nh[T, hol, T]
    rhs = 3 * i * B @ gi.T @ t - 3 * i * A @ gi @ tb - i * t * h00
    noni = _maxabs(lhs - rhs)

    # nabla_a h_{b gbar} - nabla_b h_{a gbar}, axes (a, b, g)
    lhs = nh[hol, hol, anti] - nh[hol, hol, anti].transpose(1, 0, 2)
    rhs = i * B[None, :, :] * t[:, None, None] - i * B[:, None, :] * t[None, :, None]
    azzo2 = _maxabs(lhs - rhs)

    # nabla_a h_{bg} - nabla_g h_{ba}, axes (a, b, g)
    lhs = nh[hol, hol, hol] - nh[hol, hol, hol].transpose(2, 1, 0)
    rhs = i * A.T[:, :, None] * t[None, None, :] - i * A[None, :, :] * t[:, None, None]
    azzo3 = _maxabs(lhs - rhs)

    # g(R(Z_a, conj Z_b) Z_g, conj Z_d) = 2 (h_{g bbar} h_{dbar a} - h_{ga} h_{dbar bbar})
    R = pg.curvature[hol, anti]  # (a, b, g, e)
    lhs = np.einsum("abge,ed->abgd", R, gm)
    rhs = 2 * (np.einsum("gb,ad->abgd", B, B) - np.einsum("ga,db->abgd", A, Ab))
    gauss = _maxabs(lhs - rhs)

    DN = pg.DN
    gDNN = pair(DN, lf.Nbar.val)  # g(D_{E_c} N, conj N)
    Tv = lf.T.val
    br = pg.bracket
    prop_i = _maxabs(gDNN[:n] - pair(br[2 * n, :n], Tv))
    prop_ii = _maxabs(gDNN - i * pg.h[2 * n])
    prop_iii = _maxabs(pair(br[:n, n:2 * n], Tv) + 2 * i * B)

    tor_hol, tor_mixed = _torsion(pg)

    # sum over a unitary frame W = Z C of g([W_a, conj W_a], T) + 2i n H
    L = np.linalg.cholesky(gm)
    C = np.linalg.inv(L).T
    q = pair(br[:n, n:2 * n], Tv)
    H = np.sum(gi * B) / n
    bracket_gen = abs(np.sum((C @ C.conj().T) * q) + 2 * i * n * H)

    return CodazziReport(
        eq_azzo=azzo, eq_gotta=gotta, eq_geog=geog, eq_noni=noni,
        eq_azzo2=azzo2, eq_azzo3=azzo3, gauss=gauss,
        prop_i=prop_i, prop_ii=prop_ii, prop_iii=prop_iii,
        metric_compat=_metric_residual(pg), torsion_hol=tor_hol, torsion_mixed=tor_mixed,
        parallel_bundle=_parallel_residual(pg), bracket_gen=float(bracket_gen),
        real_formula=_real_formula(pg),
    )


def _real_formula(pg: PointGeometry) -> float:
    """Compare the real-vector form of nabla against the complex definition.

    Tested on Y = Z_a + conj Z_a and Y = i(Z_a - conj Z_a), every frame direction.
    """
    n, lf = pg.n, pg.lf
    de = pg.DE.val  # (c, d, m)
    dz, dzb = de[:, :n], de[:, n:2 * n]
    N, Nb, nu, T = lf.N.val, lf.Nbar.val, lf.nu.val, lf.T.val
    nz = dz - pair(dz, Nb)[..., None] * N
    nzb = dzb - pair(dzb, N)[..., None] * Nb
    worst = 0.0
    for dy, ny in ((dz + dzb, nz + nzb), (1j * (dz - dzb), 1j * (nz - nzb))):
        real_form = dy - pair(dy, nu)[..., None] * nu - pair(dy, T)[..., None] * T
        worst = max(worst, _maxabs(real_form - ny))
    return worst


def codazzi_residuals(s: SurfaceDef, p: SurfacePoint) -> CodazziReport:
    """Residuals of every connection and Codazzi identity at ``p``."""
    return _codazzi(PointGeometry.at(s, p))
