"""Second fundamental form, Levi curvature and curvature spectra."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dsl.surface import SurfaceDef, jet
from .errors import DegeneratePoint, ImaginaryResidue, MetricNotPositiveDefinite
from .frame import DEGENERACY_THRESHOLD, FramePack, LocalFrame, SurfacePoint, local_frame, pair, real_vector

__all__ = [
    "SecondForm", "second_form", "levi_curvature", "levi_spectrum", "shape_spectrum",
    "h_matrix", "shape_operator", "shape_eigensystem", "REAL_TOL",
]

REAL_TOL = 1e-12


def as_real(x, what: str, tol: float = REAL_TOL):
    """Drop an imaginary part that must vanish; raise if it does not."""
    x = np.asarray(x)
    scale = max(1.0, float(np.max(np.abs(x), initial=0.0)))
    if np.max(np.abs(np.imag(x)), initial=0.0) > tol * scale:
        raise ImaginaryResidue(f"{what} has imaginary part {np.max(np.abs(np.imag(x))):.3e}")
    out = np.real(x).astype(float)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SecondForm:
    """Every block of h at one point, in the frame E = [Z, conj Z, T].

    ``full[a, b] = h(E_a, E_b)``; the named blocks are views of it.
    """

    h_hol_antihol: np.ndarray  # h(Z_a, conj Z_b)
    h_hol_hol: np.ndarray  # h(Z_a, Z_b)
    h_hol_T: np.ndarray  # h(Z_a, T)
    h_TT: float
    H: float
    levi_eigs: np.ndarray
    shape_eigs: np.ndarray
    full: np.ndarray
    frame: FramePack
    z: np.ndarray
    hesse_residual: float

    @property
    def n(self) -> int:
        return self.h_hol_hol.shape[0]

    @property
    def mean_curvature(self) -> float:
        """Standard (real) mean curvature, the mean of the principal curvatures."""
        return float(np.mean(self.shape_eigs))


def h_matrix(lf: LocalFrame) -> np.ndarray:
    """h(E_a, E_b) = g(E_a, D_{E_b} nu) over the full frame, at the point."""
    E = lf.E.val
    dnu = lf.nu.partials().val  # dnu[c, b] = d_b nu^c
    dnu_e = E @ dnu.T  # row b: D_{E_b} nu
    return pair(E[:, None, :], dnu_e[None, :, :])


def h_ambient(lf: LocalFrame, x, y) -> complex:
    """h(x, y) for ambient vectors tangent at the point."""
    return pair(x, lf.nu.partials().val @ np.asarray(y))


def _hesse_block(lf: LocalFrame) -> np.ndarray:
    """h(Z_a, conj Z_b) from the complex Hessian of F alone."""
    d = lf.dim
    hess = lf.jet.d2[:d, d:]  # F_{h kbar}
    Zh = lf.Z.val[:, :d]
    return (Zh @ hess @ Zh.conj().T) / (2 * lf.grad_norm.val)


def _real_tangent_basis(lf: LocalFrame) -> np.ndarray:
    """Euclidean-orthonormal real basis built from Re Z, Im Z and T (rows, ambient form)."""
    d = lf.dim
    hol = np.concatenate([lf.Z.val[:, :d], 1j * lf.Z.val[:, :d], lf.T.val[None, :d]])
    realcoords = np.concatenate([hol.real, hol.imag], axis=1).T
    q, r = np.linalg.qr(realcoords)
    q = q * np.sign(np.diag(r))
    qhol = q[:d].T + 1j * q[d:].T
    return np.array([real_vector(v) for v in qhol])


def shape_operator(lf: LocalFrame) -> np.ndarray:
    """Matrix of L(X) = D_X nu in the real orthonormal tangent basis."""
    basis = _real_tangent_basis(lf)
    dnu = lf.nu.partials().val
    L = pair(basis[:, None, :], (basis @ dnu.T)[None, :, :])
    L = as_real(L, "shape operator", tol=1e-10)
    return 0.5 * (L + L.T)


def _levi_eigs(h_block: np.ndarray, g: np.ndarray) -> np.ndarray:
    hb = 0.5 * (h_block + h_block.conj().T)
    gb = 0.5 * (g + g.conj().T)
    try:
        return scipy.linalg.eigh(hb, gb, eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise MetricNotPositiveDefinite(str(exc)) from None


def _second_form(lf: LocalFrame) -> SecondForm:
    n = lf.n
    full = h_matrix(lf)
    hab = full[:n, n:2 * n]
    g, ginv = lf.G.val, lf.Ginv.val
    H = as_real(np.sum(ginv * hab) / n, "Levi curvature")
    hesse = _hesse_block(lf)
    return SecondForm(
        h_hol_antihol=hab,
        h_hol_hol=full[:n, :n],
        h_hol_T=full[:n, 2 * n],
        h_TT=as_real(full[2 * n, 2 * n], "h(T, T)"),
        H=H,
        levi_eigs=_levi_eigs(hab, g),
        shape_eigs=np.sort(np.linalg.eigvalsh(shape_operator(lf))),
        full=full,
        frame=lf.pack(),
        z=lf.z.copy(),
        hesse_residual=float(np.max(np.abs(hesse - hab))),
    )


def second_form(s: SurfaceDef, p: SurfacePoint) -> SecondForm:
    """Second fundamental form at ``p``, with h computed as g(U, D_V nu)."""
    return _second_form(local_frame(s, p, order=2))


def levi_curvature(s: SurfaceDef, p: SurfacePoint) -> float:
    """Closed-form Levi curvature from first and second derivatives of F."""
    jf = jet(s, p.z, 2)
    d = s.dim
    Fh, Fhb = jf.d1[:d], jf.d1[d:]
    hess = jf.d2[:d, d:]
    grad_sq = float(np.real(Fh @ Fhb))
    if grad_sq <= DEGENERACY_THRESHOLD**2:
        raise DegeneratePoint("|dF| vanishes at this point")
    grad = np.sqrt(grad_sq)
    contraction = Fhb @ hess @ Fh  # sum_{h,k} F_hbar F_{h kbar} F_k
    val = (np.trace(hess) - contraction / grad_sq) / (s.n * grad)
    return as_real(val, "Levi curvature")


def levi_spectrum(sf: SecondForm) -> np.ndarray:
    """Eigenvalues of the pencil (h_{a bbar}, g_{a bbar}), ascending."""
    return _levi_eigs(sf.h_hol_antihol, sf.frame.g)


def shape_spectrum(s: SurfaceDef, p: SurfacePoint) -> np.ndarray:
    """Principal curvatures (2n+1 of them), ascending."""
    return np.sort(np.linalg.eigvalsh(shape_operator(local_frame(s, p, order=2))))


def shape_eigensystem(s: SurfaceDef, p: SurfacePoint) -> tuple[np.ndarray, np.ndarray]:
    """Principal curvatures and unit principal directions.

    Directions are returned as rows of holomorphic components (a real vector
    X is determined by X^h, h = 1..n+1), in the order of the ascending
    eigenvalues.
    """
    lf = local_frame(s, p, order=2)
    basis = _real_tangent_basis(lf)
    w, v = np.linalg.eigh(shape_operator(lf))
    return w, v.T @ basis[:, : lf.dim]
