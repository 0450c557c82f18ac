"""Points on {F = 0}: Newton projection, tangent random walks, horizontal steps.

Every random draw comes from numpy's PCG64 generator seeded explicitly, so
a (surface, seed, parameters) triple always gives the same sample set.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dsl.surface import SurfaceDef, jet
from .errors import DegeneratePoint, GeometryError, NoConvergence, SamplingError, TooManyRejections
from .frame import DEGENERACY_THRESHOLD, SurfacePoint, local_frame, locate

__all__ = [
    "SampleSet", "project", "sample_patch", "horizontal_step", "find_base", "sample_surface",
    "is_well_conditioned", "default_step", "MAX_RETRIES",
]

MAX_RETRIES = 10


@dataclass(frozen=True)
class SampleSet:
    points: list
    seed: int
    surface_tol: float
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def coords(self) -> np.ndarray:
        return np.array([p.z for p in self.points])


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def project(s: SurfaceDef, z0, tol: float = 1e-9, max_iter: int = 50) -> SurfacePoint:
    """Newton iteration z <- z - F grad F / |grad F|^2 along the real gradient.

    In Wirtinger form the real gradient is 2 F_hbar, so the update reads
    dz_h = -F F_hbar / (2 |dF|^2).  After reaching ``tol`` one more step is
    taken, which in the quadratic regime brings |F| to rounding level.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    z = np.array(z0, dtype=complex)[: s.dim]
    for _ in range(max_iter + 1):
        f, dz = _newton_update(s, z)
        if abs(f) <= tol:
            z_next = z + dz
            if abs(jet(s, z_next, 0).d0) < abs(f):
                z = z_next
            return locate(s, z, tol)
        z = z + dz
        if not np.all(np.isfinite(z)):
            break
    raise NoConvergence(f"projection did not reach |F| <= {tol:.1e} in {max_iter} steps")


def _newton_update(s: SurfaceDef, z):
    d = s.dim
    jf = jet(s, z, 1)
    grad_sq = float(np.real(jf.d1[:d] @ jf.d1[d:]))
    if grad_sq <= DEGENERACY_THRESHOLD**2:
        raise DegeneratePoint("|dF| vanished during projection")
    f = jf.d0.real
    return f, -f * jf.d1[d:] / (2 * grad_sq)


def _tangent_direction(s: SurfaceDef, p: SurfacePoint, rng) -> np.ndarray:
    """A random unit real tangent vector, as holomorphic components."""
    d = s.dim
    w = rng.normal(size=d) + 1j * rng.normal(size=d)
    nu = local_frame(s, p, order=1).nu.val[:d]
    nu = nu / np.linalg.norm(nu)
    w = w - np.real(np.vdot(nu, w)) * nu
    return w / np.linalg.norm(w)


def default_step(H: float) -> float:
    return 0.05 / max(abs(H), 1.0)


def sample_patch(s: SurfaceDef, base: SurfacePoint, count: int, step: float = 0.05,
                 seed: int = 0, tol: float = 1e-9, max_iter: int = 50) -> SampleSet:
    """Random walk along tangent directions with re-projection after each move.

    Each step retries up to ``MAX_RETRIES`` times with fresh directions; a
    step that never succeeds counts as a rejection and the walk stays put.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not step > 0:
        raise ValueError("step must be > 0")
    rng = _rng(seed)
    cur = base
    points, rejected = [], 0
    for _ in range(count):
        for _attempt in range(MAX_RETRIES + 1):
            w = _tangent_direction(s, cur, rng)
            try:
                nxt = project(s, cur.z + step * w, tol, max_iter)
            except (GeometryError, SamplingError):
                continue
            cur = nxt
            points.append(nxt)
            break
        else:
            rejected += 1
    if 2 * len(points) < count:
        raise TooManyRejections(f"only {len(points)} of {count} points produced")
    return _sample_set(s, points, seed, tol, rejected)


def _sample_set(s, points, seed, tol, rejected) -> SampleSet:
    d = s.dim
    norms = []
    for p in points:
        d1 = jet(s, p.z, 1).d1
        norms.append(np.sqrt(np.real(d1[:d] @ d1[d:])))
    return SampleSet(points=points, seed=seed, surface_tol=tol,
                     stats={"count": len(points), "rejected_count": rejected,
                            "min_grad_norm": float(min(norms))})


def horizontal_step(s: SurfaceDef, p: SurfacePoint, direction, step: float,
                    tol: float | None = None, max_iter: int = 50) -> SurfacePoint:
    """Move along Re(direction^a Z_a) by ``step`` and re-project."""
    direction = np.asarray(direction, dtype=complex)
    if not np.any(direction):
        raise ValueError("direction must be nonzero")
    lf = local_frame(s, p, order=1)
    if step == 0:
        return p
    # Re(V) has holomorphic components V/2, and the Euclidean length of a
    # real vector is the norm of its holomorphic components
    v = 0.5 * direction @ lf.Z.val[:, : s.dim]
    move = v / np.linalg.norm(v)
    tol = p.surface_tol if tol is None else tol
    return project(s, p.z + step * move, tol, max_iter)


def find_base(s: SurfaceDef, seed: int = 0, tol: float = 1e-9, attempts: int = 64) -> SurfacePoint:
    """A well-conditioned starting point, found by projecting seeded guesses."""
    rng = _rng(seed)
    d = s.dim
    guesses = [np.eye(d)[k] for k in range(d)]
    guesses += [rng.normal(size=d) + 1j * rng.normal(size=d) for _ in range(attempts)]
    fallback = None
    for g in guesses:
        try:
            p = project(s, g, tol)
        except (GeometryError, SamplingError):
            continue
        if is_well_conditioned(s, p):
            return p
        fallback = fallback or p
    if fallback is not None:
        return fallback
    raise SamplingError("could not find any point on the surface")


def sample_surface(s: SurfaceDef, count: int, seed: int = 0, tol: float = 1e-9,
                   step: float | None = None, max_iter: int = 50) -> SampleSet:
    """find_base followed by sample_patch, with the default step from the base curvature."""
    from .shape import levi_curvature

    base = find_base(s, seed, tol)
    if step is None:
        try:
            step = default_step(levi_curvature(s, base))
        except GeometryError:
            step = default_step(1.0)
    return sample_patch(s, base, count, step, seed, tol, max_iter)


def is_well_conditioned(s: SurfaceDef, p: SurfacePoint, min_grad: float = 0.1,
                        min_pivot_ratio: float = 0.3) -> bool:
    jf = jet(s, p.z, 1)
    d = s.dim
    g = np.abs(jf.d1[:d])
    norm = float(np.sqrt(np.sum(g**2)))
    return norm >= min_grad and g[p.chart_pivot - 1] / norm >= min_pivot_ratio
