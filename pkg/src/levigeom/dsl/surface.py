"""Surface definitions and Wirtinger jets of their defining functions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .expr import Expr, compile_exprs, derive, max_index

__all__ = ["SurfaceDef", "JetF", "jet", "check_real_valued", "RealnessReport", "REALNESS_TOL"]

REALNESS_TOL = 1e-12


@dataclass(frozen=True)
class SurfaceDef:
    """The real hypersurface {F = 0} in C^(n+1).

    Derivative expressions are generated lazily and compiled once per
    surface; the cache lives outside the frozen fields.
    """

    name: str
    n: int
    f: Expr
    metadata: tuple = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        k = max_index(self.f)
        if k > self.n + 1:
            raise ValueError(f"variable index {k} exceeds n+1={self.n + 1}")

    @property
    def dim(self) -> int:
        """Number of complex ambient coordinates, n + 1."""
        return self.n + 1

    def derivative(self, idx: tuple) -> Expr:
        """Symbolic derivative along a sorted tuple of Wirtinger variable slots.

        Slot ``v < n+1`` is z_(v+1); slot ``v >= n+1`` is conj(z_(v-n)).
        """
        idx = tuple(sorted(idx))
        d = self._cache.setdefault("derivs", {})
        if idx not in d:
            if not idx:
                d[idx] = self.f
            else:
                v = idx[-1]
                parent = self.derivative(idx[:-1])
                k = v % self.dim + 1
                d[idx] = derive(parent, k, v >= self.dim)
        return d[idx]

    def evaluator(self, order: int):
        """Compiled ``f(z) -> list`` of all derivatives up to ``order`` plus the index list."""
        key = ("eval", order)
        if key not in self._cache:
            m = 2 * self.dim
            idxs = [()]
            for r in range(1, order + 1):
                idxs += list(itertools.combinations_with_replacement(range(m), r))
            fn = compile_exprs([self.derivative(i) for i in idxs])
            self._cache[key] = (fn, idxs)
        return self._cache[key]

    def __call__(self, z) -> complex:
        fn, _ = self.evaluator(0)
        z = np.asarray(z, dtype=complex)
        _check_point(self, z)
        return complex(fn(z)[0])


def _check_point(s: SurfaceDef, z: np.ndarray):
    if z.shape[0] < s.dim:
        raise IndexError(f"point has {z.shape[0]} coordinates, surface needs {s.dim}")


@dataclass(frozen=True)
class JetF:
    """All Wirtinger derivatives of F at ``z`` up to total order ``order``.

    Dense arrays index Wirtinger slots (z_1..z_{n+1}, conj z_1..conj z_{n+1}):
    ``d1[a]``, ``d2[a, b]``, ``d3[a, b, c]``.
    """

    z: np.ndarray
    order: int
    d0: complex
    d1: np.ndarray
    d2: np.ndarray | None
    d3: np.ndarray | None

    @property
    def dim(self) -> int:
        return self.z.shape[0]

    def deriv(self, a=(), b=()) -> complex:
        """Derivative with holomorphic indices ``a`` and antiholomorphic ``b`` (1-based)."""
        slots = [i - 1 for i in a] + [self.dim + j - 1 for j in b]
        if len(slots) > self.order:
            raise ValueError(f"jet only carries derivatives up to order {self.order}")
        arrs = (self.d0, self.d1, self.d2, self.d3)
        return complex(arrs[len(slots)][tuple(slots)]) if slots else complex(self.d0)

    @property
    def derivs(self) -> dict:
        """Mapping ``(a, b) -> value`` over sorted holomorphic/antiholomorphic index tuples."""
        out = {}
        m = 2 * self.dim
        for r in range(self.order + 1):
            for slots in itertools.combinations_with_replacement(range(m), r):
                a = tuple(s + 1 for s in slots if s < self.dim)
                b = tuple(s - self.dim + 1 for s in slots if s >= self.dim)
                out[(a, b)] = self.deriv(a, b)
        return out


def jet(s: SurfaceDef, z, order: int = 3) -> JetF:
    """Evaluate every Wirtinger derivative of ``s.f`` at ``z`` up to ``order``."""
    if order not in (0, 1, 2, 3):
        raise ValueError("order must be 0, 1, 2 or 3")
    z = np.asarray(z, dtype=complex)
    _check_point(s, z)
    z = z[: s.dim]
    fn, idxs = s.evaluator(order)
    vals = fn(z)
    m = 2 * s.dim
    arrs = [None, np.zeros(m, complex), np.zeros((m, m), complex), np.zeros((m, m, m), complex)]
    d0 = complex(vals[0])
    for idx, v in zip(idxs[1:], vals[1:]):
        a = arrs[len(idx)]
        for p in set(itertools.permutations(idx)):
            a[p] = v
    return JetF(
        z=z,
        order=order,
        d0=d0,
        d1=arrs[1],
        d2=arrs[2] if order >= 2 else None,
        d3=arrs[3] if order >= 3 else None,
    )


@dataclass(frozen=True)
class RealnessReport:
    max_imag: float
    passed: bool


def check_real_valued(s: SurfaceDef, trial_count: int = 64, seed: int = 0) -> RealnessReport:
    """Evaluate F at seeded random points of the unit box and check |Im F| <= 1e-12."""
    if trial_count < 1:
        raise ValueError("trial_count must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    pts = rng.uniform(-1, 1, (s.dim, trial_count)) + 1j * rng.uniform(-1, 1, (s.dim, trial_count))
    fn, _ = s.evaluator(0)
    vals = np.broadcast_to(np.asarray(fn(pts)[0]), (trial_count,))
    worst = float(np.max(np.abs(vals.imag)))
    return RealnessReport(max_imag=worst, passed=worst <= REALNESS_TOL)
