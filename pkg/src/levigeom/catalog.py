"""Standard test surfaces, built as surface-file text and parsed."""
from __future__ import annotations

import numpy as np

from .dsl.expr import Var, add, const, conjugate, mul, substitute
from .dsl.parser import parse_surface
from .dsl.surface import SurfaceDef

__all__ = [
    "sphere", "tube", "plane", "ellipsoid", "hermitian_cylinder", "anisotropic",
    "perturbed_sphere", "random_polyharmonic", "transformed", "scaled",
]


def _num(x: float) -> str:
    return repr(float(x))


def _surface(name: str, n: int, f: str, **meta) -> SurfaceDef:
    lines = [f"name = {name}", f"n = {n}"]
    lines += [f"{k} = {v}" for k, v in meta.items()]
    lines.append(f"F = {f}")
    return parse_surface("\n".join(lines))


def _norm_sq(idx) -> str:
    return " + ".join(f"z{k}*cz{k}" for k in idx)


def sphere(r: float = 1.0, n: int = 2, center=None) -> SurfaceDef:
    """|z - c|^2 = r^2; H = 1/r."""
    d = n + 1
    if center is None:
        body = _norm_sq(range(1, d + 1))
    else:
        c = np.asarray(center, dtype=complex)
        body = " + ".join(
            f"(z{k} - ({_num(c[k - 1].real)} + {_num(c[k - 1].imag)}j))"
            f"*(cz{k} - ({_num(c[k - 1].real)} - {_num(c[k - 1].imag)}j))"
            for k in range(1, d + 1)
        )
    return _surface(f"sphere_r{r:g}", n, f"{body} - {_num(r * r)}", radius=_num(r))


def tube(n: int = 2, r: float | None = None) -> SurfaceDef:
    """Sum_h (Re z_h)^2 = r^2, written as 1/2 sum (z_h + cz_h)^2 - 2 r^2 = 0.

    The default radius 1/sqrt(2) gives constant term exactly 1 and H = 1/sqrt(2).
    """
    body = " + ".join(f"(z{k}+cz{k})^2/2" for k in range(1, n + 2))
    if r is None:
        return _surface("tube", n, f"{body} - 1", radius=_num(2 ** -0.5))
    return _surface("tube", n, f"{body} - {_num(2 * r * r)}", radius=_num(r))


def plane(n: int = 2) -> SurfaceDef:
    """Re z_1 = 1."""
    return _surface("plane", n, "z1 + cz1 - 2")


def ellipsoid(lam: float, n: int = 2) -> SurfaceDef:
    """|z|^2 + lam * Re(sum z_h^2) = 1 (a polyharmonic perturbation of the sphere)."""
    phi = " + ".join(f"(z{k}^2 + cz{k}^2)/2" for k in range(1, n + 2))
    return _surface(f"ellipsoid_{lam:g}", n, f"{_norm_sq(range(1, n + 2))} + {_num(lam)}*({phi}) - 1",
                    lam=_num(lam))


def hermitian_cylinder(start: int = 2, n: int = 2, r: float = 1.0) -> SurfaceDef:
    """Sum_{i >= start} |z_i|^2 = r^2; it has start - 1 zero Levi eigenvalues."""
    if not 1 <= start <= n + 1:
        raise ValueError("start must lie in 1..n+1")
    return _surface(f"cylinder_{start}", n, f"{_norm_sq(range(start, n + 2))} - {_num(r * r)}",
                    radius=_num(r))


def anisotropic(n: int = 2) -> SurfaceDef:
    """2|z_1|^2 + |z_2|^2 + ... = 1, Levi umbilical nowhere."""
    return _surface("anisotropic", n, f"2*z1*cz1 + {_norm_sq(range(2, n + 2))} - 1")


def perturbed_sphere(phi: str, n: int = 2, name: str = "perturbed") -> SurfaceDef:
    """|z|^2 + Phi = 1 for a polyharmonic Phi given as expression text."""
    return _surface(name, n, f"{_norm_sq(range(1, n + 2))} + {phi} - 1")


def random_polyharmonic(seed: int, n: int = 2, amplitude: float = 0.05) -> SurfaceDef:
    """Sphere plus amplitude * Re p(z), p a seeded random quadratic-plus-cubic polynomial."""
    rng = np.random.Generator(np.random.PCG64(seed))
    terms = []
    d = n + 1
    for deg in (2, 3):
        for _ in range(3):
            ks = sorted(int(k) for k in rng.integers(1, d + 1, size=deg))
            c = amplitude * (rng.normal() + 1j * rng.normal()) / np.sqrt(2)
            mono = "*".join(f"z{k}" for k in ks)
            terms.append(f"{_num(c.real)}*re({mono}) - {_num(c.imag)}*im({mono})")
    phi = " + ".join(f"({t})" for t in terms)
    return perturbed_sphere(phi, n, name=f"polyharmonic_{seed}")


def transformed(s: SurfaceDef, U, b) -> SurfaceDef:
    """The surface {w : F(U w + b) = 0}, i.e. the image of M under w = U^-1 (z - b).

    ``U`` should be unitary for the result to be congruent to ``s``.
    """
    U = np.asarray(U, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = s.dim
    mapping = {}
    for h in range(d):
        zh = add(const(b[h]), *(mul(const(U[h, k]), Var(k + 1, False)) for k in range(d)))
        mapping[Var(h + 1, False)] = zh
        mapping[Var(h + 1, True)] = conjugate(zh)
    return SurfaceDef(name=f"{s.name}_moved", n=s.n, f=substitute(s.f, mapping), metadata=s.metadata)


def scaled(s: SurfaceDef, c: float) -> SurfaceDef:
    """Same surface, defining function multiplied by ``c``."""
    return SurfaceDef(name=f"{s.name}_x{c:g}", n=s.n, f=mul(const(c), s.f), metadata=s.metadata)
