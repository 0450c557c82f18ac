"""Immutable expression trees over z_k and conj(z_k) with exact Wirtinger calculus.

Variables are 1-based: ``Var(2)`` is z_2 and ``Var(2, conj=True)`` is conj(z_2).
Every constructor helper returns a folded tree (constants combined, nested
sums and products flattened); no other simplification is attempted.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Mapping

import numpy as np

__all__ = [
    "Expr", "Const", "Var", "Add", "Mul", "Pow", "Re", "Im",
    "const", "var", "cvar", "add", "mul", "power", "neg", "re", "im",
    "fold", "derive", "conjugate", "substitute", "evaluate", "compile_exprs",
    "max_index", "to_text", "ZERO", "ONE",
]


class Expr:
    """Base class for expression nodes.

    Arithmetic operators build folded trees, so ``z1 * cz1 - 1`` is a
    perfectly good way to write the unit circle in C.
    """

    __slots__ = ()

    def __add__(self, other):
        return add(self, _lift(other))

    def __radd__(self, other):
        return add(_lift(other), self)

    def __sub__(self, other):
        return add(self, neg(_lift(other)))

    def __rsub__(self, other):
        return add(_lift(other), neg(self))

    def __mul__(self, other):
        return mul(self, _lift(other))

    def __rmul__(self, other):
        return mul(_lift(other), self)

    def __truediv__(self, other):
        other = _lift(other)
        if not isinstance(other, Const) or other.value == 0:
            raise ZeroDivisionError("division is only defined by a nonzero constant")
        return mul(self, Const(1 / other.value))

    def __neg__(self):
        return neg(self)

    def __pow__(self, k):
        return power(self, k)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Const(Expr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True, slots=True)
class Var(Expr):
    index: int
    conj: bool = False


@dataclass(frozen=True, slots=True)
class Add(Expr):
    terms: tuple


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    factors: tuple


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exp: int


@dataclass(frozen=True, slots=True)
class Re(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Im(Expr):
    arg: Expr


ZERO = Const(0)
ONE = Const(1)


def _lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return Const(complex(x))
    raise TypeError(f"cannot use {type(x).__name__} in an expression")


# -- folding constructors -------------------------------------------------


def const(c) -> Const:
    return Const(complex(c))


def var(k: int) -> Var:
    return Var(k, False)


def cvar(k: int) -> Var:
    return Var(k, True)


def add(*terms: Expr) -> Expr:
    flat = []
    c = 0j
    for t in terms:
        parts = t.terms if isinstance(t, Add) else (t,)
        for p in parts:
            if isinstance(p, Const):
                c += p.value
            else:
                flat.append(p)
    if c != 0 or not flat:
        flat.append(Const(c))
    if len(flat) == 1:
        return flat[0]
    return Add(tuple(flat))


def mul(*factors: Expr) -> Expr:
    flat = []
    c = 1 + 0j
    for f in factors:
        parts = f.factors if isinstance(f, Mul) else (f,)
        for p in parts:
            if isinstance(p, Const):
                c *= p.value
            else:
                flat.append(p)
    if c == 0:
        return ZERO
    if c != 1 or not flat:
        flat.insert(0, Const(c))
    if len(flat) == 1:
        return flat[0]
    return Mul(tuple(flat))


def neg(e: Expr) -> Expr:
    return mul(Const(-1), e)


def power(base: Expr, k: int) -> Expr:
    if int(k) != k or k < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
    k = int(k)
    if k == 0:
        return ONE
    if k == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value**k)
    if isinstance(base, Pow):
        return Pow(base.base, base.exp * k)
    return Pow(base, k)


def re(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(e.value.real)
    return Re(e)


def im(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(e.value.imag)
    return Im(e)


def fold(e: Expr) -> Expr:
    """Rebuild ``e`` bottom-up through the folding constructors (idempotent)."""
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Add):
        return add(*(fold(t) for t in e.terms))
    if isinstance(e, Mul):
        return mul(*(fold(f) for f in e.factors))
    if isinstance(e, Pow):
        return power(fold(e.base), e.exp)
    if isinstance(e, Re):
        return re(fold(e.arg))
    if isinstance(e, Im):
        return im(fold(e.arg))
    raise TypeError(f"not an expression node: {e!r}")


# -- calculus -------------------------------------------------------------


def conjugate(e: Expr) -> Expr:
    """Expression for the complex conjugate of ``e`` (z_k and conj(z_k) swap)."""
    if isinstance(e, Const):
        return Const(e.value.conjugate())
    if isinstance(e, Var):
        return Var(e.index, not e.conj)
    if isinstance(e, Add):
        return add(*(conjugate(t) for t in e.terms))
    if isinstance(e, Mul):
        return mul(*(conjugate(f) for f in e.factors))
    if isinstance(e, Pow):
        return power(conjugate(e.base), e.exp)
    if isinstance(e, (Re, Im)):
        return e  # real-valued
    raise TypeError(f"not an expression node: {e!r}")


def derive(e: Expr, index: int, conj: bool = False) -> Expr:
    """Exact Wirtinger derivative d/dz_index (or d/dconj(z_index) if ``conj``)."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if (e.index == index and e.conj == conj) else ZERO
    if isinstance(e, Add):
        return add(*(derive(t, index, conj) for t in e.terms))
    if isinstance(e, Mul):
        fs = e.factors
        terms = []
        for i, f in enumerate(fs):
            df = derive(f, index, conj)
            if df == ZERO:
                continue
            terms.append(mul(*fs[:i], df, *fs[i + 1:]))
        return add(*terms)
    if isinstance(e, Pow):
        db = derive(e.base, index, conj)
        if db == ZERO:
            return ZERO
        return mul(Const(e.exp), power(e.base, e.exp - 1), db)
    if isinstance(e, (Re, Im)):
        # Re u = (u + conj u)/2, and d(conj u)/dw = conj(du/d conj(w))
        du = derive(e.arg, index, conj)
        dcu = conjugate(derive(e.arg, index, not conj))
        if isinstance(e, Re):
            return mul(Const(0.5), add(du, dcu))
        return mul(Const(-0.5j), add(du, neg(dcu)))
    raise TypeError(f"not an expression node: {e!r}")


def substitute(e: Expr, mapping: Mapping[Var, Expr]) -> Expr:
    """Replace variables by expressions; unmapped variables are kept."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return mapping.get(e, e)
    if isinstance(e, Add):
        return add(*(substitute(t, mapping) for t in e.terms))
    if isinstance(e, Mul):
        return mul(*(substitute(f, mapping) for f in e.factors))
    if isinstance(e, Pow):
        return power(substitute(e.base, mapping), e.exp)
    if isinstance(e, Re):
        return re(substitute(e.arg, mapping))
    if isinstance(e, Im):
        return im(substitute(e.arg, mapping))
    raise TypeError(f"not an expression node: {e!r}")


def max_index(e: Expr) -> int:
    """Largest variable index occurring in ``e`` (0 for constants)."""
    if isinstance(e, Const):
        return 0
    if isinstance(e, Var):
        return e.index
    if isinstance(e, Add):
        return max(max_index(t) for t in e.terms)
    if isinstance(e, Mul):
        return max(max_index(f) for f in e.factors)
    if isinstance(e, Pow):
        return max_index(e.base)
    return max_index(e.arg)


# -- evaluation -----------------------------------------------------------


def evaluate(e: Expr, z) -> complex:
    """Evaluate ``e`` at the point ``z`` (a sequence of complex numbers)."""
    z = np.asarray(z, dtype=complex)
    k = max_index(e)
    if k > z.shape[0]:
        raise IndexError(f"expression uses z{k} but the point has {z.shape[0]} coordinates")
    return complex(_eval(e, z))


def _eval(e, z):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        v = z[e.index - 1]
        return np.conj(v) if e.conj else v
    if isinstance(e, Add):
        return reduce(lambda a, b: a + b, (_eval(t, z) for t in e.terms))
    if isinstance(e, Mul):
        return reduce(lambda a, b: a * b, (_eval(f, z) for f in e.factors))
    if isinstance(e, Pow):
        return _eval(e.base, z) ** e.exp
    if isinstance(e, Re):
        return np.real(_eval(e.arg, z)) + 0j
    if isinstance(e, Im):
        return np.imag(_eval(e.arg, z)) + 0j
    raise TypeError(f"not an expression node: {e!r}")


def _py(e: Expr) -> str:
    if isinstance(e, Const):
        return repr(e.value)
    if isinstance(e, Var):
        return f"{'w' if e.conj else 'z'}[{e.index - 1}]"
    if isinstance(e, Add):
        return "(" + " + ".join(_py(t) for t in e.terms) + ")"
    if isinstance(e, Mul):
        return "(" + " * ".join(_py(f) for f in e.factors) + ")"
    if isinstance(e, Pow):
        return f"({_py(e.base)} ** {e.exp})"
    if isinstance(e, Re):
        return f"_real({_py(e.arg)})"
    if isinstance(e, Im):
        return f"_imag({_py(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def compile_exprs(exprs) -> Callable:
    """Compile a sequence of expressions into one function ``f(z) -> list``.

    ``z`` may carry trailing axes (several points at once); the conjugate
    coordinates are formed once per call.
    """
    body = ", ".join(_py(e) for e in exprs)
    src = f"def _f(z):\n    w = _conj(z)\n    return [{body}]\n"
    ns = {
        "_conj": np.conj,
        "_real": lambda x: np.real(x) + 0j,
        "_imag": lambda x: np.imag(x) + 0j,
    }
    exec(compile(src, "<levigeom-expr>", "exec"), ns)
    return ns["_f"]


# -- printing -------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4


def _num(x: float) -> str:
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


def _const_text(c: complex) -> tuple[str, int]:
    if c.imag == 0:
        s = _num(c.real)
        return (f"({s})", _PREC_ATOM) if c.real < 0 else (s, _PREC_ATOM)
    if c.real == 0:
        s = _num(c.imag) + "j"
        return (f"({s})", _PREC_ATOM) if c.imag < 0 else (s, _PREC_ATOM)
    return f"({_num(c.real)} + {_num(c.imag)}j)", _PREC_ATOM


def _text(e: Expr) -> tuple[str, int]:
    if isinstance(e, Const):
        return _const_text(e.value)
    if isinstance(e, Var):
        return f"{'cz' if e.conj else 'z'}{e.index}", _PREC_ATOM
    if isinstance(e, Add):
        parts = []
        for t in e.terms:
            s, p = _text(t)
            parts.append(s if p > _PREC_ADD else f"({s})")
        return " + ".join(parts), _PREC_ADD
    if isinstance(e, Mul):
        parts = []
        for f in e.factors:
            s, p = _text(f)
            parts.append(s if p > _PREC_MUL else f"({s})")
        return "*".join(parts), _PREC_MUL
    if isinstance(e, Pow):
        s, p = _text(e.base)
        if p <= _PREC_POW:
            s = f"({s})"
        return f"{s}^{e.exp}", _PREC_POW
    if isinstance(e, Re):
        return f"re({_text(e.arg)[0]})", _PREC_ATOM
    if isinstance(e, Im):
        return f"im({_text(e.arg)[0]})", _PREC_ATOM
    raise TypeError(f"not an expression node: {e!r}")


def to_text(e: Expr) -> str:
    """Render ``e`` in the surface-file grammar; parsing it gives back ``e``."""
    return _text(e)[0]
