"""Surface files: ``key = value`` lines, with F written in a small polynomial grammar.

Grammar of the ``F`` value (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | NUMBER 'j' | 'z'INT | 'cz'INT
            | ('re' | 'im') '(' expr ')' | '(' expr ')'

The divisor of ``/`` must fold to a nonzero constant.  The ``j`` suffix
(imaginary literal) only exists so that coordinate-changed surfaces with
complex coefficients can be written back out.
"""
from __future__ import annotations

import re as _re
from dataclasses import dataclass

from ..errors import SurfaceDefinitionError, SurfaceSyntaxError
from .expr import Const, Expr, add, cvar, im, mul, neg, power, re, to_text, var

__all__ = ["parse_expr", "parse_surface", "format_surface"]

_TOKEN = _re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?j?)
  | (?P<var>c?z\d+)
  | (?P<func>re|im)(?=\s*\()
  | (?P<op>[-+*/^()])
    """,
    _re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int  # 1-based, relative to the start of the parsed string


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SurfaceSyntaxError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), col0 + pos))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, line: int = 1, col0: int = 1):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line
        self.vars: list[tuple[int, _Tok]] = []

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return SurfaceSyntaxError(msg, self.line, tok.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text:
            found = repr(t.text) if t.kind != "end" else "end of input"
            raise self.error(f"expected {text!r}, found {found}")
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            e = add(e, rhs) if op == "+" else add(e, neg(rhs))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                e = mul(e, rhs)
                continue
            if not isinstance(rhs, Const):
                raise self.error("divisor must be a numeric constant", op)
            if rhs.value == 0:
                raise self.error("division by zero", op)
            e = mul(e, Const(1 / rhs.value))
        return e

    def unary(self) -> Expr:
        t = self.peek()
        if t.text == "-":
            self.take()
            return neg(self.unary())
        if t.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind != "num" or not t.text.isdigit():
                raise self.error("exponent must be a nonnegative integer literal")
            self.take()
            return power(base, int(t.text))
        return base

    def atom(self) -> Expr:
        t = self.peek()
        if t.kind == "num":
            self.take()
            if t.text.endswith("j"):
                return Const(complex(0, float(t.text[:-1])))
            return Const(float(t.text))
        if t.kind == "var":
            self.take()
            if t.text.startswith("cz"):
                k = int(t.text[2:])
                node = cvar(k)
            else:
                k = int(t.text[1:])
                node = var(k)
            if k < 1:
                raise self.error("variable indices start at 1", t)
            self.vars.append((k, t))
            return node
        if t.kind == "func":
            self.take()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return re(inner) if t.text == "re" else im(inner)
        if t.text == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        found = repr(t.text) if t.kind != "end" else "end of input"
        raise self.error(f"expected a number, variable or '(', found {found}")


def _parse_with_vars(text: str, line: int = 1, col0: int = 1):
    p = _Parser(text, line, col0)
    return p.parse(), p.vars


def parse_expr(text: str) -> Expr:
    """Parse a bare expression such as ``"z1*cz1 + re(z2^3) - 1"``."""
    return _parse_with_vars(text)[0]


def parse_surface(text: str):
    """Parse a surface file into a :class:`~levigeom.dsl.surface.SurfaceDef`."""
    from .surface import SurfaceDef

    fields: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise SurfaceSyntaxError("expected 'key = value'", lineno, col)
        key, value = line.split("=", 1)
        key = key.strip()
        if not key.isidentifier():
            raise SurfaceSyntaxError(f"invalid key {key!r}", lineno, 1)
        if key in fields:
            raise SurfaceSyntaxError(f"duplicate key {key!r}", lineno, 1)
        vcol = line.index("=") + 2
        fields[key] = (value, lineno, vcol)

    if "n" not in fields:
        raise SurfaceDefinitionError("missing required key 'n'")
    ntext, nline, _ = fields.pop("n")
    try:
        n = int(ntext.strip())
    except ValueError:
        raise SurfaceDefinitionError(f"line {nline}: n must be an integer, got {ntext.strip()!r}") from None
    if n < 1:
        raise SurfaceDefinitionError(f"line {nline}: n must be >= 1, got {n}")

    if "F" not in fields:
        raise SurfaceDefinitionError("missing required key 'F'")
    ftext, fline, fcol = fields.pop("F")
    f, used = _parse_with_vars(ftext, fline, fcol)
    for k, tok in used:
        if k > n + 1:
            raise SurfaceDefinitionError(
                f"line {fline}, column {tok.col}: variable index {k} exceeds n+1={n + 1}"
            )

    name = fields.pop("name", ("surface", 0, 0))[0].strip()
    meta = tuple(sorted((k, v[0].strip()) for k, v in fields.items()))
    return SurfaceDef(name=name, n=n, f=f, metadata=meta)


def format_surface(s) -> str:
    """Serialize a surface back to file text; ``parse_surface`` inverts it."""
    lines = [f"name = {s.name}", f"n = {s.n}"]
    lines += [f"{k} = {v}" for k, v in s.metadata]
    lines.append(f"F = {to_text(s.f)}")
    return "\n".join(lines) + "\n"
