import numpy as np
from hypothesis import given, settings, strategies as st

from levigeom.dsl import parse_expr, wirtinger_derive
from levigeom.dsl.expr import compile_exprs, conjugate, evaluate, fold, to_text


def ev(text, z):
    return evaluate(parse_expr(text), np.asarray(z, dtype=complex))


def same(e1, e2, z):
    return abs(evaluate(e1, z) - evaluate(e2, z)) < 1e-12


Z = np.array([0.3 - 0.7j, 1.1 + 0.2j, -0.4 + 0.9j])


def test_leibniz_holomorphic():
    d = wirtinger_derive(parse_expr("z1*cz1"), 1)
    assert same(d, parse_expr("cz1"), Z)


def test_leibniz_antiholomorphic():
    d = wirtinger_derive(parse_expr("z1*cz1"), 1, conj=True)
    assert same(d, parse_expr("z1"), Z)


def test_power_rule():
    d = wirtinger_derive(parse_expr("(z1+cz1)^2"), 1)
    assert same(d, parse_expr("2*(z1+cz1)"), Z)


def test_cross_variable_derivative_vanishes():
    d = fold(wirtinger_derive(parse_expr("z2^3*cz3"), 1))
    assert evaluate(d, Z) == 0


def test_re_im_derivatives():
    # re w = (w + conj w)/2, so d/dz re(z1^2) = z1 and d/dcz re(z1^2) = cz1
    assert same(wirtinger_derive(parse_expr("re(z1^2)"), 1), parse_expr("z1"), Z)
    assert same(wirtinger_derive(parse_expr("re(z1^2)"), 1, conj=True), parse_expr("cz1"), Z)
    d = wirtinger_derive(parse_expr("im(z1^2)"), 1)
    assert abs(evaluate(d, Z) - (-1j * Z[0])) < 1e-12


def test_evaluate_values():
    assert ev("z1*cz1 + z2*cz2 + z3*cz3 - 1", [1, 0, 0]) == 0
    assert abs(ev("(z1+cz1)^2/2 + (z2+cz2)^2/2 + (z3+cz3)^2/2 - 1", [2**-0.5, 0, 0])) < 1e-15
    assert ev("z1*cz1 + z2*cz2 + z3*cz3 - 1", [2, 0, 0]) == 3


def test_folding():
    assert to_text(fold(parse_expr("2*3 + z1*0 - 6"))) == "0"
    assert to_text(fold(parse_expr("1*z2 + 0"))) == "z2"


def test_conjugate_of_re_im_is_itself():
    for text in ("re(z1^3)", "im(z1*z2)"):
        e = parse_expr(text)
        assert same(conjugate(e), e, Z)


def test_compiled_matches_interpreter():
    exprs = [parse_expr(t) for t in ("z1*cz1", "re(z2^3) - im(z1*cz3)", "(z1 - 2.5)^4/3")]
    fn = compile_exprs(exprs)
    got = fn(Z)
    for e, g in zip(exprs, got):
        assert abs(evaluate(e, Z) - g) < 1e-12


_leaf = st.sampled_from(["z1", "z2", "cz1", "cz2", "1", "2.5", "0.5j"])


@st.composite
def _exprs(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(_leaf)
    op = draw(st.sampled_from(["+", "-", "*", "^", "re", "im"]))
    a = draw(_exprs(depth=depth - 1))
    if op == "^":
        return f"({a})^{draw(st.integers(0, 3))}"
    if op in ("re", "im"):
        return f"{op}({a})"
    return f"({a}) {op} ({draw(_exprs(depth=depth - 1))})"


_points = st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
                   min_size=2, max_size=2)


@settings(max_examples=150, deadline=None)
@given(_exprs(), _points)
def test_text_roundtrip(text, z):
    e = parse_expr(text)
    z = np.array(z)
    back = parse_expr(to_text(e))
    a, b = evaluate(e, z), evaluate(back, z)
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


@settings(max_examples=150, deadline=None)
@given(_exprs(), _points)
def test_conjugate_evaluates_to_conjugate(text, z):
    e = parse_expr(text)
    z = np.array(z)
    a = evaluate(e, z)
    assert abs(evaluate(conjugate(e), z) - np.conj(a)) <= 1e-9 * max(1.0, abs(a))


@settings(max_examples=100, deadline=None)
@given(_exprs(), _points, st.integers(1, 2), st.booleans())
def test_wirtinger_matches_finite_differences(text, z, k, conj):
    e = parse_expr(text)
    z = np.array(z)
    h = 1e-6
    dx = np.zeros(2, complex)
    dx[k - 1] = h
    fx = (evaluate(e, z + dx) - evaluate(e, z - dx)) / (2 * h)
    fy = (evaluate(e, z + 1j * dx) - evaluate(e, z - 1j * dx)) / (2 * h)
    want = 0.5 * (fx + 1j * fy) if conj else 0.5 * (fx - 1j * fy)
    got = evaluate(wirtinger_derive(e, k, conj), z)
    assert abs(got - want) <= 1e-5 * max(1.0, abs(want))
