import numpy as np
import pytest

from levigeom.dsl import parse_expr, parse_surface
from levigeom.dsl.expr import evaluate
from levigeom.dsl.parser import format_surface
from levigeom.errors import SurfaceDefinitionError, SurfaceSyntaxError

SPHERE = "n=2\nF = z1*cz1 + z2*cz2 + z3*cz3 - 1"
TUBE = "n=2\nF = (z1+cz1)^2/2 + (z2+cz2)^2/2 + (z3+cz3)^2/2 - 1"


def test_sphere_file():
    s = parse_surface(SPHERE)
    assert s.n == 2 and s.dim == 3
    assert s([1, 0, 0]) == 0


def test_tube_file():
    s = parse_surface(TUBE)
    assert abs(s([2**-0.5, 0, 0])) < 1e-15


def test_variable_bound():
    with pytest.raises(SurfaceDefinitionError, match="variable index 4 exceeds n\\+1=3"):
        parse_surface("n=2\nF = z4")


@pytest.mark.parametrize("text, msg", [
    ("F = z1*cz1", "missing required key 'n'"),
    ("n = 2", "missing required key 'F'"),
    ("n = 0\nF = z1", "n must be >= 1"),
    ("n = two\nF = z1", "n must be an integer"),
])
def test_definition_errors(text, msg):
    with pytest.raises(SurfaceDefinitionError, match=msg):
        parse_surface(text)


def test_syntax_error_position():
    with pytest.raises(SurfaceSyntaxError) as info:
        parse_surface("# comment\nn = 2\nF = z1 + $")
    assert info.value.line == 3
    assert info.value.column == 10


@pytest.mark.parametrize("text", ["z1 +", "(z1", "z1 ^ -2", "z1 / z2", "re z1", "z1 z2"])
def test_bad_expressions(text):
    with pytest.raises(SurfaceSyntaxError):
        parse_expr(text)


def test_duplicate_key():
    with pytest.raises(SurfaceSyntaxError, match="duplicate"):
        parse_surface("n = 2\nn = 3\nF = z1")


def test_metadata_and_comments():
    s = parse_surface("name = ball  # unit\nradius = 1\nn = 1\nF = z1*cz1 + z2*cz2 - 1\n")
    assert s.name == "ball"
    assert dict(s.metadata) == {"radius": "1"}


def test_imaginary_literal():
    assert evaluate(parse_expr("2.5j*z1"), np.array([2.0])) == 5j


def test_precedence():
    z = np.array([2.0 + 0j])
    assert evaluate(parse_expr("-z1^2"), z) == -4
    assert evaluate(parse_expr("1 - 2 - 3"), z) == -4
    assert evaluate(parse_expr("8/2/2"), z) == 2


def test_format_roundtrip():
    s = parse_surface("name = p\nn = 2\nlam = 0.3\nF = z1*cz1 + 0.3*re(z2^3) - im(z1*cz3) - 1")
    back = parse_surface(format_surface(s))
    assert back.name == s.name and back.n == s.n and back.metadata == s.metadata
    z = np.array([0.2 + 0.1j, -0.5j, 0.7])
    assert abs(back(z) - s(z)) < 1e-15
