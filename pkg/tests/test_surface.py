import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from levigeom import catalog
from levigeom.dsl import check_real_valued, jet, parse_surface

SQ2 = np.sqrt(2.0)


def test_sphere_jet():
    jf = jet(catalog.sphere(), [1, 0, 0], 2)
    np.testing.assert_array_equal(jf.d1[:3], [1, 0, 0])
    np.testing.assert_array_equal(jf.d1[:3], np.conj(jf.d1[3:]))
    np.testing.assert_array_equal(jf.d2[:3, 3:], np.eye(3))
    np.testing.assert_array_equal(jf.d2[:3, :3], np.zeros((3, 3)))


def test_tube_jet():
    jf = jet(catalog.tube(), [2**-0.5, 0, 0], 2)
    np.testing.assert_allclose(jf.d1[:3], [SQ2, 0, 0], atol=1e-15)
    np.testing.assert_allclose(jf.d2[:3, 3:], np.eye(3), atol=1e-15)
    np.testing.assert_allclose(jf.d2[:3, :3], np.eye(3), atol=1e-15)


def test_plane_jet():
    jf = jet(catalog.plane(), [1, 5, 1j], 3)
    assert jf.deriv((1,)) == 1 and jf.deriv((), (1,)) == 1
    assert not np.any(jf.d2) and not np.any(jf.d3)


def test_jet_symmetry_and_accessors():
    s = parse_surface("n = 1\nF = z1^2*cz2*cz1 + re(z2^3)")
    jf = jet(s, [0.3 + 0.1j, -0.2 + 0.5j], 3)
    assert np.allclose(jf.d3, np.transpose(jf.d3, (1, 0, 2)))
    assert np.allclose(jf.d3, np.transpose(jf.d3, (2, 1, 0)))
    assert jf.deriv((1, 1), (2,)) == jf.d3[0, 0, 3]
    assert jf.derivs[((1, 1), (2,))] == jf.deriv((1, 1), (2,))
    with pytest.raises(ValueError):
        jet(s, jf.z, 2).deriv((1, 1, 1))


def test_jet_rejects_bad_order_and_short_point():
    s = catalog.sphere()
    with pytest.raises(ValueError):
        jet(s, [1, 0, 0], 4)
    with pytest.raises(IndexError):
        jet(s, [1, 0], 1)


def test_realness():
    rep = check_real_valued(catalog.sphere(), 64, 0)
    # numpy complex products leave rounding-level imaginary parts
    assert rep.passed and rep.max_imag < 1e-15
    assert check_real_valued(catalog.tube(), 64, 0).passed
    assert not check_real_valued(parse_surface("n = 2\nF = z1"), 64, 0).passed


def _fd_oracle(s, z, h=1e-5):
    """Wirtinger first and second derivatives of F by central differences."""
    d = s.dim

    def grad(fn, z):
        out = np.zeros(2 * d, complex)
        for k in range(d):
            e = np.zeros(d, complex)
            e[k] = h
            fx = (fn(z + e) - fn(z - e)) / (2 * h)
            fy = (fn(z + 1j * e) - fn(z - 1j * e)) / (2 * h)
            out[k] = 0.5 * (fx - 1j * fy)
            out[d + k] = 0.5 * (fx + 1j * fy)
        return out

    return grad(lambda w: complex(s(w)), z)


_coef = st.floats(-1, 1, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(_coef, _coef, _coef,
       st.lists(st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
                min_size=3, max_size=3))
def test_jet_matches_finite_differences(a, b, c, z):
    s = parse_surface(f"n = 2\nF = z1*cz1 + {a!r}*re(z1^2*z2) + {b!r}*im(z3*cz1) "
                      f"+ {c!r}*(z2*cz2)^2 - 1")
    z = np.array(z)
    jf = jet(s, z, 3)
    np.testing.assert_allclose(jf.d1, _fd_oracle(s, z), atol=1e-7)
    # second derivatives: finite differences of the exact first derivatives
    h = 1e-6
    for k in range(3):
        e = np.zeros(3, complex)
        e[k] = h
        gx = (jet(s, z + e, 1).d1 - jet(s, z - e, 1).d1) / (2 * h)
        gy = (jet(s, z + 1j * e, 1).d1 - jet(s, z - 1j * e, 1).d1) / (2 * h)
        np.testing.assert_allclose(jf.d2[k], 0.5 * (gx - 1j * gy), atol=1e-6)
        np.testing.assert_allclose(jf.d2[3 + k], 0.5 * (gx + 1j * gy), atol=1e-6)
    # a real F has conj(F_h) = F_hbar at every order
    np.testing.assert_allclose(np.conj(jf.d1[:3]), jf.d1[3:], atol=1e-14)
