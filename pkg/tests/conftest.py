import numpy as np
import pytest

from levigeom import catalog
from levigeom.frame import locate

SQ2 = np.sqrt(2.0)


@pytest.fixture(scope="session")
def sphere():
    return catalog.sphere()


@pytest.fixture(scope="session")
def tube():
    return catalog.tube()


@pytest.fixture(scope="session")
def plane():
    return catalog.plane()


@pytest.fixture(scope="session")
def cylinder():
    return catalog.hermitian_cylinder(2)


@pytest.fixture(scope="session")
def aniso():
    return catalog.anisotropic()


def at(s, *z, tol=1e-9, pivot=None):
    return locate(s, np.array(z, dtype=complex), tol, pivot)


def unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k][1])
