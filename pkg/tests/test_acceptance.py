"""The ten acceptance criteria, one test each.

Every test records a one-line verdict; the lines are printed at the end of
the pytest run (see conftest.py) and also when this file is run directly:

    python3 tests/test_acceptance.py
"""
import contextlib
import io
from pathlib import Path

import numpy as np
import pytest

from levigeom import catalog
from levigeom.classify import (
    check_theorem_consequences, classify, curvature_constancy, hol_hol_max, umbilicality_deviation,
)
from levigeom.cli import main as cli_main
from levigeom.connection import RESIDUAL_NAMES, codazzi_residuals
from levigeom.dsl import jet
from levigeom.frame import locate
from levigeom.sampling import is_well_conditioned, sample_surface
from levigeom.shape import second_form

SURF = Path(__file__).resolve().parents[1] / "surfaces"
RESULTS: dict[int, tuple[bool, str]] = {}


def record(k: int, title: str, checks: dict):
    """checks: name -> (passed, measured value text)."""
    ok = all(v[0] for v in checks.values())
    detail = "; ".join(f"{name} {txt}" + ("" if good else " [FAIL]") for name, (good, txt) in checks.items())
    RESULTS[k] = (ok, f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    print(RESULTS[k][1])
    assert ok, RESULTS[k][1]


def le(x, tol):
    return (x <= tol, f"{x:.2e}<={tol:.0e}")


def gt(x, tol):
    return (x > tol, f"{x:.2e}>{tol:.0e}")


def forms_of(s, count, seed=0):
    ss = sample_surface(s, count, seed=seed)
    return ss, [second_form(s, p) for p in ss.points]


def grad_norm(s, z):
    d1 = jet(s, z, 1).d1
    return float(np.sqrt(np.real(d1[: s.dim] @ d1[s.dim:])))


def test_criterion_01_tube():
    _, fs = forms_of(catalog.tube(), 100)
    H = max(abs(f.H - 2**-0.5) for f in fs)
    umb = max(np.max(np.abs(f.h_hol_antihol - f.H * f.frame.g)) for f in fs)
    record(1, "tube H = 1/sqrt2, h = Hg at 100 points",
           {"|H-1/sqrt2|": le(H, 1e-9), "|h-Hg|": le(umb, 1e-10), "points": (len(fs) == 100, str(len(fs)))})


def test_criterion_02_ellipsoids():
    checks = {}
    for lam in (0.3, 0.5, -0.5):
        s = catalog.ellipsoid(lam)
        ss, fs = forms_of(s, 100)
        e1 = e2 = 0.0
        for p, f in zip(ss.points, fs):
            g = grad_norm(s, p.z)
            e1 = max(e1, abs(f.H * g - 1))
            e2 = max(e2, abs(g * g - (2 - (1 - lam**2) * np.vdot(p.z, p.z).real)))
        checks[f"lam={lam} |H|dF|-1|"] = le(e1, 1e-9)
        checks[f"lam={lam} |dF|^2"] = le(e2, 1e-9)
        checks[f"lam={lam} points"] = (len(fs) == 100, str(len(fs)))
    record(2, "ellipsoid family", checks)


PHIS = ["0.1*re(z1^3)", "0.05*re(z1*z2*z3)", "0.05*im(z2^2) + 0.03*re(z1*z3^2)",
        "0.02*re(z1^4) - 0.04*im(z1*z2)"]


def test_criterion_03_polyharmonic():
    checks = {}
    for phi in PHIS:
        s = catalog.perturbed_sphere(phi)
        ss, fs = forms_of(s, 100)
        dev = max(np.max(np.abs(f.h_hol_antihol - f.frame.g / grad_norm(s, p.z)))
                  for p, f in zip(ss.points, fs))
        checks[f"{phi}: |h-g/|dF||"] = le(dev, 1e-10)
        if phi == PHIS[0]:
            checks[f"{phi}: H dev"] = gt(curvature_constancy(fs)["dev"], 1e-3)
    for seed in range(3):
        s = catalog.random_polyharmonic(seed)
        ss, fs = forms_of(s, 50)
        dev = max(np.max(np.abs(f.h_hol_antihol - f.frame.g / grad_norm(s, p.z)))
                  for p, f in zip(ss.points, fs))
        checks[f"{s.name}: |h-g/|dF||"] = le(dev, 1e-10)
    record(3, "pluriharmonic perturbations are Levi umbilical", checks)


def test_criterion_04_spheres():
    checks = {}
    for r in (0.5, 1.0, 2.0):
        _, fs = forms_of(catalog.sphere(r), 100)
        n = fs[0].n
        checks[f"r={r} |H-1/r|"] = le(max(abs(f.H - 1 / r) for f in fs), 1e-9)
        checks[f"r={r} spectrum"] = le(max(np.max(np.abs(f.shape_eigs - 1 / r)) for f in fs), 1e-9)
        rel = max(abs((2 * n + 1) * f.mean_curvature - (2 * n * f.H + f.h_TT)) for f in fs)
        checks[f"r={r} mean-curv relation"] = le(rel, 1e-10)
    record(4, "spheres", checks)


def _codazzi_surfaces():
    out = [catalog.plane(), catalog.sphere(0.5), catalog.sphere(1.0), catalog.sphere(2.0),
           catalog.tube()]
    out += [catalog.ellipsoid(lam) for lam in (0.3, 0.5, -0.5)]
    out += [catalog.hermitian_cylinder(2)]
    out += [catalog.random_polyharmonic(seed) for seed in range(5)]
    return out


def test_criterion_05_codazzi():
    checks = {}
    for s in _codazzi_surfaces():
        ss = sample_surface(s, 100, seed=0)
        good = [p for p in ss.points if is_well_conditioned(s, p)][:50]
        worst = {k: 0.0 for k in RESIDUAL_NAMES}
        for p in good:
            for k, v in codazzi_residuals(s, p).to_dict().items():
                worst[k] = max(worst[k], v)
        w = max(worst.values())
        checks[f"{s.name}"] = (w <= 1e-9 and len(good) == 50,
                               f"max of 16 = {w:.2e}<=1e-09 over {len(good)} pts")
    record(5, "Codazzi suite, 16 residuals", checks)


def _classify(s, count=100):
    return classify(s, sample_surface(s, count, seed=0))


def test_criterion_06_umbilical_constant():
    checks = {}
    for s in (catalog.sphere(), catalog.tube()):
        _, fs = forms_of(s, 100)
        r = check_theorem_consequences(fs)
        checks[f"{s.name} applicable"] = (r["applicable"], str(r["applicable"]))
        checks[f"{s.name} h_a0"] = le(r["h_alpha0_max"], 1e-10)
        checks[f"{s.name} h00 dev"] = le(r["h00_dev"], 1e-9)
        checks[f"{s.name} spectrum"] = le(r["spectrum_dev"], 1e-8)
    v = _classify(catalog.sphere())
    checks["sphere kind"] = (v.kind == "Sphere", v.kind)
    if v.kind == "Sphere":
        checks["sphere center"] = le(float(np.max(np.abs(v.params["center"]))), 1e-6)
        checks["sphere radius"] = le(abs(v.params["radius"] - 1), 1e-6)
    v = _classify(catalog.tube())
    checks["tube kind"] = (v.kind == "SphericalTube", v.kind)
    if v.kind == "SphericalTube":
        checks["tube radius"] = le(abs(v.params["radius"] - 2**-0.5), 1e-6)
    record(6, "umbilical constant-H consequences", checks)


def test_criterion_07_cylinder_branch():
    checks = {}
    s = catalog.hermitian_cylinder(2)
    _, fs = forms_of(s, 100)
    checks["h_ab"] = le(hol_hol_max(fs), 1e-10)
    checks["|H-1/2|"] = le(max(abs(f.H - 0.5) for f in fs), 1e-9)
    checks["levi {0,1}"] = le(max(np.max(np.abs(f.levi_eigs - [0, 1])) for f in fs), 1e-9)
    v = _classify(s)
    checks["kind"] = (v.kind == "HermitianCylinder", v.kind)
    if v.kind == "HermitianCylinder":
        checks["radius"] = le(abs(v.params["radius"] - 1), 1e-6)
    sph = catalog.sphere()
    _, fs = forms_of(sph, 100)
    gates = (hol_hol_max(fs) <= 1e-6 and min(np.min(f.levi_eigs) for f in fs) >= -1e-6
             and curvature_constancy(fs)["dev"] <= 1e-6)
    checks["sphere passes gates"] = (gates, str(gates))
    v = _classify(sph)
    checks["sphere kind"] = (v.kind == "Sphere", v.kind)
    record(7, "pseudoconvex h_ab = 0 branch", checks)


def test_criterion_08_negative_control():
    s = catalog.anisotropic()
    dev = umbilicality_deviation([second_form(s, locate(s, [0, 1, 0]))])
    v = _classify(s)
    record(8, "anisotropic negative control",
           {"umbilical dev": (abs(dev - 0.5) <= 1e-9, f"{dev:.12f}=0.5+-1e-9"),
            "kind": (v.kind == "NotUmbilical", v.kind)})


def _scalars(f):
    return np.concatenate([[f.H, f.h_TT, np.max(np.abs(f.levi_eigs - f.H))], f.levi_eigs, f.shape_eigs])


def _unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_criterion_09_invariance():
    checks = {}
    rng = np.random.Generator(np.random.PCG64(2024))
    surfaces = [catalog.ellipsoid(0.5), catalog.random_polyharmonic(1), catalog.tube(),
                catalog.anisotropic(), catalog.hermitian_cylinder(2)]
    scale = move = piv = 0.0
    for s in surfaces:
        U = _unitary(rng, s.dim)
        b = rng.normal(size=s.dim) + 1j * rng.normal(size=s.dim)
        s3 = catalog.scaled(s, 3.0)
        moved = catalog.transformed(s, U, b)
        for p in sample_surface(moved, 30, seed=1).points:
            z = U @ p.z + b  # same geometric point on the original surface
            f0 = second_form(s, locate(s, z, 1e-8))
            move = max(move, float(np.max(np.abs(_scalars(f0) - _scalars(second_form(moved, p))))))
            f3 = second_form(s3, locate(s3, z, 3e-8))
            scale = max(scale, float(np.max(np.abs(_scalars(f0) - _scalars(f3)))))
            g = np.abs(jet(s, z, 1).d1[: s.dim])
            for k in range(1, s.dim + 1):
                if g[k - 1] >= 0.2 * np.max(g):
                    fk = second_form(s, locate(s, z, 1e-8, pivot=k))
                    piv = max(piv, float(np.max(np.abs(_scalars(f0) - _scalars(fk)))))
    checks["F->3F"] = le(scale, 1e-10)
    checks["unitary+translation"] = le(move, 1e-10)
    checks["alternate pivots"] = le(piv, 1e-10)
    params = 0.0
    for s in (catalog.sphere(1.5, center=[0.3, -1j, 0.5]), catalog.tube(), catalog.hermitian_cylinder(2)):
        U = _unitary(rng, s.dim)
        b = rng.normal(size=s.dim) + 1j * rng.normal(size=s.dim)
        v0 = _classify(s)
        v1 = _classify(catalog.transformed(s, U, b))
        v2 = _classify(catalog.scaled(s, 3.0))
        if not (v0.kind == v1.kind == v2.kind):
            params = np.inf
            continue
        params = max(params, abs(v0.params["radius"] - v1.params["radius"]),
                     abs(v0.params["radius"] - v2.params["radius"]))
        if v0.kind == "Sphere":
            c0 = np.array(v0.params["center"][0::2]) + 1j * np.array(v0.params["center"][1::2])
            c1 = np.array(v1.params["center"][0::2]) + 1j * np.array(v1.params["center"][1::2])
            params = max(params, float(np.max(np.abs(U @ c1 + b - c0))))
    checks["classification params"] = le(params, 1e-6)
    record(9, "invariance", checks)


def _cli_json(*args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main([str(a) for a in args] + ["--json", "--no-timing"])
    return code, buf.getvalue()


def test_criterion_10_determinism():
    checks = {}
    for cmd, f in (("check", "sphere.srf"), ("check", "ellipsoid.srf"), ("classify", "tube.srf"),
                   ("classify", "cylinder.srf")):
        a = _cli_json(cmd, SURF / f, "--seed", 7)
        b = _cli_json(cmd, SURF / f, "--seed", 7)
        checks[f"{cmd} {f}"] = (a == b and a[0] == 0, "identical" if a == b else "differs")
    record(10, "byte-identical JSON", checks)


if __name__ == "__main__":
    import sys

    fns = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for fn in fns:
        with contextlib.redirect_stdout(io.StringIO()):
            try:
                fn()
            except AssertionError:
                failed += 1
    for k in sorted(RESULTS):
        print(RESULTS[k][1])
    sys.exit(1 if failed else 0)
