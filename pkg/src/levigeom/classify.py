"""Classification of Levi-umbilical and constant-Levi-curvature surfaces from samples.

Every verdict is about the sampled patch only: the checks certify that the
sampled second fundamental forms are consistent with a sphere, a spherical
tube or a hermitian cylinder, nothing more.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dsl.surface import SurfaceDef
from .sampling import SampleSet
from .shape import SecondForm, second_form, shape_eigensystem

__all__ = [
    "ClassificationVerdict", "KINDS", "umbilicality_deviation", "curvature_constancy",
    "classify", "check_theorem_consequences", "hol_hol_max", "expected_spectrum",
    "DEFAULT_DECISION_TOL", "MIN_SAMPLES",
]

KINDS = ("Sphere", "SphericalTube", "HermitianCylinder", "NotUmbilical",
         "NonConstantCurvature", "Unclassified")
DEFINITE_KINDS = KINDS[:5]
DEFAULT_DECISION_TOL = 1e-6
MIN_SAMPLES = 10


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: str
    params: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params, "diagnostics": self.diagnostics}

    @property
    def definite(self) -> bool:
        return self.kind in DEFINITE_KINDS


def _need(forms):
    forms = list(forms)
    if not forms:
        raise ValueError("need at least one second fundamental form")
    return forms


def umbilicality_deviation(forms) -> float:
    """max over samples of max |k - H| over the Levi eigenvalues k."""
    forms = _need(forms)
    return float(max(np.max(np.abs(f.levi_eigs - f.H)) for f in forms))


def curvature_constancy(forms) -> dict:
    forms = _need(forms)
    H = np.array([f.H for f in forms])
    mean = float(np.mean(H))
    return {"mean": mean, "dev": float(np.max(np.abs(H - mean)))}


def hol_hol_max(forms) -> float:
    """max |h_{ab}| over samples, measured in a g-orthonormal frame."""
    out = 0.0
    for f in _need(forms):
        C = np.linalg.inv(np.linalg.cholesky(f.frame.g)).T
        out = max(out, float(np.max(np.abs(C.T @ f.h_hol_hol @ C))))
    return out


def _hol_T_max(forms) -> float:
    """max |h_{a0}| over samples, in a g-orthonormal frame."""
    out = 0.0
    for f in forms:
        C = np.linalg.inv(np.linalg.cholesky(f.frame.g)).T
        out = max(out, float(np.max(np.abs(C.T @ f.h_hol_T))))
    return out


def expected_spectrum(H: float, h00: float, n: int) -> np.ndarray:
    """Principal curvatures H -+ sqrt(H^2 - h00 H) (n times each) and h00, ascending."""
    rad = H * H - h00 * H
    # sqrt turns rounding noise in H - h00 (Case A) into ~1e-8; treat it as zero
    if abs(rad) <= 64 * np.finfo(float).eps * max(H * H, abs(h00 * H)):
        rad = 0.0
    r = np.sqrt(max(rad, 0.0))
    return np.sort(np.concatenate([np.full(n, H - r), np.full(n, H + r), [h00]]))


def _oriented(forms, sign: float) -> list[SecondForm]:
    """Reverse the normal when sign < 0: h, H and both spectra change sign."""
    if sign > 0:
        return forms
    out = []
    for f in forms:
        out.append(SecondForm(
            h_hol_antihol=-f.h_hol_antihol, h_hol_hol=-f.h_hol_hol, h_hol_T=-f.h_hol_T,
            h_TT=-f.h_TT, H=-f.H, levi_eigs=np.sort(-f.levi_eigs),
            shape_eigs=np.sort(-f.shape_eigs), full=-f.full, frame=f.frame, z=f.z,
            hesse_residual=f.hesse_residual,
        ))
    return out


def check_theorem_consequences(forms, tol: float = DEFAULT_DECISION_TOL) -> dict:
    """Residuals of the identities forced on Levi-umbilical constant-H surfaces.

    Returns ``{"applicable": False, ...}`` if the samples fail the umbilicality
    or constancy gate; nothing is evaluated then.
    """
    forms = _need(forms)
    umb = umbilicality_deviation(forms)
    const = curvature_constancy(forms)
    if umb > tol or const["dev"] > tol or abs(const["mean"]) <= tol:
        return {"applicable": False, "umbilical_dev": umb, "H_dev": const["dev"],
                "H_mean": const["mean"]}
    forms = _oriented(forms, np.sign(const["mean"]))
    n = forms[0].n
    h00 = np.array([f.h_TT for f in forms])
    contraction = lengths = spec = 0.0
    for f in forms:
        gi = f.frame.g_inv
        A = f.h_hol_hol
        Ab = f.full[n:2 * n, n:2 * n]
        mixed = A @ gi @ Ab @ gi.T  # h_a^bbar h_bbar^mu
        target = (f.H**2 - f.h_TT * f.H) * np.eye(n)
        contraction = max(contraction, float(np.max(np.abs(mixed - target))))
        lengths = max(lengths, abs(np.trace(mixed).real - n * f.H * (f.H - f.h_TT)))
        spec = max(spec, float(np.max(np.abs(f.shape_eigs - expected_spectrum(f.H, f.h_TT, n)))))
    return {
        "applicable": True,
        "h_alpha0_max": _hol_T_max(forms),
        "hab_contraction": contraction,
        "hab_length": float(lengths),
        "h00_mean": float(np.mean(h00)),
        "h00_dev": float(np.max(np.abs(h00 - np.mean(h00)))),
        "spectrum_dev": spec,
        "h00_exceeds_H": bool(np.any(h00 > np.array([f.H for f in forms]) + tol)),
    }


def classify(s: SurfaceDef, samples: SampleSet, tol: float = DEFAULT_DECISION_TOL) -> ClassificationVerdict:
    """Decide which model surface the sampled patch is consistent with.

    Order of the tests: umbilicality and the gates of the h_ab = 0 branch
    (NotUmbilical if both fail), then constancy of H, then the model checks
    of the umbilical branch (Sphere or SphericalTube) or of the cylinder
    branch (HermitianCylinder).  Anything inconsistent is Unclassified.
    """
    points = list(samples)
    if len(points) < MIN_SAMPLES:
        raise ValueError(f"classification needs at least {MIN_SAMPLES} samples, got {len(points)}")
    raw = [second_form(s, p) for p in points]
    const = curvature_constancy(raw)
    sign = 1.0 if const["mean"] >= 0 else -1.0
    forms = _oriented(raw, sign)
    n = s.n
    H = np.array([f.H for f in forms])
    h00 = np.array([f.h_TT for f in forms])
    H_mean = float(np.mean(H))
    umb = umbilicality_deviation(forms)
    hab = hol_hol_max(forms)
    min_levi = float(min(np.min(f.levi_eigs) for f in forms))
    diag = {
        "samples": len(forms),
        "H_mean": H_mean,
        "H_dev": const["dev"],
        "umbilical_dev": umb,
        "h_alpha0_max": _hol_T_max(forms),
        "h_hol_hol_max": hab,
        "h_TT_mean": float(np.mean(h00)),
        "h_TT_dev": float(np.max(np.abs(h00 - np.mean(h00)))),
        "min_levi_eig": min_levi,
        "orientation_flipped": sign < 0,
        "case_label": "none",
        "notes": [],
    }
    umbilical = umb <= tol
    constant = const["dev"] <= tol
    cylinder_gate = hab <= tol and min_levi >= -tol and constant

    if not umbilical and not cylinder_gate:
        return ClassificationVerdict("NotUmbilical", {}, diag)
    if not constant:
        return ClassificationVerdict("NonConstantCurvature", {}, diag)
    if abs(H_mean) <= tol:
        diag["notes"].append("Levi curvature vanishes; no model applies")
        return ClassificationVerdict("Unclassified", {}, diag)
    if diag["h_alpha0_max"] > tol or diag["h_TT_dev"] > tol:
        diag["notes"].append("h(Z, T) or h(T, T) inconsistent with a model surface")
        return ClassificationVerdict("Unclassified", {}, diag)

    h00_mean = diag["h_TT_mean"]
    if umbilical:
        spec = max(float(np.max(np.abs(f.shape_eigs - expected_spectrum(f.H, f.h_TT, n)))) for f in forms)
        diag["spectrum_dev"] = spec
        if spec > tol:
            diag["notes"].append("shape spectrum does not match the umbilical model")
            return ClassificationVerdict("Unclassified", {}, diag)
        if abs(h00_mean - H_mean) < abs(h00_mean):
            diag["case_label"] = "A"
            if abs(h00_mean - H_mean) > tol:
                return _unclassified(diag, "neither h00 = H nor h00 = 0")
            return _sphere(forms, H_mean, tol, diag)
        diag["case_label"] = "B"
        if abs(h00_mean) > tol:
            return _unclassified(diag, "neither h00 = H nor h00 = 0")
        return _tube(s, points[0], H_mean, tol, diag)

    # h_ab = 0, pseudoconvex, constant H: the cylinder branch
    diag["case_label"] = "C"
    zero_counts = set()
    for f in forms:
        k = f.levi_eigs
        is_zero = np.abs(k) <= tol
        if not np.all(is_zero | (np.abs(k - f.h_TT) <= tol)):
            return _unclassified(diag, "Levi eigenvalues are not all 0 or h00")
        zero_counts.add(int(np.sum(is_zero)))
        want = np.sort(np.concatenate([np.repeat(k, 2), [f.h_TT]]))
        if np.max(np.abs(f.shape_eigs - want)) > tol:
            return _unclassified(diag, "shape spectrum does not match the cylinder model")
    if len(zero_counts) != 1:
        return _unclassified(diag, "number of zero Levi eigenvalues varies across samples")
    m = zero_counts.pop()
    if m == 0 or m == n:
        return _unclassified(diag, "cylinder branch without a proper flat factor")
    return ClassificationVerdict("HermitianCylinder", {"m": m, "radius": 1.0 / h00_mean}, diag)


def _unclassified(diag: dict, note: str) -> ClassificationVerdict:
    diag["notes"].append(note)
    return ClassificationVerdict("Unclassified", {}, diag)


def _sphere(forms, H: float, tol: float, diag: dict) -> ClassificationVerdict:
    d = forms[0].n + 1
    # frame.nu is still the gradient-direction normal, so it flips with H
    sign = -1.0 if diag["orientation_flipped"] else 1.0
    centers = np.array([f.z - sign * f.frame.nu[:d] / f.H for f in forms])
    center = centers.mean(axis=0)
    spread = float(np.max(np.linalg.norm(centers - center, axis=1)))
    diag["center_spread"] = spread
    if all(np.min(f.levi_eigs) > tol for f in forms):
        diag["notes"].append("strictly pseudoconvex")
    if spread > tol:
        return _unclassified(diag, "per-sample centers disagree")
    return ClassificationVerdict("Sphere", {"center": _point_json(center), "radius": 1.0 / H}, diag)


def _tube(s: SurfaceDef, base, H: float, tol: float, diag: dict) -> ClassificationVerdict:
    w, vecs = shape_eigensystem(s, base)
    if diag["orientation_flipped"]:
        w = -w
    kernel = vecs[np.abs(w) <= tol]
    return ClassificationVerdict("SphericalTube", {
        "radius": 1.0 / (2.0 * H),
        "kernel_directions": [_point_json(v) for v in kernel],
    }, diag)


def _point_json(z) -> list:
    """Complex vector as interleaved reals x1, y1, x2, y2, ..."""
    z = np.asarray(z, dtype=complex)
    return [float(x) for pair_ in zip(z.real, z.imag) for x in pair_]
