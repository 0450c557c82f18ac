"""Levi curvature, Levi eigenvalues and principal curvatures on a few model surfaces.

    python3 demos/levi_tour.py
"""
import numpy as np

from levigeom import catalog, locate, second_form

CASES = [
    ("unit sphere", catalog.sphere(), [1, 0, 0]),
    ("sphere r=2", catalog.sphere(2.0), [2, 0, 0]),
    ("tube", catalog.tube(), [2**-0.5, 0, 0]),
    ("cylinder |z2|^2+|z3|^2=1", catalog.hermitian_cylinder(2), [5, 1, 0]),
    ("anisotropic", catalog.anisotropic(), [0, 1, 0]),
    ("ellipsoid lam=0.5", catalog.ellipsoid(0.5), [1 / np.sqrt(1.5), 0, 0]),
]

np.set_printoptions(precision=6, suppress=True)
for label, s, z in CASES:
    sf = second_form(s, locate(s, z))
    print(f"{label:28s} H = {sf.H:.10f}  h_TT = {sf.h_TT:+.6f}")
    print(f"{'':28s} Levi eigenvalues  {sf.levi_eigs}")
    print(f"{'':28s} principal curvatures {sf.shape_eigs}")
