"""Classify every catalog surface, including a rigidly moved copy of each model.

    python3 demos/classify_catalog.py
"""
import numpy as np

from levigeom import catalog, classify, sample_surface

rng = np.random.Generator(np.random.PCG64(5))
q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
shift = np.array([1.0, -2j, 0.5])

surfaces = [
    catalog.sphere(), catalog.sphere(2.0, center=[1, 1j, 0]), catalog.tube(),
    catalog.hermitian_cylinder(2), catalog.anisotropic(), catalog.ellipsoid(0.5),
    catalog.perturbed_sphere("0.1*re(z1^3)"), catalog.plane(),
]
surfaces += [catalog.transformed(s, q, shift) for s in surfaces[:4]]

for s in surfaces:
    v = classify(s, sample_surface(s, 100, seed=0))
    params = {k: (round(x, 9) if isinstance(x, float) else x) for k, x in v.params.items()
              if k != "kernel_directions"}
    print(f"{s.name:22s} {v.kind:22s} {params}")
