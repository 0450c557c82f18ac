"""Worst residual of every connection and Codazzi identity over random patches.

The surfaces are perturbed spheres, so nothing here is special; the point is
that all identities hold at rounding level on an arbitrary hypersurface.

    python3 demos/codazzi_sweep.py [samples]
"""
import sys

from levigeom import catalog, codazzi_residuals, sample_surface
from levigeom.connection import RESIDUAL_NAMES, CodazziReport

count = int(sys.argv[1]) if len(sys.argv) > 1 else 30
surfaces = [catalog.perturbed_sphere("0.3*re(z1^3) + 0.2*im(z2^2*z3)", name="wobbly")]
surfaces += [catalog.random_polyharmonic(seed, amplitude=0.1) for seed in range(3)]
surfaces += [catalog.random_polyharmonic(9, n=3)]

print(f"{'identity':16s}" + "".join(f"{s.name:>16s}" for s in surfaces))
worst = []
for s in surfaces:
    ss = sample_surface(s, count, seed=1)
    worst.append(CodazziReport.combine(codazzi_residuals(s, p) for p in ss).to_dict())
for k in RESIDUAL_NAMES:
    print(f"{k:16s}" + "".join(f"{w[k]:16.2e}" for w in worst))
