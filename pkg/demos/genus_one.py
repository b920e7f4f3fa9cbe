"""Genus-one invariants of local Calabi-Yau spaces.

Builds the I-function ladder for a few geometries, assembles the genus-one
generating function and compares degree one against the localization closed
form.
"""
from gwlocal.geometry import PRESETS, parse_geometry
from gwlocal.genus1 import conjecture_invariants, degree_one_closed, zinger_hypersurface
from gwlocal.ifunctions import ipp_ladder, mirror_map

kp4 = PRESETS["kp4"]
print("mirror map of", kp4, ":", [str(c) for c in mirror_map(kp4, 4).coeffs])
ladder = ipp_ladder(kp4, 2, 4)
for p, diag in enumerate(ladder.diagonal):
    print(f"  I_{p}{p} =", [str(c) for c in diag.coeffs])

for name in ("kp2", "kp4", "P3/O(-1,-3)", "P3/O(-2,-2)", "P2/O(-1,-1,-1)"):
    geom = parse_geometry(name)
    series = conjecture_invariants(geom, 5)
    vals = ", ".join(str(series[d]) for d in range(1, 6))
    print(f"{str(geom):<18} N_1,d = {vals}   (closed form at d=1: {degree_one_closed(geom)})")

# The compact quintic threefold and its known degree-one value.
print("quintic N_1,1 =", zinger_hypersurface(5, 1)[1])
