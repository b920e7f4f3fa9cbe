"""Genus-zero Gromov-Witten invariants and their BPS numbers.

Shows the multiple-cover inversion and the integrality survey for the three
local 5-folds that have genus-zero recipes.
"""
from gwlocal.geometry import PRESETS
from gwlocal.genus0 import gv_genus0, integrality_report, onepoint_gw, twopoint_gw

geom = PRESETS["o1x3_p3"]
gw = onepoint_gw(geom, 4)
print("GW  <H^3>:", [str(v) for v in gw.values.values()])
print("BPS n_0  :", [str(v) for v in gv_genus0(gw).values.values()])

for key in ("kp4", "o1x3_p3", "o2x2_p3"):
    g = PRESETS[key]
    for series in (onepoint_gw(g, 40), twopoint_gw(g, 40)):
        rep = integrality_report(gv_genus0(series), [5])
        print(f"{str(g):<14} {series.insertion_kind.value:<22} {rep.summary()}")
