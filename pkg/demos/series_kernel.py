"""Exact truncated power series: arithmetic, log/exp, and coordinate changes.

Run with ``python3 demos/series_kernel.py``.
"""
from fractions import Fraction

from gwlocal import QSeries
from gwlocal.exactmath import residue_at, residue_at_infinity, series_reversion

# Series carry their truncation order; mixing orders keeps the smaller one.
geometric = 1 / QSeries([1, -1], 6)
print("1/(1-q)        =", list(map(str, geometric.coeffs)))

s = QSeries([0, 3, Fraction(-7, 2)], 8)
print("log(exp(s)) == s:", s.exp().log() == s)

# Reversion of Q = q + q^2 gives Catalan numbers with alternating signs.
r = series_reversion(QSeries([0, 1, 1], 6))
print("reversion      =", list(map(str, r.coeffs)))
print("round trip     =", QSeries([0, 1, 1], 6).compose(r) == QSeries.variable(6))

# Residues of a rational function, given as numerator coefficients and
# (root, multiplicity) factors of the denominator.
numer = [2, 13, 27, 18]  # (2w+1)(3w+1)(3w+2)
factors = [(0, 1), (-1, 1)]
r0, r1, rinf = residue_at(numer, factors, 0), residue_at(numer, factors, -1), residue_at_infinity(numer, factors)
print(f"Res_0 = {r0}, Res_-1 = {r1}, Res_inf = {rinf}, sum = {r0 + r1 + rinf}")
