"""Running the exact verification suite.

Every check compares two rational numbers computed along independent routes,
for instance a degree-one localization sum with random torus weights against
a closed form.
"""
from collections import Counter

from gwlocal.geometry import PRESETS
from gwlocal.verify import check_degree_one_localization, run_suite

for seed in range(3):
    print(check_degree_one_localization(PRESETS["o1x3_p3"], seed).line())

results = run_suite(n_max=8, lemma72_max=20, binomial_max=10)
print(Counter(r.name for r in results))
print("failures:", [r.line() for r in results if not r.passed])
