"""
Caps, rings and packing bounds
==============================

Surface measures in high dimension, computed in log scale, and the two
cardinality bounds used for codes with small pairwise correlation.
"""

import math

from gaussrel.codes import gen_code
from gaussrel.geometry import (
    CapSpec,
    cap_area_log,
    lemma2_cardinality_bound,
    lemma4_bound,
    rankin_bound_cosine,
    ring_area_log,
    ring_sandwich_ratio,
    sphere_area_log,
)

##############################################################################
# A cap of half-angle theta holds about sin(theta)^n of the sphere

for n in (50, 200, 1000):
    theta = math.pi / 4
    frac = (cap_area_log(CapSpec(n, theta), method="exact") - sphere_area_log(n)) / n
    ring = (ring_area_log(CapSpec(n, theta)) - sphere_area_log(n)) / n
    print(f"n={n:5d}  cap {frac:+.4f}  ring {ring:+.4f}  ln sin = {math.log(math.sin(theta)):+.4f}"
          f"  ring ratio {ring_sandwich_ratio(CapSpec(n, theta)):.6f}")

##############################################################################
# Cardinality bounds
# ------------------
# Rankin's bound is tighter than the simple polynomial-times-exponential one.

for n in (16, 64):
    for mu in (0.1, 0.3, 0.5):
        print(f"n={n} mu={mu}: lemma4 {lemma4_bound(n, mu):.3g}  rankin {rankin_bound_cosine(n, mu):.3g}")

code = gen_code("random_uniform", 32, 512, 1.0, seed=0)
mu = code.max_cosine()
print(f"random code n=32 M=512 has max cosine {mu:.3f}; bounds {lemma4_bound(32, mu)} and {rankin_bound_cosine(32, mu):.3g}")

# codes whose correlations all sit near rho have size growing slower than any exponential
for n in (16, 64, 256):
    b = lemma2_cardinality_bound(n, 0.5, 1.0 / n, [2 ** k for k in range(1, 20)])
    print(f"n={n}: equicorrelated codes have at most {b} words, (ln M)/n = {math.log(b) / n:.3f}")
