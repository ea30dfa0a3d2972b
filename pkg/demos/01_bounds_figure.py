"""
Exponent bounds for the Gaussian channel
========================================

Tabulates the constants that organise the rate axis, then draws the two
upper bounds, the classical lower bound and the sphere-packing exponent
for A = 4. The figure lands in ``bounds_A4.svg`` next to this script.
"""

import os

import numpy as np

from gaussrel import capacity, e_sp, lower_bound, thresholds, upper_bound_t1, upper_bound_t2
from gaussrel.svgplot import render

A = 4.0

##############################################################################
# The rate axis
# -------------
# Everything is in nats per dimension. Below R1bar the new bound departs
# from sphere packing; above R_crit all bounds agree.

th = thresholds(A)
for name in ("capacity", "r_crit", "r_bar1", "r_bar3", "r_bar2", "r_low"):
    print(f"{name:9s} {getattr(th, name):.6f}")
print(f"A0 = {th.a0:.6f}; the second bound improves on the first only for A > A0")

##############################################################################
# The curves
# ----------
# At R = 0 every bound starts at A/4; at capacity they all vanish.

rates = np.linspace(0.0, capacity(A), 300)
series = {
    "upper_t1": [upper_bound_t1(r, A) for r in rates],
    "upper_t2": [upper_bound_t2(r, A) for r in rates],
    "lower": [lower_bound(r, A) for r in rates],
    "e_sp": [e_sp(r, A) if r > 0 else np.nan for r in rates],
}
print("E(0) bounds:", series["upper_t1"][0], series["lower"][0], "A/4 =", A / 4)

# where the second bound is strictly better, and by how much
gain = np.array(series["upper_t1"]) - np.array(series["upper_t2"])
k = int(np.argmax(gain))
print(f"largest improvement {gain[k]:.5f} at R = {rates[k]:.4f}")

markers = [("R2bar", th.r_bar2), ("R3bar", th.r_bar3), ("R1bar", th.r_bar1), ("Rcrit", th.r_crit), ("C", th.capacity)]
out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "bounds_A4.svg")
with open(out, "w") as fh:
    fh.write(render(rates, series, markers, "Reliability function bounds, A = 4"))
print("wrote", out)
