"""
Spectrum envelopes and the additive exponent
============================================

Any code of rate R has many codeword pairs at correlation rho. The
envelope b(rho) lower-bounds (1/n) ln of that pair count, and each such pair
contributes roughly exp(-n A (1 - rho) / 4) to the error probability. The
worst rho0 gives an upper bound on the exponent.
"""

import numpy as np

from gaussrel import thresholds, upper_bound_t1, upper_bound_t2
from gaussrel.spectrum import rho0_argmax, theorem3_envelope, theorem4_envelope

A, R = 4.0, 0.3
th = thresholds(A)

##############################################################################
# Direct envelope
# ---------------
env = theorem3_envelope(R)
lo, hi = env.support
for rho in np.linspace(lo, hi, 6):
    print(f"rho={rho:.3f}  b(rho) >= {env(rho):.4f}")

best = rho0_argmax(A, env)
print(f"direct envelope: rho0 = {best.rho0:.4f}, exponent <= {best.value:.5f}"
      f" (first bound {upper_bound_t1(R, A):.5f})")

##############################################################################
# Cap subcodes
# ------------
# Restricting to a cap whose subcode has rate u and recentering gives a
# second envelope; minimising over u recovers the sharper bound.

values = []
us = np.linspace(0.0, R, 121)
for u in us:
    values.append(rho0_argmax(A, theorem4_envelope(R, u)).value)
k = int(np.argmin(values))
print(f"cap envelopes: best u = {us[k]:.4f} (R2bar = {th.r_bar2:.4f}), exponent <= {values[k]:.5f}")
print(f"second bound from the closed form: {upper_bound_t2(R, A):.5f}")
