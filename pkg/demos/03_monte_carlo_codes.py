"""
Small codes on the sphere
=========================

Builds a few desk-scale codes, looks at their inner-product spectra, and
estimates maximum-likelihood error probabilities by simulation.
"""

import math

from gaussrel.codes import (
    empirical_exponent,
    gen_code,
    ml_decode_error_mc,
    pair_rho_for_distance,
    q_func,
    spectrum_histogram,
    union_bound,
)

##############################################################################
# Spectra
# -------
# The simplex puts all mass at -1/n; a random code spreads it around 0.

for kind, n, M in (("simplex", 8, 9), ("biorthogonal", 8, 16), ("random_uniform", 8, 64)):
    h = spectrum_histogram(gen_code(kind, n, M, 1.0, seed=0))
    occupied = [(h.edges[k], h.mass[k]) for k in range(len(h.counts)) if h.counts[k]]
    print(kind, " ".join(f"[{lo:+.2f}: {m:.2f}]" for lo, m in occupied))

##############################################################################
# Two codewords
# -------------
# The error probability of a pair at squared distance d n is exactly
# Q(sqrt(d n) / 2), so the simulation can be checked against it.

n = 16
for d in (0.5, 1.0, 2.0):
    code = gen_code("pair", n, 2, 1.0, rho=pair_rho_for_distance(d, 1.0))
    est = ml_decode_error_mc(code, 100_000, seed=1)
    print(f"d={d}: p_e = {est.p_e_hat:.5f} +- {est.half_width:.5f}, exact {q_func(math.sqrt(d * n) / 2):.5f}")

code = gen_code("biorthogonal", 8, 16, 1.0)
est = ml_decode_error_mc(code, 100_000, seed=2)
print(f"biorthogonal n=8: p_e = {est.p_e_hat:.4f}, union bound {union_bound(code):.4f}")

##############################################################################
# Empirical exponents
# -------------------
# -ln(p_e)/n at short lengths sits well above the asymptotic value d/8,
# because of the polynomial prefactor.

for pt in empirical_exponent("pair", 1.0, None, [4, 8, 16, 32], 200_000, rho=0.0):
    print(f"n={pt.n:3d} exponent {pt.exponent:.4f}  (d/8 = 0.25)")
