"""Lower-bound envelopes for the code spectrum exponent b(rho).

Two envelopes are available. The direct one, ``R - J(t_R, rho)`` on
``rho >= tau_R``, and the cap-subcode one, which applies the direct bound to
a subcode of rate ``u <= R`` on a ring of the sphere and maps the subcode
correlation ``rho'`` back through ``1 - rho = (1 - rho') e^{2(u - R)}``.

Envelopes drop the vanishing finite-n terms, so they are asymptotic
statements; finite codes are only compared with them qualitatively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from ._optim import golden_max
from .core import _power, j_spectrum, t_of_rate, tau_of_t


def b_lower_t3(r: float, rho: float) -> float:
    t = t_of_rate(r)
    if rho < tau_of_t(t) - 1e-12:
        raise ValueError(f"rho={rho!r} below tau_R")
    return r - j_spectrum(t, rho)


def rho_from_cap(rho_prime: float, inner_r: float, outer_r: float) -> float:
    if inner_r > outer_r:
        raise ValueError("inner rate must not exceed outer rate")
    if not -1.0 <= rho_prime <= 1.0:
        raise ValueError("rho_prime must lie in [-1, 1]")
    if inner_r == outer_r:
        return rho_prime
    return 1.0 - (1.0 - rho_prime) * math.exp(2.0 * (inner_r - outer_r))


def rho_prime_from_cap(rho: float, inner_r: float, outer_r: float) -> float:
    """Inverse of :func:`rho_from_cap`."""
    return 1.0 - (1.0 - rho) * math.exp(2.0 * (outer_r - inner_r))


def b_lower_t4(outer_r: float, inner_r: float, rho_prime: float):
    """Cap-subcode envelope at subcode correlation ``rho_prime``.

    Returns ``(rho, bound)`` where ``rho`` is the correlation in the full
    code. With ``inner_r == outer_r`` this is exactly the direct envelope.
    """
    t = t_of_rate(inner_r)
    if rho_prime < tau_of_t(t) - 1e-12:
        raise ValueError(f"rho_prime={rho_prime!r} below tau of the inner rate")
    rho = rho_from_cap(rho_prime, inner_r, outer_r)
    if inner_r == outer_r:
        return rho, outer_r - j_spectrum(t, rho_prime)
    return rho, inner_r - j_spectrum(t, rho_prime) + 0.5 * math.log((1.0 + rho) / (1.0 + rho_prime))


@dataclass(frozen=True)
class SpectrumEnvelope:
    rate: float
    source: str
    eval: Callable[[float], float]
    support: tuple
    inner_rate: Optional[float] = None

    def __call__(self, rho: float) -> float:
        lo, hi = self.support
        if not lo - 1e-12 <= rho <= hi + 1e-12:
            raise ValueError(f"rho={rho!r} outside envelope support {self.support}")
        return self.eval(rho)


def theorem3_envelope(r: float) -> SpectrumEnvelope:
    tau = tau_of_t(t_of_rate(r))
    return SpectrumEnvelope(r, "direct", lambda rho: b_lower_t3(r, max(rho, tau)), (tau, 1.0))


def theorem4_envelope(r: float, inner_r: float) -> SpectrumEnvelope:
    if not 0 <= inner_r <= r:
        raise ValueError("need 0 <= inner_r <= r")
    tau_u = tau_of_t(t_of_rate(inner_r))
    lo = rho_from_cap(tau_u, inner_r, r)

    def ev(rho):
        rp = max(rho_prime_from_cap(rho, inner_r, r), tau_u)
        return b_lower_t4(r, inner_r, rp)[1]

    return SpectrumEnvelope(r, "cap", ev, (lo, 1.0), inner_rate=inner_r)


def point_envelope(r: float, rho: float, value: float) -> SpectrumEnvelope:
    return SpectrumEnvelope(r, "point", lambda _: value, (rho, rho))


@dataclass(frozen=True)
class AdditiveExponent:
    rho0: float
    value: float


def additive_exponent(p, env: SpectrumEnvelope, rho: float) -> float:
    """A(1 - rho)/4 - b(rho): pairwise error exponent minus spectrum mass."""
    return _power(p) * (1.0 - rho) / 4.0 - env(rho)


def rho0_argmax(p, env: SpectrumEnvelope, tol: float = 1e-12) -> AdditiveExponent:
    """Worst-case correlation for the additive exponent over the envelope support.

    The envelope only guarantees the spectrum bound at *some* unknown point
    of its support, so the exponent bound it certifies is the largest
    ``A(1 - rho)/4 - env(rho)`` there, equivalently the smallest
    ``A rho + 4 env(rho)``. The additive exponent is concave in ``rho`` for
    the built-in envelopes, which golden-section search relies on. Ties go
    to the smallest ``rho``.
    """
    a = _power(p)
    lo, hi = env.support
    if hi < lo:
        raise ValueError("empty envelope support")
    if hi == lo:
        return AdditiveExponent(lo, additive_exponent(a, env, lo))
    rho, val = golden_max(lambda x: additive_exponent(a, env, x), lo, hi, tol=tol)
    return AdditiveExponent(rho, val)
