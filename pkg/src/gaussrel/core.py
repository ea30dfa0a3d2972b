"""Scalar special functions of the power-constrained Gaussian channel.

Rates are in nats per dimension. ``A`` is the signal power per dimension
(noise has unit variance), so ``A`` doubles as the signal-to-noise ratio.

The parametrisation used throughout::

    R(t)   = (1 + t) ln(1 + t) - t ln t          t >= 0
    tau(t) = 2 sqrt(t (1 + t)) / (1 + 2 t)

maps the rate axis to the correlation axis; ``t_of_rate`` inverts ``R``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from ._optim import BracketError, bisect, newton_bisect

__all__ = [
    "ChannelParams",
    "ThresholdSet",
    "rate_of_t",
    "t_of_rate",
    "tau_of_t",
    "tau_of_rate",
    "capacity",
    "r_crit",
    "r_low",
    "g_sp",
    "e_sp",
    "d_of_t",
    "d_sign_changes",
    "t_bar2",
    "a0",
    "thresholds",
    "j_spectrum",
    "j_spectrum_drho",
    "j_spectrum_dt",
    "j_spectrum_drho2",
    "j_spectrum_array",
]


@dataclass(frozen=True)
class ChannelParams:
    """Per-dimension signal power ``a`` (unit-variance noise)."""

    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"signal power must be positive and finite, got {self.a!r}")


def _power(p) -> float:
    if isinstance(p, ChannelParams):
        return p.a
    a = float(p)
    if not (math.isfinite(a) and a > 0):
        raise ValueError(f"signal power must be positive and finite, got {p!r}")
    return a


def _check_rate(r):
    if not r >= 0:
        raise ValueError(f"rate must be nonnegative, got {r!r}")


# --- rate <-> t <-> correlation -------------------------------------------------

def rate_of_t(t: float) -> float:
    """Return ``(1+t) ln(1+t) - t ln t``; the ``t = 0`` limit is 0."""
    if not t >= 0:
        raise ValueError(f"t must be nonnegative, got {t!r}")
    if t == 0:
        return 0.0
    return (1.0 + t) * math.log1p(t) - t * math.log(t)


def _drate_dt(t: float) -> float:
    if t == 0:
        return math.inf
    return math.log1p(1.0 / t)


def t_of_rate(r: float, tol: float = 1e-12) -> float:
    """Invert :func:`rate_of_t` by bracketed Newton iteration."""
    _check_rate(r)
    if r == 0:
        return 0.0
    # R(t) >= -t ln t >= t on [0, 1/e], so t_R <= R there
    hi = r if r <= math.exp(-1.0) else math.exp(r)
    while rate_of_t(hi) <= r:
        hi *= 2.0
    # tiny rates map to tiny t, so the step tolerance scales down with r
    return newton_bisect(lambda t: rate_of_t(t) - r, _drate_dt, 0.0, hi, xtol=tol * min(1.0, r))


def tau_of_t(t: float) -> float:
    if not t >= 0:
        raise ValueError(f"t must be nonnegative, got {t!r}")
    return 2.0 * math.sqrt(t * (1.0 + t)) / (1.0 + 2.0 * t)


def tau_of_rate(r: float) -> float:
    return tau_of_t(t_of_rate(r))


# --- channel quantities --------------------------------------------------------

def capacity(p) -> float:
    return 0.5 * math.log1p(_power(p))


def r_crit(p) -> float:
    a = _power(p)
    return 0.5 * math.log((2.0 + a + math.sqrt(a * a + 4.0)) / 4.0)


def r_low(p) -> float:
    """Rate where the expurgated part of the classical lower bound ends."""
    a = _power(p)
    return 0.5 * math.log((2.0 + math.sqrt(a * a + 4.0)) / 4.0)


def g_sp(r: float, p) -> float:
    a = _power(p)
    w = a * (-math.expm1(-2.0 * r))
    return 0.5 * (math.sqrt(w) + math.sqrt(w + 4.0))


def e_sp(r: float, p) -> float:
    """Sphere-packing exponent, defined for ``0 < r <= capacity``."""
    a = _power(p)
    c = capacity(a)
    if not 0 < r <= c * (1 + 1e-15):
        raise ValueError(f"rate {r!r} outside (0, C={c}]")
    w = a * (-math.expm1(-2.0 * r))
    g = 0.5 * (math.sqrt(w) + math.sqrt(w + 4.0))
    return max(0.0, 0.5 * a - 0.5 * math.sqrt(w) * g - math.log(g) + r)


# --- the D(t) equation and A-independent constants -----------------------------

def d_of_t(t: float) -> float:
    if not t > 0:
        raise ValueError("D(t) is singular at t = 0")
    return math.log1p(1.0 / t) - 0.5 / math.sqrt(t * (1.0 + t)) - 1.0 / (1.0 + 2.0 * t)


def _d_prime(t: float) -> float:
    s = t * (1.0 + t)
    return -1.0 / s + (1.0 + 2.0 * t) / (4.0 * s ** 1.5) + 2.0 / (1.0 + 2.0 * t) ** 2


def d_sign_changes(lo: float = 1e-4, hi: float = 1.0, points: int = 4001) -> int:
    """Count sign changes of D on a log-spaced scan grid."""
    ts = np.geomspace(lo, hi, points)
    vals = np.array([d_of_t(t) for t in ts])
    return int(np.count_nonzero(np.diff(np.sign(vals)) != 0))


@lru_cache(maxsize=None)
def t_bar2() -> float:
    """Unique positive root of D(t) = 0 (about 0.061176)."""
    return newton_bisect(d_of_t, _d_prime, 1e-4, 1.0)


@lru_cache(maxsize=None)
def a0() -> float:
    """Smallest power A with R1bar(A) >= R2bar, found by bisection on [0.1, 10]."""
    target = rate_of_t(t_bar2())
    return bisect(lambda a: rate_of_t(_t_bar1(a)) - target, 0.1, 10.0, xtol=1e-13)


def _t_bar1(a: float) -> float:
    return (math.sqrt(2.0 + math.sqrt(4.0 + a * a)) - 2.0) / 4.0


@dataclass(frozen=True)
class ThresholdSet:
    a: float
    capacity: float
    r_crit: float
    r_bar1: float
    r_bar3: float
    r_low: float
    tau_bar1: float
    t_bar1: float
    t_bar2: float
    r_bar2: float
    tau_bar2: float
    a_const: float
    a0: float

    def chain_holds(self) -> bool:
        """Strict ordering r_low < r_bar2 < r_bar3 < r_bar1 < r_crit."""
        return self.r_low < self.r_bar2 < self.r_bar3 < self.r_bar1 < self.r_crit

    def as_dict(self) -> dict:
        return asdict(self)


def thresholds(p) -> ThresholdSet:
    a = _power(p)
    try:
        t2 = t_bar2()
        a_zero = a0()
    except BracketError as exc:  # pragma: no cover - fixed brackets
        raise BracketError(f"threshold root bracketing failed: {exc}") from exc
    t1 = _t_bar1(a)
    tau1 = a / (2.0 + math.sqrt(4.0 + a * a))
    rc = r_crit(a)
    r2 = rate_of_t(t2)
    tau2 = tau_of_t(t2)
    return ThresholdSet(
        a=a,
        capacity=capacity(a),
        r_crit=rc,
        r_bar1=rate_of_t(t1),
        r_bar3=rc + r2 + 0.5 * math.log1p(-tau2),
        r_low=r_low(a),
        tau_bar1=tau1,
        t_bar1=t1,
        t_bar2=t2,
        r_bar2=r2,
        tau_bar2=tau2,
        a_const=(1.0 - tau2) * math.exp(2.0 * r2),
        a0=a_zero,
    )


# --- the spectrum function J(t, rho) -------------------------------------------

def _check_j_domain(t, rho):
    if not t >= 0:
        raise ValueError(f"t must be nonnegative, got {t!r}")
    tau = tau_of_t(t)
    if rho < tau - 1e-12:
        raise ValueError(f"rho={rho!r} below tau(t)={tau!r}: discriminant negative")


def _q(t, rho):
    disc = (1.0 + 2.0 * t) ** 2 * rho * rho - 4.0 * t * (1.0 + t)
    return rho + math.sqrt(max(disc, 0.0)), max(disc, 0.0)


def j_spectrum(t: float, rho: float) -> float:
    """J(t, rho), defined for ``rho >= tau(t)``; J(0, rho) = 0."""
    _check_j_domain(t, rho)
    if t == 0:
        return 0.0
    q, _ = _q(t, rho)
    return (1.0 + 2.0 * t) * math.log(2.0 * t * rho + q) - math.log(q) - t * math.log(4.0 * t * (1.0 + t))


def j_spectrum_drho(t: float, rho: float) -> float:
    _check_j_domain(t, rho)
    if t == 0:
        return 0.0
    q, _ = _q(t, rho)
    return 4.0 * t * (1.0 + t) / q


def j_spectrum_drho2(t: float, rho: float) -> float:
    """Second rho-derivative; tends to -inf as rho approaches tau(t) from above."""
    _check_j_domain(t, rho)
    if t == 0:
        return 0.0
    q, disc = _q(t, rho)
    if disc == 0.0:
        return -math.inf
    return -4.0 * t * (1.0 + t) / q ** 2 * (1.0 + (1.0 + 2.0 * t) ** 2 * rho / math.sqrt(disc))


def j_spectrum_dt(t: float, rho: float) -> float:
    _check_j_domain(t, rho)
    if t == 0:
        raise ValueError("J'_t is singular at t = 0")
    q, _ = _q(t, rho)
    return 2.0 * math.log(2.0 * t * rho + q) - math.log(4.0 * t * (1.0 + t))


def j_spectrum_array(t, rho):
    """Vectorised J for arrays with ``rho >= tau(t)`` (no domain checks)."""
    t = np.asarray(t, dtype=float)
    rho = np.asarray(rho, dtype=float)
    disc = np.maximum((1.0 + 2.0 * t) ** 2 * rho * rho - 4.0 * t * (1.0 + t), 0.0)
    q = rho + np.sqrt(disc)
    pos = t > 0
    ts = np.where(pos, t, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (1.0 + 2.0 * ts) * np.log(2.0 * ts * rho + q) - np.log(q) - ts * np.log(4.0 * ts * (1.0 + ts))
    return np.where(pos, val, 0.0)
