"""Sphere, cap and ring measures, two-codeword geometry, and cardinality bounds.

All surface measures are returned as natural logarithms so that dimensions
of several hundred do not overflow.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from scipy import integrate

from .core import _power


class VacuousBoundError(ValueError):
    """The requested cardinality bound is vacuous for these parameters."""


# --- surface measures ----------------------------------------------------------

def sphere_area_log(n: int, radius: float = 1.0) -> float:
    """ln of the surface area n pi^{n/2} a^{n-1} / Gamma(n/2 + 1)."""
    if int(n) != n or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not radius > 0:
        raise ValueError("radius must be positive")
    return math.log(n) + 0.5 * n * math.log(math.pi) + (n - 1) * math.log(radius) - math.lgamma(0.5 * n + 1.0)


@dataclass(frozen=True)
class CapSpec:
    n: int
    theta: float
    delta: Optional[float] = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("cap geometry needs n >= 2")
        if not 0 <= self.theta <= math.pi / 2:
            raise ValueError("theta must lie in [0, pi/2]")
        if self.delta is not None and not self.delta > 0:
            raise ValueError("ring thickness must be positive")

    @property
    def thickness(self) -> float:
        return 1.0 / self.n ** 2 if self.delta is None else self.delta


def _flag_regime(spec: CapSpec):
    if spec.theta < 1.0 / spec.n:
        warnings.warn(f"theta={spec.theta} below 1/n: outside the accuracy regime", RuntimeWarning, stacklevel=3)


def _log_sphere_prefactor(n):
    # (n-1) pi^{(n-1)/2} / Gamma((n+1)/2) = |S^{n-2}|
    return math.log(n - 1) + 0.5 * (n - 1) * math.log(math.pi) - math.lgamma(0.5 * (n + 1))


def log_sin_power_integral(m: int, lo: float, hi: float) -> float:
    """ln of the integral of sin^m(u) over [lo, hi] with 0 <= lo < hi <= pi/2.

    The integrand is scaled by sin^m(hi), its maximum on the interval, so
    the quadrature works on values in [0, 1] whatever the exponent.
    """
    if not 0 <= lo < hi <= math.pi / 2 + 1e-15:
        raise ValueError("need 0 <= lo < hi <= pi/2")
    s_hi = math.sin(hi)
    if m == 0:
        return math.log(hi - lo)

    def scaled(u):
        x = math.sin(u) / s_hi
        return x ** m

    width = hi - lo
    # the scaled integrand decays like exp(-m cot(hi) (hi - u)); point the
    # quadrature at the region that carries the mass
    scale = min(width, 50.0 / (m * max(math.cos(hi) / s_hi, 1e-300))) if math.cos(hi) > 0 else width
    pts = [hi - scale] if 0 < scale < width else None
    val, _ = integrate.quad(scaled, lo, hi, epsabs=1e-14 * width, epsrel=1e-12, limit=200, points=pts)
    return math.log(val) + m * math.log(s_hi)


def cap_area_log(spec: CapSpec, method: str = "asymptotic") -> float:
    """ln Omega_n(theta), the area of a cap of half-angle theta on the unit sphere.

    ``method="asymptotic"`` uses pi^{(n-1)/2} sin^{n-1} theta / (Gamma((n+1)/2) cos theta),
    which is exact up to a (1 + o(1)) factor and needs theta < pi/2;
    ``method="exact"`` integrates sin^{n-2}.
    """
    _flag_regime(spec)
    n, theta = spec.n, spec.theta
    if method == "exact":
        if theta == 0:
            return -math.inf
        return _log_sphere_prefactor(n) + log_sin_power_integral(n - 2, 0.0, theta)
    if method != "asymptotic":
        raise ValueError(f"unknown method {method!r}")
    if theta >= math.pi / 2:
        raise ValueError("the asymptotic cap formula needs theta < pi/2")
    if theta == 0:
        return -math.inf
    return (0.5 * (n - 1) * math.log(math.pi) + (n - 1) * math.log(math.sin(theta))
            - math.lgamma(0.5 * (n + 1)) - math.log(math.cos(theta)))


def ring_area_log(spec: CapSpec) -> float:
    """ln D_n(theta): area of the band between half-angles theta - delta and theta."""
    _flag_regime(spec)
    n, theta, delta = spec.n, spec.theta, spec.thickness
    if delta > theta:
        raise ValueError("ring thickness exceeds the half-angle")
    return _log_sphere_prefactor(n) + log_sin_power_integral(n - 2, theta - delta, theta)


def ring_sandwich_ratio(spec: CapSpec) -> float:
    """D_n Gamma((n+1)/2) n^2 / (pi^{(n-1)/2} (n-1) sin^{n-2} theta).

    With delta = 1/n^2 this lies in [1 - 1/(2 n sin theta), 1].
    """
    n, theta = spec.n, spec.theta
    log_ratio = (ring_area_log(spec) - _log_sphere_prefactor(n) + 2.0 * math.log(n)
                 - (n - 2) * math.log(math.sin(theta)))
    return math.exp(log_ratio)


# --- two-codeword geometry -----------------------------------------------------

def z_of(s: float, r: float, rho: float, p) -> float:
    """Residual variance r - (A + r - s)^2 / (2 A (1 + rho))."""
    a = _power(p)
    if not rho > -1:
        raise ValueError("rho = -1 is degenerate")
    return r - (a + r - s) ** 2 / (2.0 * a * (1.0 + rho))


def opt_sr(rho: float, p):
    """Minimisers s(rho) = A(1-rho)/2 + 1, r(rho) = A(1+rho)/2 + 1."""
    a = _power(p)
    return a * (1.0 - rho) / 2.0 + 1.0, a * (1.0 + rho) / 2.0 + 1.0


@dataclass(frozen=True)
class TripleGeometry:
    x1: float
    x2: float
    y2: float
    r1: float
    a: float
    rho: float
    s: float
    r: float

    @property
    def codeword_distance2(self) -> float:
        return 4.0 * self.x1 ** 2


def triple_coordinates(p, rho: float, s: float, r: float) -> TripleGeometry:
    """Coordinates of two codewords and an output point, per dimension.

    Codewords ``(x1, x2, 0, ...)`` and ``(-x1, x2, 0, ...)``; output
    ``(0, y2, y3, ...)`` with squared norm ``r`` and squared distance ``s`` to
    both codewords. ``r1`` is the squared norm left for ``(y3, ...)``.
    """
    a = _power(p)
    if not -1 < rho < 1:
        raise ValueError("rho must lie in (-1, 1)")
    x1 = math.sqrt(a * (1.0 - rho) / 2.0)
    x2 = math.sqrt(a * (1.0 + rho) / 2.0)
    y2 = (a + r - s) / math.sqrt(2.0 * a * (1.0 + rho))
    r1 = r - y2 * y2
    if r1 < 0:
        raise ValueError(f"negative radicand: r - y2^2 = {r1} (s={s}, r={r}, rho={rho}) has no real solution")
    return TripleGeometry(x1, x2, y2, r1, a, rho, s, r)


def lemma1_check(p, rho: float, s: float, r: float) -> bool:
    """A + r - s >= 2 sqrt(A r rho); when it holds an equidistant code has M <= 2n."""
    a = _power(p)
    if not 0 <= rho <= 1:
        raise ValueError("rho must lie in [0, 1]")
    return a + r - s >= 2.0 * math.sqrt(a * r * rho)


# --- cardinality bounds ----------------------------------------------------------

def lemma4_log_bound(n: int, mu: float) -> float:
    if not 0 <= mu < 1:
        raise ValueError("mu must lie in [0, 1)")
    if n < 1:
        raise ValueError("n must be positive")
    return math.log(2.0) + 1.5 * math.log(n) - 0.5 * n * math.log1p(-mu)


def lemma4_bound(n: int, mu: float) -> int:
    """floor(2 n^{3/2} (1 - mu)^{-n/2}): max size of a code with pairwise cosine <= mu."""
    return math.floor(math.exp(lemma4_log_bound(n, mu)) * (1 + 1e-15))


def rankin_log_f(beta: float, n: int) -> float:
    """ln f(beta, n - 2), where f = (n - 1) * integral_0^beta sin^{n-2} z dz."""
    return math.log(n - 1) + log_sin_power_integral(n - 2, 0.0, beta)


def rankin_log_bound(n: int, phi: float) -> float:
    """ln of Rankin's bound on codes with pairwise cosine at most cos(2 phi), 0 < phi < pi/4."""
    if not 0 < phi < math.pi / 4:
        raise ValueError("phi must lie in (0, pi/4)")
    if n < 3:
        raise ValueError("n must be at least 3")
    beta = math.asin(math.sqrt(2.0) * math.sin(phi))
    if math.tan(beta) ** 2 >= n + 1:
        warnings.warn("tan^2(beta) >= n + 1: outside the regime of the integral sandwich", RuntimeWarning, stacklevel=2)
    sb, cb = math.sin(beta), math.cos(beta)
    # denominator sin^{n-1} b - f cos b = sin^{n-1} b * (1 - f cos b / sin^{n-1} b)
    ratio = (n - 1) * math.exp(log_sin_power_integral(n - 2, 0.0, beta) - (n - 1) * math.log(sb)) * cb
    rest = 1.0 - ratio
    if rest <= 0:
        return math.inf
    log_num = math.log(n - 1) + 0.5 * math.log(math.pi) + math.lgamma(0.5 * (n - 1)) + math.log(sb * math.tan(beta))
    log_den = math.log(2.0) + math.lgamma(0.5 * n) + (n - 1) * math.log(sb) + math.log(rest)
    return log_num - log_den


def rankin_bound(n: int, phi: float) -> float:
    """Rankin's bound on the number of caps of angular radius phi on S^{n-1}."""
    lb = rankin_log_bound(n, phi)
    return math.exp(lb) if lb < 709.0 else math.inf


def rankin_bound_cosine(n: int, mu: float) -> float:
    """Rankin bound for a code with max pairwise cosine ``mu`` (0 < mu < 1)."""
    if not 0 < mu < 1:
        raise ValueError("mu must lie in (0, 1)")
    return rankin_bound(n, 0.5 * math.acos(mu))


def rankin_intermediate(n: int, phi: float) -> float:
    """n sqrt(pi n (1 - 2 sin^2 phi)) / (sqrt 2 (sqrt 2 sin phi)^{n-1})."""
    s = math.sqrt(2.0) * math.sin(phi)
    return math.exp(math.log(n) + 0.5 * math.log(math.pi * n * (1.0 - s * s)) - 0.5 * math.log(2.0) - (n - 1) * math.log(s))


def lemma2_cardinality_bound(n: int, rho: float, slack: float, m: Union[int, Iterable[int]]) -> int:
    """m + lemma4_bound(n, mu) with mu = 2 (slack + 1/m) / (1 - rho).

    Bounds the size of a code whose pairwise cosines all lie within
    ``slack`` of ``rho``. Passing an iterable of ``m`` returns the smallest
    non-vacuous bound; :class:`VacuousBoundError` is raised when every
    choice gives ``mu >= 1``.
    """
    if not rho < 1:
        raise ValueError("rho must be below 1")
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    ms = [m] if isinstance(m, int) else list(m)
    best = None
    for mm in ms:
        if mm < 2:
            raise ValueError("m must be at least 2")
        mu = max(0.0, 2.0 * (slack + 1.0 / mm) / (1.0 - rho))
        if mu >= 1:
            continue
        val = mm + lemma4_bound(n, mu)
        best = val if best is None else min(best, val)
    if best is None:
        raise VacuousBoundError(f"mu >= 1 for every m in {ms}: bound is vacuous")
    return best


def rankin_log_f_bracket(beta: float, n: int):
    """Closed-form bracket ``(lo, hi)`` for ``ln f(beta, n - 2)`` when tan^2 beta < n + 1.

    With ``S = sin^{n-1} b / cos b * (1 - tan^2 b / (n + 1))``, integration by
    parts gives ``S <= f <= S / (1 - 3 tan^4 b / (n^2 - 1))``; the upper end
    is infinite when the correction term reaches 1.
    """
    tb2 = math.tan(beta) ** 2
    if tb2 >= n + 1:
        raise ValueError("bracket needs tan^2(beta) < n + 1")
    base = (n - 1) * math.log(math.sin(beta)) - math.log(math.cos(beta)) + math.log1p(-tb2 / (n + 1))
    corr = 1.0 - 3.0 * tb2 * tb2 / (n * n - 1)
    return base, (base - math.log(corr) if corr > 0 else math.inf)
