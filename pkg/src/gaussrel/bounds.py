"""Upper and lower bounds on the reliability function E(R, A).

Piecewise bounds are dispatched on the thresholds of :func:`gaussrel.core.thresholds`;
a rate that sits exactly on a boundary goes to the left branch (the branches
agree there, so the choice does not change the value).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._optim import ConvergenceError, golden_max, golden_max_vec, golden_min, newton_bisect
from .core import (
    _power,
    capacity,
    e_sp,
    g_sp,
    j_spectrum,
    j_spectrum_array,
    r_crit,
    rate_of_t,
    t_of_rate,
    tau_of_t,
    thresholds,
)


class BoundKind(enum.Enum):
    SPHERE_PACKING_CLOSED = "SpherePackingClosed"
    SPHERE_PACKING_NUMERIC = "SpherePackingNumeric"
    UPPER_T1 = "UpperT1"
    UPPER_T2 = "UpperT2"
    LOWER_CLASSICAL = "LowerClassical"
    STRAIGHT_LINE = "StraightLine"
    EXACT = "Exact"


@dataclass
class BoundCurve:
    a: float
    kind: BoundKind
    rates: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.rates = np.asarray(self.rates, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.rates.shape != self.values.shape:
            raise ValueError("rates and values differ in shape")
        if np.any(np.diff(self.rates) <= 0):
            raise ValueError("rates must be strictly increasing")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("exponents must be finite and nonnegative")

    @property
    def samples(self):
        return list(zip(self.rates.tolist(), self.values.tolist()))


def _check_range(r, a, allow_zero=True):
    c = capacity(a)
    lo_ok = r >= 0 if allow_zero else r > 0
    if not (lo_ok and r <= c * (1 + 1e-15)):
        raise ValueError(f"rate {r!r} outside [0, C={c}]")


def _low_rate_t1(r, a):
    """Bound from the direct spectrum envelope: A(1 - tau_R)/4 + ln(1 + 2 t_R) - R."""
    t = t_of_rate(r)
    return a * (1.0 - tau_of_t(t)) / 4.0 + math.log1p(2.0 * t) - r


def straight_line(anchor_r: float, anchor_e: float, r: float) -> float:
    """Slope -1 extension of the point (anchor_r, anchor_e) to lower rates."""
    if r > anchor_r:
        raise ValueError("straight-line extension only runs toward lower rates")
    return anchor_e + (anchor_r - r)


def upper_bound_t1(r: float, p) -> float:
    a = _power(p)
    _check_range(r, a)
    if r == 0:
        return a / 4.0
    th = thresholds(a)
    if r <= th.r_bar1:
        return _low_rate_t1(r, a)
    if r <= th.r_crit:
        return straight_line(th.r_crit, e_sp(th.r_crit, a), r)
    return e_sp(r, a)


def _t2_middle(r, a, a_const):
    v = a_const * math.exp(-2.0 * r)
    return a * v / 4.0 - 0.5 * math.log(2.0 - v) - 0.5 * math.log(a_const)


def upper_bound_t2(r: float, p) -> float:
    a = _power(p)
    _check_range(r, a)
    th = thresholds(a)
    if a <= th.a0:
        return upper_bound_t1(r, a)
    if r == 0:
        return a / 4.0
    if r <= th.r_bar2:
        return _low_rate_t1(r, a)
    if r <= th.r_bar3:
        return _t2_middle(r, a, th.a_const)
    if r <= th.r_crit:
        return straight_line(th.r_crit, e_sp(th.r_crit, a), r)
    return e_sp(r, a)


def lower_bound(r: float, p) -> float:
    a = _power(p)
    _check_range(r, a)
    th = thresholds(a)
    if r <= th.r_low:
        return a * (1.0 - math.sqrt(-math.expm1(-2.0 * r))) / 4.0
    if r <= th.r_crit:
        return straight_line(th.r_crit, e_sp(th.r_crit, a), r)
    return e_sp(r, a)


def exact_region(p):
    """Rate interval on which upper and lower bounds coincide."""
    a = _power(p)
    th = thresholds(a)
    lo = th.r_bar3 if a > th.a0 else th.r_bar1
    return lo, th.capacity


def bound_curve(kind: BoundKind, p, rates) -> BoundCurve:
    a = _power(p)
    fn = {
        BoundKind.UPPER_T1: upper_bound_t1,
        BoundKind.UPPER_T2: upper_bound_t2,
        BoundKind.LOWER_CLASSICAL: lower_bound,
        BoundKind.SPHERE_PACKING_CLOSED: e_sp,
        BoundKind.SPHERE_PACKING_NUMERIC: lambda r, a: sphere_packing_numeric(r, a).exponent,
    }.get(kind)
    if fn is None:
        raise ValueError(f"no sampler for {kind}")
    rates = np.asarray(rates, dtype=float)
    return BoundCurve(a, kind, rates, np.array([fn(float(r), a) for r in rates]))


# --- sphere-packing bound via the constrained optimisation ---------------------

@dataclass(frozen=True)
class SpherePackingSolution:
    """Stationary point of ln r - s under the single-codeword volume constraint."""

    lam: float
    r_var: float
    s_var: float
    r1: float
    exponent: float
    residuals: dict = field(default_factory=dict, compare=False)


def _r1(s, r, a):
    return s - (r - a - s) ** 2 / (4.0 * a)


def sphere_packing_closed_form(r: float, p) -> SpherePackingSolution:
    a = _power(p)
    w = -math.expm1(-2.0 * r)
    g = g_sp(r, a)
    lam = math.sqrt(a) / (g * math.sqrt(w))
    r_var = 1.0 / (1.0 - lam * w)
    s_var = r_var + a - 2.0 * a / lam
    exponent = (s_var - 1.0) / 2.0 + r - 0.5 * math.log(r_var)
    return SpherePackingSolution(lam, r_var, s_var, _r1(s_var, r_var, a), exponent)


def sphere_packing_numeric(r: float, p, tol: float = 1e-12) -> SpherePackingSolution:
    """Sphere-packing exponent by direct numerical optimisation.

    Maximises ``ln r_var - s_var`` subject to
    ``s - (r_var - A - s)^2 / (4A) = r_var e^{-2R}``. For fixed ``r_var`` the
    constraint is a quadratic in ``s`` whose smaller root is the feasible
    optimum; the remaining one-dimensional problem is concave in ``ln r_var``
    and is solved by golden-section search. The Lagrange multiplier is then
    recovered from the stationarity condition in ``s`` and every closed-form
    quantity is checked against the numerical solution.
    """
    a = _power(p)
    c = capacity(a)
    if not 0 < r < c:
        raise ValueError(f"rate {r!r} outside (0, C={c})")
    w = -math.expm1(-2.0 * r)

    def s_of(rv):
        return rv + a - 2.0 * math.sqrt(a * rv * w)

    def objective(log_rv):
        rv = math.exp(log_rv)
        return log_rv - s_of(rv)

    log_rv, _ = golden_max(objective, math.log(0.25), math.log(4.0 * (1.0 + a)), tol=1e-9)
    # polish on the stationarity condition 1/r - 1 + sqrt(A w / r) = 0
    rv = newton_bisect(
        lambda x: 1.0 / x - 1.0 + math.sqrt(a * w / x),
        lambda x: -1.0 / x ** 2 - 0.5 * math.sqrt(a * w) * x ** -1.5,
        math.exp(log_rv) * 0.5,
        math.exp(log_rv) * 2.0,
        xtol=tol,
    )
    s = s_of(rv)
    lam = 1.0 / (1.0 + (rv - a - s) / (2.0 * a))
    r1 = _r1(s, rv, a)
    exponent = (s - 1.0) / 2.0 + r - 0.5 * math.log(rv)

    ref = sphere_packing_closed_form(r, a)
    residuals = {
        "constraint": abs(s - (rv - a - s) ** 2 / (4.0 * a) - rv * math.exp(-2.0 * r)),
        "volume_balance": abs(math.exp(2.0 * r) * r1 - rv),
        "lambda_quadratic": abs(w * lam * lam + a * w * lam - a),
        "r_var": abs(rv - ref.r_var) / ref.r_var,
        "s_var": abs(s - ref.s_var) / max(1.0, abs(ref.s_var)),
        "exponent": abs(exponent - ref.exponent),
    }
    if residuals["constraint"] > 1e-9 or residuals["r_var"] > 1e-4 or residuals["exponent"] > 1e-6:
        raise ConvergenceError(f"sphere-packing optimiser did not converge: {residuals}")
    return SpherePackingSolution(lam, rv, s, r1, exponent, residuals)


# --- cap-subcode reduction functions ------------------------------------------

def c_of_v(v: float, p) -> float:
    a = _power(p)
    if not 0 < v <= 1:
        raise ValueError(f"v must lie in (0, 1], got {v!r}")
    return a * v / 4.0 - 0.5 * math.log(v * (2.0 - v))


def v_of_r(u: float, r: float) -> float:
    if u > r:
        raise ValueError("inner rate must not exceed the outer rate")
    return (1.0 - tau_of_t(t_of_rate(u))) * math.exp(2.0 * (u - r))


def v1(p) -> float:
    a = _power(p)
    return 4.0 / (a + 2.0 + math.sqrt(a * a + 4.0))


def f2(u: float) -> float:
    return 2.0 * u + math.log1p(-tau_of_t(t_of_rate(u)))


def max_gap_rcrit_rbar1(lo: float = 0.1, hi: float = 10.0, tol: float = 1e-10):
    """Maximise R_crit(A) - R1bar(A) over A by golden-section search in ln A.

    Returns ``(A_max, gap)``.
    """
    def gap(log_a):
        a = math.exp(log_a)
        return r_crit(a) - thresholds(a).r_bar1

    x, g = golden_max(gap, math.log(lo), math.log(hi), tol=tol)
    return math.exp(x), g


# --- min-max form of the cap-subcode bound ---------------------------------------

def f_minmax(u: float, rho: float, r: float, p) -> float:
    """Objective f(u, rho) whose min over u of max over rho bounds E(R, A)."""
    a = _power(p)
    t = t_of_rate(u)
    k = math.exp(2.0 * (u - r))
    return (a * (1.0 - rho) * k / 4.0 + r - 2.0 * u + j_spectrum(t, rho)
            + 0.5 * math.log((1.0 + rho) / (2.0 / k + rho - 1.0)))


def _f_vec(a, r, u, t, rho):
    k = np.exp(2.0 * (u - r))
    return (a * (1.0 - rho) * k / 4.0 + r - 2.0 * u + j_spectrum_array(t, rho)
            + 0.5 * np.log((1.0 + rho) / (2.0 / k + rho - 1.0)))


@dataclass(frozen=True)
class MinMaxSolution:
    value: float
    inner_rate: float
    rho: float


_EPS = 1e-9


def _inner_max(a, r, u, tol=1e-11):
    t = t_of_rate(u)
    tau = tau_of_t(t)
    lo, hi = min(tau + _EPS, 1.0 - _EPS), 1.0 - _EPS
    k = math.exp(2.0 * (u - r))
    const = r - 2.0 * u

    def f(rho):
        return (a * (1.0 - rho) * k / 4.0 + const + j_spectrum(t, rho)
                + 0.5 * math.log((1.0 + rho) / (2.0 / k + rho - 1.0)))

    rho, val = golden_max(f, lo, hi, tol=tol)
    # the lower end of the support is tau itself
    f_tau = f(tau)
    if f_tau >= val:
        return tau, f_tau
    return rho, val


def theorem2_minmax(r: float, p, grid: int = 512, tol: float = 1e-10) -> MinMaxSolution:
    """min over u in [0, R] of max over rho in [tau_u, 1) of f(u, rho).

    Coarse stage: the inner maximisation is run for all ``grid`` values of
    ``u`` at once (vectorised golden section). Refinement: golden section in
    ``u`` on the two grid cells around the best grid point.
    """
    a = _power(p)
    _check_range(r, a, allow_zero=False)
    us = np.linspace(0.0, r, grid)
    ts = np.array([t_of_rate(float(u)) for u in us])
    taus = np.array([tau_of_t(float(t)) for t in ts])
    lo = np.minimum(taus + _EPS, 1.0 - _EPS)
    hi = np.full_like(lo, 1.0 - _EPS)
    _, vals = golden_max_vec(lambda rho: _f_vec(a, r, us, ts, rho), lo, hi, tol=1e-9)
    vals = np.maximum(vals, _f_vec(a, r, us, ts, taus))
    k = int(np.argmin(vals))
    u_lo, u_hi = us[max(k - 1, 0)], us[min(k + 1, grid - 1)]

    u_star, v_star = golden_min(lambda u: _inner_max(a, r, u)[1], float(u_lo), float(u_hi), tol=tol)
    rho_star = _inner_max(a, r, u_star)[0]
    return MinMaxSolution(v_star, u_star, rho_star)


def theorem2_numeric(r: float, p, grid: int = 512) -> float:
    return theorem2_minmax(r, p, grid=grid).value
