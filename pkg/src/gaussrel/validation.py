"""Identity suite behind ``gaussrel validate``.

Each check evaluates an algebraic identity (or an inequality that must hold)
over a grid and reports the worst residual against a tolerance. A nonzero
``perturb`` shifts the threshold values tau_bar1 and t_bar1 before they enter
the identities that use them, which serves as a negative control.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .bounds import (
    c_of_v,
    lower_bound,
    max_gap_rcrit_rbar1,
    sphere_packing_closed_form,
    sphere_packing_numeric,
    upper_bound_t1,
    upper_bound_t2,
    v1,
)
from .core import (
    capacity,
    e_sp,
    g_sp,
    j_spectrum,
    rate_of_t,
    t_of_rate,
    tau_of_t,
    thresholds,
)
from .geometry import opt_sr, z_of

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float
    points: int

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)
    max_gap: float = math.nan
    max_gap_at: float = math.nan

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> List[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'}  {c.name:<44s} residual={c.residual:.3e} tol={c.tol:.0e} points={c.points}"
               for c in self.checks]
        out.append(f"max_A (R_crit - R1bar) = {self.max_gap:.6f} at A = {self.max_gap_at:.6f}")
        return out


def _worst(values) -> float:
    v = np.abs(np.asarray(values, dtype=float))
    return float(np.nan_to_num(v, nan=np.inf).max())


def run_suite(perturb: float = 0.0, a_grid=None, n_rates: int = 50, tol: float = DEFAULT_TOL) -> Report:
    a_grid = np.geomspace(0.05, 100.0, 60) if a_grid is None else np.asarray(a_grid, dtype=float)
    rep = Report()

    def add(name, residuals, points, t=tol):
        rep.checks.append(Check(name, _worst(residuals), t, points))

    th_list = [thresholds(a) for a in a_grid]
    tau1 = np.array([th.tau_bar1 for th in th_list]) + perturb
    t1 = np.array([th.t_bar1 for th in th_list]) + perturb
    rc = np.array([th.r_crit for th in th_list])
    esp_rc = np.array([e_sp(r, a) for r, a in zip(rc, a_grid)])

    add("junction E_sp(Rc)+Rc = A(1-tau1)/4 + ln(1+2t1)",
        esp_rc + rc - (a_grid * (1 - tau1) / 4 + np.log1p(2 * t1)), len(a_grid))
    add("1 + 2 t1 = sqrt(A / (4 tau1))", 1 + 2 * t1 - np.sqrt(a_grid / (4 * tau1)), len(a_grid))
    add("Rc = -ln(1 - tau1) / 2", rc + 0.5 * np.log1p(-tau1), len(a_grid))
    add("A tau1 = A / tau1 - 4", a_grid * tau1 - (a_grid / tau1 - 4), len(a_grid))
    add("A (1 - exp(-2 Rc)) = A tau1", a_grid * -np.expm1(-2 * rc) - a_grid * tau1, len(a_grid))
    add("g(Rc) = (1 + tau1) sqrt(A) / (2 sqrt(tau1))",
        [g_sp(r, a) - (1 + t) * math.sqrt(a) / (2 * math.sqrt(t)) for r, a, t in zip(rc, a_grid, tau1)], len(a_grid))
    add("tau(t1) = tau1", [tau_of_t(t) - u for t, u in zip(t1, tau1)], len(a_grid))
    add("v1 = exp(-2 Rc)", [v1(a) - math.exp(-2 * r) for a, r in zip(a_grid, rc)], len(a_grid))
    add("C(v1) = E_sp(Rc) + Rc", [c_of_v(v1(a), a) - e - r for a, e, r in zip(a_grid, esp_rc, rc)], len(a_grid))

    th0 = th_list[0]
    add("R3bar - Rc independent of A", [th.r_bar3 - th.r_crit - (th0.r_bar3 - th0.r_crit) for th in th_list], len(a_grid))
    add("a = (1 - tau2) exp(2 R2bar)", [th0.a_const - (1 - th0.tau_bar2) * math.exp(2 * th0.r_bar2)], 1)
    add("A0 = 4 tau2 / (1 - tau2^2)", [th0.a0 - 4 * th0.tau_bar2 / (1 - th0.tau_bar2 ** 2)], 1, 1e-8)

    rates = np.linspace(1e-3, 2.0, n_rates)
    ts = [t_of_rate(r) for r in rates]
    add("R(t_of_rate(R)) = R", [rate_of_t(t) - r for t, r in zip(ts, rates)], n_rates)
    add("J(t_R, tau_R) = ln(1 + 2 t_R)", [j_spectrum(t, tau_of_t(t)) - math.log1p(2 * t) for t in ts], n_rates)
    add("J(t_R, 1) = R", [j_spectrum(t, 1.0) - r for t, r in zip(ts, rates)], n_rates)

    rhos = np.linspace(-0.95, 1.0, n_rates)
    z_res, z_shift = [], []
    for a in a_grid[::6]:
        for rho in rhos:
            s, r = opt_sr(rho, a)
            z_res.append(z_of(s, r, rho, a) - 1.0)
        s0, r0 = opt_sr(0.3, a)
        for rho in rhos:
            z_shift.append(z_of(s0, r0, rho, a) - (1 + a * 1.3 * (rho - 0.3) / (2 * (1 + rho))))
    add("z(s(rho), r(rho), rho) = 1", z_res, len(z_res))
    add("z(s(rho0), r(rho0), rho) shift formula", z_shift, len(z_shift))

    sp_res, bound_viol, cont = [], [], []
    for a in a_grid[::6]:
        c = capacity(a)
        for r in c * np.arange(1, n_rates + 1) / (n_rates + 1):
            sp_res.append(sphere_packing_numeric(r, a).exponent - sphere_packing_closed_form(r, a).exponent)
        for r in np.linspace(0.0, c, n_rates):
            lo, u2, u1 = lower_bound(r, a), upper_bound_t2(r, a), upper_bound_t1(r, a)
            bound_viol.append(max(0.0, lo - u2, u2 - u1))
        th = thresholds(a)
        for edge in (th.r_bar1, th.r_crit, th.r_bar2, th.r_bar3, th.r_low):
            if 0 < edge < c:
                for f in (upper_bound_t1, upper_bound_t2, lower_bound):
                    cont.append(f(edge * (1 + 1e-12), a) - f(edge, a))
    add("sphere-packing numeric = closed form", sp_res, len(sp_res), 1e-6)
    add("lower <= upper_t2 <= upper_t1", bound_viol, len(bound_viol), 1e-12)
    add("bounds continuous at thresholds", cont, len(cont), 1e-9)

    rep.max_gap_at, rep.max_gap = max_gap_rcrit_rbar1()
    return rep

