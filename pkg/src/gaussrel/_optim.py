"""Scalar root finding and golden-section search used across the package."""

from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class ConvergenceError(ArithmeticError):
    """An iterative solver ran out of iterations or produced non-finite values."""


class BracketError(ConvergenceError):
    """The supplied interval does not bracket a sign change."""


def newton_bisect(f, df, lo, hi, xtol=1e-12, maxiter=200):
    """Find a root of ``f`` in ``[lo, hi]`` by Newton steps guarded by bisection.

    A Newton step that leaves the current bracket (or hits a non-finite
    derivative) is replaced by a bisection step, so convergence is
    guaranteed for any continuous ``f`` with a sign change on the bracket.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (math.isfinite(flo) and math.isfinite(fhi)) or (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")

    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0.0:
            return x
        if not math.isfinite(fx):
            raise ConvergenceError(f"non-finite residual at x={x}")
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
        else:
            hi = x

        d = df(x)
        x_new = x - fx / d if (d != 0.0 and math.isfinite(d)) else math.nan
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= xtol or hi - lo <= xtol:
            return x_new
        x = x_new
    raise ConvergenceError(f"newton_bisect: no convergence in {maxiter} iterations (bracket [{lo}, {hi}])")


def bisect(f, lo, hi, xtol=1e-12, maxiter=200):
    """Plain bisection; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo <= xtol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise ConvergenceError(f"bisect: no convergence in {maxiter} iterations")


def golden_max(f, lo, hi, tol=1e-10, maxiter=300):
    """Maximise a unimodal scalar function on ``[lo, hi]``.

    Returns ``(x, f(x))`` for the best point seen, endpoints included, so a
    maximum sitting on the boundary is reported exactly.
    """
    if hi < lo:
        raise ValueError("empty interval")
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    candidates = [(c, fc), (d, fd), (lo, f(lo)), (hi, f(hi))]
    # ties go to the smaller abscissa
    best = max(candidates, key=lambda p: (p[1], -p[0]))
    return best


def golden_min(f, lo, hi, tol=1e-10, maxiter=300):
    x, fx = golden_max(lambda z: -f(z), lo, hi, tol, maxiter)
    return x, -fx


def golden_max_vec(f, lo, hi, tol=1e-10, maxiter=300):
    """Elementwise golden-section maximisation over arrays of intervals.

    ``f`` maps an array of abscissae (same shape as ``lo``) to values; all
    intervals are shrunk in lockstep. Endpoints are compared at the end.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if np.all(b - a <= tol):
            break
        left = fc >= fd
        # left: keep [a, d]; right: keep [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = b - INV_PHI * (b - a)
        new_d = a + INV_PHI * (b - a)
        c_next = np.where(left, new_c, d)
        d_next = np.where(left, c, new_d)
        f_new = f(np.where(left, new_c, new_d))
        fc, fd = np.where(left, f_new, fd), np.where(left, fc, f_new)
        c, d = c_next, d_next
    lo_a = np.broadcast_to(np.asarray(lo, dtype=float), a.shape)
    hi_a = np.broadcast_to(np.asarray(hi, dtype=float), a.shape)
    xs = np.stack([lo_a, c, d, hi_a])
    fs = np.stack([f(lo_a), fc, fd, f(hi_a)])
    fs = np.where(np.isnan(fs), -np.inf, fs)
    idx = np.argmax(fs, axis=0)
    return np.take_along_axis(xs, idx[None], 0)[0], np.take_along_axis(fs, idx[None], 0)[0]
