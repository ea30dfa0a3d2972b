"""Small spherical codes: generators, exact spectra, and Monte Carlo decoding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.special import ndtr

from .core import _power

KINDS = ("random_uniform", "simplex", "biorthogonal", "pair")
BLOCK = 4096  # trials per independently seeded noise block


def q_func(x):
    """Gaussian tail probability P(N(0,1) > x)."""
    return ndtr(-np.asarray(x, dtype=float)) if np.ndim(x) else float(ndtr(-x))


@dataclass(frozen=True)
class SphericalCode:
    n: int
    power: float
    codewords: np.ndarray  # shape (M, n)
    kind: str = "custom"

    def __post_init__(self):
        x = np.asarray(self.codewords, dtype=float)
        if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] != self.n:
            raise ValueError(f"codewords must have shape (M >= 1, {self.n}), got {x.shape}")
        target = self.power * self.n
        norms = np.einsum("ij,ij->i", x, x)
        if np.max(np.abs(norms - target)) > 1e-9 * target:
            raise ValueError("codewords violate the power constraint |x|^2 = A n")
        object.__setattr__(self, "codewords", x)

    @property
    def M(self) -> int:
        return self.codewords.shape[0]

    @property
    def rate(self) -> float:
        return math.log(self.M) / self.n

    def gram(self) -> np.ndarray:
        """Matrix of normalized inner products (x_i, x_j) / (A n)."""
        return np.clip(self.codewords @ self.codewords.T / (self.power * self.n), -1.0, 1.0)

    def cosine(self, i: int, j: int) -> float:
        """Correctly rounded (x_i, x_j) / (A n)."""
        xi, xj = self.codewords[i], self.codewords[j]
        return min(1.0, max(-1.0, math.fsum(xi * xj) / (self.power * self.n)))

    def max_cosine(self) -> float:
        if self.M < 2:
            return -1.0
        g = self.gram()
        np.fill_diagonal(g, -np.inf)
        return float(g.max())


def _simplex_vertices(m: int) -> np.ndarray:
    # centred unit basis vectors of R^m expressed in an orthonormal basis of their span
    e = np.eye(m) - 1.0 / m
    q, _ = np.linalg.qr(e[:, : m - 1])
    v = e @ q
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def gen_code(kind: str, n: int, M: Optional[int], p, seed: Optional[int] = None, rho: Optional[float] = None) -> SphericalCode:
    """Build a code on the sphere of squared radius ``A n``.

    ``random_uniform`` normalizes i.i.d. standard normal vectors drawn from
    ``numpy.random.default_rng(seed)``. ``simplex`` needs ``M <= n + 1``,
    ``biorthogonal`` needs ``M = 2n`` and ``pair`` needs ``M = 2`` and the
    correlation ``rho``. Passing ``M=None`` picks the natural size for the
    fixed-size kinds.
    """
    a = _power(p)
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    radius = math.sqrt(a * n)
    if kind == "random_uniform":
        if M is None or M < 1:
            raise ValueError("random_uniform needs M >= 1")
        g = np.random.default_rng(seed).standard_normal((M, n))
        x = g / np.linalg.norm(g, axis=1, keepdims=True)
    elif kind == "simplex":
        M = n + 1 if M is None else M
        if not 1 <= M <= n + 1:
            raise ValueError(f"simplex needs 1 <= M <= n + 1, got M={M}, n={n}")
        x = np.zeros((M, n))
        if M == 1:
            x[0, 0] = 1.0
        else:
            x[:, : M - 1] = _simplex_vertices(M)
    elif kind == "biorthogonal":
        M = 2 * n if M is None else M
        if M != 2 * n:
            raise ValueError(f"biorthogonal needs M = 2n, got M={M}, n={n}")
        x = np.vstack([np.eye(n), -np.eye(n)])
    elif kind == "pair":
        M = 2 if M is None else M
        if M != 2:
            raise ValueError("pair needs M = 2")
        if rho is None or not -1.0 <= rho <= 1.0:
            raise ValueError("pair needs rho in [-1, 1]")
        if n < 2 and abs(rho) != 1.0:
            raise ValueError("pair with |rho| < 1 needs n >= 2")
        x = np.zeros((2, n))
        x[0, 0] = 1.0
        x[1, 0] = rho
        if n > 1:
            x[1, 1] = math.sqrt(max(0.0, 1.0 - rho * rho))
    else:
        raise ValueError(f"unknown code kind {kind!r}; expected one of {KINDS}")
    return SphericalCode(n, a, radius * x, kind)


def pair_rho_for_distance(d: float, p) -> float:
    """Correlation giving squared distance ``d`` per dimension: 2A(1 - rho) = d."""
    a = _power(p)
    if not 0 < d <= 4 * a:
        raise ValueError(f"squared distance per dimension must lie in (0, 4A], got {d}")
    return 1.0 - d / (2.0 * a)


# --- spectrum ------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumHistogram:
    edges: np.ndarray  # bin k is [edges[k], edges[k+1])
    counts: np.ndarray  # ordered pairs i != j per bin
    M: int
    n: int

    @property
    def mass(self) -> np.ndarray:
        return self.counts / self.M

    @property
    def total_mass(self) -> float:
        return float(self.counts.sum()) / self.M

    def exponents(self) -> List[Optional[float]]:
        """b = ln(mass) / n per bin; empty bins are ``None``."""
        return [math.log(c / self.M) / self.n if c else None for c in self.counts]


def spectrum_edges(bin_width: float) -> np.ndarray:
    if not bin_width > 0:
        raise ValueError("bin_width must be positive")
    k = math.ceil(2.0 / bin_width)
    edges = -1.0 + np.arange(k + 1) * bin_width
    if edges[-1] <= 1.0:
        # rho = 1 must fall inside the last half-open bin
        edges = np.append(edges, -1.0 + (k + 1) * bin_width)
    return edges


def spectrum_histogram(code: SphericalCode, bin_width: Optional[float] = None, edge_tol: float = 1e-9) -> SpectrumHistogram:
    """Ordered-pair histogram of normalized inner products, bins ``[-1 + k w, -1 + (k+1) w)``.

    Inner products come from one matrix product; the few that land within
    ``edge_tol`` of a bin edge are recomputed with correctly rounded sums so
    the binning is identical to a pair-by-pair evaluation.
    """
    if bin_width is None:
        bin_width = 1.0 / math.sqrt(code.power * code.n)
    edges = spectrum_edges(bin_width)
    m = code.M
    counts = np.zeros(len(edges) - 1, dtype=np.int64)
    if m < 2:
        return SpectrumHistogram(edges, counts, m, code.n)
    g = code.gram()
    iu, ju = np.triu_indices(m, 1)
    rho = g[iu, ju]
    pos = np.searchsorted(edges, rho)
    near = np.minimum(np.abs(rho - edges[np.clip(pos, 0, len(edges) - 1)]),
                      np.abs(rho - edges[np.clip(pos - 1, 0, len(edges) - 1)])) <= edge_tol
    for k in np.flatnonzero(near):
        rho[k] = code.cosine(int(iu[k]), int(ju[k]))
    idx = np.searchsorted(edges, rho, side="right") - 1
    # each unordered pair contributes two ordered pairs with the same cosine
    counts += 2 * np.bincount(idx, minlength=len(counts))[: len(counts)]
    return SpectrumHistogram(edges, counts, m, code.n)


def code_spectrum(code: SphericalCode, s: float, t: float) -> float:
    """B(s, t): ordered pairs with s <= rho_ij < t, divided by M."""
    if not s < t:
        raise ValueError("need s < t")
    if code.M < 2:
        return 0.0
    iu, ju = np.triu_indices(code.M, 1)
    rho = code.gram()[iu, ju]
    for k in np.flatnonzero((np.abs(rho - s) <= 1e-9) | (np.abs(rho - t) <= 1e-9)):
        rho[k] = code.cosine(int(iu[k]), int(ju[k]))
    return 2.0 * np.count_nonzero((rho >= s) & (rho < t)) / code.M


# --- Monte Carlo decoding --------------------------------------------------------

@dataclass(frozen=True)
class DecodingEstimate:
    p_e_hat: float
    trials: int
    errors: int
    half_width: float
    seed: Optional[int]


def ml_decode(codewords: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Minimum-distance decisions for received rows ``y``; ties go to the lowest index."""
    x = np.asarray(codewords, dtype=float)
    score = 2.0 * (y @ x.T) - np.einsum("ij,ij->i", x, x)
    return np.argmax(score, axis=1)


def _block_errors(x, norms, msgs, noise):
    y = x[msgs] + noise
    score = 2.0 * (y @ x.T) - norms
    best = score.max(axis=1)
    hit = score[np.arange(len(msgs)), msgs]
    unique = np.count_nonzero(score == best[:, None], axis=1) == 1
    return int(np.count_nonzero(~((hit == best) & unique)))


def ml_decode_error_mc(code: SphericalCode, trials: int, seed: Optional[int] = 0) -> DecodingEstimate:
    """Estimate the ML (minimum-distance) error probability over unit-variance AWGN.

    Trials are grouped into blocks of ``BLOCK``; block ``b`` draws its messages
    and noise from ``SeedSequence(seed, spawn_key=(b,))``, so every trial's
    noise is a fixed function of (seed, trial index, coordinate) and blocks can
    be evaluated in any order. A decision counts as correct only when the
    transmitted index is the unique minimizer.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if code.M == 1:
        return DecodingEstimate(0.0, trials, 0, 0.0, seed)
    x = code.codewords
    norms = np.einsum("ij,ij->i", x, x)
    errors = 0
    for b, start in enumerate(range(0, trials, BLOCK)):
        size = min(BLOCK, trials - start)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(b,)))
        msgs = rng.integers(code.M, size=size)
        noise = rng.standard_normal((size, code.n))
        errors += _block_errors(x, norms, msgs, noise)
    p = errors / trials
    hw = 1.959963984540054 * math.sqrt(p * (1.0 - p) / trials)
    return DecodingEstimate(p, trials, errors, hw, seed)


@dataclass(frozen=True)
class ExponentPoint:
    n: int
    M: int
    rate: float
    exponent: Optional[float]  # None when there are no error events to speak of (M = 1)
    ci: tuple  # (low, high) exponent range from the 95% interval on p_e
    one_sided: bool  # True when no errors were seen and only a lower bound is known
    estimate: Optional[DecodingEstimate] = None


def empirical_exponent(kind: str, p, rate_target: Optional[float], n_list, trials: int, seed: int = 0,
                       rho: Optional[float] = None) -> List[ExponentPoint]:
    """-ln(p_e_hat)/n at each blocklength, for qualitative comparison with the bounds.

    ``random_uniform`` and ``simplex`` use ``M = round(e^{nR})``; the other
    kinds have their size fixed and ignore ``rate_target``. With no observed
    errors the exponent is reported as the one-sided bound from the 95%
    upper limit 3/trials on p_e.
    """
    a = _power(p)
    out = []
    for i, n in enumerate(n_list):
        if kind in ("random_uniform", "simplex"):
            if rate_target is None or rate_target < 0:
                raise ValueError(f"{kind} needs a nonnegative rate_target")
            m = max(1, int(round(math.exp(n * rate_target))))
        else:
            m = None
        code = gen_code(kind, n, m, a, seed=None if seed is None else seed + i, rho=rho)
        if code.M == 1:
            out.append(ExponentPoint(n, 1, 0.0, None, (None, None), False))
            continue
        est = ml_decode_error_mc(code, trials, seed)
        if est.errors == 0:
            lo = -math.log(3.0 / trials) / n
            out.append(ExponentPoint(n, code.M, code.rate, lo, (lo, math.inf), True, est))
            continue
        ph = est.p_e_hat
        lo = -math.log(min(1.0, ph + est.half_width)) / n
        hi = -math.log(ph - est.half_width) / n if ph > est.half_width else math.inf
        out.append(ExponentPoint(n, code.M, code.rate, -math.log(ph) / n, (lo, hi), False, est))
    return out


def union_bound(code: SphericalCode) -> float:
    """Average over codewords of sum_j Q(|x_i - x_j| / 2); exact for two codewords."""
    if code.M < 2:
        return 0.0
    g = code.codewords @ code.codewords.T
    sq = np.diag(g)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * g, 0.0)
    q = ndtr(-np.sqrt(d2) / 2.0)
    np.fill_diagonal(q, 0.0)
    return float(min(1.0, q.sum() / code.M))
