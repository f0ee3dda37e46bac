"""
Analytic coherent-information formulas for the erasure-type channel.

Everything is in bits.  Where a formula depends on which polarization is
transmitted better, ``maj``/``min`` refer to the larger/smaller of
``(p_h, p_v)``; ties are treated as ``p_h`` being the majority.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, xlog1py, xlogy

from .channel import ChannelParams, Classification, classify
from .errors import DomainError, ValidationError
from .states import DiagonalQubitState

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

Q1_SCAN_POINTS = 1001
DEGENERATE_Q_TOL = 1e-9
# maxima at or below this are treated as Ic == 0 (pure-state optimum)
Q1_ZERO_TOL = 1e-14


@dataclass(frozen=True)
class Q1Solution:
    state: DiagonalQubitState
    q1: float
    degenerate: bool

    def weights(self, params: ChannelParams) -> tuple[float, float]:
        return self.state.weights(params.majority)


@dataclass(frozen=True)
class SuperadditivityReport:
    params: ChannelParams
    n: int
    classification: Classification
    q1: float
    w_n: float
    benefit: float
    qn_lower: float
    superadditive: bool


def _entropy3(a, b, c):
    return -(xlogy(a, a) + xlogy(b, b) + xlogy(c, c)) / math.log(2.0)


def ic_diagonal(params: ChannelParams, q):
    """One-shot coherent information of ``diag(q, 1 - q)``.

    Output and environment states are both diagonal, so their entropies are
    Shannon entropies of three-outcome distributions.  Accepts scalar or
    array ``q``.
    """
    ph, pv = params.p_h, params.p_v
    q = np.asarray(q, dtype=float)
    r = 1.0 - q
    out = _entropy3(ph * q, pv * r, (1 - ph) * q + (1 - pv) * r)
    env = _entropy3((1 - ph) * q, (1 - pv) * r, ph * q + pv * r)
    val = out - env
    return float(val) if val.ndim == 0 else val


def golden_section_max(f, a: float, b: float, tol: float = 1e-12, max_iter: int = 200) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
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
    return (c, fc) if fc >= fd else (d, fd)


def solve_q1(params: ChannelParams) -> Q1Solution:
    """Best diagonal input for one channel use.

    A 1001-point scan locates the bracket, then golden-section search refines
    it.  The search runs in terms of the weight ``t`` on the better-transmitted
    polarization so that swapping ``p_h`` and ``p_v`` gives a bit-identical
    mirrored answer.
    """
    canon = ChannelParams(params.p_maj, params.p_min)
    grid = np.linspace(0.0, 1.0, Q1_SCAN_POINTS)
    vals = ic_diagonal(canon, grid)
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    t, val = golden_section_max(lambda x: ic_diagonal(canon, x), float(lo), float(hi))
    if vals[i] > val:
        t, val = float(grid[i]), float(vals[i])
    if val <= Q1_ZERO_TOL or t < DEGENERATE_Q_TOL or t > 1.0 - DEGENERATE_Q_TOL:
        t = 1.0 if val <= Q1_ZERO_TOL else float(round(t))
        val = max(ic_diagonal(canon, t), 0.0)
        degenerate = True
    else:
        degenerate = False
    if params.majority == "H":
        state = DiagonalQubitState(t, 1.0 - t)
    else:
        state = DiagonalQubitState(1.0 - t, t)
    return Q1Solution(state, max(val, 0.0), degenerate)


def ic_rho2(params: ChannelParams, solution: Q1Solution) -> float:
    """Two-shot coherent information of the partially coherent pair state."""
    a = solution.state.rho_hh * solution.state.rho_vv
    return 2.0 * solution.q1 + 2.0 * (1.0 - params.p_h - params.p_v) * a


@lru_cache(maxsize=32)
def _w_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = np.arange(n, dtype=float)
    log_binom = gammaln(n) - gammaln(k + 1) - gammaln(n - k)
    return log_binom, np.log2(n - k), np.log2(k + 1)


def _w_terms(p_maj: float, p_min: float, n: int) -> np.ndarray:
    log_binom, log_rest, log_succ = _w_tables(n)
    lo, hi = 0, n
    if n > 2000 and 0.0 < p_maj < 1.0:
        # weights beyond ~50 standard deviations are below exp(-1000)
        mean = (n - 1) * p_maj
        width = 50.0 * math.sqrt((n - 1) * p_maj * (1 - p_maj)) + 50.0
        lo, hi = max(0, math.floor(mean - width)), min(n, math.ceil(mean + width) + 1)
    k = np.arange(lo, hi, dtype=float)
    log_w = log_binom[lo:hi] + xlogy(k, p_maj) + xlog1py(n - 1 - k, -p_maj)
    # combine the two logarithms per k before weighting
    c = (1.0 - p_min) * log_rest[lo:hi] - p_min * log_succ[lo:hi]
    return np.exp(log_w) * c


def w_n(params: ChannelParams, n: int) -> float:
    """Superadditivity weight; positive values certify a benefit at block length ``n``.

    The binomial weights are formed in the log domain and the terms are
    summed with exact-rounding (``math.fsum``) so the sign is reliable close
    to the zero level.
    """
    n = int(n)
    if n < 1:
        raise ValidationError(f"w_n needs n >= 1, got {n}")
    terms = _w_terms(params.p_maj, params.p_min, n)
    # terms this small cannot move the sum; they only slow fsum down
    big = np.abs(terms) > 1e-25 * np.abs(terms).max(initial=0.0)
    return math.fsum(terms[big].tolist())


def benefit_n(params: ChannelParams, solution: Q1Solution, n: int) -> float:
    """Per-use gain ``rho_maj^(n-1) rho_min w_n`` of the W-state block code."""
    if n < 2:
        raise ValidationError(f"benefit_n needs n >= 2, got {n}")
    if solution.degenerate:
        return 0.0
    maj, mnr = solution.weights(params)
    return maj ** (n - 1) * mnr * w_n(params, n)


def _strict_order(params: ChannelParams) -> tuple[float, float]:
    if params.p_h == params.p_v:
        raise DomainError("asymptotic form needs p_h != p_v")
    if not (0.0 < params.p_min and params.p_maj < 1.0):
        raise DomainError("asymptotic form needs both transmission factors in (0, 1)")
    return params.p_maj, params.p_min


def w_asymptotic(params: ChannelParams, n: float) -> float:
    p_maj, p_min = _strict_order(params)
    return (1 - 2 * p_min) * math.log2(n) + (1 - p_min) * math.log2(1 - p_maj) - p_min * math.log2(p_maj)


def n_threshold(params: ChannelParams) -> float:
    """Block length at which the asymptotic weight crosses zero."""
    p_maj, p_min = params.p_maj, params.p_min
    if not (0.0 < p_min < 0.5 < p_maj < 1.0):
        raise DomainError(f"n_threshold needs 0 < p_min < 1/2 < p_maj < 1, got ({params.p_h}, {params.p_v})")
    return (p_maj**p_min / (1 - p_maj) ** (1 - p_min)) ** (1.0 / (1 - 2 * p_min))


def asymptotic_benefit(params: ChannelParams, solution: Q1Solution, n: float) -> float:
    """Leading large-``n`` term ``(1 - 2 p_min) rho_maj^(n-1) rho_min log2 n`` of the block-code gain.

    Requires ``n >= 10 n0``; below that use :func:`benefit_n`.  Only the
    ``log2 n`` part of ``w_n`` is kept, so the ratio to :func:`benefit_n`
    approaches one like ``1 / log n``.
    """
    n0 = n_threshold(params)
    if n < 10 * n0:
        raise DomainError(f"n = {n} is not >> n0 = {n0:.4g} (need n >= 10 n0); use benefit_n instead")
    maj, mnr = solution.weights(params)
    return (1 - 2 * params.p_min) * maj ** (n - 1) * mnr * math.log2(n)


def asymptotic_rate_benefit(params: ChannelParams, solution: Q1Solution, n: float) -> float:
    """Large-``n`` approximation ``q1 + asymptotic_benefit`` of the per-use rate of the W-state block code."""
    return solution.q1 + asymptotic_benefit(params, solution, n)


def ic_xi4(params: ChannelParams, solution: Q1Solution) -> float:
    """Four-shot coherent information of the doubled pair state."""
    ph, pv = params.p_h, params.p_v
    a = solution.state.rho_hh * solution.state.rho_vv
    return (
        4.0 * solution.q1
        + 4.0 * (1 - ph - pv) * a
        + 2.0 * a * a * ((1 - ph) ** 2 * (1 - pv) ** 2 - ph**2 * pv**2)
    )


def q4_modified_benefit(params: ChannelParams, solution: Q1Solution) -> float:
    """Per-use gain of the doubled pair state, in factored form."""
    ph, pv = params.p_h, params.p_v
    a = solution.state.rho_hh * solution.state.rho_vv
    return (1 - ph - pv) * a * (1 + 0.5 * a * (1 - ph - pv + 2 * ph * pv))


def doubling_series_bound(params: ChannelParams, solution: Q1Solution, m_max: int) -> float:
    """Partial sum of the repeated-doubling lower bound on ``Q - Q1``.

    Stops early once the prefactor ``(rho_hh rho_vv)^(2^m) / 2^m`` drops
    below 1e-300.  For ``p_h + p_v > 1`` the result is negative, which is a
    true but uninformative bound.
    """
    if m_max < 0:
        raise ValidationError(f"m_max must be >= 0, got {m_max}")
    ph, pv = params.p_h, params.p_v
    a = solution.state.rho_hh * solution.state.rho_vv
    lost, kept = (1 - ph) * (1 - pv), ph * pv
    total = []
    for m in range(m_max + 1):
        block = 2**m
        prefactor = a**block / block
        if prefactor < 1e-300:
            break
        k = np.arange(block, dtype=float)
        inner = math.fsum((np.power(lost, block - k - 1) * np.power(kept, k)).tolist())
        total.append(prefactor * inner)
    return (1 - ph - pv) * math.fsum(total)


def report(params: ChannelParams, n: int, solution: Q1Solution | None = None) -> SuperadditivityReport:
    """Everything known about block length ``n`` at one parameter point."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    sol = solution or solve_q1(params)
    cls = classify(params)
    w = w_n(params, n)
    benefit = benefit_n(params, sol, n) if n >= 2 else 0.0
    eligible = cls not in (Classification.ANTIDEGRADABLE, Classification.BOTH)
    superadditive = eligible and w > 0 and benefit > 0
    return SuperadditivityReport(
        params=params,
        n=n,
        classification=cls,
        q1=sol.q1,
        w_n=w,
        benefit=benefit,
        qn_lower=sol.q1 + max(benefit, 0.0),
        superadditive=superadditive,
    )
