"""
Self-checks comparing closed-form expressions against direct diagonalization.

``run_checks("fast")`` stays at n <= 3; ``"full"`` adds the four-photon
cross-checks.  Each check returns a :class:`CheckResult`; nothing raises on a
numerical mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import channel as ch
from . import closedform as cf
from . import states as st
from .qmatrix import DensityMatrix, random_density, von_neumann_entropy

ORACLE_TOL = 1e-9


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def nondegenerate_points(rng: np.random.Generator, count: int) -> list[tuple[ch.ChannelParams, cf.Q1Solution]]:
    """Random parameter points outside the antidegradable set, with their Q1 solutions."""
    out = []
    while len(out) < count:
        ph, pv = rng.uniform(0.02, 0.98, size=2)
        params = ch.ChannelParams(float(ph), float(pv))
        if ch.is_antidegradable(params):
            continue
        sol = cf.solve_q1(params)
        if not sol.degenerate:
            out.append((params, sol))
    return out


def _oracle_gap(points, closed: Callable, state: Callable) -> float:
    worst = 0.0
    for params, sol in points:
        exact = ch.coherent_information_oracle(params, state(params, sol), method="dense")
        worst = max(worst, abs(exact - closed(params, sol)))
    return worst


def _result(name: str, err: float, tol: float) -> CheckResult:
    return CheckResult(name, bool(err <= tol), f"max error {err:.3e} (tol {tol:g})")


def check_entropy_examples(rng) -> CheckResult:
    cases = [(np.diag([1.0, 0.0]), 0.0), (np.diag([0.5, 0.5]), 1.0), (np.diag([0.5, 0.25, 0.25]), 1.5)]
    err = max(abs(von_neumann_entropy(m) - v) for m, v in cases)
    return _result("entropy of dyadic spectra", err, 1e-12)


def check_kraus_sum(rng) -> CheckResult:
    err = 0.0
    for _ in range(5):
        params = ch.ChannelParams(*rng.uniform(0, 1, size=2))
        ks = ch.kraus_operators(params)
        for _ in range(20):
            r = random_density(2, rng)
            via_kraus = sum(k @ r @ k.conj().T for k in ks)
            err = max(err, float(np.abs(via_kraus - ch.apply_gamma(params, r).data).max()))
    return _result("Kraus sum reproduces the channel", err, 1e-14)


def check_ic_diagonal(rng, points) -> CheckResult:
    err = 0.0
    for params, _ in points:
        q = float(rng.uniform())
        exact = ch.coherent_information_oracle(params, np.diag([q, 1 - q]), method="dense")
        err = max(err, abs(exact - cf.ic_diagonal(params, q)))
    return _result("one-shot diagonal Ic vs oracle", err, 1e-10)


def check_ic_rho2(rng, points) -> CheckResult:
    err = _oracle_gap(points, cf.ic_rho2, lambda p, s: st.rho2(s.state))
    return _result("two-shot Ic of rho2 vs oracle (n=2)", err, ORACLE_TOL)


def _benefit_check(n: int):
    def closed(params, sol):
        return n * (sol.q1 + cf.benefit_n(params, sol, n))

    def state(params, sol):
        return st.rho_n(sol.state, n, params.majority)

    def check(rng, points) -> CheckResult:
        err = _oracle_gap(points, closed, state)
        return _result(f"W-state block benefit vs oracle (n={n})", err, ORACLE_TOL)

    return check


def check_erasure_q1(rng) -> CheckResult:
    value_err = q_err = 0.0
    for p in (0.6, 0.75, 0.9):
        sol = cf.solve_q1(ch.ChannelParams(p, p))
        value_err = max(value_err, abs(sol.q1 - (2 * p - 1)))
        q_err = max(q_err, abs(sol.state.rho_hh - 0.5))
    ok = value_err <= 1e-9 and q_err <= 1e-6
    detail = f"value error {value_err:.3e} (tol 1e-9), maximizer error {q_err:.3e} (tol 1e-6)"
    return CheckResult("erasure channel Q1 = 2p - 1 at q = 1/2", ok, detail)


def check_w2_identity(rng) -> CheckResult:
    err = 0.0
    for ph in np.linspace(0, 1, 21):
        for pv in np.linspace(0, 1, 21):
            params = ch.ChannelParams(float(ph), float(pv))
            err = max(err, abs(cf.w_n(params, 2) - (1 - ph - pv)))
    return _result("w_2 = 1 - p_h - p_v", err, 1e-12)


def check_ic_xi4(rng, points) -> CheckResult:
    err = _oracle_gap(points, cf.ic_xi4, lambda p, s: st.xi4(s.state))
    return _result("four-shot Ic of xi4 vs 81-dim oracle", err, ORACLE_TOL)


def check_blocked_vs_dense(rng) -> CheckResult:
    err = 0.0
    for n in (1, 2, 3, 4):
        params = ch.ChannelParams(*rng.uniform(0, 1, size=2))
        r = DensityMatrix(random_density(2**n, rng))
        for comp in (False, True):
            dense = ch.output_entropy(params, r, comp, method="dense")
            blocked = ch.output_entropy(params, r, comp, method="blocked")
            err = max(err, abs(dense - blocked))
    return _result("blocked and dense output entropies agree (n<=4)", err, 1e-9)


def check_gram_complement(rng) -> CheckResult:
    err = 0.0
    for _ in range(20):
        params = ch.ChannelParams(*rng.uniform(0, 1, size=2))
        ks = ch.kraus_operators(params)
        for _ in range(5):
            r = random_density(2, rng)
            gram = von_neumann_entropy(ch.kraus_complement(ks, r))
            err = max(err, abs(gram - von_neumann_entropy(ch.apply_gamma_complement(params, r))))
    return _result("Gram-matrix complement entropy matches p -> 1-p", err, 1e-10)


def run_checks(level: str = "fast", seed: int = 0, n_points: int = 5) -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    rng = np.random.default_rng(seed)
    points = nondegenerate_points(rng, n_points)
    results = [
        check_entropy_examples(rng),
        check_kraus_sum(rng),
        check_ic_diagonal(rng, points),
        check_ic_rho2(rng, points),
        _benefit_check(3)(rng, points),
        check_erasure_q1(rng),
        check_w2_identity(rng),
    ]
    if level == "full":
        results += [
            _benefit_check(4)(rng, points),
            check_ic_xi4(rng, points),
            check_blocked_vs_dense(rng),
            check_gram_complement(rng),
        ]
    return results
