import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.special import comb

from pdlcap import channel as ch
from pdlcap import closedform as cf
from pdlcap import states as sts
from pdlcap.errors import DomainError, ValidationError
from pdlcap.qmatrix import von_neumann_entropy

probs = st.floats(0.0, 1.0, allow_nan=False)
interior = st.floats(0.01, 0.99, allow_nan=False)

# frozen from a brute-force 1e-6 grid plus golden-section refinement
RHO_HH_07_02 = 0.06870670483161953
Q1_07_02 = 0.034778601374308105
N0_07_02 = 4.421174675440435


def _eta(x: float) -> float:
    return 0.0 if x <= 0 else -x * math.log2(x)


def pattern_decrement(p_maj, p_min, maj, mnr, n, k):
    """Entropy lost in one k-erasure block when the single-minority sector is made coherent.

    Inside that sector the block is ``A J + c I``: ``A J`` comes from inputs whose
    erased photons were all majority, ``c I`` from inputs with a minority photon
    among the erased sites (those stay incoherent).
    """
    m = n - k
    if m < 2:
        return 0.0
    base = maj ** (m - 1) * mnr * p_maj ** (m - 1) * p_min
    a = base * ((1 - p_maj) * maj) ** k
    c = base * (((1 - p_maj) * maj + (1 - p_min) * mnr) ** k - ((1 - p_maj) * maj) ** k)
    return m * _eta(a + c) - _eta(m * a + c) - (m - 1) * _eta(c)


def exact_block_gain(params, sol, n):
    maj, mnr = sol.weights(params)
    total = 0.0
    for k in range(n + 1):
        out = pattern_decrement(params.p_maj, params.p_min, maj, mnr, n, k)
        env = pattern_decrement(1 - params.p_maj, 1 - params.p_min, maj, mnr, n, k)
        total += comb(n, k, exact=True) * (env - out)
    return total


def test_ic_diagonal_pure_and_erasure():
    params = ch.ChannelParams(0.7, 0.2)
    assert cf.ic_diagonal(params, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert cf.ic_diagonal(params, 1.0) == pytest.approx(0.0, abs=1e-15)
    for p in (0.6, 0.75, 0.9):
        e = ch.ChannelParams(p, p)
        assert cf.ic_diagonal(e, 0.5) == pytest.approx(2 * p - 1, abs=1e-14)
        assert ch.coherent_information_oracle(e, np.eye(2) / 2) == pytest.approx(2 * p - 1, abs=1e-12)
    qs = np.linspace(0, 1, 7)
    assert_allclose(cf.ic_diagonal(params, qs), [cf.ic_diagonal(params, q) for q in qs])


def test_golden_section():
    x, fx = cf.golden_section_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-6)
    assert fx == pytest.approx(0.0, abs=1e-12)


def test_solve_q1_examples():
    anti = cf.solve_q1(ch.ChannelParams(0.4, 0.3))
    assert anti.q1 == 0.0 and anti.degenerate

    erasure = cf.solve_q1(ch.ChannelParams(0.75, 0.75))
    assert erasure.q1 == pytest.approx(0.5, abs=1e-9)
    assert erasure.state.rho_hh == pytest.approx(0.5, abs=1e-6)

    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    assert not sol.degenerate and sol.state.rho_hh > 0 and sol.state.rho_vv > 0
    assert sol.state.rho_hh == pytest.approx(RHO_HH_07_02, abs=1e-9)
    assert sol.q1 == pytest.approx(Q1_07_02, abs=1e-14)
    grid = np.linspace(0, 1, 1_000_001)
    vals = cf.ic_diagonal(params, grid)
    assert sol.q1 >= vals.max() - 1e-15
    assert abs(grid[np.argmax(vals)] - sol.state.rho_hh) <= 1e-6
    assert cf.solve_q1(params) == sol


def test_solve_q1_mirror_exact():
    a = cf.solve_q1(ch.ChannelParams(0.7, 0.2))
    b = cf.solve_q1(ch.ChannelParams(0.2, 0.7))
    assert (a.q1, a.state.rho_hh, a.state.rho_vv) == (b.q1, b.state.rho_vv, b.state.rho_hh)


@settings(max_examples=40, deadline=None)
@given(ph=probs, pv=probs)
def test_q1_solution_invariants(ph, pv):
    params = ch.ChannelParams(ph, pv)
    sol = cf.solve_q1(params)
    assert sol.q1 >= 0
    assert sol.q1 == pytest.approx(max(cf.ic_diagonal(params, sol.state.rho_hh), 0.0), abs=1e-12)
    if not sol.degenerate:
        assert sol.q1 > 0
    if ch.is_antidegradable(params):
        assert sol.q1 <= 1e-12


@pytest.mark.parametrize("ph, pv", [(0.7, 0.2), (0.8, 0.4), (0.6, 0.1), (0.9, 0.55), (0.3, 0.95)])
def test_diagonal_input_is_optimal(ph, pv):
    params = ch.ChannelParams(ph, pv)
    q1 = cf.solve_q1(params).q1
    best = -np.inf
    for q in np.linspace(0, 1, 41):
        for frac in np.linspace(0, 1, 11):
            c = frac * math.sqrt(q * (1 - q))
            rho = np.array([[q, c], [c, 1 - q]])
            best = max(best, ch.coherent_information_oracle(params, rho, method="dense"))
    assert best <= q1 + 1e-9


def test_ic_rho2():
    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    oracle = ch.coherent_information_oracle(params, sts.rho2(sol.state))
    assert cf.ic_rho2(params, sol) == pytest.approx(oracle, abs=1e-10)

    line = ch.ChannelParams(0.7, 0.3)
    sol_line = cf.solve_q1(line)
    assert cf.ic_rho2(line, sol_line) == pytest.approx(2 * sol_line.q1, abs=1e-16)

    deg = cf.solve_q1(ch.ChannelParams(0.3, 0.2))
    assert cf.ic_rho2(ch.ChannelParams(0.3, 0.2), deg) == 2 * deg.q1


def test_w_n_examples():
    for p in [(0.7, 0.2), (0.1, 0.9), (1.0, 0.0)]:
        assert cf.w_n(ch.ChannelParams(*p), 1) == 0.0
    assert cf.w_n(ch.ChannelParams(0.3, 0.2), 2) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValidationError):
        cf.w_n(ch.ChannelParams(0.3, 0.2), 0)


@settings(max_examples=60, deadline=None)
@given(ph=probs, pv=probs, n=st.integers(2, 60))
def test_w_n_properties(ph, pv, n):
    a, b = ch.ChannelParams(ph, pv), ch.ChannelParams(pv, ph)
    assert cf.w_n(a, n) == cf.w_n(b, n)
    assert abs(cf.w_n(a, 2) - (1 - ph - pv)) <= 1e-12


def test_w_n_tie_branches_agree():
    # at p_h = p_v the two orderings give the same sum
    for p in (0.2, 0.5, 0.8):
        params = ch.ChannelParams(p, p)
        for n in (3, 7, 25):
            maj_first = cf._w_terms(p, p, n).sum()
            assert cf.w_n(params, n) == pytest.approx(maj_first, abs=1e-12)


def test_benefit_n_two_shot_identity():
    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    assert cf.benefit_n(params, sol, 2) == pytest.approx((cf.ic_rho2(params, sol) - 2 * sol.q1) / 2, abs=1e-14)
    with pytest.raises(ValidationError):
        cf.benefit_n(params, sol, 1)
    deg = cf.solve_q1(ch.ChannelParams(0.4, 0.3))
    assert cf.benefit_n(ch.ChannelParams(0.4, 0.3), deg, 5) == 0.0


@pytest.mark.parametrize("ph, pv", [(0.7, 0.2), (0.3, 0.9), (0.8, 0.45), (0.62, 0.05)])
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_w_state_block_gain_matches_oracle(ph, pv, n):
    params = ch.ChannelParams(ph, pv)
    sol = cf.solve_q1(params)
    rho = sts.rho_n(sol.state, n, params.majority)
    oracle = ch.coherent_information_oracle(params, rho) - n * sol.q1
    assert exact_block_gain(params, sol, n) == pytest.approx(oracle, abs=1e-10)


def test_unerased_decrement_has_no_incoherent_part():
    # with nothing erased the coherent sector is rank one: decrement m A log2 m
    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    maj, mnr = sol.weights(params)
    n = 3
    s = sol.state
    coh = ch.erasure_block(params, sts.rho_n(s, n), ())
    inc = ch.erasure_block(params, sts.product_power(s, n), ())
    got = von_neumann_entropy(inc) - von_neumann_entropy(coh)
    a = maj ** (n - 1) * mnr * 0.7 ** (n - 1) * 0.2
    assert got == pytest.approx(n * a * math.log2(n), abs=1e-15)
    assert pattern_decrement(0.7, 0.2, maj, mnr, n, 0) == pytest.approx(got, abs=1e-15)

    # one erased site: the incoherent admixture shrinks the decrement
    coh = ch.erasure_block(params, sts.rho_n(s, n), (2,))
    inc = ch.erasure_block(params, sts.product_power(s, n), (2,))
    got = von_neumann_entropy(inc) - von_neumann_entropy(coh)
    assert pattern_decrement(0.7, 0.2, maj, mnr, n, 1) == pytest.approx(got, abs=1e-15)
    a1 = maj ** (n - 1) * mnr * 0.7 * 0.2 * 0.3
    assert got < 2 * a1 * math.log2(2)


def test_block_benefit_formula_overstates_gain_at_07_02():
    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    for n in (3, 4):
        assert exact_block_gain(params, sol, n) / n < cf.benefit_n(params, sol, n)


def test_asymptotics():
    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    n0 = cf.n_threshold(params)
    assert n0 == pytest.approx(N0_07_02, rel=1e-14)
    assert abs(cf.w_asymptotic(params, n0)) < 1e-9
    assert cf.n_threshold(ch.ChannelParams(0.2, 0.7)) == n0
    assert cf.asymptotic_benefit(params, sol, 10**4) >= 0
    assert cf.w_asymptotic(params, 10**4) > 0

    with pytest.raises(DomainError):
        cf.w_asymptotic(ch.ChannelParams(0.6, 0.6), 100)
    with pytest.raises(DomainError):
        cf.w_asymptotic(ch.ChannelParams(1.0, 0.2), 100)
    with pytest.raises(DomainError):
        cf.n_threshold(ch.ChannelParams(0.7, 0.6))
    with pytest.raises(DomainError):
        cf.asymptotic_rate_benefit(ch.ChannelParams(0.7, 0.5), sol, 10**4)
    with pytest.raises(DomainError, match="benefit_n"):
        cf.asymptotic_rate_benefit(params, sol, 5 * n0)


def test_n_threshold_continuous_near_half():
    vals = [cf.n_threshold(ch.ChannelParams(0.5 + eps, 0.2)) for eps in (1e-3, 1e-5, 1e-7)]
    assert all(np.isfinite(vals))
    assert vals[2] == pytest.approx(vals[1], rel=1e-3)


@pytest.mark.parametrize("ph, pv", [(0.7, 0.2), (0.8, 0.4), (0.6, 0.1)])
def test_asymptotic_rate_and_term(ph, pv):
    params = ch.ChannelParams(ph, pv)
    sol = cf.solve_q1(params)
    n0 = cf.n_threshold(params)
    n = math.ceil(100 * n0)
    exact_rate = sol.q1 + cf.benefit_n(params, sol, n)
    assert abs(cf.asymptotic_rate_benefit(params, sol, n) - exact_rate) <= 0.1 * exact_rate
    # the gain itself underflows here, so compare the weights it multiplies
    errs = [
        abs((1 - 2 * params.p_min) * math.log2(m) / cf.w_n(params, m) - 1)
        for m in (math.ceil(k * n0) for k in (10, 100, 1000, 10000))
    ]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_ic_xi4():
    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    oracle = ch.coherent_information_oracle(params, sts.xi4(sol.state), method="dense")
    assert cf.ic_xi4(params, sol) == pytest.approx(oracle, abs=1e-9)
    half = ch.ChannelParams(0.5, 0.5)
    fake = cf.Q1Solution(sts.DiagonalQubitState(0.3, 0.7), 0.125, False)
    assert cf.ic_xi4(half, fake) == pytest.approx(4 * 0.125, abs=1e-16)
    assert cf.ic_xi4(params, sol) / 4 - sol.q1 == pytest.approx(cf.q4_modified_benefit(params, sol), abs=1e-15)


def test_doubling_series():
    params = ch.ChannelParams(0.7, 0.2)
    sol = cf.solve_q1(params)
    a = sol.state.rho_hh * sol.state.rho_vv
    assert cf.doubling_series_bound(params, sol, 0) == pytest.approx((1 - 0.9) * a, abs=1e-16)
    assert cf.doubling_series_bound(params, sol, 1) == pytest.approx(cf.q4_modified_benefit(params, sol), abs=1e-16)
    assert cf.doubling_series_bound(params, sol, 6) - cf.doubling_series_bound(params, sol, 5) < 1e-18
    with pytest.raises(ValidationError):
        cf.doubling_series_bound(params, sol, -1)


@settings(max_examples=40, deadline=None)
@given(ph=interior, pv=interior, q=st.floats(0.0, 1.0))
def test_doubling_monotone(ph, pv, q):
    assume(ph + pv < 1)
    params = ch.ChannelParams(ph, pv)
    sol = cf.Q1Solution(sts.DiagonalQubitState.from_hh(q), 0.0, False)
    vals = [cf.doubling_series_bound(params, sol, m) for m in range(7)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


@settings(max_examples=40, deadline=None)
@given(ph=probs, pv=probs, n=st.integers(1, 12))
def test_report_invariants(ph, pv, n):
    params = ch.ChannelParams(ph, pv)
    rep = cf.report(params, n)
    eligible = rep.classification not in (ch.Classification.ANTIDEGRADABLE, ch.Classification.BOTH)
    assert rep.superadditive == (eligible and rep.w_n > 0 and rep.benefit > 0)
    assert rep.qn_lower == rep.q1 + max(rep.benefit, 0.0)


def test_report_antidegradable_point():
    rep = cf.report(ch.ChannelParams(0.3, 0.4), 5)
    assert rep.classification is ch.Classification.ANTIDEGRADABLE
    assert rep.benefit == 0.0 and not rep.superadditive
