"""Longer blocks: W-state coherence on the single-minority sector, the w_n criterion and its limits."""

# %%
from pdlcap import ChannelParams, benefit_n, coherent_information_oracle, rho_n, solve_q1, w_n
from pdlcap.closedform import n_threshold, w_asymptotic

params = ChannelParams(0.7, 0.2)
sol = solve_q1(params)

# %% w_n grows with n, so the region where it is positive grows too.
for n in (2, 3, 4, 10, 100, 10**4, 10**6):
    print(f"n = {n:>7}  w_n = {w_n(params, n):+.6f}")
n0 = n_threshold(params)
print(f"asymptotic root n0 = {n0:.4f}; w_asymptotic(10^6) = {w_asymptotic(params, 10**6):.6f}")

# %% The block formula against direct diagonalization of the 3^n-dimensional outputs.
# The two agree when nothing is lost, but an erased minority photon leaves an incoherent
# admixture in the surviving sector that the formula ignores, so the formula overstates the gain.
for n in (2, 3, 4, 5):
    formula = benefit_n(params, sol, n)
    exact = (coherent_information_oracle(params, rho_n(sol.state, n, params.majority)) - n * sol.q1) / n
    print(f"n = {n}  formula {formula:+.4e}   exact {exact:+.4e}")

# %% On the antidiagonal the n = 3 weight is positive even though the two-shot gain vanishes.
line = ChannelParams(0.7, 0.3)
line_sol = solve_q1(line)
exact3 = (coherent_information_oracle(line, rho_n(line_sol.state, 3)) - 3 * line_sol.q1) / 3
print(f"\n(0.7, 0.3): w_3 = {w_n(line, 3):+.4f}, formula gain {benefit_n(line, line_sol, 3):+.3e}, exact {exact3:+.3e}")
