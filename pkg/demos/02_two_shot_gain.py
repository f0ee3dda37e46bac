"""Two channel uses: adding one coherence to the product state beats Q1 when p_h + p_v < 1."""

# %%
from pdlcap import ChannelParams, coherent_information_oracle, rho2, solve_q1
from pdlcap.closedform import ic_rho2

# %% The closed form is checked against diagonalizing the 9x9 receiver and environment outputs.
for ph, pv in [(0.7, 0.2), (0.6, 0.1), (0.7, 0.3), (0.8, 0.4)]:
    params = ChannelParams(ph, pv)
    sol = solve_q1(params)
    closed = ic_rho2(params, sol)
    exact = coherent_information_oracle(params, rho2(sol.state))
    gain = closed / 2 - sol.q1
    print(f"({ph}, {pv})  Q1 = {sol.q1:.6f}  gain per use = {gain:+.3e}  |closed - exact| = {abs(closed - exact):.1e}")

# %% The sign of the gain is the sign of 1 - p_h - p_v: on the antidiagonal it is exactly zero,
# above it the coherence hurts.
