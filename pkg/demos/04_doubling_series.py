"""Doubling the block: the four-photon state and the series of lower bounds on Q - Q1."""

# %%
import numpy as np

from pdlcap import ChannelParams, coherent_information_oracle, doubling_series_bound, solve_q1, xi4
from pdlcap.closedform import ic_xi4, q4_modified_benefit

params = ChannelParams(0.7, 0.2)
sol = solve_q1(params)

# %% Four photons: the closed form against an 81x81 diagonalization.
closed = ic_xi4(params, sol)
exact = coherent_information_oracle(params, xi4(sol.state), method="dense")
print(f"Ic(xi4): closed {closed:.12f}  exact {exact:.12f}")
print(f"gain per use {q4_modified_benefit(params, sol):.4e} bits")

# %% Each doubling adds a term (rho_HH rho_VV)^(2^m) / 2^m, so the series settles after a few steps.
for m in range(7):
    print(f"m_max = {m}: Q - Q1 >= {doubling_series_bound(params, sol, m):.15e}")

# %% Across the antidiagonal the sign flips with 1 - p_h - p_v; a negative value is a valid
# but empty bound, since Q >= Q1 holds anyway.
for pv in np.linspace(0.1, 0.5, 5):
    p = ChannelParams(0.7, float(pv))
    print(f"p_v = {pv:.1f}: bound {doubling_series_bound(p, solve_q1(p), 6):+.3e}")
