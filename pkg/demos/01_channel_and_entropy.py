"""One photon through a lossy polarization channel: outputs, entropies, one-shot capacity."""

# %%
import numpy as np

from pdlcap import ChannelParams, apply_gamma, apply_gamma_complement, classify, von_neumann_entropy
from pdlcap.closedform import ic_diagonal, solve_q1

params = ChannelParams(p_h=0.7, p_v=0.2)
print(params, classify(params))

# %% A diagonal photon keeps H with probability 0.7 and V with 0.2; the rest ends in vacuum.
plus = np.full((2, 2), 0.5)
out = apply_gamma(params, plus)
env = apply_gamma_complement(params, plus)
np.set_printoptions(precision=4, suppress=True)
print("receiver:\n", out.data.real)
print("environment:\n", env.data.real)
print("S(out) - S(env) =", von_neumann_entropy(out) - von_neumann_entropy(env), "bits")

# %% For diagonal inputs diag(q, 1-q) the coherent information has a single interior maximum.
qs = np.linspace(0, 1, 11)
for q, v in zip(qs, ic_diagonal(params, qs)):
    print(f"q = {q:.1f}   Ic = {v:+.5f}")

sol = solve_q1(params)
print(f"\nbest q = {sol.state.rho_hh:.8f}, Q1 = {sol.q1:.10f} bits")

# %% Equal losses give the erasure channel, where Q1 = 2p - 1 at q = 1/2.
for p in (0.6, 0.75, 0.9):
    s = solve_q1(ChannelParams(p, p))
    print(f"p = {p}: Q1 = {s.q1:.12f}, 2p - 1 = {2 * p - 1:.12f}, q = {s.state.rho_hh:.6f}")
