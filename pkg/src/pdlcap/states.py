"""
Input states: the diagonal one-shot ansatz, its tensor powers, the
W-state-enhanced block states and their doubled versions.

Qubit basis index 0 is ``H`` and 1 is ``V``; site 0 is the most significant
bit.  ``majority`` names the polarization that fills all but one site of the
W-state; pick the better-transmitted one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .qmatrix import BasisLabel, DensityMatrix

XI_MAX_SITES = 8


@dataclass(frozen=True)
class DiagonalQubitState:
    rho_hh: float
    rho_vv: float

    def __post_init__(self):
        for name in ("rho_hh", "rho_vv"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {v!r}")
            object.__setattr__(self, name, float(v))
        if abs(self.rho_hh + self.rho_vv - 1.0) > 1e-12:
            raise ValidationError(f"rho_hh + rho_vv = {self.rho_hh + self.rho_vv!r}, expected 1")

    @classmethod
    def from_hh(cls, rho_hh: float) -> "DiagonalQubitState":
        return cls(rho_hh, 1.0 - rho_hh)

    def weights(self, majority: str = "H") -> tuple[float, float]:
        """``(rho_majority, rho_minority)``."""
        _check_majority(majority)
        if majority == "H":
            return self.rho_hh, self.rho_vv
        return self.rho_vv, self.rho_hh

    @property
    def degenerate(self) -> bool:
        return self.rho_hh * self.rho_vv == 0.0

    def matrix(self) -> DensityMatrix:
        return DensityMatrix(np.diag([self.rho_hh, self.rho_vv]), BasisLabel.qubits(1))


def _check_majority(majority: str) -> None:
    if majority not in ("H", "V"):
        raise ValidationError(f"majority must be 'H' or 'V', got {majority!r}")


def single_minority_indices(n: int, majority: str = "H") -> list[int]:
    """Basis indices with exactly one minority photon, minority at site 0 first."""
    _check_majority(majority)
    if majority == "H":
        return [1 << (n - 1 - site) for site in range(n)]
    full = (1 << n) - 1
    return [full ^ (1 << (n - 1 - site)) for site in range(n)]


def w_state(n: int, majority: str = "H") -> np.ndarray:
    """Equal superposition of the ``n`` states with a single minority photon."""
    if n < 1:
        raise ValidationError(f"W-state needs n >= 1, got {n}")
    psi = np.zeros(2**n)
    psi[single_minority_indices(n, majority)] = 1.0 / math.sqrt(n)
    return psi


def product_diagonal(state: DiagonalQubitState, n: int) -> np.ndarray:
    d = np.ones(1)
    for _ in range(n):
        d = np.kron(d, [state.rho_hh, state.rho_vv])
    return d


def product_power(state: DiagonalQubitState, n: int) -> DensityMatrix:
    """``(rho_opt)^{tensor n}``."""
    return DensityMatrix(np.diag(product_diagonal(state, n)), BasisLabel.qubits(n))


def rho2(state: DiagonalQubitState) -> DensityMatrix:
    a = state.rho_hh * state.rho_vv
    m = np.diag(product_diagonal(state, 2)).astype(complex)
    m[1, 2] = m[2, 1] = a
    return DensityMatrix(m, BasisLabel.qubits(2))


def rho_n(state: DiagonalQubitState, n: int, majority: str = "H") -> DensityMatrix:
    """Product state made fully coherent on the single-minority subspace.

    Inside that subspace the matrix is ``n rho_maj^(n-1) rho_min |W><W|``;
    everywhere else it coincides with ``(rho_opt)^{tensor n}``.  The
    diagonal is unchanged.
    """
    if n < 2:
        raise ValidationError(f"rho_n needs n >= 2, got {n}")
    maj, mnr = state.weights(majority)
    m = np.diag(product_diagonal(state, n)).astype(complex)
    idx = single_minority_indices(n, majority)
    m[np.ix_(idx, idx)] = maj ** (n - 1) * mnr
    return DensityMatrix(m, BasisLabel.qubits(n))


def xi_2n(state: DiagonalQubitState, n: int, majority: str = "H") -> DensityMatrix:
    """Doubled block state on ``2n`` qubits.

    Takes ``rho_n`` (the plain product state when ``n == 1``) twice and adds
    the coherence between ``|maj^n min^n>`` and ``|min^n maj^n>`` with weight
    equal to their common diagonal entry ``rho_maj^n rho_min^n``.
    """
    if n < 1:
        raise ValidationError(f"xi_2n needs n >= 1, got {n}")
    if 2 * n > XI_MAX_SITES:
        raise ResourceLimitError(f"xi_2n limited to 2n <= {XI_MAX_SITES}, got 2n = {2 * n}")
    _check_majority(majority)
    block = product_power(state, 1) if n == 1 else rho_n(state, n, majority)
    m = np.kron(block.data, block.data)
    maj, mnr = state.weights(majority)
    all_maj = 0 if majority == "H" else (1 << n) - 1
    all_min = ((1 << n) - 1) ^ all_maj
    i = (all_maj << n) | all_min
    j = (all_min << n) | all_maj
    m[i, j] = m[j, i] = (maj * mnr) ** n
    return DensityMatrix(m, BasisLabel.qubits(2 * n))


def xi4(state: DiagonalQubitState) -> DensityMatrix:
    a = (state.rho_hh * state.rho_vv) ** 2
    r2 = rho2(state).data
    m = np.kron(r2, r2)
    hhvv, vvhh = 0b0011, 0b1100
    m[hhvv, vvhh] = m[vvhh, hhvv] = a
    return DensityMatrix(m, BasisLabel.qubits(4))
