"""
The generalized erasure channel for polarization dependent losses.

A single photon in polarization ``H`` survives with probability ``p_h`` and
``V`` with probability ``p_v``; a lost photon leaves the vacuum level.  On a
qubit density matrix the channel acts as::

    Gamma(rho) = F rho F^dag  (+)  tr(G rho G^dag) |vac><vac|

with ``F = diag(sqrt(p_h), sqrt(p_v))`` and ``G = sqrt(I - F^dag F)``.  The
complementary channel has the same form with ``p -> 1 - p``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .qmatrix import (
    BasisLabel,
    DensityMatrix,
    as_density,
    entropy_from_eigenvalues,
    von_neumann_entropy,
)

DENSE_N_MAX = 8
BLOCKED_N_MAX = 16
DENSE_AUTO_MAX = 4


@dataclass(frozen=True)
class ChannelParams:
    """Transmission factors for horizontal and vertical polarization."""

    p_h: float
    p_v: float

    def __post_init__(self):
        for name in ("p_h", "p_v"):
            v = getattr(self, name)
            if not isinstance(v, (int, float, np.floating, np.integer)) or not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name} must be a number in [0, 1], got {v!r}")
            object.__setattr__(self, name, float(v))

    def complement(self) -> "ChannelParams":
        return ChannelParams(1.0 - self.p_h, 1.0 - self.p_v)

    def swapped(self) -> "ChannelParams":
        return ChannelParams(self.p_v, self.p_h)

    @property
    def majority(self) -> str:
        """Better-transmitted polarization; ties go to ``"H"``."""
        return "H" if self.p_h >= self.p_v else "V"

    @property
    def p_maj(self) -> float:
        return max(self.p_h, self.p_v)

    @property
    def p_min(self) -> float:
        return min(self.p_h, self.p_v)


@dataclass(frozen=True)
class FilterPair:
    f: np.ndarray
    g: np.ndarray


def filters(params: ChannelParams) -> FilterPair:
    f = np.diag([math.sqrt(params.p_h), math.sqrt(params.p_v)])
    g = np.diag([math.sqrt(1.0 - params.p_h), math.sqrt(1.0 - params.p_v)])
    return FilterPair(f, g)


class Classification(str, enum.Enum):
    DEGRADABLE = "Degradable"
    ANTIDEGRADABLE = "Antidegradable"
    BOTH = "Both"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


def is_antidegradable(params: ChannelParams) -> bool:
    return max(params.p_h, params.p_v) <= 0.5 or params.p_h == 0.0 or params.p_v == 0.0


def is_degradable(params: ChannelParams) -> bool:
    return min(params.p_h, params.p_v) >= 0.5 or params.p_h == 1.0 or params.p_v == 1.0


def classify(params: ChannelParams) -> Classification:
    """Exact set membership; no tolerance is applied at the boundaries."""
    ad, dg = is_antidegradable(params), is_degradable(params)
    if ad and dg:
        return Classification.BOTH
    if ad:
        return Classification.ANTIDEGRADABLE
    if dg:
        return Classification.DEGRADABLE
    return Classification.NEITHER


def _qubit(rho) -> DensityMatrix:
    rho = as_density(rho, (2,))
    if rho.dims != (2,):
        raise ValidationError(f"expected a single-qubit matrix, got dims {rho.dims}")
    return rho


def apply_gamma(params: ChannelParams, rho) -> DensityMatrix:
    rho = _qubit(rho).data
    ph, pv = params.p_h, params.p_v
    out = np.zeros((3, 3), dtype=complex)
    out[0, 0] = ph * rho[0, 0]
    out[1, 1] = pv * rho[1, 1]
    out[0, 1] = math.sqrt(ph * pv) * rho[0, 1]
    out[1, 0] = math.sqrt(ph * pv) * rho[1, 0]
    out[2, 2] = (1 - ph) * rho[0, 0] + (1 - pv) * rho[1, 1]
    return DensityMatrix(out, BasisLabel.outputs(1))


def apply_gamma_complement(params: ChannelParams, rho) -> DensityMatrix:
    return apply_gamma(params.complement(), rho)


def kraus_operators(params: ChannelParams) -> list[np.ndarray]:
    """Three 3x2 Kraus operators: the filter ``F`` and two loss jumps."""
    k1 = np.zeros((3, 2))
    k1[0, 0] = math.sqrt(params.p_h)
    k1[1, 1] = math.sqrt(params.p_v)
    k2 = np.zeros((3, 2))
    k2[2, 0] = math.sqrt(1.0 - params.p_h)
    k3 = np.zeros((3, 2))
    k3[2, 1] = math.sqrt(1.0 - params.p_v)
    return [k1, k2, k3]


def kraus_complement(kraus: list[np.ndarray], rho) -> DensityMatrix:
    """Environment output ``W_ij = tr(K_i rho K_j^dag)`` of a Kraus dilation."""
    r = np.asarray(as_density(rho).data)
    m = len(kraus)
    w = np.empty((m, m), dtype=complex)
    for i, ki in enumerate(kraus):
        for j, kj in enumerate(kraus):
            w[i, j] = np.trace(ki @ r @ kj.conj().T)
    return DensityMatrix(w, (m,))


def _n_qubits(rho: DensityMatrix) -> int:
    if any(d != 2 for d in rho.dims):
        raise ValidationError(f"expected an n-qubit input, got dims {rho.dims}")
    return rho.n_sites


def apply_tensor_power(
    params: ChannelParams,
    rho,
    complement: bool = False,
    n_max: int = DENSE_N_MAX,
) -> DensityMatrix:
    """Apply ``Gamma`` (or its complement) to every site of an n-qubit state."""
    rho = as_density(rho)
    n = _n_qubits(rho)
    if n > n_max:
        raise ResourceLimitError(f"dense tensor power limited to n <= {n_max}, got n = {n}")
    p = params.complement() if complement else params
    superop = sum(np.einsum("ai,bj->abij", k, k.conj()) for k in kraus_operators(p))
    t = rho.data.reshape((2,) * (2 * n))
    for site in range(n):
        t = np.tensordot(superop, t, axes=([2, 3], [site, n + site]))
        t = np.moveaxis(t, [0, 1], [site, n + site])
    d = 3**n
    return DensityMatrix(t.reshape(d, d), BasisLabel.outputs(n))


def erasure_patterns(n: int) -> Iterator[tuple[int, ...]]:
    """All subsets of ``range(n)``, ordered by size then lexicographically."""
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def erasure_block(params: ChannelParams, rho, erased: tuple[int, ...], complement: bool = False) -> np.ndarray:
    """Surviving-site block for one erasure pattern.

    Applies ``F . F^dag`` on surviving sites and ``tr(G . G^dag)`` on the
    erased ones.  The result is subnormalized; its trace is the probability
    of that pattern.
    """
    rho = as_density(rho)
    n = _n_qubits(rho)
    fp = filters(params.complement() if complement else params)
    f = np.diag(fp.f)
    g2 = np.diag(fp.g) ** 2
    t = rho.data.reshape((2,) * (2 * n))
    erased_set = set(erased)
    for site in range(n):
        if site not in erased_set:
            shape = [1] * (2 * n)
            shape[site] = 2
            t = t * f.reshape(shape)
            shape[site], shape[n + site] = 1, 2
            t = t * f.reshape(shape)
    m = n
    for site in sorted(erased_set, reverse=True):
        t = np.diagonal(t, axis1=site, axis2=m + site) @ g2
        m -= 1
    d = 2**m
    return t.reshape(d, d)


def apply_tensor_power_blocked(
    params: ChannelParams,
    rho,
    complement: bool = False,
    n_max: int = BLOCKED_N_MAX,
) -> list[tuple[tuple[int, ...], np.ndarray]]:
    """Block-diagonal form of the tensor-power output, one block per erasure pattern."""
    rho = as_density(rho)
    n = _n_qubits(rho)
    if n > n_max:
        raise ResourceLimitError(f"blocked tensor power limited to n <= {n_max}, got n = {n}")
    return [(s, erasure_block(params, rho, s, complement)) for s in erasure_patterns(n)]


def blocked_entropy(blocks) -> float:
    # Unnormalized block spectra carry the classical mixing term automatically.
    total = 0.0
    for _, block in blocks:
        total += entropy_from_eigenvalues(np.linalg.eigvalsh(block))
    return total


def output_entropy(
    params: ChannelParams,
    rho,
    complement: bool = False,
    method: str = "auto",
    n_max: int | None = None,
) -> float:
    rho = as_density(rho)
    n = _n_qubits(rho)
    if method == "auto":
        method = "dense" if n <= DENSE_AUTO_MAX else "blocked"
    if method == "dense":
        out = apply_tensor_power(params, rho, complement, n_max or DENSE_N_MAX)
        return von_neumann_entropy(out)
    if method == "blocked":
        return blocked_entropy(apply_tensor_power_blocked(params, rho, complement, n_max or BLOCKED_N_MAX))
    raise ValidationError(f"unknown method {method!r}")


def coherent_information_oracle(params: ChannelParams, rho, method: str = "auto", n_max: int | None = None) -> float:
    """``S(Gamma^n[rho]) - S(Gamma~^n[rho])`` in bits, by direct diagonalization."""
    return output_entropy(params, rho, False, method, n_max) - output_entropy(params, rho, True, method, n_max)
