"""
Dense Hermitian matrices over labeled tensor-product bases.

Each site carries a small alphabet: input sites are polarization qubits
``("H", "V")`` and output sites add the vacuum level ``("H", "V", "vac")``.
Basis indices are mixed-radix with site 0 the most significant digit, so
``|HV>`` is index 1 and ``|VH>`` is index 2 on two qubits.

Entropies are in bits throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import PSDViolationError, ValidationError

QUBIT = ("H", "V")
QUTRIT = ("H", "V", "vac")

HERMITIAN_TOL = 1e-9
CLAMP_TOL = 1e-10
PSD_ERROR_TOL = 1e-8


def _default_alphabet(d: int) -> tuple[str, ...]:
    if d == 2:
        return QUBIT
    if d == 3:
        return QUTRIT
    return tuple(str(k) for k in range(d))


@dataclass(frozen=True)
class BasisLabel:
    """Per-site alphabets of a tensor-product basis."""

    alphabets: tuple[tuple[str, ...], ...]

    @classmethod
    def from_dims(cls, dims: Sequence[int]) -> "BasisLabel":
        return cls(tuple(_default_alphabet(int(d)) for d in dims))

    @classmethod
    def qubits(cls, n: int) -> "BasisLabel":
        return cls((QUBIT,) * n)

    @classmethod
    def outputs(cls, n: int) -> "BasisLabel":
        return cls((QUTRIT,) * n)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.alphabets)

    @property
    def n_sites(self) -> int:
        return len(self.alphabets)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def index_to_label(self, index: int) -> tuple[str, ...]:
        if not 0 <= index < self.dim:
            raise ValidationError(f"index {index} out of range for dimension {self.dim}")
        digits = []
        for alphabet in reversed(self.alphabets):
            index, r = divmod(index, len(alphabet))
            digits.append(alphabet[r])
        return tuple(reversed(digits))

    def label_to_index(self, label: Sequence[str]) -> int:
        if len(label) != self.n_sites:
            raise ValidationError(f"label {label!r} has {len(label)} sites, expected {self.n_sites}")
        index = 0
        for alphabet, symbol in zip(self.alphabets, label):
            try:
                digit = alphabet.index(symbol)
            except ValueError:
                raise ValidationError(f"symbol {symbol!r} not in alphabet {alphabet}") from None
            index = index * len(alphabet) + digit
        return index

    def __add__(self, other: "BasisLabel") -> "BasisLabel":
        return BasisLabel(self.alphabets + other.alphabets)


class DensityMatrix:
    """A Hermitian matrix tied to a labeled basis.

    Normalization is not enforced: channel blocks are subnormalized and
    are represented with the same type.  The stored array is read-only.
    """

    __slots__ = ("data", "basis")

    def __init__(self, data, basis: BasisLabel | Sequence[int] | None = None):
        arr = np.array(data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
        if basis is None:
            basis = BasisLabel.from_dims(_infer_dims(arr.shape[0]))
        elif not isinstance(basis, BasisLabel):
            basis = BasisLabel.from_dims(basis)
        if basis.dim != arr.shape[0]:
            raise ValidationError(f"basis dimension {basis.dim} does not match matrix size {arr.shape[0]}")
        dev = hermitian_deviation(arr)
        if dev > HERMITIAN_TOL:
            raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3g})")
        arr = 0.5 * (arr + arr.conj().T)
        arr.setflags(write=False)
        self.data = arr
        self.basis = basis

    @property
    def dims(self) -> tuple[int, ...]:
        return self.basis.dims

    @property
    def n_sites(self) -> int:
        return self.basis.n_sites

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.data).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.data)

    def diagonal(self) -> np.ndarray:
        return self.data.diagonal().real.copy()

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dims={self.dims}, trace={self.trace():.6g})"


def _infer_dims(d: int) -> tuple[int, ...]:
    for base in (2, 3):
        n, m = 0, 1
        while m < d:
            m *= base
            n += 1
        if m == d and n > 0:
            return (base,) * n
    return (d,)


def as_density(rho, dims: Sequence[int] | None = None) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix(rho, dims)


def hermitian_deviation(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def ket_to_dm(psi, basis: BasisLabel | Sequence[int] | None = None) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).ravel()
    return DensityMatrix(np.outer(psi, psi.conj()), basis)


def entropy_from_eigenvalues(eigs: Iterable[float]) -> float:
    """Shannon entropy in bits of a (possibly subnormalized) spectrum.

    Values in ``(-CLAMP_TOL, 0]`` are treated as zero; anything below
    ``-PSD_ERROR_TOL`` raises.
    """
    lam = np.asarray(eigs, dtype=float)
    if lam.size and lam.min() < -PSD_ERROR_TOL:
        raise PSDViolationError(f"eigenvalue {lam.min():.3g} below -{PSD_ERROR_TOL:g}")
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy ``-tr(rho log2 rho)`` in bits.

    Works on subnormalized blocks as well; for a block of trace ``t`` the
    result equals ``-t log2 t + t S(block / t)``.

    Examples
    --------
    >>> von_neumann_entropy(np.diag([0.5, 0.25, 0.25]))
    1.5
    """
    if isinstance(rho, DensityMatrix):
        arr = rho.data
    else:
        arr = np.asarray(rho, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
        dev = hermitian_deviation(arr)
        if dev > HERMITIAN_TOL:
            raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3g})")
    return entropy_from_eigenvalues(np.linalg.eigvalsh(arr))


def kron(a, b) -> DensityMatrix:
    a, b = as_density(a), as_density(b)
    return DensityMatrix(np.kron(a.data, b.data), a.basis + b.basis)


def kron_all(factors: Sequence) -> DensityMatrix:
    out = as_density(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def partial_trace(rho, sites: Iterable[int]) -> DensityMatrix:
    """Trace out ``sites`` and return the reduced matrix on the rest."""
    rho = as_density(rho)
    n = rho.n_sites
    sites = sorted(set(int(s) for s in sites))
    for s in sites:
        if not 0 <= s < n:
            raise ValidationError(f"site {s} out of range for {n} sites")
    dims = list(rho.dims)
    t = rho.data.reshape(dims + dims)
    m = n
    for s in reversed(sites):
        t = np.trace(t, axis1=s, axis2=m + s)
        m -= 1
    keep = [k for k in range(n) if k not in sites]
    alphabets = tuple(rho.basis.alphabets[k] for k in keep)
    d = prod(len(a) for a in alphabets)
    return DensityMatrix(t.reshape(d, d), BasisLabel(alphabets))


def permute_sites(rho, order: Sequence[int]) -> DensityMatrix:
    """Reorder tensor factors so that new site ``k`` is old site ``order[k]``."""
    rho = as_density(rho)
    n = rho.n_sites
    if sorted(order) != list(range(n)):
        raise ValidationError(f"{order!r} is not a permutation of {n} sites")
    t = rho.data.reshape(rho.dims + rho.dims)
    t = t.transpose(list(order) + [n + k for k in order])
    basis = BasisLabel(tuple(rho.basis.alphabets[k] for k in order))
    return DensityMatrix(t.reshape(rho.dim, rho.dim), basis)


def check_state(rho, *, normalized: bool = True, atol: float = 1e-10) -> None:
    """Raise if ``rho`` is not PSD (and unit trace when ``normalized``)."""
    rho = as_density(rho)
    lam = rho.eigenvalues()
    if lam.min() < -atol:
        raise PSDViolationError(f"eigenvalue {lam.min():.3g} below -{atol:g}")
    if normalized and abs(rho.trace() - 1.0) > 1e-12:
        raise ValidationError(f"trace {rho.trace()!r} is not 1")


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random full-rank (or given rank) density matrix from a Ginibre matrix."""
    a = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    m = a @ a.conj().T
    return m / np.trace(m).real


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
