import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from pdlcap import states as sts
from pdlcap.errors import ResourceLimitError, ValidationError
from pdlcap.qmatrix import check_state, ket_to_dm, partial_trace, permute_sites

weights = st.floats(0.0, 1.0, allow_nan=False)


def basis_ket(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits))
    v[int(bits.replace("H", "0").replace("V", "1"), 2)] = 1.0
    return v


def test_diagonal_state_validation():
    with pytest.raises(ValidationError):
        sts.DiagonalQubitState(0.5, 0.6)
    with pytest.raises(ValidationError):
        sts.DiagonalQubitState(-0.1, 1.1)
    s = sts.DiagonalQubitState.from_hh(0.3)
    assert s.weights("V") == (s.rho_vv, s.rho_hh)
    with pytest.raises(ValidationError):
        s.weights("X")


def test_w_state_examples():
    assert_allclose(sts.w_state(1), basis_ket("V"))
    assert_allclose(sts.w_state(2), (basis_ket("HV") + basis_ket("VH")) / math.sqrt(2))
    want = (basis_ket("HHV") + basis_ket("HVH") + basis_ket("VHH")) / math.sqrt(3)
    assert_allclose(sts.w_state(3), want)
    assert_allclose(sts.w_state(2, "V"), (basis_ket("VH") + basis_ket("HV")) / math.sqrt(2))
    with pytest.raises(ValidationError):
        sts.w_state(0)


@pytest.mark.parametrize("majority", ["H", "V"])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_w_state_partial_trace_recursion(n, majority):
    w = ket_to_dm(sts.w_state(n, majority))
    reduced = partial_trace(w, [n - 1]).data
    ground = basis_ket(("H" if majority == "H" else "V") * (n - 1))
    want = (n - 1) / n * ket_to_dm(sts.w_state(n - 1, majority)).data + np.outer(ground, ground) / n
    assert_allclose(reduced, want, atol=1e-12)


def test_rho2_examples():
    assert_allclose(sts.rho2(sts.DiagonalQubitState(1.0, 0.0)).data, np.diag([1.0, 0, 0, 0]))
    half = sts.rho2(sts.DiagonalQubitState(0.5, 0.5)).data
    psi = (basis_ket("HV") + basis_ket("VH")) / math.sqrt(2)
    want = 0.25 * np.diag([1.0, 0, 0, 1.0]) + 0.5 * np.outer(psi, psi)
    assert_allclose(half, want, atol=1e-15)


def test_rho_n_consistency_and_errors():
    s = sts.DiagonalQubitState(0.3, 0.7)
    assert_allclose(sts.rho_n(s, 2).data, sts.rho2(s).data)
    with pytest.raises(ValidationError):
        sts.rho_n(s, 1)


def test_xi_examples():
    s = sts.DiagonalQubitState(0.3, 0.7)
    assert_allclose(sts.xi_2n(s, 2).data, sts.xi4(s).data)
    assert_allclose(sts.xi_2n(s, 1).data, sts.rho2(s).data)
    with pytest.raises(ResourceLimitError):
        sts.xi_2n(s, 5)
    for q in (0.0, 1.0):
        pure = sts.xi4(sts.DiagonalQubitState.from_hh(q)).data
        bits = "HHHH" if q == 1.0 else "VVVV"
        assert_allclose(pure, np.outer(basis_ket(bits), basis_ket(bits)))


def test_xi4_spectrum_differs_by_one_pair():
    s = sts.DiagonalQubitState(0.3, 0.7)
    a = (s.rho_hh * s.rho_vv) ** 2
    r2 = sts.rho2(s).data
    base = np.sort(np.linalg.eigvalsh(np.kron(r2, r2)))
    got = np.sort(sts.xi4(s).eigenvalues())
    # remove one copy each of a, a from the base and 2a, 0 from the new spectrum
    def drop(vals, targets):
        vals = list(vals)
        for t in targets:
            k = int(np.argmin(np.abs(np.array(vals) - t)))
            assert abs(vals[k] - t) < 1e-14
            vals.pop(k)
        return np.array(vals)

    assert_allclose(drop(base, [a, a]), drop(got, [2 * a, 0.0]), atol=1e-14)


@settings(max_examples=50, deadline=None)
@given(q=weights, majority=st.sampled_from(["H", "V"]))
def test_state_invariants(q, majority):
    s = sts.DiagonalQubitState.from_hh(q)
    for n in range(2, 7):
        r = sts.rho_n(s, n, majority)
        check_state(r)
        assert_allclose(r.diagonal(), sts.product_diagonal(s, n), atol=1e-14)
    for n in range(1, 5):
        x = sts.xi_2n(s, n, majority)
        check_state(x)
        inner = sts.product_power(s, 1) if n == 1 else sts.rho_n(s, n, majority)
        assert_allclose(x.diagonal(), np.kron(inner.diagonal(), inner.diagonal()), atol=1e-14)


def test_rho_n_permutation_symmetric():
    s = sts.DiagonalQubitState(0.35, 0.65)
    r = sts.rho_n(s, 4, "V")
    for order in itertools.permutations(range(4)):
        assert_allclose(permute_sites(r, order).data, r.data, atol=1e-15)


def test_rho_n_single_minority_block():
    s = sts.DiagonalQubitState(0.3, 0.7)
    n = 4
    idx = sts.single_minority_indices(n, "V")
    block = sts.rho_n(s, n, "V").data[np.ix_(idx, idx)]
    weight = 0.7 ** (n - 1) * 0.3
    assert_allclose(block, n * weight * ket_to_dm(np.full(n, 1 / math.sqrt(n))).data, atol=1e-15)
