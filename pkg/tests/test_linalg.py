import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genent import linalg
from genent.errors import DimensionError, NotHermitianError
from genent.states import make_rng

from conftest import random_complex

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2)


def brute_partial_trace(rho, dims, keep):
    """Loop over every multi-index; no reshaping tricks."""
    d = int(np.prod(dims))
    out = np.zeros((dims[keep], dims[keep]), dtype=complex)
    multi = list(itertools.product(*[range(x) for x in dims]))
    index = {m: i for i, m in enumerate(multi)}
    for mi in multi:
        for mj in multi:
            if all(mi[k] == mj[k] for k in range(len(dims)) if k != keep):
                out[mi[keep], mj[keep]] += rho[index[mi], index[mj]]
    assert out.shape[0] * d // dims[keep] == d
    return out


def test_kron_examples():
    np.testing.assert_array_equal(linalg.kron(I2, I2), np.eye(4))
    np.testing.assert_array_equal(linalg.kron(SZ, SZ), np.diag([1, -1, -1, 1]))
    ket00 = np.array([1, 0, 0, 0])
    ket11 = np.array([0, 0, 0, 1])
    np.testing.assert_array_equal(linalg.kron(SX, SX) @ ket00, ket11)


def test_kron_index_layout(rng):
    a, b = random_complex(rng, 2, 3), random_complex(rng, 3, 2)
    k = linalg.kron(a, b)
    assert k.shape == (6, 6)
    for i, j, p, q in itertools.product(range(2), range(3), range(3), range(2)):
        assert abs(k[i * 3 + p, j * 2 + q] - a[i, j] * b[p, q]) < 1e-14


def test_partial_trace_product(rng):
    ra = linalg.random_hermitian(2, rng)
    rb = linalg.random_hermitian(3, rng)
    np.testing.assert_allclose(linalg.partial_trace(np.kron(ra, rb), (2, 3), 0), ra * np.trace(rb), atol=1e-12)
    np.testing.assert_allclose(linalg.partial_trace(np.kron(ra, rb), (2, 3), 1), rb * np.trace(ra), atol=1e-12)


def test_partial_trace_bell_and_ghz():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    np.testing.assert_allclose(linalg.partial_trace(np.outer(bell, bell), (2, 2), 0), I2 / 2, atol=1e-15)
    ghz = np.zeros(8)
    ghz[[0, 7]] = 1 / np.sqrt(2)
    rho = np.outer(ghz, ghz)
    expected = brute_partial_trace(rho, (2, 2, 2), 1)
    np.testing.assert_allclose(expected, np.diag([0.5, 0.5]), atol=1e-15)
    np.testing.assert_allclose(linalg.partial_trace(rho, (2, 2, 2), 1), expected, atol=1e-15)


@pytest.mark.parametrize("dims", [(2, 3), (3, 2, 2), (2, 2, 2, 2), (4, 3)])
def test_partial_trace_matches_brute_force(rng, dims):
    d = int(np.prod(dims))
    rho = random_complex(rng, d, d)
    for keep in range(len(dims)):
        np.testing.assert_allclose(linalg.partial_trace(rho, dims, keep),
                                   brute_partial_trace(rho, dims, keep), atol=1e-12)


def test_partial_trace_errors():
    with pytest.raises(DimensionError):
        linalg.partial_trace(np.eye(6), (2, 2), 0)
    with pytest.raises(IndexError):
        linalg.partial_trace(np.eye(4), (2, 2), 2)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), alpha=st.complex_numbers(max_magnitude=5), beta=st.complex_numbers(max_magnitude=5))
def test_partial_trace_linear_and_trace_preserving(seed, alpha, beta):
    rng = make_rng(seed)
    dims = (2, 3, 2)
    r1, r2 = random_complex(rng, 12, 12), random_complex(rng, 12, 12)
    for keep in range(3):
        lhs = linalg.partial_trace(alpha * r1 + beta * r2, dims, keep)
        rhs = alpha * linalg.partial_trace(r1, dims, keep) + beta * linalg.partial_trace(r2, dims, keep)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12 * (1 + abs(alpha) + abs(beta)) * 10)
        assert abs(np.trace(linalg.partial_trace(r1, dims, keep)) - np.trace(r1)) < 1e-12 * 100


def test_partial_trace_keeps_hermiticity(rng):
    h = linalg.random_hermitian(12, rng)
    for keep in range(3):
        assert linalg.is_hermitian(linalg.partial_trace(h, (2, 3, 2), keep))


def test_herm_eig_paulis():
    e = linalg.herm_eig(SZ)
    np.testing.assert_allclose(e.eigenvalues, [-1, 1])
    e = linalg.herm_eig(SX)
    np.testing.assert_allclose(e.eigenvalues, [-1, 1], atol=1e-15)
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(e.eigenvectors[:, 0], [s, -s], atol=1e-15)
    np.testing.assert_allclose(e.eigenvectors[:, 1], [s, s], atol=1e-15)


def test_herm_eig_phase_convention(rng):
    e = linalg.herm_eig(linalg.random_hermitian(6, rng))
    for k in range(6):
        col = e.eigenvectors[:, k]
        first = col[np.flatnonzero(np.abs(col) > 1e-8)[0]]
        assert abs(first.imag) < 1e-15 and first.real > 0


@pytest.mark.parametrize("d", [2, 5, 16, 64])
def test_herm_eig_invariants(rng, d):
    h = linalg.random_hermitian(d, rng)
    e = linalg.herm_eig(h)
    v, w = e.eigenvectors, e.eigenvalues
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.abs(h @ v - v * w)) < 1e-10 * max(1, np.max(np.abs(w)))
    assert np.max(np.abs(v.conj().T @ v - np.eye(d))) < 1e-10
    assert np.max(np.abs(e.reconstruct() - h)) < 1e-9


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        linalg.herm_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(DimensionError):
        linalg.herm_eig(np.ones((2, 3)))


def series_expm(a, order=30):
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, order + 1):
        term = term @ a / k
        out = out + term
    return out


def test_expm_examples():
    np.testing.assert_allclose(linalg.expm_i_hermitian(SX, 0.0), I2, atol=1e-15)
    np.testing.assert_allclose(linalg.expm_i_hermitian(SX, np.pi / 2), 1j * SX, atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 6])
def test_expm_against_series(rng, d):
    h = linalg.random_hermitian(d, rng)
    h = h / np.linalg.norm(h, 2)
    scale = 1.3
    u = linalg.expm_i_hermitian(h, scale)
    assert np.max(np.abs(u - series_expm(1j * scale * h))) < 1e-9
    assert np.max(np.abs(u.conj().T @ u - np.eye(d))) < 1e-10


def test_expm_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        linalg.expm_i_hermitian(np.array([[0, 1], [2, 0]]))


def test_trace_inner():
    assert linalg.trace_inner(SX, SX) == 2
    assert linalg.trace_inner(SX, SY) == 0
    with pytest.raises(DimensionError):
        linalg.trace_inner(SX, np.eye(3))


def test_trace_inner_frobenius(rng):
    for _ in range(10):
        a = random_complex(rng, 4, 4)
        v = linalg.trace_inner(a, a)
        assert abs(v.imag) < 1e-12 and v.real >= 0
        assert abs(v.real - np.sum(np.abs(a) ** 2)) < 1e-12


def test_basic_ops(rng):
    a, b = random_complex(rng, 3, 3), random_complex(rng, 3, 3)
    np.testing.assert_array_equal(linalg.adjoint(linalg.adjoint(a)), a)
    assert abs(linalg.trace(linalg.matmul(a, b)) - linalg.trace(linalg.matmul(b, a))) < 1e-12
    np.testing.assert_array_equal(linalg.matmul(np.eye(3), a), a)
    np.testing.assert_array_equal(linalg.add(a, b), a + b)
    np.testing.assert_array_equal(linalg.scalar_mul(2j, a), 2j * a)
    with pytest.raises(DimensionError):
        linalg.matmul(a, np.ones((2, 2)))
    with pytest.raises(DimensionError):
        linalg.add(a, np.ones((2, 2)))
    with pytest.raises(DimensionError):
        linalg.trace(np.ones((2, 3)))


def test_random_unitary_is_unitary(rng):
    u = linalg.random_unitary(5, rng)
    assert np.max(np.abs(u.conj().T @ u - np.eye(5))) < 1e-12
