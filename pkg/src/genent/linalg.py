"""Dense complex linear algebra used by the physics modules.

Matrices are plain 2-D ``numpy`` arrays of ``complex128``. Functions never
mutate their inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, NotHermitianError

HERMITIAN_TOL = 1e-10
PHASE_TOL = 1e-8


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    m = _square(a)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def _hermitian(a) -> np.ndarray:
    m = _square(a)
    if not is_hermitian(m):
        err = np.max(np.abs(m - m.conj().T))
        raise NotHermitianError(f"matrix is not Hermitian (max |A - A^H| = {err:.3g})")
    return m


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape}")
    return a + b


def scalar_mul(alpha: complex, a) -> np.ndarray:
    return alpha * as_matrix(a)


def trace(a) -> complex:
    return complex(np.trace(_square(a)))


def trace_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^H b)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors: Sequence) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return out


def partial_trace(rho, dims: Sequence[int], keep: int) -> np.ndarray:
    """Reduced operator on subsystem ``keep`` of a ``prod(dims)``-dimensional operator.

    ``dims`` may be a sequence of local dimensions or any object with a
    ``dims`` attribute (e.g. :class:`genent.algebra.SubsystemPartition`).
    """
    dims = tuple(int(x) for x in getattr(dims, "dims", dims))
    rho = _square(rho)
    d = int(np.prod(dims))
    if rho.shape[0] != d:
        raise DimensionError(f"operator of dimension {rho.shape[0]} does not match partition {dims}")
    n = len(dims)
    if not 0 <= keep < n:
        raise IndexError(f"subsystem index {keep} out of range for {n} subsystems")
    # view as rho[i_1..i_n, j_1..j_n]; contract i_l = j_l for every l != keep
    t = rho.reshape(dims + dims)
    row = list(range(n))
    col = [n + k if k == keep else k for k in range(n)]
    return np.einsum(t, row + col, [keep, n + keep])


@dataclass(frozen=True)
class HermitianEig:
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def herm_eig(a) -> HermitianEig:
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues are ascending. Each eigenvector is rephased so that its first
    component with magnitude above ``1e-8`` is real and positive.
    """
    m = _hermitian(a)
    # symmetrize so eigh sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = np.flatnonzero(np.abs(col) > PHASE_TOL)
        if idx.size:
            c = col[idx[0]]
            v[:, k] = col * (abs(c) / c)
    return HermitianEig(eigenvalues=w, eigenvectors=v)


def expm_i_hermitian(h, scale: float = 1.0) -> np.ndarray:
    """``exp(i * scale * h)`` for Hermitian ``h``, via its eigendecomposition."""
    eig = herm_eig(h)
    v = eig.eigenvectors
    return (v * np.exp(1j * scale * eig.eigenvalues)) @ v.conj().T


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    g = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
