"""Generalized coherent states: group orbits, extremality tests and the spin-1 case."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .algebra import ObservableBasis, check_closure, ladder_ops
from .errors import DimensionError, NotClosedError
from .linalg import expm_i_hermitian, herm_eig
from .purity import expectations, normalization_k
from .states import normalize, spin_state

DISPLACEMENT_CLOSURE_TOL = 1e-6
DEFAULT_TOL = 1e-8
COHERENCE_TOL = 1e-10
GAP_TOL = 1e-8

SINGLET = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)


@lru_cache(maxsize=64)
def _closure_residual(basis: ObservableBasis) -> float:
    return check_closure(basis).max_residual


def require_closed(basis: ObservableBasis) -> None:
    res = _closure_residual(basis)
    if res >= DISPLACEMENT_CLOSURE_TOL:
        raise NotClosedError(f"basis {basis.label!r} is not bracket-closed (residual {res:.3g})")


@dataclass(frozen=True, eq=False)
class Displacement:
    basis_label: str
    coefficients: np.ndarray
    unitary: np.ndarray

    def apply(self, psi) -> np.ndarray:
        return self.unitary @ np.asarray(psi, dtype=np.complex128)


def displacement(basis: ObservableBasis, t) -> Displacement:
    """Group element ``exp(i sum_a t_a x_a)``."""
    t = np.asarray(t, dtype=float).ravel()
    if t.size != len(basis):
        raise DimensionError(f"need {len(basis)} coefficients, got {t.size}")
    require_closed(basis)
    x = np.tensordot(t, basis.ops, axes=1)
    return Displacement(basis_label=basis.label, coefficients=t, unitary=expm_i_hermitian(x, 1.0))


def coherent_state(basis: ObservableBasis, reference, t) -> np.ndarray:
    reference = np.asarray(reference, dtype=np.complex128).ravel()
    if reference.size != basis.dim:
        raise DimensionError(f"reference has dimension {reference.size}, basis acts on {basis.dim}")
    return displacement(basis, t).apply(reference)


def spin_coherent(xi: complex, two_j: int = 2) -> np.ndarray:
    """``exp(xi J+ - conj(xi) J-) |j, -j>`` with the standard ladder operators."""
    jp, jm, _ = ladder_ops(two_j)
    a = xi * jp - np.conj(xi) * jm
    # a is anti-Hermitian: exp(a) = exp(i * (-i a))
    u = expm_i_hermitian(-1j * a, 1.0)
    return normalize(u @ spin_state(two_j, -two_j))


@dataclass(frozen=True)
class GcsVerdict:
    """Outcome of :func:`gcs_verdict`.

    ``witness_gap`` and ``ground_overlap`` are ``None`` when the coherence
    vector vanishes and no witness can be built; ``witness_degenerate`` is
    set in that case and whenever the witness ground level is not unique.
    """

    purity: float
    is_gcs: bool
    witness_gap: Optional[float]
    ground_overlap: Optional[float]
    witness_degenerate: bool


def witness_hamiltonian(psi, basis: ObservableBasis) -> np.ndarray:
    vals = expectations(psi, basis).values
    return -np.tensordot(vals, basis.ops, axes=1)


def gcs_verdict(psi, basis: ObservableBasis, tol: float = DEFAULT_TOL, reference=None) -> GcsVerdict:
    """Purity-based GCS test cross-checked against the witness ``H = -sum <x_i> x_i``."""
    require_closed(basis)
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    cv = expectations(psi, basis)
    purity = normalization_k(basis, reference) * cv.raw_sq_len
    is_gcs = purity >= 1 - tol
    if np.sqrt(cv.raw_sq_len) < COHERENCE_TOL:
        return GcsVerdict(purity, is_gcs, None, None, True)
    eig = herm_eig(witness_hamiltonian(psi, basis))
    w, v = eig.eigenvalues, eig.eigenvectors
    gap = float(w[1] - w[0]) if w.size > 1 else float("inf")
    ground = v[:, w <= w[0] + GAP_TOL]
    overlap = float(np.sum(np.abs(ground.conj().T @ psi) ** 2))
    return GcsVerdict(purity, is_gcs, gap, overlap, gap <= GAP_TOL)


def triplet_embedding(psi3) -> np.ndarray:
    """Spin-1 state into the symmetric sector of two qubits.

    ``|1,+1> -> |00>``, ``|1,0> -> (|01> + |10>)/sqrt(2)``, ``|1,-1> -> |11>``.
    """
    psi3 = np.asarray(psi3, dtype=np.complex128).ravel()
    if psi3.size != 3:
        raise DimensionError(f"expected a spin-1 state of dimension 3, got {psi3.size}")
    up, zero, down = psi3
    return np.array([up, zero / np.sqrt(2), zero / np.sqrt(2), down], dtype=np.complex128)


def two_qubit_determinant(psi4) -> float:
    """``|a00 a11 - a01 a10|``; zero exactly for product states."""
    a = np.asarray(psi4, dtype=np.complex128).reshape(2, 2)
    return float(abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]))


def is_product_two_qubit(psi4, tol: float = DEFAULT_TOL) -> bool:
    return two_qubit_determinant(psi4) <= tol
