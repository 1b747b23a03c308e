"""Meyer-Wallach global entanglement ``Q`` for pure n-qubit states.

Three independent routes are provided: the qubit-deletion construction
(:func:`meyer_wallach_q`), ``1 - P`` with ``P`` the local Pauli purity, and
the average single-qubit reduced purity (:func:`q_via_subsystem_purity`).
"""
from __future__ import annotations

import numpy as np

from .algebra import SubsystemPartition, pauli_local
from .errors import DimensionError
from .purity import h_purity, reduced_purities


def num_qubits(psi) -> int:
    dim = np.asarray(psi).size
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def lj_map(psi, j: int, b: int) -> np.ndarray:
    """Amplitudes whose qubit ``j`` equals ``b``, with that qubit deleted.

    Qubit 0 is the most significant index bit. The result has length
    ``2**(n-1)`` and is not normalized.
    """
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    n = num_qubits(psi)
    if not 0 <= j < n:
        raise IndexError(f"qubit index {j} out of range for {n} qubits")
    if b not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {b}")
    return np.take(psi.reshape((2,) * n), b, axis=j).ravel()


def mw_distance(u, v) -> float:
    """``(1/2) sum_ij |u_i v_j - u_j v_i|^2``, via ``|u|^2 |v|^2 - |<u, v>|^2``."""
    u = np.asarray(u, dtype=np.complex128).ravel()
    v = np.asarray(v, dtype=np.complex128).ravel()
    if u.shape != v.shape:
        raise DimensionError(f"length mismatch {u.size} vs {v.size}")
    nu = np.vdot(u, u).real
    nv = np.vdot(v, v).real
    return float(max(nu * nv - abs(np.vdot(u, v)) ** 2, 0.0))


def mw_distance_double_sum(u, v) -> float:
    """Quadratic-cost form of :func:`mw_distance`; kept as a reference."""
    u = np.asarray(u, dtype=np.complex128).ravel()
    v = np.asarray(v, dtype=np.complex128).ravel()
    if u.shape != v.shape:
        raise DimensionError(f"length mismatch {u.size} vs {v.size}")
    wedge = np.outer(u, v) - np.outer(v, u)
    return float(0.5 * np.sum(np.abs(wedge) ** 2))


def meyer_wallach_q(psi) -> float:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    n = num_qubits(psi)
    total = sum(mw_distance(lj_map(psi, j, 0), lj_map(psi, j, 1)) for j in range(n))
    return 4.0 / n * total


def q_via_purity(psi) -> float:
    return 1.0 - h_purity(psi, pauli_local(num_qubits(psi))).normalized


def q_via_subsystem_purity(psi) -> float:
    n = num_qubits(psi)
    return float(2 * (1 - np.mean(reduced_purities(psi, SubsystemPartition.qubits(n)))))


def purity_q_residual(psi) -> float:
    """``|P + Q - 1|`` with P from Pauli expectations and Q from the deletion maps."""
    n = num_qubits(psi)
    p = h_purity(psi, pauli_local(n)).normalized
    return abs(p + meyer_wallach_q(psi) - 1.0)
