"""Purity of pure states relative to a distinguished observable algebra.

The raw purity of ``psi`` is ``sum_i <psi|x_i|psi>^2`` over a commonly
normalized basis ``{x_i}``; the normalized purity multiplies it by a constant
``K`` chosen so that the maximum over pure states is 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import ObservableBasis, SubsystemPartition
from .errors import DimensionError, NormalizationError
from .linalg import partial_trace
from .states import spin_state

IMAG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CoherenceVector:
    values: np.ndarray
    basis_label: str

    @property
    def raw_sq_len(self) -> float:
        return float(np.dot(self.values, self.values))


@dataclass(frozen=True)
class PurityReport:
    raw: float
    normalized: float
    k_const: float
    basis_label: str


def _state(psi, d: int) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.size != d:
        raise DimensionError(f"state of dimension {psi.size} does not match dimension {d}")
    return psi


def expectations(psi, basis: ObservableBasis) -> CoherenceVector:
    psi = _state(psi, basis.dim)
    vals = np.einsum("i,kij,j->k", psi.conj(), basis.ops, psi)
    worst = np.max(np.abs(vals.imag))
    if worst > IMAG_TOL:
        raise ValueError(f"expectation has imaginary part {worst:.3g}; basis is not Hermitian")
    return CoherenceVector(values=vals.real.copy(), basis_label=basis.label)


def normalization_k(basis: ObservableBasis, reference=None) -> float:
    """Constant ``K`` making the maximal normalized purity equal to 1.

    su(d) with trace norm ``c``: ``d / ((d-1) c)``. Local algebras: a product
    state maximizes every block at once, and block ``l`` (trace norm ``c_l``)
    then contributes ``(1 - 1/d_l) c_l d_l / d``; for factor-orthonormal
    blocks this is ``1 / (n - sum_l 1/d_l)``, i.e. ``2/n`` for qubits. Spin
    irreps use the lowest-weight state ``|j, -j>``; custom bases need a
    reference state assumed to be extremal.
    """
    d = basis.dim
    if basis.kind == "su":
        return d / ((d - 1) * basis.norm_const)
    if basis.kind == "local":
        dims = basis.partition.dims
        first = {l: basis.norms[basis.blocks.index(l)] for l in set(basis.blocks)}
        return 1.0 / sum((1 - 1 / dims[l]) * c * dims[l] / d for l, c in first.items())
    if basis.kind == "spin":
        reference = spin_state(d - 1, -(d - 1))
    elif reference is None:
        reference = basis.reference
    if reference is None:
        raise NormalizationError(f"no normalization known for basis {basis.label!r}; supply a reference state")
    raw = expectations(reference, basis).raw_sq_len
    if raw <= 0:
        raise NormalizationError("reference state has vanishing coherence vector")
    return 1.0 / raw


def h_purity(psi, basis: ObservableBasis, reference=None, k_const: Optional[float] = None) -> PurityReport:
    raw = expectations(psi, basis).raw_sq_len
    k = normalization_k(basis, reference) if k_const is None else k_const
    return PurityReport(raw=raw, normalized=k * raw, k_const=k, basis_label=basis.label)


def project_onto_algebra(psi, basis: ObservableBasis) -> np.ndarray:
    """Trace-inner-product projection of ``|psi><psi|`` onto ``span{x_i}``."""
    vals = expectations(psi, basis).values
    return np.tensordot(vals / basis.norms, basis.ops, axes=1)


def _partition(partition) -> SubsystemPartition:
    return partition if isinstance(partition, SubsystemPartition) else SubsystemPartition(partition)


def reduced_density(psi, partition, l: int) -> np.ndarray:
    partition = _partition(partition)
    psi = _state(psi, partition.dim)
    return partial_trace(np.outer(psi, psi.conj()), partition, l)


def reduced_purities(psi, partition) -> np.ndarray:
    """``tr(rho_l^2)`` for every subsystem, from the Frobenius norm of each reduction."""
    partition = _partition(partition)
    return np.array([
        np.linalg.norm(reduced_density(psi, partition, l)) ** 2 for l in range(partition.n)
    ])


def subsystem_purity(psi, partition, l: int) -> float:
    partition = _partition(partition)
    dl = partition.dims[l]
    rho = reduced_density(psi, partition, l)
    return float(dl / (dl - 1) * (np.linalg.norm(rho) ** 2 - 1 / dl))


def local_purity_via_reductions(psi, partition) -> float:
    """Local-algebra purity from the average of subsystem purities."""
    partition = _partition(partition)
    inv = np.array([1 / dl for dl in partition.dims])
    tr2 = reduced_purities(psi, partition)
    return float(np.mean(tr2 - inv) / (1 - np.mean(inv)))
