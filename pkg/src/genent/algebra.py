"""Distinguished observable sets: su(d), local algebras, Pauli bases, spin irreps."""
from __future__ import annotations

import json
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionError,
    LinearDependenceError,
    NotHermitianError,
    SpecError,
)
from .linalg import is_hermitian, kron_all

GRAM_TOL = 1e-9
TRACE_TOL = 1e-10
CLOSURE_TOL = 1e-9
MAX_DIM = 4096
MAX_QUBITS = 12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class SubsystemPartition:
    dims: tuple

    def __init__(self, dims: Sequence[int]):
        dims = tuple(int(x) for x in dims)
        if not dims:
            raise DimensionError("a partition needs at least one subsystem")
        if any(x < 2 for x in dims):
            raise DimensionError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @classmethod
    def qubits(cls, n: int) -> "SubsystemPartition":
        return cls((2,) * n)

    def check(self, d: int) -> None:
        if self.dim != d:
            raise DimensionError(f"partition {self.dims} has dimension {self.dim}, expected {d}")


@dataclass(frozen=True, eq=False)
class ObservableBasis:
    """A Hermitian, traceless, trace-orthogonal operator basis ``{x_i}``.

    ``kind`` records which closed-form purity normalization applies
    ("su", "local", "spin" or "custom"). All operators share one trace norm
    ``norm_const``, except in local algebras over unequal factors: there each
    block (``blocks[i]`` is the subsystem operator ``i`` acts on) is
    orthonormal under its own factor's trace and ``norm_const`` is ``None``.
    Custom bases may carry a ``reference`` state taken to have maximal purity.
    """

    ops: np.ndarray
    label: str
    kind: str = "custom"
    partition: Optional[SubsystemPartition] = None
    blocks: Optional[tuple] = None
    reference: Optional[np.ndarray] = field(default=None, repr=False)
    norm_const: Optional[float] = None
    norms: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        ops = np.asarray(self.ops, dtype=np.complex128)
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2] or ops.shape[0] == 0:
            raise DimensionError(f"ops must have shape (L, d, d), got {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "ops", ops)
        if self.partition is not None:
            self.partition.check(self.dim)
        if self.blocks is not None and len(self.blocks) != len(ops):
            raise ValueError("blocks must label every operator")
        for k, x in enumerate(ops):
            if not is_hermitian(x):
                raise NotHermitianError(f"basis operator {k} is not Hermitian")
            if abs(np.trace(x)) > TRACE_TOL:
                raise ValueError(f"basis operator {k} is not traceless")
        g = self.gram()
        norms = np.diag(g).real.copy()
        off = np.max(np.abs(g - np.diag(norms)))
        if off > GRAM_TOL or np.any(norms <= GRAM_TOL):
            raise ValueError(f"basis operators are not trace-orthogonal (off-diagonal {off:.3g})")
        groups = [range(len(ops))]
        if self.kind == "local":
            groups = [[i for i, b in enumerate(self.blocks) if b == l] for l in sorted(set(self.blocks))]
        for idx in groups:
            if np.ptp(norms[list(idx)]) > GRAM_TOL:
                raise ValueError("basis operators are not commonly normalized")
        norms.setflags(write=False)
        object.__setattr__(self, "norms", norms)
        common = float(norms[0]) if np.ptp(norms) <= GRAM_TOL else None
        if self.norm_const is not None and (common is None or abs(common - self.norm_const) > GRAM_TOL):
            raise ValueError(f"basis is not commonly normalized to {self.norm_const}")
        if self.norm_const is None:
            object.__setattr__(self, "norm_const", common)

    @property
    def dim(self) -> int:
        return self.ops.shape[1]

    def __len__(self) -> int:
        return self.ops.shape[0]

    def gram(self) -> np.ndarray:
        flat = self.ops.reshape(len(self), -1)
        return flat.conj() @ flat.T

    def block(self, l: int) -> "ObservableBasis":
        """Sub-basis of a local algebra acting on subsystem ``l`` only."""
        if self.kind != "local":
            raise ValueError("block() needs a local algebra")
        if not 0 <= l < self.partition.n:
            raise IndexError(f"subsystem {l} out of range")
        idx = [i for i, b in enumerate(self.blocks) if b == l]
        return ObservableBasis(
            ops=self.ops[idx],
            label=f"{self.label}[{l}]",
            kind="local",
            partition=self.partition,
            blocks=(l,) * len(idx),
        )


def _gell_mann(d: int) -> list:
    """Generalized Gell-Mann matrices with ``tr(x^2) = 2``.

    Order: symmetric (j<k), antisymmetric (j<k), then diagonal.
    """
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    sym, anti, diag = [], [], []
    for j, k in pairs:
        s = np.zeros((d, d), dtype=np.complex128)
        s[j, k] = s[k, j] = 1
        sym.append(s)
        a = np.zeros((d, d), dtype=np.complex128)
        a[j, k] = -1j
        a[k, j] = 1j
        anti.append(a)
    for l in range(1, d):
        entries = [1.0] * l + [-float(l)] + [0.0] * (d - l - 1)
        diag.append(np.sqrt(2.0 / (l * (l + 1))) * np.diag(entries).astype(np.complex128))
    return sym + anti + diag


@lru_cache(maxsize=None)
def su_basis(d: int) -> ObservableBasis:
    """Orthonormal basis of su(d): the d^2-1 Gell-Mann matrices divided by sqrt(2)."""
    if d < 2:
        raise DimensionError(f"su(d) needs d >= 2, got {d}")
    if d > MAX_DIM:
        raise DimensionError(f"dimension {d} exceeds {MAX_DIM}")
    ops = np.array(_gell_mann(d)) / np.sqrt(2)
    return ObservableBasis(ops=ops, label=f"su({d})", kind="su", norm_const=1.0)


def _embed(x: np.ndarray, dims: Sequence[int], l: int) -> np.ndarray:
    factors = [np.eye(dl) for dl in dims]
    factors[l] = x
    return kron_all(factors)


def local_algebra(partition) -> ObservableBasis:
    """Direct sum of su(d_l), each factor's orthonormal basis embedded with identities.

    Operators on factor ``l`` have trace norm ``d / d_l`` on the full space, so
    the set is commonly normalized only when all factors have equal dimension.
    """
    if not isinstance(partition, SubsystemPartition):
        partition = SubsystemPartition(partition)
    return _local_algebra(partition)


@lru_cache(maxsize=None)
def _local_algebra(partition: SubsystemPartition) -> ObservableBasis:
    d = partition.dim
    if d > MAX_DIM:
        raise DimensionError(f"total dimension {d} exceeds {MAX_DIM}")
    ops, blocks = [], []
    for l, dl in enumerate(partition.dims):
        for x in su_basis(dl).ops:
            ops.append(_embed(x, partition.dims, l))
            blocks.append(l)
    label = "local(" + "x".join(str(x) for x in partition.dims) + ")"
    return ObservableBasis(
        ops=np.array(ops), label=label, kind="local",
        partition=partition, blocks=tuple(blocks),
    )


@lru_cache(maxsize=None)
def pauli_local(n: int, max_qubits: int = MAX_QUBITS) -> ObservableBasis:
    """Single-qubit Paulis ``sigma_a^l / sqrt(2)`` ordered (x1, y1, z1, x2, ...).

    Same operators as ``local_algebra((2,) * n)``; common norm constant ``2**(n-1)``.
    """
    if n < 1:
        raise DimensionError(f"need at least one qubit, got {n}")
    if n > max_qubits:
        raise DimensionError(f"{n} qubits exceeds the configured maximum of {max_qubits}")
    dims = (2,) * n
    ops, blocks = [], []
    for l in range(n):
        for s in PAULIS:
            ops.append(_embed(s, dims, l) / np.sqrt(2))
            blocks.append(l)
    return ObservableBasis(
        ops=np.array(ops), label=f"pauli_local({n})", kind="local", norm_const=2.0 ** (n - 1),
        partition=SubsystemPartition(dims), blocks=tuple(blocks),
    )


def ladder_ops(two_j: int) -> tuple:
    """Unnormalized ``(J+, J-, Jz)`` for spin ``two_j/2``, basis ordered m = j, j-1, ..., -j."""
    if two_j < 1:
        raise DimensionError(f"two_j must be >= 1, got {two_j}")
    j = two_j / 2
    m = j - np.arange(two_j + 1)
    jp = np.zeros((two_j + 1, two_j + 1), dtype=np.complex128)
    for k in range(1, two_j + 1):
        # <m+1|J+|m> with m = m[k], row k-1 holds m+1
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    return jp, jp.conj().T, np.diag(m).astype(np.complex128)


def spin_label(two_j: int) -> str:
    return f"spin({Fraction(two_j, 2)})"


@lru_cache(maxsize=None)
def spin_generators(two_j: int) -> ObservableBasis:
    """(Jx, Jy, Jz) of the spin-(two_j/2) irrep, rescaled so ``tr(Ja Jb) = delta_ab``."""
    jp, jm, jz = ladder_ops(two_j)
    jx = (jp + jm) / 2
    jy = (jp - jm) / 2j
    scale = np.sqrt(np.trace(jz @ jz).real)
    return ObservableBasis(
        ops=np.array([jx, jy, jz]) / scale, label=spin_label(two_j), kind="spin", norm_const=1.0,
    )


@dataclass(frozen=True)
class ClosureReport:
    max_residual: float

    @property
    def closed(self) -> bool:
        return self.max_residual < CLOSURE_TOL


def check_closure(basis: ObservableBasis) -> ClosureReport:
    """Largest Frobenius residual of ``i[x_i, x_j]`` outside ``span{x_k}``."""
    ops = basis.ops
    flat = ops.reshape(len(ops), -1)
    worst = 0.0
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            y = 1j * (ops[i] @ ops[j] - ops[j] @ ops[i])
            coef = (flat.conj() @ y.ravel()) / basis.norms
            r = y.ravel() - coef @ flat
            worst = max(worst, float(np.linalg.norm(r)))
    return ClosureReport(max_residual=worst)


def orthonormalize(ops, label: str = "custom", reference=None) -> ObservableBasis:
    """Gram-Schmidt under the trace inner product; returns an orthonormal basis."""
    mats = [np.asarray(x, dtype=np.complex128) for x in ops]
    if not mats:
        raise ValueError("need at least one operator")
    d = mats[0].shape[0]
    out = []
    for k, x in enumerate(mats):
        if x.shape != (d, d):
            raise DimensionError(f"operator {k} has shape {x.shape}, expected {(d, d)}")
        if not is_hermitian(x):
            raise NotHermitianError(f"operator {k} is not Hermitian")
        if abs(np.trace(x)) > TRACE_TOL:
            raise ValueError(f"operator {k} is not traceless")
        v = x.copy()
        for e in out:
            v = v - np.vdot(e, v).real * e
        nrm = np.linalg.norm(v)
        if nrm < GRAM_TOL:
            raise LinearDependenceError(f"operator {k} is linearly dependent on the previous ones")
        out.append(v / nrm)
    if reference is not None:
        reference = np.asarray(reference, dtype=np.complex128)
    return ObservableBasis(ops=np.array(out), label=label, kind="custom", reference=reference, norm_const=1.0)


def _parse_matrix(rows) -> np.ndarray:
    try:
        return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad operator matrix: {exc}") from exc


def basis_from_json(doc) -> ObservableBasis:
    """Build an orthonormalized custom basis from a decoded JSON document.

    Accepts either a bare list of matrices or an object
    ``{"ops": [...], "label": str, "reference": [[re, im], ...]}``; each
    matrix is a list of rows of ``[re, im]`` pairs.
    """
    if isinstance(doc, list):
        doc = {"ops": doc}
    if not isinstance(doc, dict) or "ops" not in doc:
        raise SpecError("operator file must be a list of matrices or an object with 'ops'")
    ops = [_parse_matrix(m) for m in doc["ops"]]
    ref = doc.get("reference")
    if ref is not None:
        try:
            ref = np.array([complex(re, im) for re, im in ref])
        except (TypeError, ValueError) as exc:
            raise SpecError(f"bad reference amplitudes: {exc}") from exc
    return orthonormalize(ops, label=doc.get("label", "custom"), reference=ref)


def parse_basis(spec: str) -> ObservableBasis:
    """Basis from ``su:d``, ``local:d1xd2x...``, ``pauli:n``, ``spin:2j`` or ``@file.json``."""
    spec = spec.strip()
    if spec.startswith("@"):
        try:
            with open(spec[1:]) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read operator file {spec[1:]!r}: {exc}") from exc
        return basis_from_json(doc)
    family, _, arg = spec.partition(":")
    try:
        if family == "su":
            return su_basis(int(arg))
        if family == "local":
            return local_algebra(SubsystemPartition([int(x) for x in arg.split("x")]))
        if family == "pauli":
            return pauli_local(int(arg))
        if family == "spin":
            return spin_generators(int(arg))
    except ValueError as exc:
        if isinstance(exc, DimensionError):
            raise
        raise SpecError(f"bad basis spec {spec!r}: {exc}") from exc
    raise SpecError(f"unknown basis family in {spec!r}")
