"""Numerical verification suites behind ``ge verify``.

Each ``check_*`` function draws its samples from a Philox stream derived from
``(seed, check index)`` and returns a :class:`CheckResult` made of parts.
A part compares a measured value against a bound; parts marked ``scalable``
are residuals whose bound is replaced by an explicit ``tol`` override.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional

import numpy as np

from . import algebra, gcs, mw, purity, states
from .linalg import expm_i_hermitian, herm_eig, random_hermitian, random_unitary


@dataclass
class Part:
    name: str
    value: float
    bound: float
    relation: str = "<="  # "<=", ">" or "=="
    scalable: bool = True

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return bool(self.value <= self.bound)
        if self.relation == ">":
            return bool(self.value > self.bound)
        return bool(self.value == self.bound)


@dataclass
class CheckResult:
    name: str
    parts: List[Part] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.parts)

    @property
    def max_residual(self) -> float:
        vals = [p.value for p in self.parts if p.relation == "<="]
        return max(vals) if vals else 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "parts": [dict(asdict(p), passed=p.passed) for p in self.parts],
        }


class _Ctx:
    def __init__(self, name: str, index: int, seed: int, tol: Optional[float], samples: Optional[int]):
        self.result = CheckResult(name)
        self.rng = states.make_rng(np.random.SeedSequence([seed, index]))
        self.tol = tol
        self.samples = samples

    def count(self, default: int) -> int:
        return default if self.samples is None else self.samples

    def residual(self, name: str, value: float, bound: float) -> None:
        bound = bound if self.tol is None else self.tol
        self.result.parts.append(Part(name, float(value), bound))

    def fixed(self, name: str, value: float, bound: float, relation: str = "<=") -> None:
        self.result.parts.append(Part(name, float(value), bound, relation, scalable=False))


def _qubit_sample(seed: int, count: int) -> dict:
    rng = states.make_rng(np.random.SeedSequence([seed, 1]))
    return {n: [states.random_state(2 ** n, rng) for _ in range(count)] for n in (2, 3, 4, 5)}


def check_purity_plus_q(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("purity_plus_q", 1, seed, tol, samples)
    for n, sample in _qubit_sample(seed, ctx.count(500)).items():
        ctx.residual(f"n={n}", max(mw.purity_q_residual(psi) for psi in sample), 1e-9)
    return ctx.result


def check_local_purity_reductions(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("local_purity_reductions", 2, seed, tol, samples)
    for dims in [(2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 4)]:
        part = algebra.SubsystemPartition(dims)
        basis = algebra.local_algebra(part)
        blocks = [basis.block(l) for l in range(part.n)]
        total = per_block = 0.0
        for _ in range(ctx.count(200)):
            psi = states.random_state(part.dim, ctx.rng)
            total = max(total, abs(purity.h_purity(psi, basis).normalized
                                   - purity.local_purity_via_reductions(psi, part)))
            for l, b in enumerate(blocks):
                per_block = max(per_block, abs(purity.subsystem_purity(psi, part, l)
                                               - purity.h_purity(psi, b).normalized))
        tag = "x".join(map(str, dims))
        ctx.residual(f"{tag} total", total, 1e-9)
        ctx.residual(f"{tag} per-subsystem", per_block, 1e-9)
    return ctx.result


def check_extreme_states(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("extreme_states", 3, seed, tol, samples)
    ctx.residual("ghz n=2..8", max(
        abs(purity.h_purity(states.ghz(n), algebra.pauli_local(n)).normalized) for n in range(2, 9)), 1e-12)
    ctx.residual("singlet pairs n=2,4,6", max(
        abs(purity.h_purity(states.singlet_pairs(n), algebra.pauli_local(n)).normalized) for n in (2, 4, 6)), 1e-12)
    worst = 0.0
    for n in range(2, 7):
        basis = algebra.pauli_local(n)
        for _ in range(ctx.count(100)):
            psi = states.random_product_state((2,) * n, ctx.rng)
            worst = max(worst, abs(purity.h_purity(psi, basis).normalized - 1))
    ctx.residual("random product n=2..6", worst, 1e-10)
    return ctx.result


def check_full_algebra(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("full_algebra", 4, seed, tol, samples)
    for d in range(2, 9):
        basis = algebra.su_basis(d)
        worst = max(abs(purity.h_purity(states.random_state(d, ctx.rng), basis).normalized - 1)
                    for _ in range(ctx.count(100)))
        ctx.residual(f"su({d})", worst, 1e-10)
    return ctx.result


def check_group_invariance(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("group_invariance", 5, seed, tol, samples)
    families = [
        algebra.su_basis(3), algebra.su_basis(4), algebra.local_algebra((2, 3)),
        algebra.local_algebra((2, 2, 2)), algebra.pauli_local(3),
        algebra.spin_generators(2), algebra.spin_generators(3),
    ]
    for basis in families:
        worst = 0.0
        for _ in range(ctx.count(100)):
            psi = states.random_state(basis.dim, ctx.rng)
            t = ctx.rng.standard_normal(len(basis))
            moved = gcs.coherent_state(basis, psi, t)
            worst = max(worst, abs(purity.h_purity(moved, basis).normalized
                                   - purity.h_purity(psi, basis).normalized))
        ctx.residual(basis.label, worst, 1e-9)
    return ctx.result


def check_spin_one(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("spin_one", 6, seed, tol, samples)
    basis = algebra.spin_generators(2)
    k = purity.normalization_k(basis)
    p = lambda psi: purity.h_purity(psi, basis).normalized
    ctx.residual("|1,0> purity 0", abs(p(states.spin_state(2, 0))), 1e-12)
    ctx.residual("|1,+-1> purity 1", max(abs(p(states.spin_state(2, m)) - 1) for m in (2, -2)), 1e-12)
    grid = np.linspace(-1, 1, 5)
    coherent = [gcs.spin_coherent(complex(a, b)) for a in grid for b in grid]
    ctx.residual("5x5 xi grid purity 1", max(abs(p(psi) - 1) for psi in coherent), 1e-9)

    rand = [states.random_state(3, ctx.rng) for _ in range(ctx.count(1000))]
    sq = lambda psi: purity.expectations(psi, basis).raw_sq_len
    ctx.residual("unit ball containment", max(0.0, max(sq(psi) - 1 / k for psi in rand + coherent)), 1e-12)
    ctx.residual("surface equality on coherent states", max(abs(sq(psi) - 1 / k) for psi in coherent), 1e-9)
    on_surface = lambda psi: abs(sq(psi) - 1 / k) <= 1e-9
    mismatches = sum(on_surface(psi) != (p(psi) >= 1 - 1e-9) for psi in rand + coherent)
    ctx.fixed("surface membership mismatches", mismatches, 0, "==")
    return ctx.result


def check_three_q_routes(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("three_q_routes", 7, seed, tol, samples)
    for n, sample in _qubit_sample(seed, ctx.count(500)).items():
        worst = 0.0
        for psi in sample:
            qs = (mw.meyer_wallach_q(psi), mw.q_via_purity(psi), mw.q_via_subsystem_purity(psi))
            worst = max(worst, max(qs) - min(qs))
        ctx.residual(f"n={n}", worst, 1e-9)
    return ctx.result


def check_witness(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("witness", 8, seed, tol, samples)
    overlaps, gaps, all_gcs = [], [], True
    for i in range(ctx.count(50)):
        n = 1 + i % 5
        basis = algebra.pauli_local(n)
        t = ctx.rng.normal(scale=2.0, size=len(basis))
        psi = gcs.coherent_state(basis, states.basis_state(2 ** n, 0), t)
        v = gcs.gcs_verdict(psi, basis)
        all_gcs &= v.is_gcs and not v.witness_degenerate
        overlaps.append(v.ground_overlap)
        gaps.append(v.witness_gap)
    ctx.residual("1 - min ground overlap", 1 - min(overlaps), 1e-7)
    ctx.fixed("min witness gap", min(gaps), 1e-8, ">")
    ctx.fixed("orbit samples accepted", int(all_gcs), 1, "==")
    ghz_ok = True
    for n in range(2, 6):
        v = gcs.gcs_verdict(states.ghz(n), algebra.pauli_local(n))
        ghz_ok &= v.witness_degenerate and not v.is_gcs and v.ground_overlap is None
    ctx.fixed("ghz flagged degenerate", int(ghz_ok), 1, "==")
    return ctx.result


def check_triplet(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("triplet_embedding", 9, seed, tol, samples)
    s = 1 / np.sqrt(2)
    expected = [
        (states.spin_state(2, -2), np.array([0, 0, 0, 1])),
        (states.spin_state(2, 0), np.array([0, s, s, 0])),
        (states.spin_state(2, 2), np.array([1, 0, 0, 0])),
    ]
    err = max(np.max(np.abs(gcs.triplet_embedding(a) - b)) for a, b in expected)
    ctx.fixed("displayed assignments", err, 0.0)
    basis = algebra.spin_generators(2)
    sample = [states.random_state(3, ctx.rng) for _ in range(ctx.count(200))]
    sample += [gcs.spin_coherent(complex(*ctx.rng.uniform(-2, 2, 2))) for _ in range(ctx.count(200))]
    mismatches = sum(
        gcs.gcs_verdict(psi, basis).is_gcs != gcs.is_product_two_qubit(gcs.triplet_embedding(psi), 1e-8)
        for psi in sample
    )
    ctx.fixed("product/GCS mismatches", mismatches, 0, "==")
    # <singlet|phi> = (phi_01 - phi_10)/sqrt(2); compare amplitudes directly so zero is exact
    singlet = max(abs(e[1] - e[2]) for e in map(gcs.triplet_embedding, sample))
    ctx.fixed("singlet overlap", singlet, 0.0)
    return ctx.result


def check_mw_distance(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("mw_distance", 10, seed, tol, samples)
    worst = 0.0
    for _ in range(ctx.count(1000)):
        m = int(ctx.rng.integers(2, 65))
        u, v = states.random_state(m, ctx.rng), states.random_state(m, ctx.rng)
        worst = max(worst, abs(mw.mw_distance(u, v) - mw.mw_distance_double_sum(u, v)))
    ctx.residual("closed form vs double sum", worst, 1e-10)
    return ctx.result


def check_local_unitary(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("local_unitary_invariance", 11, seed, tol, samples)
    for n in (2, 3, 4):
        worst = 0.0
        for _ in range(ctx.count(50)):
            psi = states.random_state(2 ** n, ctx.rng)
            u = np.ones((1, 1))
            for _ in range(n):
                u = np.kron(u, random_unitary(2, ctx.rng))
            worst = max(worst, abs(mw.meyer_wallach_q(u @ psi) - mw.meyer_wallach_q(psi)))
        ctx.residual(f"n={n}", worst, 1e-9)
    return ctx.result


def check_eigensolver(seed=7, tol=None, samples=None) -> CheckResult:
    ctx = _Ctx("eigensolver", 12, seed, tol, samples)
    recon = unit = 0.0
    for d in (2, 3, 8, 17, 64):
        h = random_hermitian(d, ctx.rng)
        recon = max(recon, np.max(np.abs(herm_eig(h).reconstruct() - h)))
        u = expm_i_hermitian(h, 0.7)
        unit = max(unit, np.max(np.abs(u.conj().T @ u - np.eye(d))))
    ctx.residual("reconstruction", recon, 1e-9)
    ctx.residual("unitarity", unit, 1e-10)
    return ctx.result


SUITE: List[Callable[..., CheckResult]] = [
    check_purity_plus_q,
    check_local_purity_reductions,
    check_extreme_states,
    check_full_algebra,
    check_group_invariance,
    check_spin_one,
    check_three_q_routes,
    check_witness,
    check_triplet,
    check_mw_distance,
    check_local_unitary,
    check_eigensolver,
]


def run_suite(seed: int = 7, tol: Optional[float] = None, samples: Optional[int] = None) -> List[CheckResult]:
    return [check(seed=seed, tol=tol, samples=samples) for check in SUITE]
