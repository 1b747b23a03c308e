import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genent import algebra, gcs, purity, states
from genent.errors import DimensionError, NotClosedError

SX, SY, SZ = algebra.PAULIS
S = 1 / np.sqrt(2)


def test_displacement_identity_and_pauli():
    b = algebra.su_basis(2)
    np.testing.assert_allclose(gcs.displacement(b, [0, 0, 0]).unitary, np.eye(2), atol=1e-15)
    # exp(i (pi/2) sigma_x) = i sigma_x, with x_1 = sigma_x / sqrt(2)
    d = gcs.displacement(b, [np.pi * np.sqrt(2) / 2, 0, 0])
    np.testing.assert_allclose(d.unitary, 1j * SX, atol=1e-14)
    assert d.basis_label == "su(2)"


@pytest.mark.parametrize("spec", ["su:3", "local:2x3", "pauli:3", "spin:3"])
def test_displacement_unitary(rng, spec):
    b = algebra.parse_basis(spec)
    u = gcs.displacement(b, rng.normal(scale=3, size=len(b))).unitary
    assert np.max(np.abs(u.conj().T @ u - np.eye(b.dim))) < 1e-10


def test_displacement_errors():
    with pytest.raises(DimensionError):
        gcs.displacement(algebra.su_basis(2), [1, 2])
    leaky = algebra.orthonormalize([np.kron(SZ, np.eye(2)), np.kron(SX, SX)])
    with pytest.raises(NotClosedError):
        gcs.displacement(leaky, [0.1, 0.2])
    with pytest.raises(NotClosedError):
        gcs.gcs_verdict(states.ghz(2), leaky)
    with pytest.raises(DimensionError):
        gcs.coherent_state(algebra.su_basis(3), [1, 0], np.zeros(8))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_orbit_of_reference_is_pure(rng, n):
    b = algebra.pauli_local(n)
    for _ in range(10):
        psi = gcs.coherent_state(b, states.basis_state(2 ** n, 0), rng.normal(scale=2, size=len(b)))
        assert purity.h_purity(psi, b).normalized == pytest.approx(1, abs=1e-10)
        assert abs(np.linalg.norm(psi) - 1) < 1e-12


def test_spin_coherent_examples():
    np.testing.assert_allclose(gcs.spin_coherent(0), states.spin_state(2, -2), atol=1e-15)
    b = algebra.spin_generators(2)
    jp, jm, jz = algebra.ladder_ops(2)
    jx, jy = (jp + jm) / 2, (jp - jm) / 2j
    for a in np.linspace(-1, 1, 5):
        for c in np.linspace(-1, 1, 5):
            psi = gcs.spin_coherent(complex(a, c))
            assert purity.h_purity(psi, b).normalized == pytest.approx(1, abs=1e-9)
            # unscaled generators: |<J>|^2 = j^2 = 1
            mean_j = [np.vdot(psi, m @ psi).real for m in (jx, jy, jz)]
            assert np.dot(mean_j, mean_j) == pytest.approx(1, abs=1e-12)


def test_spin_coherent_higher_spin(rng):
    for two_j in (1, 3, 4):
        b = algebra.spin_generators(two_j)
        xi = complex(*rng.normal(size=2))
        assert purity.h_purity(gcs.spin_coherent(xi, two_j), b).normalized == pytest.approx(1, abs=1e-10)


def test_verdict_product_state():
    v = gcs.gcs_verdict(states.basis_state(8, 0), algebra.pauli_local(3))
    assert v.is_gcs and not v.witness_degenerate
    assert v.purity == pytest.approx(1, abs=1e-12)
    assert v.ground_overlap == pytest.approx(1, abs=1e-12)
    # H = -(1/2) sum_l sigma_z^l: levels -3/2, -1/2 so the gap is 1
    assert v.witness_gap == pytest.approx(1, abs=1e-12)


def test_witness_hamiltonian_form():
    h = gcs.witness_hamiltonian(states.basis_state(2, 0), algebra.su_basis(2))
    np.testing.assert_allclose(h, -SZ / 2, atol=1e-15)


def test_verdict_ghz_degenerate():
    for n in (2, 3, 4):
        v = gcs.gcs_verdict(states.ghz(n), algebra.pauli_local(n))
        assert not v.is_gcs and v.witness_degenerate
        assert v.witness_gap is None and v.ground_overlap is None


def test_verdict_spin_zero_state():
    v = gcs.gcs_verdict(states.spin_state(2, 0), algebra.spin_generators(2))
    assert not v.is_gcs and v.witness_degenerate
    assert abs(v.purity) < 1e-12


def test_low_purity_states_fail_witness(rng):
    b = algebra.pauli_local(3)
    seen = 0
    for _ in range(30):
        psi = states.random_state(8, rng)
        v = gcs.gcs_verdict(psi, b)
        if v.purity < 0.9:
            seen += 1
            assert v.witness_degenerate or v.ground_overlap < 1 - 1e-3
    assert seen > 0


def test_triplet_examples():
    np.testing.assert_array_equal(gcs.triplet_embedding(states.spin_state(2, -2)), [0, 0, 0, 1])
    np.testing.assert_allclose(gcs.triplet_embedding(states.spin_state(2, 0)), [0, S, S, 0])
    np.testing.assert_array_equal(gcs.triplet_embedding(states.spin_state(2, 2)), [1, 0, 0, 0])
    np.testing.assert_allclose(gcs.triplet_embedding([S, 0, S]), states.ghz(2))
    with pytest.raises(DimensionError):
        gcs.triplet_embedding([1, 0])


def test_triplet_is_isometry_onto_symmetric_sector(rng):
    psi = states.random_state(3, rng)
    e = gcs.triplet_embedding(psi)
    assert np.linalg.norm(e) == pytest.approx(1, abs=1e-14)
    assert e[1] == e[2]  # singlet overlap (e01 - e10)/sqrt2 vanishes exactly
    assert abs(np.vdot(gcs.SINGLET, e)) < 1e-16
    swap = np.eye(4)[[0, 2, 1, 3]]
    np.testing.assert_allclose(swap @ e, e, atol=0)


def test_two_qubit_determinant():
    assert gcs.two_qubit_determinant(np.kron([S, S], [1, 0])) == 0
    assert gcs.two_qubit_determinant(states.ghz(2)) == pytest.approx(0.5)
    assert gcs.is_product_two_qubit(states.basis_state(4, 3))
    assert not gcs.is_product_two_qubit(gcs.SINGLET)


def test_coherent_states_embed_to_products(rng):
    b = algebra.spin_generators(2)
    for _ in range(20):
        psi = gcs.spin_coherent(complex(*rng.uniform(-2, 2, 2)))
        assert gcs.gcs_verdict(psi, b).is_gcs
        assert gcs.is_product_two_qubit(gcs.triplet_embedding(psi))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_spin_one_purity_is_concurrence_deficit(seed):
    # P = 1 - C^2 with C = 2|det| the concurrence of the embedded pair
    psi = states.random_state(3, seed)
    p = purity.h_purity(psi, algebra.spin_generators(2)).normalized
    c = 2 * gcs.two_qubit_determinant(gcs.triplet_embedding(psi))
    assert p == pytest.approx(1 - c ** 2, abs=1e-12)
