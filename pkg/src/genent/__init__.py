"""Generalized entanglement of pure states relative to observable Lie algebras."""
from .algebra import (
    ObservableBasis,
    SubsystemPartition,
    check_closure,
    local_algebra,
    orthonormalize,
    pauli_local,
    spin_generators,
    su_basis,
)
from .gcs import coherent_state, displacement, gcs_verdict, spin_coherent, triplet_embedding
from .mw import meyer_wallach_q, q_via_subsystem_purity
from .purity import (
    expectations,
    h_purity,
    local_purity_via_reductions,
    normalization_k,
    project_onto_algebra,
    subsystem_purity,
)
from .states import ghz, product_state, random_state, singlet_pairs, spin_state, w_state

__version__ = "0.1.0"
