"""Pure-state constructors.

States are 1-D ``complex128`` arrays. Qubit 1 is the most significant digit of
the basis index and ``|0>`` (spin up) is index 0. Spin states are ordered with
m descending, so ``|j, +j>`` is index 0.

Randomness comes from a Philox counter-based generator seeded explicitly.
"""
from __future__ import annotations

import json
from typing import Sequence, Union

import numpy as np

from .errors import DimensionError, SpecError
from .linalg import kron_all

NORM_TOL = 1e-12

Seed = Union[int, np.random.SeedSequence, np.random.Generator]


def make_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ValueError("cannot normalize the zero vector")
    # leave already-unit vectors bit-identical so serialized states round-trip
    if abs(nrm - 1.0) <= 4e-16:
        return psi
    return psi / nrm


def is_normalized(psi, tol: float = NORM_TOL) -> bool:
    return abs(np.linalg.norm(psi) - 1.0) <= tol


def basis_state(d: int, k: int) -> np.ndarray:
    if not 0 <= k < d:
        raise IndexError(f"basis index {k} out of range for dimension {d}")
    psi = np.zeros(d, dtype=np.complex128)
    psi[k] = 1
    return psi


def product_state(locals_: Sequence) -> np.ndarray:
    vecs = [np.asarray(v, dtype=np.complex128).reshape(-1, 1) for v in locals_]
    return normalize(kron_all(vecs))


def ghz(n: int) -> np.ndarray:
    if n < 2:
        raise DimensionError(f"GHZ state needs n >= 2, got {n}")
    psi = np.zeros(2 ** n, dtype=np.complex128)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return psi


def singlet_pairs(n: int) -> np.ndarray:
    if n < 2 or n % 2:
        raise DimensionError(f"singlet pairs need an even n >= 2, got {n}")
    singlet = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)
    return product_state([singlet] * (n // 2))


def w_state(n: int) -> np.ndarray:
    if n < 2:
        raise DimensionError(f"W state needs n >= 2, got {n}")
    psi = np.zeros(2 ** n, dtype=np.complex128)
    psi[[1 << k for k in range(n)]] = 1 / np.sqrt(n)
    return psi


def random_state(d: int, seed: Seed) -> np.ndarray:
    """Haar-random pure state: normalized vector of complex Gaussians."""
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    rng = make_rng(seed)
    g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return g / np.linalg.norm(g)


def random_product_state(dims: Sequence[int], seed: Seed) -> np.ndarray:
    rng = make_rng(seed)
    return product_state([random_state(dl, rng) for dl in dims])


def spin_state(two_j: int, two_m: int) -> np.ndarray:
    if two_j < 1:
        raise DimensionError(f"two_j must be >= 1, got {two_j}")
    if abs(two_m) > two_j or (two_j - two_m) % 2:
        raise ValueError(f"invalid two_m={two_m} for two_j={two_j}")
    return basis_state(two_j + 1, (two_j - two_m) // 2)


# --- JSON state specifications -------------------------------------------

def _amplitudes(pairs) -> np.ndarray:
    try:
        psi = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"amplitudes must be [re, im] pairs: {exc}") from exc
    if psi.size == 0:
        raise SpecError("empty amplitude list")
    return psi


def state_from_spec(spec, seed: Seed = 0) -> np.ndarray:
    """Build a state from a decoded JSON specification.

    Recognized forms::

        {"named": "ghz" | "w" | "singlet_pairs", "n": 3}
        {"named": "spin", "two_j": 2, "two_m": 0}
        {"named": "basis", "d": 4, "k": 3}
        {"random": {"d": 8, "seed": 42}}      # seed falls back to ``seed``
        {"product": [<spec>, <spec>, ...]}
        {"amplitudes": [[re, im], ...]}

    Explicit amplitudes are normalized; a zero vector is rejected.
    """
    if not isinstance(spec, dict):
        raise SpecError(f"state spec must be a JSON object, got {type(spec).__name__}")
    try:
        if "amplitudes" in spec:
            psi = _amplitudes(spec["amplitudes"])
            if np.linalg.norm(psi) == 0:
                raise SpecError("zero amplitude vector")
            return normalize(psi)
        if "random" in spec:
            r = spec["random"]
            return random_state(int(r["d"]), int(r["seed"]) if "seed" in r else seed)
        if "product" in spec:
            rng = make_rng(seed)
            return product_state([state_from_spec(s, rng) for s in spec["product"]])
        name = spec.get("named")
        if name == "ghz":
            return ghz(int(spec["n"]))
        if name == "w":
            return w_state(int(spec["n"]))
        if name == "singlet_pairs":
            return singlet_pairs(int(spec["n"]))
        if name == "spin":
            return spin_state(int(spec["two_j"]), int(spec["two_m"]))
        if name == "basis":
            return basis_state(int(spec["d"]), int(spec["k"]))
    except KeyError as exc:
        raise SpecError(f"state spec {spec!r} is missing field {exc}") from exc
    except (TypeError, IndexError) as exc:
        raise SpecError(f"bad state spec {spec!r}: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, (SpecError, DimensionError)):
            raise
        raise SpecError(f"bad state spec {spec!r}: {exc}") from exc
    raise SpecError(f"unrecognized state spec {spec!r}")


def parse_state_spec(text: str):
    """Decode state-spec text (inline JSON or ``@path``) into a list of specs."""
    text = text.strip()
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecError(f"cannot read state file {text[1:]!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"state spec is not valid JSON: {exc}") from exc
    return doc if isinstance(doc, list) else [doc]


def state_to_json(psi) -> dict:
    psi = np.asarray(psi, dtype=np.complex128)
    return {"amplitudes": [[float(a.real), float(a.imag)] for a in psi]}
