"""``ge`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 dimension or specification mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import algebra, checks, mw, purity, states
from .errors import DimensionError, NormalizationError, NotClosedError, SpecError
from .gcs import spin_coherent

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3
COMMANDS = ("purity", "mw", "verify", "scan", "state")
SCAN_FAMILIES = ("spin_coherent_grid", "ghz_family", "random_batch")


@dataclass
class RunConfig:
    command: str
    state_specs: List[str] = field(default_factory=list)
    basis_spec: Optional[str] = None
    output_format: Optional[str] = None
    seed: int = 0
    tolerance: Optional[float] = None
    samples: Optional[int] = None
    family: Optional[str] = None
    grid: int = 5
    extent: float = 1.0
    d: int = 8
    count: int = 100
    n_min: int = 2
    n_max: int = 8
    out: Optional[str] = None


def _describe(spec: dict) -> str:
    if "named" in spec:
        args = ",".join(f"{k}={v}" for k, v in spec.items() if k != "named")
        return f"{spec['named']}({args})"
    if "random" in spec:
        return "random(" + ",".join(f"{k}={v}" for k, v in spec["random"].items()) + ")"
    if "amplitudes" in spec:
        return f"amplitudes(d={len(spec['amplitudes'])})"
    if "product" in spec:
        return "product(" + ",".join(_describe(s) for s in spec["product"]) + ")"
    return "state"


def _load_states(config: RunConfig):
    if not config.state_specs:
        raise SpecError("--state is required")
    specs = [s for text in config.state_specs for s in states.parse_state_spec(text)]
    rng = states.make_rng(config.seed)
    return [(_describe(s) if isinstance(s, dict) else "state", states.state_from_spec(s, rng)) for s in specs]


def cmd_purity(config: RunConfig) -> List[dict]:
    if not config.basis_spec:
        raise SpecError("--basis is required")
    basis = algebra.parse_basis(config.basis_spec)
    loaded = _load_states(config)
    if basis.kind == "custom":
        print("warning: custom basis normalization is only as trustworthy as its reference state",
              file=sys.stderr)
    k = purity.normalization_k(basis)
    rows = []
    for sid, psi in loaded:
        rep = purity.h_purity(psi, basis, k_const=k)
        rows.append({"state": sid, "basis": rep.basis_label, "raw": rep.raw,
                     "k": rep.k_const, "normalized": rep.normalized})
    return rows


def cmd_mw(config: RunConfig) -> List[dict]:
    rows = []
    for sid, psi in _load_states(config):
        qs = [mw.meyer_wallach_q(psi), mw.q_via_purity(psi), mw.q_via_subsystem_purity(psi)]
        rows.append({"state": sid, "q_maps": qs[0], "q_purity": qs[1], "q_reductions": qs[2],
                     "max_residual": max(qs) - min(qs)})
    return rows


def cmd_verify(config: RunConfig) -> dict:
    results = checks.run_suite(seed=config.seed, tol=config.tolerance, samples=config.samples)
    return {
        "seed": config.seed,
        "tolerance": config.tolerance,
        "samples": config.samples,
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }


def cmd_scan(config: RunConfig) -> List[dict]:
    family = config.family
    if family == "spin_coherent_grid":
        basis = algebra.spin_generators(2)
        axis = np.linspace(-config.extent, config.extent, config.grid)
        return [{"re_xi": float(a), "im_xi": float(b),
                 "purity": purity.h_purity(spin_coherent(complex(a, b)), basis).normalized}
                for a in axis for b in axis]
    if family == "ghz_family":
        return [{"n": n, "purity": purity.h_purity(states.ghz(n), algebra.pauli_local(n)).normalized,
                 "q": mw.meyer_wallach_q(states.ghz(n))}
                for n in range(config.n_min, config.n_max + 1)]
    if family == "random_batch":
        d = config.d
        qubits = d >= 2 and d & (d - 1) == 0
        if config.basis_spec:
            basis = algebra.parse_basis(config.basis_spec)
        else:
            basis = algebra.pauli_local(d.bit_length() - 1) if qubits else algebra.su_basis(d)
        if basis.dim != d:
            raise DimensionError(f"basis acts on dimension {basis.dim}, batch states have {d}")
        k = purity.normalization_k(basis)
        rng = states.make_rng(config.seed)
        rows = []
        for i in range(config.count):
            psi = states.random_state(d, rng)
            row = {"index": i, "purity": purity.h_purity(psi, basis, k_const=k).normalized}
            if qubits:
                row["q"] = mw.meyer_wallach_q(psi)
            rows.append(row)
        return rows
    raise SpecError(f"unknown scan family {family!r}; choose from {', '.join(SCAN_FAMILIES)}")


def cmd_state(config: RunConfig):
    out = [states.state_to_json(psi) for _, psi in _load_states(config)]
    return out[0] if len(out) == 1 else out


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def to_csv(rows: List[dict]) -> str:
    buf = io.StringIO()
    header: List[str] = []
    for r in rows:
        header += [k for k in r if k not in header]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(r.get(k)) for k in header])
    return buf.getvalue()


def _verify_rows(report: dict) -> List[dict]:
    return [{"check": c["name"], "part": p["name"], "value": p["value"], "relation": p["relation"],
             "bound": p["bound"], "passed": p["passed"]}
            for c in report["checks"] for p in c["parts"]]


def render(config: RunConfig, result) -> str:
    fmt = config.output_format or ("json" if config.command in ("verify", "state") else "csv")
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    if config.command == "verify":
        return to_csv(_verify_rows(result))
    if config.command == "state":
        result = result if isinstance(result, list) else [result]
        return to_csv([{"index": i, "re": re, "im": im}
                       for r in result for i, (re, im) in enumerate(r["amplitudes"])])
    return to_csv(result)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ge", description="Generalized entanglement of pure states.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--state", action="append", default=[], dest="state_specs",
                   help="JSON state spec, a JSON list of specs, or @file (repeatable)")
    p.add_argument("--basis", dest="basis_spec", help="su:d | local:d1xd2x... | pauli:n | spin:2j | @ops.json")
    p.add_argument("--format", dest="output_format", choices=("csv", "json"))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", dest="tolerance", type=float, help="override every residual tolerance (verify)")
    p.add_argument("--samples", type=int, help="random sample count for every verify check")
    p.add_argument("--family", choices=SCAN_FAMILIES, help="scan family")
    p.add_argument("--grid", type=int, default=5, help="points per axis (spin_coherent_grid)")
    p.add_argument("--extent", type=float, default=1.0, help="xi range [-extent, extent] (spin_coherent_grid)")
    p.add_argument("--d", type=int, default=8, help="dimension (random_batch)")
    p.add_argument("--count", type=int, default=100, help="batch size (random_batch)")
    p.add_argument("--nmin", dest="n_min", type=int, default=2, help="smallest n (ghz_family)")
    p.add_argument("--nmax", dest="n_max", type=int, default=8, help="largest n (ghz_family)")
    p.add_argument("--out", help="write output to this file instead of stdout")
    return p


COMMAND_FUNCS = {"purity": cmd_purity, "mw": cmd_mw, "verify": cmd_verify, "scan": cmd_scan, "state": cmd_state}


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    config = RunConfig(**vars(ns))
    if config.seed is None:
        config.seed = 7 if config.command == "verify" else 0
    try:
        result = COMMAND_FUNCS[config.command](config)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DimensionError, NormalizationError, NotClosedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = render(config, result)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if config.command == "verify" and not result["passed"]:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
