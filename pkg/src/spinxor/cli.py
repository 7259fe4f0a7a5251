"""Command-line entry point. JSON goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 semantic failure (verification or search), 2 usage
or parse error.
"""

from __future__ import annotations

import argparse
import itertools
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import gates, hamfile, linalg, pauli
from .search import InteractionTemplate, SearchConfig, realize, search

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _num(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite number {x}")
    if float(x).is_integer() and abs(x) < 1e17:
        return str(int(x)) if x != 0 or math.copysign(1, x) > 0 else "-0"
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 0, step: int = 2) -> str:
    """JSON with 17 significant digits and ``[re, im]`` complex numbers.

    Arrays of scalars stay on one line; key order is insertion order.
    """
    pad = " " * (indent + step)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_num(obj.real)}, {_num(obj.imag)}]"
    if isinstance(obj, str):
        import json
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dumps(str(k))}: {dumps(v, indent + step, step)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent + step, step) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def matrix_json(m: np.ndarray) -> list:
    return [[complex(z) for z in row] for row in m]


def map_json(sp: gates.SignedPermutation | None) -> dict | None:
    if sp is None:
        return None
    return {"image": list(sp.image), "phases": list(sp.phase)}


def report_json(r: gates.VerificationReport) -> dict:
    return {
        "passed": r.passed,
        "tolerance": r.tolerance,
        "max_leakage": r.max_leakage,
        "column_leakage": list(r.column_leakage),
        "induced_map": map_json(r.induced_map),
    }


def _load(path: str) -> hamfile.HamFileDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return hamfile.parse_file(text)
    except hamfile.ParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def _finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise UsageError(f"--{name} must be finite")
    return value


def _site(system: pauli.SpinSystem, name: str) -> int:
    try:
        return system.index(name.strip())
    except KeyError:
        raise UsageError(f"unknown site {name.strip()!r}; sites are {' '.join(system.site_names)}") from None


def _gate_spec(system: pauli.SpinSystem, gate: str, inputs: str, output: str) -> gates.GateSpec:
    in_sites = tuple(_site(system, s) for s in inputs.split(","))
    out_site = _site(system, output)
    if len(in_sites) != 2:
        raise UsageError(f"gate {gate!r} takes two inputs, got {len(in_sites)}")
    try:
        return gates.GateSpec.from_function(gates.GATES[gate], in_sites, out_site)
    except gates.GateError as exc:
        raise UsageError(str(exc)) from None


def _evolve(doc: hamfile.HamFileDocument, t: float) -> np.ndarray:
    return linalg.unitary_exponential(pauli.assemble(doc.hamiltonian), _finite("time", t))


def cmd_assemble(args) -> int:
    doc = _load(args.file)
    print(dumps(matrix_json(pauli.assemble(doc.hamiltonian))))
    return EXIT_OK


def cmd_evolve(args) -> int:
    doc = _load(args.file)
    print(dumps(matrix_json(_evolve(doc, args.time))))
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _load(args.file)
    spec = _gate_spec(doc.system, args.gate, args.inputs, args.output)
    u = _evolve(doc, args.time)
    report = gates.verify_gate(u, spec, args.tol)
    print(dumps(report_json(report)))
    if not report.passed:
        print(f"verification failed: max leakage {report.max_leakage:.3e} > {args.tol:.1e}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_truth_table(args) -> int:
    doc = _load(args.file)
    print(dumps(map_json(gates.induced_map(_evolve(doc, args.time), args.tol))))
    return EXIT_OK


def cmd_eig(args) -> int:
    doc = _load(args.file)
    eig = linalg.hermitian_eigen(pauli.assemble(doc.hamiltonian))
    print(dumps([float(w) for w in eig.eigenvalues]))
    return EXIT_OK


def _parse_pairs(system: pauli.SpinSystem, text: str | None) -> tuple[tuple[int, int], ...]:
    if text is None:
        return tuple(itertools.combinations(range(system.site_count), 2))
    if not text.strip():
        return ()
    pairs = []
    for item in text.split(","):
        item = item.strip()
        parts = item.split(":") if ":" in item else list(item)
        if len(parts) != 2:
            raise UsageError(f"cannot read pair {item!r}; write AB or A:B")
        pairs.append((_site(system, parts[0]), _site(system, parts[1])))
    return tuple(pairs)


def cmd_search(args) -> int:
    if args.restarts < 1:
        raise UsageError("--restarts must be at least 1")
    system = pauli.SpinSystem(tuple(s.strip() for s in args.spins.split(",")))
    spec = _gate_spec(system, args.gate, args.inputs, args.output)
    try:
        template = InteractionTemplate(system, _parse_pairs(system, args.pairs),
                                       include_single_site=args.single_site)
        config = SearchConfig(restarts=args.restarts, rng_seed=args.seed, success_tol=args.tol,
                              max_iterations=args.max_iterations)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    def progress(k, value):
        if args.verbose:
            print(f"restart {k}: objective {value:.3e}", file=sys.stderr)

    result = search(template, spec, config, progress=progress)
    h = realize(template, result.best_parameters)
    print(dumps({
        "succeeded": result.succeeded,
        "best_objective": result.best_objective,
        "restart_index": result.restart_index,
        "restarts_run": result.restarts_run,
        "iterations_used": result.iterations_used,
        "best_parameters": list(result.best_parameters),
        "hamiltonian": hamfile.write_file(h),
    }))
    return EXIT_OK if result.succeeded else EXIT_FAIL


def cmd_xor_demo(args) -> int:
    h = pauli.xor_hamiltonian()
    hm = pauli.assemble(h)
    u = linalg.unitary_exponential(hm, 1.0)
    reference = gates.canonical_xor_unitary()
    deviation = float(np.abs(u - reference).max())
    report = gates.verify_gate(u, gates.xor_gate_spec(), args.tol)
    ok = deviation <= 1e-10 and report.passed
    print(dumps({
        "hamiltonian": hamfile.write_file(h),
        "hamiltonian_matrix": matrix_json(hm),
        "unitary": matrix_json(u),
        "reference": matrix_json(reference),
        "max_deviation": deviation,
        "report": report_json(report),
    }))
    if not ok:
        print(f"xor-demo failed: deviation {deviation:.3e}, passed={report.passed}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinxor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assemble", help="print the Hamiltonian matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("evolve", help="print U = exp(-i H t)")
    p.add_argument("file")
    p.add_argument("--time", type=float, default=1.0)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify", help="check that U computes a gate into an output spin")
    p.add_argument("file")
    p.add_argument("--gate", choices=sorted(gates.GATES), default="xor")
    p.add_argument("--inputs", default="A,B")
    p.add_argument("--output", default="C")
    p.add_argument("--time", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=gates.VERIFY_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("truth-table", help="print U as a signed permutation, or null")
    p.add_argument("file")
    p.add_argument("--time", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_truth_table)

    p = sub.add_parser("eig", help="print Hamiltonian eigenvalues, ascending")
    p.add_argument("file")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("search", help="search two-spin coefficients realizing a gate")
    p.add_argument("--spins", default="A,B,C")
    p.add_argument("--pairs", default=None, help="e.g. AB,BC (default: all pairs)")
    p.add_argument("--gate", choices=sorted(gates.GATES), default="xor")
    p.add_argument("--inputs", default="A,B")
    p.add_argument("--output", default="C")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--single-site", action="store_true")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("xor-demo", help="reproduce the three-spin XOR unitary end to end")
    p.add_argument("--tol", type=float, default=gates.VERIFY_TOL)
    p.set_defaults(func=cmd_xor_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"spinxor {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (linalg.LinalgError, gates.GateError) as exc:
        print(f"spinxor {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
