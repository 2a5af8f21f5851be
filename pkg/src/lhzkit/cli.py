"""Command-line entry point: layout, encode, compile, simulate, verify, errors.

Every output starts with a reproducibility manifest (subcommand, arguments,
seed, tool version), as a `manifest` JSON field or as `#` comment lines.
Exit codes: 0 success/pass, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .circuit import (Circuit, CircuitParseError, circuit_from_json,
                      circuit_from_text, circuit_to_json, circuit_to_text,
                      count_resources, validate_locality)
from .codec import decode_full, encode_full
from .compiler import LoweringOptions, compile_circuit, table1_rows
from .errormodel import sweep, sweep_csv
from .layout import build_layout
from .sim import (MAX_QUBITS, SimulationError, Statevector,
                  fidelity_up_to_phase, parity_residual, reduced_data_state,
                  reference_unitary)

FIDELITY_THRESHOLD = 1.0 - 1e-9
RESIDUAL_THRESHOLD = 1e-10


def _manifest(args: argparse.Namespace, seed=None) -> dict:
    arg_items = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    return {"subcommand": args.subcommand, "arguments": arg_items,
            "seed": seed, "version": __version__}


def _manifest_comment(args, seed=None) -> str:
    return "# manifest: " + json.dumps(_manifest(args, seed)) + "\n"


def _write(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_layout(args) -> int:
    layout = build_layout(args.n)
    doc = {"manifest": _manifest(args), "layout": layout.to_dict()}
    _write(json.dumps(doc, indent=2) + "\n", args.output)
    return 0


def cmd_encode(args) -> int:
    layout = build_layout(args.n)
    plan = decode_full(layout) if args.reverse else encode_full(layout)
    if args.format == "json":
        doc = {"manifest": _manifest(args)}
        doc.update(json.loads(circuit_to_json(plan.circuit)))
        _write(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        _write(_manifest_comment(args) + circuit_to_text(plan.circuit), args.output)
    return 0


def _load_logical(path: str, n: int) -> Circuit:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return circuit_from_json(text)
    return circuit_from_text(text, "logical", n)


def cmd_compile(args) -> int:
    layout = build_layout(args.n)
    logical = _load_logical(args.input, args.n)
    opts = LoweringOptions(rotation_site=args.site, peephole=args.peephole)
    physical = compile_circuit(logical, layout, opts)
    bad = validate_locality(physical, layout)
    if bad:
        print(f"error: {len(bad)} non-local CNOTs in lowered circuit",
              file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {"manifest": _manifest(args)}
        doc.update(json.loads(circuit_to_json(physical)))
        out = json.dumps(doc, indent=2) + "\n"
    else:
        out = _manifest_comment(args) + circuit_to_text(physical)
    _write(out, args.output)
    if args.report:
        lines = [_manifest_comment(args).rstrip("\n"),
                 "gate,single_qubit,two_qubit,depth,table1_expected,match"]
        for row in table1_rows(layout):
            lines.append(
                f"{row['gate']},{row['single_qubit']},{row['two_qubit']},"
                f"{row['depth']},\"{row['expected']}\",{row['match']}")
        _write("\n".join(lines) + "\n", args.report_output)
    return 0


def cmd_simulate(args) -> int:
    layout = build_layout(args.n)
    with open(args.circuit) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        circ = circuit_from_json(text, layout)
    else:
        circ = circuit_from_text(text, "physical", args.n, layout)
    if circ.space != "physical":
        raise CircuitParseError("simulate expects a physical circuit")
    ancillas = sorted(q for q in circ.qubit_set if q.is_ancilla)
    register = tuple(layout.qubits) + tuple(ancillas)
    rng = np.random.default_rng(args.seed)
    sv = Statevector(register, rng=rng)
    if args.input == "random":
        amps = rng.normal(size=2 ** len(register)) \
            + 1j * rng.normal(size=2 ** len(register))
        sv.amps = amps / np.linalg.norm(amps)
    elif args.input != "zeros":
        bits = args.input
        if len(bits) != len(register) or set(bits) - {"0", "1"}:
            raise CircuitParseError(
                f"basis string must be {len(register)} chars of 0/1")
        index = sum(1 << k for k, b in enumerate(bits) if b == "1")
        sv.amps[:] = 0.0
        sv.amps[index] = 1.0
    sv.run(circ)
    doc = {"manifest": _manifest(args, args.seed),
           "register": [q.token for q in register],
           "outcomes": sv.outcomes}
    if not args.outcomes_only:
        nz = np.flatnonzero(np.abs(sv.amps) > 1e-12)
        doc["amplitudes"] = {
            format(int(k), f"0{len(register)}b")[::-1]:
                [sv.amps[k].real, sv.amps[k].imag]
            for k in nz
        }
    _write(json.dumps(doc, indent=2) + "\n", args.output)
    return 0


def cmd_verify(args) -> int:
    if args.n > 6:
        print(f"error: n={args.n} exceeds the simulator cap "
              f"({MAX_QUBITS} physical qubits, n <= 6)", file=sys.stderr)
        return 2
    layout = build_layout(args.n)
    logical = _load_logical(args.input, args.n)
    opts = LoweringOptions(rotation_site=args.site, peephole=args.peephole)
    physical = compile_circuit(logical, layout, opts)

    ref = np.eye(2 ** args.n, dtype=complex)
    for g in logical.gates:
        ref = reference_unitary(g, args.n) @ ref

    rng = np.random.default_rng(args.seed)
    enc = encode_full(layout).circuit
    dec = decode_full(layout).circuit
    min_fid = 1.0
    max_res = 0.0
    for _ in range(args.trials):
        psi = rng.normal(size=2 ** args.n) + 1j * rng.normal(size=2 ** args.n)
        psi /= np.linalg.norm(psi)
        sv = Statevector.for_layout(layout)
        sv.amps[: 2 ** args.n] = psi
        sv.run(enc).run(physical).run(dec)
        max_res = max(max_res, parity_residual(sv, layout))
        got = sv.amps[: 2 ** args.n]
        got = got / np.linalg.norm(got)
        min_fid = min(min_fid, float(abs(np.vdot(ref @ psi, got)) ** 2))
    passed = min_fid >= FIDELITY_THRESHOLD and max_res <= RESIDUAL_THRESHOLD
    print(json.dumps({
        "manifest": _manifest(args, args.seed),
        "min_fidelity": min_fid,
        "max_parity_residual": max_res,
        "pass": passed,
    }, indent=2))
    return 0 if passed else 1


def _parse_grid(spec: str):
    """Grid spec `lo:hi:logN` or `lo:hi:linN` or comma-separated values."""
    if ":" in spec:
        try:
            lo, hi, kind = spec.split(":")
            lo, hi = float(lo), float(hi)
            if kind.startswith("log"):
                return list(np.geomspace(lo, hi, int(kind[3:])))
            if kind.startswith("lin"):
                return list(np.linspace(lo, hi, int(kind[3:])))
        except ValueError:
            pass
        raise ValueError(f"malformed grid spec {spec!r}")
    return [float(x) for x in spec.split(",")]


def cmd_errors(args) -> int:
    n_values = [int(x) for x in args.n_list.split(",")]
    p_values = _parse_grid(args.pphys_grid)
    rows = sweep(n_values, p_values, mc_trials=args.mc, seed=args.seed)
    out = _manifest_comment(args, args.seed) + sweep_csv(rows)
    _write(out, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lhzkit",
        description="Parity-architecture compiler and verification toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("layout", help="emit the chip layout as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("encode", help="emit the full encoding (or decoding) circuit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("compile", help="lower a logical circuit to physical gates")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--peephole", action="store_true")
    p.add_argument("--site", choices=("center", "data"), default="center")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None)
    p.add_argument("--report", action="store_true",
                   help="also emit the resource-count comparison CSV")
    p.add_argument("--report-output", default=None)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="run a physical circuit on the statevector simulator")
    p.add_argument("--circuit", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", default="zeros",
                   help="'zeros', 'random', or a basis bit string (qubit 0 first)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--outcomes-only", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check a compiled circuit against the logical reference")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--peephole", action="store_true")
    p.add_argument("--site", choices=("center", "data"), default="center")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("errors", help="logical-error-rate sweep as CSV")
    p.add_argument("--n-list", default="3,5,7,9")
    p.add_argument("--pphys-grid", default="1e-5:1e-2:log20")
    p.add_argument("--mc", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_errors)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CircuitParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
