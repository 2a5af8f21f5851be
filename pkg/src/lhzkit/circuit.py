"""Circuit representation for logical and physical spaces.

Physical gate set: CNOT, RX, RZ, X, H, INIT0, MEASZ over layout qubits (plus
syndrome ancillas).  Logical gates additionally include CP, CZ, CNOT and the
generic single-qubit unitary U(alpha, beta, gamma) = Rz(alpha) Rx(beta) Rz(gamma).

Scheduling is greedy ASAP: a gate goes into the first layer after every earlier
gate that shares an operand.  Resource counting follows the merged-depth
convention: consecutive single-qubit unitaries on the same qubit count as one
time step (they remain separate gates in the single-qubit column).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .layout import Layout, Qubit, parse_qubit

ONE_QUBIT_UNITARY = {"RX", "RZ", "X", "H", "U"}
PHYSICAL_KINDS = {"CNOT", "RX", "RZ", "X", "H", "INIT0", "MEASZ"}
LOGICAL_KINDS = {"RX", "RZ", "X", "H", "U", "CP", "CZ", "CNOT"}
NON_UNITARY = {"INIT0", "MEASZ"}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    angles: tuple[float, ...] = ()

    @property
    def is_unitary(self) -> bool:
        return self.kind not in NON_UNITARY

    @property
    def is_1q_unitary(self) -> bool:
        return self.kind in ONE_QUBIT_UNITARY and len(self.qubits) == 1

    def __repr__(self) -> str:
        ops = " ".join(str(q) for q in self.qubits)
        if self.angles:
            return f"{self.kind} {ops} {' '.join(f'{a:g}' for a in self.angles)}"
        return f"{self.kind} {ops}"


def cnot(control, target) -> Gate:
    if control == target:
        raise ValueError("CNOT control and target must differ")
    return Gate("CNOT", (control, target))


def rx(q, theta: float) -> Gate:
    return Gate("RX", (q,), (float(theta),))


def rz(q, theta: float) -> Gate:
    return Gate("RZ", (q,), (float(theta),))


def xgate(q) -> Gate:
    return Gate("X", (q,))


def hgate(q) -> Gate:
    return Gate("H", (q,))


def init0(q) -> Gate:
    return Gate("INIT0", (q,))


def measure_z(q) -> Gate:
    return Gate("MEASZ", (q,))


@dataclass
class Circuit:
    space: str  # "logical" | "physical"
    n: int  # logical qubit count of the underlying layout
    gates: tuple[Gate, ...] = ()
    name: str = ""
    layout: Layout | None = None

    def __post_init__(self):
        self.gates = tuple(self.gates)
        if self.space not in ("logical", "physical"):
            raise ValueError(f"unknown circuit space {self.space!r}")
        kinds = LOGICAL_KINDS if self.space == "logical" else PHYSICAL_KINDS
        for g in self.gates:
            if g.kind not in kinds:
                raise ValueError(f"gate {g.kind} not allowed in {self.space} space")
            if self.space == "logical":
                for q in g.qubits:
                    if not 0 <= int(q) < self.n:
                        raise ValueError(f"logical operand {q} out of range")

    def __len__(self) -> int:
        return len(self.gates)

    def extended(self, gates, name=None) -> "Circuit":
        return Circuit(self.space, self.n, self.gates + tuple(gates),
                       name if name is not None else self.name, self.layout)

    @property
    def qubit_set(self) -> set:
        return {q for g in self.gates for q in g.qubits}


@dataclass
class Schedule:
    layers: list[list[int]]

    @property
    def depth(self) -> int:
        return len(self.layers)


@dataclass
class ResourceCount:
    single_qubit: int
    two_qubit: int
    depth: int
    raw_depth: int


def schedule(c: Circuit) -> Schedule:
    """Greedy ASAP layering; depth = number of layers."""
    last: dict = {}
    layers: list[list[int]] = []
    for idx, g in enumerate(c.gates):
        layer = max((last.get(q, 0) for q in g.qubits), default=0)
        if layer == len(layers):
            layers.append([])
        layers[layer].append(idx)
        for q in g.qubits:
            last[q] = layer + 1
    return Schedule(layers)


def merge_adjacent_1q(gates) -> tuple[Gate, ...]:
    """Collapse runs of single-qubit unitaries on the same qubit into one slot."""
    out: list[Gate] = []
    state: dict = {}  # qubit -> "run" | "other"
    for g in gates:
        if g.is_1q_unitary:
            q = g.qubits[0]
            if state.get(q) == "run":
                continue
            state[q] = "run"
            out.append(Gate("U", (q,)))
        else:
            for q in g.qubits:
                state[q] = "other"
            out.append(g)
    return tuple(out)


def count_resources(c: Circuit, merge_1q: bool = True) -> ResourceCount:
    single = sum(1 for g in c.gates if g.is_1q_unitary)
    two = sum(1 for g in c.gates if g.kind == "CNOT")
    raw_depth = schedule(c).depth
    if merge_1q:
        merged_gates = merge_adjacent_1q(c.gates)
        last: dict = {}
        depth = 0
        for g in merged_gates:
            layer = max((last.get(q, 0) for q in g.qubits), default=0)
            depth = max(depth, layer + 1)
            for q in g.qubits:
                last[q] = layer + 1
    else:
        depth = raw_depth
    return ResourceCount(single, two, depth, raw_depth)


def validate_locality(c: Circuit, layout: Layout | None = None,
                      extra_coords: dict | None = None) -> list[Gate]:
    """Return every CNOT whose operands are not lattice nearest neighbors."""
    lay = layout or c.layout
    if lay is None:
        raise ValueError("locality validation needs a layout")
    extra = extra_coords or {}

    def coord(q: Qubit):
        if q in lay.coords:
            return lay.coords[q]
        if q in extra:
            return extra[q]
        if q.is_ancilla and q.indices[0] < len(lay.constraints):
            # syndrome ancilla a<k> sits at the plaquette center of constraint k
            members = lay.constraints[q.indices[0]].members
            xs = [lay.coords[m][0] for m in members]
            ys = [lay.coords[m][1] for m in members]
            return (sum(xs) / len(xs), sum(ys) / len(ys))
        raise KeyError(f"no coordinate known for {q}")

    bad = []
    for g in c.gates:
        if g.kind != "CNOT":
            continue
        (ax, ay), (bx, by) = coord(g.qubits[0]), coord(g.qubits[1])
        if any(q.is_ancilla for q in g.qubits):
            # plaquette-center ancillas: adjacency is a Chebyshev step
            ok = max(abs(ax - bx), abs(ay - by)) <= 1
        else:
            ok = abs(ax - bx) == 1 and abs(ay - by) == 1
        if not ok:
            bad.append(g)
    return bad


def invert(c: Circuit) -> Circuit:
    """Reverse the gate list, inverting each gate. Unitary circuits only."""
    inv = []
    for g in reversed(c.gates):
        if not g.is_unitary:
            raise ValueError(f"cannot invert non-unitary gate {g.kind}")
        if g.kind in ("CNOT", "X", "H"):
            inv.append(g)
        elif g.kind in ("RX", "RZ", "CP", "CZ"):
            inv.append(Gate(g.kind, g.qubits, tuple(-a for a in g.angles)))
        elif g.kind == "U":
            a, b, gm = g.angles
            inv.append(Gate("U", g.qubits, (-gm, -b, -a)))
        else:
            raise ValueError(f"no inverse rule for {g.kind}")
    return Circuit(c.space, c.n, tuple(inv), c.name, c.layout)


# --- serialization -----------------------------------------------------------

def _operand_token(q, space: str):
    return q.token if space == "physical" else int(q)


def _parse_operand(tok, space: str):
    if space == "physical":
        return parse_qubit(tok)
    return int(tok)


def circuit_to_dict(c: Circuit) -> dict:
    gates = []
    for g in c.gates:
        entry: dict = {"kind": g.kind,
                       "operands": [_operand_token(q, c.space) for q in g.qubits]}
        if len(g.angles) == 1:
            entry["angle"] = g.angles[0]
        elif len(g.angles) > 1:
            entry["angles"] = list(g.angles)
        gates.append(entry)
    return {"space": c.space, "n": c.n, "gates": gates}


def circuit_from_dict(d: dict, layout: Layout | None = None) -> Circuit:
    try:
        space = d["space"]
        n = int(d["n"])
        gates = []
        for k, entry in enumerate(d["gates"]):
            kind = entry["kind"].upper()
            ops = tuple(_parse_operand(t, space) for t in entry["operands"])
            if "angles" in entry:
                angles = tuple(float(a) for a in entry["angles"])
            elif "angle" in entry:
                angles = (float(entry["angle"]),)
            else:
                angles = ()
            gates.append(Gate(kind, ops, angles))
    except (KeyError, TypeError, ValueError) as exc:
        raise CircuitParseError(f"bad circuit document: {exc}") from exc
    try:
        return Circuit(space, n, tuple(gates), d.get("name", ""), layout)
    except ValueError as exc:
        raise CircuitParseError(str(exc)) from exc


def circuit_to_json(c: Circuit, indent=None) -> str:
    return json.dumps(circuit_to_dict(c), indent=indent)


def circuit_from_json(text: str, layout: Layout | None = None) -> Circuit:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitParseError(f"invalid JSON: {exc}") from exc
    return circuit_from_dict(d, layout)


def circuit_to_text(c: Circuit) -> str:
    """Line-oriented format: one gate per line, e.g. `CNOT d0 p0_1`, `RZ d1 0.785`."""
    lines = []
    for g in c.gates:
        parts = [g.kind] + [str(_operand_token(q, c.space)) for q in g.qubits]
        parts += [repr(a) for a in g.angles]
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def circuit_from_text(text: str, space: str, n: int,
                      layout: Layout | None = None) -> Circuit:
    gates = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0].upper()
        rest = parts[1:]
        n_ops = 2 if kind in ("CNOT", "CP", "CZ") else 1
        if len(rest) < n_ops:
            raise CircuitParseError(f"line {ln}: too few operands for {kind}")
        try:
            ops = tuple(_parse_operand(t, space) for t in rest[:n_ops])
            angles = tuple(float(a) for a in rest[n_ops:])
        except ValueError as exc:
            raise CircuitParseError(f"line {ln}: {exc}") from exc
        gates.append(Gate(kind, ops, angles))
    try:
        return Circuit(space, n, tuple(gates), layout=layout)
    except ValueError as exc:
        raise CircuitParseError(str(exc)) from exc


class CircuitParseError(ValueError):
    pass
