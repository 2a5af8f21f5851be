"""Encoding and decoding circuits for the extended LHZ chip.

`encode_full` emits the depth-(n+1) full-chip CNOT sequence; its reverse
decodes.  The one-qubit variants add or remove a single parity qubit, either
directly from the two adjacent data qubits or from the other members of a
constraint.  `syndrome_circuit` produces constraint readout circuits in both
the ancilla and the decode-measure-reencode style.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Gate, cnot, init0, invert, measure_z
from .layout import Constraint, Layout, Qubit, ancilla, data, parity


@dataclass
class CodecPlan:
    circuit: Circuit
    direction: str  # "encode" | "decode"
    touched: frozenset[Qubit]


def _plan(layout: Layout, gates, direction: str, name: str) -> CodecPlan:
    circ = Circuit("physical", layout.n, tuple(gates), name, layout)
    touched = frozenset(q for g in circ.gates for q in g.qubits)
    return CodecPlan(circ, direction, touched)


def encode_full(layout: Layout) -> CodecPlan:
    """Full-chip encoding sequence: n(n-1) CNOTs, scheduled depth n+1.

    Assumes all parity qubits start in |0>; afterwards parity qubit (i,j)
    carries the parity of data qubits (i) and (j).
    """
    n = layout.n
    g: list[Gate] = []
    for i in range(n - 1):  # step 1
        g.append(cnot(data(i), parity(i, i + 1)))
    for i in range(n - 1):  # step 2
        g.append(cnot(data(i + 1), parity(i, i + 1)))
    for i in range(1, n - 1):  # step 3
        g.append(cnot(parity(i, i + 1), parity(i - 1, i + 1)))
    if n >= 3:  # step 4
        g.append(cnot(parity(0, 1), parity(0, 2)))
        for i in range(1, n - 2):
            g.append(cnot(parity(i, i + 2), parity(i - 1, i + 2)))
    for j in range(3, n):  # step j+2
        g.append(cnot(parity(0, j - 1), parity(0, j)))
        g.append(cnot(parity(1, j - 1), parity(1, j)))
        for i in range(1, n - j):
            g.append(cnot(parity(i + 1, i + j - 1), parity(i + 1, i + j)))
            g.append(cnot(parity(i, i + j), parity(i - 1, i + j)))
    return _plan(layout, g, "encode", f"encode_full(n={n})")


def decode_full(layout: Layout) -> CodecPlan:
    """Reverse of encode_full: moves all information onto the data qubits."""
    enc = encode_full(layout)
    circ = invert(enc.circuit)
    circ.name = f"decode_full(n={layout.n})"
    return CodecPlan(circ, "decode", enc.touched)


def encode_one_direct(layout: Layout, i: int, j: int) -> CodecPlan:
    """Encode parity qubit (i,j) from the two adjacent data qubits (3-body case)."""
    target = parity(i, j)
    if target not in layout:
        raise KeyError(f"{target} not in layout")
    if j != i + 1:
        raise ValueError(
            f"parity qubit ({i},{j}) is not adjacent to both data qubits; "
            "direct encoding needs j = i+1")
    gates = [cnot(data(i), target), cnot(data(j), target)]
    return _plan(layout, gates, "encode", f"encode_one_direct({i},{j})")


def encode_one_from_constraint(layout: Layout, target: Qubit,
                               c: Constraint) -> CodecPlan:
    """Encode `target` (assumed |0>) from the other members of constraint c."""
    if target not in c.qubits:
        raise ValueError(f"{target} is not a member of constraint {c.cid}")
    gates = [cnot(q, target) for q in c.members if q != target]
    return _plan(layout, gates, "encode",
                 f"encode_one_from_constraint({target},{c.cid})")


def decode_target(c: Constraint) -> Qubit:
    """The constraint member removable via the others: the topmost qubit."""
    def row(q: Qubit) -> int:
        return q.indices[-1] - q.indices[0] if q.is_parity else 0

    return max(c.members, key=lambda q: (row(q), q))


def ancilla_for(c: Constraint) -> Qubit:
    return ancilla(c.cid)


def ancilla_coord(layout: Layout, c: Constraint) -> tuple[float, float]:
    """Plaquette-center position of the syndrome ancilla."""
    xs = [layout.coords[q][0] for q in c.members]
    ys = [layout.coords[q][1] for q in c.members]
    return (sum(xs) / len(xs), sum(ys) / len(ys))


def syndrome_circuit(layout: Layout, c: Constraint, style: str = "ancilla") -> Circuit:
    """Constraint readout circuit.

    ancilla style: init the plaquette-center ancilla, CNOT from each member,
    measure.  decode-measure-reencode style: undo the one-qubit encoding of the
    constraint's top qubit, measure it, re-encode.
    """
    if style == "ancilla":
        anc = ancilla_for(c)
        gates = [init0(anc)]
        gates += [cnot(q, anc) for q in c.members]
        gates.append(measure_z(anc))
        return Circuit("physical", layout.n, tuple(gates),
                       f"syndrome(c{c.cid},ancilla)", layout)
    if style == "decode-measure-reencode":
        target = decode_target(c)
        sources = [q for q in c.members if q != target]
        decode = [cnot(q, target) for q in reversed(sources)]
        reencode = [cnot(q, target) for q in sources]
        gates = decode + [measure_z(target)] + reencode
        return Circuit("physical", layout.n, tuple(gates),
                       f"syndrome(c{c.cid},decode)", layout)
    raise ValueError(f"unknown syndrome style {style!r}")
