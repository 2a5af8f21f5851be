"""Extended LHZ layout: physical qubits, lattice geometry, parity constraints, logical lines.

The chip for n logical qubits has a bottom row of n data qubits (i) and a
triangle of n(n-1)/2 parity qubits (i,j), i<j.  Data qubit (i) sits at lattice
coordinate (2i, 0); parity qubit (i,j) at (i+j, j-i).  Adjacency is a diagonal
step (+-1, +-1), so every constraint plaquette and every logical line is
nearest-neighbor connected.
"""
from __future__ import annotations

from dataclasses import dataclass

from .pauli import PauliString

DATA = "data"
PARITY = "parity"
ANCILLA = "ancilla"


@dataclass(frozen=True, order=True)
class Qubit:
    kind: str
    indices: tuple[int, ...]

    @property
    def is_data(self) -> bool:
        return self.kind == DATA

    @property
    def is_parity(self) -> bool:
        return self.kind == PARITY

    @property
    def is_ancilla(self) -> bool:
        return self.kind == ANCILLA

    @property
    def token(self) -> str:
        if self.kind == DATA:
            return f"d{self.indices[0]}"
        if self.kind == PARITY:
            return f"p{self.indices[0]}_{self.indices[1]}"
        return f"a{self.indices[0]}"

    def __repr__(self) -> str:
        return self.token


def data(i: int) -> Qubit:
    if i < 0:
        raise ValueError(f"data index must be non-negative, got {i}")
    return Qubit(DATA, (i,))


def parity(i: int, j: int) -> Qubit:
    if not 0 <= i < j:
        raise ValueError(f"parity qubit needs 0 <= i < j, got ({i}, {j})")
    return Qubit(PARITY, (i, j))


def ancilla(k: int) -> Qubit:
    return Qubit(ANCILLA, (k,))


def parse_qubit(token: str) -> Qubit:
    try:
        if token.startswith("d"):
            return data(int(token[1:]))
        if token.startswith("p"):
            i, j = token[1:].split("_")
            return parity(int(i), int(j))
        if token.startswith("a"):
            return ancilla(int(token[1:]))
    except ValueError:
        pass
    raise ValueError(f"unrecognized qubit token {token!r}")


def coordinate(q: Qubit) -> tuple[int, int]:
    """Lattice position of a data or parity qubit."""
    if q.is_data:
        return (2 * q.indices[0], 0)
    if q.is_parity:
        i, j = q.indices
        return (i + j, j - i)
    raise ValueError(f"{q} has no fixed lattice coordinate")


@dataclass(frozen=True)
class Constraint:
    """A 3- or 4-body Z-type parity check on mutually local qubits."""

    cid: int
    qubits: frozenset[Qubit]

    def __post_init__(self):
        if len(self.qubits) not in (3, 4):
            raise ValueError("constraints have 3 or 4 member qubits")

    @property
    def members(self) -> tuple[Qubit, ...]:
        return tuple(sorted(self.qubits))

    def logical_index_multiplicities(self) -> dict[int, int]:
        mult: dict[int, int] = {}
        for q in self.qubits:
            for i in q.indices:
                mult[i] = mult.get(i, 0) + 1
        return mult


@dataclass(frozen=True)
class LogicalLine:
    """All qubits whose label contains one logical index, in lattice path order."""

    logical_index: int
    path: tuple[Qubit, ...]


class Layout:
    """Immutable description of the extended LHZ chip for n logical qubits."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"layout needs n >= 2, got n={n}")
        self.n = n
        self.qubits: tuple[Qubit, ...] = tuple(
            [data(i) for i in range(n)]
            + [parity(i, j) for i in range(n) for j in range(i + 1, n)]
        )
        self._index = {q: k for k, q in enumerate(self.qubits)}
        self.coords = {q: coordinate(q) for q in self.qubits}
        self.constraints = tuple(self._build_constraints())
        self.lines = tuple(self._build_line(i) for i in range(n))

    def _build_constraints(self):
        n = self.n
        plaquettes = []
        for i in range(n - 1):
            plaquettes.append({data(i), data(i + 1), parity(i, i + 1)})
        for i in range(n - 2):
            plaquettes.append({parity(i, i + 1), parity(i + 1, i + 2), parity(i, i + 2)})
        for i in range(1, n - 1):
            for j in range(i + 1, n - 1):
                plaquettes.append(
                    {parity(i, j), parity(i - 1, j), parity(i, j + 1), parity(i - 1, j + 1)}
                )
        return [Constraint(cid, frozenset(qs)) for cid, qs in enumerate(plaquettes)]

    def _build_line(self, i: int) -> LogicalLine:
        path = [parity(j, i) for j in range(i)] + [data(i)] + [
            parity(i, j) for j in range(i + 1, self.n)
        ]
        return LogicalLine(i, tuple(path))

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def __contains__(self, q: Qubit) -> bool:
        return q in self._index

    def index(self, q: Qubit) -> int:
        return self._index[q]

    def logical_line(self, i: int) -> LogicalLine:
        if not 0 <= i < self.n:
            raise IndexError(f"logical index {i} out of range for n={self.n}")
        return self.lines[i]

    def are_neighbors(self, a: Qubit, b: Qubit) -> bool:
        if a not in self._index or b not in self._index:
            raise KeyError(f"qubit not in layout: {a if a not in self._index else b}")
        (ax, ay), (bx, by) = self.coords[a], self.coords[b]
        return abs(ax - bx) == 1 and abs(ay - by) == 1

    def constraint_parity_operator(self, c: Constraint) -> PauliString:
        return PauliString(self.qubits, {q: "Z" for q in c.qubits})

    def line_x_operator(self, i: int) -> PauliString:
        return PauliString(self.qubits, {q: "X" for q in self.logical_line(i).path})

    def data_z_operator(self, i: int) -> PauliString:
        return PauliString(self.qubits, {data(i): "Z"})

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "qubits": [
                {"id": q.token, "x": self.coords[q][0], "y": self.coords[q][1]}
                for q in self.qubits
            ],
            "constraints": [
                {"id": c.cid, "qubits": [q.token for q in c.members]}
                for c in self.constraints
            ],
            "lines": [
                {"logical_index": l.logical_index, "path": [q.token for q in l.path]}
                for l in self.lines
            ],
        }


def build_layout(n: int) -> Layout:
    """Construct the extended LHZ layout for n >= 2 logical qubits."""
    return Layout(n)
