"""Dense statevector simulation over physical qubits.

Qubit ordering: the register is an explicit tuple; position k in the register
is bit k of the basis index (qubit 0 = least significant bit).  For a layout
register this means data qubits first (ascending), then parity qubits in
lexicographic (i,j) order, then any ancillas.

Gate conventions: Rz(t) = diag(e^{-it/2}, e^{+it/2}), Rx(t) = exp(-i t/2 X).
Global phase is never normalized away; comparisons factor it out explicitly.
"""
from __future__ import annotations

import numpy as np

from .circuit import Circuit, Gate
from .layout import Layout

MAX_QUBITS = 24  # 2^24 amplitudes; the n=6 chip (21 qubits) fits, n=7 does not
_ATOL = 1e-10


def rx_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def rz_matrix(theta: float) -> np.ndarray:
    return np.array([[np.exp(-1j * theta / 2), 0],
                     [0, np.exp(1j * theta / 2)]], dtype=complex)


H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X_MATRIX = np.array([[0, 1], [1, 0]], dtype=complex)


def gate_matrix_1q(g: Gate) -> np.ndarray:
    if g.kind == "RX":
        return rx_matrix(g.angles[0])
    if g.kind == "RZ":
        return rz_matrix(g.angles[0])
    if g.kind == "H":
        return H_MATRIX
    if g.kind == "X":
        return X_MATRIX
    raise ValueError(f"no 1q matrix for {g.kind}")


def _apply_1q(arr: np.ndarray, nq: int, k: int, U: np.ndarray) -> np.ndarray:
    """Apply a 2x2 unitary to bit k of axis 0; arr is (2^nq,) or (2^nq, batch)."""
    batch = 1 if arr.ndim == 1 else arr.shape[1]
    shaped = np.ascontiguousarray(arr).reshape(2 ** (nq - 1 - k), 2, (2 ** k) * batch)
    out = np.einsum("ab,hbl->hal", U, shaped)
    return out.reshape(arr.shape)


def _cnot_perm(nq: int, c: int, t: int) -> np.ndarray:
    idx = np.arange(2 ** nq)
    sel = (idx >> c) & 1 == 1
    perm = idx.copy()
    perm[sel] ^= 1 << t
    return perm


class SimulationError(RuntimeError):
    pass


class Statevector:
    """Mutable dense state over an explicit qubit register."""

    def __init__(self, register, amplitudes=None, rng=None):
        self.register = tuple(register)
        self.nq = len(self.register)
        if self.nq > MAX_QUBITS:
            raise SimulationError(
                f"{self.nq} qubits exceeds the {MAX_QUBITS}-qubit simulation cap")
        self._index = {q: k for k, q in enumerate(self.register)}
        dim = 2 ** self.nq
        if amplitudes is None:
            self.amps = np.zeros(dim, dtype=complex)
            self.amps[0] = 1.0
        else:
            self.amps = np.asarray(amplitudes, dtype=complex).copy()
            if self.amps.shape != (dim,):
                raise SimulationError("amplitude array has wrong length")
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.outcomes: list[int] = []

    @classmethod
    def for_layout(cls, layout: Layout, amplitudes=None, rng=None,
                   ancillas=()) -> "Statevector":
        return cls(tuple(layout.qubits) + tuple(ancillas), amplitudes, rng)

    def copy(self) -> "Statevector":
        sv = Statevector(self.register, self.amps, self.rng)
        sv.outcomes = list(self.outcomes)
        return sv

    def qubit_index(self, q) -> int:
        try:
            return self._index[q]
        except KeyError:
            raise SimulationError(f"qubit {q} not in register") from None

    def prob_one(self, q) -> float:
        k = self.qubit_index(q)
        idx = np.arange(2 ** self.nq)
        mask = (idx >> k) & 1 == 1
        return float(np.sum(np.abs(self.amps[mask]) ** 2))

    def apply(self, gate: Gate) -> "Statevector":
        if gate.kind == "CNOT":
            c = self.qubit_index(gate.qubits[0])
            t = self.qubit_index(gate.qubits[1])
            self.amps = self.amps[_cnot_perm(self.nq, c, t)]
        elif gate.kind in ("RX", "RZ", "H", "X"):
            k = self.qubit_index(gate.qubits[0])
            self.amps = _apply_1q(self.amps, self.nq, k, gate_matrix_1q(gate))
        elif gate.kind == "MEASZ":
            self._measure(self.qubit_index(gate.qubits[0]))
        elif gate.kind == "INIT0":
            self._init0(self.qubit_index(gate.qubits[0]))
        else:
            raise SimulationError(f"cannot simulate gate kind {gate.kind}")
        return self

    def run(self, circuit: Circuit) -> "Statevector":
        for g in circuit.gates:
            self.apply(g)
        return self

    def _measure(self, k: int):
        idx = np.arange(2 ** self.nq)
        mask1 = (idx >> k) & 1 == 1
        p1 = float(np.sum(np.abs(self.amps[mask1]) ** 2))
        outcome = 1 if self.rng.random() < p1 else 0
        keep = mask1 if outcome == 1 else ~mask1
        self.amps[~keep] = 0.0
        norm = np.linalg.norm(self.amps)
        if norm == 0.0:
            raise SimulationError("measurement collapsed to zero norm")
        self.amps /= norm
        self.outcomes.append(outcome)

    def _init0(self, k: int):
        # Only legal on a qubit already in a computational product state:
        # a no-op for |0>, a flip for |1>, an error for anything entangled.
        p1 = self.prob_one_index(k)
        if p1 < _ATOL:
            return
        if p1 > 1 - _ATOL:
            self.amps = _apply_1q(self.amps, self.nq, k, X_MATRIX)
            return
        raise SimulationError(
            "INIT0 on a qubit that is neither |0> nor |1>; measure it first")

    def prob_one_index(self, k: int) -> float:
        idx = np.arange(2 ** self.nq)
        mask = (idx >> k) & 1 == 1
        return float(np.sum(np.abs(self.amps[mask]) ** 2))

    def expectation(self, pauli) -> float:
        if tuple(pauli.register) != self.register:
            raise SimulationError("Pauli string register mismatch")
        val = np.vdot(self.amps, _apply_pauli(self.amps, self.nq, pauli))
        if abs(val.imag) > 1e-12:
            raise SimulationError("non-real expectation for Hermitian operator")
        return float(val.real)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def _apply_pauli(amps: np.ndarray, nq: int, pauli) -> np.ndarray:
    xmask = 0
    zmask = 0
    n_y = 0
    for k in range(len(pauli.register)):
        if pauli.x[k]:
            xmask |= 1 << k
        if pauli.z[k]:
            zmask |= 1 << k
        if pauli.x[k] and pauli.z[k]:
            n_y += 1
    idx = np.arange(2 ** nq)
    phases = np.where(_popcount(idx & zmask) % 2 == 1, -1.0, 1.0)
    out = np.zeros_like(amps)
    out[idx ^ xmask] = (1j) ** n_y * phases * amps
    return out


def _popcount(arr: np.ndarray) -> np.ndarray:
    out = np.zeros_like(arr)
    a = arr.copy()
    while np.any(a):
        out += a & 1
        a >>= 1
    return out


def expectation(sv: Statevector, pauli) -> float:
    return sv.expectation(pauli)


def fidelity_up_to_phase(a: Statevector | np.ndarray,
                         b: Statevector | np.ndarray) -> float:
    va = a.amps if isinstance(a, Statevector) else np.asarray(a)
    vb = b.amps if isinstance(b, Statevector) else np.asarray(b)
    if va.shape != vb.shape:
        raise ValueError("statevector size mismatch")
    return float(abs(np.vdot(va, vb)) ** 2)


def reduced_data_state(sv: Statevector, layout: Layout) -> np.ndarray:
    """Extract the n-qubit data state, requiring all other qubits to be |0>.

    Tracing out entangled parity qubits would destroy coherence, so any
    amplitude mass outside the all-parity-zero block is an error.
    """
    if tuple(sv.register[:layout.num_qubits]) != tuple(layout.qubits):
        raise SimulationError("statevector register does not start with the layout")
    n = layout.n
    block = sv.amps[: 2 ** n]
    residual = float(np.sum(np.abs(sv.amps[2 ** n:]) ** 2))
    if residual > _ATOL:
        raise SimulationError(
            f"non-data qubits carry population {residual:.3e}; state is not decoded")
    return block / np.linalg.norm(block)


def parity_residual(sv: Statevector, layout: Layout) -> float:
    """Amplitude mass outside the all-parity-zero block."""
    return float(np.sum(np.abs(sv.amps[2 ** layout.n:]) ** 2))


def unitary_of(circuit: Circuit, register) -> np.ndarray:
    """Dense matrix of a unitary-only circuit (<= 10 qubits)."""
    register = tuple(register)
    nq = len(register)
    if nq > 10:
        raise SimulationError("unitary extraction capped at 10 qubits")
    index = {q: k for k, q in enumerate(register)}
    mat = np.eye(2 ** nq, dtype=complex)
    for g in circuit.gates:
        if not g.is_unitary:
            raise SimulationError(f"non-unitary gate {g.kind} in unitary extraction")
        if g.kind == "CNOT":
            perm = _cnot_perm(nq, index[g.qubits[0]], index[g.qubits[1]])
            mat = mat[perm, :]
        else:
            mat = _apply_1q(mat, nq, index[g.qubits[0]], gate_matrix_1q(g))
    return mat


def matrices_equal_up_to_phase(a: np.ndarray, b: np.ndarray,
                               atol: float = 1e-10) -> bool:
    return phase_aligned_deviation(a, b) <= atol


def phase_aligned_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Max elementwise deviation after factoring out one global phase."""
    k = np.argmax(np.abs(b))
    bk = b.flat[k]
    ak = a.flat[k]
    if abs(ak) < 1e-14:
        return float(np.max(np.abs(a - b)))
    phase = bk / ak * abs(ak) / abs(bk)
    return float(np.max(np.abs(a * phase - b)))


# --- reference logical unitaries (independent kron-based construction) -------

def reference_unitary(gate: Gate, n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a logical gate, qubit 0 = LSB."""
    kind = gate.kind
    dim = 2 ** n
    if kind in ("RX", "RZ", "H", "X", "U"):
        (i,) = gate.qubits
        if kind == "RX":
            u = rx_matrix(gate.angles[0])
        elif kind == "RZ":
            u = rz_matrix(gate.angles[0])
        elif kind == "H":
            u = H_MATRIX
        elif kind == "X":
            u = X_MATRIX
        else:
            a, b, g = gate.angles
            u = rz_matrix(a) @ rx_matrix(b) @ rz_matrix(g)
        full = np.array([[1.0]], dtype=complex)
        for k in range(n - 1, -1, -1):
            full = np.kron(full, u if k == int(i) else np.eye(2))
        return full
    if kind in ("CP", "CZ"):
        i, j = (int(q) for q in gate.qubits)
        phi = np.pi if kind == "CZ" else gate.angles[0]
        idx = np.arange(dim)
        both = ((idx >> i) & 1) & ((idx >> j) & 1)
        return np.diag(np.where(both == 1, np.exp(1j * phi), 1.0 + 0j))
    if kind == "CNOT":
        c, t = (int(q) for q in gate.qubits)
        perm = _cnot_perm(n, c, t)
        mat = np.zeros((dim, dim), dtype=complex)
        mat[perm, np.arange(dim)] = 1.0
        return mat
    raise ValueError(f"no reference unitary for {kind}")
