import numpy as np
import pytest

import lhzkit as lk
from lhzkit import Circuit, Gate, SimulationError, Statevector, build_layout, data
from lhzkit.sim import (fidelity_up_to_phase, phase_aligned_deviation,
                        reference_unitary, rx_matrix, rz_matrix, unitary_of)
from conftest import random_state


def test_gate_application_matches_dense_kron(rng):
    # every 1q kind plus CNOT against explicit kron products, 3 qubits
    qubits = tuple(data(k) for k in range(3))
    gates = [lk.rz(qubits[1], 0.37), lk.rx(qubits[0], -1.1),
             lk.xgate(qubits[2]), lk.hgate(qubits[1]),
             lk.cnot(qubits[0], qubits[2]), lk.cnot(qubits[2], qubits[1])]
    psi = random_state(8, rng)
    for g in gates:
        sv = Statevector(qubits, psi.copy())
        sv.apply(g)
        if g.kind == "CNOT":
            full = reference_unitary(Gate("CNOT", tuple(qubits.index(q) for q in g.qubits)), 3)
        else:
            mats = {"RZ": rz_matrix, "RX": rx_matrix}
            if g.kind in mats:
                u = mats[g.kind](g.angles[0])
            elif g.kind == "X":
                u = np.array([[0, 1], [1, 0]], dtype=complex)
            else:
                u = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
            k = qubits.index(g.qubits[0])
            full = np.array([[1.0 + 0j]])
            for m in range(2, -1, -1):
                full = np.kron(full, u if m == k else np.eye(2))
        assert np.max(np.abs(sv.amps - full @ psi)) < 1e-12


def test_init0_semantics():
    q = (data(0), data(1))
    sv = Statevector(q, None)
    sv.apply(lk.xgate(q[0]))
    sv.apply(lk.init0(q[0]))  # |1> is reset
    assert abs(sv.amps[0] - 1) < 1e-12
    sv.apply(lk.hgate(q[0]))
    with pytest.raises(SimulationError):
        sv.apply(lk.init0(q[0]))  # superposed qubit cannot be silently reset


def test_measurement_is_seeded():
    q = (data(0),)
    outcomes = []
    for _ in range(2):
        sv = Statevector(q, None, rng=np.random.default_rng(123))
        sv.apply(lk.hgate(q[0]))
        sv.apply(lk.measure_z(q[0]))
        outcomes.append(sv.outcomes[0])
    assert outcomes[0] == outcomes[1]
    # statistics over seeds are roughly balanced
    hits = 0
    for seed in range(200):
        sv = Statevector(q, None, rng=np.random.default_rng(seed))
        sv.apply(lk.hgate(q[0]))
        sv.apply(lk.measure_z(q[0]))
        hits += sv.outcomes[0]
    assert 60 < hits < 140


def test_expectation_of_pauli(rng):
    lay = build_layout(3)
    sv = Statevector.for_layout(lay)
    psi = random_state(2 ** 3, rng)
    sv.amps[:8] = psi
    sv.run(lk.encode_full(lay).circuit)
    for c in lay.constraints:
        assert abs(sv.expectation(lay.constraint_parity_operator(c)) - 1) < 1e-12
    # flipping one member flips the sign
    sv.apply(lk.xgate(lay.constraints[0].members[0]))
    assert abs(sv.expectation(
        lay.constraint_parity_operator(lay.constraints[0])) + 1) < 1e-12


def test_unitary_of_cap():
    qubits = tuple(data(k) for k in range(11))
    c = Circuit("physical", 11, (lk.xgate(qubits[0]),))
    with pytest.raises(SimulationError):
        unitary_of(c, qubits)


def test_qubit_count_cap():
    with pytest.raises(SimulationError):
        Statevector(tuple(data(k) for k in range(25)), None)


def test_fidelity_ignores_global_phase(rng):
    psi = random_state(16, rng)
    assert abs(fidelity_up_to_phase(psi, np.exp(1j * 0.8) * psi) - 1) < 1e-12


def test_phase_aligned_deviation():
    u = np.diag([1, 1j]).astype(complex)
    assert phase_aligned_deviation(u, np.exp(1j * 0.3) * u) < 1e-12
    assert phase_aligned_deviation(u, np.eye(2, dtype=complex)) > 0.5
