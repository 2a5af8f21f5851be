"""Compiler and verification toolkit for the extended LHZ parity architecture."""

__version__ = "0.1.0"

from .layout import Layout, Qubit, build_layout, data, parity, ancilla, parse_qubit
from .pauli import PauliString
from .circuit import (Circuit, Gate, ResourceCount, Schedule, cnot, rx, rz,
                      xgate, hgate, init0, measure_z, schedule, count_resources,
                      validate_locality, invert, circuit_to_json,
                      circuit_from_json, circuit_to_dict, circuit_from_dict,
                      circuit_to_text, circuit_from_text, CircuitParseError)
from .codec import (CodecPlan, encode_full, decode_full, encode_one_direct,
                    encode_one_from_constraint, decode_target, ancilla_for,
                    ancilla_coord, syndrome_circuit)
from .compiler import (LoweringOptions, CompiledGate, compile_rz, compile_rx,
                       compile_x, compile_cp, compile_u, compile_h,
                       compile_cnot, compile_parallel_unitaries, peephole,
                       compile_circuit, compile_gate, table1_rows)
from .sim import (Statevector, SimulationError, expectation,
                  fidelity_up_to_phase, reduced_data_state, unitary_of,
                  reference_unitary)
from .errormodel import (ErrorParams, ErrorReport, round_flip_probability,
                         syndrome_fault_probability, scenario_a_probability,
                         scenario_b_probability, logical_error_probability,
                         monte_carlo_logical_error, sweep,
                         chain_error_locality_check)
