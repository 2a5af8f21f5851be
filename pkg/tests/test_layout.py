import pytest

import lhzkit as lk
from lhzkit import ancilla, build_layout, data, parity, parse_qubit


def test_qubit_counts():
    for n in range(2, 13):
        lay = build_layout(n)
        assert lay.num_qubits == n * (n + 1) // 2
        assert sum(q.is_data for q in lay.qubits) == n
        assert sum(q.is_parity for q in lay.qubits) == n * (n - 1) // 2


def test_constraint_count_and_arity():
    for n in range(2, 13):
        lay = build_layout(n)
        assert len(lay.constraints) == lay.num_qubits - n
        for c in lay.constraints:
            assert len(c.qubits) in (3, 4)


def test_constraint_even_multiplicity():
    # each logical index shows up an even number of times among member labels
    for n in (3, 5, 8):
        lay = build_layout(n)
        for c in lay.constraints:
            for mult in c.logical_index_multiplicities().values():
                assert mult % 2 == 0


def test_coordinates():
    lay = build_layout(5)
    for i in range(5):
        assert lay.coords[data(i)] == (2 * i, 0)
    for i in range(5):
        for j in range(i + 1, 5):
            assert lay.coords[parity(i, j)] == (i + j, j - i)


def test_constraint_members_mutually_local():
    for n in (3, 4, 6):
        lay = build_layout(n)
        for c in lay.constraints:
            xs = [lay.coords[q][0] for q in c.members]
            ys = [lay.coords[q][1] for q in c.members]
            assert max(xs) - min(xs) <= 2
            assert max(ys) - min(ys) <= 2


def test_logical_line_paths():
    for n in (2, 4, 7):
        lay = build_layout(n)
        for i in range(n):
            line = lay.logical_line(i)
            assert len(line.path) == n
            assert line.path[i] == data(i)
            for a, b in zip(line.path, line.path[1:]):
                assert lay.are_neighbors(a, b)
            for q in line.path:
                assert i in q.indices or q == data(i)


def test_lines_cover_all_qubits():
    lay = build_layout(6)
    seen = set()
    for i in range(6):
        seen.update(lay.logical_line(i).path)
    assert seen == set(lay.qubits)


def test_parse_qubit_roundtrip():
    for q in (data(0), data(11), parity(0, 1), parity(3, 10), ancilla(4)):
        assert parse_qubit(q.token) == q
    with pytest.raises(ValueError):
        parse_qubit("q7")
    with pytest.raises(ValueError):
        parse_qubit("p3_1")  # indices must be ordered


def test_rejects_tiny_n():
    with pytest.raises(ValueError):
        build_layout(1)


def test_to_dict_shape():
    lay = build_layout(3)
    d = lay.to_dict()
    assert {q["id"] for q in d["qubits"]} == {q.token for q in lay.qubits}
    assert len(d["constraints"]) == len(lay.constraints)
    assert len(d["lines"]) == 3
