import json

import pytest

import lhzkit as lk
from lhzkit.cli import main


def run_cli(args):
    try:
        return main(args)
    except SystemExit as exc:  # argparse exits on usage errors
        return exc.code


def test_layout_emits_valid_json(tmp_path):
    out = tmp_path / "layout.json"
    assert run_cli(["layout", "--n", "4", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["layout"]["qubits"]) == 10
    assert doc["manifest"]["subcommand"] == "layout"


def test_layout_deterministic(tmp_path):
    a = tmp_path / "a.json"
    run_cli(["layout", "--n", "5", "--output", str(a)])
    first = a.read_bytes()
    run_cli(["layout", "--n", "5", "--output", str(a)])
    assert a.read_bytes() == first


def test_encode_text_and_json(tmp_path):
    txt = tmp_path / "enc.txt"
    assert run_cli(["encode", "--n", "4", "--format", "text",
                    "--output", str(txt)]) == 0
    body = [ln for ln in txt.read_text().splitlines()
            if ln and not ln.startswith("#")]
    assert len(body) == 12 and all(ln.startswith("CNOT") for ln in body)

    js = tmp_path / "enc.json"
    run_cli(["encode", "--n", "4", "--output", str(js)])
    doc = json.loads(js.read_text())
    circ = lk.circuit_from_dict(doc)  # manifest key rides along, ignored
    assert len(circ) == 12


def test_compile_and_verify(tmp_path):
    logical = tmp_path / "logical.json"
    logical.write_text(json.dumps({
        "space": "logical", "n": 3,
        "gates": [{"kind": "H", "operands": [0]},
                  {"kind": "CNOT", "operands": [0, 2]},
                  {"kind": "RZ", "operands": [1], "angle": 0.5}]}))
    phys = tmp_path / "phys.json"
    assert run_cli(["compile", "--input", str(logical), "--n", "3",
                    "--peephole", "--output", str(phys)]) == 0
    doc = json.loads(phys.read_text())
    circ = lk.circuit_from_dict(doc)
    assert circ.space == "physical"
    assert run_cli(["verify", "--input", str(logical), "--n", "3",
                    "--trials", "3"]) == 0


def test_simulate_rejects_logical_circuit(tmp_path):
    logical = tmp_path / "logical.json"
    logical.write_text(json.dumps({
        "space": "logical", "n": 3,
        "gates": [{"kind": "H", "operands": [0]}]}))
    assert run_cli(["simulate", "--circuit", str(logical), "--n", "3"]) == 2


def test_simulate_outcomes_seeded(tmp_path, capsys):
    circ = tmp_path / "c.json"
    lay = lk.build_layout(2)
    c = lk.Circuit("physical", 2, (lk.hgate(lk.data(0)),
                                   lk.measure_z(lk.data(0))), layout=lay)
    circ.write_text(lk.circuit_to_json(c))
    outs = []
    for _ in range(2):
        assert run_cli(["simulate", "--circuit", str(circ), "--n", "2",
                        "--seed", "11", "--outcomes-only"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_errors_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run_cli(["errors", "--n-list", "3,5",
                    "--pphys-grid", "1e-4:1e-2:log3",
                    "--output", str(out)]) == 0
    lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    assert lines[0] == "n,p_phys,p_a,p_b,p_L"
    assert len(lines) == 7


def test_missing_file_is_usage_error():
    assert run_cli(["compile", "--input", "/does/not/exist", "--n", "3"]) == 2


def test_bad_flags_are_usage_errors():
    assert run_cli(["layout"]) == 2
    assert run_cli(["frobnicate"]) == 2
