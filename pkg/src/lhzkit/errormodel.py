"""Bit-flip logical-error model for a cycle of repeated syndrome measurements.

Two failure scenarios over a cycle of n syndrome rounds:
  (a) more than (n-1)/2 physical bit-flips land between two syndrome rounds;
  (b) more than half of the n syndrome repetitions on some constraint are faulty.

Independent symmetric flip events compose by odd parity,
q = (1 - prod(1 - 2 p_k)) / 2.  Every qubit is treated as sitting in 4
constraints (hence 4 CNOT exposures per round), which is exact in the
large-n limit and an upper bound otherwise.  Binomial tails come from
scipy's regularized incomplete beta (numerically stable for tiny p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .layout import Layout, LogicalLine
from .compiler import LoweringOptions, compile_rx


@dataclass(frozen=True)
class ErrorParams:
    p1: float  # per-qubit flip probability before each syndrome round
    p2: float  # per-qubit flip probability per CNOT involvement
    pI: float  # faulty ancilla initialization
    pM: float  # faulty ancilla measurement
    n: int     # logical qubits; also the code distance

    def __post_init__(self):
        for name in ("p1", "p2", "pI", "pM"):
            p = getattr(self, name)
            if not 0.0 <= p <= 0.5:
                raise ValueError(f"{name}={p} outside [0, 0.5]")
        if self.n < 2:
            raise ValueError("n must be >= 2")

    @classmethod
    def uniform(cls, p_phys: float, n: int) -> "ErrorParams":
        return cls(p_phys, p_phys, p_phys, p_phys, n)


@dataclass
class ErrorReport:
    p_round_flip: float
    p_a: float
    p_b: float
    p_L: float
    method: str  # "closed_form" | "monte_carlo"
    trials: int | None = None
    seed: int | None = None
    std_err: float | None = None


def _odd_parity(probs) -> float:
    prod = 1.0
    for p in probs:
        prod *= 1.0 - 2.0 * p
    return 0.5 * (1.0 - prod)


def round_flip_probability(params: ErrorParams) -> float:
    """Odd-parity combination of one p1 event and four CNOT exposures."""
    return _odd_parity([params.p1] + [params.p2] * 4)


def syndrome_fault_probability(params: ErrorParams) -> float:
    """Probability the recorded syndrome bit is flipped: init, measure, 4 CNOTs."""
    return _odd_parity([params.pI, params.pM] + [params.p2] * 4)


def _binom_tail(k: int, m: int, p: float) -> float:
    """P(X >= k) for X ~ Binomial(m, p)."""
    if k <= 0:
        return 1.0
    if k > m:
        return 0.0
    return float(stats.binom.sf(k - 1, m, p))


def _over_repeats(p_single: float, reps: int) -> float:
    """1 - (1 - p)^reps without cancellation."""
    if p_single <= 0.0:
        return 0.0
    return -math.expm1(reps * math.log1p(-p_single))


def data_flip_threshold(n: int) -> int:
    """Smallest uncorrectable flip count: floor((n-1)/2) + 1."""
    return (n - 1) // 2 + 1


def faulty_majority_threshold(n: int) -> int:
    """Faulty repetitions defeating the majority vote; an exact tie fails too."""
    return math.ceil(n / 2)


def scenario_a_probability(params: ErrorParams) -> float:
    """Too many flips between syndrome rounds, over a cycle of n rounds."""
    q = round_flip_probability(params)
    n_qubits = params.n * (params.n + 1) // 2
    p_round = _binom_tail(data_flip_threshold(params.n), n_qubits, q)
    return _over_repeats(p_round, params.n)


def scenario_b_probability(params: ErrorParams) -> float:
    """Majority-corrupted syndrome record on at least one constraint."""
    s = syndrome_fault_probability(params)
    p_c = _binom_tail(faulty_majority_threshold(params.n), params.n, s)
    n_constraints = params.n * (params.n - 1) // 2
    return _over_repeats(p_c, n_constraints)


def logical_error_probability(params: ErrorParams) -> ErrorReport:
    """Closed-form union of scenarios (a) and (b), assumed independent."""
    p_a = scenario_a_probability(params)
    p_b = scenario_b_probability(params)
    p_l = 1.0 - (1.0 - p_a) * (1.0 - p_b)
    return ErrorReport(round_flip_probability(params), p_a, p_b, p_l,
                       "closed_form")


def monte_carlo_logical_error(params: ErrorParams, trials: int,
                              seed: int = 0) -> ErrorReport:
    """Direct simulation of the per-round flip and per-constraint vote model."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    n = params.n
    n_qubits = n * (n + 1) // 2
    n_constraints = n * (n - 1) // 2
    q = round_flip_probability(params)
    s = syndrome_fault_probability(params)

    flips = rng.random((trials, n, n_qubits)) < q
    a_fail = (flips.sum(axis=2) >= data_flip_threshold(n)).any(axis=1)
    faults = rng.random((trials, n_constraints, n)) < s
    b_fail = (faults.sum(axis=2) >= faulty_majority_threshold(n)).any(axis=1)

    p_a = float(a_fail.mean())
    p_b = float(b_fail.mean())
    p_l = float((a_fail | b_fail).mean())
    se = math.sqrt(max(p_l * (1.0 - p_l), 1.0 / trials)) / math.sqrt(trials)
    return ErrorReport(q, p_a, p_b, p_l, "monte_carlo", trials, seed, se)


SWEEP_HEADER = "n,p_phys,p_a,p_b,p_L"


def sweep(n_values, p_phys_values, mc_trials: int | None = None,
          seed: int = 0) -> list[dict]:
    """Grid evaluation with p1 = p2 = pI = pM = p_phys; rows for CSV export."""
    rows = []
    for n in n_values:
        for p in p_phys_values:
            params = ErrorParams.uniform(p, n)
            rep = logical_error_probability(params)
            row = {"n": n, "p_phys": p, "p_a": rep.p_a, "p_b": rep.p_b,
                   "p_L": rep.p_L}
            if mc_trials:
                mc = monte_carlo_logical_error(params, mc_trials, seed)
                row.update({"p_L_mc": mc.p_L, "std_err": mc.std_err})
            rows.append(row)
    return rows


def sweep_csv(rows) -> str:
    """Render sweep rows; header is exactly `n,p_phys,p_a,p_b,p_L` (+MC cols)."""
    has_mc = rows and "p_L_mc" in rows[0]
    header = SWEEP_HEADER + (",p_L_mc,std_err" if has_mc else "")
    lines = [header]
    for r in rows:
        vals = [str(r["n"])] + [f"{r[k]:.12e}" for k in ("p_phys", "p_a", "p_b", "p_L")]
        if has_mc:
            vals += [f"{r['p_L_mc']:.12e}", f"{r['std_err']:.12e}"]
        lines.append(",".join(vals))
    return "\n".join(lines) + "\n"


# --- correlated-error locality of the Rx chain -------------------------------

@dataclass(frozen=True)
class FaultRecord:
    position: int        # gate index the X fault is injected before
    qubit: object        # injection site
    pattern: frozenset   # final propagated flip pattern
    center_hit: bool


def chain_error_locality_check(layout: Layout, line: LogicalLine) -> list[FaultRecord]:
    """Propagate a single X fault through an Rx lowering of `line`.

    For every gate boundary and every line qubit, conjugate the fault through
    the remaining CNOTs: the flip pattern grows outward along the chain and
    reaches the center qubit only when injected there.
    """
    cg = compile_rx(layout, line.logical_index, 0.7,
                    LoweringOptions(rotation_site="center"))
    gates = cg.physical.gates
    center = line.path[len(line.path) // 2]
    records = []
    for pos in range(len(gates) + 1):
        for q in line.path:
            pattern = {q}
            for g in gates[pos:]:
                if g.kind == "CNOT" and g.qubits[0] in pattern:
                    pattern ^= {g.qubits[1]}
            records.append(FaultRecord(pos, q, frozenset(pattern),
                                       center in pattern))
    return records
