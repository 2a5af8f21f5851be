"""Pauli strings over an ordered qubit register, with symplectic commutation checks.

Commutation is decided on the (X|Z) bit representation, so operator-level
identities can be checked at sizes far beyond what a statevector can hold.
"""
from __future__ import annotations

import numpy as np

_VALID = {"X", "Y", "Z"}


class PauliString:
    """A tensor product of single-qubit Paulis (identity elsewhere)."""

    def __init__(self, register, labels: dict):
        self.register = tuple(register)
        self._index = {q: k for k, q in enumerate(self.register)}
        nq = len(self.register)
        self.x = np.zeros(nq, dtype=bool)
        self.z = np.zeros(nq, dtype=bool)
        if not labels:
            raise ValueError("Pauli string must have non-empty support")
        for q, p in labels.items():
            if p not in _VALID:
                raise ValueError(f"invalid Pauli label {p!r}")
            k = self._index[q]
            if p in ("X", "Y"):
                self.x[k] = True
            if p in ("Z", "Y"):
                self.z[k] = True

    @property
    def support(self) -> tuple:
        return tuple(
            q for k, q in enumerate(self.register) if self.x[k] or self.z[k]
        )

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def label_on(self, q) -> str:
        k = self._index[q]
        if self.x[k] and self.z[k]:
            return "Y"
        if self.x[k]:
            return "X"
        if self.z[k]:
            return "Z"
        return "I"

    def commutes_with(self, other: "PauliString") -> bool:
        if self.register != other.register:
            raise ValueError("Pauli strings live on different registers")
        sym = np.count_nonzero(self.x & other.z) + np.count_nonzero(self.z & other.x)
        return sym % 2 == 0

    def anticommutes_with(self, other: "PauliString") -> bool:
        return not self.commutes_with(other)

    def __repr__(self) -> str:
        terms = [f"{self.label_on(q)}({q})" for q in self.support]
        return " ".join(terms)
