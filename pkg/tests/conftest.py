import numpy as np
import pytest

import lhzkit as lk


def random_state(dim, rng):
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def run_decoded(layout, physical, psi):
    """Encode psi, run the physical circuit, decode; return the data-block state.

    Raises if any amplitude leaks outside the code space after decoding.
    """
    n = layout.n
    sv = lk.Statevector.for_layout(layout)
    sv.amps[: 2 ** n] = psi
    sv.run(lk.encode_full(layout).circuit)
    sv.run(physical)
    sv.run(lk.decode_full(layout).circuit)
    from lhzkit.sim import parity_residual, reduced_data_state
    assert parity_residual(sv, layout) < 1e-9
    return reduced_data_state(sv, layout)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
