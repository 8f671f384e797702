"""Kernel dispatch: compiled extension when available, numpy otherwise.

The choice is made once at import.  Set VQEXC_PURE_PYTHON=1 to force the
numpy fallback (used by the benchmark and the kernel-equivalence tests).
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("VQEXC_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def run_circuit(n_qubits, codes, qa, qb, params):
    return _impl.run_circuit(
        n_qubits,
        np.ascontiguousarray(codes, dtype=np.int32),
        np.ascontiguousarray(qa, dtype=np.int32),
        np.ascontiguousarray(qb, dtype=np.int32),
        np.ascontiguousarray(params, dtype=np.float64),
    )


def born_probabilities(state):
    return _impl.born_probabilities(np.ascontiguousarray(state, dtype=np.complex128))


def pauli_expectation(state, x_mask, z_mask):
    return _impl.pauli_expectation(
        np.ascontiguousarray(state, dtype=np.complex128), x_mask, z_mask
    )
