"""Pure-numpy statevector kernels.

Fallback implementation with the same signatures as the compiled extension
``vqexc._kernels``.  Which one is active is decided once, at import of
:mod:`vqexc.kernels`.

Conventions (package-wide): amplitude index is little-endian in qubit 0,
i.e. bit k of the index is the state of qubit k.

Gate codes for ``run_circuit``:
    0 = ry(theta) on qubit qa
    1 = cx with control qa, target qb
    2 = cz on qa, qb
    3 = h on qa
    4 = sdg on qa
    5 = s on qa
"""

import numpy as np

_SQRT1_2 = 1.0 / np.sqrt(2.0)


def _bit_split(n_qubits, qubit):
    """Index arrays (i0, i1) of basis states with the qubit at 0 / 1."""
    idx = np.arange(1 << n_qubits)
    mask = (idx >> qubit) & 1
    return idx[mask == 0], idx[mask == 1]


def run_circuit(n_qubits, codes, qa, qb, params):
    """Apply the encoded gate list to |0...0> and return the statevector."""
    state = np.zeros(1 << n_qubits, dtype=np.complex128)
    state[0] = 1.0
    for k in range(len(codes)):
        code = codes[k]
        if code == 0:
            i0, i1 = _bit_split(n_qubits, qa[k])
            c, s = np.cos(params[k] / 2.0), np.sin(params[k] / 2.0)
            a0 = state[i0].copy()
            state[i0] = c * a0 - s * state[i1]
            state[i1] = s * a0 + c * state[i1]
        elif code == 1:
            idx = np.arange(1 << n_qubits)
            sel = ((idx >> qa[k]) & 1) == 1
            new = state.copy()
            new[sel] = state[(idx ^ (1 << qb[k]))[sel]]
            state = new
        elif code == 2:
            idx = np.arange(1 << n_qubits)
            sel = (((idx >> qa[k]) & 1) & ((idx >> qb[k]) & 1)) == 1
            state[sel] *= -1.0
        elif code == 3:
            i0, i1 = _bit_split(n_qubits, qa[k])
            a0 = state[i0].copy()
            state[i0] = _SQRT1_2 * (a0 + state[i1])
            state[i1] = _SQRT1_2 * (a0 - state[i1])
        elif code == 4:
            _, i1 = _bit_split(n_qubits, qa[k])
            state[i1] *= -1j
        elif code == 5:
            _, i1 = _bit_split(n_qubits, qa[k])
            state[i1] *= 1j
        else:
            raise ValueError(f"unknown gate code {code}")
    return state


def born_probabilities(state):
    """|amplitude|^2 for every basis state."""
    return np.abs(state) ** 2


def pauli_expectation(state, x_mask, z_mask):
    """<psi|P|psi> for the Hermitian Pauli string with the given bit masks.

    P = i^{|x & z|} X^x Z^z, so the result is real; the (cancelling)
    imaginary part is discarded.
    """
    n = len(state)
    idx = np.arange(n)
    signs = 1 - 2 * (_popcount_array(idx & z_mask) & 1)
    phase = 1j ** int(bin(x_mask & z_mask).count("1"))
    val = phase * np.sum(np.conj(state[idx ^ x_mask]) * signs * state)
    return float(val.real)


def _popcount_array(a):
    a = a.astype(np.uint64)
    count = np.zeros_like(a)
    while a.any():
        count += a & 1
        a >>= np.uint64(1)
    return count.astype(np.int64)
