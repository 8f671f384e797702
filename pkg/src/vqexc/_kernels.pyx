# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels.

Same contract as the numpy fallback ``vqexc._kernels_py``; see that module
for conventions and gate codes.  These loops dominate the runtime of
shot-based experiment sweeps (hundreds of thousands of small-circuit
executions), where per-call numpy overhead is the bottleneck.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()


cdef inline int _popcount(unsigned long long v) nogil:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


def run_circuit(int n_qubits, int[::1] codes, int[::1] qa, int[::1] qb,
                double[::1] params):
    """Apply the encoded gate list to |0...0> and return the statevector."""
    cdef Py_ssize_t dim = 1 << n_qubits
    out = np.zeros(dim, dtype=np.complex128)
    cdef double complex[::1] state = out
    state[0] = 1.0

    cdef Py_ssize_t k, i, j, i1
    cdef Py_ssize_t mask_a, mask_b
    cdef double c, s
    cdef double complex a0, a1
    cdef double sqrt1_2 = 1.0 / sqrt(2.0)
    cdef int code

    for k in range(codes.shape[0]):
        code = codes[k]
        mask_a = 1 << qa[k]
        if code == 0:
            c = cos(params[k] / 2.0)
            s = sin(params[k] / 2.0)
            for i in range(dim):
                if not (i & mask_a):
                    i1 = i | mask_a
                    a0 = state[i]
                    a1 = state[i1]
                    state[i] = c * a0 - s * a1
                    state[i1] = s * a0 + c * a1
        elif code == 1:
            mask_b = 1 << qb[k]
            for i in range(dim):
                if (i & mask_a) and not (i & mask_b):
                    i1 = i | mask_b
                    a0 = state[i]
                    state[i] = state[i1]
                    state[i1] = a0
        elif code == 2:
            mask_b = 1 << qb[k]
            for i in range(dim):
                if (i & mask_a) and (i & mask_b):
                    state[i] = -state[i]
        elif code == 3:
            for i in range(dim):
                if not (i & mask_a):
                    i1 = i | mask_a
                    a0 = state[i]
                    a1 = state[i1]
                    state[i] = sqrt1_2 * (a0 + a1)
                    state[i1] = sqrt1_2 * (a0 - a1)
        elif code == 4:
            for i in range(dim):
                if i & mask_a:
                    state[i] = state[i] * (-1j)
        elif code == 5:
            for i in range(dim):
                if i & mask_a:
                    state[i] = state[i] * 1j
        else:
            raise ValueError(f"unknown gate code {code}")
    return out


def born_probabilities(double complex[::1] state):
    """|amplitude|^2 for every basis state."""
    cdef Py_ssize_t dim = state.shape[0]
    out = np.empty(dim, dtype=np.float64)
    cdef double[::1] p = out
    cdef Py_ssize_t i
    for i in range(dim):
        p[i] = state[i].real * state[i].real + state[i].imag * state[i].imag
    return out


def pauli_expectation(double complex[::1] state, unsigned long long x_mask,
                      unsigned long long z_mask):
    """<psi|P|psi> for the Hermitian Pauli string with the given bit masks."""
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t i
    cdef double complex acc = 0.0
    cdef double complex term
    cdef int sign
    for i in range(dim):
        sign = 1 - 2 * (_popcount(i & z_mask) & 1)
        term = state[i ^ x_mask].conjugate() * state[i]
        acc = acc + sign * term
    cdef int y_count = _popcount(x_mask & z_mask) & 3
    if y_count == 0:
        return acc.real
    elif y_count == 1:
        return -acc.imag
    elif y_count == 2:
        return -acc.real
    else:
        return acc.imag
