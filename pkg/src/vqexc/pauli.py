"""Pauli-string algebra and qubit-operator arithmetic.

Every Hamiltonian, observable and commutator in the toolkit is a
:class:`QubitOperator`: a real- or complex-weighted sum of Pauli strings.

Conventions (stated once, inherited everywhere):

* Letter position k of a Pauli string acts on qubit k, matching the
  bitstring convention (character position 0 = qubit 0).
* Statevector amplitude index is little-endian in qubit 0, so
  ``to_matrix`` places qubit 0 on the least significant index bit.
* A Pauli string is stored as two bitmasks (x-bits, z-bits); the Hermitian
  operator is ``i^{|x & z|} X^x Z^z``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

PRUNE_TOL = 1e-14
MATRIX_QUBIT_CAP = 10

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}


class DimensionError(ValueError):
    """Operands act on different qubit counts."""


class ContractError(ValueError):
    """An operation's precondition was violated."""


class ResourceError(RuntimeError):
    """Requested dense object exceeds the configured qubit cap."""


@dataclass(frozen=True, order=True)
class PauliString:
    """An n-qubit tensor product of I/X/Y/Z, without a coefficient."""

    n_qubits: int
    x_bits: int
    z_bits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        top = 1 << self.n_qubits
        if not (0 <= self.x_bits < top and 0 <= self.z_bits < top):
            raise ValueError("bit masks exceed qubit count")

    @classmethod
    def from_letters(cls, letters: str) -> "PauliString":
        x = z = 0
        for q, letter in enumerate(letters):
            try:
                xb, zb = _LETTER_BITS[letter]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {letter!r}") from None
            x |= xb << q
            z |= zb << q
        return cls(len(letters), x, z)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0)

    @property
    def letters(self) -> str:
        return "".join(
            _BITS_LETTER[(self.x_bits >> q) & 1, (self.z_bits >> q) & 1]
            for q in range(self.n_qubits)
        )

    @property
    def weight(self) -> int:
        return bin(self.x_bits | self.z_bits).count("1")

    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    def __repr__(self):
        return f"PauliString({self.letters!r})"


def multiply(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Product of two Pauli strings as (phase, string), phase in {1,i,-1,-i}.

    matrix(a) @ matrix(b) == phase * matrix(product).
    """
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"width mismatch: {a.n_qubits} vs {b.n_qubits}")
    x = a.x_bits ^ b.x_bits
    z = a.z_bits ^ b.z_bits
    # i^{|xa&za| + |xb&zb| - |x&z|} * (-1)^{za . xb}
    exponent = (
        bin(a.x_bits & a.z_bits).count("1")
        + bin(b.x_bits & b.z_bits).count("1")
        - bin(x & z).count("1")
        + 2 * bin(a.z_bits & b.x_bits).count("1")
    ) % 4
    phase = (1, 1j, -1, -1j)[exponent]
    return phase, PauliString(a.n_qubits, x, z)


def _string_matrix(p: PauliString) -> np.ndarray:
    m = np.eye(1, dtype=complex)
    letters = p.letters
    for q in range(p.n_qubits - 1, -1, -1):
        m = np.kron(m, _SINGLE[letters[q]])
    return m


class QubitOperator:
    """Weighted sum of Pauli strings on a fixed number of qubits.

    Terms are kept in a dict keyed by :class:`PauliString`; coefficients
    below ``PRUNE_TOL`` are dropped after every arithmetic operation.
    Instances are treated as immutable: all operations return new objects.
    """

    def __init__(self, n_qubits: int, terms: dict[PauliString, complex] | None = None):
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        self.n_qubits = n_qubits
        self._terms: dict[PauliString, complex] = {}
        if terms:
            for string, coeff in terms.items():
                if string.n_qubits != n_qubits:
                    raise DimensionError("term width differs from operator width")
                if abs(coeff) > PRUNE_TOL:
                    self._terms[string] = complex(coeff)

    @classmethod
    def from_terms(cls, terms: dict[str, complex], n_qubits: int | None = None):
        """Operator from a {letters: coefficient} mapping."""
        if not terms and n_qubits is None:
            raise ValueError("empty operator needs an explicit width")
        widths = {len(s) for s in terms}
        if n_qubits is None:
            (n_qubits,) = widths
        elif widths - {n_qubits}:
            raise DimensionError("inconsistent term widths")
        return cls(n_qubits, {PauliString.from_letters(s): c for s, c in terms.items()})

    @classmethod
    def zero(cls, n_qubits: int) -> "QubitOperator":
        return cls(n_qubits)

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "QubitOperator":
        return cls(n_qubits, {PauliString.identity(n_qubits): coeff})

    @property
    def terms(self) -> dict[PauliString, complex]:
        return dict(self._terms)

    def items_sorted(self):
        """Terms in canonical (lexicographic-letters) order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].letters)

    def coefficient(self, letters: str) -> complex:
        return self._terms.get(PauliString.from_letters(letters), 0.0)

    def __len__(self):
        return len(self._terms)

    def one_norm(self) -> float:
        return float(sum(abs(c) for c in self._terms.values()))

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def _check_width(self, other: "QubitOperator"):
        if self.n_qubits != other.n_qubits:
            raise DimensionError(
                f"width mismatch: {self.n_qubits} vs {other.n_qubits}"
            )

    def __add__(self, other: "QubitOperator") -> "QubitOperator":
        self._check_width(other)
        terms = dict(self._terms)
        for string, coeff in other._terms.items():
            terms[string] = terms.get(string, 0.0) + coeff
        return QubitOperator(self.n_qubits, terms)

    def __sub__(self, other: "QubitOperator") -> "QubitOperator":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "QubitOperator":
        return QubitOperator(
            self.n_qubits, {s: scalar * c for s, c in self._terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, QubitOperator):
            return self.__rmul__(other)
        self._check_width(other)
        out: dict[PauliString, complex] = {}
        for sa, ca in self._terms.items():
            for sb, cb in other._terms.items():
                phase, prod = multiply(sa, sb)
                out[prod] = out.get(prod, 0.0) + phase * ca * cb
        return QubitOperator(self.n_qubits, out)

    def adjoint(self) -> "QubitOperator":
        return QubitOperator(
            self.n_qubits, {s: c.conjugate() for s, c in self._terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, QubitOperator):
            return NotImplemented
        if self.n_qubits != other.n_qubits:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(k, 0.0) - other._terms.get(k, 0.0)) <= 1e-12
            for k in keys
        )

    def __repr__(self):
        body = " + ".join(f"{c:.6g}*{s.letters}" for s, c in self.items_sorted())
        return f"QubitOperator({body or '0'})"


def commutator(a: QubitOperator, b: QubitOperator) -> QubitOperator:
    """AB - BA, simplified."""
    return a * b - b * a


def to_matrix(op: QubitOperator, cap: int = MATRIX_QUBIT_CAP) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the operator (qubit 0 = least significant bit)."""
    if op.n_qubits > cap:
        raise ResourceError(f"{op.n_qubits} qubits exceeds dense cap {cap}")
    dim = 1 << op.n_qubits
    m = np.zeros((dim, dim), dtype=complex)
    for string, coeff in op._terms.items():
        m += coeff * _string_matrix(string)
    return m


def expectation(state, op: QubitOperator) -> float:
    """<psi|op|psi> for a Hermitian operator over a normalized state."""
    amps = np.asarray(getattr(state, "amplitudes", state), dtype=complex)
    if not op.is_hermitian():
        raise ContractError("expectation requires a Hermitian operator")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-8:
        raise ContractError(f"state norm {norm} is not 1")
    value = 0.0
    for string, coeff in op._terms.items():
        value += coeff.real * kernels.pauli_expectation(
            amps, string.x_bits, string.z_bits
        )
    return float(value)


def expectation_complex(state, op: QubitOperator) -> complex:
    """<psi|op|psi> without the Hermiticity contract (complex result)."""
    amps = np.asarray(getattr(state, "amplitudes", state), dtype=complex)
    value = 0.0 + 0.0j
    for string, coeff in op._terms.items():
        value += coeff * kernels.pauli_expectation(amps, string.x_bits, string.z_bits)
    return complex(value)


def to_text(op: QubitOperator) -> str:
    """One term per line, `coefficient<TAB>letters`, 12 significant digits.

    Only Hermitian operators (real canonical coefficients) serialize.
    """
    lines = []
    for string, coeff in op.items_sorted():
        if abs(coeff.imag) > 1e-12:
            raise ContractError("text format stores Hermitian operators only")
        lines.append(f"{coeff.real:.12g}\t{string.letters}")
    if not lines:
        lines.append(f"{0.0:.12g}\t{PauliString.identity(op.n_qubits).letters}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> QubitOperator:
    terms: dict[str, complex] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            coeff_str, letters = line.split()
        except ValueError:
            raise ValueError(f"line {lineno}: expected `coefficient letters`") from None
        terms[letters] = terms.get(letters, 0.0) + float(coeff_str)
    if not terms:
        raise ValueError("no operator terms found")
    return QubitOperator.from_terms(terms)
