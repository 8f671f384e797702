"""Simulation backends: exact statevectors, density matrices, shot sampling.

Bit-ordering convention (all modules inherit it): bitstring character
position 0 = qubit 0; amplitude index little-endian in qubit 0.

Noise is emulated with exactly two knobs: per-qubit readout confusion
matrices and a global depolarizing probability applied once per circuit
execution.  Gate-level channels are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels, pauli
from .pauli import ContractError, PauliString, QubitOperator

MAX_SHOTS = 8192

_GATE_CODES = {"ry": 0, "cx": 1, "cz": 2, "h": 3, "sdg": 4, "s": 5}
_PARAMETRIC = {"ry"}
_TWO_QUBIT = {"cx", "cz"}


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    param: float = 0.0


class Circuit:
    """Ordered gate list over {ry, cx, cz, h, sdg, s} on n qubits."""

    def __init__(self, n_qubits: int):
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        self.n_qubits = n_qubits
        self.gates: list[Gate] = []

    def _check(self, *qubits: int):
        for q in qubits:
            if not (0 <= q < self.n_qubits):
                raise ValueError(f"qubit {q} out of range")

    def ry(self, theta: float, qubit: int) -> "Circuit":
        if not np.isfinite(theta):
            raise ValueError("rotation angle must be finite")
        self._check(qubit)
        self.gates.append(Gate("ry", (qubit,), float(theta)))
        return self

    def cx(self, control: int, target: int) -> "Circuit":
        self._check(control, target)
        if control == target:
            raise ValueError("control equals target")
        self.gates.append(Gate("cx", (control, target)))
        return self

    def cz(self, a: int, b: int) -> "Circuit":
        self._check(a, b)
        if a == b:
            raise ValueError("cz qubits must differ")
        self.gates.append(Gate("cz", (a, b)))
        return self

    def h(self, qubit: int) -> "Circuit":
        self._check(qubit)
        self.gates.append(Gate("h", (qubit,)))
        return self

    def sdg(self, qubit: int) -> "Circuit":
        self._check(qubit)
        self.gates.append(Gate("sdg", (qubit,)))
        return self

    def s(self, qubit: int) -> "Circuit":
        self._check(qubit)
        self.gates.append(Gate("s", (qubit,)))
        return self

    def extend(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ValueError("width mismatch")
        self.gates.extend(other.gates)
        return self

    def inverse(self) -> "Circuit":
        inv = Circuit(self.n_qubits)
        inverses = {"ry": "ry", "cx": "cx", "cz": "cz", "h": "h", "sdg": "s", "s": "sdg"}
        for gate in reversed(self.gates):
            name = inverses[gate.name]
            param = -gate.param if gate.name == "ry" else 0.0
            inv.gates.append(Gate(name, gate.qubits, param))
        return inv

    def _encoded(self):
        k = len(self.gates)
        codes = np.empty(k, dtype=np.int32)
        qa = np.zeros(k, dtype=np.int32)
        qb = np.zeros(k, dtype=np.int32)
        params = np.zeros(k, dtype=np.float64)
        for i, g in enumerate(self.gates):
            codes[i] = _GATE_CODES[g.name]
            qa[i] = g.qubits[0]
            if len(g.qubits) > 1:
                qb[i] = g.qubits[1]
            params[i] = g.param
        return codes, qa, qb, params

    def __len__(self):
        return len(self.gates)


class Statevector:
    """Normalized pure state of 2^n complex amplitudes."""

    def __init__(self, amplitudes):
        amps = np.asarray(amplitudes, dtype=complex)
        n = int(np.log2(len(amps)))
        if 1 << n != len(amps):
            raise ValueError("length must be a power of two")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state norm {norm} is not 1")
        self.amplitudes = amps
        self.n_qubits = n

    def probabilities(self) -> np.ndarray:
        return kernels.born_probabilities(self.amplitudes)

    def overlap_squared(self, other: "Statevector") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)

    @classmethod
    def basis_state(cls, n_qubits: int, index: int) -> "Statevector":
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(amps)


class DensityMatrix:
    """Trace-one Hermitian 2^n x 2^n matrix; small negative eigenvalues
    (above -1e-8) from finite sampling are tolerated."""

    def __init__(self, rho, check: bool = True):
        rho = np.asarray(rho, dtype=complex)
        n = int(np.log2(rho.shape[0]))
        if rho.shape != (1 << n, 1 << n):
            raise ValueError("density matrix must be square with power-of-two size")
        if check:
            if abs(np.trace(rho).real - 1.0) > 1e-10 or abs(np.trace(rho).imag) > 1e-10:
                raise ValueError("trace must be 1")
            if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
                raise ValueError("must be Hermitian")
        self.rho = rho
        self.n_qubits = n

    def eigen(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues ascending, eigenvectors as columns."""
        return np.linalg.eigh(self.rho)

    def purity(self) -> float:
        return float(np.trace(self.rho @ self.rho).real)


@dataclass(frozen=True)
class NoiseModel:
    """Per-qubit readout confusion matrices + one global depolarizing knob.

    ``readout_confusion[q][i, j]`` is the probability of reading outcome i
    when qubit q is in state j (columns sum to 1).
    """

    readout_confusion: tuple[np.ndarray, ...] = field(default_factory=tuple)
    depolarizing_p: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.depolarizing_p <= 1.0):
            raise ValueError("depolarizing probability must be in [0, 1]")
        for mat in self.readout_confusion:
            if mat.shape != (2, 2) or np.any(mat < -1e-12):
                raise ValueError("confusion matrices must be 2x2 and non-negative")
            if np.max(np.abs(mat.sum(axis=0) - 1.0)) > 1e-10:
                raise ValueError("confusion matrix columns must sum to 1")

    @classmethod
    def ideal(cls) -> "NoiseModel":
        return cls()

    @classmethod
    def uniform(cls, n_qubits: int, readout_flip: float = 0.0,
                depolarizing_p: float = 0.0) -> "NoiseModel":
        """Symmetric flip probability on every qubit plus depolarizing."""
        q = readout_flip
        mat = np.array([[1 - q, q], [q, 1 - q]])
        return cls(tuple(mat.copy() for _ in range(n_qubits)), depolarizing_p)

    def has_readout_error(self) -> bool:
        return any(np.max(np.abs(m - np.eye(2))) > 0 for m in self.readout_confusion)

    def full_confusion(self, n_qubits: int) -> np.ndarray:
        """Kronecker product of the per-qubit matrices (qubit 0 = LSB)."""
        full = np.eye(1)
        mats = self.readout_confusion or tuple(np.eye(2) for _ in range(n_qubits))
        if len(mats) != n_qubits:
            raise ValueError("confusion matrix count differs from qubit count")
        for q in range(n_qubits - 1, -1, -1):
            full = np.kron(full, mats[q])
        return full

    def without_depolarizing(self) -> "NoiseModel":
        return NoiseModel(self.readout_confusion, 0.0)


def run_statevector(circuit: Circuit) -> Statevector:
    """Exact |psi> = U|0...0> via the kernel backend."""
    codes, qa, qb, params = circuit._encoded()
    return Statevector(kernels.run_circuit(circuit.n_qubits, codes, qa, qb, params))


def run_density(circuit: Circuit, noise: NoiseModel) -> DensityMatrix:
    """rho = (1-p) U|0><0|U^dag + p I/2^n.

    Readout noise is not folded into rho; it applies at measurement.
    """
    psi = run_statevector(circuit).amplitudes
    dim = len(psi)
    p = noise.depolarizing_p
    rho = (1 - p) * np.outer(psi, psi.conj()) + p * np.eye(dim) / dim
    return DensityMatrix(rho)


def basis_rotation(setting: PauliString) -> Circuit:
    """Measurement rotation: X -> H, Y -> Sdg then H, Z/I -> nothing."""
    rot = Circuit(setting.n_qubits)
    for q, letter in enumerate(setting.letters):
        if letter == "X":
            rot.h(q)
        elif letter == "Y":
            rot.sdg(q).h(q)
    return rot


def _measured_distribution(circuit: Circuit, basis: PauliString,
                           noise: NoiseModel) -> np.ndarray:
    """Outcome distribution after basis rotation, depolarizing and readout."""
    if basis.n_qubits != circuit.n_qubits:
        raise pauli.DimensionError("basis width differs from circuit width")
    rotated = Circuit(circuit.n_qubits)
    rotated.extend(circuit).extend(basis_rotation(basis))
    probs = run_statevector(rotated).probabilities()
    p = noise.depolarizing_p
    if p > 0:
        probs = (1 - p) * probs + p / len(probs)
    if noise.readout_confusion:
        probs = noise.full_confusion(circuit.n_qubits) @ probs
    # guard against float dust before sampling
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def index_to_bitstring(index: int, n_qubits: int) -> str:
    """Character position 0 = qubit 0."""
    return "".join(str((index >> q) & 1) for q in range(n_qubits))


def bitstring_to_index(bits: str) -> int:
    return sum(int(b) << q for q, b in enumerate(bits))


def sample_counts(circuit: Circuit, basis: PauliString, shots: int,
                  noise: NoiseModel, seed) -> dict[str, int]:
    """Shot counts from the Born distribution pushed through readout noise.

    Deterministic for a fixed seed; `seed` may be an int or a numpy
    SeedSequence.
    """
    if shots < 1:
        raise ContractError("shots must be >= 1")
    if shots > MAX_SHOTS:
        raise ContractError(f"shots {shots} exceeds the per-execution cap {MAX_SHOTS}")
    probs = _measured_distribution(circuit, basis, noise)
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, probs)
    return {
        index_to_bitstring(i, circuit.n_qubits): int(c)
        for i, c in enumerate(draws)
        if c > 0
    }


def counts_to_frequencies(counts: dict[str, int], n_qubits: int) -> np.ndarray:
    freq = np.zeros(1 << n_qubits)
    total = sum(counts.values())
    for bits, c in counts.items():
        freq[bitstring_to_index(bits)] = c / total
    return freq


def group_commuting(op: QubitOperator) -> list[tuple[PauliString, list[PauliString]]]:
    """Greedy qubit-wise-commuting grouping.

    Returns (setting, members) pairs; the identity term is never a member.
    Settings merge letters, treating I as a wildcard, so at most 3^n
    settings exist (9 for two qubits).
    """
    groups: list[tuple[list[str], list[PauliString]]] = []
    for string, _ in op.items_sorted():
        if string.is_identity():
            continue
        placed = False
        for setting, members in groups:
            merged = list(setting)
            ok = True
            for q, letter in enumerate(string.letters):
                if letter == "I":
                    continue
                if merged[q] in ("I", letter):
                    merged[q] = letter
                else:
                    ok = False
                    break
            if ok:
                setting[:] = merged
                members.append(string)
                placed = True
                break
        if not placed:
            groups.append((list(string.letters), [string]))
    return [
        (PauliString.from_letters("".join(s)), members) for s, members in groups
    ]


def _term_signs(string: PauliString, n_qubits: int) -> np.ndarray:
    """(-1)^{parity of measured bits in the term's support} per outcome."""
    support = string.x_bits | string.z_bits
    idx = np.arange(1 << n_qubits)
    par = np.zeros_like(idx)
    masked = idx & support
    while masked.any():
        par ^= masked & 1
        masked >>= 1
    return 1.0 - 2.0 * par


def estimate_pauli_expectations(
    circuit: Circuit,
    strings: list[PauliString],
    shots: int,
    noise: NoiseModel,
    seed,
    corrector=None,
) -> dict[PauliString, tuple[float, float]]:
    """Measure a set of Pauli strings, sharing qubit-wise-commuting settings.

    Returns {string: (estimate, stderr)}.  One `shots`-shot execution per
    setting.  `corrector` optionally maps raw outcome frequencies to a
    corrected probability vector (readout mitigation hook).
    """
    op = QubitOperator(circuit.n_qubits, {s: 1.0 for s in strings})
    groups = group_commuting(op)
    seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = seq.spawn(len(groups))
    out: dict[PauliString, tuple[float, float]] = {}
    ident = PauliString.identity(circuit.n_qubits)
    if ident in set(strings):
        out[ident] = (1.0, 0.0)
    for (setting, members), child in zip(groups, children):
        counts = sample_counts(circuit, setting, shots, noise, child)
        freq = counts_to_frequencies(counts, circuit.n_qubits)
        if corrector is not None:
            freq = corrector(freq)
        for string in members:
            signs = _term_signs(string, circuit.n_qubits)
            value = float(signs @ freq)
            variance = max(0.0, 1.0 - value**2) / shots
            out[string] = (value, float(np.sqrt(variance)))
    return out


def estimate_expectation(
    circuit: Circuit,
    op: QubitOperator,
    shots: int,
    noise: NoiseModel,
    seed,
    corrector=None,
) -> tuple[float, float]:
    """Shot-based <op> with standard error from binomial term variances."""
    if not op.is_hermitian():
        raise ContractError("estimate_expectation requires a Hermitian operator")
    strings = [s for s, _ in op.items_sorted()]
    estimates = estimate_pauli_expectations(
        circuit, strings, shots, noise, seed, corrector
    )
    value = 0.0
    variance = 0.0
    for string, coeff in op.items_sorted():
        est, err = estimates[string]
        value += coeff.real * est
        variance += (coeff.real * err) ** 2
    return float(value), float(np.sqrt(variance))
