"""Exact diagonalization and spin classification: the ground truth that
every solver in the toolkit is tested against."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import pauli
from .pauli import QubitOperator

SINGLET = 0.0
TRIPLET = 2.0


class SpinClassificationError(RuntimeError):
    """An eigenvector's <S^2> sits between spin sectors (degenerate mixing)."""


@dataclass
class Spectrum:
    """Eigenvalues (ascending, Hartree), matching eigenvectors (columns),
    and optional per-state spin data filled in by :func:`classify_spin`."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    s_squared: np.ndarray | None = None
    labels: dict[str, int] = field(default_factory=dict)

    def energy(self, label: str) -> float:
        return float(self.eigenvalues[self.labels[label]])

    def state(self, label: str) -> np.ndarray:
        return self.eigenvectors[:, self.labels[label]]

    def splitting(self) -> float:
        """E(S1) - E(T1)."""
        return self.energy("S1") - self.energy("T1")


def full_ci(op: QubitOperator, cap: int = pauli.MATRIX_QUBIT_CAP) -> Spectrum:
    """Dense Hermitian diagonalization of the operator matrix."""
    matrix = pauli.to_matrix(op, cap=cap)
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    return Spectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def classify_spin(spec: Spectrum, s2: QubitOperator,
                  tol: float = 0.1) -> Spectrum:
    """Tag each eigenvector with the nearest s(s+1) and label S0/T1/S1/...

    Warns (via the returned data, not an exception) only when [H, S^2] is
    checked by the caller; here an eigenvector farther than `tol` from any
    integer s(s+1) raises, because a silent label on a spin-mixed
    degenerate eigenspace would corrupt every downstream comparison.
    """
    s2_matrix = pauli.to_matrix(s2)
    values = []
    for k in range(spec.eigenvectors.shape[1]):
        vec = spec.eigenvectors[:, k]
        value = float(np.real(vec.conj() @ s2_matrix @ vec))
        spins = np.array([s * (s + 1) for s in range(0, spec.eigenvectors.shape[1])])
        nearest = spins[np.argmin(np.abs(spins - value))]
        if abs(value - nearest) > tol:
            raise SpinClassificationError(
                f"state {k}: <S^2> = {value:.4f} is not near any s(s+1); "
                "degenerate spin mixing"
            )
        values.append(float(nearest))
    spec.s_squared = np.array(values)

    labels: dict[str, int] = {}
    singlet_count = 0
    multiplet_count: dict[float, int] = {}
    for k, s2v in enumerate(values):
        if s2v == SINGLET:
            labels[f"S{singlet_count}"] = k
            singlet_count += 1
        else:
            base = {TRIPLET: "T"}.get(s2v, f"m{s2v:g}_")
            count = multiplet_count.get(s2v, 0) + 1
            multiplet_count[s2v] = count
            labels[f"{base}{count}"] = k
    spec.labels = labels
    return spec


def solve(hamiltonian: QubitOperator, s2: QubitOperator) -> Spectrum:
    """full_ci + classify_spin, warning if H and S^2 do not commute."""
    comm_norm = pauli.commutator(hamiltonian, s2).one_norm()
    if comm_norm > 1e-6:
        import warnings

        warnings.warn(f"[H, S^2] one-norm {comm_norm:.2e} exceeds 1e-6",
                      stacklevel=2)
    return classify_spin(full_ci(hamiltonian), s2)
