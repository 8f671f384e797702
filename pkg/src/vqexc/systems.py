"""Bundled synthetic active spaces.

Two named 2-orbital, 2-electron systems ship with the toolkit.  Their
integrals are hand-picked (not taken from any published molecule); all
reference values are oracle-computed:

* ``toy-h2-like``    - singlet-triplet splitting near 30 mHa, the scale of
                       a donor-acceptor emitter in a double-zeta basis.
* ``near-degenerate`` - splitting near 0.2 mHa, the hard nearly-degenerate
                       regime.

The exchange integral (01|01) sets the splitting (2K to first order), so
the two systems differ only in that knob.
"""

from __future__ import annotations

import numpy as np

from .chem import ActiveSpaceIntegrals


def _two_orbital(eps0: float, eps1: float, t01: float, j00: float, j11: float,
                 j01: float, k01: float, core: float = 0.0) -> ActiveSpaceIntegrals:
    h1 = np.array([[eps0, t01], [t01, eps1]])
    h2 = np.zeros((2, 2, 2, 2))
    h2[0, 0, 0, 0] = j00
    h2[1, 1, 1, 1] = j11
    for p, q, r, s in ((0, 0, 1, 1), (1, 1, 0, 0)):
        h2[p, q, r, s] = j01
    for p, q, r, s in ((0, 1, 0, 1), (1, 0, 0, 1), (0, 1, 1, 0), (1, 0, 1, 0)):
        h2[p, q, r, s] = k01
    return ActiveSpaceIntegrals(
        n_spatial=2, n_electrons=2, core_energy=core, h1=h1, h2=h2, ms2=0
    )


def toy_h2_like() -> ActiveSpaceIntegrals:
    return _two_orbital(
        eps0=-0.50, eps1=-0.35, t01=0.01,
        j00=0.35, j11=0.30, j01=0.25, k01=0.015,
    )


def near_degenerate() -> ActiveSpaceIntegrals:
    # t01 = 0 keeps the open-shell singlet unshifted, so the splitting is
    # 2*K to high accuracy
    return _two_orbital(
        eps0=-0.50, eps1=-0.35, t01=0.0,
        j00=0.35, j11=0.30, j01=0.25, k01=0.0001,
    )


NAMED_SYSTEMS = {
    "toy-h2-like": toy_h2_like,
    "near-degenerate": near_degenerate,
}


def named_integrals(name: str) -> ActiveSpaceIntegrals:
    try:
        return NAMED_SYSTEMS[name]()
    except KeyError:
        raise KeyError(
            f"unknown system {name!r}; available: {sorted(NAMED_SYSTEMS)}"
        ) from None


def random_integrals(rng: np.random.Generator,
                     min_gap: float = 0.002) -> ActiveSpaceIntegrals:
    """Random spin-free 2-orbital integrals with well-separated low states.

    Draws are rejected (deterministically, from the same stream) until the
    lowest four mapped eigenvalues are pairwise separated by `min_gap`
    Hartree, which keeps spin labeling and excited-state extraction
    unambiguous in randomized tests.
    """
    from . import oracle
    from .chem import MappingConfig, hamiltonian_qubit_operator

    while True:
        ints = _two_orbital(
            eps0=rng.uniform(-1.0, -0.4),
            eps1=rng.uniform(-0.4, -0.1),
            t01=rng.uniform(-0.05, 0.05),
            j00=rng.uniform(0.2, 0.5),
            j11=rng.uniform(0.2, 0.5),
            j01=rng.uniform(0.1, 0.4),
            k01=rng.uniform(0.002, 0.08),
        )
        h = hamiltonian_qubit_operator(ints, MappingConfig.for_integrals(ints))
        eigenvalues = oracle.full_ci(h).eigenvalues
        if np.min(np.diff(eigenvalues)) >= min_gap:
            return ints
