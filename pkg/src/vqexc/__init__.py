"""vqexc: singlet/triplet excited states of small active spaces with
variational quantum algorithms (VQE, qEOM, VQD), noisy-backend emulation
and tomography-purification error mitigation, validated against an exact
diagonalization oracle."""

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

HARTREE_TO_EV = 27.211386245988
