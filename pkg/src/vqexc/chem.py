"""Active-space electronic structure: integrals in, qubit operators out.

Pipeline: FCIDUMP (Molpro convention, chemists' two-body integrals) ->
second-quantized Hamiltonian over spin orbitals -> parity-mapped qubit
operator, optionally with the two symmetry qubits removed.

Spin-orbital ordering is block ordering: all alpha spatial orbitals first,
then all beta.  Under the parity transform the last qubit of the alpha
block stores the alpha-occupation parity and the last qubit overall stores
the total particle parity, so two-qubit reduction is a fixed-position
deletion of qubits (n_spatial - 1) and (2 n_spatial - 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import ContractError, PauliString, QubitOperator


class FcidumpError(ValueError):
    """Malformed FCIDUMP input; message carries the offending line number."""


@dataclass
class ActiveSpaceIntegrals:
    """Spatial-orbital integrals of an active space, in Hartree.

    ``h2`` uses chemists' index convention: h2[p,q,r,s] = (pq|rs).
    """

    n_spatial: int
    n_electrons: int
    core_energy: float
    h1: np.ndarray
    h2: np.ndarray
    ms2: int = 0

    def __post_init__(self):
        n = self.n_spatial
        if n < 1 or self.n_electrons < 1:
            raise ValueError("orbital and electron counts must be positive")
        self.h1 = np.asarray(self.h1, dtype=float)
        self.h2 = np.asarray(self.h2, dtype=float)
        if self.h1.shape != (n, n) or self.h2.shape != (n, n, n, n):
            raise ValueError("integral array shapes do not match n_spatial")
        if np.max(np.abs(self.h1 - self.h1.T)) > 1e-10:
            raise ValueError("h1 must be symmetric")
        for perm in _CHEMIST_IMAGES:
            if np.max(np.abs(self.h2 - perm(self.h2))) > 1e-10:
                raise ValueError("h2 violates 8-fold permutation symmetry")

    @property
    def n_alpha(self) -> int:
        return (self.n_electrons + self.ms2) // 2

    @property
    def n_beta(self) -> int:
        return (self.n_electrons - self.ms2) // 2


_CHEMIST_IMAGES = (
    lambda g: g.transpose(1, 0, 2, 3),
    lambda g: g.transpose(0, 1, 3, 2),
    lambda g: g.transpose(2, 3, 0, 1),
)


def parse_fcidump(text: str) -> ActiveSpaceIntegrals:
    """Read a Molpro-convention FCIDUMP: namelist header, then
    `value i j k l` records with 1-based indices."""
    lines = text.splitlines()
    header_parts: list[str] = []
    body_start = None
    for lineno, line in enumerate(lines, start=1):
        header_parts.append(line)
        if "&END" in line.upper() or line.strip() == "/" or line.strip().endswith("/"):
            body_start = lineno
            break
    if body_start is None:
        raise FcidumpError("line 1: missing namelist terminator (&END or /)")

    header = " ".join(header_parts).upper()
    fields = {}
    for key in ("NORB", "NELEC", "MS2"):
        token = header.split(key + "=", 1)
        if len(token) == 2:
            digits = token[1].lstrip().split(",")[0].split()[0]
            fields[key] = int(digits)
    if "NORB" not in fields or "NELEC" not in fields:
        raise FcidumpError("line 1: header must define NORB and NELEC")

    n = fields["NORB"]
    h1 = np.zeros((n, n))
    h2 = np.zeros((n, n, n, n))
    core = 0.0
    for lineno in range(body_start, len(lines)):
        line = lines[lineno].strip()
        if not line:
            continue
        parts = line.replace("D", "E").replace("d", "e").split()
        if len(parts) != 5:
            raise FcidumpError(f"line {lineno + 1}: expected `value i j k l`")
        try:
            value = float(parts[0])
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError:
            raise FcidumpError(f"line {lineno + 1}: unparseable record") from None
        for idx in (i, j, k, l):
            if idx < 0 or idx > n:
                raise FcidumpError(f"line {lineno + 1}: index {idx} out of range 0..{n}")
        if i == 0 and j == 0 and k == 0 and l == 0:
            core = value
        elif k == 0 and l == 0:
            if i == 0 or j == 0:
                raise FcidumpError(f"line {lineno + 1}: bad one-body record")
            h1[i - 1, j - 1] = value
            h1[j - 1, i - 1] = value
        else:
            if 0 in (i, j, k, l):
                raise FcidumpError(f"line {lineno + 1}: bad two-body record")
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            for a, b, c, d in (
                (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
                (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
            ):
                h2[a, b, c, d] = value
    return ActiveSpaceIntegrals(
        n_spatial=n,
        n_electrons=fields["NELEC"],
        core_energy=core,
        h1=h1,
        h2=h2,
        ms2=fields.get("MS2", 0),
    )


def emit_fcidump(ints: ActiveSpaceIntegrals) -> str:
    n = ints.n_spatial
    out = [
        f" &FCI NORB={n},NELEC={ints.n_electrons},MS2={ints.ms2},",
        "  ORBSYM=" + "1," * n,
        "  ISYM=1,",
        " &END",
    ]
    for p in range(n):
        for q in range(p + 1):
            for r in range(n):
                for s in range(r + 1):
                    if (p, q) < (r, s):
                        continue
                    value = ints.h2[p, q, r, s]
                    if abs(value) > 1e-14:
                        out.append(f"{value:.16e} {p + 1} {q + 1} {r + 1} {s + 1}")
    for p in range(n):
        for q in range(p + 1):
            if abs(ints.h1[p, q]) > 1e-14:
                out.append(f"{ints.h1[p, q]:.16e} {p + 1} {q + 1} 0 0")
    out.append(f"{ints.core_energy:.16e} 0 0 0 0")
    return "\n".join(out) + "\n"


class FermionOperator:
    """Sum of ladder-operator products with real coefficients.

    A term is a tuple of (spin-orbital index, is_creation) pairs, applied
    right-to-left like an operator product.  Kept deliberately light: terms
    are stored exactly as constructed and only combined when identical.
    """

    def __init__(self, terms: dict[tuple, float] | None = None):
        self.terms: dict[tuple, float] = {}
        if terms:
            for seq, coeff in terms.items():
                if abs(coeff) > 1e-14:
                    self.terms[tuple(seq)] = self.terms.get(tuple(seq), 0.0) + coeff

    @classmethod
    def single(cls, seq, coeff: float = 1.0) -> "FermionOperator":
        return cls({tuple(seq): coeff})

    @classmethod
    def identity(cls, coeff: float = 1.0) -> "FermionOperator":
        return cls({(): coeff})

    def __add__(self, other: "FermionOperator") -> "FermionOperator":
        terms = dict(self.terms)
        for seq, coeff in other.terms.items():
            terms[seq] = terms.get(seq, 0.0) + coeff
        return FermionOperator(terms)

    def __mul__(self, other):
        if isinstance(other, FermionOperator):
            out: dict[tuple, float] = {}
            for sa, ca in self.terms.items():
                for sb, cb in other.terms.items():
                    seq = sa + sb
                    out[seq] = out.get(seq, 0.0) + ca * cb
            return FermionOperator(out)
        return FermionOperator({s: other * c for s, c in self.terms.items()})

    __rmul__ = __mul__

    def max_index(self) -> int:
        return max((i for seq in self.terms for i, _ in seq), default=-1)


def build_hamiltonian(ints: ActiveSpaceIntegrals) -> FermionOperator:
    """Second-quantized H over spin orbitals (block ordering), spatial
    integrals spin-expanded:

    H = core + sum h_pq a+_ps a_qs + 1/2 sum (pq|rs) a+_ps a+_rt a_st a_qs
    """
    n = ints.n_spatial
    terms: dict[tuple, float] = {(): ints.core_energy}

    def so(p, sigma):
        return p + sigma * n

    for p in range(n):
        for q in range(n):
            if abs(ints.h1[p, q]) < 1e-14:
                continue
            for sigma in (0, 1):
                seq = ((so(p, sigma), True), (so(q, sigma), False))
                terms[seq] = terms.get(seq, 0.0) + ints.h1[p, q]

    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    g = ints.h2[p, q, r, s]
                    if abs(g) < 1e-14:
                        continue
                    for sigma in (0, 1):
                        for tau in (0, 1):
                            seq = (
                                (so(p, sigma), True),
                                (so(r, tau), True),
                                (so(s, tau), False),
                                (so(q, sigma), False),
                            )
                            terms[seq] = terms.get(seq, 0.0) + 0.5 * g
    return FermionOperator(terms)


def s_squared_fermion(n_spatial: int) -> FermionOperator:
    """S^2 = S_- S_+ + S_z (S_z + 1) on the active space."""
    n = n_spatial
    s_plus = FermionOperator(
        {((p, True), (p + n, False)): 1.0 for p in range(n)}
    )
    s_minus = FermionOperator(
        {((p + n, True), (p, False)): 1.0 for p in range(n)}
    )
    sz_terms: dict[tuple, float] = {}
    for p in range(n):
        sz_terms[((p, True), (p, False))] = 0.5
        sz_terms[((p + n, True), (p + n, False))] = -0.5
    sz = FermionOperator(sz_terms)
    return s_minus * s_plus + sz * sz + sz


@dataclass(frozen=True)
class MappingConfig:
    """Parity-mapping configuration shared by H, S^2 and excitation pools.

    With ``reduce`` on, qubits (n_spatial-1) and (2 n_spatial-1) are frozen
    to the symmetry sector of the declared (n_alpha, n_beta) occupation and
    deleted.  ``reference_at_zero`` additionally relabels the reduced basis
    (an X conjugation) so the reference determinant (lowest orbitals
    filled) sits at |0...0>.
    """

    n_spin_orbitals: int
    n_alpha: int
    n_beta: int
    reduce: bool = True
    reference_at_zero: bool = True
    sector_override: tuple[int, int] | None = None

    def __post_init__(self):
        if self.reduce and self.n_spin_orbitals % 2 != 0:
            raise ContractError("parity reduction needs an even spin-orbital count")
        if self.n_alpha + self.n_beta < 1:
            raise ValueError("at least one electron required")

    @classmethod
    def for_integrals(cls, ints: ActiveSpaceIntegrals, reduce: bool = True,
                      reference_at_zero: bool = True) -> "MappingConfig":
        return cls(2 * ints.n_spatial, ints.n_alpha, ints.n_beta,
                   reduce=reduce, reference_at_zero=reference_at_zero)

    @property
    def n_modes(self) -> int:
        return self.n_spin_orbitals

    @property
    def n_qubits(self) -> int:
        return self.n_spin_orbitals - 2 if self.reduce else self.n_spin_orbitals

    @property
    def removed_positions(self) -> tuple[int, int]:
        n = self.n_spin_orbitals
        return (n // 2 - 1, n - 1)

    @property
    def sector_eigenvalues(self) -> tuple[int, int]:
        """Z eigenvalues on the removed (alpha-parity, total-parity) qubits."""
        if self.sector_override is not None:
            return self.sector_override
        z_alpha = 1 if self.n_alpha % 2 == 0 else -1
        z_total = 1 if (self.n_alpha + self.n_beta) % 2 == 0 else -1
        return (z_alpha, z_total)

    def reference_occupations(self) -> list[int]:
        n = self.n_spin_orbitals // 2
        occ = [0] * self.n_spin_orbitals
        for p in range(self.n_alpha):
            occ[p] = 1
        for p in range(self.n_beta):
            occ[n + p] = 1
        return occ

    def _reference_parities(self) -> list[int]:
        occ = self.reference_occupations()
        par, acc = [], 0
        for o in occ:
            acc ^= o
            par.append(acc)
        return par

    def reference_flip_mask(self) -> int:
        """Kept-qubit mask whose bits are 1 where the reference parity is 1.

        Only the reduced register is relabeled; without reduction the plain
        parity image is returned unconjugated.
        """
        if not (self.reduce and self.reference_at_zero):
            return 0
        par = self._reference_parities()
        removed = set(self.removed_positions)
        mask, out_q = 0, 0
        for q, b in enumerate(par):
            if q in removed:
                continue
            mask |= b << out_q
            out_q += 1
        return mask

    def reference_state_index(self) -> int:
        """Basis index of the reference determinant in the mapped register."""
        par = self._reference_parities()
        if not self.reduce:
            return sum(b << q for q, b in enumerate(par))
        removed = set(self.removed_positions)
        kept = [b for q, b in enumerate(par) if q not in removed]
        index = sum(b << q for q, b in enumerate(kept))
        return index ^ self.reference_flip_mask()


def _ladder_qubit_operator(index: int, create: bool, n_modes: int) -> QubitOperator:
    """Parity transform of a single creation/annihilation operator."""
    x_tail = 0
    for k in range(index + 1, n_modes):
        x_tail |= 1 << k
    # term 1: Z_{j-1} X_j (Z absent for j = 0), coefficient 1/2
    x1 = (1 << index) | x_tail
    z1 = (1 << (index - 1)) if index > 0 else 0
    # term 2: Y_j, coefficient -i/2 (creation) or +i/2 (annihilation)
    x2 = (1 << index) | x_tail
    z2 = 1 << index
    sign = -0.5j if create else 0.5j
    return QubitOperator(
        n_modes,
        {
            PauliString(n_modes, x1, z1): 0.5,
            PauliString(n_modes, x2, z2): sign,
        },
    )


def _reduce_operator(op: QubitOperator, config: MappingConfig) -> QubitOperator:
    pos_a, pos_b = config.removed_positions
    z_a, z_b = config.sector_eigenvalues
    flip = config.reference_flip_mask()
    out: dict[PauliString, complex] = {}
    for string, coeff in op.terms.items():
        for pos in (pos_a, pos_b):
            if (string.x_bits >> pos) & 1:
                raise ContractError(
                    "operator does not preserve the reduction symmetries"
                )
        if (string.z_bits >> pos_a) & 1:
            coeff *= z_a
        if (string.z_bits >> pos_b) & 1:
            coeff *= z_b
        x = _drop_bits(string.x_bits, (pos_a, pos_b))
        z = _drop_bits(string.z_bits, (pos_a, pos_b))
        if flip:
            coeff *= (-1) ** (bin(z & flip).count("1"))
        key = PauliString(config.n_qubits, x, z)
        out[key] = out.get(key, 0.0) + coeff
    return QubitOperator(config.n_qubits, out)


def _drop_bits(mask: int, positions) -> int:
    out, out_q = 0, 0
    drop = set(positions)
    q = 0
    while mask >> q or q <= max(drop):
        if q not in drop:
            out |= ((mask >> q) & 1) << out_q
            out_q += 1
        q += 1
    return out


def parity_map(f: FermionOperator, config: MappingConfig) -> QubitOperator:
    """Map a fermionic operator to qubits via the parity transform.

    Returns an operator on n_spin_orbitals qubits, or n_spin_orbitals - 2
    when the config reduces; reduction requires every term to commute with
    the frozen symmetry qubits, otherwise a contract error is raised.
    """
    n = config.n_modes
    total = QubitOperator.zero(n)
    for seq, coeff in f.terms.items():
        if seq and max(i for i, _ in seq) >= n:
            raise ContractError("fermionic index exceeds the spin-orbital count")
        term_op = QubitOperator.identity(n, coeff)
        for index, create in seq:
            term_op = term_op * _ladder_qubit_operator(index, create, n)
        total = total + term_op
    if not config.reduce:
        return total
    return _reduce_operator(total, config)


def hamiltonian_qubit_operator(ints: ActiveSpaceIntegrals,
                               config: MappingConfig | None = None) -> QubitOperator:
    """FCIDUMP-style integrals straight to the mapped qubit Hamiltonian."""
    if config is None:
        config = MappingConfig.for_integrals(ints)
    return parity_map(build_hamiltonian(ints), config)


def s_squared_operator(n_spatial: int, config: MappingConfig) -> QubitOperator:
    """Qubit representation of total spin S^2 under the same mapping as H."""
    if config.n_spin_orbitals != 2 * n_spatial:
        raise ContractError("S^2 mapping config differs from the Hamiltonian's")
    return parity_map(s_squared_fermion(n_spatial), config)
