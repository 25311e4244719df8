"""
Two-atom spin algebra in the 16-dimensional product space.

Basis ordering: electron_1 (x) nuclear_1 (x) electron_2 (x) nuclear_2, each
spin-1/2 with +1/2 before -1/2. This matches the single-atom ordering of
``hyperfine`` so a pair state is simply ``kron(v1, v2)``.

Spin operators are dimensionless (units of hbar); squared operators are in
units of hbar^2.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .hyperfine import hamiltonian_matrix

MODULE = "pair_spin_algebra"

KINDS = ("S2", "I2", "F2", "Sz", "Iz", "swap", "drive_electron", "drive_nuclear")
DRIVES = {"electron": "drive_electron", "nuclear": "drive_nuclear"}

# Eigenvalue clustering tolerance for subspace projectors (hbar^2 units).
CLUSTER_TOL = 1e-6

_SX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
_SZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2
_ID2 = np.eye(2, dtype=complex)

# slot positions within the 4-fold tensor product
_E1, _N1, _E2, _N2 = range(4)


def _embed(op, slot):
    factors = [_ID2] * 4
    factors[slot] = op
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def _vector(slots):
    return [sum(_embed(s, k) for k in slots) for s in (_SX, _SY, _SZ)]


def _square(vec):
    return sum(v @ v for v in vec)


def _swap_matrix():
    P = np.zeros((16, 16), dtype=complex)
    for idx in range(16):
        # bits: e1 n1 e2 n2 ; swap exchanges (e1, n1) with (e2, n2)
        atom1, atom2 = divmod(idx, 4)
        P[atom2 * 4 + atom1, idx] = 1.0
    return P


@dataclass(frozen=True)
class PairState:
    amplitudes: np.ndarray
    label: str = ""

    def __post_init__(self):
        psi = np.asarray(self.amplitudes, dtype=complex).reshape(16)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise DomainError("pair state has zero norm", MODULE)
        psi = psi / norm
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    def overlap(self, other):
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class CollectiveOperator:
    matrix: np.ndarray
    kind: str

    def __matmul__(self, other):
        if isinstance(other, PairState):
            return self.matrix @ other.amplitudes
        return self.matrix @ other


@lru_cache(maxsize=None)
def _operator_matrix(kind):
    S = _vector((_E1, _E2))
    I = _vector((_N1, _N2))
    if kind == "S2":
        M = _square(S)
    elif kind == "I2":
        M = _square(I)
    elif kind == "F2":
        M = _square([s + i for s, i in zip(S, I)])
    elif kind == "Sz":
        M = S[2]
    elif kind == "Iz":
        M = I[2]
    elif kind == "swap":
        M = _swap_matrix()
    elif kind == "drive_electron":
        M = S[0]
    elif kind == "drive_nuclear":
        M = I[0]
    else:
        raise DomainError(f"unknown operator kind {kind!r}; expected one of {KINDS}", MODULE)
    M = np.ascontiguousarray(M)
    M.setflags(write=False)
    return M


def collective_operator(kind):
    """Collective two-atom operator of the given kind.

    The drives are the total transverse couplings S1x + S2x and I1x + I2x,
    i.e. a spatially uniform microwave field acting identically on both atoms.
    """
    return CollectiveOperator(_operator_matrix(kind), kind)


def pair_basis_state(spec, first, second):
    """Product state |first, second> of two single-atom eigenstates."""
    return PairState(np.kron(spec.state(first), spec.state(second)), first + second)


def symmetrized_pair_state(spec, first, second, symmetric=True):
    """(|xy> + |yx>)/sqrt(2), or the antisymmetric combination if requested."""
    if first == second:
        if not symmetric:
            raise DomainError(f"antisymmetric state of two {first!r} atoms vanishes", MODULE)
        return pair_basis_state(spec, first, second)
    xy = np.kron(spec.state(first), spec.state(second))
    yx = np.kron(spec.state(second), spec.state(first))
    if symmetric:
        return PairState(xy + yx, f"{first}{second}_sym")
    return PairState(xy - yx, f"{first}{second}_anti")


def expectation_value(state, op):
    """<psi|O|psi> (real part); raises if the imaginary residual exceeds 1e-12."""
    psi = state.amplitudes
    val = np.vdot(psi, op.matrix @ psi)
    if abs(val.imag) > 1e-12:
        raise DomainError(f"non-Hermitian expectation: imaginary part {val.imag:.3g}", MODULE)
    return float(val.real)


def drive_coupling(initial, final, drive):
    """Matrix element <final| D |initial> (units of hbar) for drive 'electron' or 'nuclear'."""
    op = collective_operator(_drive_kind(drive))
    return complex(np.vdot(final.amplitudes, op.matrix @ initial.amplitudes))


def _drive_kind(drive):
    try:
        return DRIVES[drive]
    except KeyError:
        raise DomainError(f"unknown drive {drive!r}; expected 'electron' or 'nuclear'", MODULE) from None


@lru_cache(maxsize=None)
def _eigen_subspaces(kind):
    """(eigenvalue, orthonormal basis) pairs, clustering within CLUSTER_TOL."""
    w, V = np.linalg.eigh(_operator_matrix(kind))
    out = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[start] > CLUSTER_TOL:
            out.append((float(np.mean(w[start:i])), V[:, start:i]))
            start = i
    return tuple(out)


def subspace_basis(kind, predicate):
    """Columns spanning the eigenvectors of ``kind`` whose eigenvalue passes ``predicate``."""
    cols = [B for val, B in _eigen_subspaces(kind) if predicate(val)]
    if not cols:
        return np.zeros((16, 0), dtype=complex)
    return np.hstack(cols)


def total_quantum_number(eigenvalue):
    """Invert k(k+1) = eigenvalue for k >= 0."""
    return 0.5 * (np.sqrt(1.0 + 4.0 * eigenvalue) - 1.0)


def _is_odd_F(val):
    return int(round(total_quantum_number(val))) % 2 == 1


@dataclass(frozen=True)
class ForbiddennessReport:
    """Projections of the normalized driven state D|bb>.

    ``singlet_projection_norm`` is the weight on electronic S = 0,
    ``odd_F_projection_norm`` the weight on odd total F, and
    ``antisymmetric_projection_norm`` the weight on states odd under atom
    exchange.
    """

    field_B: float
    drive: str
    singlet_projection_norm: float
    odd_F_projection_norm: float
    antisymmetric_projection_norm: float


def forbiddenness_check(spec, drive):
    bb = pair_basis_state(spec, "b", "b")
    driven = collective_operator(_drive_kind(drive)) @ bb
    driven = driven / np.linalg.norm(driven)

    def weight(basis):
        return float(np.linalg.norm(basis.conj().T @ driven))

    return ForbiddennessReport(
        field_B=spec.field_B,
        drive=drive,
        singlet_projection_norm=weight(subspace_basis("S2", lambda v: abs(v) < CLUSTER_TOL)),
        odd_F_projection_norm=weight(subspace_basis("F2", _is_odd_F)),
        antisymmetric_projection_norm=weight(subspace_basis("swap", lambda v: v < 0)),
    )


def pair_hamiltonian(c, B):
    """Non-interacting two-atom Hamiltonian H (x) 1 + 1 (x) H, in Hz."""
    H = hamiltonian_matrix(c, B)
    one = np.eye(4)
    return np.kron(H, one) + np.kron(one, H)


def commutator_norm(X, Y):
    return float(np.linalg.norm(X @ Y - Y @ X))
