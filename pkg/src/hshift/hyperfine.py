"""
Hyperfine + Zeeman structure of ground-state hydrogen.

Basis ordering is |m_s, m_i> = {|++>, |+->, |-+>, |-->}, electron spin first.
Energies are returned as frequencies E/h in Hz.

The four eigenstates are labelled a, b, c, d following the usual convention
(increasing energy at moderate field)::

    a = cos(t)|-+> - sin(t)|+->      b = |-->
    c = cos(t)|+-> + sin(t)|-+>      d = |++>

Labels are attached through m_F = m_s + m_i, which the Hamiltonian conserves,
not through energy order: c and d cross at ``cd_crossing_field`` (about
16.6 T), above which E_d < E_c.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernels import breit_rabi_grid

MODULE = "hyperfine_levels"

LABELS = ("a", "b", "c", "d")
BASIS = ("++", "+-", "-+", "--")

# m_s and m_i of each basis vector
_MS = np.array([0.5, 0.5, -0.5, -0.5])
_MI = np.array([0.5, -0.5, 0.5, -0.5])
_MF = _MS + _MI

# Basis component whose amplitude is made real positive for each label.
_PHASE_REF = {"a": 2, "b": 3, "c": 1, "d": 0}

_DEGENERACY_RTOL = 1e-12


def _check_field(B):
    if not np.isfinite(B) or B < 0:
        raise DomainError(f"magnetic field must be finite and >= 0, got {B!r} T", MODULE)


@dataclass(frozen=True)
class HyperfineSpectrum:
    """Labelled eigensystem of the single-atom Hamiltonian at one field.

    ``energies`` and the columns of ``eigenvectors`` are ordered a, b, c, d.
    """

    field_B: float
    theta: float
    energies: np.ndarray
    eigenvectors: np.ndarray

    def energy(self, label):
        return float(self.energies[_index(label)])

    def state(self, label):
        return self.eigenvectors[:, _index(label)]

    def as_dict(self):
        return dict(zip(LABELS, (float(e) for e in self.energies)))


def _index(label):
    try:
        return LABELS.index(label)
    except ValueError:
        raise DomainError(f"unknown state label {label!r}; expected one of {LABELS}", MODULE) from None


def mixing_angle(c, B):
    """Mixing angle theta with tan(2 theta) = A / ((gamma_e + gamma_p) h B).

    theta = pi/4 at zero field and falls off as 1/B.
    """
    _check_field(B)
    # arctan2 gives the B = 0 limit (pi/2) without a special case
    return 0.5 * np.arctan2(c.hyperfine_A_over_h, (c.gamma_e + c.gamma_p) * B)


def hamiltonian_matrix(c, B):
    """H/h in Hz on the {|++>, |+->, |-+>, |-->} basis.

    H/h = (A/h) I.S / hbar^2 + gamma_e B m_s - gamma_p B m_i
    """
    _check_field(B)
    A = c.hyperfine_A_over_h
    H = np.diag(A * _MS * _MI + c.gamma_e * B * _MS - c.gamma_p * B * _MI)
    # I.S = Iz Sz + (I+ S- + I- S+)/2 couples |+-> and |-+>
    H[1, 2] = H[2, 1] = 0.5 * A
    return H


def _split_degenerate(w, V):
    """Rotate degenerate eigenvector clusters onto m_F eigenvectors."""
    M = np.diag(_MF)
    scale = max(np.max(np.abs(w)), 1.0)
    i = 0
    while i < len(w):
        j = i + 1
        while j < len(w) and abs(w[j] - w[i]) <= _DEGENERACY_RTOL * scale:
            j += 1
        if j - i > 1:
            sub = V[:, i:j]
            mw, mv = np.linalg.eigh(sub.conj().T @ M @ sub)
            V[:, i:j] = sub @ mv
        i = j
    return V


def eigensystem(c, B):
    """Diagonalize ``hamiltonian_matrix`` and label the states a, b, c, d."""
    H = hamiltonian_matrix(c, B)
    w, V = np.linalg.eigh(H)
    V = _split_degenerate(w, V.astype(np.float64))

    mf = np.rint(np.einsum("ik,i,ik->k", V, _MF, V)).astype(int)
    order = {}
    for m, label in ((-1, "b"), (1, "d")):
        idx = np.flatnonzero(mf == m)
        if len(idx) != 1:
            raise DomainError(f"expected one m_F={m} state at B={B} T, found {len(idx)}", MODULE)
        order[label] = idx[0]
    zero = np.flatnonzero(mf == 0)
    if len(zero) != 2:
        raise DomainError(f"expected two m_F=0 states at B={B} T, found {len(zero)}", MODULE)
    lo, hi = sorted(zero, key=lambda k: w[k])
    order["a"], order["c"] = lo, hi

    cols = [order[lab] for lab in LABELS]
    V = V[:, cols]
    for k, lab in enumerate(LABELS):
        ref = V[_PHASE_REF[lab], k]
        if abs(ref) < 0.5:
            raise DomainError(
                f"state {lab} at B={B} T has dominant-component amplitude {abs(ref):.3g}; labelling is inconsistent",
                MODULE,
            )
        V[:, k] *= np.sign(ref)
    tol = _DEGENERACY_RTOL * max(np.max(np.abs(w)), 1.0)
    if not w[order["a"]] < w[order["b"]] <= w[order["c"]] + tol:
        raise DomainError(f"energy order a < b < c violated at B={B} T", MODULE)

    # Rayleigh quotients: exact diagonal entries for the unmixed b and d
    energies = np.einsum("ik,ij,jk->k", V, H, V)
    theta = float(np.arctan2(V[2, 2], V[1, 2]))
    return HyperfineSpectrum(field_B=float(B), theta=theta, energies=energies, eigenvectors=V)


def transition_frequency(spec, initial, final):
    """E_final - E_initial in Hz."""
    if initial == final:
        raise DomainError(f"transition needs two distinct states, got {initial!r} twice", MODULE)
    return spec.energy(final) - spec.energy(initial)


def breit_rabi_closed_form(c, B):
    """Analytic energies (Hz) ordered a, b, c, d; ``B`` may be an array."""
    B_arr = np.asarray(B, dtype=np.float64)
    if np.any(~np.isfinite(B_arr)) or np.any(B_arr < 0):
        raise DomainError("magnetic field must be finite and >= 0", MODULE)
    return breit_rabi_grid(c.hyperfine_A_over_h, c.gamma_e, c.gamma_p, B_arr)


def cd_crossing_field(c):
    """Field (T) at which the c and d levels cross.

    Setting E_c = E_d in the closed form gives
    B = A (gamma_e - gamma_p) / (2 gamma_e gamma_p).
    """
    return c.hyperfine_A_over_h * (c.gamma_e - c.gamma_p) / (2 * c.gamma_e * c.gamma_p)


def level_table(c, fields):
    """Rows of (B, theta, E_a, E_b, E_c, E_d, nu_ab, nu_bc) for each field."""
    rows = []
    for B in fields:
        s = eigensystem(c, float(B))
        E = s.energies
        rows.append([float(B), s.theta, *map(float, E), float(E[1] - E[0]), float(E[2] - E[1])])
    return rows


LEVEL_COLUMNS = ("field_T", "theta_rad", "E_a_Hz", "E_b_Hz", "E_c_Hz", "E_d_Hz", "nu_ab_Hz", "nu_bc_Hz")
