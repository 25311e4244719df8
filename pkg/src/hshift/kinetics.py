"""
Surface kinetics of impurity a-state atoms.

Units follow the way surface rate constants are usually quoted: areas in
cm^2, densities in cm^-2, one-body rates in s^-1, two-body rates in cm^2/s,
temperatures in K. Subscript ``s`` quantities live on the cold spot, the
rest on the (warmer) cell walls.
"""

import csv
import io
import math
from dataclasses import dataclass, fields, replace

import numpy as np

from . import kernels
from .errors import DomainError

MODULE = "surface_kinetics"

# Two-body nuclear relaxation on the spot, cm^2/s.
G2S_THEORY = 1.4e-13
G2S_EXPERIMENTAL_BOUND = 4e-13
KAB_PREFACTOR = 2.8e-9  # cm^2 K^-3/2 s^-1
KABS_QUOTED = 5e-11  # cm^2/s, the law above rounded at 70 mK


@dataclass(frozen=True)
class KineticsParams:
    """Rate constants, geometry and temperatures.

    ``K_abs`` is the exchange-recombination constant on the spot. When it is
    ``None`` it is evaluated from ``Kab_prefactor * T_spot**1.5``; the default
    is the rounded 5e-11 cm^2/s. The wall constant always follows the law at
    ``T_walls``.
    """

    wall_area: float = 100.0
    spot_area: float = 0.32
    G1: float = 0.1
    G1s: float = 0.1
    G2: float = 0.0
    G2s: float = G2S_THEORY
    Kab_prefactor: float = KAB_PREFACTOR
    K_abs: float | None = KABS_QUOTED
    E_a: float = 1.14
    T_spot: float = 0.07
    T_walls: float = 0.2
    Phi_a: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and (not math.isfinite(v) or v < 0):
                raise DomainError(f"{f.name} must be finite and >= 0, got {v!r}", MODULE)
        if self.E_a <= 0:
            raise DomainError(f"E_a must be > 0, got {self.E_a!r}", MODULE)
        if self.T_spot <= 0 or self.T_walls <= 0:
            raise DomainError("temperatures must be > 0", MODULE)
        if self.T_spot > self.T_walls:
            raise DomainError(f"T_spot ({self.T_spot} K) must not exceed T_walls ({self.T_walls} K)", MODULE)

    def with_overrides(self, **kwargs):
        return replace(self, **kwargs)

    @property
    def kab_walls(self):
        return kab_rate(self.Kab_prefactor, self.T_walls)

    @property
    def kab_spot(self):
        if self.K_abs is not None:
            return self.K_abs
        return kab_rate(self.Kab_prefactor, self.T_spot)

    @property
    def isotherm(self):
        return adsorption_ratio(self.E_a, self.T_spot, self.T_walls)


@dataclass(frozen=True)
class SurfaceDensities:
    sigma_a: float
    sigma_b: float
    sigma_as: float
    sigma_bs: float

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) >= 0:
                raise DomainError(f"{f.name} must be >= 0", MODULE)

    @classmethod
    def from_isotherm(cls, p, sigma_bs, sigma_as=0.0):
        """Wall densities in adsorption equilibrium with the spot."""
        r = p.isotherm
        return cls(sigma_a=sigma_as / r, sigma_b=sigma_bs / r, sigma_as=sigma_as, sigma_bs=sigma_bs)


def adsorption_ratio(E_a, T_spot, T_walls):
    """sigma_bs / sigma_b = exp(E_a (1/T_spot - 1/T_walls))."""
    if T_spot <= 0 or T_walls <= 0:
        raise DomainError("temperatures must be > 0", MODULE)
    if T_spot > T_walls:
        raise DomainError(f"T_spot ({T_spot} K) must not exceed T_walls ({T_walls} K)", MODULE)
    return math.exp(E_a * (1.0 / T_spot - 1.0 / T_walls))


def kab_rate(prefactor, T):
    """Exchange recombination constant prefactor * T^(3/2), cm^2/s."""
    if not T > 0:
        raise DomainError(f"temperature must be > 0, got {T!r}", MODULE)
    return prefactor * T**1.5


def alpha_ratio(p, d):
    """Ratio of wall to spot b-atom populations, A sigma_b / (A_s sigma_bs)."""
    if d.sigma_bs <= 0:
        raise DomainError("alpha is undefined for zero spot density", MODULE)
    return p.wall_area * d.sigma_b / (p.spot_area * d.sigma_bs)


def isotherm_alpha(p):
    return p.wall_area / (p.spot_area * p.isotherm)


def na_rate(p, d):
    """dN_a/dt in s^-1 for the given densities."""
    walls = p.G1 * d.sigma_b + p.G2 * d.sigma_b**2 - p.kab_walls * d.sigma_a * d.sigma_b
    spot = p.G1s * d.sigma_bs + p.G2s * d.sigma_bs**2 - p.kab_spot * d.sigma_as * d.sigma_bs
    return p.Phi_a + p.wall_area * walls + p.spot_area * spot


def rate_terms(p, d):
    """Individual signed terms of na_rate, for residual scaling."""
    return [
        p.Phi_a,
        p.wall_area * p.G1 * d.sigma_b,
        p.wall_area * p.G2 * d.sigma_b**2,
        -p.wall_area * p.kab_walls * d.sigma_a * d.sigma_b,
        p.spot_area * p.G1s * d.sigma_bs,
        p.spot_area * p.G2s * d.sigma_bs**2,
        -p.spot_area * p.kab_spot * d.sigma_as * d.sigma_bs,
    ]


def steady_state_sigma_as(p, sigma_bs, alpha=None):
    """Approximate steady-state a density on the spot.

    sigma_as = (G1s + alpha G1)/K_abs + (G2s/K_abs) sigma_bs, valid for zero
    incoming flux, negligible wall two-body relaxation and sigma_a << sigma_as.
    ``alpha`` defaults to the isotherm value.
    """
    if not sigma_bs > 0:
        raise DomainError(f"sigma_bs must be > 0, got {sigma_bs!r}", MODULE)
    K = p.kab_spot
    if K == 0:
        raise DomainError("K_abs is zero; no steady state", MODULE)
    if alpha is None:
        alpha = isotherm_alpha(p)
    return (p.G1s + alpha * p.G1) / K + (p.G2s / K) * sigma_bs


def steady_state_intercept(p, alpha=None):
    if alpha is None:
        alpha = isotherm_alpha(p)
    return (p.G1s + alpha * p.G1) / p.kab_spot


def steady_state_slope(p):
    """d sigma_as / d sigma_bs = G2s / K_abs."""
    if p.kab_spot == 0:
        raise DomainError("K_abs is zero; no steady state", MODULE)
    return p.G2s / p.kab_spot


def steady_state_numeric(p, sigma_bs, rtol=1e-10):
    """Root of na_rate = 0 in sigma_as, with the wall a density tied to the
    spot by the isotherm (sigma_a = sigma_as / ratio)."""
    from scipy.optimize import brentq

    if not sigma_bs > 0:
        raise DomainError(f"sigma_bs must be > 0, got {sigma_bs!r}", MODULE)

    def f(x):
        return na_rate(p, SurfaceDensities.from_isotherm(p, sigma_bs, x))

    f0 = f(0.0)
    if f0 == 0:
        return 0.0
    hi = 1.0
    for _ in range(400):
        if f(hi) < 0:
            break
        hi *= 4.0
    if not (f0 > 0 > f(hi)):
        raise DomainError(f"no sign change of na_rate in sigma_as bracket [0, {hi:.3g}] cm^-2", MODULE)
    return brentq(f, 0.0, hi, xtol=1e-300, rtol=max(rtol, 4 * np.finfo(float).eps), maxiter=500)


def closure_deviation(p, sigma_bs):
    """Relative difference numeric / analytic - 1 of the two steady states."""
    return steady_state_numeric(p, sigma_bs) / steady_state_sigma_as(p, sigma_bs) - 1.0


def _affine_coefficients(p, sigma_bs):
    """dsigma_as/dt = source - sink * sigma_as.

    N_a = A sigma_a + A_s sigma_as = (A_s + A/ratio) sigma_as with the wall
    density in isotherm equilibrium, and na_rate is affine in sigma_as at
    fixed sigma_bs.
    """
    r = p.isotherm
    capacity = p.spot_area + p.wall_area / r
    source = na_rate(p, SurfaceDensities.from_isotherm(p, sigma_bs, 0.0))
    # coefficient of sigma_as in -na_rate
    loss = p.wall_area * p.kab_walls * sigma_bs / r**2 + p.spot_area * p.kab_spot * sigma_bs
    return source / capacity, loss / capacity


def relaxation_time(p, sigma_bs):
    """1 / (decay rate) of the linearized a-atom population, s."""
    _, sink = _affine_coefficients(p, sigma_bs)
    if sink <= 0:
        raise DomainError("no decay: recombination rate is zero", MODULE)
    return 1.0 / sink


TRAJECTORY_COLUMNS = ("time_s", "sigma_a", "sigma_b", "sigma_as", "sigma_bs")


@dataclass(frozen=True)
class Trajectory:
    time: np.ndarray
    sigma_a: np.ndarray
    sigma_b: np.ndarray
    sigma_as: np.ndarray
    sigma_bs: np.ndarray

    def __len__(self):
        return len(self.time)

    @property
    def final(self):
        return SurfaceDensities(
            float(self.sigma_a[-1]), float(self.sigma_b[-1]), float(self.sigma_as[-1]), float(self.sigma_bs[-1])
        )

    def rows(self):
        return np.column_stack([self.time, self.sigma_a, self.sigma_b, self.sigma_as, self.sigma_bs]).tolist()

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TRAJECTORY_COLUMNS)
        for row in self.rows():
            w.writerow([f"{x:.9g}" for x in row])
        return buf.getvalue()


def integrate_kinetics(p, initial, t_end, tol=1e-6, h_min=1e-18):
    """Time-domain evolution of the a-atom population at fixed sigma_bs.

    Only ``initial.sigma_as`` and ``initial.sigma_bs`` are used; wall
    densities are reported in isotherm equilibrium with the spot.
    """
    if not t_end > 0:
        raise DomainError(f"t_end must be > 0, got {t_end!r}", MODULE)
    if not 0 < tol < 1:
        raise DomainError(f"tol must lie in (0, 1), got {tol!r}", MODULE)
    sigma_bs = initial.sigma_bs
    source, sink = _affine_coefficients(p, sigma_bs)
    h0 = t_end * 1e-6
    if sink > 0:
        h0 = min(h0, 1e-3 / sink)
    t, y, status = kernels.integrate_affine(
        float(initial.sigma_as), float(source), float(sink), float(t_end), float(tol), float(h0), float(h_min)
    )
    if status == kernels.STEP_UNDERFLOW:
        raise DomainError(f"step size fell below {h_min:g} s at t={t[-1]:.6g} s", MODULE)
    r = p.isotherm
    return Trajectory(
        time=t,
        sigma_a=y / r,
        sigma_b=np.full_like(t, sigma_bs / r),
        sigma_as=y,
        sigma_bs=np.full_like(t, sigma_bs),
    )
