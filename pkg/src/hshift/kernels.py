"""
Numeric inner loops.

Each kernel exists twice: a reference implementation (``*_py`` / ``*_numpy``)
and the public name, which is the numba-compiled loop when acceleration is
on and the reference otherwise. ``benchmarks/bench_kernels.py`` times both.
"""

import numpy as np

from ._accel import USE_NUMBA, jit

# Status codes returned by integrate_affine.
OK = 0
STEP_UNDERFLOW = 1


def breit_rabi_grid_numpy(A, gamma_e, gamma_p, fields):
    """Closed-form hydrogen energies (Hz) for every field in ``fields``.

    Columns are the states a, b, c, d. b and d are the unmixed |--> and
    |++> states; a and c come from the 2x2 block coupling |+-> and |-+>.
    """
    B = np.asarray(fields, dtype=np.float64)
    root = 0.5 * np.sqrt(A * A + ((gamma_e + gamma_p) * B) ** 2)
    lin = 0.5 * (gamma_e - gamma_p) * B
    out = np.empty(B.shape + (4,))
    out[..., 0] = -0.25 * A - root
    out[..., 1] = 0.25 * A - lin
    out[..., 2] = -0.25 * A + root
    out[..., 3] = 0.25 * A + lin
    return out


def _breit_rabi_grid_loop(A, gamma_e, gamma_p, fields):
    n = fields.shape[0]
    out = np.empty((n, 4))
    gs = gamma_e + gamma_p
    gd = gamma_e - gamma_p
    for i in range(n):
        B = fields[i]
        root = 0.5 * np.sqrt(A * A + (gs * B) * (gs * B))
        lin = 0.5 * gd * B
        out[i, 0] = -0.25 * A - root
        out[i, 1] = 0.25 * A - lin
        out[i, 2] = -0.25 * A + root
        out[i, 3] = 0.25 * A + lin
    return out


if USE_NUMBA:
    _breit_rabi_grid_jit = jit(_breit_rabi_grid_loop)

    def breit_rabi_grid(A, gamma_e, gamma_p, fields):
        B = np.ascontiguousarray(np.atleast_1d(fields), dtype=np.float64)
        out = _breit_rabi_grid_jit(float(A), float(gamma_e), float(gamma_p), B.ravel())
        return out.reshape(np.shape(fields) + (4,))
else:
    breit_rabi_grid = breit_rabi_grid_numpy


def integrate_affine_py(y0, source, sink, t_end, tol, h0, h_min):
    """Integrate dy/dt = source - sink*y from t=0 to t_end.

    Classical RK4 with step doubling: each step is taken once with h and
    twice with h/2, the difference (/15) is the local error estimate, and the
    accepted value carries the Richardson correction. The error is controlled
    relative to |y|.

    Returns ``(t, y, status)``; status is ``STEP_UNDERFLOW`` if the step had
    to shrink below ``h_min``.
    """

    def rk4(y, h):
        k1 = source - sink * y
        k2 = source - sink * (y + 0.5 * h * k1)
        k3 = source - sink * (y + 0.5 * h * k2)
        k4 = source - sink * (y + h * k3)
        return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0

    cap = 256
    ts = np.empty(cap)
    ys = np.empty(cap)
    ts[0] = 0.0
    ys[0] = y0
    n = 1
    t = 0.0
    y = y0
    h = h0
    status = OK
    while t_end - t > 1e-15 * t_end:
        if t + h > t_end:
            h = t_end - t
        full = rk4(y, h)
        half = rk4(rk4(y, 0.5 * h), 0.5 * h)
        err = abs(half - full) / 15.0
        scale = max(abs(y), abs(half))
        allowed = tol * scale
        if err <= allowed:
            t += h
            y = half + (half - full) / 15.0
            if n == cap:
                cap *= 2
                ts_new = np.empty(cap)
                ys_new = np.empty(cap)
                ts_new[:n] = ts[:n]
                ys_new[:n] = ys[:n]
                ts = ts_new
                ys = ys_new
            ts[n] = t
            ys[n] = y
            n += 1
            if err == 0.0:
                factor = 5.0
            else:
                factor = min(5.0, 0.9 * (allowed / err) ** 0.2)
            h *= factor
        else:
            h *= max(0.1, 0.9 * (allowed / err) ** 0.2)
            if h < h_min:
                status = STEP_UNDERFLOW
                break
    return ts[:n].copy(), ys[:n].copy(), status


integrate_affine = jit(integrate_affine_py)
