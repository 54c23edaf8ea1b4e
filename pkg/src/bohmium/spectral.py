"""Harmonic content, range of motion and period estimation for trajectories.

Projections are taken directly against sin/cos of integer harmonics of a
given base frequency over a window that must hold an integer number of
base periods; with uniform samples this makes the discrete projections
orthogonal and leakage-free, so no window functions enter.  The mean is
removed first since the orbits oscillate about a displaced center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IncompleteWindow, NoPeriodFound, NonUniformSampling

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpectrumReport:
    base_omega: float
    harmonics: tuple          # ((m, amplitude), ...)
    leading_m: int
    delta_x: float


def _uniform_dt(t):
    dt = np.diff(t)
    if len(dt) == 0:
        raise NonUniformSampling("need at least two samples")
    d0 = float(np.median(dt))
    if np.any(np.abs(dt - d0) > 1e-9 * max(1.0, abs(d0))):
        raise NonUniformSampling("sample spacing varies beyond 1e-9")
    return d0


def _coordinate(traj, coordinate):
    if coordinate == "x":
        return traj.x
    if coordinate == "y":
        return traj.y
    raise ValueError(f"coordinate must be 'x' or 'y', got {coordinate!r}")


def harmonic_spectrum(traj, coordinate="x", base_omega=1.0, m_max=8):
    """Amplitudes of harmonics m = 1..m_max of the base frequency.

    The trajectory window must span an integer number of base periods
    (the duplicated closing sample, when present, is dropped so the
    discrete window is half-open).
    """
    t = traj.t
    u = _coordinate(traj, coordinate)
    dt = _uniform_dt(t)
    period = TWO_PI / base_omega
    span = t[-1] - t[0] + dt          # half-open span if we drop the last point
    cycles = (t[-1] - t[0]) / period
    if abs(cycles - round(cycles)) * period > 0.5 * dt or round(cycles) < 1:
        raise IncompleteWindow(
            f"window of {t[-1] - t[0]:.6g} is not an integer number of base periods")
    t = t[:-1]
    u = u[:-1].astype(float)
    du = u - u.mean()
    harmonics = []
    for m in range(1, m_max + 1):
        ph = m * base_omega * t
        s = 2.0 * float(np.mean(du * np.sin(ph)))
        c = 2.0 * float(np.mean(du * np.cos(ph)))
        harmonics.append((m, math.hypot(s, c)))
    leading = max(harmonics, key=lambda mc: mc[1])[0]
    full = _coordinate(traj, coordinate)
    return SpectrumReport(base_omega=base_omega, harmonics=tuple(harmonics),
                          leading_m=leading, delta_x=float(full.max() - full.min()))


def range_of_motion(traj, coordinate="x"):
    """max - min of one coordinate over the sampled window."""
    u = _coordinate(traj, coordinate)
    if len(u) == 0:
        raise NoPeriodFound("empty trajectory")
    return float(u.max() - u.min())


def _interp_cr(u, dt, t0, tq):
    """Catmull-Rom interpolation of uniformly sampled u at query times tq."""
    s = (np.asarray(tq) - t0) / dt
    i = np.clip(np.floor(s).astype(int), 1, len(u) - 3)
    th = s - i
    um1, u0, u1, u2 = u[i - 1], u[i], u[i + 1], u[i + 2]
    return u0 + 0.5 * th * (u1 - um1 + th * (
        2.0 * um1 - 5.0 * u0 + 4.0 * u1 - u2 + th * (3.0 * (u0 - u1) + u2 - um1)))


def period_estimate(traj, tol=1e-5, n_probes=64):
    """Smallest T with max_t ||p(t+T) - p(t)|| < tol over the first period.

    Grid candidates (local minima of the return distance to the initial
    point) are refined below the sampling resolution with a golden-section
    search on the probe-set distance, then validated against every sample
    of the first period.  Only candidates with at least three periods
    inside the window are considered.
    """
    t, x, y = traj.t, traj.x.astype(float), traj.y.astype(float)
    dt = _uniform_dt(t)
    n = len(t)
    span = t[-1] - t[0]
    d0 = np.hypot(x - x[0], y - y[0])
    vmax = float(np.nanmax(np.hypot(traj.vx, traj.vy)))
    pre = max(10.0 * tol, 1.5 * vmax * dt)
    j_max = int(span / (3.0 * dt) + 1e-9)   # candidates need 3 periods in window

    def dist_for(T, js):
        xq = _interp_cr(x, dt, t[0], t[js] + T)
        yq = _interp_cr(y, dt, t[0], t[js] + T)
        return float(np.max(np.hypot(xq - x[js], yq - y[js])))

    j = 2
    while j <= j_max:
        if d0[j] < pre and d0[j] <= d0[j - 1] and d0[j] <= d0[j + 1]:
            T0 = t[j] - t[0]
            period_pts = int(T0 / dt)
            js = np.arange(0, period_pts, max(1, period_pts // n_probes))
            lo, hi = T0 - 2.0 * dt, T0 + 2.0 * dt
            gr = (math.sqrt(5.0) - 1.0) / 2.0
            a, b = lo, hi
            c1 = b - gr * (b - a)
            c2 = a + gr * (b - a)
            f1, f2 = dist_for(c1, js), dist_for(c2, js)
            for _ in range(60):
                if f1 < f2:
                    b, c2, f2 = c2, c1, f1
                    c1 = b - gr * (b - a)
                    f1 = dist_for(c1, js)
                else:
                    a, c1, f1 = c1, c2, f2
                    c2 = a + gr * (b - a)
                    f2 = dist_for(c2, js)
            T = 0.5 * (a + b)
            js_all = np.arange(0, period_pts)
            keep = t[js_all] + T <= t[-1]
            if dist_for(T, js_all[keep]) < tol:
                return float(T)
            j += max(1, period_pts // 4)   # skip past this failed basin
        else:
            j += 1
    raise NoPeriodFound(f"no return below {tol:g} within a third of the window")
