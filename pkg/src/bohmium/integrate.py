"""Trajectory integration: fixed-step RK4, adaptive RKF4(5) and DP8(5,3).

The adaptive driver is generic over a scalar backend so the same code path
runs in float64 (``Precision.STANDARD``) and in 34-significant-digit
arithmetic (``Precision.EXTENDED``, mpmath).  Extended precision exists
because near maximal entanglement the requested tolerances sit far below
the float64 epsilon; in standard precision such tolerances are clamped to
4x machine epsilon and the clamp is recorded as a trajectory flag.

Uniform-grid samples are produced through each method's dense output
(seventh-order interpolant for DP85, cubic Hermite for RKF45, exact step
alignment for RK4), so the step size is never throttled by the sampling
grid.  Deviation-vector runs force step boundaries onto the
renormalization grid instead, which keeps the growth-factor bookkeeping
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np
from mpmath import mp

from . import _tableaus as tb
from .errors import DomainError, MaxStepsExceeded, NodeProximity, StepFloorReached
from .model import G_MIN_DEFAULT
from .velocity import make_field, make_field_with_jacobian

EPS64 = 2.220446049250313e-16
EXTENDED_DPS = 34
SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


class Method(Enum):
    RK4 = "rk4"
    RKF45 = "rkf45"
    DP85 = "dp85"


class Precision(Enum):
    STANDARD = "standard"
    EXTENDED = "extended"


@dataclass(frozen=True)
class IntegratorConfig:
    method: Method = Method.DP85
    atol: float = 1e-12
    rtol: float = 1e-10
    h_init: float = 1e-3
    h_min: float = 1e-12
    h_max: float = 1.0
    max_steps: int = 10_000_000
    precision: Precision = Precision.STANDARD

    def __post_init__(self):
        if not (self.h_min <= self.h_init <= self.h_max):
            raise DomainError("need h_min <= h_init <= h_max")
        if self.max_steps < 1:
            raise DomainError("max_steps must be >= 1")
        if self.atol <= 0 or self.rtol <= 0:
            raise DomainError("tolerances must be positive")


class Flag(NamedTuple):
    """An event recorded while integrating (floor hits, clamps, stalls)."""

    t: float
    kind: str
    detail: str


@dataclass
class Trajectory:
    """Uniformly sampled Bohmian trajectory with per-sample velocities."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    vx: np.ndarray
    vy: np.ndarray
    flags: list = field(default_factory=list)
    sample_dt: float = 0.0

    def __len__(self):
        return len(self.t)

    def samples(self):
        """Iterate (t, x, y, vx, vy) tuples."""
        return zip(self.t, self.x, self.y, self.vx, self.vy)


@dataclass
class DeviationLog:
    """Growth factors of the renormalized deviation vector."""

    times: np.ndarray
    factors: np.ndarray
    renorm_dt: float
    dev0: tuple


class _DenseHermite:
    """Cubic Hermite interpolant over one accepted step."""

    def __init__(self, t0, h, y0, f0, y1, f1):
        self.t0, self.h, self.y0, self.f0, self.y1, self.f1 = t0, h, y0, f0, y1, f1

    def __call__(self, ts):
        th = (ts - self.t0) / self.h
        out = []
        for y0, f0, y1, f1 in zip(self.y0, self.f0, self.y1, self.f1):
            d = y1 - y0
            out.append(y0 + th * (self.h * f0
                                  + th * (3.0 * d - self.h * (2.0 * f0 + f1)
                                          + th * (self.h * (f0 + f1) - 2.0 * d))))
        return out


class _DenseDP85:
    """Seventh-order interpolant built from the three extra stages."""

    def __init__(self, t0, h, y0, F):
        self.t0, self.h, self.y0, self.F = t0, h, y0, F

    def __call__(self, ts):
        x = (ts - self.t0) / self.h
        out = []
        for comp in range(len(self.y0)):
            acc = 0.0 * x
            for i, frow in enumerate(reversed(self.F)):
                acc = acc + frow[comp]
                acc = acc * (x if i % 2 == 0 else (1.0 - x))
            out.append(acc + self.y0[comp])
        return out


class _AdaptiveDriver:
    """Shared stepping loop for RKF45 and DP85 in either precision.

    ``n_aux`` trailing state components are treated as diagnostics (the
    deviation vector): their error scales are floored at DEV_ATOL/DEV_RTOL
    so that resolving a growth spike to twelve digits never throttles the
    step size chosen for the trajectory itself.
    """

    DEV_ATOL = 1e-10
    DEV_RTOL = 1e-8

    def __init__(self, rhs, dim, icfg, flags, n_aux=0):
        self.rhs = rhs
        self.dim = dim
        self.icfg = icfg
        self.flags = flags
        ext = icfg.precision is Precision.EXTENDED
        self.num = mp.mpf if ext else float
        self.extended = ext
        n = self.num
        self.rtol = n(icfg.rtol)
        if not ext and icfg.rtol < 4.0 * EPS64:
            self.rtol = n(4.0 * EPS64)
            flags.append(Flag(0.0, "rtol_clamped",
                              f"rtol {icfg.rtol:g} below 4*eps, using {float(self.rtol):g}"))
        self.atol = n(icfg.atol)
        self.atols = [self.atol] * dim
        self.rtols = [self.rtol] * dim
        for c in range(dim - n_aux, dim):
            self.atols[c] = max(self.atol, n(self.DEV_ATOL))
            self.rtols[c] = max(self.rtol, n(self.DEV_RTOL))
        if self.icfg.method is Method.DP85:
            self.A = tuple(tuple(n(a) for a in row) for row in tb.DP85_A)
            self.C = tuple(n(c) for c in tb.DP85_C)
            self.B = tuple(n(b) for b in tb.DP85_B)
            self.E3 = tuple(n(e) for e in tb.DP85_E3)
            self.E5 = tuple(n(e) for e in tb.DP85_E5)
            self.A_EX = tuple(tuple(n(a) for a in row) for row in tb.DP85_A_EXTRA)
            self.C_EX = tuple(n(c) for c in tb.DP85_C_EXTRA)
            self.D = tuple(tuple(n(d) for d in row) for row in tb.DP85_D)
            self.err_exp = 1.0 / 8.0
        else:
            self.A = tuple(tuple(n(a) for a in row) for row in tb.RKF45_A)
            self.C = tuple(n(c) for c in tb.RKF45_C)
            self.B = tuple(n(b) for b in tb.RKF45_B4)
            self.B_HI = tuple(n(b) for b in tb.RKF45_B5)
            self.err_exp = 1.0 / 5.0
        self.A_nz = tuple(tuple((j, a) for j, a in enumerate(row) if a != 0.0)
                          for row in self.A)
        self.B_nz = tuple((j, b) for j, b in enumerate(self.B) if b != 0.0)
        self.C_tail = tuple(self.C[1:]) + (n(1.0),)

    # -- single embedded step ------------------------------------------------

    def _stage_states(self, t, y, f0, h):
        """All stage derivatives; dimension-specialized hot loops."""
        rhs = self.rhs
        K = [f0]
        rows = self.A_nz + (self.B_nz,)
        if self.dim == 4:
            y0, y1, y2, y3 = y
            for row, c in zip(rows, self.C_tail):
                s0 = s1 = s2 = s3 = 0.0
                for j, a in row:
                    kj = K[j]
                    s0 += a * kj[0]
                    s1 += a * kj[1]
                    s2 += a * kj[2]
                    s3 += a * kj[3]
                yi = (y0 + h * s0, y1 + h * s1, y2 + h * s2, y3 + h * s3)
                K.append(rhs(t + c * h, yi))
        elif self.dim == 2:
            y0, y1 = y
            for row, c in zip(rows, self.C_tail):
                s0 = s1 = 0.0
                for j, a in row:
                    kj = K[j]
                    s0 += a * kj[0]
                    s1 += a * kj[1]
                yi = (y0 + h * s0, y1 + h * s1)
                K.append(rhs(t + c * h, yi))
        else:
            for row, c in zip(rows, self.C_tail):
                yi = list(y)
                for j, a in row:
                    kj = K[j]
                    for comp in range(self.dim):
                        yi[comp] += h * a * kj[comp]
                K.append(rhs(t + c * h, yi))
        # the final "stage" above was built with the propagation weights:
        # its state is y_new and its derivative is f_new
        f_new = K.pop()
        return K, f_new

    def step(self, t, y, f0, h):
        """One attempted step; returns (y_new, f_new, err_norm, K)."""
        K, f_new = self._stage_states(t, y, f0, h)
        y_new = list(y)
        for j, b in self.B_nz:
            kj = K[j]
            for c in range(self.dim):
                y_new[c] += h * b * kj[c]

        if self.icfg.method is Method.DP85:
            K.append(f_new)
            e5sq = e3sq = 0.0 * h
            for c in range(self.dim):
                sc = self.atols[c] + self.rtols[c] * max(abs(y[c]), abs(y_new[c]))
                s5 = s3 = 0.0 * h
                for j in range(13):
                    kj = K[j][c]
                    s5 += self.E5[j] * kj
                    s3 += self.E3[j] * kj
                e5sq += (s5 / sc) ** 2
                e3sq += (s3 / sc) ** 2
            if e5sq == 0.0 and e3sq == 0.0:
                err = 0.0
            else:
                denom = (e5sq + 0.01 * e3sq) * self.dim
                err = float(abs(h) * e5sq / (denom ** 0.5))
        else:
            errsq = 0.0 * h
            for c in range(self.dim):
                sc = self.atols[c] + self.rtols[c] * max(abs(y[c]), abs(y_new[c]))
                d = 0.0 * h
                for j in range(6):
                    d += (self.B_HI[j] - self.B[j]) * K[j][c]
                errsq += (h * d / sc) ** 2
            err = float((errsq / self.dim) ** 0.5)
        return y_new, f_new, err, K

    def dense(self, t, h, y, f0, y_new, f_new, K):
        if self.icfg.method is not Method.DP85:
            return _DenseHermite(t, h, y, f0, y_new, f_new)
        for i, (row, cex) in enumerate(zip(self.A_EX, self.C_EX)):
            yi = list(y)
            for j, a in enumerate(row):
                if a != 0.0:
                    kj = K[j]
                    for c in range(self.dim):
                        yi[c] += h * a * kj[c]
            K.append(self.rhs(t + cex * h, yi))
        F = []
        dy = [y_new[c] - y[c] for c in range(self.dim)]
        F.append(dy)
        F.append([h * f0[c] - dy[c] for c in range(self.dim)])
        F.append([2.0 * dy[c] - h * (f_new[c] + f0[c]) for c in range(self.dim)])
        for row in self.D:
            F.append([h * sum(row[j] * K[j][c] for j in range(16) if row[j] != 0.0)
                      for c in range(self.dim)])
        return _DenseDP85(t, h, y, F)


def _snap_tol(extended):
    return 1e-25 if extended else 5e-13


def _run_adaptive(rhs, dim, ic, t_end, icfg, sample_dt,
                  renorm_dt=None, on_renorm=None, n_aux=0):
    """Drive an adaptive method from ic.t to t_end, sampling on a uniform grid.

    Returns (sample lists, final state); raises StepFloorReached or
    MaxStepsExceeded with the partial trajectory attached by the caller.
    """
    flags = []
    drv = _AdaptiveDriver(rhs, dim, icfg, flags, n_aux=n_aux)
    n = drv.num
    t0 = n(ic[2])
    te = n(t_end)
    direction = 1.0 if t_end >= ic[2] else -1.0
    y = [n(ic[0]), n(ic[1])] + [n(v) for v in ic[3:]]
    snap = _snap_tol(drv.extended)
    snap_grid = 5e-13
    sdt = n(sample_dt if direction > 0 else -sample_dt)
    rdt = None if renorm_dt is None else n(renorm_dt if direction > 0 else -renorm_dt)

    ts_out, states_out = [], []

    def emit(t_val, state):
        ts_out.append(float(t_val))
        states_out.append([float(v) for v in state])

    emit(t0, y)
    if te == t0:
        return ts_out, states_out, flags, y

    f0 = rhs(t0, y)
    h_abs = min(icfg.h_init, icfg.h_max, abs(float(te - t0)))
    h_min_floor = icfg.h_min

    t = t0
    i_sample = 1
    i_renorm = 1
    err_prev = None
    rejected = False
    steps = 0

    while True:
        if steps >= icfg.max_steps:
            raise MaxStepsExceeded(f"exceeded {icfg.max_steps} step attempts",
                                   (ts_out, states_out, flags))
        steps += 1

        limit = abs(float(te - t))
        if renorm_dt is not None:
            t_ren = t0 + rdt * i_renorm
            limit = min(limit, abs(float(t_ren - t)))
        h_eff = min(h_abs, limit) if limit > 0 else h_abs
        h = n(h_eff) * direction
        t_new = t + h

        if abs(float(te - t_new)) <= snap * max(1.0, abs(float(te))):
            t_new = te
            h = te - t
        elif renorm_dt is not None:
            t_ren = t0 + rdt * i_renorm
            if abs(float(t_ren - t_new)) <= snap * max(1.0, abs(float(t_ren))):
                t_new = t_ren
                h = t_ren - t

        try:
            y_new, f_new, err, K = drv.step(t, y, f0, h)
            stalled = None
        except NodeProximity as exc:
            stalled = exc
            err = math.inf

        if err > 1.0 or stalled is not None:
            if h_eff <= h_min_floor * 1.0000001:
                kind = "node_proximity" if stalled is not None else "step_floor"
                flags.append(Flag(float(t), kind,
                                  f"h={h_eff:.3e} at floor with failing step"))
                emit(t, y)
                raise StepFloorReached(
                    f"step floor {icfg.h_min:g} reached at t={float(t):.6g}",
                    (ts_out, states_out, flags))
            if stalled is not None:
                h_abs = max(h_min_floor, h_eff * 0.25)
            else:
                h_abs = max(h_min_floor, h_eff * max(MIN_FACTOR, SAFETY * err ** (-drv.err_exp)))
            rejected = True
            continue

        # accepted: emit any samples inside (t, t_new]; grid times derive
        # from float inputs, so their comparisons use float-scale slack
        # even in extended precision
        interp = None
        while True:
            t_s = t0 + sdt * i_sample
            if direction * float(t_s - t_new) > snap_grid * max(1.0, abs(float(t_new))):
                break
            if direction * float(t_s - te) > snap_grid * max(1.0, abs(float(te))):
                break
            if abs(float(t_s - t_new)) <= snap_grid * max(1.0, abs(float(t_new))):
                emit(t_s, y_new)
            else:
                if interp is None:
                    try:
                        interp = drv.dense(t, h, y, f0, y_new, f_new, K)
                    except NodeProximity:
                        # extra interpolation stages grazed a node: fall back
                        # to the Hermite form, which needs no new evaluations
                        interp = _DenseHermite(t, h, y, f0, y_new, f_new)
                emit(t_s, interp(t_s))
            i_sample += 1

        if renorm_dt is not None:
            t_ren = t0 + rdt * i_renorm
            if abs(float(t_ren - t_new)) <= snap * max(1.0, abs(float(t_ren))):
                f_new = list(f_new)
                if not on_renorm(float(t_ren), y_new, f_new):
                    f_new = list(rhs(t_new, y_new))
                i_renorm += 1

        # controller update
        if err == 0.0:
            fac = MAX_FACTOR
        elif err_prev is None:
            fac = SAFETY * err ** (-drv.err_exp)
        else:
            fac = SAFETY * err ** (-0.7 * drv.err_exp) * err_prev ** (0.4 * drv.err_exp)
        fac = min(MAX_FACTOR, max(MIN_FACTOR, fac))
        if rejected:
            fac = min(1.0, fac)
        h_abs = min(icfg.h_max, h_eff * fac)
        err_prev = max(err, 1e-10)
        rejected = False

        t, y, f0 = t_new, y_new, f_new
        if t == te or abs(float(te - t)) <= snap * max(1.0, abs(float(te))):
            break

    return ts_out, states_out, flags, y


def _run_rk4(rhs, dim, ic, t_end, icfg, sample_dt, renorm_dt=None, on_renorm=None):
    """Fixed-step RK4 aligned so every sample/renorm boundary is a step end."""
    flags = []
    unit = sample_dt if renorm_dt is None else min(sample_dt, renorm_dt)
    for other in (sample_dt, renorm_dt or sample_dt):
        ratio = other / unit
        if abs(ratio - round(ratio)) > 1e-9:
            raise DomainError("RK4 needs commensurate sample_dt and renorm_dt")
    m_sample = round(sample_dt / unit)
    m_renorm = round((renorm_dt or sample_dt) / unit)
    n_sub = max(1, math.ceil(unit / icfg.h_init - 1e-12))
    h = (unit / n_sub) * (1.0 if t_end >= ic[2] else -1.0)

    t0 = ic[2]
    y = list(ic[:2]) + list(ic[3:])
    ts_out = [t0]
    states_out = [list(y)]
    n_units = round(abs(t_end - t0) / unit)
    if abs(n_units * unit - abs(t_end - t0)) > 1e-9 * max(1.0, abs(t_end)):
        raise DomainError("RK4 needs t_end - t0 to be a multiple of the sample grid")
    steps_total = n_units * n_sub
    if steps_total > icfg.max_steps:
        raise MaxStepsExceeded(f"{steps_total} fixed steps exceed max_steps",
                               (ts_out, states_out, flags))
    b = tb.RK4_B
    for i in range(1, n_units + 1):
        for j in range(n_sub):
            t = t0 + ((i - 1) * n_sub + j) * h
            k1 = rhs(t, y)
            y2 = [y[c] + 0.5 * h * k1[c] for c in range(dim)]
            k2 = rhs(t + 0.5 * h, y2)
            y3 = [y[c] + 0.5 * h * k2[c] for c in range(dim)]
            k3 = rhs(t + 0.5 * h, y3)
            y4 = [y[c] + h * k3[c] for c in range(dim)]
            k4 = rhs(t + h, y4)
            y = [y[c] + h * (b[0] * k1[c] + b[1] * k2[c] + b[2] * k3[c] + b[3] * k4[c])
                 for c in range(dim)]
        t_b = t0 + i * unit * (1.0 if t_end >= t0 else -1.0)
        if renorm_dt is not None and i % m_renorm == 0:
            on_renorm(t_b, y, [0.0] * dim)
        if i % m_sample == 0:
            ts_out.append(t_b)
            states_out.append(list(y))
    return ts_out, states_out, flags, y


def _finalize(cfg, ts, states, flags, sample_dt, g_min):
    fld = make_field(cfg, g_min=g_min)
    t = np.asarray(ts, dtype=float)
    xs = np.asarray([s[0] for s in states], dtype=float)
    ys = np.asarray([s[1] for s in states], dtype=float)
    vx = np.empty_like(xs)
    vy = np.empty_like(ys)
    for i in range(len(t)):
        try:
            vx[i], vy[i] = fld(xs[i], ys[i], t[i])
        except NodeProximity:
            vx[i] = vy[i] = math.nan
            flags.append(Flag(float(t[i]), "node_proximity", "sample inside node floor"))
    return Trajectory(t=t, x=xs, y=ys, vx=vx, vy=vy, flags=flags, sample_dt=sample_dt)


def integrate(cfg, ic, t_end, icfg=None, sample_dt=0.01, g_min=G_MIN_DEFAULT):
    """Integrate a Bohmian trajectory from ``ic`` to ``t_end``.

    Returns a :class:`Trajectory` sampled every ``sample_dt``.  Raises
    :class:`StepFloorReached` / :class:`MaxStepsExceeded` with the partial
    trajectory attached when the error controller cannot proceed.
    """
    icfg = icfg or IntegratorConfig()
    extended = icfg.precision is Precision.EXTENDED
    lib = mp if extended else math
    ctx = mp.workdps(EXTENDED_DPS) if extended else _nullctx()
    with ctx:
        fld = make_field(cfg, g_min=g_min, lib=lib)

        def rhs(t, y):
            vx, vy = fld(y[0], y[1], t)
            return (vx, vy)

        ic4 = (ic.x, ic.y, ic.t)
        try:
            if icfg.method is Method.RK4:
                ts, states, flags, _ = _run_rk4(rhs, 2, ic4, t_end, icfg, sample_dt)
            else:
                ts, states, flags, _ = _run_adaptive(rhs, 2, ic4, t_end, icfg, sample_dt)
        except (StepFloorReached, MaxStepsExceeded) as exc:
            ts, states, flags = exc.trajectory
            exc.trajectory = _finalize(cfg, ts, states, flags, sample_dt, g_min)
            raise
    return _finalize(cfg, ts, states, flags, sample_dt, g_min)


def integrate_with_deviation(cfg, ic, dev0, t_end, icfg=None, renorm_dt=0.05,
                             sample_dt=None, g_min=G_MIN_DEFAULT, jac_h=1e-6):
    """Co-integrate the trajectory with a linearized deviation vector.

    The deviation obeys xi' = J(x(t), t) xi with J the central-difference
    Jacobian of the velocity field.  Its length is recorded and reset to 1
    at every ``renorm_dt`` boundary; the log of the growth factors feeds
    the stretching-number series.  Returns (Trajectory, DeviationLog).
    """
    icfg = icfg or IntegratorConfig()
    if sample_dt is None:
        sample_dt = renorm_dt
    if renorm_dt <= 0:
        raise DomainError("renorm_dt must be positive")
    nrm = math.hypot(*dev0)
    if nrm == 0 or not math.isfinite(nrm):
        raise DomainError("dev0 must be a nonzero 2-vector")
    dev0 = (dev0[0] / nrm, dev0[1] / nrm)

    extended = icfg.precision is Precision.EXTENDED
    lib = mp if extended else math
    ctx = mp.workdps(EXTENDED_DPS) if extended else _nullctx()
    times, factors = [], []
    with ctx:
        fj = make_field_with_jacobian(cfg, g_min=g_min, h=jac_h, lib=lib)

        def rhs(t, y):
            vx, vy, j11, j12, j21, j22 = fj(y[0], y[1], t)
            return (vx, vy, j11 * y[2] + j12 * y[3], j21 * y[2] + j22 * y[3])

        def on_renorm(t_b, y_new, f_new):
            g = math.hypot(float(y_new[2]), float(y_new[3]))
            if g <= 0 or not math.isfinite(g):
                raise DomainError(f"deviation norm degenerate ({g}) at t={t_b}")
            times.append(t_b)
            factors.append(g)
            y_new[2] /= g
            y_new[3] /= g
            # the variational RHS is linear in xi, so the cached derivative
            # only needs the same rescaling
            f_new[2] /= g
            f_new[3] /= g
            return True

        ic5 = (ic.x, ic.y, ic.t, dev0[0], dev0[1])
        try:
            if icfg.method is Method.RK4:
                ts, states, flags, _ = _run_rk4(rhs, 4, ic5, t_end, icfg, sample_dt,
                                                renorm_dt, on_renorm)
            else:
                ts, states, flags, _ = _run_adaptive(rhs, 4, ic5, t_end, icfg,
                                                     sample_dt, renorm_dt, on_renorm,
                                                     n_aux=2)
        except (StepFloorReached, MaxStepsExceeded) as exc:
            ts, states, flags = exc.trajectory
            exc.trajectory = _finalize(cfg, ts, states, flags, sample_dt, g_min)
            raise
    traj = _finalize(cfg, ts, states, flags, sample_dt, g_min)
    log = DeviationLog(times=np.asarray(times), factors=np.asarray(factors),
                       renorm_dt=renorm_dt, dev0=dev0)
    return traj, log


class _nullctx:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False
