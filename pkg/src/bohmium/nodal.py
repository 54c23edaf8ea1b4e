"""Nodal points of the wavefunction and the X-points accompanying them.

Nodes solve Re(state) = Im(state) = 0 and move along closed-form curves
indexed by an integer k whose parity is fixed by the sign of c1*c2.  In a
frame comoving with a node, the flow has a second stagnation point (the
X-point) where the Bohmian velocity equals the node velocity; together
they form the complex that scatters passing trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from .errors import NodalDegeneracy, NoConvergence, OnlyNodeRoot
from .model import G_MIN_DEFAULT, PhasePoint, StateKind
from .velocity import make_field, velocity_jacobian

K_RANGE_DEFAULT = range(-9, 10)
DEGENERACY_MARGIN = 1e-8
X_SEED_RADIUS = 0.3


@dataclass(frozen=True)
class NodalPoint:
    k: int
    x: float
    y: float
    vx: float
    vy: float
    t: float
    kind: StateKind


@dataclass(frozen=True)
class XPoint:
    x: float
    y: float
    residual: float
    node: NodalPoint


def _log_ratio(cfg):
    if cfg.c1 == 0.0 or cfg.c2 == 0.0:
        raise NodalDegeneracy("product state: nodal points are at infinity")
    return math.log(abs(cfg.c1 / cfg.c2))


def _phases(cfg, t):
    return (cfg.osc_x.omega * t - cfg.osc_x.sigma,
            cfg.osc_y.omega * t - cfg.osc_y.sigma)


def allowed_parity(cfg):
    """k is odd for c1*c2 > 0 and even for c1*c2 < 0."""
    return 1 if cfg.c1 * cfg.c2 > 0 else 0


def nodal_position(k, t, cfg, margin=DEGENERACY_MARGIN):
    """Closed-form position of node k at time t (no parity filtering)."""
    lam = _log_ratio(cfg)
    th_x, th_y = _phases(cfg, t)
    den = math.sin(th_x - th_y)
    if abs(den) < margin:
        raise NodalDegeneracy(
            f"sin(theta_x - theta_y) = {den:.2e} within margin at t={t}")
    sq2 = math.sqrt(2.0)
    kpi = k * math.pi
    x = sq2 * (kpi * math.cos(th_y) + lam * math.sin(th_y)) / (
        4.0 * math.sqrt(cfg.osc_x.omega) * cfg.osc_x.a0 * den)
    y = sq2 * (kpi * math.cos(th_x) + lam * math.sin(th_x)) / (
        4.0 * math.sqrt(cfg.osc_y.omega) * cfg.osc_y.a0 * den)
    if cfg.kind is StateKind.PHI:
        y = -y
    return x, y


def nodal_velocity(k, t, cfg, h=1e-7, margin=DEGENERACY_MARGIN):
    """Velocity of node k by Richardson-extrapolated central differences."""
    pm = [nodal_position(k, t + s * h, cfg, margin) for s in (-2, -1, 1, 2)]
    vx = (8.0 * (pm[2][0] - pm[1][0]) - (pm[3][0] - pm[0][0])) / (12.0 * h)
    vy = (8.0 * (pm[2][1] - pm[1][1]) - (pm[3][1] - pm[0][1])) / (12.0 * h)
    return vx, vy


def nodal_positions(t, k_range=K_RANGE_DEFAULT, cfg=None, margin=DEGENERACY_MARGIN,
                    with_velocity=True):
    """All nodal points at time t for the parity-admissible k in k_range."""
    parity = allowed_parity(cfg)
    out = []
    for k in k_range:
        if k % 2 != parity:
            continue
        x, y = nodal_position(k, t, cfg, margin)
        if with_velocity:
            vx, vy = nodal_velocity(k, t, cfg, margin=margin)
        else:
            vx = vy = math.nan
        out.append(NodalPoint(k=k, x=x, y=y, vx=vx, vy=vy, t=t, kind=cfg.kind))
    return out


def nodal_ratio(k, t, cfg, margin=DEGENERACY_MARGIN):
    """The ratio y_nod/x_nod in closed form.

    Written directly from the position formulas: the frequency factor
    sqrt(omega_x/omega_y) multiplies the trigonometric quotient, and the
    PHI state flips the overall sign.
    """
    lam = _log_ratio(cfg)
    th_x, th_y = _phases(cfg, t)
    kpi = k * math.pi
    num = kpi * math.cos(th_x) + lam * math.sin(th_x)
    den = kpi * math.cos(th_y) + lam * math.sin(th_y)
    if abs(den) < margin * max(1.0, abs(kpi)):
        raise NodalDegeneracy(f"x_nod vanishes at (k={k}, t={t})")
    r = math.sqrt(cfg.osc_x.omega / cfg.osc_y.omega) * num / den
    return -r if cfg.kind is StateKind.PHI else r


def find_x_points(node, cfg, r0=X_SEED_RADIUS, n_seeds=8, max_iter=50,
                  residual_tol=1e-10, g_min=G_MIN_DEFAULT, dedupe=1e-6):
    """All distinct comoving stagnation points near a node, best first.

    Newton iteration on F(p) = v(p) - v_node with a finite-difference
    Jacobian, seeded from ``n_seeds`` points on a ring of radius r0 around
    the node.  Roots closer than r0/10 to the node are discarded (that
    stagnation point is the node itself).
    """
    fld = make_field(cfg, g_min=g_min)
    t = node.t
    vnx, vny = node.vx, node.vy
    roots = []
    converged_any = False
    for i in range(n_seeds):
        ang = 2.0 * math.pi * i / n_seeds
        px = node.x + r0 * math.cos(ang)
        py = node.y + r0 * math.sin(ang)
        ok = False
        for _ in range(max_iter):
            try:
                vx, vy = fld(px, py, t)
                fx, fy = vx - vnx, vy - vny
                j = velocity_jacobian(PhasePoint(px, py, t), cfg, g_min=g_min)
            except Exception:
                break
            det = j.dvx_dx * j.dvy_dy - j.dvx_dy * j.dvy_dx
            if det == 0.0 or not math.isfinite(det):
                break
            dx = -(j.dvy_dy * fx - j.dvx_dy * fy) / det
            dy = -(-j.dvy_dx * fx + j.dvx_dx * fy) / det
            step = math.hypot(dx, dy)
            if step > 1.0:      # keep Newton from tunnelling across the plane
                dx, dy = dx / step, dy / step
            px, py = px + dx, py + dy
            if not (math.isfinite(px) and math.isfinite(py)):
                break
            try:
                vx, vy = fld(px, py, t)
            except Exception:
                break
            res = math.hypot(vx - vnx, vy - vny)
            if res < residual_tol:
                ok = True
                break
        if not ok:
            continue
        converged_any = True
        if math.hypot(px - node.x, py - node.y) <= r0 / 10.0:
            continue
        res = math.hypot(*(v - w for v, w in zip(fld(px, py, t), (vnx, vny))))
        if all(math.hypot(px - r.x, py - r.y) > dedupe for r in roots):
            roots.append(XPoint(x=px, y=py, residual=res, node=node))
    if not roots:
        if converged_any:
            raise OnlyNodeRoot(f"all seeds collapsed onto the node k={node.k}")
        raise NoConvergence(f"no Newton seed converged for node k={node.k} at t={t}")
    roots.sort(key=lambda r: r.residual)
    return roots


def find_x_point(node, cfg, **kwargs):
    """Best (smallest-residual) X-point companion of a node."""
    return find_x_points(node, cfg, **kwargs)[0]


def npxpc_encounters(traj, cfg, k_range=K_RANGE_DEFAULT, radius=0.5,
                     x_margin=3.0, margin=DEGENERACY_MARGIN,
                     g_min=G_MIN_DEFAULT):
    """Samples where the trajectory comes within ``radius`` of a complex.

    Node distances come from the closed forms on the whole (sample, k)
    grid; X-points are only solved for where the node is already within
    ``radius + x_margin``, since the companion sits at a bounded distance
    from its node on the scales that matter here.  Returns a list of
    (t, k, distance) with one entry per (sample, k) hit.
    """
    try:
        lam = _log_ratio(cfg)
    except NodalDegeneracy:
        return []     # product state: no finite complexes to encounter
    parity = allowed_parity(cfg)
    ks = np.array([k for k in k_range if k % 2 == parity], dtype=float)
    if len(ks) == 0:
        return []
    th_x = cfg.osc_x.omega * traj.t - cfg.osc_x.sigma
    th_y = cfg.osc_y.omega * traj.t - cfg.osc_y.sigma
    den = np.sin(th_x - th_y)
    valid = np.abs(den) >= margin
    cx = 4.0 * math.sqrt(cfg.osc_x.omega) * cfg.osc_x.a0
    cy = 4.0 * math.sqrt(cfg.osc_y.omega) * cfg.osc_y.a0
    sq2 = math.sqrt(2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        xn = sq2 * (np.outer(ks * math.pi, np.cos(th_y)) + lam * np.sin(th_y)) / (cx * den)
        yn = sq2 * (np.outer(ks * math.pi, np.cos(th_x)) + lam * np.sin(th_x)) / (cy * den)
    if cfg.kind is StateKind.PHI:
        yn = -yn
    dist = np.hypot(xn - traj.x, yn - traj.y)
    dist[:, ~valid] = np.inf

    out = []
    candidates = np.argwhere(dist <= radius + x_margin)
    for ik, it in candidates:
        k = int(ks[ik])
        t = float(traj.t[it])
        d_node = float(dist[ik, it])
        d_best = d_node
        try:
            node = NodalPoint(k=k, x=float(xn[ik, it]), y=float(yn[ik, it]),
                              vx=0.0, vy=0.0, t=t, kind=cfg.kind)
            vx, vy = nodal_velocity(k, t, cfg, margin=margin)
            node = NodalPoint(k=k, x=node.x, y=node.y, vx=vx, vy=vy, t=t,
                              kind=cfg.kind)
            for xp in find_x_points(node, cfg, g_min=g_min):
                d_best = min(d_best, math.hypot(xp.x - traj.x[it], xp.y - traj.y[it]))
        except Exception:
            pass
        if d_best < radius:
            out.append((t, k, d_best))
    out.sort()
    return out
