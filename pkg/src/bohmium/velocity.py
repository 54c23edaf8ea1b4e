"""Bohmian velocity fields for both entangled states.

Two independent evaluation routes are kept side by side:

* :func:`bohmian_velocity` uses the closed-form field written in terms of
  the log-rescaled A, B, G (or C, D, Gp) combinations, and is what the
  integrators consume.
* :func:`oracle_velocity` differentiates the wavefunction itself
  (analytically, factor by factor) and divides by the probability density.

Both must agree to 1e-10 relative wherever they are defined; the oracle is
the ground truth tied directly to the guidance equation.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import NodeProximity
from .model import G_MIN_DEFAULT, PhasePoint, StateKind, coherent_amplitude

__all__ = [
    "PhasePoint", "Velocity", "Jacobian2",
    "bohmian_velocity", "oracle_velocity", "velocity_jacobian",
    "make_field", "make_field_with_jacobian",
]


class Velocity(NamedTuple):
    vx: float
    vy: float


class Jacobian2(NamedTuple):
    dvx_dx: float
    dvx_dy: float
    dvy_dx: float
    dvy_dy: float


def make_field(cfg, g_min=G_MIN_DEFAULT, lib=math):
    """Build a fast (x, y, t) -> (vx, vy) closure for the closed-form field.

    ``lib`` supplies sin/cos/exp/sqrt and is either :mod:`math` (float64
    path) or :mod:`mpmath.mp` (extended-precision path); all constants are
    folded into the closure in the backend's number type.
    """
    ox, oy = cfg.osc_x, cfg.osc_y
    one = lib.sqrt(1)  # backend's unit, makes the constants backend-typed
    wx, wy = one * ox.omega, one * oy.omega
    sgx, sgy = one * ox.sigma, one * oy.sigma
    kx = lib.sqrt(2.0 * wx) * ox.a0
    ky = lib.sqrt(2.0 * wy) * oy.a0
    c1sq = (one * cfg.c1) ** 2
    c2sq = (one * cfg.c2) ** 2
    cc2 = 2.0 * (one * cfg.c1) * (one * cfg.c2)
    psi = cfg.kind is StateKind.PSI
    sin, cos, exp = lib.sin, lib.cos, lib.exp

    def field(x, y, t):
        th_x = wx * t - sgx
        th_y = wy * t - sgy
        cthx, sthx = cos(th_x), sin(th_x)
        cthy, sthy = cos(th_y), sin(th_y)
        f_x = kx * cthx * x
        f_y = ky * cthy * y
        if psi:
            m = 4.0 * f_x if f_x > f_y else 4.0 * f_y
            ex = exp(4.0 * f_x - m)
            ey = exp(4.0 * f_y - m)
            cross = cc2 * exp(2.0 * (f_x + f_y) - m)
            ph = 2.0 * (kx * sthx * x - ky * sthy * y)
            num_a = cross * sin(ph)
            num_b = c1sq * ex - c2sq * ey
            den = c1sq * ex + c2sq * ey + cross * cos(ph)
            if den <= g_min:
                raise NodeProximity(x, y, t, den)
            return (-kx * (num_a * cthx + num_b * sthx) / den,
                    ky * (num_a * cthy + num_b * sthy) / den)
        s = f_x + f_y
        m = 4.0 * s if s > 0.0 else 0.0
        exy = exp(4.0 * s - m)
        e0 = exp(-m)
        cross = cc2 * exp(2.0 * s - m)
        ph = 2.0 * (kx * sthx * x + ky * sthy * y)
        num_c = cross * sin(ph)
        num_d = c1sq * exy - c2sq * e0
        den = c1sq * exy + c2sq * e0 + cross * cos(ph)
        if den <= g_min:
            raise NodeProximity(x, y, t, den)
        return (-kx * (num_c * cthx + num_d * sthx) / den,
                -ky * (num_c * cthy + num_d * sthy) / den)

    return field


def make_field_with_jacobian(cfg, g_min=G_MIN_DEFAULT, h=1e-6, lib=math):
    """Closure returning velocity plus its central-difference Jacobian.

    The five stencil evaluations share the per-call trigonometry of t
    (steps are scaled by 1 + |coordinate| so the differences stay well
    conditioned far from the origin).
    """
    ox, oy = cfg.osc_x, cfg.osc_y
    one = lib.sqrt(1)
    wx, wy = one * ox.omega, one * oy.omega
    sgx, sgy = one * ox.sigma, one * oy.sigma
    kx = lib.sqrt(2.0 * wx) * ox.a0
    ky = lib.sqrt(2.0 * wy) * oy.a0
    c1sq = (one * cfg.c1) ** 2
    c2sq = (one * cfg.c2) ** 2
    cc2 = 2.0 * (one * cfg.c1) * (one * cfg.c2)
    psi = cfg.kind is StateKind.PSI
    sin, cos, exp = lib.sin, lib.cos, lib.exp

    sign_y = 1.0 if psi else -1.0

    gsign = -1.0 if psi else 1.0

    def field_jac(x, y, t):
        th_x = wx * t - sgx
        th_y = wy * t - sgy
        cthx, sthx = cos(th_x), sin(th_x)
        cthy, sthy = cos(th_y), sin(th_y)
        kxc, kxs = kx * cthx, kx * sthx
        kyc, kys = ky * cthy, ky * sthy
        hx = h * (1.0 + abs(x))
        hy = h * (1.0 + abs(y))

        # five-point stencil sharing the per-call trigonometry; offset
        # points reuse the base-point exponents along the other axis
        fx0, fy0 = kxc * x, kyc * y
        ph0 = 2.0 * (kxs * x + gsign * kys * y)
        dfx, dpx = kxc * hx, 2.0 * kxs * hx
        dfy, dpy = kyc * hy, gsign * 2.0 * kys * hy
        out = []
        for f_x, f_y, ph, px, py in (
            (fx0, fy0, ph0, x, y),
            (fx0 + dfx, fy0, ph0 + dpx, x + hx, y),
            (fx0 - dfx, fy0, ph0 - dpx, x - hx, y),
            (fx0, fy0 + dfy, ph0 + dpy, x, y + hy),
            (fx0, fy0 - dfy, ph0 - dpy, x, y - hy),
        ):
            if psi:
                m = 4.0 * f_x if f_x > f_y else 4.0 * f_y
                ea = exp(4.0 * f_x - m)
                eb = exp(4.0 * f_y - m)
                cross = cc2 * exp(2.0 * (f_x + f_y) - m)
            else:
                s = f_x + f_y
                m = 4.0 * s if s > 0.0 else 0.0
                ea = exp(4.0 * s - m)
                eb = exp(-m)
                cross = cc2 * exp(2.0 * s - m)
            num_a = cross * sin(ph)
            num_b = c1sq * ea - c2sq * eb
            den = c1sq * ea + c2sq * eb + cross * cos(ph)
            if den <= g_min:
                raise NodeProximity(px, py, t, den)
            out.append((-kx * (num_a * cthx + num_b * sthx) / den,
                        sign_y * ky * (num_a * cthy + num_b * sthy) / den))

        (vx, vy), (vxp, vyp), (vxm, vym), (vxq, vyq), (vxr, vyr) = out
        return (vx, vy,
                (vxp - vxm) / (2.0 * hx), (vxq - vxr) / (2.0 * hy),
                (vyp - vym) / (2.0 * hx), (vyq - vyr) / (2.0 * hy))

    return field_jac


def bohmian_velocity(p, cfg, g_min=G_MIN_DEFAULT):
    """Closed-form Bohmian velocity at a phase point."""
    vx, vy = make_field(cfg, g_min=g_min)(p.x, p.y, p.t)
    return Velocity(vx, vy)


def oracle_velocity(p, cfg, floor=G_MIN_DEFAULT):
    """Velocity from the guidance equation via analytic wavefunction gradients.

    Each one-dimensional coherent factor Y satisfies
    dY/dx = Y * (-omega (x - center) + i momentum), so the state gradient
    is assembled exactly, with no finite differences.
    """
    x, y, t = p

    def factors(osc, coord, flip):
        a = coherent_amplitude(t, osc)
        if flip:
            a = -a
        w = osc.omega
        center = math.sqrt(2.0 / w) * a.real
        momentum = math.sqrt(2.0 * w) * a.imag
        return complex(-w * (coord - center), momentum)

    from .model import _left, coherent_value  # local import keeps module load light

    yr_x = coherent_value(x, t, cfg.osc_x)
    yl_x = coherent_value(x, t, _left(cfg.osc_x))
    yr_y = coherent_value(y, t, cfg.osc_y)
    yl_y = coherent_value(y, t, _left(cfg.osc_y))
    dr_x = factors(cfg.osc_x, x, False)
    dl_x = factors(cfg.osc_x, x, True)
    dr_y = factors(cfg.osc_y, y, False)
    dl_y = factors(cfg.osc_y, y, True)

    if cfg.kind is StateKind.PSI:
        psi = cfg.c1 * yr_x * yl_y + cfg.c2 * yl_x * yr_y
        dpsi_dx = cfg.c1 * yr_x * dr_x * yl_y + cfg.c2 * yl_x * dl_x * yr_y
        dpsi_dy = cfg.c1 * yr_x * yl_y * dl_y + cfg.c2 * yl_x * yr_y * dr_y
    else:
        psi = cfg.c1 * yr_x * yr_y + cfg.c2 * yl_x * yl_y
        dpsi_dx = cfg.c1 * yr_x * dr_x * yr_y + cfg.c2 * yl_x * dl_x * yl_y
        dpsi_dy = cfg.c1 * yr_x * yr_y * dr_y + cfg.c2 * yl_x * yl_y * dl_y

    dens = psi.real * psi.real + psi.imag * psi.imag
    if dens <= floor:
        raise NodeProximity(x, y, t, dens)
    vx = (dpsi_dx.imag * psi.real - dpsi_dx.real * psi.imag) / dens
    vy = (dpsi_dy.imag * psi.real - dpsi_dy.real * psi.imag) / dens
    return Velocity(vx, vy)


def velocity_jacobian(p, cfg, h=1e-6, g_min=G_MIN_DEFAULT):
    """Central-difference Jacobian of the closed-form field at a point."""
    _, _, j11, j12, j21, j22 = make_field_with_jacobian(cfg, g_min=g_min, h=h)(p.x, p.y, p.t)
    return Jacobian2(j11, j12, j21, j22)
