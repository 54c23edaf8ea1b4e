"""Coherent-state wavefunctions and the two entangled two-qubit states.

Everything here works in natural units (hbar = m = 1).  A single harmonic
mode is described by :class:`OscillatorParams`; the full guiding state of
the planar system by :class:`SystemConfig`.  The right/left qubit basis
states are coherent states whose initial phases differ by pi, so that at
t = 0 their Gaussian packets sit symmetrically displaced from the origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import DomainError, OverflowGuard

TWO_PI = 2.0 * math.pi

# Scaled probability densities at or below this floor count as "at a node".
G_MIN_DEFAULT = 1e-300


class StateKind(Enum):
    """Which two-qubit superposition guides the particles."""

    PSI = "psi"    # c1|R>|L> + c2|L>|R>
    PHI = "phi"    # c1|R>|R> + c2|L>|L>


class PhasePoint(NamedTuple):
    """A configuration-space point (x, y) at time t."""

    x: float
    y: float
    t: float


@dataclass(frozen=True)
class OscillatorParams:
    """One harmonic mode: angular frequency, initial phase, amplitude |A(0)|."""

    omega: float
    sigma: float = 0.0
    a0: float = 2.5

    def __post_init__(self):
        if not (self.omega > 0.0) or not math.isfinite(self.omega):
            raise DomainError(f"omega must be positive, got {self.omega}")
        if not (self.a0 > 0.0) or not math.isfinite(self.a0):
            raise DomainError(f"a0 must be positive, got {self.a0}")
        object.__setattr__(self, "sigma", self.sigma % TWO_PI)


@dataclass(frozen=True)
class SystemConfig:
    """Full parameterization of the guiding wavefunction.

    c1, c2 are normalized on construction (their signs are kept; the sign
    of the product c1*c2 selects the parity of the nodal index k).
    """

    osc_x: OscillatorParams
    osc_y: OscillatorParams
    c1: float
    c2: float
    kind: StateKind = StateKind.PSI

    def __post_init__(self):
        norm = math.hypot(self.c1, self.c2)
        if norm == 0.0 or not math.isfinite(norm):
            raise DomainError("coefficients (c1, c2) must not both vanish")
        if abs(norm - 1.0) > 1e-12:
            object.__setattr__(self, "c1", self.c1 / norm)
            object.__setattr__(self, "c2", self.c2 / norm)


def bell_config(omega_x, omega_y, c2, kind=StateKind.PSI, a0=2.5):
    """Convenience constructor: real coefficients with c1 = sqrt(1 - c2^2)."""
    c2 = float(c2)
    if not -1.0 <= c2 <= 1.0:
        raise DomainError(f"c2 must lie in [-1, 1], got {c2}")
    c1 = math.sqrt(1.0 - c2 * c2)
    return SystemConfig(
        osc_x=OscillatorParams(omega=omega_x, a0=a0),
        osc_y=OscillatorParams(omega=omega_y, a0=a0),
        c1=c1,
        c2=c2,
        kind=kind,
    )


def coherent_amplitude(t, osc):
    """Eigenvalue A(t) = |A0| exp(i(sigma - omega t)) of the annihilation operator."""
    phase = osc.sigma - osc.omega * t
    return complex(osc.a0 * math.cos(phase), osc.a0 * math.sin(phase))


def coherent_value(x, t, osc):
    """Evaluate the coherent-state wavefunction Y(x, t) for one mode.

    The packet is a unit-norm Gaussian of width 1/sqrt(omega) whose center
    follows the classical oscillation sqrt(2/omega)|A0| cos(omega t - sigma).
    """
    a = coherent_amplitude(t, osc)
    w = osc.omega
    center = math.sqrt(2.0 / w) * a.real
    momentum = math.sqrt(2.0 * w) * a.imag
    xi = 0.5 * (osc.a0 ** 2 * math.sin(2.0 * (w * t - osc.sigma)) - w * t)
    mod = (w / math.pi) ** 0.25 * math.exp(-0.5 * w * (x - center) ** 2)
    return mod * cmath.exp(1j * (momentum * x + xi))


def overlap(a1, a2):
    """Squared overlap |<a2|a1>|^2 = exp(-|A1 - A2|^2) of two coherent states."""
    d = complex(a1) - complex(a2)
    return math.exp(-(d.real * d.real + d.imag * d.imag))


def _left(osc):
    return OscillatorParams(omega=osc.omega, sigma=osc.sigma + math.pi, a0=osc.a0)


def state_value(p, cfg):
    """Evaluate the guiding wavefunction at a phase point.

    PSI pairs right-x with left-y (and vice versa); PHI pairs right with
    right and left with left.
    """
    x, y, t = p
    yr_x = coherent_value(x, t, cfg.osc_x)
    yl_x = coherent_value(x, t, _left(cfg.osc_x))
    yr_y = coherent_value(y, t, cfg.osc_y)
    yl_y = coherent_value(y, t, _left(cfg.osc_y))
    if cfg.kind is StateKind.PSI:
        return cfg.c1 * yr_x * yl_y + cfg.c2 * yl_x * yr_y
    return cfg.c1 * yr_x * yr_y + cfg.c2 * yl_x * yl_y


def state_peak_scale(cfg):
    """Order-of-magnitude of max|state| over the plane, for relative checks."""
    norm = (cfg.osc_x.omega * cfg.osc_y.omega / math.pi ** 2) ** 0.25
    return norm * max(abs(cfg.c1), abs(cfg.c2))


@dataclass(frozen=True)
class AuxTerms:
    """Shared building blocks of the closed-form dynamics, log-rescaled.

    The exponentials of the raw definitions overflow once |x| grows past a
    few tens, so A, B, G (or C, D, Gp) are stored with the common factor
    exp(log_scale) divided out.  Ratios such as A/G are unaffected and all
    velocity formulas consume only those ratios.
    """

    f_x: float
    f_y: float
    g_x: float
    g_y: float
    log_scale: float
    A: float | None = None
    B: float | None = None
    G: float | None = None
    C: float | None = None
    D: float | None = None
    Gp: float | None = None


def _fg(x, y, t, cfg, lib=math):
    """The four bilinear exponents f_x, f_y, g_x, g_y at (x, y, t)."""
    ox, oy = cfg.osc_x, cfg.osc_y
    th_x = ox.omega * t - ox.sigma
    th_y = oy.omega * t - oy.sigma
    kx = lib.sqrt(2.0 * ox.omega) * ox.a0
    ky = lib.sqrt(2.0 * oy.omega) * oy.a0
    return (kx * lib.cos(th_x) * x, ky * lib.cos(th_y) * y,
            kx * lib.sin(th_x) * x, ky * lib.sin(th_y) * y)


def aux_terms(p, cfg):
    """Evaluate the log-rescaled A, B, G (PSI) or C, D, Gp (PHI) terms."""
    x, y, t = p
    f_x, f_y, g_x, g_y = _fg(x, y, t, cfg)
    for v in (f_x, f_y, g_x, g_y):
        if not math.isfinite(v):
            raise OverflowGuard(f"non-finite exponent at ({x}, {y}, t={t})")
    c1, c2 = cfg.c1, cfg.c2
    if cfg.kind is StateKind.PSI:
        m = max(4.0 * f_x, 4.0 * f_y)
        ex = math.exp(4.0 * f_x - m)
        ey = math.exp(4.0 * f_y - m)
        cross = 2.0 * c1 * c2 * math.exp(2.0 * f_x + 2.0 * f_y - m)
        ph = 2.0 * (g_x - g_y)
        return AuxTerms(f_x, f_y, g_x, g_y, m,
                        A=cross * math.sin(ph),
                        B=c1 * c1 * ex - c2 * c2 * ey,
                        G=c1 * c1 * ex + c2 * c2 * ey + cross * math.cos(ph))
    m = max(4.0 * (f_x + f_y), 0.0)
    exy = math.exp(4.0 * (f_x + f_y) - m)
    e0 = math.exp(-m)
    cross = 2.0 * c1 * c2 * math.exp(2.0 * (f_x + f_y) - m)
    ph = 2.0 * (g_x + g_y)
    return AuxTerms(f_x, f_y, g_x, g_y, m,
                    C=cross * math.sin(ph),
                    D=c1 * c1 * exy - c2 * c2 * e0,
                    Gp=c1 * c1 * exy + c2 * c2 * e0 + cross * math.cos(ph))
