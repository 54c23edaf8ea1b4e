"""Isotropic oscillators: entanglement confines the motion.

With equal frequencies the nodal points retreat to infinity and every
trajectory runs along a straight line x + y = const.  Entanglement cannot
make this integrable motion chaotic; instead it shrinks the range of
motion and feeds energy into higher harmonics, until at maximal
entanglement the leading Fourier component doubles its frequency and the
orbital period halves.

Run:  python demos/isotropic_confinement.py
"""

import math

from bohmium import (IntegratorConfig, PhasePoint, bell_config,
                     harmonic_spectrum, integrate, period_estimate,
                     range_of_motion)
from bohmium.errors import NoPeriodFound

SQRT2_2 = math.sqrt(2.0) / 2.0


def main():
    ic = PhasePoint(2.928, 2.0, 0.0)
    icfg = IntegratorConfig(atol=1e-13, rtol=1e-12)
    print("c2         |dx|     leading m   a2/a1    period")
    for c2 in (0.0, 2e-5, 2e-2, 0.2, 0.4, 0.6, 0.701):
        cfg = bell_config(1.0, 1.0, c2, a0=2.0)
        traj = integrate(cfg, ic, 20.0 * math.pi, icfg, sample_dt=math.pi / 500)
        spec = harmonic_spectrum(traj, "x", base_omega=1.0)
        amps = dict(spec.harmonics)
        ratio = amps[2] / amps[1] if amps[1] > 0 else float("inf")
        try:
            period = f"{period_estimate(traj, tol=1e-5):.4f}"
        except NoPeriodFound:
            period = "-"
        print(f"{c2:0.6f}  {range_of_motion(traj, 'x'):7.4f}      {spec.leading_m}"
              f"      {ratio:7.4f}   {period}")
    print("\nThe maximally entangled point needs extended-precision")
    print("integration; run the preset for it:")
    print("  bohmium --scenario fig9-isotropic-sweep --out out/fig9")


if __name__ == "__main__":
    main()
