"""From a Lissajous curve to a derailed trajectory.

With incommensurable frequencies (1 and sqrt(3)) a product state guides
the particle along a clean Lissajous figure.  Adding a tiny second
component (c2 = 2e-5) drags the wavefunction's nodal points through the
region the particle inhabits; scattering off one of the accompanying
X-points eventually throws the trajectory into a different part of the
plane.  The stretching-number series pinpoints the moment.

Run:  python demos/lissajous_to_chaos.py [--png out.png]
"""

import argparse
import math

import numpy as np

from bohmium import (IntegratorConfig, PhasePoint, bell_config, chaos_record,
                     derailment_time, integrate, integrate_with_deviation)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--png", help="optionally save the two trajectories")
    args = ap.parse_args()

    ic = PhasePoint(-2.0, 2.0, 0.0)
    icfg = IntegratorConfig(atol=1e-14, rtol=1e-13)

    product = bell_config(1.0, math.sqrt(3.0), 0.0, a0=2.5)
    traj0 = integrate(product, ic, 100.0, icfg, sample_dt=0.01)
    print(f"product state: x range [{traj0.x.min():.2f}, {traj0.x.max():.2f}], "
          f"y range [{traj0.y.min():.2f}, {traj0.y.max():.2f}]  (closed Lissajous)")

    tiny = bell_config(1.0, math.sqrt(3.0), 2e-5, a0=2.5)
    traj, log = integrate_with_deviation(tiny, ic, (1.0, 0.0), 100.0, icfg,
                                         renorm_dt=0.05, sample_dt=0.01)
    rec = chaos_record(log)
    td = derailment_time(traj, rec, char_period=2.0 * math.pi)
    print(f"c2 = 2e-5: {len(rec.events)} scattering events, derailment at t = {td}")
    after = traj.t > td
    print(f"  before: x in [{traj.x[~after].min():.2f}, {traj.x[~after].max():.2f}]")
    print(f"  after : x in [{traj.x[after].min():.2f}, {traj.x[after].max():.2f}]  "
          "(ejected to the lower right)")

    if args.png:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        fig, axes = plt.subplots(1, 2, figsize=(11, 5))
        axes[0].plot(traj0.x, traj0.y, lw=0.4)
        axes[0].set_title("product state")
        axes[1].plot(traj.x, traj.y, lw=0.4)
        axes[1].axvline(traj.x[np.searchsorted(traj.t, td)], ls=":", c="r")
        axes[1].set_title(f"c2 = 2e-5, derailment at t = {td:.2f}")
        for ax in axes:
            ax.set_xlabel("x")
            ax.set_ylabel("y")
        fig.savefig(args.png, dpi=130)
        print(f"wrote {args.png}")


if __name__ == "__main__":
    main()
