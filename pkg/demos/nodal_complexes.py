"""Nodal points, their X-point companions, and a close encounter.

The wavefunction's zeros move along closed-form curves indexed by an odd
(or even) integer k.  Each node drags a second stagnation point of the
comoving flow, the X-point; trajectories approaching the pair get
scattered.  This script tabulates the k = 1 node over time, then zooms in
on the instant of the published derailment and shows how close the
particle sits to one of the X-points.

Run:  python demos/nodal_complexes.py
"""

import math

from bohmium import (IntegratorConfig, PhasePoint, bell_config, find_x_points,
                     integrate, nodal_positions)
from bohmium.errors import NodalDegeneracy

CFG = bell_config(1.0, math.sqrt(3.0), 2e-5, a0=2.5)


def main():
    print("k = 1 nodal point (speed spikes ~ escapes to infinity):")
    print("    t      x_nod     y_nod      speed")
    for i in range(1, 12):
        t = 0.4 * i
        try:
            node = nodal_positions(t, range(1, 2), CFG)[0]
        except NodalDegeneracy:
            print(f"  {t:5.2f}   (at infinity)")
            continue
        speed = math.hypot(node.vx, node.vy)
        print(f"  {t:5.2f}  {node.x:8.3f}  {node.y:8.3f}  {speed:9.1f}")

    t_d = 82.7
    traj = integrate(CFG, PhasePoint(-2.0, 2.0, 0.0), t_d,
                     IntegratorConfig(atol=1e-14, rtol=1e-13), sample_dt=0.05)
    px, py = traj.x[-1], traj.y[-1]
    print(f"\nparticle at the derailment instant t = {t_d}: ({px:.3f}, {py:.3f})")
    print("nearby complexes (node, X-point, particle distance to X-point):")
    best = math.inf
    for node in nodal_positions(t_d, range(-9, 10), CFG):
        try:
            xp = find_x_points(node, CFG)[0]
        except Exception:
            continue
        d = math.hypot(xp.x - px, xp.y - py)
        best = min(best, d)
        if d < 3.0:
            print(f"  k={node.k:+d}: node ({node.x:7.3f},{node.y:7.3f})  "
                  f"X ({xp.x:7.3f},{xp.y:7.3f})  dist {d:.3f}  residual {xp.residual:.1e}")
    print(f"closest X-point sits {best:.3f} away; the scattering it causes "
          "is what ejects the trajectory")


if __name__ == "__main__":
    main()
