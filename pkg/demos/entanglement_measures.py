"""Entanglement of the two-qubit coherent state, three ways.

The superposition coefficient c2 controls how entangled the pair is: both
the entanglement entropy of the reduced qubit and the linear entropy of
the reduced density matrix vanish at c2 = 0 and c2 = 1 and peak at
c2 = sqrt(2)/2.  The analytic linear entropy carries exponentially small
corrections from the finite overlap of the right/left packets; a
Monte-Carlo evaluation of the purity integral confirms it directly.

Run:  python demos/entanglement_measures.py
"""

import math

from bohmium import (bell_config, entanglement_entropy, linear_entropy_numeric,
                     linear_entropy_psi, linear_entropy_qubit)

SQRT2_2 = math.sqrt(2.0) / 2.0


def main():
    print("c2        EE [nats]   LE (exact)  LE (qubit limit)")
    for c2 in (0.0, 0.1, 0.3, 0.5, SQRT2_2, 0.9, 1.0):
        c1 = math.sqrt(1.0 - c2 * c2)
        print(f"{c2:8.5f}  {entanglement_entropy(c2):9.6f}  "
              f"{linear_entropy_psi(c1, c2, 2.5):10.6f}  "
              f"{linear_entropy_qubit(c2):10.6f}")

    print("\nMonte-Carlo purity cross-checks (a0 = 2.5, one million samples):")
    for c2, t in ((SQRT2_2, 0.0), (SQRT2_2, math.pi), (0.3, 0.0)):
        cfg = bell_config(1.0, math.sqrt(3.0), c2, a0=2.5)
        est, err = linear_entropy_numeric(cfg, t=t, n_samples=1_000_000, seed=1)
        exact = linear_entropy_psi(cfg.c1, cfg.c2, 2.5)
        print(f"  c2={c2:.4f} t={t:5.3f}: {est:.6f} +- {err:.1e}"
              f"   (exact {exact:.6f}, off by {abs(est - exact) / err:.2f} sigma)")

    print("\nAt small overlap the exact curve collapses onto the qubit limit:")
    for a0 in (0.8, 1.0, 1.5, 2.0, 2.5):
        gap = abs(linear_entropy_psi(SQRT2_2, SQRT2_2, a0) - 0.5)
        print(f"  a0={a0:4.2f}: |LE - 1/2| = {gap:.3e}   (bound 5 e^(-4 a0^2) = "
              f"{5 * math.exp(-4 * a0 * a0):.3e})")


if __name__ == "__main__":
    main()
