"""Acceptance gate: every criterion asserted at its stated tolerance.

Each test prints one PASS/FAIL line (to the real stdout, so it survives
pytest capture) and then asserts.  The long-horizon profile of criterion 8
only runs when BOHMIUM_LONG=1.
"""

import math
import os
import random
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from bohmium.chaos import Classification, derailment_time, lcn_classification
from bohmium.entanglement import (entanglement_entropy, linear_entropy_numeric,
                                  linear_entropy_qubit)
from bohmium.errors import NodalDegeneracy
from bohmium.integrate import IntegratorConfig, integrate
from bohmium.model import (PhasePoint, StateKind, bell_config, overlap,
                           state_peak_scale, state_value)
from bohmium.nodal import nodal_positions, find_x_points
from bohmium.velocity import bohmian_velocity, oracle_velocity

from conftest import ISO_IC, LONG_PROFILE, SQRT2_2, incommensurable, isotropic

REPO_ROOT = Path(__file__).resolve().parents[1]


def report(num, desc, ok, detail=""):
    line = f"[acceptance] criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {desc}"
    if detail:
        line += f"  ({detail})"
    print(line, file=sys.__stdout__, flush=True)
    assert ok, f"criterion {num} failed: {desc} {detail}"


def test_criterion_01_overlap():
    got = overlap(2.5, -2.5)
    ok = math.isclose(got, math.exp(-25.0), rel_tol=1e-12)
    amp = math.sqrt(got)
    ok = ok and math.isclose(amp, math.exp(-12.5), rel_tol=1e-12)
    report(1, "right/left overlap at a0 = 5/2", ok,
           f"|<L|R>| = {amp:.6e}")


def test_criterion_02_entanglement_curve():
    checks = [
        math.isclose(entanglement_entropy(SQRT2_2), math.log(2.0), rel_tol=1e-12),
        math.isclose(linear_entropy_qubit(SQRT2_2), 0.5, rel_tol=1e-12),
        entanglement_entropy(0.0) == 0.0,
        entanglement_entropy(1.0) == 0.0,
        linear_entropy_qubit(0.0) == 0.0,
        linear_entropy_qubit(1.0) == 0.0,
    ]
    for c2 in (0.2, 0.45, 0.6):
        partner = math.sqrt(1.0 - c2 * c2)
        checks.append(math.isclose(entanglement_entropy(c2),
                                   entanglement_entropy(partner), rel_tol=1e-12))
        checks.append(math.isclose(linear_entropy_qubit(c2),
                                   linear_entropy_qubit(partner), rel_tol=1e-12))
    report(2, "entanglement measures: maximum, zeros, symmetry", all(checks))


def test_criterion_03_monte_carlo_purity():
    results = []
    for t in (0.0, math.pi):
        cfg = bell_config(1.0, math.sqrt(3.0), SQRT2_2, a0=2.5)
        est, err = linear_entropy_numeric(cfg, t=t, n_samples=1_000_000, seed=12)
        results.append((est, err, linear_entropy_qubit(SQRT2_2)))
    cfg = bell_config(1.0, math.sqrt(3.0), 0.6, a0=2.5)
    est, err = linear_entropy_numeric(cfg, t=0.0, n_samples=1_000_000, seed=13)
    results.append((est, err, linear_entropy_qubit(0.6)))
    phi = bell_config(1.0, math.sqrt(3.0), SQRT2_2, a0=2.5, kind=StateKind.PHI)
    est, err = linear_entropy_numeric(phi, t=0.0, n_samples=1_000_000, seed=14)
    results.append((est, err, 0.5))
    ok = all(abs(e - ref) <= 3.0 * s for e, s, ref in results)
    worst = max(abs(e - ref) / s for e, s, ref in results)
    report(3, "Monte-Carlo purity matches qubit limit within 3 sigma", ok,
           f"worst deviation {worst:.2f} sigma")


def test_criterion_04_oracle_field_equivalence():
    rng = random.Random(2024)
    worst = 0.0
    for kind in (StateKind.PSI, StateKind.PHI):
        cfg = bell_config(1.0, math.sqrt(3.0), SQRT2_2, kind=kind, a0=2.5)
        for _ in range(5000):
            p = PhasePoint(rng.uniform(-5, 5), rng.uniform(-5, 5),
                           rng.uniform(0.0, 50.0))
            v = bohmian_velocity(p, cfg)
            o = oracle_velocity(p, cfg)
            den = math.hypot(o.vx, o.vy)
            if den > 0.0:
                worst = max(worst, math.hypot(v.vx - o.vx, v.vy - o.vy) / den)
    report(4, "closed-form field vs gradient oracle at 1e4 points", worst < 1e-10,
           f"max relative error {worst:.2e}")


def test_criterion_05_lissajous():
    cfg = incommensurable(0.0)
    ic = PhasePoint(-2.0, 2.0, 0.0)
    traj = integrate(cfg, ic, 100.0, IntegratorConfig(atol=1e-13, rtol=1e-12),
                     sample_dt=0.01)
    xs = ic.x + math.sqrt(2.0) * 2.5 * (np.cos(traj.t) - 1.0)
    ys = ic.y - math.sqrt(2.0 / math.sqrt(3.0)) * 2.5 * (np.cos(math.sqrt(3.0) * traj.t) - 1.0)
    err = max(np.abs(traj.x - xs).max(), np.abs(traj.y - ys).max())
    report(5, "product-state Lissajous matches closed form to 1e-8", err < 1e-8,
           f"max deviation {err:.2e}")


def test_criterion_06_node_zero_set():
    rng = random.Random(99)
    worst = 0.0
    reversal_ok = True
    for kind in (StateKind.PSI, StateKind.PHI):
        cfg = bell_config(1.0, math.sqrt(3.0), 0.37, kind=kind, a0=2.5)
        scale = state_peak_scale(cfg)
        checked = 0
        while checked < 200:
            t = rng.uniform(-60.0, 60.0)
            try:
                pts = nodal_positions(t, range(-9, 10), cfg, with_velocity=False)
            except NodalDegeneracy:
                continue
            for p in pts:
                worst = max(worst, abs(state_value(PhasePoint(p.x, p.y, t), cfg)) / scale)
            fwd = {(p.x, p.y) for p in pts}
            bwd = {(p.x, p.y) for p in nodal_positions(-t, range(-9, 10), cfg,
                                                       with_velocity=False)}
            reversal_ok = reversal_ok and fwd == bwd
            checked += 1
    report(6, "nodal zero-set and time-reversal identity", worst < 1e-10 and reversal_ok,
           f"max |state|/peak = {worst:.2e}")


def test_criterion_07_derailment_and_x_point(fig5b_run):
    cfg, traj, rec = fig5b_run
    td = derailment_time(traj, rec, inflate=1.5, char_period=2.0 * math.pi)
    ok_td = td is not None and abs(td - 82.66) <= 0.01 * 82.66
    dmin = math.inf
    if td is not None:
        i = int(np.argmin(np.abs(traj.t - td)))
        px, py = traj.x[i], traj.y[i]
        for node in nodal_positions(td, range(-9, 10), cfg):
            try:
                for xp in find_x_points(node, cfg):
                    dmin = min(dmin, math.hypot(xp.x - px, xp.y - py))
            except Exception:
                continue
    report(7, "derailment time 82.66 with an X-point within distance 1",
           ok_td and dmin < 1.0,
           f"t_d = {td}, nearest X-point at {dmin:.3f}")


def test_criterion_08_chaos_classification(chaos_long):
    _s, t6, _a6, chi6 = chaos_long["fig6-flcn"]
    cls6, slope6 = lcn_classification(chi6, t6)
    ok = cls6 is Classification.CHAOTIC and chi6[-1] > 0.0
    details = [f"bell chi(5e3) = {chi6[-1]:.4f} ({cls6.value})"]
    for name in ("fig7a-commensurable", "fig7b-commensurable",
                 "fig7c-commensurable"):
        _s, t7, _a7, chi7 = chaos_long[name]
        cls7, slope7 = lcn_classification(chi7, t7)
        ok = ok and cls7 is Classification.ORDERED and abs(slope7 + 1.0) <= 0.2
        details.append(f"{name.split('-')[0]} slope {slope7:.2f}")
    report(8, "chaotic vs ordered classification at t = 5e3", ok,
           "; ".join(details))


@pytest.mark.skipif(not LONG_PROFILE, reason="long profile: set BOHMIUM_LONG=1")
def test_criterion_08_long_profile():
    from bohmium.scenarios import run_scenario
    import tempfile
    with tempfile.TemporaryDirectory() as out:
        run_scenario("fig6-flcn", out_dir=out, t_end=2e4)
        data = np.genfromtxt(Path(out) / "chaos.csv", delimiter=",", names=True)
    late = data["chi"][data["t"] >= 5e3]
    ok = np.all(late > 0.0) and late.max() / late.min() <= 3.0
    report(8, "long profile: chi positive with bounded variation", ok,
           f"variation factor {late.max() / late.min():.2f}")


def test_criterion_09_commensurable_periodicity():
    T = 2.0 * math.pi
    worst = 0.0
    for c2 in (2e-6, 2e-5, SQRT2_2):
        cfg = bell_config(2.0, 1.0, c2, a0=2.5)
        ic = PhasePoint(2.0, 2.0, 0.0)
        traj = integrate(cfg, ic, T, IntegratorConfig(atol=1e-14, rtol=1e-13),
                         sample_dt=T / 100)
        worst = max(worst, math.hypot(traj.x[-1] - ic.x, traj.y[-1] - ic.y))
    report(9, "commensurable orbits return after T = 2 pi", worst < 1e-6,
           f"worst return distance {worst:.2e}")


def test_criterion_10_isotropic_integrals(fig9_sweep, phi_iso_runs):
    _summary, _rows, out_dir = fig9_sweep
    from bohmium.scenarios import FIG9_C2_SET
    worst_psi = 0.0
    for i, c2 in enumerate(FIG9_C2_SET):
        if not any(math.isclose(c2, v, abs_tol=1e-12)
                   for v in (2e-5, 0.4, 0.701, SQRT2_2)):
            continue
        data = np.genfromtxt(out_dir / f"value_{i:03d}" / "trajectory.csv",
                             delimiter=",", names=True)
        drift = np.abs((data["x"] + data["y"]) - (data["x"][0] + data["y"][0])).max()
        worst_psi = max(worst_psi, drift)
    worst_phi = 0.0
    for c2, traj in phi_iso_runs.items():
        drift = np.abs((traj.x - traj.y) - (traj.x[0] - traj.y[0])).max()
        worst_phi = max(worst_phi, drift)
    ok = worst_psi < 1e-8 and worst_phi < 1e-8
    report(10, "isotropic integrals of motion conserved to 1e-8", ok,
           f"worst drift psi {worst_psi:.2e}, phi {worst_phi:.2e}")


def test_criterion_11_isotropic_sweep(fig9_sweep):
    _summary, rows, _dir = fig9_sweep
    delta_x = [r[1] for r in rows]
    leading = [r[3] for r in rows]
    periods = [r[7] for r in rows]
    checks = [
        abs(delta_x[0] - 5.657) <= 0.01,
        abs(delta_x[-1] - 0.464) <= 0.01,
        all(a >= b - 1e-9 for a, b in zip(delta_x, delta_x[1:])),
        leading[1] == 1,
        leading[-1] == 2,
        all(abs(p - 2.0 * math.pi) <= 1e-4 for p in periods[:-1]),
        abs(periods[-1] - math.pi) <= 1e-4,
    ]
    report(11, "isotropic sweep: ranges, harmonics and periods", all(checks),
           f"dx endpoints {delta_x[0]:.3f} / {delta_x[-1]:.3f}")


def test_criterion_12_standalone_primary():
    loaded = [m for m in sys.modules
              if "plots" in m.split(".") or m.startswith("plots")]
    bohmium_dir = REPO_ROOT / "src" / "bohmium"
    referencing = [p.name for p in bohmium_dir.glob("*.py")
                   if "plots" in p.read_text().split("# demo-only", 1)[0]]
    ok = not loaded and not referencing
    report(12, "primary criteria run with no secondary component", ok)


@pytest.mark.skipif(not (REPO_ROOT / "plots" / "dist" / "render.js").exists(),
                    reason="secondary plots package not built")
def test_criterion_13_plot_kinds(tmp_path, fig5b_run, fig9_sweep, chaos_long):
    from bohmium.scenarios import run_scenario
    art = tmp_path / "artifacts"
    run_scenario("fig3-lissajous", out_dir=art / "fig3")
    run_scenario("nodal-speed", out_dir=art / "nodal")
    run_scenario("entanglement-curve", out_dir=art / "ent")
    _s, _r, fig9_dir = fig9_sweep
    fig6_dir = None
    # chaos csv from the long fixture lives under its tmp dir; regenerate a
    # small one for rendering
    run_scenario("fig3-lissajous", out_dir=art / "chaos-src")
    render = str(REPO_ROOT / "plots" / "render")
    cases = [
        ("trajectory", [str(art / "fig3" / "trajectory.csv")]),
        ("stretching", [str(art / "chaos-src" / "chaos.csv")]),
        ("lcn_loglog", [str(art / "chaos-src" / "chaos.csv")]),
        ("nodal_snapshot", [str(art / "nodal" / "nodal.csv"),
                            str(art / "nodal" / "trajectory.csv")]),
        ("sweep_curve", [str(fig9_dir / "sweep.csv")]),
        ("entanglement_curve", [str(art / "ent" / "entanglement.csv")]),
    ]
    ok = True
    for kind, inputs in cases:
        png = tmp_path / f"{kind}.png"
        proc = subprocess.run([render, kind, *inputs, "-o", str(png)],
                              capture_output=True, text=True)
        ok = ok and proc.returncode == 0 and png.exists() and png.stat().st_size > 100
    report(13, "all six plot kinds render from acceptance outputs", ok)
