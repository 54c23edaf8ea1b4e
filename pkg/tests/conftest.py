import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import _heavy  # noqa: E402

from bohmium.chaos import chaos_record, stretching_series
from bohmium.integrate import (IntegratorConfig, Precision, integrate,
                               integrate_with_deviation)
from bohmium.model import PhasePoint, StateKind, bell_config

SQRT2_2 = math.sqrt(2.0) / 2.0
LONG_PROFILE = os.environ.get("BOHMIUM_LONG") == "1"


def incommensurable(c2, a0=2.5, kind=StateKind.PSI):
    return bell_config(1.0, math.sqrt(3.0), c2, kind=kind, a0=a0)


def commensurable(c2, a0=2.5):
    return bell_config(2.0, 1.0, c2, a0=a0)


def isotropic(c2, a0=2.0, kind=StateKind.PSI):
    return bell_config(1.0, 1.0, c2, kind=kind, a0=a0)


ISO_IC = PhasePoint(2.928, 2.0, 0.0)


@pytest.fixture(scope="session")
def fig5b_run():
    """c2 = 2e-5 incommensurable trajectory with deviation, rtol 1e-13."""
    cfg = incommensurable(2e-5)
    icfg = IntegratorConfig(atol=1e-14, rtol=1e-13)
    traj, log = integrate_with_deviation(
        cfg, PhasePoint(-2.0, 2.0, 0.0), (1.0, 0.0), 100.0, icfg,
        renorm_dt=0.05, sample_dt=0.01)
    return cfg, traj, chaos_record(log)


@pytest.fixture(scope="session")
def fig5a_run():
    """c2 = 2e-6 incommensurable trajectory with deviation."""
    cfg = incommensurable(2e-6)
    icfg = IntegratorConfig(atol=1e-14, rtol=1e-13)
    traj, log = integrate_with_deviation(
        cfg, PhasePoint(-2.0, 2.0, 0.0), (1.0, 0.0), 100.0, icfg,
        renorm_dt=0.05, sample_dt=0.01)
    return cfg, traj, chaos_record(log)


@pytest.fixture(scope="session")
def bell100_run():
    """Maximally entangled incommensurable trajectory over [0, 100]."""
    cfg = incommensurable(SQRT2_2)
    icfg = IntegratorConfig(atol=1e-13, rtol=1e-11)
    traj, log = integrate_with_deviation(
        cfg, PhasePoint(-2.0, 2.0, 0.0), (1.0, 0.0), 100.0, icfg,
        renorm_dt=0.05, sample_dt=0.01)
    return cfg, traj, chaos_record(log)


@pytest.fixture(scope="session")
def chaos_long(tmp_path_factory):
    """The four t = 5e3 runs backing the chaos classification criteria.

    Returns {name: (summary, times, alpha, chi)}.
    """
    base = tmp_path_factory.mktemp("chaos-long")
    names = ["fig6-flcn", "fig7a-commensurable", "fig7b-commensurable",
             "fig7c-commensurable"]
    out = {}
    with ProcessPoolExecutor(max_workers=4) as pool:
        futs = [pool.submit(_heavy.run_named, n, str(base / n)) for n in names]
        for f in futs:
            name, summary = f.result()
            data = np.genfromtxt(base / name / "chaos.csv", delimiter=",",
                                 names=True)
            out[name] = (summary, data["t"], data["alpha"], data["chi"])
    return out


@pytest.fixture(scope="session")
def fig6_dev01(chaos_long):
    """fig6 stretching with the deviation started along the other axis."""
    log = _heavy.run_fig6_dev01()
    return stretching_series(log)


@pytest.fixture(scope="session")
def fig9_sweep(tmp_path_factory):
    """The isotropic sweep artifacts (sweep.csv rows plus per-value dirs)."""
    from bohmium.scenarios import run_scenario
    out = tmp_path_factory.mktemp("fig9")
    summary = run_scenario("fig9-isotropic-sweep", out_dir=str(out), workers=3)
    rows = summary["results"]["sweep_rows"]
    return summary, rows, out


@pytest.fixture(scope="session")
def phi_iso_runs():
    """Isotropic PHI trajectories for the conserved-difference checks."""
    out = {}
    for c2 in (2e-5, 0.4, 0.701):
        cfg = isotropic(c2, kind=StateKind.PHI)
        icfg = IntegratorConfig(atol=1e-13, rtol=1e-12)
        out[c2] = integrate(cfg, ISO_IC, 20.0 * math.pi, icfg,
                            sample_dt=math.pi / 500)
    cfg = isotropic(SQRT2_2, kind=StateKind.PHI)
    icfg = IntegratorConfig(atol=1e-18, rtol=1e-17,
                            precision=Precision.EXTENDED, h_max=0.05)
    out[SQRT2_2] = integrate(cfg, ISO_IC, 20.0 * math.pi, icfg,
                             sample_dt=math.pi / 500)
    return out
