"""Named simulation presets, deterministic output files, parameter sweeps.

Each preset binds one experiment (a guiding state, an initial condition,
an integrator setup and a set of analyses) to a runnable unit.  Running a
scenario writes CSV artifacts plus a summary.json that embeds the full
resolved configuration; re-running from that embedded configuration
reproduces the outputs byte for byte.

CSV conventions: comma separator, LF line endings, header row, floats with
17 significant digits (lossless round-trip), missing values empty.
"""

from __future__ import annotations

import configparser
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .chaos import chaos_record, derailment_time, lcn_classification
from .entanglement import (entanglement_entropy, linear_entropy_numeric,
                           linear_entropy_psi, linear_entropy_qubit)
from .errors import (ConfigParse, InsufficientSpan, NoPeriodFound,
                     UnknownScenario)
from .integrate import IntegratorConfig, Method, Precision, integrate, integrate_with_deviation
from .model import OscillatorParams, PhasePoint, StateKind, SystemConfig, bell_config
from .nodal import allowed_parity, find_x_point, nodal_position, nodal_velocity
from .errors import NodalDegeneracy, NoConvergence, OnlyNodeRoot
from .spectral import harmonic_spectrum, period_estimate, range_of_motion

SQRT2_2 = math.sqrt(2.0) / 2.0
FIG9_C2_SET = (0.0, 2e-5, 2e-2, 0.4, 0.701, SQRT2_2)


@dataclass(frozen=True)
class SweepSpec:
    parameter: str            # "c2", "omega_ratio" or "ic"
    values: tuple
    extended_values: tuple = ()   # parameter values run in extended precision


@dataclass
class Scenario:
    name: str
    description: str
    runtime_class: str        # short (<10 s), medium (<5 min), long
    cfg: SystemConfig
    ic: PhasePoint
    t_end: float
    icfg: IntegratorConfig
    sample_dt: float = 0.01
    renorm_dt: float = 0.05
    analyses: frozenset = frozenset()
    alpha_threshold: float = 0.5
    k_min: int = -9
    k_max: int = 9
    nodal_dt: float = 0.5
    spectral_base_omega: float = 1.0
    period_tol: float = 1e-5
    mc_samples: int = 200_000
    seed: int = 0
    sweep: Optional[SweepSpec] = None
    mode: str = "run"         # "run", "sweep" or "curve"


def _icfg(method=Method.DP85, atol=1e-12, rtol=1e-10, **kw):
    return IntegratorConfig(method=method, atol=atol, rtol=rtol, **kw)


def _incomm(c2, a0=2.5, kind=StateKind.PSI):
    return bell_config(1.0, math.sqrt(3.0), c2, kind=kind, a0=a0)


def _comm(c2, a0=2.5):
    return bell_config(2.0, 1.0, c2, a0=a0)


def _iso(c2, a0=2.0):
    return bell_config(1.0, 1.0, c2, a0=a0)


# Initial condition of the isotropic family.  The published range-of-motion
# endpoints (5.657 for the product state, 0.464 at maximal entanglement)
# pin a0 = 2 and x0 - y0 = 0.928 exactly: the product-state range is
# 2*sqrt(2)*a0 independent of the start point, while at maximal
# entanglement the particle slides to the diagonal and back, so the range
# equals half the initial diagonal offset.
ISO_IC = PhasePoint(2.928, 2.0, 0.0)


def _registry():
    reg = {}

    def add(fn):
        scn = fn()
        reg[scn.name] = fn
        return fn

    @add
    def fig3():
        return Scenario(
            name="fig3-lissajous", runtime_class="short",
            description="product-state trajectory tracing a Lissajous curve",
            cfg=_incomm(0.0), ic=PhasePoint(-2.0, 2.0, 0.0), t_end=100.0,
            icfg=_icfg(atol=1e-13, rtol=1e-12), sample_dt=0.01,
            analyses=frozenset({"chaos"}))

    @add
    def fig4():
        return Scenario(
            name="fig4-nodal-k13", runtime_class="short",
            description="nodal-point trajectories for the k=1 and k=3 complexes",
            cfg=_incomm(2e-5), ic=PhasePoint(-2.0, 2.0, 0.0), t_end=100.0,
            icfg=_icfg(), sample_dt=0.05, analyses=frozenset({"nodal"}),
            k_min=1, k_max=3, nodal_dt=0.1)

    @add
    def nodal_speed():
        return Scenario(
            name="nodal-speed", runtime_class="short",
            description="speed of the k=1 nodal point showing repeated escapes to infinity",
            cfg=_incomm(2e-5), ic=PhasePoint(-2.0, 2.0, 0.0), t_end=50.0,
            icfg=_icfg(), sample_dt=0.05, analyses=frozenset({"nodal"}),
            k_min=1, k_max=1, nodal_dt=0.02)

    def fig5(tag, c2):
        return Scenario(
            name=f"fig5{tag}-psi", runtime_class="medium",
            description=f"trajectory and stretching numbers at c2={c2:g}",
            cfg=_incomm(c2), ic=PhasePoint(-2.0, 2.0, 0.0), t_end=100.0,
            icfg=_icfg(atol=1e-14, rtol=1e-13), sample_dt=0.01,
            analyses=frozenset({"chaos", "nodal"}), nodal_dt=1.0)

    add(lambda: fig5("a", 2e-6))
    add(lambda: fig5("b", 2e-5))
    add(lambda: fig5("c", SQRT2_2))

    @add
    def fig6():
        return Scenario(
            name="fig6-flcn", runtime_class="medium",
            description="finite-time Lyapunov number of the maximally entangled incommensurable state",
            cfg=_incomm(SQRT2_2), ic=PhasePoint(-2.0, 2.0, 0.0), t_end=5e3,
            icfg=_icfg(atol=1e-11, rtol=1e-9), sample_dt=0.05,
            analyses=frozenset({"chaos"}))

    def fig7(tag, c2):
        return Scenario(
            name=f"fig7{tag}-commensurable", runtime_class="medium",
            description=f"periodic commensurable trajectory at c2={c2:g}",
            cfg=_comm(c2), ic=PhasePoint(2.0, 2.0, 0.0), t_end=5e3,
            icfg=_icfg(atol=1e-11, rtol=1e-9), sample_dt=0.05,
            analyses=frozenset({"chaos"}))

    add(lambda: fig7("a", 2e-6))
    add(lambda: fig7("b", 2e-5))
    add(lambda: fig7("c", SQRT2_2))

    @add
    def fig8():
        return Scenario(
            name="fig8-flcn-ordered", runtime_class="medium",
            description="power-law decay of the Lyapunov number for an ordered commensurable orbit",
            cfg=_comm(2e-5), ic=PhasePoint(2.0, 2.0, 0.0), t_end=5e3,
            icfg=_icfg(atol=1e-11, rtol=1e-9), sample_dt=0.05,
            analyses=frozenset({"chaos"}))

    @add
    def fig9():
        return Scenario(
            name="fig9-isotropic-sweep", runtime_class="medium",
            description="isotropic oscillators: confinement and harmonics versus entanglement",
            cfg=_iso(2e-5), ic=ISO_IC, t_end=20.0 * math.pi,
            icfg=_icfg(atol=1e-13, rtol=1e-12), sample_dt=math.pi / 500,
            analyses=frozenset({"spectral", "entanglement"}),
            mode="sweep",
            sweep=SweepSpec(parameter="c2", values=FIG9_C2_SET,
                            extended_values=(SQRT2_2,)))

    @add
    def fig10():
        grid = (0.0, 1e-4, 1e-3, 1e-2, 5e-2, 0.1, 0.2, 0.3, 0.4, 0.5,
                0.6, 0.65, 0.69, 0.701, 0.705, SQRT2_2)
        return Scenario(
            name="fig10-range-sweep", runtime_class="medium",
            description="range of motion versus the superposition coefficient",
            cfg=_iso(2e-5), ic=ISO_IC, t_end=20.0 * math.pi,
            icfg=_icfg(atol=1e-13, rtol=1e-12), sample_dt=math.pi / 500,
            analyses=frozenset({"spectral"}),
            mode="sweep",
            sweep=SweepSpec(parameter="c2", values=grid,
                            extended_values=(SQRT2_2,)))

    @add
    def ent_curve():
        return Scenario(
            name="entanglement-curve", runtime_class="short",
            description="entanglement entropy and linear entropy over the coefficient range",
            cfg=_incomm(SQRT2_2), ic=PhasePoint(0.0, 0.0, 0.0), t_end=0.0,
            icfg=_icfg(), analyses=frozenset({"entanglement"}), mode="curve",
            mc_samples=200_000)

    return reg


REGISTRY = _registry()


def get_scenario(name):
    try:
        return REGISTRY[name]()
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}; try --list") from None


def list_scenarios():
    """Rows of (name, runtime class, description) for every preset."""
    rows = []
    for name in sorted(REGISTRY):
        scn = REGISTRY[name]()
        rows.append((scn.name, scn.runtime_class, scn.description))
    return rows


# ---------------------------------------------------------------------------
# serialization

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return ""
        return f"{v:.17g}"
    return str(v)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(v) for v in row) + "\n")


def scenario_config(scn):
    """JSON-serializable resolved configuration of a scenario."""
    return {
        "scenario": scn.name,
        "system": {
            "omega_x": scn.cfg.osc_x.omega, "sigma_x": scn.cfg.osc_x.sigma,
            "a0_x": scn.cfg.osc_x.a0,
            "omega_y": scn.cfg.osc_y.omega, "sigma_y": scn.cfg.osc_y.sigma,
            "a0_y": scn.cfg.osc_y.a0,
            "c1": scn.cfg.c1, "c2": scn.cfg.c2, "kind": scn.cfg.kind.value,
        },
        "ic": {"x": scn.ic.x, "y": scn.ic.y, "t": scn.ic.t},
        "integrator": {
            "method": scn.icfg.method.value, "atol": scn.icfg.atol,
            "rtol": scn.icfg.rtol, "h_init": scn.icfg.h_init,
            "h_min": scn.icfg.h_min, "h_max": scn.icfg.h_max,
            "max_steps": scn.icfg.max_steps,
            "precision": scn.icfg.precision.value,
        },
        "run": {
            "t_end": scn.t_end, "sample_dt": scn.sample_dt,
            "renorm_dt": scn.renorm_dt,
            "analyses": sorted(scn.analyses),
            "alpha_threshold": scn.alpha_threshold,
            "k_min": scn.k_min, "k_max": scn.k_max, "nodal_dt": scn.nodal_dt,
            "spectral_base_omega": scn.spectral_base_omega,
            "period_tol": scn.period_tol,
            "mc_samples": scn.mc_samples, "seed": scn.seed,
            "mode": scn.mode,
            "sweep": None if scn.sweep is None else {
                "parameter": scn.sweep.parameter,
                "values": list(scn.sweep.values),
                "extended_values": list(scn.sweep.extended_values),
            },
        },
    }


def scenario_from_config(conf, name=None):
    """Rebuild a Scenario from an embedded configuration mapping."""
    try:
        sysc = conf["system"]
        cfg = SystemConfig(
            osc_x=OscillatorParams(omega=sysc["omega_x"], sigma=sysc["sigma_x"],
                                   a0=sysc["a0_x"]),
            osc_y=OscillatorParams(omega=sysc["omega_y"], sigma=sysc["sigma_y"],
                                   a0=sysc["a0_y"]),
            c1=sysc["c1"], c2=sysc["c2"], kind=StateKind(sysc["kind"]),
        )
        icc = conf["integrator"]
        icfg = IntegratorConfig(
            method=Method(icc["method"]), atol=icc["atol"], rtol=icc["rtol"],
            h_init=icc["h_init"], h_min=icc["h_min"], h_max=icc["h_max"],
            max_steps=icc["max_steps"], precision=Precision(icc["precision"]),
        )
        run = conf["run"]
        sweep = None
        if run.get("sweep"):
            sweep = SweepSpec(parameter=run["sweep"]["parameter"],
                              values=tuple(run["sweep"]["values"]),
                              extended_values=tuple(run["sweep"]["extended_values"]))
        return Scenario(
            name=name or conf.get("scenario", "custom"),
            description="rebuilt from configuration", runtime_class="custom",
            cfg=cfg,
            ic=PhasePoint(conf["ic"]["x"], conf["ic"]["y"], conf["ic"]["t"]),
            t_end=run["t_end"], icfg=icfg, sample_dt=run["sample_dt"],
            renorm_dt=run["renorm_dt"], analyses=frozenset(run["analyses"]),
            alpha_threshold=run["alpha_threshold"], k_min=run["k_min"],
            k_max=run["k_max"], nodal_dt=run["nodal_dt"],
            spectral_base_omega=run["spectral_base_omega"],
            period_tol=run["period_tol"], mc_samples=run["mc_samples"],
            seed=run["seed"], sweep=sweep, mode=run.get("mode", "run"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigParse(f"bad configuration: {exc}") from exc


def load_config_file(path):
    """Scenario from a .json (summary or bare config) or .ini/.cfg file."""
    p = Path(path)
    if not p.exists():
        raise ConfigParse(f"no such config file: {path}")
    if p.suffix == ".json":
        try:
            data = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigParse(f"invalid JSON in {path}: {exc}") from exc
        conf = data.get("config", data)
        return scenario_from_config(conf)
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
        sysc = parser["system"]
        icc = parser["integrator"] if "integrator" in parser else {}
        run = parser["run"] if "run" in parser else {}
        conf = {
            "scenario": run.get("name", p.stem),
            "system": {
                "omega_x": sysc.getfloat("omega_x"),
                "sigma_x": sysc.getfloat("sigma_x", 0.0),
                "a0_x": sysc.getfloat("a0", sysc.getfloat("a0_x", 2.5)),
                "omega_y": sysc.getfloat("omega_y"),
                "sigma_y": sysc.getfloat("sigma_y", 0.0),
                "a0_y": sysc.getfloat("a0", sysc.getfloat("a0_y", 2.5)),
                "c1": sysc.getfloat("c1"), "c2": sysc.getfloat("c2"),
                "kind": sysc.get("kind", "psi"),
            },
            "ic": {"x": parser.getfloat("ic", "x"), "y": parser.getfloat("ic", "y"),
                   "t": parser.getfloat("ic", "t", fallback=0.0)},
            "integrator": {
                "method": icc.get("method", "dp85"),
                "atol": float(icc.get("atol", 1e-12)),
                "rtol": float(icc.get("rtol", 1e-10)),
                "h_init": float(icc.get("h_init", 1e-3)),
                "h_min": float(icc.get("h_min", 1e-12)),
                "h_max": float(icc.get("h_max", 1.0)),
                "max_steps": int(float(icc.get("max_steps", 10_000_000))),
                "precision": icc.get("precision", "standard"),
            },
            "run": {
                "t_end": float(run.get("t_end", 100.0)),
                "sample_dt": float(run.get("sample_dt", 0.01)),
                "renorm_dt": float(run.get("renorm_dt", 0.05)),
                "analyses": [s.strip() for s in run.get("analyses", "chaos").split(",") if s.strip()],
                "alpha_threshold": float(run.get("alpha_threshold", 0.5)),
                "k_min": int(run.get("k_min", -9)), "k_max": int(run.get("k_max", 9)),
                "nodal_dt": float(run.get("nodal_dt", 0.5)),
                "spectral_base_omega": float(run.get("spectral_base_omega", 1.0)),
                "period_tol": float(run.get("period_tol", 1e-5)),
                "mc_samples": int(float(run.get("mc_samples", 200_000))),
                "seed": int(run.get("seed", 0)),
                "mode": run.get("mode", "run"),
                "sweep": None,
            },
        }
        return scenario_from_config(conf)
    except (configparser.Error, KeyError, ValueError) as exc:
        if isinstance(exc, ConfigParse):
            raise
        raise ConfigParse(f"invalid config file {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# running

def _char_period(cfg):
    return 2.0 * math.pi / min(cfg.osc_x.omega, cfg.osc_y.omega)


def _nodal_rows(scn, snapshot_times=()):
    """Closed-form node table over the scenario window, X-points at snapshots."""
    rows = []
    parity = allowed_parity(scn.cfg)
    times = np.arange(scn.ic.t, scn.t_end + 0.5 * scn.nodal_dt, scn.nodal_dt)
    snaps = set(float(s) for s in snapshot_times)
    for t in list(times) + sorted(snaps):
        is_snap = float(t) in snaps
        for k in range(scn.k_min, scn.k_max + 1):
            if k % 2 != parity:
                continue
            try:
                x, y = nodal_position(k, float(t), scn.cfg)
                vx, vy = nodal_velocity(k, float(t), scn.cfg)
            except NodalDegeneracy:
                continue
            x_x = y_x = res = None
            if is_snap:
                from .nodal import NodalPoint
                node = NodalPoint(k=k, x=x, y=y, vx=vx, vy=vy, t=float(t),
                                  kind=scn.cfg.kind)
                try:
                    xp = find_x_point(node, scn.cfg)
                    x_x, y_x, res = xp.x, xp.y, xp.residual
                except (NoConvergence, OnlyNodeRoot, NodalDegeneracy):
                    pass
            rows.append((float(t), k, x, y, vx, vy, x_x, y_x, res))
    return rows


def _single_run(scn):
    """Integrate one scenario and compute its analyses; returns results dict."""
    out = {"flags": []}
    traj = None
    if "chaos" in scn.analyses:
        traj, log = integrate_with_deviation(
            scn.cfg, scn.ic, (1.0, 0.0), scn.t_end, scn.icfg,
            renorm_dt=scn.renorm_dt, sample_dt=scn.sample_dt)
        rec = chaos_record(log, alpha_threshold=scn.alpha_threshold)
        rec.derailment_time = derailment_time(
            traj, rec, inflate=1.5, char_period=_char_period(scn.cfg))
        try:
            cls, slope = lcn_classification(rec.chi, rec.times)
            classification = cls.value
        except InsufficientSpan:
            classification, slope = None, None
        out["chaos"] = {
            "record": rec,
            "classification": classification,
            "loglog_slope": slope,
            "derailment_time": rec.derailment_time,
            "n_events": len(rec.events),
            "chi_end": float(rec.chi[-1]) if len(rec.chi) else None,
        }
    elif scn.t_end > scn.ic.t:
        traj = integrate(scn.cfg, scn.ic, scn.t_end, scn.icfg,
                         sample_dt=scn.sample_dt)
    out["trajectory"] = traj
    if traj is not None:
        out["flags"] = [(f.t, f.kind, f.detail) for f in traj.flags]

    if "spectral" in scn.analyses and traj is not None:
        spec_x = harmonic_spectrum(traj, "x", scn.spectral_base_omega)
        spec_y = harmonic_spectrum(traj, "y", scn.spectral_base_omega)
        try:
            period = period_estimate(traj, tol=scn.period_tol)
        except NoPeriodFound:
            period = None
        out["spectral"] = {
            "x": spec_x, "y": spec_y,
            "delta_x": range_of_motion(traj, "x"),
            "delta_y": range_of_motion(traj, "y"),
            "period": period,
        }

    if "nodal" in scn.analyses:
        snaps = []
        if "chaos" in out and out["chaos"]["derailment_time"] is not None:
            snaps.append(out["chaos"]["derailment_time"])
        out["nodal_rows"] = _nodal_rows(scn, snapshot_times=snaps)

    if "entanglement" in scn.analyses:
        a0 = scn.cfg.osc_x.a0
        est, err = linear_entropy_numeric(scn.cfg, t=0.0,
                                          n_samples=scn.mc_samples, seed=scn.seed)
        out["entanglement"] = {
            "ee_nats": entanglement_entropy(abs(scn.cfg.c2)),
            "le_analytic": linear_entropy_psi(scn.cfg.c1, scn.cfg.c2, a0),
            "le_qubit": linear_entropy_qubit(abs(scn.cfg.c2)),
            "le_numeric": est, "le_numeric_stderr": err,
            "samples": scn.mc_samples,
        }
    return out


def _write_run_outputs(scn, res, out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    traj = res.get("trajectory")
    results_json = {}
    if traj is not None:
        write_csv(out_dir / "trajectory.csv", ["t", "x", "y", "vx", "vy"],
                  zip(traj.t, traj.x, traj.y, traj.vx, traj.vy))
    if "chaos" in res:
        rec = res["chaos"]["record"]
        write_csv(out_dir / "chaos.csv", ["t", "alpha", "chi"],
                  zip(rec.times, rec.alpha, rec.chi))
        results_json["chaos"] = {
            "classification": res["chaos"]["classification"],
            "loglog_slope": res["chaos"]["loglog_slope"],
            "derailment_time": res["chaos"]["derailment_time"],
            "n_events": res["chaos"]["n_events"],
            "chi_end": res["chaos"]["chi_end"],
            "events": [[t, a] for t, a in rec.events],
        }
    if "spectral" in res:
        sp = res["spectral"]
        amp_y = dict(sp["y"].harmonics)
        write_csv(out_dir / "spectrum.csv", ["m", "amplitude_x", "amplitude_y"],
                  [(m, a, amp_y[m]) for m, a in sp["x"].harmonics])
        results_json["spectral"] = {
            "delta_x": sp["delta_x"], "delta_y": sp["delta_y"],
            "leading_m_x": sp["x"].leading_m, "leading_m_y": sp["y"].leading_m,
            "period": sp["period"],
        }
    if "nodal_rows" in res:
        write_csv(out_dir / "nodal.csv",
                  ["t", "k", "x_nod", "y_nod", "vx_nod", "vy_nod",
                   "x_X", "y_X", "residual"],
                  res["nodal_rows"])
        results_json["nodal"] = {"rows": len(res["nodal_rows"])}
    if "entanglement" in res:
        results_json["entanglement"] = res["entanglement"]
    summary = {
        "scenario": scn.name,
        "version": __version__,
        "config": scenario_config(scn),
        "results": results_json,
        "flags": res.get("flags", []),
    }
    with open(out_dir / "summary.json", "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    return summary


def _apply_sweep_value(scn, value):
    sweep = scn.sweep
    if sweep.parameter == "c2":
        cfg = bell_config(scn.cfg.osc_x.omega, scn.cfg.osc_y.omega, value,
                          kind=scn.cfg.kind, a0=scn.cfg.osc_x.a0)
        sub = replace(scn, cfg=cfg)
    elif sweep.parameter == "omega_ratio":
        cfg = bell_config(value * scn.cfg.osc_y.omega, scn.cfg.osc_y.omega,
                          scn.cfg.c2, kind=scn.cfg.kind, a0=scn.cfg.osc_x.a0)
        sub = replace(scn, cfg=cfg)
    elif sweep.parameter == "ic":
        sub = replace(scn, ic=PhasePoint(value[0], value[1], scn.ic.t))
    else:
        raise ConfigParse(f"unknown sweep parameter {sweep.parameter!r}")
    if any(_close(value, v) for v in sweep.extended_values):
        sub = replace(sub, icfg=replace(scn.icfg, atol=1e-18, rtol=1e-17,
                                        precision=Precision.EXTENDED, h_max=0.05))
    return replace(sub, sweep=None, mode="run")


def _close(a, b):
    try:
        return abs(a - b) < 1e-12
    except TypeError:
        return a == b


def _sweep_row(value, res):
    sp = res.get("spectral")
    ent = res.get("entanglement", {})
    amps = dict(sp["x"].harmonics) if sp else {}
    return (
        value,
        sp["delta_x"] if sp else None,
        sp["delta_y"] if sp else None,
        sp["x"].leading_m if sp else None,
        amps.get(1), amps.get(2),
        (amps[2] / amps[1]) if amps.get(1) else None,
        sp["period"] if sp else None,
        ent.get("ee_nats"), ent.get("le_analytic"),
    )


SWEEP_HEADER = ["value", "delta_x", "delta_y", "leading_m", "amp1", "amp2",
                "amp2_over_amp1", "period", "ee_nats", "le_analytic"]


def _run_sweep_value(args):
    scn_conf, value, out_sub = args
    scn = scenario_from_config(scn_conf["config"], name=scn_conf["name"])
    sub = _apply_sweep_value(replace(scn, sweep=SweepSpec(**scn_conf["sweep"])), value)
    res = _single_run(sub)
    _write_run_outputs(sub, res, out_sub)
    return _sweep_row(value, res)


def resolve_workers(workers=None):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("BOHMIUM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigParse(f"BOHMIUM_THREADS must be an integer, got {env!r}")
    return 1


def sweep(scn, values=None, out_dir=".", workers=None):
    """Run a sweep scenario; one output subdirectory per value plus sweep.csv."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    values = tuple(values if values is not None else scn.sweep.values)
    spec = SweepSpec(parameter=scn.sweep.parameter, values=values,
                     extended_values=scn.sweep.extended_values)
    scn = replace(scn, sweep=spec)
    tasks = []
    for i, v in enumerate(values):
        sub_dir = out_dir / f"value_{i:03d}"
        conf = {"config": scenario_config(_apply_sweep_value(scn, v)),
                "name": f"{scn.name}[{i}]",
                "sweep": {"parameter": spec.parameter, "values": list(values),
                          "extended_values": list(spec.extended_values)}}
        tasks.append((conf, v, str(sub_dir)))
    n_workers = resolve_workers(workers)
    if n_workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            rows = list(pool.map(_run_sweep_value, tasks))
    else:
        rows = [_run_sweep_value(t) for t in tasks]
    write_csv(out_dir / "sweep.csv", SWEEP_HEADER, rows)
    summary = {
        "scenario": scn.name,
        "version": __version__,
        "config": scenario_config(scn),
        "results": {"sweep_rows": [list(r) for r in rows]},
        "flags": [],
    }
    with open(out_dir / "summary.json", "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")
    return summary


def _json_default(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    raise TypeError(f"not JSON-serializable: {type(v)}")


def _entanglement_curve(scn, out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    a0 = scn.cfg.osc_x.a0
    rows = []
    for c2 in np.linspace(0.0, 1.0, 101):
        c2 = float(c2)
        c1 = math.sqrt(max(0.0, 1.0 - c2 * c2))
        rows.append((c2, entanglement_entropy(c2),
                     linear_entropy_psi(c1, c2, a0), linear_entropy_qubit(c2)))
    write_csv(out_dir / "entanglement.csv",
              ["c2", "ee_nats", "le_analytic", "le_qubit"], rows)
    checks = []
    for c2 in (0.3, SQRT2_2):
        cfg = bell_config(scn.cfg.osc_x.omega, scn.cfg.osc_y.omega, c2, a0=a0)
        est, err = linear_entropy_numeric(cfg, t=0.0, n_samples=scn.mc_samples,
                                          seed=scn.seed)
        checks.append({"c2": c2, "le_numeric": est, "le_numeric_stderr": err,
                       "le_analytic": linear_entropy_psi(cfg.c1, cfg.c2, a0)})
    summary = {
        "scenario": scn.name,
        "version": __version__,
        "config": scenario_config(scn),
        "results": {"monte_carlo_checks": checks,
                    "max_ee": max(r[1] for r in rows),
                    "max_le": max(r[2] for r in rows)},
        "flags": [],
    }
    with open(out_dir / "summary.json", "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    return summary


def run_scenario(scn, out_dir=".", seed=None, t_end=None, tol=None,
                 precision=None, workers=None):
    """Run a scenario (by object or name) and write its artifacts.

    Returns the summary mapping.  Overrides mirror the command-line flags.
    """
    if isinstance(scn, str):
        scn = get_scenario(scn)
    if seed is not None:
        scn = replace(scn, seed=int(seed))
    if t_end is not None:
        scn = replace(scn, t_end=float(t_end))
    if tol is not None:
        rtol, atol = (tol if isinstance(tol, tuple) else (tol, tol * 1e-2))
        scn = replace(scn, icfg=replace(scn.icfg, rtol=rtol, atol=atol))
    if precision is not None:
        scn = replace(scn, icfg=replace(scn.icfg, precision=Precision(precision)))
    if scn.mode == "curve":
        return _entanglement_curve(scn, out_dir)
    if scn.mode == "sweep":
        return sweep(scn, out_dir=out_dir, workers=workers)
    res = _single_run(scn)
    return _write_run_outputs(scn, res, out_dir)
