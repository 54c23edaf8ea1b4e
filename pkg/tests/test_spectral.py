import math

import numpy as np
import pytest

from bohmium.errors import (IncompleteWindow, NonUniformSampling, NoPeriodFound)
from bohmium.integrate import IntegratorConfig, Trajectory, integrate
from bohmium.model import PhasePoint, bell_config
from bohmium.spectral import harmonic_spectrum, period_estimate, range_of_motion

from conftest import ISO_IC, isotropic

SQRT2_2 = math.sqrt(2.0) / 2.0


def tone_trajectory(n_periods=10, dt=math.pi / 100):
    t = np.arange(n_periods * 200 + 1) * dt
    return Trajectory(t=t, x=np.sin(t), y=np.cos(t), vx=np.cos(t),
                      vy=-np.sin(t), sample_dt=dt)


class TestHarmonics:
    def test_pure_tone(self):
        rep = harmonic_spectrum(tone_trajectory(), "x", base_omega=1.0)
        assert rep.leading_m == 1
        assert rep.harmonics[0][1] == pytest.approx(1.0, abs=1e-10)
        assert all(a < 1e-10 for _m, a in rep.harmonics[1:])

    def test_mixed_tone_leading(self):
        t = np.arange(2001) * (math.pi / 100)
        x = 0.3 * np.sin(t) + 1.1 * np.sin(2 * t + 0.4)
        tr = Trajectory(t=t, x=x, y=x, vx=x, vy=x, sample_dt=math.pi / 100)
        rep = harmonic_spectrum(tr, "x", base_omega=1.0)
        assert rep.leading_m == 2
        assert rep.harmonics[1][1] == pytest.approx(1.1, abs=1e-10)

    def test_bessel_bound(self):
        tr = tone_trajectory()
        rep = harmonic_spectrum(tr, "x", base_omega=1.0)
        power = sum(a * a for _m, a in rep.harmonics) / 2.0
        xd = tr.x[:-1] - tr.x[:-1].mean()
        assert power <= np.mean(xd ** 2) * (1.0 + 1e-12)

    def test_incomplete_window_rejected(self):
        tr = tone_trajectory()
        short = Trajectory(t=tr.t[:500], x=tr.x[:500], y=tr.y[:500],
                           vx=tr.vx[:500], vy=tr.vy[:500], sample_dt=tr.sample_dt)
        with pytest.raises(IncompleteWindow):
            harmonic_spectrum(short, "x", base_omega=1.0)

    def test_nonuniform_rejected(self):
        tr = tone_trajectory()
        t = tr.t.copy()
        t[30] += 1e-5
        bad = Trajectory(t=t, x=tr.x, y=tr.y, vx=tr.vx, vy=tr.vy,
                         sample_dt=tr.sample_dt)
        with pytest.raises(NonUniformSampling):
            harmonic_spectrum(bad, "x", base_omega=1.0)


class TestRange:
    def test_pure_tone_range(self):
        assert range_of_motion(tone_trajectory(), "x") == pytest.approx(2.0, abs=1e-9)

    def test_constant_trajectory(self):
        t = np.arange(100) * 0.1
        tr = Trajectory(t=t, x=np.full_like(t, 1.5), y=np.zeros_like(t),
                        vx=np.zeros_like(t), vy=np.zeros_like(t), sample_dt=0.1)
        assert range_of_motion(tr, "x") == 0.0


class TestPeriod:
    def test_tone_period(self):
        T = period_estimate(tone_trajectory(), tol=1e-5)
        assert T == pytest.approx(2.0 * math.pi, abs=1e-4)

    def test_half_period_signal(self):
        t = np.arange(2001) * (math.pi / 100)
        tr = Trajectory(t=t, x=np.sin(2 * t), y=np.cos(2 * t),
                        vx=2 * np.cos(2 * t), vy=-2 * np.sin(2 * t),
                        sample_dt=math.pi / 100)
        assert period_estimate(tr, tol=1e-5) == pytest.approx(math.pi, abs=1e-4)

    def test_drifting_signal_has_no_period(self):
        t = np.arange(2001) * (math.pi / 100)
        tr = Trajectory(t=t, x=0.1 * t, y=np.cos(t), vx=np.full_like(t, 0.1),
                        vy=-np.sin(t), sample_dt=math.pi / 100)
        with pytest.raises(NoPeriodFound):
            period_estimate(tr, tol=1e-5)

    def test_commensurable_trajectory_period(self):
        # omega = (2, 1) with s2 = 1 has base period 2 pi
        cfg = bell_config(2.0, 1.0, 2e-5)
        traj = integrate(cfg, PhasePoint(2.0, 2.0, 0.0), 6.0 * math.pi,
                         IntegratorConfig(atol=1e-14, rtol=1e-13),
                         sample_dt=math.pi / 500)
        assert period_estimate(traj, tol=1e-5) == pytest.approx(
            2.0 * math.pi, abs=1e-4)


class TestIsotropicFamily:
    def test_module_example_leading_harmonics_at_textbook_ic(self):
        icfg = IntegratorConfig(atol=1e-13, rtol=1e-12)
        weak = integrate(isotropic(2e-5), PhasePoint(3.0, 2.0, 0.0),
                         20.0 * math.pi, icfg, sample_dt=math.pi / 500)
        assert harmonic_spectrum(weak, "x", 1.0).leading_m == 1
        bell = integrate(isotropic(SQRT2_2), PhasePoint(3.0, 2.0, 0.0),
                         20.0 * math.pi, icfg, sample_dt=math.pi / 500)
        assert harmonic_spectrum(bell, "x", 1.0).leading_m == 2

    def test_sweep_ranges_and_harmonics(self, fig9_sweep):
        _summary, rows, _dir = fig9_sweep
        delta_x = [r[1] for r in rows]
        assert delta_x[0] == pytest.approx(5.657, abs=0.01)
        assert delta_x[-1] == pytest.approx(0.464, abs=0.01)
        assert all(a >= b - 1e-9 for a, b in zip(delta_x, delta_x[1:]))
        leading = [r[3] for r in rows]
        assert leading[1] == 1          # c2 = 2e-5
        assert leading[-1] == 2         # maximal entanglement
        # isotropic coupling ties the two ranges together
        for r in rows:
            assert r[2] == pytest.approx(r[1], rel=1e-6)

    def test_sweep_harmonic_crossover(self, fig9_sweep):
        _summary, rows, _dir = fig9_sweep
        ratios = [r[6] for r in rows if r[6] is not None]
        assert all(b > a - 1e-12 for a, b in zip(ratios, ratios[1:]))

    def test_sweep_periods(self, fig9_sweep):
        _summary, rows, _dir = fig9_sweep
        for r in rows[:-1]:
            assert r[7] == pytest.approx(2.0 * math.pi, abs=1e-4)
        assert rows[-1][7] == pytest.approx(math.pi, abs=1e-4)
