import math
import random

import numpy as np
import pytest

from bohmium.errors import NodalDegeneracy, NoConvergence, OnlyNodeRoot
from bohmium.model import PhasePoint, StateKind, bell_config, state_peak_scale, state_value
from bohmium.nodal import (NodalPoint, allowed_parity, find_x_point,
                           find_x_points, nodal_position, nodal_positions,
                           nodal_ratio, nodal_velocity, npxpc_encounters)

SQRT2_2 = math.sqrt(2.0) / 2.0
WXY = 1.0 - math.sqrt(3.0)


def test_bell_node_closed_form():
    # with equal coefficients the log-ratio term drops out
    cfg = bell_config(1.0, math.sqrt(3.0), SQRT2_2)
    t = 1.0
    x, y = nodal_position(1, t, cfg)
    expected = (math.sqrt(2.0) * math.pi * math.cos(math.sqrt(3.0) * t)
                / (4.0 * 2.5 * math.sin(WXY * t)))
    assert x == pytest.approx(expected, rel=1e-13)


def test_nodes_annihilate_the_state():
    rng = random.Random(11)
    for kind in StateKind:
        for c2 in (0.3, SQRT2_2, 2e-5):
            cfg = bell_config(1.0, math.sqrt(3.0), c2, kind=kind)
            scale = state_peak_scale(cfg)
            n_checked = 0
            while n_checked < 200:
                t = rng.uniform(0.2, 60.0)
                try:
                    pts = nodal_positions(t, range(-9, 10), cfg,
                                          with_velocity=False)
                except NodalDegeneracy:
                    continue
                for p in pts:
                    v = abs(state_value(PhasePoint(p.x, p.y, t), cfg))
                    assert v < 1e-10 * scale
                    n_checked += 1


def test_parity_rule():
    pos = bell_config(1.0, math.sqrt(3.0), 0.5)
    neg = bell_config(1.0, math.sqrt(3.0), -0.5)
    assert allowed_parity(pos) == 1
    assert allowed_parity(neg) == 0
    ks_pos = {p.k for p in nodal_positions(1.0, range(-5, 6), pos, with_velocity=False)}
    ks_neg = {p.k for p in nodal_positions(1.0, range(-5, 6), neg, with_velocity=False)}
    assert all(k % 2 == 1 for k in ks_pos)
    assert all(k % 2 == 0 for k in ks_neg)
    assert 0 in ks_neg


def test_time_reversal_point_set_identity():
    for kind in StateKind:
        cfg = bell_config(1.0, math.sqrt(3.0), 0.3, kind=kind)
        fwd = {(p.x, p.y) for p in nodal_positions(2.0, range(-9, 10), cfg,
                                                   with_velocity=False)}
        bwd = {(p.x, p.y) for p in nodal_positions(-2.0, range(-9, 10), cfg,
                                                   with_velocity=False)}
        assert fwd == bwd


def test_ratio_law_matches_positions():
    rng = random.Random(3)
    for kind in StateKind:
        cfg = bell_config(1.0, math.sqrt(3.0), 0.37, kind=kind)
        checked = 0
        while checked < 100:
            k = rng.choice([-5, -3, -1, 1, 3, 5])
            t = rng.uniform(0.3, 20.0)
            try:
                x, y = nodal_position(k, t, cfg)
                r = nodal_ratio(k, t, cfg)
            except NodalDegeneracy:
                continue
            if abs(x) > 1e-6:
                assert r == pytest.approx(y / x, rel=1e-10, abs=1e-10)
                checked += 1


def test_isotropic_limit_pushes_nodes_out():
    cfg_near = bell_config(1.0, 1.0 + 1e-6, 0.3)
    x, y = nodal_position(1, 1.0, cfg_near)
    assert math.hypot(x, y) > 1e4
    assert y / x == pytest.approx(1.0, abs=1e-3)
    phi_near = bell_config(1.0, 1.0 + 1e-6, 0.3, kind=StateKind.PHI)
    x, y = nodal_position(1, 1.0, phi_near)
    assert y / x == pytest.approx(-1.0, abs=1e-3)
    with pytest.raises(NodalDegeneracy):
        nodal_position(1, 1.0, bell_config(1.0, 1.0, 0.3))


def test_product_state_degenerate():
    with pytest.raises(NodalDegeneracy):
        nodal_position(1, 1.0, bell_config(1.0, math.sqrt(3.0), 0.0))


class TestNodalVelocity:
    CFG = bell_config(1.0, math.sqrt(3.0), 2e-5)

    def test_speed_spikes_near_denominator_zeros(self):
        tz = abs(math.pi / WXY)
        for dt in (0.01, 0.02):
            vx, vy = nodal_velocity(1, tz + dt, self.CFG)
            assert math.hypot(vx, vy) > 1e3

    def test_velocity_vanishing_at_position_extremum(self):
        # bracket an extremum of x_nod(t) and confirm the derivative there
        ts = np.linspace(1.0, 3.0, 4001)
        xs = np.array([nodal_position(1, float(t), self.CFG)[0] for t in ts])
        i = int(np.argmax(xs[1:-1])) + 1
        lo, hi = ts[i - 1], ts[i + 1]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if (nodal_position(1, mid + 1e-9, self.CFG)[0]
                    > nodal_position(1, mid - 1e-9, self.CFG)[0]):
                lo = mid
            else:
                hi = mid
        vx, _vy = nodal_velocity(1, 0.5 * (lo + hi), self.CFG)
        assert abs(vx) < 1e-5

    def test_richardson_step_insensitivity(self):
        v1 = nodal_velocity(3, 2.1, self.CFG, h=1e-7)
        v2 = nodal_velocity(3, 2.1, self.CFG, h=5e-8)
        assert abs(v1[0] - v2[0]) < 1e-8
        assert abs(v1[1] - v2[1]) < 1e-8


class TestXPoints:
    def test_residual_contract(self):
        cfg = bell_config(1.0, math.sqrt(3.0), 2e-5)
        node = nodal_positions(2.3, range(1, 2), cfg)[0]
        xp = find_x_point(node, cfg)
        assert xp.residual < 1e-10
        assert math.hypot(xp.x - node.x, xp.y - node.y) > 0.03

    def test_multiple_roots_deduplicated(self):
        cfg = bell_config(1.0, math.sqrt(3.0), 2e-5)
        node = nodal_positions(2.3, range(1, 2), cfg)[0]
        roots = find_x_points(node, cfg)
        for i, a in enumerate(roots):
            for b in roots[i + 1:]:
                assert math.hypot(a.x - b.x, a.y - b.y) > 1e-6

    def test_only_node_root_detected(self, monkeypatch):
        # a rigid rotation about the node has no second stagnation point
        import bohmium.nodal as nodal_mod
        node = NodalPoint(k=1, x=0.3, y=-0.2, vx=0.5, vy=0.25, t=1.0,
                          kind=StateKind.PSI)

        def rot_field(cfg, g_min=0.0, lib=math):
            def f(x, y, t):
                return (node.vx - (y - node.y), node.vy + (x - node.x))
            return f

        def rot_jac(p, cfg, h=1e-6, g_min=0.0):
            from bohmium.velocity import Jacobian2
            return Jacobian2(0.0, -1.0, 1.0, 0.0)

        monkeypatch.setattr(nodal_mod, "make_field", rot_field)
        monkeypatch.setattr(nodal_mod, "velocity_jacobian", rot_jac)
        with pytest.raises(OnlyNodeRoot):
            find_x_points(node, None)

    def test_no_convergence_detected(self, monkeypatch):
        # a uniform field never matching the node velocity has no root at all
        import bohmium.nodal as nodal_mod
        node = NodalPoint(k=1, x=0.0, y=0.0, vx=1.0, vy=0.0, t=1.0,
                          kind=StateKind.PSI)

        def flat_field(cfg, g_min=0.0, lib=math):
            return lambda x, y, t: (0.0, 0.0)

        def flat_jac(p, cfg, h=1e-6, g_min=0.0):
            from bohmium.velocity import Jacobian2
            return Jacobian2(0.0, 0.0, 0.0, 0.0)

        monkeypatch.setattr(nodal_mod, "make_field", flat_field)
        monkeypatch.setattr(nodal_mod, "velocity_jacobian", flat_jac)
        with pytest.raises(NoConvergence):
            find_x_points(node, None)


class TestEncounters:
    def test_product_state_empty(self, fig5a_run):
        _cfg, traj, _rec = fig5a_run
        cfg0 = bell_config(1.0, math.sqrt(3.0), 0.0)
        assert npxpc_encounters(traj, cfg0) == []

    def test_encounter_near_every_strong_event(self, fig5b_run):
        cfg, traj, rec = fig5b_run
        hits = npxpc_encounters(traj, cfg, radius=0.5)
        hit_times = np.array([h[0] for h in hits])
        assert len(hit_times) > 0
        for t_e, _a in rec.events:
            assert np.abs(hit_times - t_e).min() <= 0.5

    def test_bell_has_more_encounters_than_weakly_entangled(self, fig5a_run,
                                                            bell100_run):
        # scattering needs close approaches: counted at the close-approach
        # radius where grazing the fast-moving far nodal curves (which
        # dominates dwell time for the confined weakly entangled orbit)
        # drops out
        cfg_a, traj_a, rec_a = fig5a_run
        cfg_b, traj_b, rec_b = bell100_run
        n_a = len(npxpc_encounters(traj_a, cfg_a, radius=0.2))
        n_b = len(npxpc_encounters(traj_b, cfg_b, radius=0.2))
        assert n_b > n_a
        assert len(rec_b.events) > len(rec_a.events)
