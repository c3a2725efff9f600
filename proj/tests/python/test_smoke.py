import math

import numpy as np
import pytest

import depletion as d

TF = 2.0 / math.sqrt(3.0) - 1.0


def contact_triplet(r=1.0):
    return [d.Ball([0.0, 0.0], r), d.Ball([2.0 * r, 0.0], r), d.Ball([r, math.sqrt(3.0) * r], r)]


def test_contact_triplet_delta_max():
    res = d.delta_max(contact_triplet())
    assert res.delta_max == pytest.approx(TF, abs=1e-12)
    assert res.case_tag == d.CaseTag.ApolloniusInterior
    assert np.asarray(res.witness_point).shape == (2,)


def test_descartes_and_wall():
    assert d.descartes_contact_radius(1, 2, 3) == pytest.approx(6 / 23, rel=1e-14)
    wall = d.HalfSpace([0.0, 1.0], 0.0)
    res = d.delta_max_wall(d.Ball([0.0, 1.0], 1.0), d.Ball([2.0, 1.0], 1.0), wall)
    assert res.delta_max == pytest.approx(0.25, abs=1e-12)


def test_thresholds_and_apollonius():
    balls = [d.Ball([0.0, 0.0], 1.0), d.Ball([3.0, 0.0], 1.0), d.Ball([0.0, 3.0], 1.0)]
    delta, order = d.pairwise_thresholds(balls)
    assert delta[2] == pytest.approx(0.5)
    assert sorted(order) == [0, 1, 2]
    sols = d.apollonius_solve(contact_triplet())
    assert any(abs(r - TF) < 1e-12 for _, r, _ in sols)


def test_oracles_agree():
    balls = [d.Ball([0.0, 0.0], 1.0), d.Ball([3.0, 0.2], 0.7), d.Ball([1.1, 2.6], 1.3)]
    value, point = d.minimax_delta(balls)
    assert value == pytest.approx(d.delta_max(balls).delta_max, abs=1e-8)
    assert d.triple_empty(balls, 0.99 * value)
    assert not d.triple_empty(balls, 1.01 * value)


def test_union_volume_matches_inclusion_exclusion_below_threshold():
    balls = contact_triplet()
    delta = 0.5 * TF
    vol, err = d.union_volume_mc(balls, delta, 200_000, 1)
    assert abs(vol - d.truncated_inclusion_exclusion(balls, delta)) < 4 * err


def test_potential():
    p = d.AOParameters(1.0, 0.1, 1.0)
    lens = d.pairwise_lens_area(d.Ball([0, 0, 0], 1.0), d.Ball([2.05, 0, 0], 1.0), 0.1)
    assert d.v_dep(2.05, p) == pytest.approx(-lens, rel=1e-12)
    assert d.v_dep(2.2, p) == 0.0
    assert math.isinf(d.v_eff(1.9, p))
    assert d.exactness_guard(p).satisfied
    r, veff, vdep = d.potential_table(p, 2.0, 2.2, 11)
    assert len(r) == 11 and vdep[-1] == 0.0


def test_criteria_and_bodies():
    bodies = contact_triplet()
    rep = d.theorem1_check(bodies, 0.1)
    assert rep.satisfied and rep.threshold == pytest.approx(TF)
    e = d.Ellipsoid.planar([0.0, 0.0], 2.0, 1.0, 0.0)
    assert d.rolling_radius(e) == pytest.approx(0.5)
    sq = d.ConvexPolygon([[0, 0], [1, 0], [1, 1], [0, 1]])
    assert d.rolling_radius(sq) == 0.0
    assert d.signed_distance(d.RoundedPolygon([[0, 0], [2, 0], [2, 2], [0, 2]], 0.5), [1, 1]) < 0


def test_errors_are_python_exceptions():
    with pytest.raises(d.InputError):
        d.delta_max([d.Ball([0.0, 0.0], 1.0), d.Ball([1.0, 0.0], 1.0), d.Ball([5.0, 0.0], 1.0)])
    with pytest.raises(ValueError):
        d.descartes_contact_radius(-1.0, 1.0, 1.0)
    with pytest.raises(d.CapabilityError):
        d.pairwise_lens_area(d.Ball([0, 0, 0, 0], 1.0), d.Ball([3, 0, 0, 0], 1.0), 0.1)


def test_scene_and_campaign():
    scene = d.parse_scene(
        '{"dimension": 2, "bodies": [{"type": "ball", "params": {"center": [0, 0], "radius": 1}}],'
        ' "delta": 0.1}'
    )
    assert scene["dimension"] == 2 and scene["delta"] == 0.1
    assert isinstance(scene["bodies"][0], d.Ball)
    assert "dichotomy" in d.campaign_names()
    passed, report = d.run_campaign("descartes", n_configs=20, seed=3)
    assert passed and "result: PASS" in report
