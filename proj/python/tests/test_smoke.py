import math

import numpy as np
import pytest

import lempertkit as lk


def test_ball_distance_matches_closed_form():
    ball = lk.Domain.ball(2)
    z, w = lk.vector(0, 0), lk.vector(0.5, 0)
    assert lk.kobayashi_distance(ball, z, w) == pytest.approx(math.atanh(0.5), rel=1e-10)
    assert lk.ball_kobayashi(z, w) == pytest.approx(math.atanh(0.5), rel=1e-14)


def test_boundary_solve_certifies():
    ball = lk.Domain.ball(2)
    pair = lk.solve_boundary(ball, [1, 0], [0.6, 0.8j])
    assert pair["certificate"]["verdict"] == "PASS"
    assert pair["residuals"]["boundary"] < 1e-10


def test_spherical_rep_on_ball_is_identity():
    rep = lk.SphericalRep(lk.Domain.ball(2), lk.vector(1, 0))
    z = lk.vector(0.2 + 0.1j, -0.3)
    assert np.allclose(rep.map(z), z, atol=1e-10)
    assert rep.kernel(lk.vector(0, 0)) == pytest.approx(-1.0)


def test_domain_json_round_trip():
    d = lk.Domain.from_json('{"kind": "perturbed_ball", "n": 2, "params": {"eps": 0.1}}')
    assert d.kind == "perturbed-ball"
    assert d.dim == 2
    assert lk.Domain.from_json(d.to_json()).to_json() == d.to_json()


def test_errors_are_translated():
    with pytest.raises(lk.LempertError, match="near-tangential"):
        lk.solve_boundary(lk.Domain.ball(2), [1, 0], [1e-5, 1])
    with pytest.raises(lk.LempertError):
        lk.Domain.ball(1)


def test_counterexample_and_suite():
    s = lk.shoikhet_counterexample()
    assert s["violated"] and s["lhs"] > s["rhs"]
    report = lk.run_suite("rigidity", seed=3)
    assert report["verdict"] == "PASS"
    assert report == lk.run_suite("rigidity", seed=3)
