"""Smoke tests for the python bindings and the command line tool."""

import json
import math
import os
import subprocess

import pytest

import fdlab


def test_bubble_values():
    assert fdlab.alpha_n(3) == pytest.approx(3.0 ** 0.25, rel=1e-14)
    assert fdlab.bubble_U([0.0, 0.0, 0.0], 3) == pytest.approx(
        fdlab.alpha_n(3), rel=1e-14
    )
    assert fdlab.bubble_U([0.0] * 4, 4) == pytest.approx(
        math.sqrt(8.0), rel=1e-14
    )
    # dilation kernel vanishes at |y| = 1
    assert abs(fdlab.kernel_Z(4, [1.0, 0.0, 0.0], 3)) < 1e-15


def test_greens_ball():
    ball = fdlab.DomainSpec("unit_ball", 1.0, [], 3)
    a3 = fdlab.alpha_n(3)
    assert fdlab.green(ball, [0.5, 0, 0], [0, 0, 0]) == pytest.approx(
        a3, rel=1e-13
    )
    assert fdlab.regular_part(ball, [0.5, 0, 0], [0.5, 0, 0]) == pytest.approx(
        a3 / 0.75, rel=1e-13
    )
    m = fdlab.robin_matrix(ball, [[0.4, 0, 0], [-0.4, 0, 0]])
    assert fdlab.is_positive_definite(m)
    assert m.at(0, 0) == pytest.approx(m.at(1, 1), rel=1e-12)


def test_solve_b_and_scaling_law():
    ball = fdlab.DomainSpec("unit_ball", 1.0, [], 3)
    m = fdlab.robin_matrix(ball, [[0, 0, 0]])
    b = fdlab.solve_b(m, 3)
    assert b[0] == pytest.approx(2.0 / fdlab.alpha_n(3), rel=1e-10)

    c1, c2 = fdlab.constants_c1_c2(3)
    o1, o2 = fdlab.oracles.c1c2_closed_form(3)
    assert c1 == pytest.approx(o1, rel=1e-12)
    assert c2 == pytest.approx(o2, rel=1e-12)

    law = fdlab.ScalingLaw.make(3, 10.0)
    assert fdlab.mu0(40.0, law) == pytest.approx(
        fdlab.mu0(10.0, law) / 4.0, rel=1e-14
    )


def test_theoretical_rates():
    assert fdlab.theoretical_rates(3, 0.2) == pytest.approx((1.25, 2.5))
    assert fdlab.theoretical_rates(4, 1.0 / 3.0) == pytest.approx((1.5, 1.5))
    assert fdlab.theoretical_rates(3, 0.5) == pytest.approx((2.0, 0.0))
    with pytest.raises(Exception):
        fdlab.theoretical_rates(3, 0.1)


def test_small_extinction_run():
    grid = fdlab.RadialGrid.make(3, 1.0, 128, fdlab.GridStretching.Uniform)
    values = [10.0 * (1.0 - r * r) ** 2 for r in grid.nodes]
    values[-1] = 0.0
    state = fdlab.RadialState(grid, 0.0, values, fdlab.StateForm.WForm, 0.5)
    cfg = fdlab.SolverConfig()
    cfg.dt_init = 1e-5
    rec = fdlab.simulate_to_extinction(state, cfg)
    T, ci = fdlab.estimate_T(rec, 0.5)
    assert T > 0
    fit = fdlab.fit_rate(rec, T, fdlab.RateModel.PurePower)
    assert fit.power == pytest.approx(2.0, rel=0.1)


def test_transform_round_trip():
    grid = fdlab.RadialGrid.make(3, 1.0, 64, fdlab.GridStretching.Uniform)
    values = [2.0 * (1.0 - r * r) for r in grid.nodes]
    values[-1] = 0.0
    w = fdlab.RadialState(grid, 0.3, values, fdlab.StateForm.WForm, 0.2)
    back = fdlab.transform_u_to_w(fdlab.transform_w_to_u(w, 2.0), 2.0)
    assert back.t == pytest.approx(0.3, abs=1e-14)
    assert max(
        abs(a - b) for a, b in zip(back.values, values)
    ) < 1e-13


def test_stereographic():
    south = fdlab.stereographic([0.0, 0.0, 0.0])
    assert south[-1] == pytest.approx(-1.0)
    y = fdlab.inverse_stereographic(fdlab.stereographic([0.3, -0.7, 1.1]))
    assert y == pytest.approx([0.3, -0.7, 1.1], abs=1e-14)


@pytest.mark.skipif("FDLAB_CLI" not in os.environ, reason="CLI path unset")
def test_cli_round_trip(tmp_path):
    cfg = {
        "dimension": 3,
        "exponent": "critical",
        "ansatz": {"k": 1, "points": [[0.0, 0.0, 0.0]], "t0": 1.0,
                   "eps": 0.4},
        "grid": {"intervals": 128, "stretching": "graded"},
        "output": {"prefix": "smoke"},
    }
    cpath = tmp_path / "config.json"
    cpath.write_text(json.dumps(cfg))
    out = tmp_path / "out"
    exe = os.environ["FDLAB_CLI"]
    subprocess.run(
        [exe, "solve-b", "--config", str(cpath), "--out", str(out)],
        check=True,
    )
    data = json.loads((out / "smoke_solve_b.json").read_text())
    assert data["b"][0] == pytest.approx(1.519671371, rel=1e-8)
    assert (out / "smoke_config.json").exists()

    bad = subprocess.run(
        [exe, "simulate", "--config", str(tmp_path / "nope.json")],
        capture_output=True,
    )
    assert bad.returncode == 2
    err = json.loads(bad.stderr.decode())
    assert err["error"]["code"] == "ConfigInvalid"
