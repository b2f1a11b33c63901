"""Golden trajectories for whole resolution runs.

Each test pins down the full audit trail of one input: the invariant at
every stage, the centers chosen, and the exponent bookkeeping.  The values
were computed by hand (the curve cases) or by the standalone exponent-game
simulation in oracles.py (the monomial case) before the driver produced
them.
"""

from __future__ import annotations

import json

import pytest

from blowup.driver import Resolver
from blowup.polyring import Context

from oracles import monomial_game


def _run(vars, gens, bound=1, **kw):
    ctx = Context(vars)
    return Resolver(ctx, [ctx.parse(g) for g in gens], bound, **kw).run()


def _stage_invariants(trace):
    out = {}
    for node in trace["nodes"]:
        prev = out.setdefault(node["stage"], node["invariant"])
        assert prev == node["invariant"]
    return [out[s] for s in sorted(out)]


def _centers(trace, stage):
    return [
        (n["chart"], n["center"]) for n in trace["nodes"] if n["stage"] == stage
    ]


def test_cusp_principalization_trajectory():
    trace = _run(["x", "y"], ["x^2 - y^3"])
    assert trace["result"]["status"] == "resolved"
    assert _stage_invariants(trace) == [
        "[(2,0), (3/2,0), inf]",
        "[(1,1), (2,0), inf]",
        "[(1,1), Γ(-1, 1, [2]), inf]",
        "[(1,0), inf, inf]",
        "[Γ(-1, 2, [3]), inf, inf]",
        "[Γ(-1, 1, [4]), inf, inf]",
        "[Γ(-1, 1, [2]), inf, inf]",
        "[Γ(-1, 1, [1]), inf, inf]",
        "[inf, inf, inf]",
    ]
    # the codimension-one part of the singular locus is carved out at stage 3
    divisorial = {
        chart: center["hypersurface"]
        for chart, center in _centers(trace, 3)
    }
    assert divisorial == {1: "x*y^3 - 1", 4: "x^2*y - 1", 5: "y - 1", 6: "x - 1"}
    stage3_labels = set()
    for node in trace["nodes"]:
        if node["stage"] == 3:
            stage3_labels |= {int(k) for k in node["a"]}
    assert stage3_labels == {1, 2, 3}
    # every leaf ends with an exact monomial certificate
    principal = trace["result"]["principal"]
    final = max(n["stage"] for n in trace["nodes"])
    leaves = {str(n["chart"]) for n in trace["nodes"] if n["stage"] == final}
    assert set(principal) == leaves
    assert trace["result"]["divisorial_factors"]["11"] == [
        {"hypersurface": "x^2*y - 1", "power": 1}
    ]


def test_cusp_desingularization():
    trace = _run(["x", "y"], ["x^2 - y^3"], mode="desing")
    assert trace["result"]["status"] == "desingularized"
    block = trace["result"]["desing"]
    assert block["stage"] == 3
    assert block["strict"] == {
        "1": ["x*y^3 - 1"],
        "4": ["x^2*y - 1"],
        "5": ["y - 1"],
        "6": ["x - 1"],
    }
    assert all(block["smooth"].values())
    assert block["crossings"] == {"1": [], "4": [], "5": [3], "6": [3]}
    assert max(n["stage"] for n in trace["nodes"]) == 3


def test_quintic_trajectory():
    trace = _run(["x", "y"], ["x^2 - y^5"])
    assert trace["result"]["status"] == "resolved"
    invs = _stage_invariants(trace)
    assert invs[0].startswith("[(2,0)")
    assert invs[1].startswith("[(2,0)")
    assert invs[2].startswith("[(1,1)")
    assert invs[3].startswith("[(1,1)")
    by_chart = {
        n["chart"]: n for n in trace["nodes"] if n["stage"] == 2
    }
    assert by_chart[3]["c"] == {"1": 2, "2": 4}
    assert by_chart[3]["a"] == {"1": 1, "2": 2}
    assert by_chart[4]["c"] == {"2": 4}
    assert by_chart[4]["a"] == {"2": 2}


def test_quintic_desingularizes_at_stage_four():
    trace = _run(["x", "y"], ["x^2 - y^5"], mode="desing")
    assert trace["result"]["status"] == "desingularized"
    assert trace["result"]["desing"]["stage"] == 4


def test_monomial_run_matches_the_exponent_game():
    trace = _run(
        ["x1", "x2", "x3"], ["x1^6 * x2^7 * x3^4"], 5, initial_divisors=[0, 1, 2]
    )
    assert trace["result"]["status"] == "resolved"
    invs = _stage_invariants(trace)
    assert invs == [
        "[Γ(-1, 7/5, [2]), inf, inf, inf]",
        "[Γ(-1, 6/5, [1]), inf, inf, inf]",
        "[Γ(-2, 6/5, [4, 3]), inf, inf, inf]",
        "[Γ(-2, 1, [6, 3]), inf, inf, inf]",
        "[Γ(-2, 1, [5, 3]), inf, inf, inf]",
        "[inf, inf, inf, inf]",
    ]
    # stage count agrees with the standalone simulation
    game = monomial_game({1: 6, 2: 7, 3: 4}, 5)
    assert len(game) == len(invs) - 1 == 5
    first_centers = [c for _, c in _centers(trace, 0) if c]
    assert first_centers == [{"vars": ["x2"], "change": None}]
    assert [c for _, c in _centers(trace, 1) if c] == [
        {"vars": ["x1"], "change": None}
    ]
    assert ["x1^6*x2^2*x3^4"] in [
        n["J"] for n in trace["nodes"] if n["stage"] == 1
    ]
    assert ["x1*x2^2*x3^4"] in [
        n["J"] for n in trace["nodes"] if n["stage"] == 2
    ]


def test_surface_descends_to_a_plane_curve():
    trace = _run(["x", "y", "z"], ["z^2 + x^2 + y^3"], mode="desing")
    # the run descends twice, blows up the origin, and later stops on a
    # codimension-one center that is not a coordinate
    assert trace["result"]["status"] == "aborted:center-not-coordinate"
    assert trace["descents"][0] == {
        "stage": 0,
        "chart": 0,
        "variable": "z",
        "coefficient": ["y^3 + x^2"],
        "bound": 2,
    }
    assert trace["descents"][1] == {
        "stage": 0,
        "chart": 0,
        "variable": "x",
        "coefficient": ["y^3"],
        "bound": 2,
    }
    stage0 = [n for n in trace["nodes"] if n["stage"] == 0]
    assert stage0[0]["center"] == {"vars": ["x", "y", "z"], "change": None}
    assert stage0[0]["invariant"].startswith("[(2,0)")
    stage1 = [n for n in trace["nodes"] if n["stage"] == 1]
    assert stage1[0]["invariant"].startswith("[(1,1)")


def test_smooth_input_detected_at_stage_zero():
    trace = _run(["x", "y"], ["x"], mode="desing")
    assert trace["result"]["status"] == "desingularized"
    assert trace["result"]["desing"]["stage"] == 0
    assert trace["result"]["desing"]["strict"] == {"0": ["x"]}


def test_non_reduced_input_never_reaches_the_smooth_value():
    trace = _run(["x", "y"], ["x^2"], mode="desing")
    assert trace["result"]["status"] == "aborted:desing-not-reached"
    assert trace["result"]["error"]["error"] == "desing-not-reached"


def test_normal_crossing_pair_resolves():
    trace = _run(["x", "y"], ["x*y"])
    assert trace["result"]["status"] == "resolved"
    assert sorted({n["stage"] for n in trace["nodes"]}) == [0, 1, 2, 3, 4, 5]


def test_space_curve_aborts_on_a_non_coordinate_center():
    trace = _run(["x", "y", "z"], ["z", "x^2 - y^3"], mode="desing")
    assert trace["result"]["status"] == "aborted:center-not-coordinate"
    assert "x*y^3 - 1" in trace["result"]["error"]["detail"]
    # the partial trace keeps everything computed before the abort
    assert sorted({n["stage"] for n in trace["nodes"]}) == [0, 1, 2, 3]


def test_nodal_curve_aborts_early():
    trace = _run(["x", "y"], ["y^2 - x^3 - x^2"], mode="desing")
    assert trace["result"]["status"] == "aborted:center-not-coordinate"
    assert sorted({n["stage"] for n in trace["nodes"]}) == [0, 1]


def test_step_budget():
    trace = _run(["x", "y"], ["x^2 - y^3"], max_steps=1)
    assert trace["result"]["status"] == "aborted:budget-exceeded"
    assert "budget of 1" in trace["result"]["error"]["detail"]


def test_constructor_validation():
    ctx = Context(["x", "y"])
    with pytest.raises(ValueError):
        Resolver(ctx, [ctx.zero()], 1)
    with pytest.raises(ValueError):
        Resolver(ctx, [ctx.parse("x")], 0)
    with pytest.raises(ValueError):
        Resolver(ctx, [ctx.parse("x")], 1, mode="smooth")
    res = Resolver(ctx, [ctx.parse("x")], 1)
    res.run()
    with pytest.raises(RuntimeError):
        res.run()


def test_runs_are_reproducible():
    first = _run(["x", "y"], ["x^2 - y^3"])
    second = _run(["x", "y"], ["x^2 - y^3"])
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
