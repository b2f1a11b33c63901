"""Acceptance suite.

Eight criteria, one test each; every test prints a single PASS/FAIL line
(visible with pytest -s) and fails loudly if any sub-check is violated.
All equalities are exact — no tolerances anywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from blowup.charts import ChartTree
from blowup.contact import coefficient_bound, coefficient_ideal, find_maximal_contact
from blowup.delta import delta, delta_power, max_order, sing
from blowup.driver import Resolver
from blowup.ideals import Ideal, radical_contains
from blowup.invariants import parse_vector
from blowup.polyring import Context
from blowup.transforms import (
    controlled_transform,
    reduced_part,
    strict_transform,
    total_transform,
)

from oracles import ideal_order_at, monomial_game, sibling_transition


def _verdict(num: int, label: str, problems: list[str]):
    status = "PASS" if not problems else "FAIL"
    print(f"{status} criterion {num}: {label}")
    assert not problems, f"criterion {num} ({label}): " + "; ".join(problems)


def _check(problems: list[str], ok: bool, what: str):
    if not ok:
        problems.append(what)


def _run(vars, gens, bound=1, **kw):
    ctx = Context(vars)
    return Resolver(ctx, [ctx.parse(g) for g in gens], bound, **kw).run()


def _stage_invariants(trace):
    out = {}
    for node in trace["nodes"]:
        out.setdefault(node["stage"], node["invariant"])
    return [out[s] for s in sorted(out)]


def test_criterion_1_delta_chain():
    problems = []
    ctx = Context(["X", "Y", "Z"])
    j = Ideal(ctx, [ctx.parse("Z^3 + X*Y^2*Z + X^5")])
    d1 = delta_power(j, 1)
    d2 = delta_power(j, 2)
    d3 = delta_power(j, 3)
    expected_d1 = Ideal(ctx, [ctx.parse(t) for t in (
        "3*Z^2 + X*Y^2", "Y^2*Z + 5*X^4", "2*X*Y*Z", "Z^3 + X*Y^2*Z + X^5")])
    expected_d2 = Ideal(ctx, [ctx.parse(t) for t in ("Z", "X*Y", "Y^2", "X^3")])
    _check(problems, d1.contains_ideal(expected_d1)
           and expected_d1.contains_ideal(d1), "first delta differs")
    _check(problems, d2.contains_ideal(expected_d2)
           and expected_d2.contains_ideal(d2), "second delta differs")
    _check(problems, d3.is_trivial(), "third delta is not the whole ring")
    _check(problems, max_order(j) == 3, f"max_order is {max_order(j)}, not 3")
    _verdict(1, "delta chain and max order of the three-fold", problems)


def test_criterion_2_contact_and_coefficient_ideals():
    problems = []
    ctx = Context(["X", "Y", "Z"])
    f = Ideal(ctx, [ctx.parse("Z^2 + 2*X*Z + X^2 + X*Y^2")])
    mc = find_maximal_contact(delta_power(f, 1))
    _check(problems, mc.var == 2, f"contact variable is {mc.var}, not Z")
    _check(problems, mc.needs_change and mc.shift == ctx.parse("X"),
           "contact change is not Z -> Z + X")
    moved = Ideal(ctx, [g.shift_variable(mc.var, -mc.shift) for g in f.gens])
    k_f = coefficient_ideal(moved, 2, mc.var)
    _check(problems, k_f.equals(Ideal(ctx, [ctx.parse("X*Y^2")])),
           f"coefficient ideal of f is {[str(g) for g in k_f.gens]}")
    _check(problems, coefficient_bound(2) == 2, "bound for b=2 is not 2")

    g = Ideal(ctx, [ctx.parse("Z^3 + X*Y^2*Z + X^5")])
    mc_g = find_maximal_contact(delta_power(g, 2))
    _check(problems, mc_g.var == 2 and not mc_g.needs_change,
           "contact for g is not the coordinate Z")
    k_g = coefficient_ideal(g, 3, 2)
    expected = Ideal(ctx, [ctx.parse("(X*Y^2)^3"), ctx.parse("(X^5)^2")])
    _check(problems, k_g.equals(expected),
           f"coefficient ideal of g is {[str(p) for p in k_g.gens]}")
    _check(problems, coefficient_bound(3) == 6, "bound for b=3 is not 6")
    _verdict(2, "Tschirnhausen change and coefficient ideals", problems)


def test_criterion_3_descent_commutes_with_blowup():
    problems = []
    ctx = Context(["X", "Y", "Z"])
    g = Ideal(ctx, [ctx.parse("Z^3 + X*Y^2*Z + X^5")])
    k = coefficient_ideal(g, 3, 2)
    tree = ChartTree(ctx)
    _, kids = tree.blowup(0, (0, 1, 2))
    uy = next(tree.charts[c] for c in kids if tree.charts[c].pivot == 1)
    g1 = controlled_transform(g, uy, 3)
    _check(problems,
           g1.equals(Ideal(ctx, [ctx.parse("Z^3 + X*Y*Z + X^5*Y^2")])),
           f"transformed g is {[str(p) for p in g1.gens]}")
    transformed_k = controlled_transform(k, uy, 6)
    descended = coefficient_ideal(g1, 3, 2)
    _check(problems, transformed_k.equals(descended)
           and descended.contains_ideal(transformed_k),
           "transform of the coefficient ideal differs from the "
           "coefficient ideal of the transform")
    hand = Ideal(ctx, [ctx.parse("X^3*Y^3"), ctx.parse("X^10*Y^4")])
    _check(problems, descended.equals(hand),
           f"descended ideal is {[str(p) for p in descended.gens]}")
    _verdict(3, "coefficient-ideal descent commutes with blow-up", problems)


def test_criterion_4_cusp_trajectory():
    problems = []
    trace = _run(["x", "y"], ["x^2 - y^3"])
    invs = _stage_invariants(trace)
    heads = [inv[1:inv.index(")") + 1] for inv in invs[:4]]
    _check(problems, heads == ["(2,0)", "(1,1)", "(1,1)", "(1,0)"],
           f"max t sequence is {heads}")
    exps = {}
    for node in trace["nodes"]:
        if node["stage"] == 3:
            for label, e in node["a"].items():
                exps[int(label)] = e
    _check(problems, [exps[l] for l in sorted(exps)] == [1, 1, 2],
           f"stage-3 exceptional exponents are {exps}")
    desing = _run(["x", "y"], ["x^2 - y^3"], mode="desing")
    _check(problems, desing["result"]["status"] == "desingularized"
           and desing["result"]["desing"]["stage"] == 3,
           "embedded desingularization not detected at stage 3")
    _verdict(4, "cusp invariant trajectory and desingularization", problems)


def test_criterion_5_quintic_exponents():
    problems = []
    trace = _run(["x", "y"], ["x^2 - y^5"])
    stage2 = {n["chart"]: n for n in trace["nodes"] if n["stage"] == 2}
    deep = stage2[3]  # the chart crossing both divisors
    _check(problems, deep["c"] == {"1": 2, "2": 4},
           f"total-transform exponents are {deep['c']}")
    _check(problems, deep["a"] == {"1": 1, "2": 2},
           f"reduced-part exponents are {deep['a']}")

    # independent reconstruction of the same chart
    ctx = Context(["x", "y"])
    j = Ideal(ctx, [ctx.parse("x^2 - y^5")])
    tree = ChartTree(ctx)
    _, (_, cy) = tree.blowup(0, (0, 1))
    _, (c3, _) = tree.blowup(cy, (0, 1))
    mid = tree.charts[cy]
    chart = tree.charts[c3]
    total = total_transform(total_transform(j, mid), chart)
    reduced, c_exps = reduced_part(total, chart)
    _check(problems, c_exps == {1: 2, 2: 4},
           f"recomputed total exponents are {c_exps}")
    controlled = controlled_transform(controlled_transform(j, mid, 1), chart, 1)
    _, a_exps = reduced_part(controlled, chart)
    _check(problems, a_exps == {1: 1, 2: 2},
           f"recomputed reduced exponents are {a_exps}")
    strict = strict_transform(strict_transform(j, mid), chart)
    _check(problems, reduced.equals(strict) and strict.contains_ideal(reduced),
           "reduced part differs from the strict transform")
    _verdict(5, "quintic principalization exponents", problems)


def test_criterion_6_monomial_phase():
    problems = []
    trace = _run(["x1", "x2", "x3"], ["x1^6 * x2^7 * x3^4"], 5,
                 initial_divisors=[0, 1, 2])
    centers = []
    for stage in (0, 1):
        for node in trace["nodes"]:
            if node["stage"] == stage and node["center"]:
                centers.append(node["center"]["vars"])
    _check(problems, centers == [["x2"], ["x1"]],
           f"first centers are {centers}")
    states = {s: [n["J"] for n in trace["nodes"] if n["stage"] == s]
              for s in (1, 2)}
    _check(problems, states[1] == [["x1^6*x2^2*x3^4"]],
           f"stage-1 state is {states[1]}")
    _check(problems, states[2] == [["x1*x2^2*x3^4"]],
           f"stage-2 state is {states[2]}")
    invs = [parse_vector(t) for t in _stage_invariants(trace)]
    _check(problems,
           all(invs[i] > invs[i + 1] for i in range(len(invs) - 2)),
           "the maxima do not strictly decrease")
    _check(problems, trace["result"]["status"] == "resolved",
           f"status is {trace['result']['status']}")
    steps = len(_stage_invariants(trace)) - 1
    game = monomial_game({1: 6, 2: 7, 3: 4}, 5)
    _check(problems, steps == len(game) == 5,
           f"run took {steps} steps, simulation {len(game)}, golden 5")
    _verdict(6, "combinatorial phase on a monomial state", problems)


def test_criterion_7_surface_start():
    problems = []
    ctx = Context(["x", "y", "z"])
    f = Ideal(ctx, [ctx.parse("z^2 + x^2 + y^3")])
    mc = find_maximal_contact(delta_power(f, 1))
    _check(problems, mc.var == 2 and not mc.needs_change,
           "maximal contact is not the coordinate z")
    k = coefficient_ideal(f, 2, 2)
    _check(problems, k.equals(Ideal(ctx, [ctx.parse("x^2 + y^3")])),
           f"coefficient ideal is {[str(p) for p in k.gens]}")
    _check(problems, coefficient_bound(2) == 2, "descent bound is not 2")

    trace = _run(["x", "y", "z"], ["z^2 + x^2 + y^3"], mode="desing")
    first = next(n for n in trace["nodes"] if n["stage"] == 0)
    _check(problems, first["center"] == {"vars": ["x", "y", "z"], "change": None},
           f"first center is {first['center']}")
    _check(problems, trace["descents"][0] == {
        "stage": 0, "chart": 0, "variable": "z",
        "coefficient": ["y^3 + x^2"], "bound": 2,
    }, f"first descent is {trace['descents'][0]}")
    invs = _stage_invariants(trace)
    _check(problems, invs[0].startswith("[(2,0)")
           and invs[1].startswith("[(1,1)"),
           f"max t moves {invs[0]} -> {invs[1]}")
    _verdict(7, "surface resolution starts at the origin via descent", problems)


# -- criterion 8: property suites ------------------------------------------

_CTX3 = Context(["x", "y", "z"])
_MONOS3 = []
for _d in range(1, 4):
    for _combo in combinations_with_replacement(range(3), _d):
        _e = [0, 0, 0]
        for _v in _combo:
            _e[_v] += 1
        _MONOS3.append(tuple(_e))


def _random_principal(rng):
    p = _CTX3.zero()
    for m in rng.sample(_MONOS3, rng.randint(1, 4)):
        c = rng.randint(-3, 3)
        if c:
            p = p + _CTX3.monomial(m, c)
    return p if not p.is_zero() else _CTX3.var(0)


def test_criterion_8_property_suites():
    problems = []
    rng = random.Random(2026)

    # (a) + (b): delta containment and max-order monotonicity under one
    # blow-up of the origin, bound = order of the ideal there
    for _ in range(100):
        f = _random_principal(rng)
        j = Ideal(_CTX3, [f])
        b = f.order()
        dj = delta(j)
        m0 = max_order(j)
        tree = ChartTree(_CTX3)
        _, kids = tree.blowup(0, (0, 1, 2))
        for cid in kids:
            chart = tree.charts[cid]
            j1 = controlled_transform(j, chart, b)
            dj1 = (controlled_transform(dj, chart, b - 1) if b > 1
                   else total_transform(dj, chart))
            d_of_j1 = delta(j1)
            if not all(d_of_j1.contains(g) for g in dj1.gens):
                problems.append(f"(a) containment fails for {f} in chart {cid}")
            if max_order(j1) > m0:
                problems.append(f"(b) max order grows for {f} in chart {cid}")

    # (c) rescaling invariance: (J, 1) and (J^2, 2) run identically
    for gen in ("x^2 - y^3", "x^2 - y^5"):
        ctx = Context(["x", "y"])
        f = ctx.parse(gen)
        t1 = Resolver(ctx, [f], 1).run()
        t2 = Resolver(ctx, [f * f], 2).run()
        if t1["charts"] != t2["charts"] or t1["changes"] != t2["changes"]:
            problems.append(f"(c) chart trees differ for {gen}")
        n1 = {(n["stage"], n["chart"]): n for n in t1["nodes"]}
        n2 = {(n["stage"], n["chart"]): n for n in t2["nodes"]}
        if set(n1) != set(n2):
            problems.append(f"(c) node sets differ for {gen}")
        else:
            for key, a in n1.items():
                b_node = n2[key]
                if a["invariant"] != b_node["invariant"]:
                    problems.append(f"(c) invariant differs at {key} for {gen}")
                ca, cb = a["center"], b_node["center"]
                fields = ("vars", "change", "hypersurface")
                if (ca is None) != (cb is None) or (
                        ca and any(ca.get(x) != cb.get(x) for x in fields)):
                    problems.append(f"(c) center differs at {key} for {gen}")
        s1 = sing(Ideal(ctx, [f]), 1)
        s2 = sing(Ideal(ctx, [f * f]), 2)
        if not (all(radical_contains(s2, g) for g in s1.gens)
                and all(radical_contains(s1, g) for g in s2.gens)):
            problems.append(f"(c) singular loci differ for {gen}")

    # (d) the order of the transformed ideal is chart-independent on
    # overlaps, including points of the fresh exceptional divisor
    cases = [
        (Context(["x", "y"]), ["x^2 - y^3"], 1, (0, 1)),
        (Context(["x", "y"]), ["x^2 - y^5"], 1, (0, 1)),
        (Context(["x", "y", "z"]), ["z^2 + x^2 + y^3"], 1, (0, 1, 2)),
        (Context(["x", "y", "z"]), ["z^3 + x*y^2*z + x^5"], 3, (0, 1, 2)),
    ]
    for ctx, gens, bound, center in cases:
        j = Ideal(ctx, [ctx.parse(g) for g in gens])
        tree = ChartTree(ctx)
        _, kids = tree.blowup(0, center)
        charts = [tree.charts[c] for c in kids]
        states = [controlled_transform(j, ch, bound) for ch in charts]
        for i in range(20):
            point = []
            for v in range(ctx.nvars):
                num = rng.randint(-6, 6) if i % 3 else rng.randint(1, 6)
                point.append(Fraction(num, rng.randint(1, 3)))
            src = charts[0]
            if i % 3 == 1:
                point[src.pivot] = Fraction(0)  # on the fresh divisor
            for dst, state in zip(charts[1:], states[1:]):
                if point[dst.pivot] == 0:
                    continue
                image = sibling_transition(
                    list(center), src.pivot, dst.pivot, tuple(point))
                o1 = ideal_order_at(states[0].gens, tuple(point))
                o2 = ideal_order_at(state.gens, image)
                if o1 != o2:
                    problems.append(
                        f"(d) order {o1} vs {o2} at {point} for {gens}")

    # (e) the global invariant maximum drops strictly at every stage of
    # every run; the empty-locus marker may only close a run
    runs = [
        _run(["x", "y"], ["x^2 - y^3"]),
        _run(["x", "y"], ["x^2 - y^3"], mode="desing"),
        _run(["x", "y"], ["x^2 - y^5"]),
        _run(["x", "y"], ["x*y"]),
        _run(["x1", "x2", "x3"], ["x1^6 * x2^7 * x3^4"], 5,
             initial_divisors=[0, 1, 2]),
    ]
    for trace in runs:
        vecs = [parse_vector(t) for t in _stage_invariants(trace)]
        terminal = parse_vector(
            "[" + ", ".join(["inf"] * len(vecs[0].entries)) + "]")
        for i in range(len(vecs) - 1):
            if vecs[i] == terminal:
                problems.append("(e) empty-locus marker before the last stage")
            elif not (vecs[i + 1] == terminal or vecs[i] > vecs[i + 1]):
                problems.append(
                    f"(e) no strict drop {vecs[i]} -> {vecs[i + 1]}")
    _verdict(8, "property suites (containment, monotonicity, rescaling, "
                "chart overlap, descent)", problems)
