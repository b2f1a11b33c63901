from __future__ import annotations

import random
from fractions import Fraction

import pytest

from blowup.charts import Chart, ChartError, ChartTree, RationalFunction
from blowup.polyring import Context

from oracles import pull_to_child, push_to_parent, random_point

XY = Context(["x", "y"])
XYZ = Context(["x", "y", "z"])


def test_root_chart():
    tree = ChartTree(XY)
    root = tree.root
    assert root.id == 0
    assert root.parent is None
    assert root.pivot is None
    assert root.divisors == {}
    assert tree.frontier() == [0]
    with pytest.raises(ChartError):
        root.pull_from_parent(XY.parse("x"))


def test_blowup_of_origin_in_the_plane():
    tree = ChartTree(XY)
    label, children = tree.blowup(0, (0, 1))
    assert label == 1
    assert len(children) == 2
    ux, uy = tree[children[0]], tree[children[1]]
    assert ux.pivot == 0 and uy.pivot == 1
    # U_x: x -> x, y -> x*y ; U_y: x -> x*y, y -> y
    f = XY.parse("x^2 - y^3")
    assert ux.pull_from_parent(f) == XY.parse("x^2 - x^3*y^3")
    assert uy.pull_from_parent(f) == XY.parse("x^2*y^2 - y^3")
    assert ux.divisors == {0: 1}
    assert uy.divisors == {1: 1}
    assert tree.frontier() == children


def test_partial_center_blowup():
    tree = ChartTree(XYZ)
    _, children = tree.blowup(0, (0, 2))  # blow up the line V(x, z)
    ux, uz = (tree[c] for c in children)
    f = XYZ.parse("z^2 - x^3")
    assert ux.pull_from_parent(f) == XYZ.parse("x^2*z^2 - x^3")
    assert uz.pull_from_parent(f) == XYZ.parse("z^2 - x^3*z^3")
    # y is untouched in both charts
    assert ux.pull_from_parent(XYZ.parse("y")) == XYZ.parse("y")


def test_labels_inherit_and_refresh():
    tree = ChartTree(XY)
    _, (cx, cy) = tree.blowup(0, (0, 1))
    # blow up the new origin of U_y; its exceptional var y carries label 1
    label2, (dx, dy) = tree.blowup(cy, (0, 1))
    assert label2 == 2
    assert tree[dx].divisors == {1: 1, 0: 2}  # old divisor V(y), fresh V(x)
    assert tree[dy].divisors == {1: 2}  # pivot slot replaced by the fresh label
    assert tree.frontier() == [cx, dx, dy]
    assert tree.last_label() == 2


def test_identity_blowup_replaces_label():
    tree = ChartTree(XY)
    tree.preset_divisors([0])
    root = tree.root
    assert root.divisors == {0: 1}
    label, child = tree.identity_blowup(0, 0)
    assert label == 2
    ch = tree[child]
    assert ch.pivot == 0
    assert ch.center_vars == (0,)
    assert ch.divisors == {0: 2}
    assert ch.pull_from_parent(XY.parse("x^2 - y")) == XY.parse("x^2 - y")


def test_preset_divisors():
    tree = ChartTree(XYZ)
    got = tree.preset_divisors([0, 2])
    assert got == {0: 1, 2: 2}
    assert tree.root.divisors == {0: 1, 2: 2}
    assert tree.last_label() == 2
    with pytest.raises(ChartError):
        tree.preset_divisors([0])  # already present
    with pytest.raises(ChartError):
        ChartTree(XYZ).preset_divisors(["x"])  # names are not indices
    t2 = ChartTree(XY)
    t2.blowup(0, (0, 1))
    with pytest.raises(ChartError):
        t2.preset_divisors([0])  # too late


def test_center_must_be_coordinates():
    tree = ChartTree(XY)
    with pytest.raises(ChartError):
        tree.blowup(0, ())
    with pytest.raises(ChartError):
        tree.blowup(0, (0, 0))
    tree.blowup(0, (0, 1))
    with pytest.raises(ChartError):
        tree.blowup(0, (0, 1))  # 0 is no longer on the frontier


def test_change_coordinates_rewrites_maps():
    tree = ChartTree(XY)
    tree.change_coordinates(0, 1, XY.parse("x^2"))  # y1 = y + x^2
    f_root = XY.parse("y")
    # the old coordinate y reads y1 - x^2 in the new chart
    assert tree.pull_to(0, f_root) == XY.parse("y - x^2")
    _, (cx, cy) = tree.blowup(0, (0, 1))
    # composing with the U_x blow-up map: y -> y1 - x^2 -> x*y - x^2
    assert tree.pull_to(cx, f_root) == XY.parse("x*y - x^2")


def test_map_from_root_composes():
    tree = ChartTree(XY)
    _, (cx, cy) = tree.blowup(0, (0, 1))
    _, (dx, dy) = tree.blowup(cy, (0, 1))
    f = XY.parse("x^2 - y^3")
    images = tree.map_from_root(dx)
    assert f.substitute(images) == tree.pull_to(dx, f)
    # two blow-ups compose to x -> x^2*y, y -> x*y on the dx chart
    assert tree.pull_to(dx, XY.parse("x")) == XY.parse("x^2*y")
    assert tree.pull_to(dx, XY.parse("y")) == XY.parse("x*y")


def test_rational_functions():
    x = XY.parse("x")
    y = XY.parse("y")
    r = RationalFunction(x * x - y * y, x - y)
    assert r.is_polynomial()
    assert r == RationalFunction(x + y)
    s = RationalFunction(x, y)
    assert not s.is_polynomial()
    assert s.evaluate((1, 2)) == Fraction(1, 2)
    assert s.evaluate((1, 0)) is None
    assert str(s) == "x/y"


def test_transition_between_sibling_charts():
    tree = ChartTree(XY)
    _, (cx, cy) = tree.blowup(0, (0, 1))
    # transition(src, dst) expresses the src coordinates on the dst chart:
    # evaluating it at a dst point produces the same point in src coordinates
    trans = tree.transition(cy, cx)
    rng = random.Random(3)
    for _ in range(10):
        pt = random_point(rng, 2, nonzero=True)  # a U_x point off the axes
        image = tuple(t.evaluate(pt) for t in trans)
        assert None not in image
        # both present the same point downstairs: compare in root coordinates
        root_from_cx = push_to_parent([0, 1], 0, pt)
        root_from_cy = push_to_parent([0, 1], 1, image)
        assert root_from_cx == root_from_cy


def test_locate_point_in_children():
    tree = ChartTree(XY)
    _, (cx, cy) = tree.blowup(0, (0, 1))
    where = tree.locate(0, (2, 3))
    # the point (2,3) away from the center appears in both charts
    assert where[cx] == (2, Fraction(3, 2))
    assert where[cy] == (Fraction(2, 3), 3)
    on_axis = tree.locate(0, (0, 5))
    assert on_axis[cy] == (0, 5)


def test_push_pull_oracles_are_inverse():
    rng = random.Random(11)
    for _ in range(20):
        pt = random_point(rng, 3, nonzero=True)
        down = pull_to_child([0, 2], 2, pt)
        assert push_to_parent([0, 2], 2, down) == pt
