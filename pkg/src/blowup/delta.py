"""Derivative ideals and singular loci of pairs (J, b).

For an ideal J the derivative ideal Delta(J) is generated by J together
with all first partials of its generators.  In characteristic zero a point
has multiplicity >= m for J exactly when it lies on V(Delta^{m-1}(J)), so

    Sing(J, b) = V(Delta^{b-1}(J)),

and the maximal order of J is the largest b for which that locus is
nonempty.  Because Delta(J) only depends on the ideal (not on the chosen
generators), iterates are normalized through their reduced Groebner basis
between steps; this keeps generator counts flat and makes the chain
well-defined.
"""

from __future__ import annotations

from .ideals import Ideal
from .polyring import Polynomial


def delta(a: Ideal) -> Ideal:
    """One derivative step: generators plus all their first partials."""
    gens = list(a.gens)
    for g in a.gens:
        for i in range(a.ctx.nvars):
            gens.append(g.derivative(i))
    return Ideal(a.ctx, gens)


def delta_power(a: Ideal, k: int) -> Ideal:
    """Delta^k(a), normalizing through the Groebner basis between steps."""
    if k < 0:
        raise ValueError("negative derivative power")
    cur = a
    for _ in range(k):
        if cur.is_trivial():
            return Ideal(a.ctx, [a.ctx.one()])
        cur = delta(cur).gb_ideal()
    return cur


def sing(a: Ideal, b: int) -> Ideal:
    """Ideal of the b-fold locus Sing(J, b) = V(Delta^{b-1}(J))."""
    if b < 1:
        raise ValueError("the bound b must be >= 1")
    return delta_power(a, b - 1)


def max_order(a: Ideal) -> int:
    """Largest b with Sing(a, b) nonempty; 0 when a is trivial.

    The zero ideal has no finite maximal order and is rejected.
    """
    if a.is_zero():
        raise ValueError("the zero ideal has unbounded order")
    if a.is_trivial():
        return 0
    # the order at any single point caps the climb, so this terminates
    b = 0
    cur = a
    while not cur.is_trivial():
        b += 1
        cur = delta(cur).gb_ideal()
    return b


def max_order_along(a: Ideal, locus: Ideal) -> int:
    """Largest m with V(Delta^{m-1}(a)) meeting V(locus); 0 if none.

    Used for weighted orders: the relevant multiplicity of a reduced ideal
    is its maximum over the singular locus of the full object, not over all
    of the chart.
    """
    if a.is_zero():
        raise ValueError("the zero ideal has unbounded order")
    m = 0
    cur = a
    while not (cur + locus).is_trivial():
        m += 1
        cur = delta(cur).gb_ideal()
    return m


def order_at(a: Ideal, point) -> int:
    """Multiplicity of the ideal at a rational point (min over generators)."""
    o = a.order_at(point)
    if o is None:
        raise ValueError("zero ideal")
    return o


def bound_is_met(a: Ideal, b: int) -> bool:
    """True when Sing(a, b) is nonempty (scheme-theoretically)."""
    return not sing(a, b).is_trivial()


def classify_points(a: Ideal, b: int, points) -> list[bool]:
    """Point-wise membership of rational points in Sing(a, b)."""
    s = sing(a, b)
    out = []
    for p in points:
        out.append(all(g.evaluate(p) == 0 for g in s.gens))
    return out
